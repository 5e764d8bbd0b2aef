//! Spreads, fold spreads, reguli and packings of projective spaces.
//!
//! An `i`-spread of PG(n,q) is a set of `i`-subspaces partitioning the
//! points; an `f`-fold `i`-spread covers every point exactly `f` times. A
//! packing partitions all `i`-subspaces into spreads, so it is a resolution
//! of the design of points and `i`-subspaces.

mod json;
mod search;

pub use json::{PackingFile, SpreadFile};
pub use search::{
    aregular_spread_search, enumerate_spreads, fold_spread_search, packing_search, PackingMode,
    PackingSearch,
};

use std::collections::BTreeSet;
use std::fmt;

use crate::factorization::{Factor, Factorization};
use crate::galois::{FieldSpec, GaloisError};
use crate::geometry::{FieldModel, GeometryError, ProjectiveSpace, Projectivity, Subspace};

#[derive(Debug, thiserror::Error)]
pub enum SpreadError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] GaloisError),
    #[error("{0}")]
    Divisibility(String),
    #[error("expected lines of PG(3,q)")]
    NotLinesOfPg3,
    #[error("lines {0} and {1} are not skew")]
    NotSkew(usize, usize),
    #[error("construction produced a {achieved}-fold spread, expected {target}-fold")]
    FoldMismatch { target: u32, achieved: u32 },
    #[error("spread does not verify: {0}")]
    Invalid(SpreadViolation),
}

/// A multiset of `dim`-subspaces of PG(n,q), members in sorted order,
/// claimed to cover each point `fold` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FoldSpread {
    n: usize,
    q: u32,
    dim: usize,
    fold: u32,
    members: Vec<Subspace>,
}

/// A 1-fold spread.
pub type Spread = FoldSpread;

impl FoldSpread {
    pub fn new(space: &ProjectiveSpace, dim: usize, fold: u32, mut members: Vec<Subspace>) -> Self {
        members.sort();
        FoldSpread {
            n: space.dim(),
            q: space.q(),
            dim,
            fold,
            members,
        }
    }

    pub fn ambient(&self) -> (usize, u32) {
        (self.n, self.q)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fold(&self) -> u32 {
        self.fold
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether some subspace occurs more than once.
    pub fn has_repeats(&self) -> bool {
        self.members.windows(2).any(|w| w[0] == w[1])
    }

    pub fn image(&self, space: &ProjectiveSpace, g: &Projectivity) -> Result<Self, GeometryError> {
        let members = self
            .members
            .iter()
            .map(|s| g.apply_subspace(space, s))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(space, self.dim, self.fold, members))
    }

    /// The factor whose components are the point sets of the members.
    /// Meaningful for 1-fold spreads.
    pub fn to_factor(&self, space: &ProjectiveSpace) -> Factor {
        Factor::new(
            space.num_points(),
            space.subspace_points(&self.members[0]).len() - 1,
            self.members
                .iter()
                .map(|s| space.subspace_points(s))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpreadViolation {
    Ambient,
    MemberDimension {
        member: usize,
        dim: usize,
    },
    Coverage {
        point: usize,
        covered: u32,
        expected: u32,
    },
}

impl fmt::Display for SpreadViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpreadViolation::Ambient => write!(f, "member from a different space"),
            SpreadViolation::MemberDimension { member, dim } => {
                write!(f, "member {member} has dimension {dim}")
            }
            SpreadViolation::Coverage {
                point,
                covered,
                expected,
            } => write!(
                f,
                "point {point} covered {covered} times, expected {expected}"
            ),
        }
    }
}

impl std::error::Error for SpreadViolation {}

/// Exact point coverage against the declared fold.
pub fn verify_fold_spread(space: &ProjectiveSpace, s: &FoldSpread) -> Result<(), SpreadViolation> {
    if s.ambient() != (space.dim(), space.q()) {
        return Err(SpreadViolation::Ambient);
    }
    let mut count = vec![0u32; space.num_points()];
    for (i, m) in s.members.iter().enumerate() {
        if m.ambient() != s.ambient() {
            return Err(SpreadViolation::Ambient);
        }
        if m.dim() != s.dim {
            return Err(SpreadViolation::MemberDimension {
                member: i,
                dim: m.dim(),
            });
        }
        for p in space.subspace_points(m) {
            count[p] += 1;
        }
    }
    match count.iter().position(|&c| c != s.fold) {
        Some(point) => Err(SpreadViolation::Coverage {
            point,
            covered: count[point],
            expected: s.fold,
        }),
        None => Ok(()),
    }
}

pub fn verify_spread(space: &ProjectiveSpace, s: &Spread) -> Result<(), SpreadViolation> {
    if s.fold != 1 {
        return Err(SpreadViolation::Coverage {
            point: 0,
            covered: s.fold,
            expected: 1,
        });
    }
    verify_fold_spread(space, s)
}

fn pow(q: u32, e: usize) -> u64 {
    (q as u64).pow(e as u32)
}

/// The Singer translates `w^j W`, `0 <= j < (q^{n+1}-1)/(q^{l+1}-1)`, of the
/// subspace `W` spanned over GF(q^{l+1}) by `generators`.
fn singer_translates(model: &FieldModel, l: usize, generators: &[u32]) -> Option<Vec<Subspace>> {
    let big = model.big();
    let space = model.space();
    let n = space.dim();
    let q = space.q();
    let count = (pow(q, n + 1) - 1) / (pow(q, l + 1) - 1);
    let u = big.exp((big.order() as u64 - 1) / (pow(q, l + 1) - 1));
    let mut basis = Vec::new();
    for &g in generators {
        let mut x = g;
        for _ in 0..=l {
            basis.push(x);
            x = big.mul(x, u);
        }
    }
    let vec_of = |x: u32| space.coords(model.point_of(x)).to_vec();
    let w = model.big().generator();
    let rows: Vec<Vec<u32>> = basis.iter().map(|&x| vec_of(x)).collect();
    let first = space.span_vectors(&rows)?;
    if first.dim() + 1 != basis.len() {
        return None;
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut shift = 1u32;
    for _ in 0..count {
        let rows: Vec<Vec<u32>> = basis.iter().map(|&x| vec_of(big.mul(x, shift))).collect();
        out.push(space.span_vectors(&rows).expect("nonzero"));
        shift = big.mul(shift, w);
    }
    Some(out)
}

/// The multiplicative cosets of GF(q^{i+1})* in GF(q^{n+1})*, read as
/// `i`-subspaces of PG(n,q); requires `(i+1) | (n+1)`.
pub fn field_reduction_spread(n: usize, q: u32, i: usize) -> Result<Spread, SpreadError> {
    if i >= n || !(n + 1).is_multiple_of(i + 1) {
        return Err(SpreadError::Divisibility(format!(
            "an {i}-spread of PG({n},q) needs {} | {}",
            i + 1,
            n + 1
        )));
    }
    let model = FieldModel::new(n, FieldSpec::of_order(q)?)?;
    let members = singer_translates(&model, i, &[1]).expect("subfield is a subspace");
    let spread = Spread::new(model.space(), i, 1, members);
    verify_spread(model.space(), &spread).map_err(SpreadError::Invalid)?;
    Ok(spread)
}

/// Largest number of generator sets tried by [`singer_fold_spread`].
const MAX_SINGER_CANDIDATES: usize = 10_000;

/// An `f`-fold `i`-spread with `f = (q^{i+1}-1)/(q^{l+1}-1)`: the Singer
/// translates of a GF(q^{l+1})-subspace `W` of GF(q^{n+1}) of GF(q)-dimension
/// `i+1`. Requires `(l+1) | gcd(i+1, n+1)`.
///
/// Candidate subspaces `W` are tried in a fixed order until the translates
/// are pairwise distinct; if none is found the first candidate is used and
/// the result has repeated members (see [`FoldSpread::has_repeats`]).
/// The fold is verified before returning.
pub fn singer_fold_spread(n: usize, q: u32, i: usize, l: usize) -> Result<FoldSpread, SpreadError> {
    if i >= n || l > i || !(i + 1).is_multiple_of(l + 1) || !(n + 1).is_multiple_of(l + 1) {
        return Err(SpreadError::Divisibility(format!(
            "need {} | gcd({}, {}) and i < n",
            l + 1,
            i + 1,
            n + 1
        )));
    }
    let model = FieldModel::new(n, FieldSpec::of_order(q)?)?;
    let target = ((pow(q, i + 1) - 1) / (pow(q, l + 1) - 1)) as u32;
    let d = (i + 1) / (l + 1);
    let w = model.big().generator();
    let top = model.big().order() as usize - 1;
    let mut first = None;
    let mut chosen = None;
    for (tries, exps) in crate::geometry::combinations(top - 1, d - 1)
        .into_iter()
        .enumerate()
    {
        if tries >= MAX_SINGER_CANDIDATES {
            break;
        }
        let mut gens = vec![1u32];
        gens.extend(exps.iter().map(|&e| model.big().pow(w, e as u64 + 1)));
        let Some(members) = singer_translates(&model, l, &gens) else {
            continue;
        };
        let mut distinct = members.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() == members.len() {
            chosen = Some(members);
            break;
        }
        if first.is_none() {
            first = Some(members);
        }
    }
    let members = chosen.or(first).expect("some candidate spans W");
    let spread = FoldSpread::new(model.space(), i, target, members);
    match verify_fold_spread(model.space(), &spread) {
        Ok(()) => Ok(spread),
        Err(SpreadViolation::Coverage { covered, .. }) => Err(SpreadError::FoldMismatch {
            target,
            achieved: covered,
        }),
        Err(v) => Err(SpreadError::Invalid(v)),
    }
}

/// The `q+1` transversals of three pairwise skew lines of PG(3,q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regulus {
    pub generators: [Subspace; 3],
    /// Sorted.
    pub lines: Vec<Subspace>,
}

fn check_skew_lines(space: &ProjectiveSpace, lines: [&Subspace; 3]) -> Result<(), SpreadError> {
    if space.dim() != 3
        || lines
            .iter()
            .any(|l| l.dim() != 1 || l.ambient() != (3, space.q()))
    {
        return Err(SpreadError::NotLinesOfPg3);
    }
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        if space.meet(lines[a], lines[b])?.is_some() {
            return Err(SpreadError::NotSkew(a, b));
        }
    }
    Ok(())
}

fn transversals(
    space: &ProjectiveSpace,
    l1: &Subspace,
    l2: &Subspace,
    l3: &Subspace,
) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = space
        .subspace_points(l1)
        .into_iter()
        .map(|p| {
            let mut rows = l2.basis().to_vec();
            rows.push(space.coords(p).to_vec());
            let plane = space.span_vectors(&rows).expect("nonzero");
            let r = space
                .meet(&plane, l3)
                .expect("same ambient")
                .expect("a plane meets every line");
            let mut rows = r.basis().to_vec();
            rows.push(space.coords(p).to_vec());
            space.span_vectors(&rows).expect("nonzero")
        })
        .collect();
    out.sort();
    out
}

pub fn regulus(
    space: &ProjectiveSpace,
    l1: &Subspace,
    l2: &Subspace,
    l3: &Subspace,
) -> Result<Regulus, SpreadError> {
    check_skew_lines(space, [l1, l2, l3])?;
    let lines = transversals(space, l1, l2, l3);
    assert_eq!(lines.len(), space.q() as usize + 1, "transversal count");
    Ok(Regulus {
        generators: [l1.clone(), l2.clone(), l3.clone()],
        lines,
    })
}

/// The regulus containing three pairwise skew lines: the transversals of
/// any three of their transversals. Sorted.
pub fn regulus_through(
    space: &ProjectiveSpace,
    l1: &Subspace,
    l2: &Subspace,
    l3: &Subspace,
) -> Result<Vec<Subspace>, SpreadError> {
    let t = regulus(space, l1, l2, l3)?.lines;
    Ok(transversals(space, &t[0], &t[1], &t[2]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpreadClass {
    /// Contains the regulus through any three of its lines.
    Regular,
    /// Contains no regulus.
    Aregular,
    Mixed,
}

/// Classifies a line spread of PG(3,q) by the reguli it contains.
pub fn classify_spread(space: &ProjectiveSpace, s: &Spread) -> Result<SpreadClass, SpreadError> {
    if space.dim() != 3 || s.dim() != 1 {
        return Err(SpreadError::NotLinesOfPg3);
    }
    let members: BTreeSet<&Subspace> = s.members.iter().collect();
    let (mut inside, mut outside) = (false, false);
    let m = &s.members;
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            for c in b + 1..m.len() {
                let reg = regulus_through(space, &m[a], &m[b], &m[c])?;
                if reg.iter().all(|l| members.contains(l)) {
                    inside = true;
                } else {
                    outside = true;
                }
                if inside && outside {
                    return Ok(SpreadClass::Mixed);
                }
            }
        }
    }
    Ok(if outside {
        SpreadClass::Aregular
    } else {
        SpreadClass::Regular
    })
}

/// Spreads partitioning all `dim`-subspaces of a space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Packing {
    pub spreads: Vec<Spread>,
}

impl Packing {
    /// Each spread is a resolution class, hence a factor of `K_v`.
    pub fn to_factorization(&self, space: &ProjectiveSpace) -> Factorization {
        let factors: Vec<Factor> = self.spreads.iter().map(|s| s.to_factor(space)).collect();
        let m = factors.first().map_or(0, Factor::m);
        Factorization::new(space.num_points(), 1, m, factors)
    }
}

/// Every `dim`-subspace lies in exactly one spread, and every spread verifies.
pub fn verify_packing(
    space: &ProjectiveSpace,
    packing: &Packing,
    dim: usize,
) -> Result<(), String> {
    let mut all = BTreeSet::new();
    for (i, s) in packing.spreads.iter().enumerate() {
        verify_spread(space, s).map_err(|v| format!("spread {i}: {v}"))?;
        if s.dim() != dim {
            return Err(format!("spread {i} has dimension {}", s.dim()));
        }
        for m in s.members() {
            if !all.insert(m.clone()) {
                return Err(format!("subspace {m} occurs twice"));
            }
        }
    }
    let total = space
        .enumerate_subspaces(dim)
        .map_err(|e| e.to_string())?
        .len();
    if all.len() != total {
        return Err(format!("{} of {total} subspaces covered", all.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg;
    use proptest::prelude::*;

    #[test]
    fn field_reduction_spreads() {
        let s = field_reduction_spread(3, 2, 1).unwrap();
        assert_eq!(s.len(), 5);
        let s = field_reduction_spread(5, 2, 2).unwrap();
        assert_eq!(s.len(), 9);
        let s = field_reduction_spread(3, 3, 1).unwrap();
        assert_eq!(s.len(), 10);
        assert!(matches!(
            field_reduction_spread(3, 2, 2),
            Err(SpreadError::Divisibility(_))
        ));
    }

    #[test]
    fn singer_fold_spreads() {
        let s = singer_fold_spread(3, 2, 1, 0).unwrap();
        assert_eq!((s.len(), s.fold()), (15, 3));
        assert!(!s.has_repeats());
        let s = singer_fold_spread(3, 2, 1, 1).unwrap();
        assert_eq!((s.len(), s.fold()), (5, 1));
        let s = singer_fold_spread(5, 2, 2, 0).unwrap();
        assert_eq!((s.len(), s.fold()), (63, 7));
        assert!(!s.has_repeats());
        let s = singer_fold_spread(5, 2, 3, 1).unwrap();
        assert_eq!((s.len(), s.fold()), (21, 5));
        assert!(singer_fold_spread(3, 2, 1, 2).is_err());
    }

    #[test]
    fn broken_spread_reports_a_point() {
        let space = ProjectiveSpace::of_order(3, 2).unwrap();
        let s = field_reduction_spread(3, 2, 1).unwrap();
        let mut members = s.members().to_vec();
        let p = space.subspace_points(&members[0])[0];
        let q = space.subspace_points(&members[1])[0];
        members[0] = space.span_points(&[p, q]).unwrap();
        let broken = Spread::new(&space, 1, 1, members);
        assert!(matches!(
            verify_spread(&space, &broken),
            Err(SpreadViolation::Coverage { .. })
        ));
    }

    #[test]
    fn fano_lines_are_a_three_fold_spread() {
        let space = ProjectiveSpace::of_order(2, 2).unwrap();
        let lines = space.enumerate_subspaces(1).unwrap();
        let s = FoldSpread::new(&space, 1, 3, lines);
        verify_fold_spread(&space, &s).unwrap();
    }

    #[test]
    fn reguli() {
        let space = ProjectiveSpace::of_order(3, 3).unwrap();
        let s = field_reduction_spread(3, 3, 1).unwrap();
        let m = s.members();
        let r = regulus(&space, &m[0], &m[1], &m[2]).unwrap();
        assert_eq!(r.lines.len(), 4);
        for t in &r.lines {
            for g in &r.generators {
                assert!(space.meet(t, g).unwrap().is_some());
            }
        }
        let through = regulus_through(&space, &m[0], &m[1], &m[2]).unwrap();
        assert_eq!(through.len(), 4);
        assert!(m[..3].iter().all(|l| through.contains(l)));
        assert_eq!(classify_spread(&space, &s).unwrap(), SpreadClass::Regular);

        // brute-force the transversals in PG(3,2)
        let space = ProjectiveSpace::of_order(3, 2).unwrap();
        let s = field_reduction_spread(3, 2, 1).unwrap();
        let m = s.members();
        let r = regulus(&space, &m[0], &m[1], &m[2]).unwrap();
        let brute: Vec<Subspace> = space
            .enumerate_subspaces(1)
            .unwrap()
            .into_iter()
            .filter(|l| m[..3].iter().all(|g| space.meet(l, g).unwrap().is_some()))
            .collect();
        assert_eq!(r.lines, brute);
        assert_eq!(r.lines.len(), 3);
        assert_eq!(classify_spread(&space, &s).unwrap(), SpreadClass::Regular);

        let lines = space.enumerate_subspaces(1).unwrap();
        let meeting: Vec<&Subspace> = lines
            .iter()
            .filter(|l| space.meet(l, &lines[0]).unwrap().is_some())
            .collect();
        assert!(matches!(
            regulus(&space, &lines[0], meeting[1], &m[2]),
            Err(SpreadError::NotSkew(..)) | Err(SpreadError::NotLinesOfPg3)
        ));
    }

    proptest! {
        #[test]
        fn projective_images_of_spreads_verify(cells in prop::collection::vec(0u32..2, 16)) {
            let space = ProjectiveSpace::of_order(3, 2).unwrap();
            let f = space.field().clone();
            let m: Vec<Vec<u32>> = cells.chunks(4).map(<[u32]>::to_vec).collect();
            prop_assume!(linalg::rank(&f, &m) == 4);
            let g = Projectivity::new(&f, m).unwrap();
            let s = field_reduction_spread(3, 2, 1).unwrap();
            let img = s.image(&space, &g).unwrap();
            prop_assert!(verify_spread(&space, &img).is_ok());
            let fold = singer_fold_spread(3, 2, 1, 0).unwrap();
            prop_assert!(verify_fold_spread(&space, &fold.image(&space, &g).unwrap()).is_ok());
        }
    }
}
