//! Twisted cubics in PG(3,q), their stabilizer, and the line spreads they
//! induce when `q ≡ 2 (mod 3)`.
//!
//! The canonical cubic is `{(t³:t²:t:1)} ∪ {(1:0:0:0)}`; every other cubic
//! is its image under a projectivity. The spread consists of the `q+1`
//! tangents, the `(q²-q)/2` chords joining conjugate points over GF(q²),
//! and the `(q²-q)/2` axes where conjugate osculating planes meet.
//!
//! The factorization of `λK_v` over all cubics has `λ = q⁵(q⁴-1)(q-1)`
//! factors (7,800,000 for `q = 5`) and is never materialized: only single
//! factors and the counting identities are computed.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::factorization::Factor;
use crate::galois::{subfield_embedding, FieldSpec, GaloisError};
use crate::geometry::{
    enumerate_pgl, linalg, GeometryError, ProjectiveSpace, Projectivity, Subspace,
};
use crate::spreads::{verify_spread, Spread, SpreadViolation};

#[derive(Debug, thiserror::Error)]
pub enum CubicError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] GaloisError),
    #[error("the cubic spread needs gcd(q+1, 3) = 3, got q={0}")]
    WrongResidue(u32),
    #[error("the candidate line set is not a spread: {0}")]
    NotASpread(SpreadViolation),
    #[error("line over GF(q^2) is not defined over GF(q)")]
    NotRational,
    #[error("group of order {0} is too large to enumerate")]
    TooLarge(u128),
}

/// A twisted cubic: the image of the canonical cubic under `frame`.
#[derive(Debug, Clone)]
pub struct TwistedCubic {
    q: u32,
    frame: Projectivity,
    /// Point of each parameter `t = 0..q`, then of `t = ∞` last.
    points: Vec<usize>,
}

fn int(f: &FieldSpec, n: u32) -> u32 {
    n % f.characteristic()
}

fn curve_point(f: &FieldSpec, t: Option<u32>) -> Vec<u32> {
    match t {
        Some(t) => vec![f.pow(t, 3), f.mul(t, t), t, 1],
        None => vec![1, 0, 0, 0],
    }
}

/// The first derivative of the parametrization.
fn tangent_direction(f: &FieldSpec, t: Option<u32>) -> Vec<u32> {
    match t {
        Some(t) => vec![f.mul(int(f, 3), f.mul(t, t)), f.mul(int(f, 2), t), 1, 0],
        None => vec![0, 1, 0, 0],
    }
}

/// The second Hasse derivative of the parametrization.
fn osculating_direction(f: &FieldSpec, t: Option<u32>) -> Vec<u32> {
    match t {
        Some(t) => vec![f.mul(int(f, 3), t), 1, 0, 0],
        None => vec![0, 0, 1, 0],
    }
}

impl TwistedCubic {
    pub fn canonical(space: &ProjectiveSpace) -> Self {
        Self::image(space, &Projectivity::identity(space.field(), 4))
    }

    /// The image of the canonical cubic under `frame`.
    pub fn image(space: &ProjectiveSpace, frame: &Projectivity) -> Self {
        assert_eq!(space.dim(), 3, "twisted cubics live in PG(3,q)");
        let f = space.field();
        let points = f
            .elements()
            .map(Some)
            .chain([None])
            .map(|t| {
                let v = frame.apply_vector(f, &curve_point(f, t));
                space.index_of(&v).expect("nonzero")
            })
            .collect();
        TwistedCubic {
            q: space.q(),
            frame: frame.clone(),
            points,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn frame(&self) -> &Projectivity {
        &self.frame
    }

    /// Points indexed by parameter, `∞` last.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn point_set(&self) -> BTreeSet<usize> {
        self.points.iter().copied().collect()
    }

    pub fn point_at(&self, t: Option<u32>) -> usize {
        match t {
            Some(t) => self.points[t as usize],
            None => self.points[self.q as usize],
        }
    }

    /// No four points are coplanar.
    pub fn in_general_position(&self, space: &ProjectiveSpace) -> bool {
        crate::geometry::combinations(self.points.len(), 4.min(self.points.len()))
            .iter()
            .all(|c| {
                let rows: Vec<Vec<u32>> = c
                    .iter()
                    .map(|&i| space.coords(self.points[i]).to_vec())
                    .collect();
                linalg::rank(space.field(), &rows) == rows.len()
            })
    }
}

/// The projectivity of PG(3,q) induced by `t -> (at+b)/(ct+d)` on the
/// canonical cubic: the action on binary cubic forms `x³, x²y, xy², y³`.
pub fn induced_action(f: &FieldSpec, m: [[u32; 2]; 2]) -> Result<Projectivity, GeometryError> {
    let [[a, b], [c, d]] = m;
    let det = f.sub(f.mul(a, d), f.mul(b, c));
    if det == 0 {
        return Err(GeometryError::Singular);
    }
    let mul = |xs: &[u32]| xs.iter().fold(1, |acc, &x| f.mul(acc, x));
    let (two, three) = (int(f, 2), int(f, 3));
    let rows = vec![
        vec![
            mul(&[a, a, a]),
            mul(&[three, a, a, b]),
            mul(&[three, a, b, b]),
            mul(&[b, b, b]),
        ],
        vec![
            mul(&[a, a, c]),
            f.add(mul(&[a, a, d]), mul(&[two, a, b, c])),
            f.add(mul(&[two, a, b, d]), mul(&[b, b, c])),
            mul(&[b, b, d]),
        ],
        vec![
            mul(&[a, c, c]),
            f.add(mul(&[two, a, c, d]), mul(&[b, c, c])),
            f.add(mul(&[a, d, d]), mul(&[two, b, c, d])),
            mul(&[b, d, d]),
        ],
        vec![
            mul(&[c, c, c]),
            mul(&[three, c, c, d]),
            mul(&[three, c, d, d]),
            mul(&[d, d, d]),
        ],
    ];
    Projectivity::new(f, rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    pub q: u32,
    /// Distinct projectivities induced by PGL(2,q).
    pub order: usize,
    /// `q(q²-1)`.
    pub expected_order: u64,
    pub fixes_cubic: bool,
    /// Ordered triples of distinct cubic points reached from a base triple.
    pub triples_reached: usize,
    pub triples_total: usize,
    pub sharply_triply_transitive: bool,
}

impl StabilizerReport {
    pub fn triply_transitive(&self) -> bool {
        self.triples_reached == self.triples_total
    }
}

/// Largest PGL(2,q) enumerated by [`stabilizer_report`].
const MAX_PGL2_SCAN: u64 = 1 << 24;

/// Enumerates PGL(2,q), maps it into PGL(4,q), and checks that the image
/// fixes the canonical cubic and acts on it sharply 3-transitively.
pub fn stabilizer_report(q: u32) -> Result<StabilizerReport, CubicError> {
    let space = ProjectiveSpace::of_order(3, q)?;
    let f = space.field();
    let cubic = TwistedCubic::canonical(&space);
    let set = cubic.point_set();
    let group =
        enumerate_pgl(f, 2, MAX_PGL2_SCAN).map_err(|_| CubicError::TooLarge((q as u128).pow(4)))?;
    let mut images = BTreeSet::new();
    let mut triples = BTreeSet::new();
    let mut fixes = true;
    let base = [cubic.points[0], cubic.points[1], cubic.points[2]];
    for g in &group {
        let m = g.matrix();
        let h = induced_action(f, [[m[0][0], m[0][1]], [m[1][0], m[1][1]]])?;
        let perm = h.point_permutation(&space)?;
        if cubic.points.iter().any(|p| !set.contains(&perm[*p])) {
            fixes = false;
        }
        triples.insert(base.map(|p| perm[p]));
        images.insert(h);
    }
    let n = q as usize + 1;
    let total = n * (n - 1) * (n - 2);
    Ok(StabilizerReport {
        q,
        order: images.len(),
        expected_order: q as u64 * (q as u64 * q as u64 - 1),
        fixes_cubic: fixes,
        triples_reached: triples.len(),
        triples_total: total,
        sharply_triply_transitive: triples.len() == total && images.len() == total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicCounts {
    pub q: u32,
    /// `q⁵(q⁴-1)(q³-1)`.
    pub num_cubics: BigUint,
    /// Cubics whose spread contains a given line: `q⁵(q⁴-1)(q-1)`.
    pub c_ell: BigUint,
    pub pgl4_order: BigUint,
    pub stabilizer_order: BigUint,
    /// `|PGL(4,q)| / |PGL(2,q)|` equals the cubic count.
    pub orbit_stabilizer_holds: bool,
    /// `num_cubics · (q²+1) / ((q²+1)(q²+q+1))` equals `c_ell`.
    pub quotient_identity_holds: bool,
    /// The count is asserted only for `q >= 5`.
    pub within_hypothesis: bool,
}

pub fn cubic_counts(q: u32) -> CubicCounts {
    let b = |x: u64| BigUint::from(x);
    let qq = b(q as u64);
    let pw = |e: u32| qq.pow(e);
    let one = b(1);
    let num_cubics = pw(5) * (pw(4) - &one) * (pw(3) - &one);
    let c_ell = pw(5) * (pw(4) - &one) * (&qq - &one);
    let mut gl = b(1);
    for i in 0..4 {
        gl *= pw(4) - pw(i);
    }
    let pgl4_order = gl / (&qq - &one);
    let stabilizer_order = &qq * (pw(2) - &one);
    let spread_size = pw(2) + &one;
    let lines = (pw(2) + &one) * (pw(2) + &qq + &one);
    debug_assert_eq!(
        lines,
        b(crate::geometry::gaussian_binomial(4, 2, q as u64) as u64)
    );
    let orbit_stabilizer_holds =
        &pgl4_order % &stabilizer_order == b(0) && &pgl4_order / &stabilizer_order == num_cubics;
    let numerator = &num_cubics * &spread_size;
    let quotient_identity_holds = &numerator % &lines == b(0) && numerator / &lines == c_ell;
    CubicCounts {
        q,
        num_cubics,
        c_ell,
        pgl4_order,
        stabilizer_order,
        orbit_stabilizer_holds,
        quotient_identity_holds,
        within_hypothesis: q >= 5,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineKind {
    Tangent,
    ImaginaryChord,
    ImaginaryAxis,
}

impl LineKind {
    pub fn name(self) -> &'static str {
        match self {
            LineKind::Tangent => "tangent",
            LineKind::ImaginaryChord => "imaginary_chord",
            LineKind::ImaginaryAxis => "imaginary_axis",
        }
    }
}

/// A verified spread with the kind of each member, aligned with
/// `spread.members()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicSpread {
    pub spread: Spread,
    pub kinds: Vec<LineKind>,
}

impl CubicSpread {
    /// `(tangents, chords, axes)`.
    pub fn signature(&self) -> (usize, usize, usize) {
        let count = |k| self.kinds.iter().filter(|&&x| x == k).count();
        (
            count(LineKind::Tangent),
            count(LineKind::ImaginaryChord),
            count(LineKind::ImaginaryAxis),
        )
    }
}

/// A subspace over GF(q²) stable under conjugation, brought down to GF(q).
fn rational(
    space: &ProjectiveSpace,
    ext: &FieldSpec,
    emb: &crate::galois::SubfieldEmbedding,
    rows: &[Vec<u32>],
) -> Result<Subspace, CubicError> {
    let red = linalg::rref(ext, rows);
    let down: Option<Vec<Vec<u32>>> = red
        .iter()
        .map(|r| r.iter().map(|&x| emb.preimage(x)).collect())
        .collect();
    let down = down.ok_or(CubicError::NotRational)?;
    Ok(space.span_vectors(&down).expect("nonzero"))
}

/// The spread of tangents, imaginary chords and imaginary axes of a cubic,
/// verified before it is returned.
pub fn cubic_spread(
    space: &ProjectiveSpace,
    cubic: &TwistedCubic,
) -> Result<CubicSpread, CubicError> {
    let q = space.q();
    if !(q + 1).is_multiple_of(3) {
        return Err(CubicError::WrongResidue(q));
    }
    let f = space.field();
    let mut lines: Vec<(Subspace, LineKind)> = Vec::new();
    for t in f.elements().map(Some).chain([None]) {
        let rows = vec![curve_point(f, t), tangent_direction(f, t)];
        lines.push((
            space.span_vectors(&rows).expect("nonzero"),
            LineKind::Tangent,
        ));
    }
    let ext = FieldSpec::new(f.characteristic(), 2 * f.degree())?;
    let emb = subfield_embedding(f, &ext)?;
    for tau in ext.elements() {
        let conj = ext.pow(tau, q as u64);
        if conj <= tau {
            continue;
        }
        let chord = rational(
            space,
            &ext,
            &emb,
            &[curve_point(&ext, Some(tau)), curve_point(&ext, Some(conj))],
        )?;
        lines.push((chord, LineKind::ImaginaryChord));
        let plane = |x: u32| {
            vec![
                curve_point(&ext, Some(x)),
                tangent_direction(&ext, Some(x)),
                osculating_direction(&ext, Some(x)),
            ]
        };
        let mut dual = linalg::nullspace(&ext, &plane(tau), 4);
        dual.extend(linalg::nullspace(&ext, &plane(conj), 4));
        let axis = linalg::nullspace(&ext, &dual, 4);
        lines.push((rational(space, &ext, &emb, &axis)?, LineKind::ImaginaryAxis));
    }
    let frame = cubic.frame();
    let mut lines: Vec<(Subspace, LineKind)> = lines
        .into_iter()
        .map(|(l, k)| Ok((frame.apply_subspace(space, &l)?, k)))
        .collect::<Result<_, GeometryError>>()?;
    lines.sort();
    let (members, kinds): (Vec<Subspace>, Vec<LineKind>) = lines.into_iter().unzip();
    let spread = Spread::new(space, 1, 1, members);
    verify_spread(space, &spread).map_err(CubicError::NotASpread)?;
    Ok(CubicSpread { spread, kinds })
}

/// The `q`-factor of `K_{q³+q²+q+1}` whose cliques are the spread lines.
pub fn cubic_factor(space: &ProjectiveSpace, cubic: &TwistedCubic) -> Result<Factor, CubicError> {
    Ok(cubic_spread(space, cubic)?.spread.to_factor(space))
}

/// A uniformly random element of PGL(4,q).
pub fn random_projectivity(f: &FieldSpec, rng: &mut impl Rng) -> Projectivity {
    loop {
        let m: Vec<Vec<u32>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(0..f.order())).collect())
            .collect();
        if let Ok(g) = Projectivity::new(f, m) {
            return g;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctnessSample {
    pub pairs: usize,
    /// Pairs of different cubics.
    pub distinct_cubics: usize,
    /// Pairs of different cubics whose spreads coincide.
    pub same_spread: usize,
}

/// Samples pairs of random cubics and compares their spreads.
pub fn sample_distinct_spreads(
    q: u32,
    pairs: usize,
    seed: u64,
) -> Result<DistinctnessSample, CubicError> {
    let space = ProjectiveSpace::of_order(3, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = DistinctnessSample {
        pairs,
        distinct_cubics: 0,
        same_spread: 0,
    };
    for _ in 0..pairs {
        let c1 = TwistedCubic::image(&space, &random_projectivity(space.field(), &mut rng));
        let c2 = TwistedCubic::image(&space, &random_projectivity(space.field(), &mut rng));
        if c1.point_set() == c2.point_set() {
            continue;
        }
        out.distinct_cubics += 1;
        if cubic_spread(&space, &c1)?.spread == cubic_spread(&space, &c2)?.spread {
            out.same_spread += 1;
        }
    }
    Ok(out)
}
