//! Factorizations of `λK_{q^n}` from the parallel classes of AG(n,q).
//!
//! Every `(i-1)`-space at infinity `Π` gives the factor whose components are
//! the affine `i`-spaces through `Π`. Taking all of them gives a simple
//! `(q^i-1)`-factorization of `λ_i K_{q^n}` with `λ_i = [n-1 choose i-1]_q`,
//! and a sub-multiset of these factors is a factorization of `f K_{q^n}`
//! exactly when the corresponding `Π` form an `f`-fold spread at infinity.
//!
//! For `q = 2` the module also builds the one-factorization `G` of `K_{2^n}`
//! (pairs grouped by their direction) and the two one-factorizations of
//! `3K_8` obtained by splitting the seven 3-factors of AG(3,2) in two
//! different ways.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::factorization::{verify_factorization, Factor, Factorization};
use crate::geometry::{gaussian_binomial, AffineModel, GeometryError, ProjectiveSpace, Subspace};
use crate::search::Outcome;
use crate::spreads::{fold_spread_search, singer_fold_spread, FoldSpread, SpreadError};

#[derive(Debug, thiserror::Error)]
pub enum AffineError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Spread(#[from] SpreadError),
    #[error("need 0 < i < n, got n={n}, i={i}")]
    BadParameters { n: usize, i: usize },
    #[error("only defined for even q, got q={0}")]
    OddOrder(u32),
}

/// The factorization built from all `(i-1)`-spaces at infinity.
#[derive(Debug, Clone)]
pub struct AffineFactorizationSpec {
    pub n: usize,
    pub q: u32,
    pub i: usize,
    pub lambda: u32,
    pub factor_count: u64,
    /// `at_infinity[j]` is the subspace at infinity of factor `j`.
    pub at_infinity: Vec<Subspace>,
    pub factorization: Factorization,
    /// Vertex names: affine point coordinates.
    pub labels: Vec<String>,
}

fn check(n: usize, i: usize) -> Result<(), AffineError> {
    if i == 0 || i >= n {
        return Err(AffineError::BadParameters { n, i });
    }
    Ok(())
}

pub fn build_affine_factorization(
    n: usize,
    q: u32,
    i: usize,
) -> Result<AffineFactorizationSpec, AffineError> {
    check(n, i)?;
    let space = ProjectiveSpace::of_order(n, q)?;
    let model = AffineModel::standard(&space);
    let v = model.num_vertices();
    let m = (q as usize).pow(i as u32) - 1;
    let mut pairs: Vec<(Factor, Subspace)> = model
        .parallel_classes(i)?
        .into_iter()
        .map(|c| (Factor::new(v, m, c.members), c.at_infinity))
        .collect();
    pairs.sort();
    let (factors, at_infinity): (Vec<Factor>, Vec<Subspace>) = pairs.into_iter().unzip();
    let lambda = gaussian_binomial(n as i64 - 1, i as i64 - 1, q as u64) as u32;
    let factorization = Factorization::new(v, lambda, m, factors);
    Ok(AffineFactorizationSpec {
        n,
        q,
        i,
        lambda,
        factor_count: gaussian_binomial(n as i64, i as i64, q as u64) as u64,
        at_infinity,
        factorization,
        labels: model.labels(),
    })
}

/// How a decomposability question was settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineVerdict {
    /// An `fold`-fold spread at infinity and the factor indices it selects,
    /// which form a factorization of `fold · K_{q^n}`.
    Decomposable {
        fold: u32,
        spread: FoldSpread,
        witness: Vec<usize>,
    },
    Indecomposable,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct AffineDecomposability {
    pub verdict: AffineVerdict,
    /// The answer given by the general theorems, when one applies.
    pub closed_form: Option<bool>,
    /// The answer of the exhaustive fold-spread search, when it ran to the end.
    pub search: Option<bool>,
    pub nodes: u64,
}

impl AffineDecomposability {
    /// Closed form and search agree wherever both are known.
    pub fn consistent(&self) -> bool {
        match (self.closed_form, self.search) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

/// Most `(i-1)`-spaces at infinity for which the exhaustive search is run.
pub const SEARCH_SUBSPACE_LIMIT: u128 = 400;

fn smallest_divisor_above_one(x: usize) -> Option<usize> {
    (2..=x).find(|d| x.is_multiple_of(*d))
}

/// Decides whether the factorization from all `(i-1)`-spaces at infinity
/// splits, by the general theorems and, on small instances, by searching
/// for `f`-fold spreads at infinity with `1 <= f <= λ_i / 2`.
///
/// The closed form is used first: `i = n-1` never splits, and
/// `gcd(i,n) > 1` always does, via the Singer fold spread with
/// `l+1` the least divisor of `gcd(i,n)` above one.
pub fn affine_decomposability(
    n: usize,
    q: u32,
    i: usize,
    max_nodes: Option<u64>,
) -> Result<AffineDecomposability, AffineError> {
    let spec = build_affine_factorization(n, q, i)?;
    let space = ProjectiveSpace::of_order(n, q)?;
    let model = AffineModel::standard(&space);
    let local = model.hyperplane_space()?;
    let lambda = spec.lambda;
    let witness_of = |spread: &FoldSpread| -> Vec<usize> {
        let mut w: Vec<usize> = spread
            .members()
            .iter()
            .map(|s| {
                let lifted = model.lift(s);
                spec.at_infinity
                    .iter()
                    .position(|x| *x == lifted)
                    .expect("subspace at infinity")
            })
            .collect();
        w.sort_unstable();
        w
    };

    let mut closed_form = None;
    let mut closed_witness = None;
    if lambda == 1 || i + 1 == n {
        closed_form = Some(false);
    } else if let Some(d) = smallest_divisor_above_one(i.gcd(&n)) {
        closed_form = Some(true);
        let spread = singer_fold_spread(n - 1, q, i - 1, d - 1)?;
        if !spread.has_repeats() {
            closed_witness = Some(spread);
        }
    }

    let mut search = None;
    let mut search_witness = None;
    let mut nodes = 0;
    let small = gaussian_binomial(n as i64, i as i64, q as u64) <= SEARCH_SUBSPACE_LIMIT;
    if small {
        let mut complete = true;
        for f in 1..lambda {
            let (outcome, report) = fold_spread_search(&local, i - 1, f, max_nodes)?;
            nodes += report.nodes;
            match outcome {
                Outcome::Found(s) => {
                    search_witness = Some(s);
                    break;
                }
                Outcome::Exhausted => {}
                Outcome::Inconclusive => complete = false,
            }
        }
        if search_witness.is_some() {
            search = Some(true);
        } else if complete {
            search = Some(false);
        }
    }

    let decided = closed_form.or(search);
    let verdict = match decided {
        Some(true) => match closed_witness.or(search_witness) {
            Some(spread) => {
                let witness = witness_of(&spread);
                let fold = spread.fold();
                debug_assert!(
                    verify_factorization(&spec.factorization.select(&witness, fold)).is_ok()
                );
                AffineVerdict::Decomposable {
                    fold,
                    spread,
                    witness,
                }
            }
            None => AffineVerdict::Inconclusive,
        },
        Some(false) => AffineVerdict::Indecomposable,
        None => AffineVerdict::Inconclusive,
    };
    Ok(AffineDecomposability {
        verdict,
        closed_form,
        search,
        nodes,
    })
}

/// The points at infinity of PG(3,2) named `0..7` so that the lines are
/// `{j, j+1, j+3} mod 7`, and the anchor vertex `a`.
///
/// Point `s` has coordinates `(0 : x^s mod x^3+x+1)`, the remainder written
/// by its coefficients from the constant term up. The anchor is `(1:0:0:0)`.
#[derive(Debug, Clone)]
pub struct FanoLabeling {
    /// Projective point index of each label.
    pub points: [usize; 7],
    /// Affine vertex of the anchor.
    pub anchor: usize,
}

impl FanoLabeling {
    pub fn new(space: &ProjectiveSpace) -> Self {
        assert_eq!((space.dim(), space.q()), (3, 2), "defined on PG(3,2)");
        let mut points = [0usize; 7];
        let mut r = [1u32, 0, 0];
        for p in points.iter_mut() {
            *p = space.index_of(&[0, r[0], r[1], r[2]]).expect("nonzero");
            // multiply by x modulo x^3 + x + 1
            r = [r[2], r[0] ^ r[2], r[1]];
        }
        let model = AffineModel::standard(space);
        let anchor = model
            .vertex_of_point(space.index_of(&[1, 0, 0, 0]).expect("nonzero"))
            .expect("affine");
        FanoLabeling { points, anchor }
    }

    pub fn line(j: usize) -> [usize; 3] {
        [j % 7, (j + 1) % 7, (j + 3) % 7]
    }

    pub fn label_of(&self, point: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == point)
    }
}

/// Pairs `{b, b + d}` of vertices in `vertices`, for a direction vector `d`.
fn translate_pairs(
    space: &ProjectiveSpace,
    model: &AffineModel,
    vertices: &[usize],
    direction: &[u32],
) -> Vec<Vec<usize>> {
    let f = space.field();
    let mut out = BTreeSet::new();
    for &b in vertices {
        let coords = space.coords(model.point_of_vertex(b));
        let moved: Vec<u32> = coords
            .iter()
            .zip(direction)
            .map(|(&x, &d)| f.add(x, d))
            .collect();
        let c = model
            .vertex_of_point(space.index_of(&moved).expect("nonzero"))
            .expect("translation keeps affine points affine");
        out.insert(vec![b.min(c), b.max(c)]);
    }
    out.into_iter().collect()
}

/// The one-factorization of `K_{2^n}` whose factor `G_s` holds the pairs
/// `{b, c}` with `b`, `c`, `s` collinear, one factor per point `s` at infinity.
pub fn one_factorization_g(n: usize) -> Result<Factorization, AffineError> {
    if n < 2 {
        return Err(AffineError::BadParameters { n, i: 1 });
    }
    let space = ProjectiveSpace::of_order(n, 2)?;
    let model = AffineModel::standard(&space);
    let verts: Vec<usize> = (0..model.num_vertices()).collect();
    let factors = space
        .subspace_points(model.hyperplane())
        .into_iter()
        .map(|s| {
            Factor::new(
                verts.len(),
                1,
                translate_pairs(&space, &model, &verts, space.coords(s)),
            )
        })
        .collect();
    Ok(Factorization::new(verts.len(), 1, 1, factors))
}

/// Splits each factor of the `(q^i-1)`-factorization into one-factors, for
/// even `q`: the factor through `Π` yields one one-factor `{b, b + d}` per
/// nonzero vector `d` of `Π`, reading vectors over GF(2).
pub fn refine_to_one_factors(n: usize, q: u32, i: usize) -> Result<Factorization, AffineError> {
    check(n, i)?;
    if !q.is_multiple_of(2) {
        return Err(AffineError::OddOrder(q));
    }
    let spec = build_affine_factorization(n, q, i)?;
    let space = ProjectiveSpace::of_order(n, q)?;
    let model = AffineModel::standard(&space);
    let f = space.field();
    let verts: Vec<usize> = (0..model.num_vertices()).collect();
    let mut factors = Vec::new();
    for pi in &spec.at_infinity {
        for p in space.subspace_points(pi) {
            for c in 1..q {
                let d: Vec<u32> = space.coords(p).iter().map(|&x| f.mul(c, x)).collect();
                factors.push(Factor::new(
                    verts.len(),
                    1,
                    translate_pairs(&space, &model, &verts, &d),
                ));
            }
        }
    }
    Ok(Factorization::new(verts.len(), spec.lambda, 1, factors))
}

/// The two splittings of the seven 3-factors of AG(3,2) into one-factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K8Variant {
    /// Each 3-factor splits by direction: three copies of `G`.
    GPrime,
    /// Each 3-factor's two components use shifted directions.
    M,
}

/// A one-factorization of `3K_8` refining the AG(3,2) plane factorization.
///
/// For the line `L_j` at infinity, with `A` the component through the anchor
/// and `B` the other one, the `M` variant takes the three one-factors using
/// directions `(j, j+1)`, `(j+1, j+3)` and `(j+3, j)` in `(A, B)`.
pub fn build_3k8_variant(which: K8Variant) -> Result<Factorization, AffineError> {
    let space = ProjectiveSpace::of_order(3, 2)?;
    let model = AffineModel::standard(&space);
    let fano = FanoLabeling::new(&space);
    let v = model.num_vertices();
    let mut factors = Vec::with_capacity(21);
    for j in 0..7 {
        let [s0, s1, s3] = FanoLabeling::line(j);
        let line = space
            .span_points(&[fano.points[s0], fano.points[s1]])
            .expect("two points");
        debug_assert!(space.contains_point(&line, fano.points[s3]));
        let class = model.parallel_class(&line)?;
        let (a, b) = if class.members[0].contains(&fano.anchor) {
            (&class.members[0], &class.members[1])
        } else {
            (&class.members[1], &class.members[0])
        };
        let dir = |s: usize| space.coords(fano.points[s]).to_vec();
        let shapes = match which {
            K8Variant::GPrime => [(s0, s0), (s1, s1), (s3, s3)],
            K8Variant::M => [(s0, s1), (s1, s3), (s3, s0)],
        };
        for (sa, sb) in shapes {
            let mut comps = translate_pairs(&space, &model, a, &dir(sa));
            comps.extend(translate_pairs(&space, &model, b, &dir(sb)));
            factors.push(Factor::new(v, 1, comps));
        }
    }
    Ok(Factorization::new(v, 3, 1, factors))
}

/// Vertex names for the AG(n,q) constructions.
pub fn affine_labels(n: usize, q: u32) -> Result<Vec<String>, AffineError> {
    let space = ProjectiveSpace::of_order(n, q)?;
    Ok(AffineModel::standard(&space).labels())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{decomposition_search, is_simple, verify_factor};

    #[test]
    fn affine_factorizations_verify() {
        for (n, q, i) in [
            (3usize, 2u32, 2usize),
            (2, 3, 1),
            (2, 4, 1),
            (3, 2, 1),
            (3, 3, 1),
            (4, 2, 2),
            (3, 3, 2),
        ] {
            let spec = build_affine_factorization(n, q, i).unwrap();
            let phi = &spec.factorization;
            verify_factorization(phi).unwrap();
            assert!(is_simple(phi));
            assert_eq!(phi.len() as u64, spec.factor_count);
            for f in phi.factors() {
                assert_eq!(f.components().len(), (q as usize).pow((n - i) as u32));
            }
            assert_eq!(
                spec.lambda as u64 * ((q as u64).pow(n as u32) - 1),
                spec.factor_count * ((q as u64).pow(i as u32) - 1)
            );
        }
    }

    #[test]
    fn edges_follow_their_point_at_infinity() {
        for (n, q, i) in [(3usize, 2u32, 2usize), (2, 3, 1)] {
            let spec = build_affine_factorization(n, q, i).unwrap();
            let space = ProjectiveSpace::of_order(n, q).unwrap();
            let model = AffineModel::standard(&space);
            for (j, factor) in spec.factorization.factors().iter().enumerate() {
                let covered: BTreeSet<(usize, usize)> = factor.pairs().collect();
                for b in 0..model.num_vertices() {
                    for c in b + 1..model.num_vertices() {
                        let w = model.direction(b, c);
                        let inside = space.contains_point(&spec.at_infinity[j], w);
                        assert_eq!(covered.contains(&(b, c)), inside);
                    }
                }
            }
        }
    }

    #[test]
    fn fano_labels_give_lines() {
        let space = ProjectiveSpace::of_order(3, 2).unwrap();
        let fano = FanoLabeling::new(&space);
        assert_eq!(fano.anchor, 0);
        let distinct: BTreeSet<usize> = fano.points.iter().copied().collect();
        assert_eq!(distinct.len(), 7);
        for j in 0..7 {
            let pts: Vec<usize> = FanoLabeling::line(j)
                .iter()
                .map(|&s| fano.points[s])
                .collect();
            assert_eq!(space.span_points(&pts).unwrap().dim(), 1);
        }
    }

    #[test]
    fn g_one_factorizations() {
        for (n, len) in [(2, 3), (3, 7), (4, 15)] {
            let g = one_factorization_g(n).unwrap();
            assert_eq!(g.len(), len);
            verify_factorization(&g).unwrap();
        }
        assert!(matches!(
            one_factorization_g(1),
            Err(AffineError::BadParameters { .. })
        ));
    }

    #[test]
    fn k8_variants() {
        let gp = build_3k8_variant(K8Variant::GPrime).unwrap();
        let m = build_3k8_variant(K8Variant::M).unwrap();
        for phi in [&gp, &m] {
            assert_eq!(phi.len(), 21);
            verify_factorization(phi).unwrap();
            for f in phi.factors() {
                verify_factor(f).unwrap();
                assert_eq!(f.pairs().count(), 4);
            }
        }
        assert!(!is_simple(&gp));
        assert!(is_simple(&m));

        let g = one_factorization_g(3).unwrap();
        let verdict = decomposition_search(&gp, 1, None);
        let w = verdict.witness.unwrap();
        assert_eq!(gp.select(&w, 1), g);
    }

    #[test]
    fn m_is_indecomposable() {
        let m = build_3k8_variant(K8Variant::M).unwrap();
        for mu in [1, 2] {
            let verdict = decomposition_search(&m, mu, None);
            assert!(!verdict.decomposable && verdict.exhausted);
            assert!(verdict.nodes <= 116_280);
        }
    }

    #[test]
    fn decomposability() {
        let d = affine_decomposability(3, 2, 2, None).unwrap();
        assert_eq!(d.verdict, AffineVerdict::Indecomposable);
        assert_eq!((d.closed_form, d.search), (Some(false), Some(false)));

        let d = affine_decomposability(4, 2, 2, None).unwrap();
        assert!(d.consistent());
        let AffineVerdict::Decomposable { fold, witness, .. } = d.verdict else {
            panic!("expected decomposable");
        };
        assert_eq!(fold, 1);
        let spec = build_affine_factorization(4, 2, 2).unwrap();
        verify_factorization(&spec.factorization.select(&witness, fold)).unwrap();

        let d = affine_decomposability(2, 3, 1, None).unwrap();
        assert_eq!(d.verdict, AffineVerdict::Indecomposable);

        let d = affine_decomposability(4, 2, 1, None).unwrap();
        assert!(d.consistent());
    }

    #[test]
    fn even_order_refinement() {
        let phi = refine_to_one_factors(3, 2, 2).unwrap();
        assert_eq!(phi, build_3k8_variant(K8Variant::GPrime).unwrap());
        let phi = refine_to_one_factors(2, 4, 1).unwrap();
        verify_factorization(&phi).unwrap();
        assert_eq!(phi.lambda(), 1);
        assert_eq!(phi.len(), 15);
        assert!(refine_to_one_factors(2, 3, 1).is_err());
    }
}
