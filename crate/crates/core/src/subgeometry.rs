//! Subgeometries PG(n,q) of PG(n,q^k), partitions of PG(n,q^k) into them,
//! and the factorizations those partitions induce.
//!
//! When `gcd(k, n+1) = 1` the cosets of GF(q^{n+1})* in
//! GF(q^{k(n+1)})* / GF(q^k)* partition PG(n,q^k) into `θ` subgeometries
//! (the Singer partition). Its images under PGL(n+1,q^k) are the partitions
//! determined by projectivities acting cyclically on a subgeometry; each is
//! one factor of a factorization of `λK_v` with `v = |PG(n,q^k)|`.
//!
//! Subgeometries are checked independently of the field model: from a frame
//! inside a point set, the set must be exactly the points with coordinates
//! in GF(q) with respect to that frame.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::factorization::{verify_factorization, Factor, Factorization, FactorizationViolation};
use crate::galois::{subfield_embedding, FieldSpec, GaloisError, SubfieldEmbedding};
use crate::geometry::{linalg, FieldModel, GeometryError, ProjectiveSpace, Projectivity};
use crate::search::{Branching, CoverProblem};

#[derive(Debug, thiserror::Error)]
pub enum SubgeometryError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] GaloisError),
    #[error("need k > 1 and gcd(k, n+1) = 1, got n={n}, k={k}")]
    NoPartition { n: usize, k: u32 },
    #[error("need k > 1, gcd(k, n+1) = 1 and gcd(k, n) != 1, got n={n}, k={k}")]
    NotDivisibilityCase { n: usize, k: u32 },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("counting identity failed: {0}")]
    Identity(String),
    #[error("class {class} is not a subgeometry")]
    NotSubgeometry { class: usize },
    #[error("factorization does not verify: {0}")]
    Invalid(FactorizationViolation),
}

/// A PG(n,q) inside PG(n,q^k): sorted point indices and a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgeometry {
    pub points: Vec<usize>,
    /// `n+1` scaled basis vectors; the points are `[Σ a_i b_i]`, `a ∈ GF(q)^{n+1}`.
    pub frame: Vec<Vec<u32>>,
}

/// Disjoint subgeometries covering all points; classes sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgeometryPartition {
    pub classes: Vec<Vec<usize>>,
}

impl SubgeometryPartition {
    fn canonical(mut classes: Vec<Vec<usize>>) -> Self {
        for c in classes.iter_mut() {
            c.sort_unstable();
        }
        classes.sort();
        SubgeometryPartition { classes }
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        Self::canonical(
            self.classes
                .iter()
                .map(|c| c.iter().map(|&p| perm[p]).collect())
                .collect(),
        )
    }
}

/// PG(n,q^k) together with the embedding of GF(q) into its field.
#[derive(Debug, Clone)]
pub struct SubgeometryContext {
    pub n: usize,
    pub q: u32,
    pub k: u32,
    pub space: ProjectiveSpace,
    pub embedding: SubfieldEmbedding,
}

impl SubgeometryContext {
    pub fn new(n: usize, q: u32, k: u32, max_points: usize) -> Result<Self, SubgeometryError> {
        let small = FieldSpec::of_order(q)?;
        let big = FieldSpec::new(small.characteristic(), small.degree() * k)?;
        let space = ProjectiveSpace::with_limit(n, big.clone(), max_points)?;
        let embedding = subfield_embedding(&small, &big)?;
        Ok(SubgeometryContext {
            n,
            q,
            k,
            space,
            embedding,
        })
    }

    /// The points generated over GF(q) by `n+1` independent vectors.
    fn generated(&self, basis: &[Vec<u32>]) -> Vec<usize> {
        let f = self.space.field();
        let q = self.q as usize;
        let dim = self.n + 1;
        let mut out = BTreeSet::new();
        for t in 1..q.pow(dim as u32) {
            let mut rest = t;
            let mut v = vec![0u32; dim];
            for row in basis {
                let a = self.embedding.apply((rest % q) as u32);
                rest /= q;
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(a, b));
                }
            }
            out.insert(self.space.index_of(&v).expect("independent frame"));
        }
        out.into_iter().collect()
    }

    /// The subgeometry with frame `basis_points` and unit point `unit`, if
    /// the points are in general position.
    fn frame_closure(&self, basis_points: &[usize], unit: usize) -> Option<Subgeometry> {
        let rows: Vec<Vec<u32>> = basis_points
            .iter()
            .map(|&p| self.space.coords(p).to_vec())
            .collect();
        let f = self.space.field();
        let c = linalg::coordinates(f, &rows, self.space.coords(unit))?;
        if c.contains(&0) {
            return None;
        }
        let frame: Vec<Vec<u32>> = rows
            .iter()
            .zip(&c)
            .map(|(r, &ci)| r.iter().map(|&x| f.mul(ci, x)).collect())
            .collect();
        Some(Subgeometry {
            points: self.generated(&frame),
            frame,
        })
    }

    /// Whether a point set is a subgeometry, judged from a frame chosen
    /// greedily inside it.
    pub fn validate(&self, points: &[usize]) -> Option<Subgeometry> {
        let f = self.space.field();
        let mut basis: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for &p in points {
            if basis.len() == self.n + 1 {
                break;
            }
            let mut trial = rows.clone();
            trial.push(self.space.coords(p).to_vec());
            if linalg::rank(f, &trial) == trial.len() {
                rows = trial;
                basis.push(p);
            }
        }
        if basis.len() != self.n + 1 {
            return None;
        }
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        points
            .iter()
            .find_map(|&u| self.frame_closure(&basis, u))
            .filter(|s| s.points == sorted)
    }
}

fn check_partition_exists(n: usize, k: u32) -> Result<(), SubgeometryError> {
    if k < 2 || k.gcd(&(n as u32 + 1)) != 1 {
        return Err(SubgeometryError::NoPartition { n, k });
    }
    Ok(())
}

/// The cosets of GF(q^{n+1})* in GF(q^{k(n+1)})* as points of PG(n,q^k).
pub fn singer_partition(
    n: usize,
    q: u32,
    k: u32,
) -> Result<SubgeometryPartition, SubgeometryError> {
    check_partition_exists(n, k)?;
    let small = FieldSpec::of_order(q)?;
    let mid = FieldSpec::new(small.characteristic(), small.degree() * k)?;
    let model = FieldModel::new(n, mid)?;
    let big = model.big();
    let order = (q as u64).pow(n as u32 + 1);
    let base: Vec<u32> = big
        .elements()
        .skip(1)
        .filter(|&x| big.pow(x, order) == x)
        .collect();
    let ctx_theta = theta(n, q, k);
    let theta = ctx_theta.to_u64_digits().first().copied().unwrap_or(0);
    let w = big.generator();
    let mut classes = Vec::new();
    let mut shift = 1u32;
    for _ in 0..theta {
        let mut class: Vec<usize> = base
            .iter()
            .map(|&x| model.point_of(big.mul(x, shift)))
            .collect();
        class.sort_unstable();
        class.dedup();
        classes.push(class);
        shift = big.mul(shift, w);
    }
    Ok(SubgeometryPartition::canonical(classes))
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn qpow(q: u32, e: u64) -> BigUint {
    big(q as u64).pow(e as u32)
}

fn exact_div(a: &BigUint, b: &BigUint, what: &str) -> Result<BigUint, SubgeometryError> {
    let (quot, rem) = a.div_rem(b);
    if !rem.is_zero() {
        return Err(SubgeometryError::Identity(format!(
            "{what} is not an integer"
        )));
    }
    Ok(quot)
}

fn theta(n: usize, q: u32, k: u32) -> BigUint {
    let one = BigUint::one();
    let n1 = n as u64 + 1;
    (qpow(q, k as u64 * n1) - &one) * (qpow(q, 1) - &one)
        / ((qpow(q, k as u64) - &one) * (qpow(q, n1) - &one))
}

/// The counting formulas for subgeometries and the factorization they give.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountBundle {
    pub n: usize,
    pub q: u32,
    pub k: u32,
    /// Subgeometries PG(n,q) in PG(n,q^k).
    pub s: BigUint,
    /// Subgeometries per partition; the remaining fields need `gcd(k,n+1) = 1`.
    pub theta: Option<BigUint>,
    /// Partitions determined by cyclic projectivities.
    pub p0: Option<BigUint>,
    /// Such partitions through a given subgeometry.
    pub rho0: Option<BigUint>,
    /// Subgeometries through two given points.
    pub s_e: Option<BigUint>,
    pub lambda: Option<BigUint>,
    pub v: BigUint,
    pub m: BigUint,
    /// Number of factors, `λ·C(v,2) / (C(m+1,2)·θ)`.
    pub factors: Option<BigUint>,
}

#[derive(Serialize)]
struct CountBundleJson {
    n: usize,
    q: u32,
    k: u32,
    s: String,
    theta: Option<String>,
    p0: Option<String>,
    rho0: Option<String>,
    s_e: Option<String>,
    lambda: Option<String>,
    v: String,
    m: String,
    factors: Option<String>,
}

impl CountBundle {
    /// JSON with every count written as a decimal string.
    pub fn to_json(&self) -> String {
        let s = |x: &BigUint| x.to_string();
        let o = |x: &Option<BigUint>| x.as_ref().map(BigUint::to_string);
        let j = CountBundleJson {
            n: self.n,
            q: self.q,
            k: self.k,
            s: s(&self.s),
            theta: o(&self.theta),
            p0: o(&self.p0),
            rho0: o(&self.rho0),
            s_e: o(&self.s_e),
            lambda: o(&self.lambda),
            v: s(&self.v),
            m: s(&self.m),
            factors: o(&self.factors),
        };
        let mut out = serde_json::to_string(&j).expect("serializes");
        out.push('\n');
        out
    }
}

/// Evaluates the closed forms and checks `p0·θ = s·ρ0`, `λ = S_e·ρ0` and
/// the integrality of the factor count.
pub fn count_bundle(n: usize, q: u32, k: u32) -> Result<CountBundle, SubgeometryError> {
    if k < 2 || n < 1 {
        return Err(SubgeometryError::NoPartition { n, k });
    }
    let one = BigUint::one();
    let n1 = n as u64 + 1;
    let k64 = k as u64;
    let c2 = binomial(n1, 2);
    let qm1 = qpow(q, 1) - &one;
    let mut s_num = qpow(q, c2 * (k64 - 1));
    let mut s_den = BigUint::one();
    for i in 2..=n1 {
        s_num *= qpow(q, k64 * i) - &one;
        s_den *= qpow(q, i) - &one;
    }
    let s = exact_div(&s_num, &s_den, "s")?;
    let v = (qpow(q, k64 * n1) - &one) / (qpow(q, k64) - &one);
    let m = qpow(q, 1) * ((qpow(q, n as u64) - &one) / &qm1);
    let mut bundle = CountBundle {
        n,
        q,
        k,
        s,
        theta: None,
        p0: None,
        rho0: None,
        s_e: None,
        lambda: None,
        v,
        m,
        factors: None,
    };
    if k.gcd(&(n as u32 + 1)) != 1 {
        return Ok(bundle);
    }
    let theta = exact_div(
        &((qpow(q, k64 * n1) - &one) * &qm1),
        &((qpow(q, k64) - &one) * (qpow(q, n1) - &one)),
        "theta",
    )?;
    let mut p0 = qpow(q, k64 * c2);
    let mut rho0 = qpow(q, c2);
    for i in 1..=n as u64 {
        p0 *= qpow(q, k64 * i) - &one;
        rho0 *= qpow(q, i) - &one;
    }
    let p0 = exact_div(&p0, &big(n1), "p0")?;
    let rho0 = exact_div(&rho0, &big(n1), "rho0")?;
    let mut se_num = qpow(q, c2 * (k64 - 1)) * (qpow(q, k64) - &one);
    let mut se_den = qpow(q, k64 - 1) * &qm1;
    for i in 1..n as u64 {
        se_num *= qpow(q, k64 * i) - &one;
        se_den *= qpow(q, i) - &one;
    }
    let s_e = exact_div(&se_num, &se_den, "S_e")?;
    let mut l_num = qpow(q, c2 * k64) * (qpow(q, k64) - &one) * (qpow(q, n as u64) - &one);
    let l_den = qpow(q, k64 - 1) * big(n1) * &qm1;
    for i in 1..n as u64 {
        l_num *= qpow(q, k64 * i) - &one;
    }
    let lambda = exact_div(&l_num, &l_den, "lambda")?;

    if &p0 * &theta != &bundle.s * &rho0 {
        return Err(SubgeometryError::Identity("p0·θ != s·ρ0".into()));
    }
    if lambda != &s_e * &rho0 {
        return Err(SubgeometryError::Identity("λ != S_e·ρ0".into()));
    }
    let pts = (qpow(q, n1) - &one) / &qm1;
    let pair_subs = exact_div(
        &(&bundle.s * &pts * (&pts - &one)),
        &(&bundle.v * (&bundle.v - &one)),
        "subgeometries through two points",
    )?;
    if pair_subs != s_e {
        return Err(SubgeometryError::Identity(
            "S_e differs from the pair count".into(),
        ));
    }
    let vv = &bundle.v;
    let edges = &lambda * vv * (vv - &one) / big(2);
    let per_factor = (&bundle.m + &one) * &bundle.m / big(2) * &theta;
    let factors = exact_div(&edges, &per_factor, "factor count")?;
    if factors != p0 {
        return Err(SubgeometryError::Identity("factor count != p0".into()));
    }
    bundle.theta = Some(theta);
    bundle.p0 = Some(p0);
    bundle.rho0 = Some(rho0);
    bundle.s_e = Some(s_e);
    bundle.lambda = Some(lambda);
    bundle.factors = Some(factors);
    Ok(bundle)
}

/// Default ceiling on `|PG(n,q^k)|` for enumerations.
pub const DEFAULT_MAX_POINTS: usize = 200;

/// Most ordered frames scanned by [`enumerate_subgeometries`].
const MAX_FRAMES: u128 = 5_000_000;

/// Every subgeometry PG(n,q) of PG(n,q^k), by completing frames.
pub fn enumerate_subgeometries(
    ctx: &SubgeometryContext,
) -> Result<Vec<Subgeometry>, SubgeometryError> {
    let np = ctx.space.num_points();
    let frames = binomial(np as u128, ctx.n as u128 + 1) * np as u128;
    if frames > MAX_FRAMES {
        return Err(SubgeometryError::TooLarge(format!("{frames} frames")));
    }
    let f = ctx.space.field();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for basis in crate::geometry::combinations(np, ctx.n + 1) {
        let rows: Vec<Vec<u32>> = basis
            .iter()
            .map(|&p| ctx.space.coords(p).to_vec())
            .collect();
        if linalg::rank(f, &rows) != rows.len() {
            continue;
        }
        for unit in 0..np {
            if let Some(sub) = ctx.frame_closure(&basis, unit) {
                if seen.insert(sub.points.clone()) {
                    out.push(sub);
                }
            }
        }
    }
    out.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(out)
}

/// Every partition of the points into subgeometries, by exact cover.
pub fn enumerate_partitions(
    ctx: &SubgeometryContext,
    max_nodes: Option<u64>,
) -> Result<Option<Vec<SubgeometryPartition>>, SubgeometryError> {
    let subs = enumerate_subgeometries(ctx)?;
    let options: Vec<Vec<usize>> = subs.iter().map(|s| s.points.clone()).collect();
    let problem = CoverProblem::uniform(ctx.space.num_points(), 1, options.clone());
    let (all, _) = problem
        .solver()
        .branching(Branching::FewestOptions)
        .max_nodes(max_nodes)
        .all();
    Ok(all.map(|sols| {
        let mut parts: Vec<SubgeometryPartition> = sols
            .into_iter()
            .map(|sol| {
                SubgeometryPartition::canonical(sol.iter().map(|&i| options[i].clone()).collect())
            })
            .collect();
        parts.sort();
        parts
    }))
}

/// Generators of PGL(n+1, F): a diagonal scaling, a transvection, a
/// transposition and a cyclic shift of coordinates.
fn pgl_generators(f: &FieldSpec, size: usize) -> Vec<Projectivity> {
    let mut gens = Vec::new();
    let mut diag = linalg::identity(size);
    diag[0][0] = f.generator();
    gens.push(diag);
    if size > 1 {
        let mut tv = linalg::identity(size);
        tv[0][1] = 1;
        gens.push(tv);
        let mut swap = linalg::identity(size);
        swap.swap(0, 1);
        gens.push(swap);
        let cycle: Vec<Vec<u32>> = (0..size)
            .map(|i| (0..size).map(|j| u32::from(j == (i + 1) % size)).collect())
            .collect();
        gens.push(cycle);
    }
    gens.into_iter()
        .map(|m| Projectivity::new(f, m).expect("invertible"))
        .collect()
}

/// The orbit of the Singer partition under PGL(n+1,q^k): the partitions
/// determined by projectivities acting cyclically on a subgeometry.
pub fn cyclic_partitions(
    ctx: &SubgeometryContext,
) -> Result<Vec<SubgeometryPartition>, SubgeometryError> {
    let start = singer_partition(ctx.n, ctx.q, ctx.k)?;
    let perms: Vec<Vec<usize>> = pgl_generators(ctx.space.field(), ctx.n + 1)
        .iter()
        .map(|g| g.point_permutation(&ctx.space))
        .collect::<Result<_, _>>()?;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(p) = queue.pop_front() {
        for perm in &perms {
            let img = p.permuted(perm);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// One factor per cyclic-projectivity partition, verified as an
/// `m`-factorization of `λK_v` with the `λ` of [`count_bundle`].
pub fn build_subgeometry_factorization(
    ctx: &SubgeometryContext,
) -> Result<Factorization, SubgeometryError> {
    let bundle = count_bundle(ctx.n, ctx.q, ctx.k)?;
    let parts = cyclic_partitions(ctx)?;
    let v = ctx.space.num_points();
    let m = ctx.q as usize * ((ctx.q as usize).pow(ctx.n as u32) - 1) / (ctx.q as usize - 1);
    for p in &parts {
        for (ci, c) in p.classes.iter().enumerate() {
            if ctx.validate(c).is_none() {
                return Err(SubgeometryError::NotSubgeometry { class: ci });
            }
        }
    }
    let factors: Vec<Factor> = parts
        .iter()
        .map(|p| Factor::new(v, m, p.classes.clone()))
        .collect();
    let lambda: u32 = bundle
        .lambda
        .as_ref()
        .and_then(|l| l.try_into().ok())
        .ok_or_else(|| SubgeometryError::TooLarge("lambda".into()))?;
    let phi = Factorization::new(v, lambda, m, factors);
    let theta = parts[0].classes.len() as u64;
    let lhs = lambda as u64 * binomial(v as u64, 2);
    let rhs = binomial(m as u64 + 1, 2) * theta * phi.len() as u64;
    if lhs != rhs {
        return Err(SubgeometryError::Identity(
            "λ·C(v,2) != C(m+1,2)·θ·f".into(),
        ));
    }
    verify_factorization(&phi).map_err(SubgeometryError::Invalid)?;
    Ok(phi)
}

/// Whether `(x^{rs}-1)(x-1) / ((x^r-1)(x^s-1))` is an integer.
pub fn divides_predicate(x: u64, r: u32, s: u32) -> bool {
    let one = BigUint::one();
    let xb = big(x);
    let num = (xb.pow(r * s) - &one) * (&xb - &one);
    let den = (xb.pow(r) - &one) * (xb.pow(s) - &one);
    (num % den).is_zero()
}

/// Divisibility constraints on `m`-factorizations of `λK_v` whose factors
/// are `θ` disjoint cliques of subgeometry size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleLambda {
    pub d: BigUint,
    /// Must divide `λ`.
    pub lambda_divisor: BigUint,
    /// Must divide the number of factors.
    pub factor_divisor: BigUint,
    /// Largest `t` with `λ = t · lambda_divisor` covered by the existence claim.
    pub t_max: BigUint,
    /// The constraints hold for the cyclic-projectivity factorization.
    pub satisfied_by_construction: bool,
}

pub fn admissible_lambda(n: usize, q: u32, k: u32) -> Result<AdmissibleLambda, SubgeometryError> {
    if k < 2 || k.gcd(&(n as u32 + 1)) != 1 || k.gcd(&(n as u32)) == 1 {
        return Err(SubgeometryError::NotDivisibilityCase { n, k });
    }
    let one = BigUint::one();
    let k64 = k as u64;
    let n64 = n as u64;
    let qm1 = qpow(q, 1) - &one;
    let a = (qpow(q, k64 * n64) - &one) / (qpow(q, k64) - &one);
    let b = (qpow(q, n64) - &one) / &qm1;
    let d = a.gcd(&b);
    let lambda_divisor = &b / &d;
    let factor_divisor = qpow(q, k64 - 1) * &a / &d;
    let c2 = binomial(n64 + 1, 2);
    let mut t_num = &d * qpow(q, c2 * k64) * (qpow(q, k64) - &one);
    for i in 1..n64 {
        t_num *= qpow(q, k64 * i) - &one;
    }
    let t_max = exact_div(&t_num, &(qpow(q, k64 - 1) * big(n64 + 1)), "t")?;
    let bundle = count_bundle(n, q, k)?;
    let satisfied = match (&bundle.lambda, &bundle.factors) {
        (Some(l), Some(f)) => (l % &lambda_divisor).is_zero() && (f % &factor_divisor).is_zero(),
        _ => false,
    };
    Ok(AdmissibleLambda {
        d,
        lambda_divisor,
        factor_divisor,
        t_max,
        satisfied_by_construction: satisfied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::is_simple;

    fn ctx(n: usize, q: u32, k: u32) -> SubgeometryContext {
        SubgeometryContext::new(n, q, k, DEFAULT_MAX_POINTS).unwrap()
    }

    #[test]
    fn singer_partitions_are_partitions_into_subgeometries() {
        for (n, q, k, theta) in [
            (2usize, 2u32, 2u32, 3usize),
            (1, 2, 3, 3),
            (2, 3, 2, 7),
            (1, 2, 5, 11),
        ] {
            let c = SubgeometryContext::new(n, q, k, 1 << 12).unwrap();
            let p = singer_partition(n, q, k).unwrap();
            assert_eq!(p.classes.len(), theta);
            let mut seen = vec![false; c.space.num_points()];
            for class in &p.classes {
                assert!(c.validate(class).is_some());
                for &x in class {
                    assert!(!seen[x]);
                    seen[x] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
        assert!(matches!(
            singer_partition(1, 2, 2),
            Err(SubgeometryError::NoPartition { .. })
        ));
    }

    #[test]
    fn validator_rejects_non_subgeometries() {
        let c = ctx(2, 2, 2);
        let line = c.space.enumerate_subspaces(1).unwrap().remove(0);
        let pts = c.space.subspace_points(&line);
        assert!(c.validate(&pts).is_none());
        let sub = singer_partition(2, 2, 2).unwrap().classes.remove(0);
        let mut broken = sub.clone();
        broken[6] = (0..21).find(|x| !sub.contains(x)).unwrap();
        assert!(c.validate(&broken).is_none());
    }

    #[test]
    fn bundles() {
        let b = count_bundle(2, 2, 2).unwrap();
        let u = |x: u64| Some(BigUint::from(x));
        assert_eq!(b.s, BigUint::from(360u32));
        assert_eq!(
            (b.theta.clone(), b.rho0.clone(), b.p0.clone()),
            (u(3), u(8), u(960))
        );
        assert_eq!((b.s_e.clone(), b.lambda.clone()), (u(36), u(288)));
        assert_eq!(
            (b.v.clone(), b.m.clone()),
            (BigUint::from(21u32), BigUint::from(6u32))
        );

        let b = count_bundle(1, 2, 3).unwrap();
        assert_eq!(b.s, BigUint::from(84u32));
        assert_eq!(
            (b.theta.clone(), b.p0.clone(), b.rho0.clone()),
            (u(3), u(28), u(1))
        );
        assert_eq!(
            (b.lambda.clone(), b.v.clone(), b.m.clone()),
            (u(7), BigUint::from(9u32), BigUint::from(2u32))
        );

        for n in 1..4 {
            for q in [2u32, 3, 4, 5] {
                for k in 2..5 {
                    let b = count_bundle(n, q, k).unwrap();
                    if let (Some(p0), Some(t), Some(r)) = (&b.p0, &b.theta, &b.rho0) {
                        assert_eq!(p0 * t, &b.s * r);
                    }
                }
            }
        }
        let text = count_bundle(2, 2, 2).unwrap().to_json();
        assert!(text.starts_with("{\"n\":2,\"q\":2,\"k\":2,\"s\":\"360\",\"theta\":\"3\""));
    }

    #[test]
    fn enumerations_match_closed_forms() {
        for (n, q, k) in [(1usize, 2u32, 3u32), (1, 3, 2)] {
            let c = ctx(n, q, k);
            let subs = enumerate_subgeometries(&c).unwrap();
            assert_eq!(BigUint::from(subs.len()), count_bundle(n, q, k).unwrap().s);
        }
        let c = ctx(1, 2, 3);
        let parts = enumerate_partitions(&c, None).unwrap().unwrap();
        assert_eq!(parts.len(), 280);
        let cyclic = cyclic_partitions(&c).unwrap();
        assert_eq!(cyclic.len(), 28);
        assert!(cyclic.iter().all(|p| parts.binary_search(p).is_ok()));
    }

    #[test]
    fn small_factorization() {
        let c = ctx(1, 2, 3);
        let phi = build_subgeometry_factorization(&c).unwrap();
        assert_eq!((phi.v(), phi.lambda(), phi.m(), phi.len()), (9, 7, 2, 28));
        assert!(is_simple(&phi));
    }

    #[test]
    fn divides_matches_gcd() {
        assert!(divides_predicate(2, 2, 3));
        assert!(!divides_predicate(2, 2, 2));
        for x in 2..=9u64 {
            for r in 1..=8u32 {
                for s in 1..=8u32 {
                    assert_eq!(divides_predicate(x, r, s), r.gcd(&s) == 1, "{x} {r} {s}");
                }
            }
        }
    }

    #[test]
    fn admissible() {
        let a = admissible_lambda(2, 2, 2).unwrap();
        assert_eq!(a.d, BigUint::from(1u32));
        assert_eq!(a.lambda_divisor, BigUint::from(3u32));
        assert_eq!(a.factor_divisor, BigUint::from(10u32));
        assert_eq!(a.t_max, BigUint::from(96u32));
        assert!(a.satisfied_by_construction);
        let a = admissible_lambda(2, 3, 2).unwrap();
        assert_eq!(a.d, BigUint::from(2u32));
        assert_eq!(a.lambda_divisor, BigUint::from(2u32));
        assert_eq!(a.factor_divisor, BigUint::from(15u32));
        assert!(a.satisfied_by_construction);
        assert!(admissible_lambda(1, 2, 3).is_err());
    }
}
