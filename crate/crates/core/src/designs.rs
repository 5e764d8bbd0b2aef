//! 2-designs from projective and affine geometries, their validation, and
//! the passage from a resolution to a factorization.
//!
//! A resolution of a 2-`(v,b,k,r,λ)` design into classes of disjoint blocks
//! is the same thing as a `(k-1)`-factorization of `λK_v`: each class,
//! read as a union of cliques on its blocks, is one factor.
//!
//! The identities `vr = bk` and `r(k-1) = λ(v-1)` are necessary but not
//! sufficient; for example no 2-(43,43,7,7,1) design exists.

use std::fmt;

use crate::factorization::{Factor, Factorization};
use crate::geometry::{gaussian_binomial, AffineModel, GeometryError, ProjectiveSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    pub lambda: u64,
}

impl DesignParams {
    /// `vr = bk` and `r(k-1) = λ(v-1)`.
    pub fn satisfies_identities(&self) -> bool {
        self.v > 1
            && self.v * self.r == self.b * self.k
            && self.r * (self.k - 1) == self.lambda * (self.v - 1)
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2-({},{},{},{},{})",
            self.v, self.b, self.k, self.r, self.lambda
        )
    }
}

/// Points `0..v` and blocks as sorted point lists, blocks in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Design {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

impl Design {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Self {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        Design { v, blocks }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Index of a block given as a sorted point list.
    pub fn block_index(&self, block: &[usize]) -> Option<usize> {
        self.blocks
            .binary_search_by(|b| b.as_slice().cmp(block))
            .ok()
    }

    pub fn params(&self) -> Result<DesignParams, DesignViolation> {
        validate_design(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryKind {
    Projective,
    Affine,
}

#[derive(Debug, thiserror::Error)]
pub enum DesignError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("need 0 < i < n, got n={n}, i={i}")]
    BadParameters { n: usize, i: usize },
    #[error("class {class} is not a partition of the points: {reason}")]
    NotAPartition { class: usize, reason: String },
    #[error("block index {0} out of range")]
    BadBlock(usize),
}

/// The design of points and `i`-subspaces of PG(n,q) or AG(n,q).
pub fn design_from_geometry(
    kind: GeometryKind,
    n: usize,
    q: u32,
    i: usize,
) -> Result<Design, DesignError> {
    if i == 0 || i >= n {
        return Err(DesignError::BadParameters { n, i });
    }
    let space = ProjectiveSpace::of_order(n, q)?;
    match kind {
        GeometryKind::Projective => {
            let blocks = space
                .enumerate_subspaces(i)?
                .iter()
                .map(|s| space.subspace_points(s))
                .collect();
            Ok(Design::new(space.num_points(), blocks))
        }
        GeometryKind::Affine => Ok(affine_resolution(&space, i)?.0),
    }
}

/// AG^(i)(n,q) resolved into its parallel classes.
pub fn affine_resolution(
    space: &ProjectiveSpace,
    i: usize,
) -> Result<(Design, Resolution), DesignError> {
    let n = space.dim();
    if i == 0 || i >= n {
        return Err(DesignError::BadParameters { n, i });
    }
    let model = AffineModel::standard(space);
    let classes = model.parallel_classes(i)?;
    let design = Design::new(
        model.num_vertices(),
        classes
            .iter()
            .flat_map(|c| c.members.iter().cloned())
            .collect(),
    );
    let resolution = Resolution {
        classes: classes
            .iter()
            .map(|c| {
                c.members
                    .iter()
                    .map(|m| design.block_index(m).expect("block present"))
                    .collect()
            })
            .collect(),
    };
    Ok((design, resolution))
}

/// The closed-form parameters of the geometric designs.
pub fn geometric_params(kind: GeometryKind, n: usize, q: u64, i: usize) -> DesignParams {
    let (n, i) = (n as i64, i as i64);
    let gb = |a: i64, b: i64| gaussian_binomial(a, b, q) as u64;
    match kind {
        GeometryKind::Projective => DesignParams {
            v: (q.pow(n as u32 + 1) - 1) / (q - 1),
            b: gb(n + 1, i + 1),
            k: (q.pow(i as u32 + 1) - 1) / (q - 1),
            r: gb(n, i),
            lambda: gb(n - 1, i - 1),
        },
        GeometryKind::Affine => DesignParams {
            v: q.pow(n as u32),
            b: q.pow((n - i) as u32) * gb(n, i),
            k: q.pow(i as u32),
            r: gb(n, i),
            lambda: gb(n - 1, i - 1),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignViolation {
    TooFewPoints,
    NoBlocks,
    /// A block contains a point twice or a point outside `0..v`.
    MalformedBlock {
        block: usize,
    },
    /// Axiom (a): a block of the wrong size.
    BlockSize {
        block: usize,
        size: usize,
        expected: usize,
    },
    /// Axiom (b): a point on the wrong number of blocks.
    Replication {
        point: usize,
        count: usize,
        expected: usize,
    },
    /// Axiom (c): a pair on the wrong number of blocks.
    PairCount {
        pair: (usize, usize),
        count: usize,
        expected: usize,
    },
}

impl fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignViolation::TooFewPoints => write!(f, "a design needs at least two points"),
            DesignViolation::NoBlocks => write!(f, "no blocks"),
            DesignViolation::MalformedBlock { block } => write!(f, "block {block} is malformed"),
            DesignViolation::BlockSize {
                block,
                size,
                expected,
            } => write!(
                f,
                "axiom (a): block {block} has {size} points, expected {expected}"
            ),
            DesignViolation::Replication {
                point,
                count,
                expected,
            } => write!(
                f,
                "axiom (b): point {point} is on {count} blocks, expected {expected}"
            ),
            DesignViolation::PairCount {
                pair,
                count,
                expected,
            } => write!(
                f,
                "axiom (c): points {} and {} share {count} blocks, expected {expected}",
                pair.0, pair.1
            ),
        }
    }
}

impl std::error::Error for DesignViolation {}

/// Checks the design axioms in order and returns the parameters, or the
/// first failure with its witness.
pub fn validate_design(d: &Design) -> Result<DesignParams, DesignViolation> {
    if d.v < 2 {
        return Err(DesignViolation::TooFewPoints);
    }
    let Some(first) = d.blocks.first() else {
        return Err(DesignViolation::NoBlocks);
    };
    for (bi, b) in d.blocks.iter().enumerate() {
        if b.iter().any(|&x| x >= d.v) || b.windows(2).any(|w| w[0] == w[1]) {
            return Err(DesignViolation::MalformedBlock { block: bi });
        }
    }
    let k = first.len();
    if let Some(bi) = d.blocks.iter().position(|b| b.len() != k) {
        return Err(DesignViolation::BlockSize {
            block: bi,
            size: d.blocks[bi].len(),
            expected: k,
        });
    }
    let mut rep = vec![0usize; d.v];
    let mut pairs = vec![0usize; d.v * (d.v - 1) / 2];
    for b in &d.blocks {
        for (i, &x) in b.iter().enumerate() {
            rep[x] += 1;
            for &y in &b[i + 1..] {
                pairs[crate::factorization::pair_slot(x, y)] += 1;
            }
        }
    }
    let r = rep[0];
    if let Some(point) = rep.iter().position(|&c| c != r) {
        return Err(DesignViolation::Replication {
            point,
            count: rep[point],
            expected: r,
        });
    }
    let lambda = pairs[0];
    for y in 1..d.v {
        for x in 0..y {
            let c = pairs[crate::factorization::pair_slot(x, y)];
            if c != lambda {
                return Err(DesignViolation::PairCount {
                    pair: (x, y),
                    count: c,
                    expected: lambda,
                });
            }
        }
    }
    let params = DesignParams {
        v: d.v as u64,
        b: d.blocks.len() as u64,
        k: k as u64,
        r: r as u64,
        lambda: lambda as u64,
    };
    debug_assert!(params.satisfies_identities());
    Ok(params)
}

/// The necessary conditions for a resolvable design with these parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvabilityReport {
    /// `λ(v-1) ≡ 0 (mod k-1)`.
    pub replication_integral: bool,
    /// `v ≡ 0 (mod k)`.
    pub points_divisible: bool,
    /// `b ≥ v + r - 1`.
    pub block_bound: bool,
}

impl ResolvabilityReport {
    pub fn all_pass(&self) -> bool {
        self.replication_integral && self.points_divisible && self.block_bound
    }
}

pub fn resolvability_preconditions(p: &DesignParams) -> ResolvabilityReport {
    ResolvabilityReport {
        replication_integral: p.k > 1 && (p.lambda * (p.v - 1)).is_multiple_of(p.k - 1),
        points_divisible: p.k > 0 && p.v.is_multiple_of(p.k),
        block_bound: p.b + 1 >= p.v + p.r,
    }
}

/// Classes of block indices, each class a partition of the points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub classes: Vec<Vec<usize>>,
}

fn check_class(d: &Design, ci: usize, class: &[usize]) -> Result<(), DesignError> {
    let mut seen = vec![false; d.v];
    for &bi in class {
        let block = d.blocks.get(bi).ok_or(DesignError::BadBlock(bi))?;
        for &x in block {
            if x >= d.v || seen[x] {
                return Err(DesignError::NotAPartition {
                    class: ci,
                    reason: format!("point {x} repeated or out of range"),
                });
            }
            seen[x] = true;
        }
    }
    if let Some(x) = seen.iter().position(|&s| !s) {
        return Err(DesignError::NotAPartition {
            class: ci,
            reason: format!("point {x} missing"),
        });
    }
    Ok(())
}

/// Also checks that the classes partition the block set.
pub fn validate_resolution(d: &Design, res: &Resolution) -> Result<(), DesignError> {
    let mut used = vec![false; d.blocks.len()];
    for (ci, class) in res.classes.iter().enumerate() {
        check_class(d, ci, class)?;
        for &bi in class {
            if used[bi] {
                return Err(DesignError::BadBlock(bi));
            }
            used[bi] = true;
        }
    }
    match used.iter().position(|&u| !u) {
        Some(bi) => Err(DesignError::BadBlock(bi)),
        None => Ok(()),
    }
}

/// One `(k-1)`-factor per class, with components the blocks of the class.
///
/// Each class must partition the points. The multiplicity is the design's
/// pair count, so a full resolution yields a factorization of `λK_v`.
pub fn factorization_from_resolution(
    d: &Design,
    res: &Resolution,
) -> Result<Factorization, DesignError> {
    let mut factors = Vec::with_capacity(res.classes.len());
    for (ci, class) in res.classes.iter().enumerate() {
        check_class(d, ci, class)?;
        let comps: Vec<Vec<usize>> = class.iter().map(|&bi| d.blocks[bi].clone()).collect();
        let m = comps[0].len() - 1;
        factors.push(Factor::new(d.v, m, comps));
    }
    let lambda = match validate_design(d) {
        Ok(p) => p.lambda as u32,
        Err(_) => 0,
    };
    let m = factors.first().map_or(0, |f| f.m());
    Ok(Factorization::new(d.v, lambda, m, factors))
}
