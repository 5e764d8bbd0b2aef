//! Projective spaces PG(n,q), their subspaces, and the affine spaces obtained
//! by removing a hyperplane.
//!
//! Points are vectors normalized so that the first nonzero coordinate is 1,
//! enumerated in lexicographic order of those coordinate tuples. Subspaces
//! are stored by their reduced row-echelon basis, so equal subspaces have
//! identical representations.

pub mod affine;
pub mod field_model;
pub mod linalg;
pub mod projectivity;

use std::fmt;

use thiserror::Error;

use crate::galois::{FieldSpec, GaloisError};

pub use affine::{AffineModel, ParallelClass};
pub use field_model::FieldModel;
pub use projectivity::{enumerate_pgl, Projectivity};

/// Default ceiling on the number of points of a space.
pub const DEFAULT_MAX_POINTS: usize = 1 << 20;

/// Default ceiling on the number of subspaces returned by one enumeration.
pub const DEFAULT_MAX_SUBSPACES: u128 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Field(#[from] GaloisError),
    #[error("PG({n},{q}) has {count} points, above the limit {limit}")]
    TooManyPoints {
        n: usize,
        q: u32,
        count: u128,
        limit: usize,
    },
    #[error("enumeration would produce {count} subspaces, above the limit {limit}")]
    TooManySubspaces { count: u128, limit: u128 },
    #[error("dimension {k} is not valid in PG({n},q)")]
    BadDimension { n: usize, k: i64 },
    #[error("ambient mismatch: PG({0},{1}) vs PG({2},{3})")]
    AmbientMismatch(usize, u32, usize, u32),
    #[error("vector has length {0}, expected {1}")]
    BadLength(usize, usize),
    #[error("zero vector does not define a point")]
    ZeroVector,
    #[error("matrix is singular")]
    Singular,
    #[error("expected a hyperplane (dimension {expected}), got dimension {got}")]
    NotHyperplane { expected: usize, got: usize },
}

/// `[n choose k]_q`: the number of `k`-dimensional subspaces of an
/// `n`-dimensional vector space over GF(q). Zero when `k < 0` or `k > n`.
///
/// Panics if the result does not fit in a `u128`.
pub fn gaussian_binomial(n: i64, k: i64, q: u64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = q
            .checked_pow((n - i) as u32)
            .expect("gaussian binomial overflow")
            - 1;
        let den = q.pow((i + 1) as u32) - 1;
        // partial products are themselves gaussian binomials, so this divides exactly
        acc = acc.checked_mul(num).expect("gaussian binomial overflow") / den;
    }
    acc
}

/// `(q^{k+1} - 1)/(q - 1)`: the number of points on a projective `k`-space.
pub fn points_on(k: usize, q: u64) -> u128 {
    gaussian_binomial(k as i64 + 1, 1, q)
}

/// A point of PG(n,q) with its canonical coordinates and enumeration index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    pub index: usize,
    pub coords: Vec<u32>,
}

/// A projective subspace, given by a basis in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    q: u32,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn ambient(&self) -> (usize, u32) {
        (self.n, self.q)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u32::to_string).collect();
                format!("({})", cells.join(":"))
            })
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// The projective space PG(n,q) with its canonical point table.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    n: usize,
    field: FieldSpec,
    points: Vec<Vec<u32>>,
}

impl ProjectiveSpace {
    pub fn new(n: usize, field: FieldSpec) -> Result<Self, GeometryError> {
        Self::with_limit(n, field, DEFAULT_MAX_POINTS)
    }

    /// PG(n,q) over the default field of order `q`.
    pub fn of_order(n: usize, q: u32) -> Result<Self, GeometryError> {
        Self::new(n, FieldSpec::of_order(q)?)
    }

    pub fn with_limit(n: usize, field: FieldSpec, limit: usize) -> Result<Self, GeometryError> {
        let q = field.order();
        let count = points_on(n, q as u64);
        if count > limit as u128 {
            return Err(GeometryError::TooManyPoints { n, q, count, limit });
        }
        let mut points = Vec::with_capacity(count as usize);
        // leading 1 at position `lead`, arbitrary tail; more leading zeros first
        for lead in (0..=n).rev() {
            let tail_len = n - lead;
            let tail_count = (q as usize).pow(tail_len as u32);
            for t in 0..tail_count {
                let mut v = vec![0u32; n + 1];
                v[lead] = 1;
                let mut rest = t;
                for j in (lead + 1..=n).rev() {
                    v[j] = (rest % q as usize) as u32;
                    rest /= q as usize;
                }
                points.push(v);
            }
        }
        Ok(ProjectiveSpace { n, field, points })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn coords(&self, index: usize) -> &[u32] {
        &self.points[index]
    }

    pub fn point(&self, index: usize) -> ProjectivePoint {
        ProjectivePoint {
            index,
            coords: self.points[index].clone(),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (0..self.points.len()).map(|i| self.point(i))
    }

    /// Scales `v` so its first nonzero entry is 1; false for the zero vector.
    pub fn normalize(&self, v: &mut [u32]) -> bool {
        let Some(&lead) = v.iter().find(|&&x| x != 0) else {
            return false;
        };
        if lead != 1 {
            let inv = self.field.inv(lead);
            for x in v.iter_mut() {
                *x = self.field.mul(*x, inv);
            }
        }
        true
    }

    /// Index of the point represented by a (not necessarily normalized) vector.
    pub fn index_of(&self, v: &[u32]) -> Result<usize, GeometryError> {
        if v.len() != self.n + 1 {
            return Err(GeometryError::BadLength(v.len(), self.n + 1));
        }
        let mut w = v.to_vec();
        if !self.normalize(&mut w) {
            return Err(GeometryError::ZeroVector);
        }
        Ok(self.index_of_normalized(&w))
    }

    fn index_of_normalized(&self, w: &[u32]) -> usize {
        let q = self.q() as usize;
        let lead = w.iter().position(|&x| x != 0).unwrap();
        let tail_len = self.n - lead;
        let offset = (q.pow(tail_len as u32) - 1) / (q - 1);
        let tail = w[lead + 1..]
            .iter()
            .fold(0usize, |acc, &x| acc * q + x as usize);
        offset + tail
    }

    /// Index of the point of `v`; panics on the zero vector.
    pub(crate) fn index_unchecked(&self, v: &[u32]) -> usize {
        let mut w = v.to_vec();
        assert!(self.normalize(&mut w), "zero vector");
        self.index_of_normalized(&w)
    }

    /// `"(c0:c1:...:cn)"` with field elements as integers.
    pub fn label(&self, index: usize) -> String {
        let cells: Vec<String> = self.points[index].iter().map(u32::to_string).collect();
        format!("({})", cells.join(":"))
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.num_points()).map(|i| self.label(i)).collect()
    }

    fn check_ambient(&self, s: &Subspace) -> Result<(), GeometryError> {
        if (s.n, s.q) != (self.n, self.q()) {
            return Err(GeometryError::AmbientMismatch(s.n, s.q, self.n, self.q()));
        }
        Ok(())
    }

    /// The subspace spanned by the given vectors; `None` if they span nothing.
    pub fn span_vectors(&self, vectors: &[Vec<u32>]) -> Option<Subspace> {
        let basis = linalg::rref(&self.field, vectors);
        (!basis.is_empty()).then(|| Subspace {
            n: self.n,
            q: self.q(),
            basis,
        })
    }

    /// Smallest subspace containing the given points.
    pub fn span_points(&self, points: &[usize]) -> Option<Subspace> {
        let vectors: Vec<Vec<u32>> = points.iter().map(|&i| self.points[i].clone()).collect();
        self.span_vectors(&vectors)
    }

    /// Smallest subspace containing all inputs.
    pub fn span(&self, parts: &[&Subspace]) -> Result<Option<Subspace>, GeometryError> {
        let mut vectors = Vec::new();
        for s in parts {
            self.check_ambient(s)?;
            vectors.extend(s.basis.iter().cloned());
        }
        Ok(self.span_vectors(&vectors))
    }

    /// Intersection of two subspaces; `None` when they are disjoint.
    pub fn meet(&self, a: &Subspace, b: &Subspace) -> Result<Option<Subspace>, GeometryError> {
        self.check_ambient(a)?;
        self.check_ambient(b)?;
        let cols = self.n + 1;
        let mut dual = linalg::nullspace(&self.field, &a.basis, cols);
        dual.extend(linalg::nullspace(&self.field, &b.basis, cols));
        let basis = if dual.is_empty() {
            linalg::identity(cols)
        } else {
            linalg::nullspace(&self.field, &dual, cols)
        };
        Ok(self.span_vectors(&basis))
    }

    pub fn contains_point(&self, s: &Subspace, point: usize) -> bool {
        linalg::in_row_space(&self.field, &s.basis, &self.points[point])
    }

    /// `a ⊆ b`.
    pub fn is_contained(&self, a: &Subspace, b: &Subspace) -> bool {
        a.basis
            .iter()
            .all(|v| linalg::in_row_space(&self.field, &b.basis, v))
    }

    /// Sorted indices of the points of `s`.
    pub fn subspace_points(&self, s: &Subspace) -> Vec<usize> {
        let f = &self.field;
        let q = self.q() as usize;
        let k = s.basis.len();
        let mut out = Vec::with_capacity(points_on(k - 1, q as u64) as usize);
        // combinations whose first nonzero coefficient is 1 are already normalized,
        // because the basis is in RREF
        for lead in 0..k {
            let tail = k - lead - 1;
            for t in 0..q.pow(tail as u32) {
                let mut coeffs = vec![0u32; k];
                coeffs[lead] = 1;
                let mut rest = t;
                for c in coeffs[lead + 1..].iter_mut().rev() {
                    *c = (rest % q) as u32;
                    rest /= q;
                }
                let mut v = vec![0u32; self.n + 1];
                for (c, row) in coeffs.iter().zip(&s.basis) {
                    if *c == 0 {
                        continue;
                    }
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(*c, r));
                    }
                }
                out.push(self.index_of_normalized(&v));
            }
        }
        out.sort_unstable();
        out
    }

    /// All `k`-subspaces in canonical (lexicographic RREF) order.
    pub fn enumerate_subspaces(&self, k: usize) -> Result<Vec<Subspace>, GeometryError> {
        self.enumerate_subspaces_limited(k, DEFAULT_MAX_SUBSPACES)
    }

    pub fn enumerate_subspaces_limited(
        &self,
        k: usize,
        limit: u128,
    ) -> Result<Vec<Subspace>, GeometryError> {
        if k > self.n {
            return Err(GeometryError::BadDimension {
                n: self.n,
                k: k as i64,
            });
        }
        let count = gaussian_binomial(self.n as i64 + 1, k as i64 + 1, self.q() as u64);
        if count > limit {
            return Err(GeometryError::TooManySubspaces { count, limit });
        }
        let rows = k + 1;
        let cols = self.n + 1;
        let q = self.q() as usize;
        let mut out = Vec::with_capacity(count as usize);
        for pivots in combinations(cols, rows) {
            // free cells: right of the row's pivot and not in a pivot column
            let free: Vec<(usize, usize)> = (0..rows)
                .flat_map(|r| {
                    let pv = &pivots;
                    (pv[r] + 1..cols)
                        .filter(move |c| !pv.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            for t in 0..q.pow(free.len() as u32) {
                let mut basis = vec![vec![0u32; cols]; rows];
                for (r, &c) in pivots.iter().enumerate() {
                    basis[r][c] = 1;
                }
                let mut rest = t;
                for &(r, c) in free.iter().rev() {
                    basis[r][c] = (rest % q) as u32;
                    rest /= q;
                }
                out.push(Subspace {
                    n: self.n,
                    q: self.q(),
                    basis,
                });
            }
        }
        out.sort();
        debug_assert_eq!(out.len() as u128, count);
        Ok(out)
    }

    /// Wraps a raw basis (any spanning set) as a canonical subspace.
    pub fn subspace_from_rows(&self, rows: &[Vec<u32>]) -> Result<Subspace, GeometryError> {
        for r in rows {
            if r.len() != self.n + 1 {
                return Err(GeometryError::BadLength(r.len(), self.n + 1));
            }
            if let Some(&bad) = r.iter().find(|&&x| x >= self.q()) {
                return Err(GeometryError::Field(GaloisError::OutOfRange(bad, self.q())));
            }
        }
        self.span_vectors(rows).ok_or(GeometryError::ZeroVector)
    }

    /// The hyperplane `x_0 = 0`.
    pub fn coordinate_hyperplane(&self) -> Subspace {
        let rows: Vec<Vec<u32>> = (1..=self.n)
            .map(|i| (0..=self.n).map(|j| u32::from(i == j)).collect())
            .collect();
        self.span_vectors(&rows).expect("n >= 1")
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
