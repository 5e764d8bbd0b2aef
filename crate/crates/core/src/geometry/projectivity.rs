//! Projectivities: elements of PGL(n+1,q) acting on points and subspaces.
//!
//! A projectivity acts on column vectors, `x -> M x`, so composing `g * h`
//! applies `h` first.

use super::linalg::{self, Matrix};
use super::{GeometryError, ProjectiveSpace, Subspace};
use crate::galois::FieldSpec;

/// An invertible matrix scaled so its first nonzero entry (reading order) is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Projectivity {
    q: u32,
    matrix: Matrix,
}

fn canonical_scale(f: &FieldSpec, m: &mut Matrix) {
    let lead = m
        .iter()
        .flat_map(|r| r.iter())
        .copied()
        .find(|&x| x != 0)
        .expect("zero matrix");
    if lead != 1 {
        let inv = f.inv(lead);
        for x in m.iter_mut().flat_map(|r| r.iter_mut()) {
            *x = f.mul(*x, inv);
        }
    }
}

impl Projectivity {
    pub fn new(field: &FieldSpec, mut matrix: Matrix) -> Result<Self, GeometryError> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(GeometryError::BadLength(
                matrix.first().map_or(0, Vec::len),
                n,
            ));
        }
        if linalg::rank(field, &matrix) < n {
            return Err(GeometryError::Singular);
        }
        canonical_scale(field, &mut matrix);
        Ok(Projectivity {
            q: field.order(),
            matrix,
        })
    }

    pub fn identity(field: &FieldSpec, size: usize) -> Self {
        Projectivity {
            q: field.order(),
            matrix: linalg::identity(size),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Size of the matrix, `n + 1`.
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// `self * other`: apply `other`, then `self`.
    pub fn compose(&self, field: &FieldSpec, other: &Projectivity) -> Projectivity {
        let mut m = linalg::mat_mul(field, &self.matrix, &other.matrix);
        canonical_scale(field, &mut m);
        Projectivity {
            q: self.q,
            matrix: m,
        }
    }

    pub fn inverse(&self, field: &FieldSpec) -> Projectivity {
        let mut m = linalg::inverse(field, &self.matrix).expect("projectivity is invertible");
        canonical_scale(field, &mut m);
        Projectivity {
            q: self.q,
            matrix: m,
        }
    }

    fn check(&self, space: &ProjectiveSpace) -> Result<(), GeometryError> {
        if self.size() != space.dim() + 1 || self.q != space.q() {
            return Err(GeometryError::AmbientMismatch(
                self.size() - 1,
                self.q,
                space.dim(),
                space.q(),
            ));
        }
        Ok(())
    }

    pub fn apply_vector(&self, field: &FieldSpec, v: &[u32]) -> Vec<u32> {
        linalg::mat_vec(field, &self.matrix, v)
    }

    pub fn apply_point(
        &self,
        space: &ProjectiveSpace,
        point: usize,
    ) -> Result<usize, GeometryError> {
        self.check(space)?;
        let v = self.apply_vector(space.field(), space.coords(point));
        Ok(space.index_unchecked(&v))
    }

    pub fn apply_subspace(
        &self,
        space: &ProjectiveSpace,
        s: &Subspace,
    ) -> Result<Subspace, GeometryError> {
        self.check(space)?;
        let rows: Vec<Vec<u32>> = s
            .basis()
            .iter()
            .map(|r| self.apply_vector(space.field(), r))
            .collect();
        Ok(space
            .span_vectors(&rows)
            .expect("image of a subspace is nonempty"))
    }

    /// `perm[p]` is the image of point `p`.
    pub fn point_permutation(&self, space: &ProjectiveSpace) -> Result<Vec<usize>, GeometryError> {
        self.check(space)?;
        Ok((0..space.num_points())
            .map(|p| space.index_unchecked(&self.apply_vector(space.field(), space.coords(p))))
            .collect())
    }
}

/// Every element of PGL(size, q), in lexicographic order of canonical matrices.
///
/// Refuses when more than `max_candidates` matrices would have to be scanned.
pub fn enumerate_pgl(
    field: &FieldSpec,
    size: usize,
    max_candidates: u64,
) -> Result<Vec<Projectivity>, GeometryError> {
    let q = field.order() as u64;
    let cells = (size * size) as u32;
    let total = q
        .checked_pow(cells)
        .filter(|&t| t <= max_candidates)
        .ok_or(GeometryError::TooManySubspaces {
            count: (q as u128).saturating_pow(cells),
            limit: max_candidates as u128,
        })?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut flat = vec![0u32; cells as usize];
        for x in flat.iter_mut().rev() {
            *x = (rest % q) as u32;
            rest /= q;
        }
        if flat.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let matrix: Matrix = flat.chunks(size).map(<[u32]>::to_vec).collect();
        if linalg::rank(field, &matrix) == size {
            out.push(Projectivity {
                q: field.order(),
                matrix,
            });
        }
    }
    Ok(out)
}

/// `|PGL(size, q)|`.
pub fn pgl_order(size: u32, q: u128) -> u128 {
    let mut gl: u128 = 1;
    for i in 0..size {
        gl *= q.pow(size) - q.pow(i);
    }
    gl / (q - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn pgl_orders() {
        for (size, q) in [(2usize, 2u32), (2, 3), (2, 4), (2, 5), (3, 2), (4, 2)] {
            let f = FieldSpec::of_order(q).unwrap();
            let g = enumerate_pgl(&f, size, 1 << 17).unwrap();
            assert_eq!(g.len() as u128, pgl_order(size as u32, q as u128));
        }
    }

    #[test]
    fn identity_fixes_every_point() {
        let s = ProjectiveSpace::of_order(3, 3).unwrap();
        let id = Projectivity::identity(s.field(), 4);
        let perm = id.point_permutation(&s).unwrap();
        assert_eq!(perm, (0..s.num_points()).collect::<Vec<_>>());
    }

    #[test]
    fn permutation_matrix_preserves_fano_lines() {
        let s = ProjectiveSpace::of_order(2, 2).unwrap();
        let g = Projectivity::new(s.field(), vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])
            .unwrap();
        let perm = g.point_permutation(&s).unwrap();
        let distinct: BTreeSet<_> = perm.iter().collect();
        assert_eq!(distinct.len(), 7);
        let lines: BTreeSet<Vec<usize>> = s
            .enumerate_subspaces(1)
            .unwrap()
            .iter()
            .map(|l| s.subspace_points(l))
            .collect();
        for line in &lines {
            let mut image: Vec<usize> = line.iter().map(|&p| perm[p]).collect();
            image.sort_unstable();
            assert!(lines.contains(&image));
        }
        for l in s.enumerate_subspaces(1).unwrap() {
            let img = g.apply_subspace(&s, &l).unwrap();
            let mut mapped: Vec<usize> = s.subspace_points(&l).iter().map(|&p| perm[p]).collect();
            mapped.sort_unstable();
            assert_eq!(s.subspace_points(&img), mapped);
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let f = FieldSpec::of_order(3).unwrap();
        let s = ProjectiveSpace::new(2, f.clone()).unwrap();
        let g = Projectivity::new(&f, vec![vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]).unwrap();
        let h = Projectivity::new(&f, vec![vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 2]]).unwrap();
        let gh = g.compose(&f, &h);
        for p in 0..s.num_points() {
            let lhs = gh.apply_point(&s, p).unwrap();
            let rhs = g.apply_point(&s, h.apply_point(&s, p).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        let id = g.compose(&f, &g.inverse(&f));
        assert_eq!(id, Projectivity::identity(&f, 3));
    }

    #[test]
    fn singular_and_mismatched() {
        let f = FieldSpec::of_order(2).unwrap();
        assert_eq!(
            Projectivity::new(&f, vec![vec![1, 1], vec![1, 1]]),
            Err(GeometryError::Singular)
        );
        let g = Projectivity::identity(&f, 3);
        let s = ProjectiveSpace::of_order(3, 2).unwrap();
        assert!(g.apply_point(&s, 0).is_err());
    }
}
