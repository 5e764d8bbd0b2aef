//! AG(n,q) as PG(n,q) minus a hyperplane at infinity.
//!
//! Affine points are numbered `0..q^n` in the order of their projective
//! indices; these numbers are the vertices of every affine factorization.

use std::collections::BTreeSet;

use super::{linalg, GeometryError, ProjectiveSpace, Subspace};

/// The affine `d`-spaces through one `(d-1)`-space at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass {
    pub at_infinity: Subspace,
    /// Each member as a sorted list of affine vertices; members sorted.
    pub members: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct AffineModel<'a> {
    space: &'a ProjectiveSpace,
    hyperplane: Subspace,
    affine_points: Vec<usize>,
    vertex_of: Vec<Option<usize>>,
}

impl<'a> AffineModel<'a> {
    /// Splits off the given hyperplane.
    pub fn new(space: &'a ProjectiveSpace, hyperplane: Subspace) -> Result<Self, GeometryError> {
        if hyperplane.ambient() != (space.dim(), space.q()) {
            let (n, q) = hyperplane.ambient();
            return Err(GeometryError::AmbientMismatch(n, q, space.dim(), space.q()));
        }
        if space.dim() == 0 || hyperplane.dim() + 1 != space.dim() {
            return Err(GeometryError::NotHyperplane {
                expected: space.dim().saturating_sub(1),
                got: hyperplane.dim(),
            });
        }
        let mut vertex_of = vec![None; space.num_points()];
        let mut affine_points = Vec::new();
        for (p, slot) in vertex_of.iter_mut().enumerate() {
            if !space.contains_point(&hyperplane, p) {
                *slot = Some(affine_points.len());
                affine_points.push(p);
            }
        }
        Ok(AffineModel {
            space,
            hyperplane,
            affine_points,
            vertex_of,
        })
    }

    /// Splits off `x_0 = 0`.
    pub fn standard(space: &'a ProjectiveSpace) -> Self {
        Self::new(space, space.coordinate_hyperplane()).expect("coordinate hyperplane")
    }

    pub fn space(&self) -> &ProjectiveSpace {
        self.space
    }

    pub fn hyperplane(&self) -> &Subspace {
        &self.hyperplane
    }

    pub fn num_vertices(&self) -> usize {
        self.affine_points.len()
    }

    pub fn point_of_vertex(&self, v: usize) -> usize {
        self.affine_points[v]
    }

    pub fn vertex_of_point(&self, p: usize) -> Option<usize> {
        self.vertex_of[p]
    }

    pub fn labels(&self) -> Vec<String> {
        self.affine_points
            .iter()
            .map(|&p| self.space.label(p))
            .collect()
    }

    /// All `k`-subspaces of the hyperplane at infinity, in canonical order.
    pub fn subspaces_at_infinity(&self, k: usize) -> Result<Vec<Subspace>, GeometryError> {
        let n = self.space.dim();
        if k >= n {
            return Err(GeometryError::BadDimension { n, k: k as i64 });
        }
        // enumerate in the hyperplane's own coordinates, then map up
        let local = self.hyperplane_space()?;
        let mut out: Vec<Subspace> = local
            .enumerate_subspaces(k)?
            .iter()
            .map(|s| self.lift(s))
            .collect();
        out.sort();
        Ok(out)
    }

    /// The hyperplane at infinity as a PG(n-1,q) in its own coordinates.
    pub fn hyperplane_space(&self) -> Result<ProjectiveSpace, GeometryError> {
        ProjectiveSpace::new(self.space.dim() - 1, self.space.field().clone())
    }

    /// Maps a subspace of [`Self::hyperplane_space`] into the hyperplane at
    /// infinity, coordinates being taken along the hyperplane's basis.
    pub fn lift(&self, local: &Subspace) -> Subspace {
        let rows = linalg::mat_mul(self.space.field(), local.basis(), self.hyperplane.basis());
        self.space.span_vectors(&rows).expect("nonzero")
    }

    /// The point at infinity of the line through two distinct vertices.
    pub fn direction(&self, u: usize, w: usize) -> usize {
        let line = self
            .space
            .span_points(&[self.point_of_vertex(u), self.point_of_vertex(w)])
            .expect("two points");
        let at_inf = self
            .space
            .meet(&line, &self.hyperplane)
            .expect("same ambient")
            .expect("an affine line meets the hyperplane at infinity");
        self.space.subspace_points(&at_inf)[0]
    }

    /// The affine `(k+1)`-spaces whose points at infinity form `at_infinity`.
    pub fn parallel_class(&self, at_infinity: &Subspace) -> Result<ParallelClass, GeometryError> {
        if !self.space.is_contained(at_infinity, &self.hyperplane) {
            return Err(GeometryError::BadDimension {
                n: self.space.dim(),
                k: at_infinity.dim() as i64,
            });
        }
        let mut covered = vec![false; self.num_vertices()];
        let mut members = BTreeSet::new();
        for v in 0..self.num_vertices() {
            if covered[v] {
                continue;
            }
            let mut rows = at_infinity.basis().to_vec();
            rows.push(self.space.coords(self.point_of_vertex(v)).to_vec());
            let flat = self.space.span_vectors(&rows).expect("nonzero");
            let verts: Vec<usize> = self
                .space
                .subspace_points(&flat)
                .into_iter()
                .filter_map(|p| self.vertex_of[p])
                .collect();
            for &u in &verts {
                covered[u] = true;
            }
            members.insert(verts);
        }
        Ok(ParallelClass {
            at_infinity: at_infinity.clone(),
            members: members.into_iter().collect(),
        })
    }

    /// Every parallel class of affine `d`-spaces, `1 <= d < n`.
    pub fn parallel_classes(&self, d: usize) -> Result<Vec<ParallelClass>, GeometryError> {
        if d == 0 || d >= self.space.dim() {
            return Err(GeometryError::BadDimension {
                n: self.space.dim(),
                k: d as i64,
            });
        }
        self.subspaces_at_infinity(d - 1)?
            .iter()
            .map(|s| self.parallel_class(s))
            .collect()
    }
}
