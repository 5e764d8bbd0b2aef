//! PG(n,Q) realized as GF(Q^{n+1})* / GF(Q)*.
//!
//! The big field is written in the GF(Q)-basis `1, w, ..., w^n` where `w` is
//! its primitive element, which gives every nonzero field element a point of
//! the canonical [`ProjectiveSpace`]. Multiplication by `w` then acts on the
//! points as a Singer cycle.

use super::{GeometryError, ProjectiveSpace};
use crate::galois::{subfield_embedding, FieldSpec, SubfieldEmbedding};

#[derive(Debug, Clone)]
pub struct FieldModel {
    big: FieldSpec,
    embedding: SubfieldEmbedding,
    space: ProjectiveSpace,
    /// Point index of every nonzero big-field element; slot 0 unused.
    point_of: Vec<usize>,
    /// A representative big-field element for each point.
    rep_of: Vec<u32>,
}

impl FieldModel {
    pub fn new(n: usize, small: FieldSpec) -> Result<Self, GeometryError> {
        let p = small.characteristic();
        let e = small.degree();
        let big = FieldSpec::new(p, e * (n as u32 + 1))?;
        let embedding = subfield_embedding(&small, &big)?;
        let space = ProjectiveSpace::new(n, small.clone())?;
        let q = small.order() as usize;
        let powers: Vec<u32> = (0..=n).map(|j| big.exp(j as u64)).collect();
        let mut point_of = vec![usize::MAX; big.order() as usize];
        let mut rep_of = vec![0u32; space.num_points()];
        for t in 1..q.pow(n as u32 + 1) {
            let mut coords = vec![0u32; n + 1];
            let mut rest = t;
            for c in coords.iter_mut().rev() {
                *c = (rest % q) as u32;
                rest /= q;
            }
            let x = coords.iter().zip(&powers).fold(0u32, |acc, (&c, &w)| {
                big.add(acc, big.mul(embedding.apply(c), w))
            });
            let idx = space.index_unchecked(&coords);
            point_of[x as usize] = idx;
            rep_of[idx] = x;
        }
        debug_assert!(point_of[1..].iter().all(|&i| i != usize::MAX));
        Ok(FieldModel {
            big,
            embedding,
            space,
            point_of,
            rep_of,
        })
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    pub fn small(&self) -> &FieldSpec {
        self.space.field()
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.embedding
    }

    pub fn space(&self) -> &ProjectiveSpace {
        &self.space
    }

    /// The point of a nonzero big-field element.
    pub fn point_of(&self, x: u32) -> usize {
        assert!(x != 0, "zero is not a point");
        self.point_of[x as usize]
    }

    pub fn representative(&self, point: usize) -> u32 {
        self.rep_of[point]
    }

    /// The permutation of points induced by multiplication by `c != 0`.
    pub fn multiplier(&self, c: u32) -> Vec<usize> {
        (0..self.space.num_points())
            .map(|p| self.point_of(self.big.mul(c, self.rep_of[p])))
            .collect()
    }

    /// Points of the nonzero elements of the subfield of order `Q^d` (`d | n+1`).
    pub fn subfield_points(&self, d: u32) -> Vec<usize> {
        let order = (self.small().order() as u64).pow(d);
        let mut pts: Vec<usize> = (1..self.big.order())
            .filter(|&x| self.big.pow(x, order) == x)
            .map(|x| self.point_of(x))
            .collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_point_has_q_minus_one_preimages() {
        let m = FieldModel::new(3, FieldSpec::of_order(2).unwrap()).unwrap();
        let mut counts = vec![0; m.space().num_points()];
        for x in 1..16 {
            counts[m.point_of(x)] += 1;
        }
        assert!(counts.iter().all(|&c| c == 1));

        let m = FieldModel::new(2, FieldSpec::of_order(3).unwrap()).unwrap();
        let mut counts = vec![0; m.space().num_points()];
        for x in 1..27 {
            counts[m.point_of(x)] += 1;
        }
        assert!(counts.iter().all(|&c| c == 2));
    }

    #[test]
    fn singer_cycle_is_transitive() {
        let m = FieldModel::new(2, FieldSpec::of_order(2).unwrap()).unwrap();
        let w = m.big().generator();
        let perm = m.multiplier(w);
        let mut p = 0;
        let mut seen = [false; 7];
        for _ in 0..7 {
            assert!(!seen[p]);
            seen[p] = true;
            p = perm[p];
        }
        assert_eq!(p, 0);
    }

    #[test]
    fn gf4_inside_gf16_is_a_line_of_pg32() {
        let m = FieldModel::new(3, FieldSpec::of_order(2).unwrap()).unwrap();
        let pts = m.subfield_points(2);
        assert_eq!(pts.len(), 3);
        let line = m.space().span_points(&pts).unwrap();
        assert_eq!(line.dim(), 1);
    }
}
