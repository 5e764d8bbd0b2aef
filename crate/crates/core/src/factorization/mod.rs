//! `m`-factors and `m`-factorizations of `λK_v`.
//!
//! A factor is a partition of the vertices into cliques `K_{m+1}`. A
//! factorization of `λK_v` is a multiset of factors covering every vertex
//! pair exactly `λ` times.

mod certificate;
mod decompose;

pub use certificate::{Certificate, CertificateError};
pub use decompose::{decomposition_search, DecompositionVerdict, DEFAULT_MAX_NODES};

use std::fmt;

use num_integer::binomial;

/// A factor whose components are cliques on `m + 1` vertices.
///
/// Components are kept sorted, each as a sorted vertex list, so equal
/// factors compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    v: usize,
    m: usize,
    components: Vec<Vec<usize>>,
}

impl Factor {
    /// Stores the components in canonical order; call [`verify_factor`] to
    /// check that they actually form a factor.
    pub fn new(v: usize, m: usize, components: Vec<Vec<usize>>) -> Self {
        let mut components: Vec<Vec<usize>> = components
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        components.sort();
        Factor { v, m, components }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// The same factor after renaming vertex `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Factor {
        Factor::new(
            self.v,
            self.m,
            self.components
                .iter()
                .map(|c| c.iter().map(|&x| perm[x]).collect())
                .collect(),
        )
    }

    /// Vertex pairs inside components, each as `(a, b)` with `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.components.iter().flat_map(|c| {
            c.iter()
                .enumerate()
                .flat_map(move |(i, &a)| c[i + 1..].iter().map(move |&b| (a, b)))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorViolation {
    ComponentSize {
        component: usize,
        size: usize,
        expected: usize,
    },
    VertexOutOfRange {
        component: usize,
        vertex: usize,
    },
    SharedVertex {
        vertex: usize,
    },
    MissingVertex {
        vertex: usize,
    },
}

impl fmt::Display for FactorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorViolation::ComponentSize {
                component,
                size,
                expected,
            } => write!(
                f,
                "component {component} has {size} vertices, expected {expected}"
            ),
            FactorViolation::VertexOutOfRange { component, vertex } => {
                write!(
                    f,
                    "component {component} contains out-of-range vertex {vertex}"
                )
            }
            FactorViolation::SharedVertex { vertex } => {
                write!(f, "vertex {vertex} lies in two components")
            }
            FactorViolation::MissingVertex { vertex } => {
                write!(f, "vertex {vertex} lies in no component")
            }
        }
    }
}

impl std::error::Error for FactorViolation {}

pub fn verify_factor(factor: &Factor) -> Result<(), FactorViolation> {
    let mut seen = vec![false; factor.v];
    for (ci, c) in factor.components.iter().enumerate() {
        if c.len() != factor.m + 1 {
            return Err(FactorViolation::ComponentSize {
                component: ci,
                size: c.len(),
                expected: factor.m + 1,
            });
        }
        for &x in c {
            if x >= factor.v {
                return Err(FactorViolation::VertexOutOfRange {
                    component: ci,
                    vertex: x,
                });
            }
            if seen[x] {
                return Err(FactorViolation::SharedVertex { vertex: x });
            }
            seen[x] = true;
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(vertex) => Err(FactorViolation::MissingVertex { vertex }),
        None => Ok(()),
    }
}

/// A multiset of factors claimed to factorize `λK_v`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    v: usize,
    lambda: u32,
    m: usize,
    factors: Vec<Factor>,
}

impl Factorization {
    pub fn new(v: usize, lambda: u32, m: usize, mut factors: Vec<Factor>) -> Self {
        factors.sort();
        Factorization {
            v,
            lambda,
            m,
            factors,
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The sub-multiset at `indices`, claimed to factorize `lambda K_v`.
    pub fn select(&self, indices: &[usize], lambda: u32) -> Factorization {
        Factorization::new(
            self.v,
            lambda,
            self.m,
            indices.iter().map(|&i| self.factors[i].clone()).collect(),
        )
    }

    pub fn relabel(&self, perm: &[usize]) -> Factorization {
        Factorization::new(
            self.v,
            self.lambda,
            self.m,
            self.factors.iter().map(|f| f.relabel(perm)).collect(),
        )
    }
}

/// The number of factors a factorization of `λK_v` into `m`-factors must
/// have, if it is an integer.
pub fn expected_factor_count(v: usize, lambda: u32, m: usize) -> Option<u64> {
    let edges = lambda as u64 * binomial(v as u64, 2);
    let per_factor = (v / (m + 1)) as u64 * binomial(m as u64 + 1, 2);
    (v.is_multiple_of(m + 1) && per_factor > 0 && edges.is_multiple_of(per_factor))
        .then(|| edges / per_factor)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorizationViolation {
    ShapeMismatch {
        factor: usize,
        v: usize,
        m: usize,
    },
    Factor {
        factor: usize,
        violation: FactorViolation,
    },
    Coverage {
        pair: (usize, usize),
        covered: u32,
        expected: u32,
    },
}

impl fmt::Display for FactorizationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorizationViolation::ShapeMismatch { factor, v, m } => {
                write!(
                    f,
                    "factor {factor} has v={v}, m={m}, unlike the factorization"
                )
            }
            FactorizationViolation::Factor { factor, violation } => {
                write!(f, "factor {factor}: {violation}")
            }
            FactorizationViolation::Coverage {
                pair,
                covered,
                expected,
            } => write!(
                f,
                "pair {{{}, {}}} covered {covered} times, expected {expected}",
                pair.0, pair.1
            ),
        }
    }
}

impl std::error::Error for FactorizationViolation {}

pub(crate) fn pair_slot(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    b * (b - 1) / 2 + a
}

/// Checks every factor and the exact coverage of every pair. The violation
/// names the first bad factor or the lexicographically first bad pair.
pub fn verify_factorization(phi: &Factorization) -> Result<(), FactorizationViolation> {
    for (i, f) in phi.factors.iter().enumerate() {
        if f.v != phi.v || f.m != phi.m {
            return Err(FactorizationViolation::ShapeMismatch {
                factor: i,
                v: f.v,
                m: f.m,
            });
        }
        verify_factor(f).map_err(|violation| FactorizationViolation::Factor {
            factor: i,
            violation,
        })?;
    }
    let mut count = vec![0u32; phi.v * phi.v.saturating_sub(1) / 2];
    for f in &phi.factors {
        for (a, b) in f.pairs() {
            count[pair_slot(a, b)] += 1;
        }
    }
    for a in 0..phi.v {
        for b in a + 1..phi.v {
            let c = count[pair_slot(a, b)];
            if c != phi.lambda {
                return Err(FactorizationViolation::Coverage {
                    pair: (a, b),
                    covered: c,
                    expected: phi.lambda,
                });
            }
        }
    }
    Ok(())
}

/// No factor occurs twice.
pub fn is_simple(phi: &Factorization) -> bool {
    phi.factors.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k4_one_factorization() -> Factorization {
        Factorization::new(
            4,
            1,
            1,
            vec![
                Factor::new(4, 1, vec![vec![0, 1], vec![2, 3]]),
                Factor::new(4, 1, vec![vec![0, 2], vec![1, 3]]),
                Factor::new(4, 1, vec![vec![0, 3], vec![1, 2]]),
            ],
        )
    }

    #[test]
    fn factor_checks() {
        assert!(
            verify_factor(&Factor::new(8, 3, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]])).is_ok()
        );
        assert_eq!(
            verify_factor(&Factor::new(8, 3, vec![vec![0, 1, 2, 3], vec![3, 5, 6, 7]])),
            Err(FactorViolation::SharedVertex { vertex: 3 })
        );
        assert_eq!(
            verify_factor(&Factor::new(4, 1, vec![vec![0, 1]])),
            Err(FactorViolation::MissingVertex { vertex: 2 })
        );
        assert!(matches!(
            verify_factor(&Factor::new(4, 1, vec![vec![0, 1, 2], vec![3]])),
            Err(FactorViolation::ComponentSize { .. })
        ));
        let triples = (0..5).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect();
        assert!(verify_factor(&Factor::new(15, 2, triples)).is_ok());
    }

    #[test]
    fn k4_and_its_defects() {
        let phi = k4_one_factorization();
        assert!(verify_factorization(&phi).is_ok());
        assert!(is_simple(&phi));
        assert_eq!(expected_factor_count(4, 1, 1), Some(3));

        let short = phi.select(&[0, 1], 1);
        assert_eq!(
            verify_factorization(&short),
            Err(FactorizationViolation::Coverage {
                pair: (0, 3),
                covered: 0,
                expected: 1
            })
        );
        let doubled = phi.select(&[0, 0, 1, 1, 2, 2], 2);
        assert!(verify_factorization(&doubled).is_ok());
        assert!(!is_simple(&doubled));
    }

    #[test]
    fn pair_slots_are_a_bijection() {
        let mut seen = std::collections::BTreeSet::new();
        for b in 1..40 {
            for a in 0..b {
                assert_eq!(pair_slot(b, a), pair_slot(a, b));
                assert!(seen.insert(pair_slot(a, b)));
            }
        }
        assert_eq!(
            seen.into_iter().collect::<Vec<_>>(),
            (0..40 * 39 / 2).collect::<Vec<_>>()
        );
    }

    proptest! {
        #[test]
        fn verification_ignores_relabeling(perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
            let phi = k4_one_factorization();
            let moved = phi.relabel(&perm);
            prop_assert!(verify_factorization(&moved).is_ok());
            prop_assert_eq!(moved.len(), 3);
        }
    }
}
