//! Deciding whether a factorization of `λK_v` splits into factorizations of
//! `μK_v` and `(λ-μ)K_v`.

use super::{pair_slot, verify_factorization, Factorization};
use crate::search::{Branching, CoverProblem, Outcome};

/// Default node limit for [`decomposition_search`].
pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionVerdict {
    pub decomposable: bool,
    /// Factor indices (ascending) forming a factorization of `μK_v`.
    pub witness: Option<Vec<usize>>,
    /// The search space was fully explored, or a witness was found.
    pub exhausted: bool,
    pub nodes: u64,
}

impl DecompositionVerdict {
    pub fn is_inconclusive(&self) -> bool {
        !self.decomposable && !self.exhausted
    }
}

/// Searches for a sub-multiset of factors covering every pair exactly `mu`
/// times, trying factors in index order.
///
/// Returns a verdict with `exhausted == false` when `max_nodes` runs out.
/// `mu` outside `1..λ` gives a vacuous "not decomposable" verdict.
pub fn decomposition_search(
    phi: &Factorization,
    mu: u32,
    max_nodes: Option<u64>,
) -> DecompositionVerdict {
    if mu == 0 || mu >= phi.lambda() {
        return DecompositionVerdict {
            decomposable: false,
            witness: None,
            exhausted: true,
            nodes: 0,
        };
    }
    let v = phi.v();
    let options = phi
        .factors()
        .iter()
        .map(|f| f.pairs().map(|(a, b)| pair_slot(a, b)).collect())
        .collect();
    let problem = CoverProblem::uniform(v * (v - 1) / 2, mu, options);
    let (outcome, report) = problem
        .solver()
        .branching(Branching::FirstItem)
        .max_nodes(max_nodes)
        .first();
    log::debug!("decomposition search: {} nodes", report.nodes);
    match outcome {
        Outcome::Found(w) => {
            debug_assert!(verify_factorization(&phi.select(&w, mu)).is_ok());
            DecompositionVerdict {
                decomposable: true,
                witness: Some(w),
                exhausted: true,
                nodes: report.nodes,
            }
        }
        Outcome::Exhausted => DecompositionVerdict {
            decomposable: false,
            witness: None,
            exhausted: true,
            nodes: report.nodes,
        },
        Outcome::Inconclusive => DecompositionVerdict {
            decomposable: false,
            witness: None,
            exhausted: false,
            nodes: report.nodes,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::Factor;

    fn k4() -> Vec<Factor> {
        vec![
            Factor::new(4, 1, vec![vec![0, 1], vec![2, 3]]),
            Factor::new(4, 1, vec![vec![0, 2], vec![1, 3]]),
            Factor::new(4, 1, vec![vec![0, 3], vec![1, 2]]),
        ]
    }

    #[test]
    fn doubled_k4_splits() {
        let mut fs = k4();
        fs.extend(k4());
        let phi = Factorization::new(4, 2, 1, fs);
        let verdict = decomposition_search(&phi, 1, None);
        assert!(verdict.decomposable);
        let w = verdict.witness.unwrap();
        assert!(verify_factorization(&phi.select(&w, 1)).is_ok());
        let rest: Vec<usize> = (0..phi.len()).filter(|i| !w.contains(i)).collect();
        assert!(verify_factorization(&phi.select(&rest, 1)).is_ok());
    }

    #[test]
    fn lambda_one_is_vacuous() {
        let phi = Factorization::new(4, 1, 1, k4());
        let verdict = decomposition_search(&phi, 1, None);
        assert!(!verdict.decomposable && verdict.exhausted);
    }

    #[test]
    fn zero_budget_is_inconclusive() {
        let mut fs = k4();
        fs.extend(k4());
        let phi = Factorization::new(4, 2, 1, fs);
        assert!(decomposition_search(&phi, 1, Some(0)).is_inconclusive());
    }
}
