use geofactor::affine_constructions::{build_affine_factorization, one_factorization_g};
use geofactor::designs::{design_from_geometry, GeometryKind};
use geofactor::factorization::{decomposition_search, verify_factorization};
use geofactor::spreads::{enumerate_spreads, fold_spread_search};
use geofactor::subgeometry::{count_bundle, singer_partition, SubgeometryContext};
use geofactor::{Factorization, ProjectiveSpace};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn shuffled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Several relabeled copies of the one-factorization of K8 stacked together.
fn stacked(perms: &[Vec<usize>]) -> Factorization {
    let g = one_factorization_g(3).unwrap();
    let factors = perms
        .iter()
        .flat_map(|p| g.relabel(p).factors().to_vec())
        .collect();
    Factorization::new(8, perms.len() as u32, 1, factors)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complement_symmetry(perms in prop::collection::vec(shuffled(8), 2..4), mu in 1u32..3) {
        let phi = stacked(&perms);
        prop_assume!(mu < phi.lambda());
        let a = decomposition_search(&phi, mu, None);
        let b = decomposition_search(&phi, phi.lambda() - mu, None);
        prop_assert!(a.exhausted && b.exhausted);
        prop_assert_eq!(a.decomposable, b.decomposable);
    }

    #[test]
    fn relabeled_constructions_verify(perm in shuffled(16), which in 0usize..3) {
        let (n, q, i) = [(4usize, 2u32, 2usize), (2, 4, 1), (4, 2, 1)][which];
        let phi = build_affine_factorization(n, q, i).unwrap().factorization;
        let moved = phi.relabel(&perm);
        prop_assert!(verify_factorization(&moved).is_ok());
    }

    #[test]
    fn dropping_factors_breaks_coverage(keep in subsequence((0..7).collect::<Vec<_>>(), 1..7)) {
        let phi = build_affine_factorization(3, 2, 2).unwrap().factorization;
        let part = phi.select(&keep, phi.lambda());
        prop_assert!(verify_factorization(&part).is_err());
    }
}

#[test]
fn counting_identity_on_built_factorizations() {
    for (n, q, i) in [
        (3usize, 2u32, 2usize),
        (3, 2, 1),
        (2, 3, 1),
        (2, 4, 1),
        (4, 2, 2),
        (3, 3, 2),
        (3, 3, 1),
    ] {
        let phi = build_affine_factorization(n, q, i).unwrap().factorization;
        verify_factorization(&phi).unwrap();
        let (v, m, f, l) = (
            phi.v() as u64,
            phi.m() as u64,
            phi.len() as u64,
            phi.lambda() as u64,
        );
        assert_eq!(
            l * v * (v - 1),
            f * (v / (m + 1)) * (m + 1) * m,
            "({n},{q},{i})"
        );
    }
}

#[test]
fn fold_spread_double_count() {
    for (n, q) in [(3usize, 2u32), (3, 3)] {
        let space = ProjectiveSpace::of_order(n - 1, q).unwrap();
        for f in 1..=(q + 1) {
            let (o, _) = fold_spread_search(&space, n - 2, f, None).unwrap();
            if let Some(s) = o.found() {
                let g = s.len() as u64;
                let q = q as u64;
                assert_eq!(
                    g * (q.pow(n as u32 - 1) - 1) / (q - 1),
                    f as u64 * (q.pow(n as u32) - 1) / (q - 1)
                );
            }
        }
    }
}

#[test]
fn spreads_are_resolution_classes() {
    let space = ProjectiveSpace::of_order(3, 2).unwrap();
    let design = design_from_geometry(GeometryKind::Projective, 3, 2, 1).unwrap();
    let (spreads, _) = enumerate_spreads(&space, 1, None).unwrap();
    for s in spreads.unwrap() {
        let mut covered = vec![0; design.v()];
        for m in s.members() {
            let pts = space.subspace_points(m);
            assert!(design.block_index(&pts).is_some());
            for p in pts {
                covered[p] += 1;
            }
        }
        assert!(covered.iter().all(|&c| c == 1));
    }
}

#[test]
fn singer_classes_contain_their_sublines() {
    for (n, q, k) in [(2usize, 2u32, 2u32), (1, 2, 3), (1, 3, 3)] {
        let ctx = SubgeometryContext::new(n, q, k, 1 << 12).unwrap();
        let part = singer_partition(n, q, k).unwrap();
        let theta = count_bundle(n, q, k).unwrap().theta.unwrap();
        assert_eq!(theta, part.classes.len().into());
        let f = ctx.space.field();
        for class in &part.classes {
            let sub = ctx.validate(class).expect("subgeometry");
            let rational: Vec<Vec<u32>> = (1..(q as usize).pow(n as u32 + 1))
                .map(|t| {
                    let mut rest = t;
                    let mut v = vec![0u32; n + 1];
                    for row in &sub.frame {
                        let a = ctx.embedding.apply((rest % q as usize) as u32);
                        rest /= q as usize;
                        for (x, &b) in v.iter_mut().zip(row) {
                            *x = f.add(*x, f.mul(a, b));
                        }
                    }
                    v
                })
                .collect();
            for a in &rational {
                for b in &rational {
                    for x in 0..q {
                        let c = ctx.embedding.apply(x);
                        let w: Vec<u32> = a
                            .iter()
                            .zip(b)
                            .map(|(&s, &t)| f.add(s, f.mul(c, t)))
                            .collect();
                        if w.iter().all(|&z| z == 0) {
                            continue;
                        }
                        let p = ctx.space.index_of(&w).unwrap();
                        assert!(class.binary_search(&p).is_ok());
                    }
                }
            }
        }
    }
}
