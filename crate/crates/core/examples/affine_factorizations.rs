//! Factorizations of λK_{q^n} from parallel classes of AG(n,q), and the two
//! one-factorizations of 3K_8.

use geofactor::affine_constructions::{
    affine_decomposability, build_3k8_variant, build_affine_factorization, one_factorization_g,
    AffineVerdict, K8Variant,
};
use geofactor::factorization::{decomposition_search, is_simple, verify_factorization};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, q, i) in [(3, 2, 2), (3, 2, 1), (2, 4, 1), (4, 2, 2), (3, 3, 2)] {
        let spec = build_affine_factorization(n, q, i)?;
        let phi = &spec.factorization;
        verify_factorization(phi)?;
        let d = affine_decomposability(n, q, i, None)?;
        let verdict = match &d.verdict {
            AffineVerdict::Decomposable { fold, witness, .. } => {
                format!(
                    "decomposable via a {fold}-fold spread ({} factors)",
                    witness.len()
                )
            }
            AffineVerdict::Indecomposable => "indecomposable".to_string(),
            AffineVerdict::Inconclusive => "inconclusive".to_string(),
        };
        println!(
            "AG({n},{q}) {i}-flats: {}-factorization of {}K_{} with {} factors, simple={}, {verdict}",
            phi.m(),
            phi.lambda(),
            phi.v(),
            phi.len(),
            is_simple(phi)
        );
    }

    let g = one_factorization_g(3)?;
    for (name, which) in [("G'", K8Variant::GPrime), ("M", K8Variant::M)] {
        let phi = build_3k8_variant(which)?;
        verify_factorization(&phi)?;
        let v = decomposition_search(&phi, 1, None);
        match v.witness {
            Some(w) => {
                let sub = phi.select(&w, 1);
                println!(
                    "{name}: splits off a one-factorization of K8 (equal to G: {})",
                    sub == g
                );
            }
            None => println!("{name}: indecomposable, {} nodes searched", v.nodes),
        }
    }
    Ok(())
}
