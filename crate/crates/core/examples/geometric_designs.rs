//! Designs of points and flats, and the factorization given by a resolution.

use geofactor::designs::{
    affine_resolution, design_from_geometry, factorization_from_resolution, geometric_params,
    resolvability_preconditions, validate_design, validate_resolution, GeometryKind,
};
use geofactor::factorization::verify_factorization;
use geofactor::ProjectiveSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (kind, n, q, i) in [
        (GeometryKind::Projective, 2, 2, 1),
        (GeometryKind::Projective, 3, 2, 2),
        (GeometryKind::Affine, 2, 3, 1),
        (GeometryKind::Affine, 3, 2, 2),
        (GeometryKind::Affine, 3, 3, 1),
    ] {
        let d = design_from_geometry(kind, n, q, i)?;
        let found = validate_design(&d)?;
        let expected = geometric_params(kind, n, q as u64, i);
        assert_eq!(found, expected);
        let res = resolvability_preconditions(&found);
        println!(
            "{kind:?} n={n} q={q} i={i}: {found}, resolvability conditions hold: {}",
            res.all_pass()
        );
    }

    let pg = ProjectiveSpace::of_order(2, 3)?;
    let (design, resolution) = affine_resolution(&pg, 1)?;
    validate_resolution(&design, &resolution)?;
    let phi = factorization_from_resolution(&design, &resolution)?;
    verify_factorization(&phi)?;
    println!(
        "AG(2,3) lines: {} parallel classes give a {}-factorization of {}K_{}",
        phi.len(),
        phi.m(),
        phi.lambda(),
        phi.v()
    );
    Ok(())
}
