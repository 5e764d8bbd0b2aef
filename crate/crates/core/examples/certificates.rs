//! Writing, reading and checking factorization certificates.

use geofactor::affine_constructions::build_affine_factorization;
use geofactor::factorization::{verify_factorization, Certificate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = build_affine_factorization(3, 2, 2)?;
    let cert = Certificate::new(&spec.factorization, spec.labels, "affine n=3 q=2 i=2");
    let text = cert.to_json();
    print!("{text}");

    let back = Certificate::from_json(&text)?;
    let phi = back.factorization()?;
    verify_factorization(&phi)?;
    println!(
        "round trip verifies; identical bytes: {}",
        back.to_json() == text
    );

    let mut tampered = back.clone();
    tampered.factors[2][0][1] = 7;
    match tampered.factorization().map(|p| verify_factorization(&p)) {
        Ok(Err(v)) => println!("tampered certificate rejected: {v}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
