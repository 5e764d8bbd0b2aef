//! Arithmetic in GF(8) and GF(9), and GF(4) inside GF(16).

use geofactor::galois::{subfield_embedding, FieldSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f8 = FieldSpec::of_order(8)?;
    println!("GF(8) modulus (constant term first): {:?}", f8.modulus());
    let w = f8.generator();
    for k in 0..7 {
        let x = f8.exp(k);
        println!("w^{k} = {x} = {:?}", f8.coeffs(x));
    }
    println!("w * w^-1 = {}", f8.mul(w, f8.inv(w)));

    let f9 = FieldSpec::of_order(9)?;
    let a = f9.from_coeffs(&[1, 2]);
    println!(
        "in GF(9): ({a})^4 = {}, frobenius = {}",
        f9.pow(a, 4),
        f9.frobenius(a)
    );
    println!("log of {a} = {}", f9.discrete_log(a)?);

    let f4 = FieldSpec::of_order(4)?;
    let f16 = FieldSpec::of_order(16)?;
    let emb = subfield_embedding(&f4, &f16)?;
    println!("GF(4) inside GF(16): {:?}", emb.image());
    for x in f4.elements() {
        for y in f4.elements() {
            assert_eq!(emb.apply(f4.mul(x, y)), f16.mul(emb.apply(x), emb.apply(y)));
        }
    }
    println!("embedding respects multiplication");
    Ok(())
}
