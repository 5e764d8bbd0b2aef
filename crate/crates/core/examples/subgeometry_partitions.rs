//! Fano subplanes of PG(2,4), their partitions of the plane, and the
//! resulting 6-factorization of 288K_21.

use geofactor::factorization::is_simple;
use geofactor::subgeometry::{
    admissible_lambda, build_subgeometry_factorization, count_bundle, cyclic_partitions,
    divides_predicate, enumerate_partitions, enumerate_subgeometries, singer_partition,
    SubgeometryContext,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = SubgeometryContext::new(2, 2, 2, 1000)?;
    let singer = singer_partition(2, 2, 2)?;
    println!("Singer partition of PG(2,4): {:?}", singer.classes);

    let subs = enumerate_subgeometries(&ctx)?;
    let parts = enumerate_partitions(&ctx, None)?.unwrap();
    let bundle = count_bundle(2, 2, 2)?;
    println!("{} Fano subplanes (closed form {})", subs.len(), bundle.s);
    println!(
        "{} partitions (closed form {})",
        parts.len(),
        bundle.p0.as_ref().unwrap()
    );

    let phi = build_subgeometry_factorization(&ctx)?;
    println!(
        "{}-factorization of {}K_{} with {} factors, simple={}",
        phi.m(),
        phi.lambda(),
        phi.v(),
        phi.len(),
        is_simple(&phi)
    );
    let a = admissible_lambda(2, 2, 2)?;
    println!(
        "{} divides lambda, {} divides the factor count: {}",
        a.lambda_divisor, a.factor_divisor, a.satisfied_by_construction
    );
    print!("{}", bundle.to_json());

    let line = SubgeometryContext::new(1, 2, 3, 1000)?;
    println!(
        "PG(1,8): {} partitions into sublines, {} of them from cyclic projectivities",
        enumerate_partitions(&line, None)?.unwrap().len(),
        cyclic_partitions(&line)?.len()
    );

    for x in [2u64, 3] {
        let row: String = (1..=6)
            .map(|s| if divides_predicate(x, 4, s) { 'y' } else { '.' })
            .collect();
        println!("x={x}, r=4, s=1..6: {row}");
    }
    Ok(())
}
