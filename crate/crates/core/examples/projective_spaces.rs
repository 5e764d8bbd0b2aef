//! Points, subspaces and projectivities of PG(3,2), and AG(3,2) inside it.

use geofactor::geometry::{gaussian_binomial, AffineModel, Projectivity};
use geofactor::ProjectiveSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pg = ProjectiveSpace::of_order(3, 2)?;
    println!("PG(3,2): {} points", pg.num_points());
    for k in 0..3 {
        let subs = pg.enumerate_subspaces(k)?;
        println!(
            "  {k}-subspaces: {} (gaussian binomial {})",
            subs.len(),
            gaussian_binomial(4, k as i64 + 1, 2)
        );
    }

    let lines = pg.enumerate_subspaces(1)?;
    let (a, b) = (&lines[0], &lines[lines.len() - 1]);
    println!("line {a} has points {:?}", pg.subspace_points(a));
    match pg.meet(a, b)? {
        Some(m) => println!("{a} and {b} meet in {m}"),
        None => println!(
            "{a} and {b} are skew, spanning {}",
            pg.span(&[a, b])?.unwrap()
        ),
    }

    let g = Projectivity::new(
        pg.field(),
        vec![
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 1, 0, 0],
        ],
    )?;
    let perm = g.point_permutation(&pg)?;
    let mut order = 1;
    let mut h = g.clone();
    while h != Projectivity::identity(pg.field(), 4) {
        h = h.compose(pg.field(), &g);
        order += 1;
    }
    println!("projectivity of order {order} moves point 0 to {}", perm[0]);

    let ag = AffineModel::standard(&pg);
    println!(
        "AG(3,2) has {} points: {:?}",
        ag.num_vertices(),
        ag.labels()
    );
    for class in ag.parallel_classes(2)?.iter().take(3) {
        println!(
            "  planes through {}: {:?}",
            class.at_infinity, class.members
        );
    }
    Ok(())
}
