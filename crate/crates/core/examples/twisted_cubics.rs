//! Twisted cubics of PG(3,q), their spreads, stabilizers and counts.

use geofactor::cubic::{
    cubic_counts, cubic_spread, random_projectivity, sample_distinct_spreads, stabilizer_report,
    TwistedCubic,
};
use geofactor::ProjectiveSpace;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [2, 5, 8] {
        let space = ProjectiveSpace::of_order(3, q)?;
        let cubic = TwistedCubic::canonical(&space);
        let cs = cubic_spread(&space, &cubic)?;
        println!(
            "q={q}: spread of {} lines, (tangents, chords, axes) = {:?}",
            cs.spread.len(),
            cs.signature()
        );
    }

    let space = ProjectiveSpace::of_order(3, 5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = random_projectivity(space.field(), &mut rng);
    let moved = TwistedCubic::image(&space, &g);
    println!(
        "a random cubic of PG(3,5) is in general position: {}; its spread has {} lines",
        moved.in_general_position(&space),
        cubic_spread(&space, &moved)?.spread.len()
    );

    let st = stabilizer_report(5)?;
    println!(
        "PGL(2,5) acts with order {}, fixes the cubic: {}, sharply 3-transitive: {}",
        st.order, st.fixes_cubic, st.sharply_triply_transitive
    );

    let sample = sample_distinct_spreads(5, 100, 1)?;
    println!(
        "{} pairs of distinct cubics, {} with equal spreads",
        sample.distinct_cubics, sample.same_spread
    );

    for q in [5, 8, 11] {
        let c = cubic_counts(q);
        println!(
            "q={q}: {} cubics, {} through a line, identities hold: {}",
            c.num_cubics,
            c.c_ell,
            c.orbit_stabilizer_holds && c.quotient_identity_holds
        );
    }
    Ok(())
}
