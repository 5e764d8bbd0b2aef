//! Spreads of PG(3,q), reguli, fold spreads and the Kirkman packing of PG(3,2).

use geofactor::factorization::verify_factorization;
use geofactor::spreads::{
    aregular_spread_search, classify_spread, enumerate_spreads, field_reduction_spread,
    packing_search, regulus, singer_fold_spread, verify_fold_spread, verify_packing, verify_spread,
    PackingMode, SpreadClass,
};
use geofactor::ProjectiveSpace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pg32 = ProjectiveSpace::of_order(3, 2)?;
    let s = field_reduction_spread(3, 2, 1)?;
    verify_spread(&pg32, &s)?;
    println!(
        "field reduction spread of PG(3,2): {} lines, {:?}",
        s.len(),
        classify_spread(&pg32, &s)?
    );

    let m = s.members();
    let reg = regulus(&pg32, &m[0], &m[1], &m[2])?;
    println!(
        "regulus through three spread lines: {} lines",
        reg.lines.len()
    );

    let fano = ProjectiveSpace::of_order(2, 2)?;
    let fold = singer_fold_spread(2, 2, 1, 0)?;
    verify_fold_spread(&fano, &fold)?;
    println!(
        "Singer fold spread of PG(2,2): {}-fold, {} lines",
        fold.fold(),
        fold.len()
    );

    let (all, _) = enumerate_spreads(&pg32, 1, None)?;
    println!("PG(3,2) has {} line spreads", all.unwrap().len());

    let pg33 = ProjectiveSpace::of_order(3, 3)?;
    let (spreads, _) = enumerate_spreads(&pg33, 1, None)?;
    let spreads = spreads.unwrap();
    let mut regular = 0;
    let mut mixed = 0;
    for s in &spreads {
        match classify_spread(&pg33, s)? {
            SpreadClass::Regular => regular += 1,
            SpreadClass::Mixed => mixed += 1,
            SpreadClass::Aregular => {}
        }
    }
    println!(
        "PG(3,3): {} spreads, {regular} regular, {mixed} with some but not all reguli",
        spreads.len()
    );
    let (found, report) = aregular_spread_search(&pg33, None)?;
    println!(
        "aregular spread of PG(3,3): {:?} after {} nodes",
        found.found().map(|s| s.len()),
        report.nodes
    );

    let res = packing_search(&pg32, 1, PackingMode::CountAll, None)?;
    println!(
        "packings of PG(3,2): {} in {} projective orbits",
        res.total.unwrap(),
        res.orbits.unwrap()
    );
    let res = packing_search(&pg32, 1, PackingMode::FindOne, None)?;
    let packing = res.packing.unwrap();
    verify_packing(&pg32, &packing, 1)?;
    let kts = packing.to_factorization(&pg32);
    verify_factorization(&kts)?;
    println!("Kirkman's fifteen schoolgirls, one day per line:");
    for (day, f) in kts.factors().iter().enumerate() {
        println!("  day {}: {:?}", day + 1, f.components());
    }
    Ok(())
}
