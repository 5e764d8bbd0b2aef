//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use geofactor::affine_constructions::{
    affine_decomposability, build_3k8_variant, build_affine_factorization, one_factorization_g,
    AffineVerdict, K8Variant,
};
use geofactor::cubic::{
    cubic_counts, cubic_spread, sample_distinct_spreads, stabilizer_report, TwistedCubic,
};
use geofactor::designs::{design_from_geometry, geometric_params, validate_design, GeometryKind};
use geofactor::factorization::{
    decomposition_search, is_simple, verify_factorization, Certificate,
};
use geofactor::galois::prime_power;
use geofactor::spreads::{
    classify_spread, enumerate_spreads, field_reduction_spread, packing_search, singer_fold_spread,
    verify_fold_spread, verify_packing, verify_spread, PackingMode, SpreadClass,
};
use geofactor::subgeometry::{
    admissible_lambda, build_subgeometry_factorization, count_bundle, divides_predicate,
    enumerate_partitions, enumerate_subgeometries, SubgeometryContext,
};
use geofactor::ProjectiveSpace;
use num_bigint::BigUint;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn designs() -> Outcome {
    let mut checked = 0;
    for q in (2u32..=99).filter(|&q| prime_power(q).is_some()) {
        for n in 2usize.. {
            let qq = q as u64;
            let pg_v = (qq.pow(n as u32 + 1) - 1) / (qq - 1);
            let ag_v = qq.pow(n as u32);
            if pg_v > 100 && ag_v > 100 {
                break;
            }
            for (kind, v) in [
                (GeometryKind::Projective, pg_v),
                (GeometryKind::Affine, ag_v),
            ] {
                if v > 100 {
                    continue;
                }
                for i in 1..n {
                    let d = design_from_geometry(kind, n, q, i).map_err(err)?;
                    let found =
                        validate_design(&d).map_err(|e| format!("{kind:?} ({n},{q},{i}): {e}"))?;
                    let expected = geometric_params(kind, n, qq, i);
                    ensure(
                        found == expected,
                        format!("{kind:?} ({n},{q},{i}): {found} vs {expected}"),
                    )?;
                    ensure(found.satisfies_identities(), "parameter identities")?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checked} geometric designs match their closed forms"
    ))
}

fn k8_suite() -> Outcome {
    let spec = build_affine_factorization(3, 2, 2).map_err(err)?;
    let phi = &spec.factorization;
    verify_factorization(phi).map_err(err)?;
    ensure(
        (phi.v(), phi.lambda(), phi.m(), phi.len()) == (8, 3, 3, 7) && is_simple(phi),
        "AG(3,2) planes: not a simple 3-factorization of 3K8 with 7 factors",
    )?;
    let d = affine_decomposability(3, 2, 2, None).map_err(err)?;
    ensure(
        d.verdict == AffineVerdict::Indecomposable && d.search == Some(false) && d.consistent(),
        format!("AG(3,2) planes: {:?}, search {:?}", d.verdict, d.search),
    )?;

    let g = one_factorization_g(3).map_err(err)?;
    let gp = build_3k8_variant(K8Variant::GPrime).map_err(err)?;
    verify_factorization(&gp).map_err(err)?;
    let v = decomposition_search(&gp, 1, None);
    let w = v.witness.ok_or("G' has no witness")?;
    ensure(gp.select(&w, 1) == g, "G' witness differs from G")?;

    let m = build_3k8_variant(K8Variant::M).map_err(err)?;
    verify_factorization(&m).map_err(err)?;
    let mut nodes = Vec::new();
    for mu in [1, 2] {
        let v = decomposition_search(&m, mu, None);
        ensure(
            !v.decomposable && v.exhausted,
            format!("M splits for mu={mu}"),
        )?;
        ensure(
            v.nodes <= 116_280,
            format!("M search used {} nodes", v.nodes),
        )?;
        nodes.push(v.nodes);
    }
    Ok(format!(
        "3K8 indecomposable (search refutes fold spreads in {} nodes), G' splits into G, M exhausted in {nodes:?} nodes",
        d.nodes
    ))
}

fn spread_engine() -> Outcome {
    let space = ProjectiveSpace::of_order(3, 2).map_err(err)?;
    let s = field_reduction_spread(3, 2, 1).map_err(err)?;
    verify_spread(&space, &s).map_err(err)?;
    let (all, _) = enumerate_spreads(&space, 1, None).map_err(err)?;
    let all = all.ok_or("spread enumeration incomplete")?;
    ensure(all.len() == 56, format!("{} spreads of PG(3,2)", all.len()))?;
    for sp in &all {
        ensure(
            classify_spread(&space, sp).map_err(err)? == SpreadClass::Regular,
            "a PG(3,2) spread is not regular",
        )?;
    }
    let fold = singer_fold_spread(3, 2, 1, 0).map_err(err)?;
    verify_fold_spread(&space, &fold).map_err(err)?;
    ensure(fold.fold() == 3, format!("Singer fold {}", fold.fold()))?;
    Ok(format!(
        "56 regular spreads; Singer fold spread is {}-fold with {} lines",
        fold.fold(),
        fold.len()
    ))
}

fn packings() -> Outcome {
    let space = ProjectiveSpace::of_order(3, 2).map_err(err)?;
    let res = packing_search(&space, 1, PackingMode::CountAll, None).map_err(err)?;
    let total = res.total.ok_or("packing count incomplete")?;
    let orbits = res.orbits.ok_or("orbit count missing")?;
    ensure(
        total == 240 || orbits == 240,
        format!("{total} packings in {orbits} orbits, neither equals 240"),
    )?;
    let one = packing_search(&space, 1, PackingMode::FindOne, None).map_err(err)?;
    let p = one.packing.ok_or("no packing found")?;
    verify_packing(&space, &p, 1)?;
    let kts = p.to_factorization(&space);
    verify_factorization(&kts).map_err(err)?;
    ensure(
        (kts.v(), kts.lambda(), kts.m(), kts.len()) == (15, 1, 2, 7)
            && kts.factors().iter().all(|f| f.components().len() == 5),
        "Kirkman factorization has the wrong shape",
    )?;
    Ok(format!(
        "{total} labeled packings (matches 240) in {orbits} PGL(4,2) orbits; KTS(15) verified"
    ))
}

fn cubics() -> Outcome {
    let space = ProjectiveSpace::of_order(3, 5).map_err(err)?;
    let cs = cubic_spread(&space, &TwistedCubic::canonical(&space)).map_err(err)?;
    verify_spread(&space, &cs.spread).map_err(err)?;
    ensure(
        cs.spread.len() == 26 && cs.signature() == (6, 10, 10),
        format!(
            "q=5 spread {} lines, signature {:?}",
            cs.spread.len(),
            cs.signature()
        ),
    )?;
    let st = stabilizer_report(5).map_err(err)?;
    ensure(
        st.order == 120 && st.fixes_cubic && st.sharply_triply_transitive,
        format!("stabilizer {st:?}"),
    )?;
    let mut qs = 0;
    for q in (5u32..=49).filter(|&q| prime_power(q).is_some()) {
        let c = cubic_counts(q);
        ensure(
            c.orbit_stabilizer_holds && c.quotient_identity_holds,
            format!("count identities fail at q={q}"),
        )?;
        qs += 1;
    }
    let sample = sample_distinct_spreads(5, 120, 2024).map_err(err)?;
    ensure(
        sample.distinct_cubics >= 100,
        format!("only {} distinct pairs", sample.distinct_cubics),
    )?;
    ensure(
        sample.same_spread == 0,
        format!("{} pairs share a spread", sample.same_spread),
    )?;
    let lambda = cubic_counts(5).c_ell;
    Ok(format!(
        "q=5 spread (6,10,10), stabilizer 120, identities for {qs} orders, {} sampled pairs distinct; λ={lambda} not materialized",
        sample.distinct_cubics
    ))
}

fn subgeometries() -> Outcome {
    let ctx = SubgeometryContext::new(2, 2, 2, 1000).map_err(err)?;
    let bundle = count_bundle(2, 2, 2).map_err(err)?;
    let subs = enumerate_subgeometries(&ctx).map_err(err)?;
    ensure(
        subs.len() == 360 && BigUint::from(subs.len()) == bundle.s,
        format!("{} subplanes vs s = {}", subs.len(), bundle.s),
    )?;
    let parts = enumerate_partitions(&ctx, None)
        .map_err(err)?
        .ok_or("partition search incomplete")?;
    ensure(
        parts.len() == 960 && Some(BigUint::from(parts.len())) == bundle.p0,
        format!("{} partitions vs p0 = {:?}", parts.len(), bundle.p0),
    )?;
    let phi = build_subgeometry_factorization(&ctx).map_err(err)?;
    verify_factorization(&phi).map_err(err)?;
    ensure(
        (phi.v(), phi.lambda(), phi.m(), phi.len()) == (21, 288, 6, 960) && is_simple(&phi),
        "subgeometry factorization has the wrong shape",
    )?;
    let a = admissible_lambda(2, 2, 2).map_err(err)?;
    ensure(
        a.lambda_divisor == BigUint::from(3u32)
            && a.factor_divisor == BigUint::from(10u32)
            && (BigUint::from(phi.lambda()) % &a.lambda_divisor) == BigUint::ZERO
            && (BigUint::from(phi.len()) % &a.factor_divisor) == BigUint::ZERO
            && a.satisfied_by_construction,
        "divisibility conditions",
    )?;
    Ok("360 subplanes, 960 partitions, simple 6-factorization of 288K21 with 960 factors, 3 | 288, 10 | 960".into())
}

fn number_theory() -> Outcome {
    let mut cases = 0;
    for x in 2..=9u64 {
        for r in 1..=8u32 {
            for s in 1..=8u32 {
                let g = num_integer::gcd(r, s);
                ensure(
                    divides_predicate(x, r, s) == (g == 1),
                    format!("x={x} r={r} s={s}"),
                )?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases agree with gcd(r,s) = 1"))
}

fn geofactor(args: &[&str], dir: &Path) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_geofactor"))
        .args(args)
        .current_dir(dir)
        .env("RUST_LOG", "warn")
        .output()
        .map_err(err)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let builds: [&[&str]; 6] = [
        &["build", "affine", "--n", "3", "--q", "2", "--i", "2"],
        &["build", "affine", "--n", "2", "--q", "3", "--i", "1"],
        &["build", "k8", "--variant", "gprime"],
        &["build", "k8", "--variant", "m"],
        &["build", "kirkman"],
        &["build", "subgeo", "--n", "2", "--q", "2", "--k", "2"],
    ];
    for (idx, args) in builds.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let name = format!("c{idx}-{run}.json");
            let mut full = args.to_vec();
            full.extend(["-o", &name]);
            let o = geofactor(&full, dir.path())?;
            ensure(
                o.status.code() == Some(0),
                format!("{args:?} exited {:?}", o.status.code()),
            )?;
            outputs.push(fs::read(dir.path().join(&name)).map_err(err)?);
        }
        ensure(
            outputs[0] == outputs[1],
            format!("{args:?} differs between runs"),
        )?;

        let name = format!("c{idx}-0.json");
        let o = geofactor(&["verify", &name], dir.path())?;
        ensure(
            o.status.code() == Some(0),
            format!("{args:?} does not verify"),
        )?;
        let cert = Certificate::load(dir.path().join(&name)).map_err(err)?;
        ensure(
            cert.to_json().into_bytes() == outputs[0],
            "library round trip changes bytes",
        )?;

        let mut bad = cert.clone();
        let comp = &mut bad.factors[0][0];
        comp[0] = if comp[0] == 0 { 1 } else { 0 };
        let bad_name = format!("t{idx}.json");
        bad.save(dir.path().join(&bad_name)).map_err(err)?;
        let o = geofactor(&["verify", &bad_name], dir.path())?;
        ensure(
            o.status.code() == Some(2),
            format!("{args:?} tampered: exit {:?}", o.status.code()),
        )?;
    }
    Ok(format!(
        "{} certificates byte-identical, verified after round trip, tampering exits 2",
        builds.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("design layer", designs, Duration::from_secs(5)),
        ("3K8 suite", k8_suite, Duration::from_secs(10)),
        ("spread engine", spread_engine, Duration::from_secs(30)),
        ("packings and Kirkman", packings, Duration::from_secs(300)),
        ("twisted cubics", cubics, Duration::from_secs(60)),
        ("subgeometries", subgeometries, Duration::from_secs(300)),
        ("number theory", number_theory, Duration::from_secs(1)),
        ("determinism", determinism, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = result.and_then(|d| {
            if took <= *limit {
                Ok(d)
            } else {
                Err(format!("took {took:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS in {took:.2?}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL in {took:.2?}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
