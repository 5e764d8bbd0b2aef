//! The `geofactor` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid certificate or refuted
//! claim, 3 inconclusive (a guard was hit).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::affine_constructions::{
    affine_labels, build_3k8_variant, build_affine_factorization, AffineError, K8Variant,
};
use crate::cubic::{cubic_counts, cubic_spread, CubicError, TwistedCubic};
use crate::designs::{geometric_params, resolvability_preconditions, GeometryKind};
use crate::factorization::{
    decomposition_search, is_simple, verify_factorization, Certificate, DEFAULT_MAX_NODES,
};
use crate::galois::{prime_power, GaloisError};
use crate::geometry::{points_on, GeometryError, ProjectiveSpace, Projectivity};
use crate::search::Outcome;
use crate::spreads::{
    aregular_spread_search, fold_spread_search, packing_search, verify_fold_spread, verify_packing,
    PackingFile, PackingMode, SpreadError, SpreadFile,
};
use crate::subgeometry::{
    build_subgeometry_factorization, count_bundle, SubgeometryContext, SubgeometryError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Default ceiling on the number of points of any space the CLI builds.
pub const DEFAULT_CLI_MAX_POINTS: usize = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "geofactor",
    version,
    about = "Factorizations of complete multigraphs from finite geometries"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format for standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the JSON result to this file.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Node limit for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,
    /// Point limit for constructed spaces.
    #[arg(long, global = true, default_value_t = DEFAULT_CLI_MAX_POINTS)]
    max_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Summary,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a factorization certificate or spread file.
    #[command(subcommand)]
    Build(Build),
    /// Check a certificate, spread or packing file.
    Verify { file: PathBuf },
    /// Search for a sub-factorization of a certificate.
    Decompose {
        file: PathBuf,
        /// Multiplicity of the sub-factorization; default tries 1..=λ/2.
        #[arg(long)]
        mu: Option<u32>,
    },
    /// Exhaustive searches for spreads and packings.
    #[command(subcommand)]
    Search(Search),
    /// Closed-form counts.
    #[command(subcommand)]
    Counts(Counts),
}

#[derive(Debug, Subcommand)]
enum Build {
    /// Parallel classes of i-flats of AG(n,q).
    Affine {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        i: usize,
    },
    /// One-factorizations of 3K_8 refining the AG(3,2) plane classes.
    K8 {
        #[arg(long, value_enum)]
        variant: VariantArg,
    },
    /// A twisted cubic of PG(3,q), its spread and the induced factor.
    Cubic {
        #[arg(long)]
        q: u32,
        /// 16 comma-separated field elements, row-major, mapping the canonical cubic.
        #[arg(long, value_delimiter = ',')]
        matrix: Option<Vec<u32>>,
    },
    /// Partitions of PG(n,q^k) into subgeometries PG(n,q).
    Subgeo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: u32,
    },
    /// A packing of PG(3,2) as a resolution of KTS(15).
    Kirkman,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Gprime,
    M,
}

#[derive(Debug, Subcommand)]
enum Search {
    /// A dim-spread of PG(n,q).
    Spread {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Only spreads of PG(3,q) containing no regulus.
        #[arg(long)]
        aregular: bool,
    },
    /// An f-fold dim-spread with distinct members.
    FoldSpread {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        fold: u32,
    },
    /// A packing of the dim-subspaces into spreads.
    Packing {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Count all packings and their projective orbits.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Debug, Subcommand)]
enum Counts {
    /// Twisted cubic counts for every prime power in [q, to].
    Cubic {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        to: Option<u32>,
    },
    /// Subgeometry counts as a CountBundle.
    Subgeo {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: u32,
    },
    /// Parameters of the design of points and i-flats.
    Design {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        i: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Projective,
    Affine,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
    Inconclusive(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Inconclusive(_) => EXIT_INCONCLUSIVE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) | Failure::Inconclusive(m) => m,
        }
    }
}

fn galois_failure(e: &GaloisError) -> Failure {
    match e {
        GaloisError::TooLarge { .. } => Failure::Inconclusive(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn geometry_failure(e: &GeometryError) -> Failure {
    match e {
        GeometryError::Field(g) => galois_failure(g),
        GeometryError::TooManyPoints { .. } | GeometryError::TooManySubspaces { .. } => {
            Failure::Inconclusive(e.to_string())
        }
        _ => Failure::Usage(e.to_string()),
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        geometry_failure(&e)
    }
}

impl From<GaloisError> for Failure {
    fn from(e: GaloisError) -> Self {
        galois_failure(&e)
    }
}

impl From<SpreadError> for Failure {
    fn from(e: SpreadError) -> Self {
        match &e {
            SpreadError::Geometry(g) => geometry_failure(g),
            SpreadError::Field(g) => galois_failure(g),
            SpreadError::Invalid(_) | SpreadError::FoldMismatch { .. } => {
                Failure::Invalid(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<AffineError> for Failure {
    fn from(e: AffineError) -> Self {
        match e {
            AffineError::Geometry(g) => g.into(),
            AffineError::Spread(s) => s.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<CubicError> for Failure {
    fn from(e: CubicError) -> Self {
        match &e {
            CubicError::Geometry(g) => geometry_failure(g),
            CubicError::Field(g) => galois_failure(g),
            CubicError::TooLarge(_) => Failure::Inconclusive(e.to_string()),
            CubicError::WrongResidue(_) => Failure::Usage(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<SubgeometryError> for Failure {
    fn from(e: SubgeometryError) -> Self {
        match &e {
            SubgeometryError::Geometry(g) => geometry_failure(g),
            SubgeometryError::Field(g) => galois_failure(g),
            SubgeometryError::TooLarge(_) => Failure::Inconclusive(e.to_string()),
            SubgeometryError::NoPartition { .. } | SubgeometryError::NotDivisibilityCase { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

/// What a command produced: machine output, a summary line, and an exit code.
struct Report {
    json: String,
    summary: String,
    code: i32,
}

impl Report {
    fn ok(json: String, summary: impl Into<String>) -> Self {
        Report {
            json,
            summary: summary.into(),
            code: EXIT_OK,
        }
    }
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializes");
    s.push('\n');
    s
}

fn check_points(n: usize, q: u32, limit: usize) -> Result<(), Failure> {
    if prime_power(q).is_none() {
        return Err(Failure::Usage(format!("{q} is not a prime power")));
    }
    let count = points_on(n + 1, q as u64);
    if count > limit as u128 {
        return Err(Failure::Inconclusive(format!(
            "PG({n},{q}) has {count} points, above --max-points {limit}"
        )));
    }
    Ok(())
}

fn space(n: usize, q: u32, limit: usize) -> Result<ProjectiveSpace, Failure> {
    check_points(n, q, limit)?;
    Ok(ProjectiveSpace::of_order(n, q)?)
}

fn certificate_report(cert: Certificate) -> Result<Report, Failure> {
    let phi = cert
        .factorization()
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    verify_factorization(&phi).map_err(|e| Failure::Invalid(e.to_string()))?;
    let summary = format!(
        "{}-factorization of {}K_{} with {} factors{} ({})",
        phi.m(),
        phi.lambda(),
        phi.v(),
        phi.len(),
        if is_simple(&phi) { ", simple" } else { "" },
        cert.provenance
    );
    Ok(Report::ok(cert.to_json(), summary))
}

fn build(cmd: &Build, common: &Common) -> Result<Report, Failure> {
    match *cmd {
        Build::Affine { n, q, i } => {
            check_points(n, q, common.max_points)?;
            let spec = build_affine_factorization(n, q, i)?;
            let cert = Certificate::new(
                &spec.factorization,
                spec.labels,
                format!("affine n={n} q={q} i={i}"),
            );
            certificate_report(cert)
        }
        Build::K8 { variant } => {
            let (which, name) = match variant {
                VariantArg::Gprime => (K8Variant::GPrime, "gprime"),
                VariantArg::M => (K8Variant::M, "m"),
            };
            let phi = build_3k8_variant(which)?;
            let cert = Certificate::new(&phi, affine_labels(3, 2)?, format!("k8 variant={name}"));
            certificate_report(cert)
        }
        Build::Cubic { q, ref matrix } => build_cubic(q, matrix.as_deref(), common),
        Build::Subgeo { n, q, k } => {
            let ctx = SubgeometryContext::new(n, q, k, common.max_points)?;
            log::info!("building subgeometry partitions of PG({n},{}^{k})", q);
            let phi = build_subgeometry_factorization(&ctx)?;
            let cert = Certificate::new(
                &phi,
                ctx.space.labels(),
                format!("subgeo n={n} q={q} k={k}"),
            );
            certificate_report(cert)
        }
        Build::Kirkman => {
            let space = space(3, 2, common.max_points)?;
            let res = packing_search(&space, 1, PackingMode::FindOne, Some(common.max_nodes))?;
            let packing = match res.packing {
                Some(p) => p,
                None if res.is_inconclusive() => {
                    return Err(Failure::Inconclusive(
                        "packing search hit the node limit".into(),
                    ))
                }
                None => return Err(Failure::Invalid("PG(3,2) has no packing".into())),
            };
            verify_packing(&space, &packing, 1).map_err(Failure::Invalid)?;
            let phi = packing.to_factorization(&space);
            certificate_report(Certificate::new(
                &phi,
                space.labels(),
                "kirkman packing of PG(3,2)",
            ))
        }
    }
}

#[derive(Serialize)]
struct CubicFile {
    q: u32,
    frame: Vec<Vec<u32>>,
    points: Vec<Vec<u32>>,
    spread: SpreadFile,
    kinds: Vec<&'static str>,
    factor: Vec<Vec<usize>>,
}

fn build_cubic(q: u32, matrix: Option<&[u32]>, common: &Common) -> Result<Report, Failure> {
    let space = space(3, q, common.max_points)?;
    let cubic = match matrix {
        None => TwistedCubic::canonical(&space),
        Some(entries) => {
            if entries.len() != 16 || entries.iter().any(|&x| x >= q) {
                return Err(Failure::Usage(
                    "--matrix needs 16 field elements below q".into(),
                ));
            }
            let rows = entries.chunks(4).map(<[u32]>::to_vec).collect();
            let g = Projectivity::new(space.field(), rows)
                .map_err(|_| Failure::Usage("--matrix is singular".into()))?;
            TwistedCubic::image(&space, &g)
        }
    };
    let cs = cubic_spread(&space, &cubic)?;
    let (t, c, a) = cs.signature();
    let file = CubicFile {
        q,
        frame: cubic.frame().matrix().clone(),
        points: cubic
            .points()
            .iter()
            .map(|&p| space.coords(p).to_vec())
            .collect(),
        spread: SpreadFile::new(&cs.spread),
        kinds: cs.kinds.iter().map(|k| k.name()).collect(),
        factor: cs.spread.to_factor(&space).components().to_vec(),
    };
    let summary = format!(
        "twisted cubic of PG(3,{q}): spread of {} lines, {t} tangents, {c} imaginary chords, {a} imaginary axes",
        cs.spread.len()
    );
    Ok(Report::ok(to_json_line(&file), summary))
}

#[derive(Serialize)]
struct VerifyResult {
    valid: bool,
    kind: &'static str,
    detail: String,
}

fn verify(path: &Path) -> Result<Report, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("not JSON: {e}")))?;
    let has = |k: &str| value.get(k).is_some();
    let (kind, outcome) = if has("factors") {
        ("certificate", verify_certificate_text(&text))
    } else if has("members") {
        ("spread", verify_spread_text(&text))
    } else if has("spreads") {
        ("packing", verify_packing_text(&text))
    } else {
        return Err(Failure::Invalid("unrecognized file".into()));
    };
    let (valid, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let json = to_json_line(&VerifyResult {
        valid,
        kind,
        detail: detail.clone(),
    });
    let summary = format!(
        "{}: {kind} {detail}",
        if valid { "valid" } else { "invalid" }
    );
    Ok(Report {
        json,
        summary,
        code: if valid { EXIT_OK } else { EXIT_INVALID },
    })
}

fn verify_certificate_text(text: &str) -> Result<String, String> {
    let cert = Certificate::from_json(text).map_err(|e| e.to_string())?;
    let phi = cert.factorization().map_err(|e| e.to_string())?;
    verify_factorization(&phi).map_err(|e| e.to_string())?;
    Ok(format!(
        "{}-factorization of {}K_{} with {} factors{}",
        phi.m(),
        phi.lambda(),
        phi.v(),
        phi.len(),
        if is_simple(&phi) { ", simple" } else { "" }
    ))
}

fn verify_spread_text(text: &str) -> Result<String, String> {
    let file: SpreadFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let space =
        ProjectiveSpace::of_order(file.ambient.0, file.ambient.1).map_err(|e| e.to_string())?;
    let s = file.spread(&space).map_err(|e| e.to_string())?;
    verify_fold_spread(&space, &s).map_err(|e| e.to_string())?;
    Ok(format!(
        "{}-fold {}-spread of PG({},{}) with {} members",
        s.fold(),
        s.dim(),
        file.ambient.0,
        file.ambient.1,
        s.len()
    ))
}

fn verify_packing_text(text: &str) -> Result<String, String> {
    let file: PackingFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let space =
        ProjectiveSpace::of_order(file.ambient.0, file.ambient.1).map_err(|e| e.to_string())?;
    let p = file.packing(&space).map_err(|e| e.to_string())?;
    verify_packing(&space, &p, file.dim)?;
    Ok(format!(
        "packing of PG({},{}) into {} spreads",
        file.ambient.0,
        file.ambient.1,
        p.spreads.len()
    ))
}

#[derive(Serialize)]
struct DecomposeResult {
    verdict: &'static str,
    exhausted: bool,
    mu: Vec<u32>,
    witness: Option<Vec<usize>>,
    nodes: u64,
}

fn decompose(path: &Path, mu: Option<u32>, common: &Common) -> Result<Report, Failure> {
    let cert = Certificate::load(path).map_err(|e| Failure::Invalid(e.to_string()))?;
    let phi = cert
        .factorization()
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    verify_factorization(&phi).map_err(|e| Failure::Invalid(e.to_string()))?;
    let mus: Vec<u32> = match mu {
        Some(m) if m == 0 || m >= phi.lambda() => {
            return Err(Failure::Usage(format!(
                "--mu must lie in 1..{}",
                phi.lambda()
            )))
        }
        Some(m) => vec![m],
        None => (1..=phi.lambda() / 2).collect(),
    };
    let mut nodes = 0;
    let mut exhausted = true;
    for &m in &mus {
        log::info!("decomposition search with mu={m}");
        let verdict = decomposition_search(&phi, m, Some(common.max_nodes));
        nodes += verdict.nodes;
        if verdict.decomposable {
            let result = DecomposeResult {
                verdict: "decomposable",
                exhausted: true,
                mu: vec![m],
                witness: verdict.witness.clone(),
                nodes,
            };
            let summary = format!(
                "decomposable (mu={m}, witness {:?})",
                verdict.witness.unwrap_or_default()
            );
            return Ok(Report::ok(to_json_line(&result), summary));
        }
        exhausted &= verdict.exhausted;
    }
    let result = DecomposeResult {
        verdict: if exhausted {
            "indecomposable"
        } else {
            "inconclusive"
        },
        exhausted,
        mu: mus,
        witness: None,
        nodes,
    };
    let summary = if exhausted {
        "indecomposable (exhausted)".to_string()
    } else {
        format!("inconclusive (node limit {} reached)", common.max_nodes)
    };
    Ok(Report {
        json: to_json_line(&result),
        summary,
        code: if exhausted {
            EXIT_OK
        } else {
            EXIT_INCONCLUSIVE
        },
    })
}

#[derive(Serialize)]
struct NoneFound {
    found: bool,
    exhausted: bool,
    nodes: u64,
}

fn search_outcome<T>(
    outcome: Outcome<T>,
    nodes: u64,
    what: &str,
    render: impl FnOnce(T) -> (String, String),
) -> Report {
    match outcome {
        Outcome::Found(x) => {
            let (json, summary) = render(x);
            Report::ok(json, summary)
        }
        Outcome::Exhausted => Report::ok(
            to_json_line(&NoneFound {
                found: false,
                exhausted: true,
                nodes,
            }),
            format!("no {what} (exhausted after {nodes} nodes)"),
        ),
        Outcome::Inconclusive => Report {
            json: to_json_line(&NoneFound {
                found: false,
                exhausted: false,
                nodes,
            }),
            summary: format!("inconclusive: no {what} within {nodes} nodes"),
            code: EXIT_INCONCLUSIVE,
        },
    }
}

#[derive(Serialize)]
struct PackingCount {
    spreads: usize,
    packings: u64,
    orbits: Option<u64>,
    nodes: u64,
}

fn search(cmd: &Search, common: &Common) -> Result<Report, Failure> {
    let limit = Some(common.max_nodes);
    match *cmd {
        Search::Spread {
            n,
            q,
            dim,
            aregular,
        } => {
            let space = space(n, q, common.max_points)?;
            log::info!("searching for a {dim}-spread of PG({n},{q})");
            let (outcome, report) = if aregular {
                aregular_spread_search(&space, limit)?
            } else {
                fold_spread_search(&space, dim, 1, limit)?
            };
            let what = if aregular {
                "aregular spread"
            } else {
                "spread"
            };
            Ok(search_outcome(outcome, report.nodes, what, |s| {
                let summary = format!("{what} of PG({n},{q}) with {} members", s.len());
                (SpreadFile::new(&s).to_json(), summary)
            }))
        }
        Search::FoldSpread { n, q, dim, fold } => {
            let space = space(n, q, common.max_points)?;
            log::info!("searching for a {fold}-fold {dim}-spread of PG({n},{q})");
            let (outcome, report) = fold_spread_search(&space, dim, fold, limit)?;
            Ok(search_outcome(outcome, report.nodes, "fold spread", |s| {
                let summary = format!(
                    "{fold}-fold {dim}-spread of PG({n},{q}) with {} members",
                    s.len()
                );
                (SpreadFile::new(&s).to_json(), summary)
            }))
        }
        Search::Packing { n, q, dim, count } => {
            let space = space(n, q, common.max_points)?;
            let mode = if count {
                PackingMode::CountAll
            } else {
                PackingMode::FindOne
            };
            log::info!("packing search in PG({n},{q}), mode {mode:?}");
            let res = packing_search(&space, dim, mode, limit)?;
            if res.is_inconclusive() {
                return Ok(Report {
                    json: to_json_line(&NoneFound {
                        found: false,
                        exhausted: false,
                        nodes: res.report.nodes,
                    }),
                    summary: format!("inconclusive after {} nodes", res.report.nodes),
                    code: EXIT_INCONCLUSIVE,
                });
            }
            if count {
                let total = res.total.unwrap_or(0);
                let summary = match res.orbits {
                    Some(o) => format!(
                        "{} spreads, {total} packings in {o} projective orbits",
                        res.spreads
                    ),
                    None => format!("{} spreads, {total} packings", res.spreads),
                };
                let json = to_json_line(&PackingCount {
                    spreads: res.spreads,
                    packings: total,
                    orbits: res.orbits,
                    nodes: res.report.nodes,
                });
                return Ok(Report::ok(json, summary));
            }
            match res.packing {
                Some(p) => {
                    let summary =
                        format!("packing of PG({n},{q}) into {} spreads", p.spreads.len());
                    Ok(Report::ok(PackingFile::new(&p).to_json(), summary))
                }
                None => Ok(Report::ok(
                    to_json_line(&NoneFound {
                        found: false,
                        exhausted: true,
                        nodes: res.report.nodes,
                    }),
                    "no packing (exhausted)",
                )),
            }
        }
    }
}

#[derive(Serialize)]
struct CubicCountsJson {
    q: u32,
    num_cubics: String,
    c_ell: String,
    pgl4_order: String,
    stabilizer_order: String,
    orbit_stabilizer_holds: bool,
    quotient_identity_holds: bool,
    within_hypothesis: bool,
}

#[derive(Serialize)]
struct DesignJson {
    kind: &'static str,
    n: usize,
    q: u32,
    i: usize,
    v: u64,
    b: u64,
    k: u64,
    r: u64,
    lambda: u64,
    replication_integral: bool,
    points_divisible: bool,
    block_bound: bool,
}

fn counts(cmd: &Counts) -> Result<Report, Failure> {
    match *cmd {
        Counts::Cubic { q, to } => {
            let hi = to.unwrap_or(q);
            let rows: Vec<CubicCountsJson> = (q..=hi)
                .filter(|&x| prime_power(x).is_some())
                .map(|x| {
                    let c = cubic_counts(x);
                    let s = |b: &BigUint| b.to_string();
                    CubicCountsJson {
                        q: x,
                        num_cubics: s(&c.num_cubics),
                        c_ell: s(&c.c_ell),
                        pgl4_order: s(&c.pgl4_order),
                        stabilizer_order: s(&c.stabilizer_order),
                        orbit_stabilizer_holds: c.orbit_stabilizer_holds,
                        quotient_identity_holds: c.quotient_identity_holds,
                        within_hypothesis: c.within_hypothesis,
                    }
                })
                .collect();
            if rows.is_empty() {
                return Err(Failure::Usage(format!("no prime power in [{q}, {hi}]")));
            }
            let mut summary = format!("{:>4} {:>28} {:>24} {:>6}", "q", "cubics", "c_ell", "ok");
            let mut all_ok = true;
            for r in &rows {
                let ok = r.orbit_stabilizer_holds && r.quotient_identity_holds;
                all_ok &= ok;
                summary.push_str(&format!(
                    "\n{:>4} {:>28} {:>24} {:>6}",
                    r.q, r.num_cubics, r.c_ell, ok
                ));
            }
            Ok(Report {
                json: to_json_line(&rows),
                summary,
                code: if all_ok { EXIT_OK } else { EXIT_INVALID },
            })
        }
        Counts::Subgeo { n, q, k } => {
            if prime_power(q).is_none() {
                return Err(Failure::Usage(format!("{q} is not a prime power")));
            }
            let b = count_bundle(n, q, k)?;
            let opt = |x: &Option<BigUint>| x.as_ref().map_or("-".to_string(), BigUint::to_string);
            let summary = format!(
                "PG({n},{q}) in PG({n},{q}^{k}): s={} theta={} p0={} rho0={} S_e={} lambda={} v={} m={} factors={}",
                b.s,
                opt(&b.theta),
                opt(&b.p0),
                opt(&b.rho0),
                opt(&b.s_e),
                opt(&b.lambda),
                b.v,
                b.m,
                opt(&b.factors)
            );
            Ok(Report::ok(b.to_json(), summary))
        }
        Counts::Design { kind, n, q, i } => {
            if prime_power(q).is_none() {
                return Err(Failure::Usage(format!("{q} is not a prime power")));
            }
            if i == 0 || i >= n {
                return Err(Failure::Usage(format!("need 0 < i < n, got n={n}, i={i}")));
            }
            let (gk, name) = match kind {
                KindArg::Projective => (GeometryKind::Projective, "projective"),
                KindArg::Affine => (GeometryKind::Affine, "affine"),
            };
            let p = geometric_params(gk, n, q as u64, i);
            let r = resolvability_preconditions(&p);
            let json = to_json_line(&DesignJson {
                kind: name,
                n,
                q,
                i,
                v: p.v,
                b: p.b,
                k: p.k,
                r: p.r,
                lambda: p.lambda,
                replication_integral: r.replication_integral,
                points_divisible: r.points_divisible,
                block_bound: r.block_bound,
            });
            let summary = format!(
                "{p}; resolvability conditions {}",
                if r.all_pass() { "hold" } else { "fail" }
            );
            Ok(Report::ok(json, summary))
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Build(b) => build(b, &cli.common),
        Command::Verify { file } => verify(file),
        Command::Decompose { file, mu } => decompose(file, *mu, &cli.common),
        Command::Search(s) => search(s, &cli.common),
        Command::Counts(c) => counts(c),
    }
}

/// Runs the command line with explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.common.output {
                if let Err(e) = fs::write(path, &report.json) {
                    let _ = writeln!(err, "error: {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            let text = match (cli.common.format, &cli.common.output) {
                (Format::Summary, _) => format!("{}\n", report.summary),
                (Format::Json, None) => report.json,
                (Format::Json, Some(_)) => String::new(),
            };
            let _ = out.write_all(text.as_bytes());
            report.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

/// Runs the command line on the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("geofactor").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["build", "affine", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["build", "affine", "--n", "3", "--q", "6", "--i", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn counts_and_summaries() {
        let (code, out, _) = call(&["counts", "subgeo", "--n", "2", "--q", "2", "--k", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"lambda\":\"288\""));
        let (code, out, _) = call(&[
            "counts", "design", "--kind", "affine", "--n", "3", "--q", "2", "--i", "2", "--format",
            "summary",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("2-(8,14,4,7,3)"), "{out}");
        let (code, out, _) = call(&["counts", "cubic", "--q", "5", "--to", "9"]);
        assert_eq!(code, 0);
        assert_eq!(
            serde_json::from_str::<serde_json::Value>(&out)
                .unwrap()
                .as_array()
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn guards_exit_three() {
        let (code, _, err) = call(&[
            "search",
            "spread",
            "--n",
            "3",
            "--q",
            "2",
            "--max-points",
            "10",
        ]);
        assert_eq!(code, EXIT_INCONCLUSIVE, "{err}");
        let (code, out, _) = call(&[
            "search",
            "spread",
            "--n",
            "5",
            "--q",
            "2",
            "--dim",
            "2",
            "--max-nodes",
            "1",
        ]);
        assert_eq!(code, EXIT_INCONCLUSIVE, "{out}");
    }

    #[test]
    fn cubic_with_matrix() {
        let (code, out, err) = call(&[
            "build",
            "cubic",
            "--q",
            "2",
            "--matrix",
            "1,0,0,0,1,1,0,0,0,0,1,0,0,1,0,1",
            "--format",
            "summary",
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(
            out.contains("3 tangents, 1 imaginary chords, 1 imaginary axes"),
            "{out}"
        );
        assert_eq!(call(&["build", "cubic", "--q", "3"]).0, EXIT_USAGE);
    }
}
