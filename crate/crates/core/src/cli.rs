//! Command-line front end. Output is assembled completely before anything is
//! written, so a failing command prints nothing on stdout.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::adequacy::{
    adequacy_verdict, all_state, inadequacy_tests, parallel_double, state_graph, untwisted_whitehead_diagram,
    whitehead_diagram, AdequacyVerdict, InadequacyReport, PDDiagram, Smoothing,
};
use crate::degrees::{
    degree_sequence, fit_quasipoly, predict_family_delta, predict_whitehead_delta, sign_condition_check, Branch,
    DegreeError, Extreme, Family, FitReport, QuasiPoly,
};
use crate::knots::{parse_knot_expr, Engine, JonesCache, KnotExpr};
use crate::laurent::Q;
use crate::surfaces::{catalog, csv_row, verify_strong_slope, CompanionSurface, PathFamily, Sign, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "slopelab", version, about = "Colored Jones degrees, Jones slopes and adequacy of Whitehead doubles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// On-disk cache of colored Jones polynomials.
    #[arg(long, global = true, env = "SLOPELAB_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Colored Jones polynomial J_{K,n} (or J'_{K,n} with --normalized).
    Jones {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        normalized: bool,
    },
    /// Extreme-degree sequence for n = 1..=n-max and its quasi-polynomial fit.
    Degrees {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        normalized: bool,
        /// Minimum degree instead of maximum.
        #[arg(long)]
        min: bool,
    },
    /// Predicted max-degree quasi-polynomial; with --n-max it is checked
    /// against computed degrees.
    Predict {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Jones slope of W_omega^tau(K) against the glued essential surface.
    Slopes {
        /// The companion K.
        #[arg(long)]
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: i64,
        #[arg(long, allow_hyphen_values = true)]
        tau: i64,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        #[command(flatten)]
        companion: CompanionArgs,
    },
    /// Essential-surface catalog rows.
    Surfaces {
        #[arg(long, allow_hyphen_values = true)]
        omega: i64,
        /// Edge-path family such as g1+; all families of the matching sign when omitted.
        #[arg(long)]
        path: Option<String>,
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        beta: i64,
    },
    /// Diagram adequacy (--pd) or degree-based inadequacy tests (--knot).
    Adequacy {
        #[arg(long, conflicts_with = "knot", required_unless_present = "knot")]
        pd: Option<String>,
        #[arg(long)]
        knot: Option<String>,
        /// Diagram to analyse instead of the input one.
        #[arg(long, value_enum, default_value_t = Construction::None, requires = "pd")]
        double: Construction,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
    /// Inspect or clear the on-disk cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Args, Debug)]
struct CompanionArgs {
    /// Euler characteristic of the companion's essential surface.
    #[arg(long, allow_hyphen_values = true, requires = "companion_boundary")]
    companion_chi: Option<i64>,
    /// Boundary components of the companion's essential surface.
    #[arg(long, requires = "companion_chi")]
    companion_boundary: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    None,
    Parallel,
    Whitehead,
    Untwisted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CacheAction {
    List,
    Clear,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<DegreeError> for Failure {
    fn from(e: DegreeError) -> Failure {
        Failure::Domain(e.to_string())
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { code: EXIT_DOMAIN, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn knot(text: &str) -> Result<KnotExpr, Failure> {
    parse_knot_expr(text).map_err(|e| Failure::Usage(format!("--knot: {e}")))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn no_csv(cmd: &str, f: Format) -> Result<(), Failure> {
    if f == Format::Csv {
        return Err(Failure::Usage(format!("{cmd} supports --format json or text")));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let engine = Engine::new(cli.cache_dir.clone().map(JonesCache::new));
    let f = cli.format;
    match &cli.command {
        Command::Jones { knot: k, n, normalized } => {
            no_csv("jones", f)?;
            jones(&engine, &knot(k)?, *n, *normalized, f)
        }
        Command::Degrees { knot: k, n_max, normalized, min } => degrees(&engine, &knot(k)?, *n_max, *normalized, *min, f),
        Command::Predict { knot: k, n_max } => {
            no_csv("predict", f)?;
            predict(&engine, &knot(k)?, *n_max, f)
        }
        Command::Slopes { knot: k, omega, tau, n_max, companion } => {
            no_csv("slopes", f)?;
            let comp = companion.companion_chi.zip(companion.companion_boundary).map(|(chi, boundary)| CompanionSurface { chi, boundary });
            slopes(&engine, &knot(k)?, *omega, *tau, *n_max, comp, f)
        }
        Command::Surfaces { omega, path, alpha, beta } => surfaces(*omega, path.as_deref(), *alpha, *beta, f),
        Command::Adequacy { pd, knot: k, double, n_max } => {
            no_csv("adequacy", f)?;
            match (pd, k) {
                (Some(pd), _) => diagram(pd, *double, f),
                (None, Some(k)) => inadequacy(&engine, &knot(k)?, *n_max, f),
                (None, None) => Err(Failure::Usage("adequacy needs --pd or --knot".into())),
            }
        }
        Command::Cache { action } => {
            no_csv("cache", f)?;
            cache(cli.cache_dir.as_ref(), *action, f)
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct JonesReport {
    pub knot: String,
    pub n: u32,
    pub normalized: bool,
    /// Canonical serialization: one `EXPNUM NUM DEN` line per term.
    pub polynomial: String,
    pub d_plus: String,
    pub d_minus: String,
}

fn jones(engine: &Engine, k: &KnotExpr, n: u32, normalized: bool, f: Format) -> Result<String, Failure> {
    if n == 0 && !normalized {
        return Err(Failure::Usage("--n must be at least 1 for the unnormalized polynomial".into()));
    }
    let p = if normalized { (*engine.cj_prime(k, n).map_err(domain)?).clone() } else { engine.cj_unnormalized(k, n).map_err(domain)? };
    let polynomial = p.to_canonical_string();
    if f == Format::Text {
        return Ok(polynomial);
    }
    Ok(json(&JonesReport {
        knot: k.canonical(),
        n,
        normalized,
        polynomial,
        d_plus: p.d_plus().expect("nonzero").to_string(),
        d_minus: p.d_minus().expect("nonzero").to_string(),
    }))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegreesReport {
    pub knot: String,
    pub extreme: Extreme,
    pub normalized: bool,
    /// `(n, degree)` for n = 1..=n_max.
    pub degrees: Vec<(u32, String)>,
    pub fit: Option<FitReport>,
    pub fit_error: Option<String>,
}

fn degrees(engine: &Engine, k: &KnotExpr, n_max: u32, normalized: bool, min: bool, f: Format) -> Result<String, Failure> {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let extreme = if min { Extreme::Min } else { Extreme::Max };
    let seq = degree_sequence(engine, k, 1..=n_max, extreme, normalized).map_err(domain)?;
    if f == Format::Csv {
        let mut out = String::from("n,degree\n");
        for (i, d) in seq.iter().enumerate() {
            let _ = writeln!(out, "{},{d}", i + 1);
        }
        return Ok(out);
    }
    let (fit, fit_error) = match fit_quasipoly(&seq, 1) {
        Ok(qp) => {
            let sign = if extreme == Extreme::Max { Some(sign_condition_check(engine, k, 1..=n_max)?) } else { None };
            (Some(FitReport::new(&qp, sign.as_ref())), None)
        }
        Err(e) => (None, Some(e.to_string())),
    };
    let report = DegreesReport {
        knot: k.canonical(),
        extreme,
        normalized,
        degrees: seq.iter().enumerate().map(|(i, d)| (i as u32 + 1, d.to_string())).collect(),
        fit,
        fit_error,
    };
    if f == Format::Json {
        return Ok(json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "knot: {}", report.knot);
    let _ = writeln!(out, "extreme: {}", if min { "min" } else { "max" });
    let _ = writeln!(out, "normalized: {normalized}");
    for (n, d) in &report.degrees {
        let _ = writeln!(out, "n={n} degree={d}");
    }
    match (&report.fit, &report.fit_error) {
        (Some(fr), _) => write_fit(&mut out, fr),
        (_, Some(e)) => {
            let _ = writeln!(out, "fit: none ({e})");
        }
        _ => {}
    }
    Ok(out)
}

fn write_fit(out: &mut String, fr: &FitReport) {
    let _ = writeln!(out, "period: {}", fr.period);
    for (r, [a, b, c]) in fr.coeffs.iter().enumerate() {
        let _ = writeln!(out, "class {r}: ({a})n^2 + ({b})n + ({c})");
    }
    let _ = writeln!(out, "threshold: {}", fr.threshold);
    let _ = writeln!(out, "jones slopes: {}", fr.js.join(" "));
    let _ = writeln!(out, "jx: {}", fr.jx.join(" "));
    let _ = writeln!(out, "condition delta: {}", fr.condition_delta);
    if let Some(s) = &fr.sign_condition {
        let _ = writeln!(out, "sign condition: {s}");
    }
}

/// Exact `δ_K` for torus knots, their mirrors, connected sums of those and
/// the unknot.
fn closed_form_delta(k: &KnotExpr) -> Option<QuasiPoly> {
    match k {
        KnotExpr::Unknot => Some(QuasiPoly::poly(Q::from_integer(0), Q::new(1, 2), Q::new(-1, 2))),
        KnotExpr::Torus(p, q) => Some(predict_family_delta(&Family::Torus { p: *p as i64, q: *q as i64 }).ok()?.delta),
        KnotExpr::Mirror(inner) => match inner.as_ref() {
            KnotExpr::Torus(p, q) => Some(predict_family_delta(&Family::Torus { p: *p as i64, q: -(*q as i64) }).ok()?.delta),
            _ => None,
        },
        KnotExpr::Sum(parts) => {
            let mut acc = closed_form_delta(parts.first()?)?;
            for p in &parts[1..] {
                acc = predict_family_delta(&Family::Sum(acc, closed_form_delta(p)?)).ok()?.delta;
            }
            Some(acc)
        }
        KnotExpr::Whitehead { .. } => None,
    }
}

/// `δ_K` in closed form, checked against the computed degrees up to `n_max`,
/// or fitted from them.
fn companion_delta(engine: &Engine, k: &KnotExpr, n_max: u32) -> Result<QuasiPoly, Failure> {
    let seq = degree_sequence(engine, k, 1..=n_max, Extreme::Max, false).map_err(domain)?;
    match closed_form_delta(k) {
        Some(qp) => {
            if let Some((i, _)) = seq
                .iter()
                .enumerate()
                .find(|&(i, d)| i as u32 + 1 >= qp.threshold() && *d != qp.eval(i as u32 + 1))
            {
                return Err(Failure::Domain(format!("closed-form degree disagrees with computation at n={}", i + 1)));
            }
            Ok(qp)
        }
        None => Ok(fit_quasipoly(&seq, 1)?),
    }
}

fn odd_coeffs(qp: &QuasiPoly) -> [Q; 3] {
    *qp.at(1)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PredictReport {
    pub knot: String,
    pub period: u32,
    pub coeffs: Vec<[String; 3]>,
    pub threshold: u32,
    /// Whitehead doubles only.
    pub branch: Option<Branch>,
    pub valid_for_all_n: Option<bool>,
    /// Checked range and first disagreement, when --n-max is given.
    pub checked_up_to: Option<u32>,
    pub mismatches: Vec<(u32, String, String)>,
}

fn predict(engine: &Engine, k: &KnotExpr, n_max: Option<u32>, f: Format) -> Result<String, Failure> {
    let (delta, branch, all_n) = match k {
        KnotExpr::Whitehead { omega, tau, companion } => {
            let dk = companion_delta(engine, companion, n_max.unwrap_or(12).max(10))?;
            let [a1, b1, c1] = odd_coeffs(&dk);
            let p = predict_whitehead_delta(a1, b1, c1, *omega, *tau, None)?;
            let start = if p.valid_for_all_n { 1 } else { p.delta.threshold() };
            (p.delta.with_threshold(start), Some(p.branch), Some(p.valid_for_all_n))
        }
        other => {
            let d = closed_form_delta(other)
                .ok_or_else(|| Failure::Domain(format!("no degree prediction for {}", other.canonical())))?;
            (d, None, None)
        }
    };
    let mut mismatches = Vec::new();
    if let Some(nm) = n_max {
        let lo = delta.threshold().max(1);
        if nm >= lo {
            let seq = degree_sequence(engine, k, lo..=nm, Extreme::Max, false).map_err(domain)?;
            for (i, d) in seq.iter().enumerate() {
                let n = lo + i as u32;
                if *d != delta.eval(n) {
                    mismatches.push((n, d.to_string(), delta.eval(n).to_string()));
                }
            }
        }
    }
    let report = PredictReport {
        knot: k.canonical(),
        period: delta.period(),
        coeffs: delta.coeffs().iter().map(|c| c.map(|x| x.to_string())).collect(),
        threshold: delta.threshold(),
        branch,
        valid_for_all_n: all_n,
        checked_up_to: n_max,
        mismatches,
    };
    if f == Format::Json {
        return Ok(json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "knot: {}", report.knot);
    for (r, [a, b, c]) in report.coeffs.iter().enumerate() {
        let _ = writeln!(out, "class {r} mod {}: ({a})n^2 + ({b})n + ({c})", report.period);
    }
    let _ = writeln!(out, "threshold: {}", report.threshold);
    if let Some(b) = report.branch {
        let _ = writeln!(out, "branch: {}", serde_json::to_value(b).expect("serializes").as_str().unwrap_or(""));
    }
    if let Some(nm) = report.checked_up_to {
        let _ = writeln!(out, "checked up to n={nm}: {}", if report.mismatches.is_empty() { "match" } else { "mismatch" });
        for (n, got, want) in &report.mismatches {
            let _ = writeln!(out, "  n={n} computed={got} predicted={want}");
        }
    }
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SlopesReport {
    pub companion: String,
    pub omega: i64,
    pub tau: i64,
    pub a1: String,
    pub b1: String,
    pub c1: String,
    pub case: String,
    pub a_w: String,
    pub b_w: String,
    pub m: u64,
    pub n: u64,
    pub chi: i64,
    pub boundary_components: u64,
    pub slope: String,
    pub slope_denominator: i64,
    pub ss_ratio: String,
    pub slope_ok: bool,
    pub ratio_ok: bool,
    pub verdict: String,
}

/// Essential surfaces realizing the Jones slope of torus knots and their mirrors.
fn known_companion_surface(k: &KnotExpr) -> Option<CompanionSurface> {
    match k {
        KnotExpr::Torus(..) => Some(CompanionSurface { chi: 0, boundary: 2 }),
        KnotExpr::Mirror(inner) => match inner.as_ref() {
            KnotExpr::Torus(p, q) => {
                let (p, q) = (*p as i64, *q as i64);
                Some(CompanionSurface { chi: -(p * q - p - q), boundary: 1 })
            }
            _ => None,
        },
        _ => None,
    }
}

fn slopes(
    engine: &Engine,
    k: &KnotExpr,
    omega: i64,
    tau: i64,
    n_max: u32,
    comp: Option<CompanionSurface>,
    f: Format,
) -> Result<String, Failure> {
    if omega == 0 {
        return Err(Failure::Usage("--omega must be nonzero".into()));
    }
    let dk = companion_delta(engine, k, n_max)?;
    let [a1, b1, c1] = odd_coeffs(&dk);
    let comp = comp.or_else(|| known_companion_surface(k));
    let r = verify_strong_slope(a1, b1, c1, comp, omega, tau).map_err(domain)?;
    let s = &r.surface;
    let report = SlopesReport {
        companion: k.canonical(),
        omega,
        tau,
        a1: a1.to_string(),
        b1: b1.to_string(),
        c1: c1.to_string(),
        case: s.case.to_string(),
        a_w: r.a_w.to_string(),
        b_w: r.b_w.to_string(),
        m: s.m,
        n: s.n,
        chi: s.chi_total,
        boundary_components: s.boundary_count,
        slope: s.slope.to_string(),
        slope_denominator: s.q_den,
        ss_ratio: s.ss_ratio.to_string(),
        slope_ok: r.slope_ok,
        ratio_ok: r.ratio_ok,
        verdict: if r.passed() { "pass" } else { "fail" }.into(),
    };
    if f == Format::Json {
        return Ok(json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(out, "companion: {}  omega: {omega}  tau: {tau}", report.companion);
    let _ = writeln!(out, "companion delta (odd n): a1={} b1={} c1={}", report.a1, report.b1, report.c1);
    let _ = writeln!(out, "case: {}", report.case);
    let _ = writeln!(out, "a_W: {}  b_W: {}", report.a_w, report.b_w);
    let _ = writeln!(out, "surface: m={} n={} chi={} |boundary|={}", report.m, report.n, report.chi, report.boundary_components);
    let _ = writeln!(out, "slope: {} (4a_W ok: {})", report.slope, report.slope_ok);
    let _ = writeln!(out, "ss_ratio: {} (2b_W ok: {})", report.ss_ratio, report.ratio_ok);
    let _ = writeln!(out, "verdict: {}", report.verdict);
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SurfaceRow {
    pub path: String,
    pub omega: i64,
    pub k: i64,
    pub alpha: i64,
    pub beta: i64,
    pub pattern: String,
    pub chi: i64,
    pub slope1: Option<String>,
    pub slope2: Option<String>,
    pub count1: u64,
    pub count2: u64,
    pub orientable: String,
}

fn surfaces(omega: i64, path: Option<&str>, alpha: i64, beta: i64, f: Format) -> Result<String, Failure> {
    if omega == 0 {
        return Err(Failure::Usage("--omega must be nonzero".into()));
    }
    let families: Vec<PathFamily> = match path {
        Some(p) => vec![p.parse().map_err(|e| Failure::Usage(format!("--path: {e}")))?],
        None => PathFamily::all(if omega > 0 { Sign::Plus } else { Sign::Minus })
            .filter(|fam| !(fam.id == 4 && omega == 1))
            .collect(),
    };
    let records = families
        .into_iter()
        .map(|fam| catalog(omega, fam, crate::surfaces::Weights::new(alpha, beta)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(domain)?;
    match f {
        Format::Csv | Format::Text => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in &records {
                out.push_str(&csv_row(r));
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<SurfaceRow> = records
                .iter()
                .map(|r| {
                    let cells: Vec<String> = csv_row(r).split(',').map(str::to_string).collect();
                    let opt = |s: &String| (!s.is_empty()).then(|| s.clone());
                    SurfaceRow {
                        path: cells[0].clone(),
                        omega: r.omega,
                        k: r.omega.abs(),
                        alpha: r.weights.alpha,
                        beta: r.weights.beta,
                        pattern: cells[5].clone(),
                        chi: r.chi,
                        slope1: opt(&cells[7]),
                        slope2: opt(&cells[8]),
                        count1: r.count1,
                        count2: r.count2,
                        orientable: cells[11].clone(),
                    }
                })
                .collect();
            Ok(json(&rows))
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramReport {
    pub pd: String,
    pub crossings: usize,
    pub components: usize,
    pub writhe: i64,
    pub a_circles: usize,
    pub b_circles: usize,
    #[serde(flatten)]
    pub verdict: AdequacyVerdict,
}

fn diagram(text: &str, construction: Construction, f: Format) -> Result<String, Failure> {
    let d: PDDiagram = text.parse().map_err(|e| Failure::Usage(format!("--pd: {e}")))?;
    let d = match construction {
        Construction::None => d,
        Construction::Parallel => parallel_double(&d).map_err(domain)?,
        Construction::Whitehead => whitehead_diagram(&d).map_err(domain)?,
        Construction::Untwisted => {
            if d.writhe() < 0 {
                return Err(Failure::Domain("untwisted double needs a diagram of non-negative writhe".into()));
            }
            untwisted_whitehead_diagram(&d).map_err(domain)?
        }
    };
    let circles = |s| state_graph(&d, &all_state(&d, s)).map(|g| g.circles).map_err(domain);
    let report = DiagramReport {
        pd: d.to_string(),
        crossings: d.crossing_count(),
        components: d.components(),
        writhe: d.writhe(),
        a_circles: circles(Smoothing::A)?,
        b_circles: circles(Smoothing::B)?,
        verdict: adequacy_verdict(&d).map_err(domain)?,
    };
    if f == Format::Json {
        return Ok(json(&report));
    }
    let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "pd: {}", report.pd);
    let _ = writeln!(out, "crossings: {}  components: {}  writhe: {}", report.crossings, report.components, report.writhe);
    let _ = writeln!(out, "A-state circles: {}  B-state circles: {}", report.a_circles, report.b_circles);
    let v = &report.verdict;
    let _ = writeln!(out, "A-adequate: {} [{}]", v.a_adequate, list(&v.a_witnesses));
    let _ = writeln!(out, "B-adequate: {} [{}]", v.b_adequate, list(&v.b_witnesses));
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InadequacyCommandReport {
    pub knot: String,
    pub n_max: u32,
    pub delta: FitReport,
    pub delta_star: FitReport,
    #[serde(flatten)]
    pub report: InadequacyReport,
}

fn inadequacy(engine: &Engine, k: &KnotExpr, n_max: u32, f: Format) -> Result<String, Failure> {
    let fit = |e| -> Result<QuasiPoly, Failure> {
        let seq = degree_sequence(engine, k, 1..=n_max, e, false).map_err(domain)?;
        Ok(fit_quasipoly(&seq, 1)?)
    };
    let (delta, star) = (fit(Extreme::Max)?, fit(Extreme::Min)?);
    let report = inadequacy_tests(k, &delta, &star);
    let full = InadequacyCommandReport {
        knot: k.canonical(),
        n_max,
        delta: FitReport::new(&delta, None),
        delta_star: FitReport::new(&star, None),
        report,
    };
    if f == Format::Json {
        return Ok(json(&full));
    }
    let mut out = String::new();
    let _ = writeln!(out, "knot: {}", full.knot);
    let _ = writeln!(out, "delta: {delta}");
    let _ = writeln!(out, "delta*: {star}");
    for h in &full.report.half_integrality {
        let which = if h.extreme == Extreme::Max { "max" } else { "min" };
        let _ = writeln!(out, "half-integrality ({which}): quadratic {} -> {}", h.quadratic.join(", "), if h.in_half_integers { "ok" } else { "fails" });
    }
    if let Some(t) = &full.report.turaev {
        let _ = writeln!(out, "turaev under adequacy: c={} g_T={} degenerate={}", t.data.c, t.data.g_t, t.data.degenerate);
        let _ = writeln!(out, "contradiction: {} (assumes no Whitehead double has Turaev genus one)", t.contradiction);
    }
    let _ = writeln!(out, "verdict: {}", full.report.conclusion);
    Ok(out)
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheReport {
    pub root: String,
    pub action: String,
    pub entries: Vec<String>,
    pub removed: usize,
}

fn cache(dir: Option<&PathBuf>, action: CacheAction, f: Format) -> Result<String, Failure> {
    let dir = dir.ok_or_else(|| Failure::Usage("cache needs --cache-dir or SLOPELAB_CACHE".into()))?;
    let c = JonesCache::new(dir);
    let report = match action {
        CacheAction::List => CacheReport { root: dir.display().to_string(), action: "list".into(), entries: c.list().map_err(domain)?, removed: 0 },
        CacheAction::Clear => CacheReport { root: dir.display().to_string(), action: "clear".into(), entries: Vec::new(), removed: c.clear().map_err(domain)? },
    };
    if f == Format::Json {
        return Ok(json(&report));
    }
    Ok(match action {
        CacheAction::List => report.entries.iter().map(|e| format!("{e}\n")).collect(),
        CacheAction::Clear => format!("removed {}\n", report.removed),
    })
}
