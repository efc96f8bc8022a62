//! Command-line entry point.
//!
//! Exit codes: 0 = success and every checked bound satisfied;
//! 1 = a checked bound violated or a scan verdict infeasible (still a
//! successful run); 2 = input error; 3 = numeric failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use asrg::bounds::{
    self, absolute_classical, family_scan, krein_classical, krein_variant, sigma_floor_absolute,
    sigma_floor_krein, BoundsError, FamilySpec, KreinVariantMode, Verdict,
};
use asrg::constructions::{
    cap_graph, cap_graph_audit, neighborhood_tower, no_clique_formula, no_graph,
    tower_step_check, CliquePolicy, ConstructionError,
};
use asrg::field::Field;
use asrg::geometry::{cap_construct, cap_from_str, cap_to_string, CapKind, GeometryError};
use asrg::graph::{
    asrg_stats, clique_number, graph_from_str, graph_to_string, regularity_classify, Graph,
    GraphError, Regularity, DEFAULT_CLIQUE_BUDGET,
};
use asrg::report::{
    self, bound_json, cap_audit_json, e_matrix_json, envelope, orthogonality_json, scan_json,
    sigma_floor_json, spectrum_json, stats_json, tower_level_json, tower_step_json,
};
use asrg::spectral::{e_matrix_report, spectrum_report, SpectralError};
use asrg::{rat_to_real, Real};

#[derive(Parser)]
#[command(name = "asrg", version, about = "Approximate strong regularity analysis toolkit")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundName {
    KreinClassical,
    AbsoluteClassical,
    KreinVariant,
    AbsoluteVariant,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Paper,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum CapKindArg {
    Conic,
    Elliptic,
    Greedy,
}

#[derive(Subcommand)]
enum Command {
    /// Print the arithmetic tables' summary of GF(q).
    FieldInfo {
        #[arg(long)]
        q: u64,
    },
    /// Build an orthogonality graph and audit it against the printed
    /// parameter formulas.
    NoGraph {
        /// Vector-space dimension.
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        /// +1 or -1.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_epsilon)]
        epsilon: i8,
        /// Also write the graph file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a cap and report its secant profile.
    Cap {
        #[arg(long, value_enum)]
        kind: CapKindArg,
        /// Projective dimension.
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the cap file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the graph of a cap file and audit the secant identities.
    CapGraph {
        #[arg(long)]
        cap: PathBuf,
        /// Also write the graph file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full report on graph files: stats, spectrum, deviation matrix,
    /// and every applicable bound.
    Analyze {
        #[arg(long, required = true)]
        graph: Vec<PathBuf>,
    },
    /// Evaluate one named bound on a graph file.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        bound: BoundName,
        /// Coefficient mode for krein-variant.
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Gate threshold for absolute-variant.
        #[arg(long, default_value_t = 0.5)]
        gate: Real,
        /// Multiplicity arguments for absolute-variant; derived from
        /// the spectrum when omitted.
        #[arg(long)]
        f1: Option<Real>,
        #[arg(long)]
        f2: Option<Real>,
    },
    /// Scan a monomial parameter family for asymptotic feasibility.
    Scan {
        #[arg(long)]
        family: PathBuf,
        /// Comma-separated growth-variable samples, e.g. 1e2,1e3,1e4.
        #[arg(long)]
        samples: String,
    },
    /// Tower diagnostics: either one orthogonality tower step
    /// (--n/--q/--epsilon) or a neighborhood-tower level of a graph
    /// file (--graph/--m/--i).
    Tower {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_epsilon)]
        epsilon: Option<i8>,
    },
    /// Exact clique number of a graph file, or of an orthogonality
    /// graph compared against its printed clique formula.
    Clique {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_epsilon)]
        epsilon: Option<i8>,
        #[arg(long, default_value_t = DEFAULT_CLIQUE_BUDGET)]
        budget: u64,
    },
}

fn parse_epsilon(s: &str) -> Result<i8, String> {
    match s {
        "+1" | "1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        _ => Err(format!("epsilon must be +1 or -1, got {s}")),
    }
}

/// A failed run: exit code 2 (input) or 3 (numeric) plus a one-line
/// diagnostic.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    fn numeric(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::input(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Failure {
        match e {
            GraphError::LimitExceeded { .. } => Failure::numeric(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Failure {
        Failure::input(e.to_string())
    }
}

impl From<asrg::field::FieldError> for Failure {
    fn from(e: asrg::field::FieldError) -> Failure {
        Failure::input(e.to_string())
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Failure {
        match e {
            SpectralError::NoConvergence(_) | SpectralError::NegativeDiscriminant
            | SpectralError::ZeroSplit => Failure::numeric(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Failure {
        match e {
            ConstructionError::Spectral(s) => s.into(),
            ConstructionError::Graph(g) => g.into(),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Failure {
        match e {
            BoundsError::Overflow => Failure::numeric(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

/// What a successful run prints and whether every checked bound held.
struct Outcome {
    report: Value,
    all_satisfied: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => print!("{}", report::to_string_pretty(&outcome.report)),
                Format::Text => print!("{}", render_text(&outcome.report)),
            }
            if outcome.all_satisfied {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Flat `key = value` rendering of a JSON report.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, val, out);
                }
            }
            Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
                let rendered: Vec<String> = items.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!("{prefix} = [{}]\n", rendered.join(", ")));
            }
            Value::Array(items) => {
                for (idx, item) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{idx}]"), item, out);
                }
            }
            other => out.push_str(&format!("{prefix} = {other}\n")),
        }
    }
    walk("", v, &mut out);
    out
}

fn read_to_string(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &PathBuf) -> Result<Graph, Failure> {
    Ok(graph_from_str(&read_to_string(path)?)?)
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::FieldInfo { q } => field_info(*q),
        Command::NoGraph { n, q, epsilon, out } => no_graph_cmd(*n, *q, *epsilon, out.as_ref()),
        Command::Cap { kind, n, q, seed, out } => cap_cmd(*kind, *n, *q, *seed, out.as_ref()),
        Command::CapGraph { cap, out } => cap_graph_cmd(cap, out.as_ref()),
        Command::Analyze { graph } => analyze_cmd(graph),
        Command::Check { graph, bound, mode, gate, f1, f2 } => {
            check_cmd(graph, *bound, *mode, *gate, *f1, *f2)
        }
        Command::Scan { family, samples } => scan_cmd(family, samples),
        Command::Tower { graph, m, i, n, q, epsilon } => {
            tower_cmd(graph.as_ref(), *m, *i, *n, *q, *epsilon)
        }
        Command::Clique { graph, n, q, epsilon, budget } => {
            clique_cmd(graph.as_ref(), *n, *q, *epsilon, *budget)
        }
    }
}

fn field_info(q: u64) -> Result<Outcome, Failure> {
    let field = Field::new(q)?;
    let least_nonsquare = field.least_nonsquare().ok().map(|e| e.0);
    let report = envelope(
        json!({ "command": "field-info", "q": q }),
        json!({
            "q": field.order(),
            "characteristic": field.characteristic(),
            "degree": field.degree(),
            "modulus": field.modulus(),
            "gamma": field.gamma(),
            "least_nonsquare": least_nonsquare,
        }),
        Value::Null,
        Value::Null,
        json!([]),
        json!({}),
    );
    Ok(Outcome { report, all_satisfied: true })
}

fn no_graph_cmd(n: u32, q: u64, epsilon: i8, out: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let (g, audit) = no_graph(n, q, epsilon)?;
    if let Some(path) = out {
        std::fs::write(path, graph_to_string(&g))?;
    }
    let all = audit.all_match();
    let report = envelope(
        json!({ "command": "no-graph", "n": n, "q": q, "epsilon": epsilon }),
        audit.stats.as_ref().map(stats_json).unwrap_or(Value::Null),
        Value::Null,
        Value::Null,
        json!([]),
        json!({ "orthogonality": orthogonality_json(&audit) }),
    );
    Ok(Outcome { report, all_satisfied: all })
}

fn cap_cmd(
    kind: CapKindArg,
    n: u32,
    q: u64,
    seed: u64,
    out: Option<&PathBuf>,
) -> Result<Outcome, Failure> {
    let field = Arc::new(Field::new(q)?);
    let geo_kind = match kind {
        CapKindArg::Conic => CapKind::Conic,
        CapKindArg::Elliptic => CapKind::EllipticQuadric,
        CapKindArg::Greedy => CapKind::GreedyRandom,
    };
    let cap = cap_construct(field, geo_kind, n, seed)?;
    if let Some(path) = out {
        std::fs::write(path, cap_to_string(&cap))?;
    }
    let profile = cap.secant_profile()?;
    let report = envelope(
        json!({ "command": "cap", "kind": format!("{geo_kind:?}"), "n": n, "q": q, "seed": seed }),
        json!({
            "t": cap.len(),
            "secants": profile.secants,
            "h_mean": report::rational(&profile.mean),
            "h_var": report::rational(&profile.variance),
            "exterior_points": profile.exterior.len(),
        }),
        Value::Null,
        Value::Null,
        json!([]),
        json!({}),
    );
    Ok(Outcome { report, all_satisfied: true })
}

fn cap_graph_cmd(cap_path: &PathBuf, out: Option<&PathBuf>) -> Result<Outcome, Failure> {
    let cap = cap_from_str(&read_to_string(cap_path)?)?;
    let audit = cap_graph_audit(&cap)?;
    if let Some(path) = out {
        let g = cap_graph(&cap)?;
        std::fs::write(path, graph_to_string(&g))?;
    }
    let all = audit.all_match;
    let report = envelope(
        json!({ "command": "cap-graph", "cap": cap_path.display().to_string() }),
        stats_json(&audit.stats),
        Value::Null,
        Value::Null,
        json!([]),
        json!({ "cap_audit": cap_audit_json(&audit) }),
    );
    Ok(Outcome { report, all_satisfied: all })
}

/// Bounds applicable to one measured graph: the exact-mode regular
/// variant always, plus the classical pair when the graph is strongly
/// regular, plus the sigma floors (informational) when a mean gap
/// gives them a hypothesis to stand on.
fn applicable_bounds(
    g: &Graph,
    stats: Option<&asrg::graph::AsrgStats>,
    spectrum: Option<&asrg::spectral::SpectrumReport>,
) -> (Vec<Value>, bool) {
    let mut out = Vec::new();
    let mut all = true;
    let classification = regularity_classify(g);
    if let Some(spec) = spectrum {
        let v = g.order() as Real;
        let k = g.degree(0) as Real;
        if spec.connected && k > spec.r && spec.r > spec.s {
            for mode in [KreinVariantMode::Exact, KreinVariantMode::Paper] {
                if let Ok(b) = krein_variant(v, k, spec.r, spec.s, mode) {
                    if mode == KreinVariantMode::Exact {
                        all &= b.satisfied;
                    }
                    out.push(bound_json(&b));
                }
            }
        }
    }
    if let Regularity::Srg { v, k, lambda, mu } = classification {
        if let Ok(srg) = asrg::spectral::srg_spectrum(v as u64, k as u64, lambda as u64, mu as u64)
        {
            if let Ok(b) = krein_classical(v as Real, k as Real, srg.r, srg.s) {
                all &= b.satisfied;
                out.push(bound_json(&b));
            }
            if let Ok(b) = absolute_classical(v as Real, srg.f, srg.g) {
                all &= b.satisfied;
                out.push(bound_json(&b));
            }
        }
    }
    if let Some(st) = stats {
        let v = st.v as Real;
        let k = st.k as Real;
        let lambda = rat_to_real(&st.lambda_mean);
        let mu = rat_to_real(&st.mu_mean);
        if let Ok(f) = sigma_floor_krein(v, k, lambda, mu) {
            let mut val = sigma_floor_json(&f);
            val["name"] = json!("sigma_floor_krein");
            val["sigma"] = report::real(st.sigma);
            out.push(val);
        }
        if let Ok(f) = sigma_floor_absolute(v, k, lambda, mu) {
            let mut val = sigma_floor_json(&f);
            val["name"] = json!("sigma_floor_absolute");
            val["sigma"] = report::real(st.sigma);
            out.push(val);
        }
    }
    (out, all)
}

fn analyze_one(path: &PathBuf) -> Result<(Value, bool), Failure> {
    let g = load_graph(path)?;
    let classification = regularity_classify(&g);
    let regular = !matches!(classification, Regularity::Irregular);
    let stats = if regular { asrg_stats(&g).ok() } else { None };
    let spectrum = if regular && g.order() >= 2 {
        Some(spectrum_report(&g)?)
    } else {
        None
    };
    let e_matrix = match (&stats, &spectrum) {
        (Some(st), Some(spec)) if spec.connected => Some(e_matrix_report(&g, st)?),
        _ => None,
    };
    let (bound_values, mut all) = applicable_bounds(&g, stats.as_ref(), spectrum.as_ref());
    if let Some(e) = &e_matrix {
        all &= e.bound_holds;
    }
    let report = envelope(
        json!({
            "command": "analyze",
            "graph": path.display().to_string(),
            "v": g.order(),
            "edges": g.edge_count(),
        }),
        stats.as_ref().map(stats_json).unwrap_or(Value::Null),
        spectrum.as_ref().map(spectrum_json).unwrap_or(Value::Null),
        e_matrix.as_ref().map(e_matrix_json).unwrap_or(Value::Null),
        Value::Array(bound_values),
        json!({
            "classification": classification,
            "connected": g.is_connected(),
        }),
    );
    Ok((report, all))
}

fn analyze_cmd(paths: &[PathBuf]) -> Result<Outcome, Failure> {
    let mut reports = Vec::new();
    let mut all = true;
    for path in paths {
        let (report, ok) = analyze_one(path)?;
        all &= ok;
        reports.push(report);
    }
    let report = if reports.len() == 1 {
        reports.pop().expect("one report")
    } else {
        json!({ "schema": report::SCHEMA, "reports": reports })
    };
    Ok(Outcome { report, all_satisfied: all })
}

fn check_cmd(
    path: &PathBuf,
    bound: BoundName,
    mode: Mode,
    gate: Real,
    f1: Option<Real>,
    f2: Option<Real>,
) -> Result<Outcome, Failure> {
    let g = load_graph(path)?;
    let spec = spectrum_report(&g)?;
    let v = g.order() as Real;
    let k = g.regular_degree()? as Real;
    let (r, s) = (spec.r, spec.s);
    // Cluster multiplicities of r and s, for the multiplicity-based
    // bounds when the caller does not supply them.
    let mult = |target: Real| {
        spec.eigenvalues
            .iter()
            .filter(|&&u| (u - target).abs() <= spec.cluster_tol)
            .count() as Real
    };
    let b = match bound {
        BoundName::KreinClassical => krein_classical(v, k, r, s)?,
        BoundName::AbsoluteClassical => absolute_classical(v, mult(r), mult(s))?,
        BoundName::KreinVariant => {
            let mode = match mode {
                Mode::Paper => KreinVariantMode::Paper,
                Mode::Exact => KreinVariantMode::Exact,
            };
            krein_variant(v, k, r, s, mode)?
        }
        BoundName::AbsoluteVariant => {
            let (f_small, f_big) = (mult(r), mult(s));
            let f1 = f1.unwrap_or_else(|| f_small.min(f_big));
            let f2 = f2.unwrap_or_else(|| f_small.max(f_big));
            bounds::absolute_variant(v, k, r, s, gate, f1, f2)?
        }
    };
    let all = b.satisfied;
    let report = envelope(
        json!({ "command": "check", "graph": path.display().to_string() }),
        Value::Null,
        spectrum_json(&spec),
        Value::Null,
        json!([bound_json(&b)]),
        json!({}),
    );
    Ok(Outcome { report, all_satisfied: all })
}

fn parse_samples(text: &str) -> Result<Vec<Real>, Failure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<Real>()
                .map_err(|e| Failure::input(format!("bad sample {part:?}: {e}")))
        })
        .collect()
}

fn scan_cmd(family: &PathBuf, samples: &str) -> Result<Outcome, Failure> {
    let spec: FamilySpec = serde_json::from_str(&read_to_string(family)?)
        .map_err(|e| Failure::input(format!("{}: {e}", family.display())))?;
    let samples = parse_samples(samples)?;
    let scan = family_scan(&spec, &samples)?;
    let all = !scan.verdicts.iter().any(|(_, v)| *v == Verdict::Infeasible);
    let report = envelope(
        json!({
            "command": "scan",
            "family": family.display().to_string(),
            "var": spec.var,
        }),
        Value::Null,
        Value::Null,
        Value::Null,
        json!([]),
        json!({ "scan": scan_json(&scan) }),
    );
    Ok(Outcome { report, all_satisfied: all })
}

fn tower_cmd(
    graph: Option<&PathBuf>,
    m: Option<usize>,
    i: Option<usize>,
    n: Option<u32>,
    q: Option<u64>,
    epsilon: Option<i8>,
) -> Result<Outcome, Failure> {
    match (graph, n, q) {
        (Some(path), None, None) => {
            let (m, i) = match (m, i) {
                (Some(m), Some(i)) => (m, i),
                _ => return Err(Failure::input("neighborhood tower requires --m and --i")),
            };
            let g = load_graph(path)?;
            let level = neighborhood_tower(&g, m, i, CliquePolicy::Greedy)?;
            let report = envelope(
                json!({
                    "command": "tower",
                    "graph": path.display().to_string(),
                    "m": m,
                    "i": i,
                }),
                level.stats.as_ref().map(stats_json).unwrap_or(Value::Null),
                Value::Null,
                Value::Null,
                json!([]),
                json!({ "tower_level": tower_level_json(&level) }),
            );
            Ok(Outcome { report, all_satisfied: true })
        }
        (None, Some(n), Some(q)) => {
            let epsilon =
                epsilon.ok_or_else(|| Failure::input("tower step requires --epsilon"))?;
            let step = tower_step_check(n, q, epsilon)?;
            let ok = !step.mismatch;
            let report = envelope(
                json!({ "command": "tower", "n": n, "q": q, "epsilon": epsilon }),
                Value::Null,
                Value::Null,
                Value::Null,
                json!([]),
                json!({ "tower_step": tower_step_json(&step) }),
            );
            Ok(Outcome { report, all_satisfied: ok })
        }
        _ => Err(Failure::input(
            "tower takes either --graph with --m/--i or --n/--q/--epsilon",
        )),
    }
}

fn clique_cmd(
    graph: Option<&PathBuf>,
    n: Option<u32>,
    q: Option<u64>,
    epsilon: Option<i8>,
    budget: u64,
) -> Result<Outcome, Failure> {
    match (graph, n, q, epsilon) {
        (Some(path), None, None, None) => {
            let g = load_graph(path)?;
            let omega = clique_number(&g, budget)?;
            let report = envelope(
                json!({ "command": "clique", "graph": path.display().to_string() }),
                json!({ "clique_number": omega, "v": g.order() }),
                Value::Null,
                Value::Null,
                json!([]),
                json!({}),
            );
            Ok(Outcome { report, all_satisfied: true })
        }
        (None, Some(n), Some(q), Some(epsilon)) => {
            let (g, _) = no_graph(n, q, epsilon)?;
            let computed = clique_number(&g, budget)?;
            let formula = no_clique_formula(n, q, epsilon)?;
            let agree = computed as u32 == formula;
            let report = envelope(
                json!({ "command": "clique", "n": n, "q": q, "epsilon": epsilon }),
                json!({
                    "clique_number": computed,
                    "formula": formula,
                    "agree": agree,
                    "v": g.order(),
                }),
                Value::Null,
                Value::Null,
                json!([]),
                json!({ "clique_formula_mismatch": !agree }),
            );
            Ok(Outcome { report, all_satisfied: agree })
        }
        _ => Err(Failure::input(
            "clique takes either --graph or --n/--q/--epsilon",
        )),
    }
}
