//! Command-line front end.
//!
//! Every subcommand produces a [`Report`]; `--json` prints it verbatim and the
//! default text output is a rendering of the same JSON value.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::chevalley::{chevalley_constants, LieAlgebraData};
use crate::error::{GradationError, KoszulError, ParaError, ParseError, RootSystemError};
use crate::gradation::{self, grade_from_crossing, CrossingSet, DiagramConfig, Gradation, SatakeDiagram};
use crate::koszul;
use crate::paracomplex::{self, FdConfig, PotentialConfig};
use crate::rational::{self, Rational};
use crate::rootsys::{render::Combination, Family, RootSystem, SimpleType};
use crate::verify::{self, VerifyOptions};

pub const SCHEMA: &str = "parakahler.report/1";

/// Einstein residual below which the `potential` command reports a pass.
pub const RESIDUAL_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Gradation(#[from] GradationError),
    #[error(transparent)]
    Koszul(#[from] KoszulError),
    #[error(transparent)]
    Para(#[from] ParaError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool) -> Self {
        Self { name: name.into(), passed, detail: None }
    }

    fn with_detail(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: Some(detail.into()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    pub verification: Vec<Check>,
}

impl Report {
    fn new(command: String, inputs: Value, result: Value, verification: Vec<Check>) -> Self {
        let canonical = serde_json::to_string(&json!({ "command": command, "inputs": inputs })).expect("json");
        let digest = hex::encode(Sha256::digest(canonical.as_bytes()));
        Self { schema: SCHEMA.into(), command, input_digest: digest, result, verification }
    }

    pub fn all_passed(&self) -> bool {
        self.verification.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input digest: {}\n", self.input_digest));
        render_value(&mut out, &self.result, 0);
        if !self.verification.is_empty() {
            out.push_str("verification:\n");
            for c in &self.verification {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => out.push_str(&format!("  [{mark}] {} ({d})\n", c.name)),
                    None => out.push_str(&format!("  [{mark}] {}\n", c.name)),
                }
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(|i| i.as_array().is_some_and(|r| r.iter().all(|x| scalar(x).is_some() && !x.is_array()))) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                let key = k.replace('_', " ");
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(out, val, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        // inline the first key of an object on the bullet line
                        let mut inner = String::new();
                        render_value(&mut inner, item, indent + 1);
                        let trimmed = inner.trim_start().to_string();
                        out.push_str(&format!("{pad}- {trimmed}"));
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[derive(Debug, Parser)]
#[command(name = "parakahler", version, about = "Invariant para-Kähler Einstein structures on semisimple adjoint orbits")]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct TypeArgs {
    /// Dynkin family (A-G).
    pub family: String,
    pub rank: usize,
}

#[derive(Debug, Args, Clone)]
pub struct GradedArgs {
    #[command(flatten)]
    pub ty: TypeArgs,
    /// Crossed nodes, comma separated and 1-based.
    #[arg(long)]
    pub cross: Option<String>,
    /// Satake diagram: catalog name or path to a diagram file.
    #[arg(long)]
    pub satake: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots, Cartan matrix and fundamental weights.
    Roots(TypeArgs),
    /// All fundamental gradations of a simple type.
    Gradations {
        #[command(flatten)]
        ty: TypeArgs,
        /// Mark which crossings are consistent with this Satake diagram.
        #[arg(long)]
        satake: Option<String>,
    },
    /// Koszul form and its coefficients for one gradation.
    Koszul(GradedArgs),
    /// The symplectic form rho = d psi.
    Rho(GradedArgs),
    /// The invariant Einstein metric lambda^-1 rho(., K .).
    Einstein {
        #[command(flatten)]
        graded: GradedArgs,
        /// Einstein constant as a rational `p/q`.
        #[arg(long, default_value = "1")]
        lambda: String,
    },
    /// Run the structural verification suite.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Curvature of a chart potential described in a config file.
    Potential { config: PathBuf },
    /// List built-in Satake diagrams, or show one.
    Catalog { name: Option<String> },
}

fn simple_type(t: &TypeArgs) -> Result<SimpleType, CliError> {
    let family: Family = t.family.parse()?;
    Ok(SimpleType::new(family, t.rank)?)
}

fn render_q(q: &Rational) -> Value {
    Value::String(rational::render(q))
}

fn q_list(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(render_q).collect())
}

fn type_inputs(ty: SimpleType) -> Value {
    json!({ "type": ty.to_string() })
}

fn diagram_json(d: &SatakeDiagram) -> Value {
    json!({
        "name": d.name(),
        "type": d.simple_type().to_string(),
        "black": d.black().map(|b| b + 1).collect::<Vec<_>>(),
        "arrows": d.arrows().map(|(a, b)| format!("{}-{}", a + 1, b + 1)).collect::<Vec<_>>(),
    })
}

/// Resolves `--satake`: an existing file path, otherwise a catalog name.
fn load_satake(spec: &str) -> Result<DiagramConfig, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        Ok(DiagramConfig::load(path)?)
    } else {
        Ok(DiagramConfig { diagram: gradation::catalog_lookup(spec)?, crossed: None })
    }
}

pub fn cmd_roots(ty: SimpleType) -> Result<Report, CliError> {
    let rs = RootSystem::build(ty);
    let roots: Vec<Value> = rs
        .positive_roots()
        .iter()
        .map(|r| json!({ "root": r.to_string(), "coeffs": r.coeffs(), "height": r.height() }))
        .collect();
    let weights: Vec<Value> =
        rs.fundamental_weights().iter().map(|w| Value::String(w.to_string())).collect();
    let result = json!({
        "type": ty.to_string(),
        "rank": ty.rank(),
        "dimension": rs.dimension(),
        "num_positive": rs.num_positive(),
        "cartan_matrix": rs.cartan(),
        "positive_roots": roots,
        "highest_root": rs.highest_root().to_string(),
        "fundamental_weights": weights,
    });
    let checks = vec![Check::new("dimension_is_rank_plus_roots", rs.dimension() == ty.rank() + 2 * rs.num_positive())];
    Ok(Report::new(format!("roots {} {}", ty.family().letter(), ty.rank()), type_inputs(ty), result, checks))
}

pub fn cmd_gradations(ty: SimpleType, satake: Option<&str>) -> Result<Report, CliError> {
    let rs = RootSystem::build(ty);
    let diagram = satake.map(load_satake).transpose()?.map(|c| c.diagram);
    let mut rows = Vec::new();
    for c in CrossingSet::all_nonempty(ty.rank()) {
        let g = grade_from_crossing(&rs, &c)?;
        let dims: Vec<usize> = (-g.depth()..=g.depth()).map(|p| g.dim_component(p)).collect();
        let mut row = json!({
            "crossed": c.one_based(),
            "depth": g.depth(),
            "component_dims": dims,
            "orbit_dimension": g.orbit_dimension(),
        });
        if let Some(d) = &diagram {
            row["satake_consistent"] = Value::Bool(gradation::satake_consistent(d, &c)?);
        }
        rows.push(row);
    }
    let mut result = json!({ "type": ty.to_string(), "gradations": rows });
    if let Some(d) = &diagram {
        result["satake"] = diagram_json(d);
    }
    let mut inputs = type_inputs(ty);
    inputs["satake"] = json!(satake);
    let mut command = format!("gradations {} {}", ty.family().letter(), ty.rank());
    if let Some(s) = satake {
        command.push_str(&format!(" --satake {s}"));
    }
    Ok(Report::new(command, inputs, result, Vec::new()))
}

/// Everything a graded command needs, after crossing and Satake resolution.
struct Graded {
    ty: SimpleType,
    gradation: Gradation,
    algebra: LieAlgebraData,
    satake: Option<SatakeDiagram>,
    command: String,
    inputs: Value,
}

fn resolve_graded(name: &str, args: &GradedArgs) -> Result<Graded, CliError> {
    let ty = simple_type(&args.ty)?;
    let satake = args.satake.as_deref().map(load_satake).transpose()?;
    let crossing = match (&args.cross, satake.as_ref().and_then(|s| s.crossed.clone())) {
        (Some(c), _) => CrossingSet::from_one_based(ty.rank(), &crate::config::parse_index_list("cross", c)?)?,
        (None, Some(c)) => c,
        (None, None) => return Err(CliError::Usage("--cross is required unless the diagram file sets `crossed`".into())),
    };
    let diagram = satake.map(|s| s.diagram);
    if let Some(d) = &diagram {
        if d.simple_type() != ty {
            return Err(GradationError::TypeMismatch { diagram: d.simple_type().to_string(), algebra: ty.to_string() }.into());
        }
        d.check(&crossing)?;
    }
    let rs = RootSystem::build(ty);
    let gradation = grade_from_crossing(&rs, &crossing)?;
    let algebra = chevalley_constants(&rs);
    let cross_text = crossing.one_based().iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut command = format!("{name} {} {} --cross {cross_text}", ty.family().letter(), ty.rank());
    if let Some(s) = &args.satake {
        command.push_str(&format!(" --satake {s}"));
    }
    let inputs = json!({
        "type": ty.to_string(),
        "crossed": crossing.one_based(),
        "satake": diagram.as_ref().map(diagram_json),
    });
    Ok(Graded { ty, gradation, algebra, satake: diagram, command, inputs })
}

fn rho_table(g: &Gradation, rho: &koszul::TwoForm) -> Vec<Value> {
    let rs = g.root_system();
    rho.entries(rs)
        .into_iter()
        .enumerate()
        .map(|(id, (r, c))| {
            json!({ "root": r.to_string(), "degree": g.degree_of(id), "coefficient": rational::render(&c) })
        })
        .collect()
}

pub fn cmd_koszul(args: &GradedArgs) -> Result<Report, CliError> {
    let gr = resolve_graded("koszul", args)?;
    let (g, l) = (&gr.gradation, &gr.algebra);
    let rs = g.root_system();
    let psi = koszul::koszul_form(g);
    let psi_pi = rs.to_weight_basis(&psi);
    let rho = koszul::rho(g);
    let coeffs: Vec<Value> = koszul::koszul_coefficients(g)
        .into_iter()
        .map(|(i, c)| json!({ "node": i + 1, "a": c.a, "b": c.b }))
        .collect();
    let kernel_ok = koszul::kernel_is_g0(&rho, g, l);
    let result = json!({
        "type": gr.ty.to_string(),
        "crossed": g.crossing().one_based(),
        "psi_alpha": psi.to_string(),
        "psi_pi": Combination::new(psi_pi.iter().cloned(), "p").to_string(),
        "psi_alpha_coords": q_list(psi.coords()),
        "psi_pi_coords": q_list(&psi_pi),
        "coefficients": coeffs,
        "orbit_dimension": g.orbit_dimension(),
        "rho": rho_table(g, &rho),
        "kernel_is_g0": kernel_ok,
        "satake": gr.satake.as_ref().map(diagram_json),
    });
    let mut checks = vec![
        Check::new("kernel_is_g0", kernel_ok),
        Check::new("koszul_trace_oracle", verify::check_trace_oracle(g, l, &psi).is_ok()),
        Check::new("koszul_consistency", verify::check_consistency(g, &psi).is_ok()),
        Check::new("coefficient_positivity", koszul::is_positive_on_nilradical(&rho, g)),
    ];
    if gr.satake.is_some() {
        checks.push(Check::new("satake_consistent", true));
    }
    Ok(Report::new(gr.command, gr.inputs, result, checks))
}

pub fn cmd_rho(args: &GradedArgs) -> Result<Report, CliError> {
    let gr = resolve_graded("rho", args)?;
    let (g, l) = (&gr.gradation, &gr.algebra);
    let rho = koszul::rho(g);
    let z = l.killing_dual(&koszul::koszul_form(g))?;
    let omega = koszul::omega_z(l, &z)?;
    let kernel: Vec<String> = koszul::kernel_of(&rho, l)
        .iter()
        .map(|b| match b {
            crate::chevalley::BasisIndex::Cartan(i) => format!("H{}", i + 1),
            crate::chevalley::BasisIndex::RootVector(r) => format!("X[{r}]"),
        })
        .collect();
    let result = json!({
        "type": gr.ty.to_string(),
        "crossed": g.crossing().one_based(),
        "rho": rho_table(g, &rho),
        "kernel": kernel,
    });
    let checks = vec![
        Check::new("closedness", verify::check_closed(&rho, l).is_ok()),
        Check::new("type_11", koszul::is_type_11(&rho, g, l)),
        Check::new("kernel_is_g0", koszul::kernel_is_g0(&rho, g, l)),
        Check::new("omega_z_equals_rho", omega == rho),
        Check::new("rho_g0_invariance", verify::check_rho_invariance(&rho, g, l).is_ok()),
    ];
    Ok(Report::new(gr.command, gr.inputs, result, checks))
}

pub fn cmd_einstein(args: &GradedArgs, lambda: &str) -> Result<Report, CliError> {
    let lambda = rational::parse(lambda)?;
    let mut gr = resolve_graded("einstein", args)?;
    gr.command.push_str(&format!(" --lambda {}", rational::render(&lambda)));
    gr.inputs["lambda"] = render_q(&lambda);
    let (g, l) = (&gr.gradation, &gr.algebra);
    let e = koszul::einstein_structure(g, l, &lambda)?;
    let pairs: Vec<Value> = g
        .nilradical_roots()
        .into_iter()
        .map(|a| {
            json!({
                "root": g.root_system().root(a).to_string(),
                "pairing": rational::render(&e.pairing(l, a).expect("nilradical root")),
            })
        })
        .collect();
    let s = e.signature();
    let result = json!({
        "type": gr.ty.to_string(),
        "crossed": g.crossing().one_based(),
        "lambda": render_q(&lambda),
        "dimension": e.basis().len(),
        "pairings": pairs,
        "signature": { "positive": s.positive, "negative": s.negative, "zero": s.zero },
    });
    let checks = vec![
        Check::new("symmetric", e.is_symmetric()),
        Check::new("k_skew", e.is_k_skew()),
        Check::new("g0_invariant", e.is_g0_invariant(l)),
        Check::with_detail("neutral_signature", e.is_neutral(), format!("signature {}, {}", s.positive, s.negative)),
    ];
    Ok(Report::new(gr.command, gr.inputs, result, checks))
}

pub fn cmd_verify(max_rank: usize, inject_fault: bool) -> Result<Report, CliError> {
    if max_rank == 0 {
        return Err(CliError::Usage("--max-rank must be at least 1".into()));
    }
    let report = verify::run(max_rank, &VerifyOptions { inject_fault, ..Default::default() });
    let checks = report
        .checks
        .iter()
        .map(|c| {
            let detail = match &c.first_failure {
                Some(f) => format!("{}/{} passed; first failure: {f}", c.passed, c.total),
                None => format!("{}/{}", c.passed, c.total),
            };
            Check::with_detail(&c.name, c.ok(), detail)
        })
        .collect();
    let result = json!({
        "max_rank": max_rank,
        "algebras": report.algebras,
        "gradations": report.gradations,
        "all_passed": report.all_passed(),
    });
    let mut command = format!("verify --max-rank {max_rank}");
    if inject_fault {
        command.push_str(" --inject-fault");
    }
    Ok(Report::new(command, json!({ "max_rank": max_rank, "inject_fault": inject_fault }), result, checks))
}

fn matrix_json(m: &nalgebra::DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|i| json!((0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>())).collect())
}

pub fn cmd_potential(path: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Parse(ParseError::Config { line: 0, msg: format!("reading {}: {e}", path.display()) })
    })?;
    potential_report(&text, &format!("potential {}", path.display()))
}

/// The `potential` report for config text.
pub fn potential_report(text: &str, command: &str) -> Result<Report, CliError> {
    let cfg = PotentialConfig::parse(text)?;
    let fd = FdConfig { h: cfg.h, outer_h: cfg.outer_h, margin: cfg.margin, ..FdConfig::default() };
    let f = &cfg.potential;
    let points = cfg.samples.points(f.dimension());
    for p in &points {
        paracomplex::check_admissible(f, p, &fd)?;
    }
    let (lambda, source) = match cfg.lambda {
        Some(l) => (l, "given"),
        None => (paracomplex::fit_lambda(f, &points[0], &fd)?, "fitted"),
    };
    let mut samples = Vec::new();
    let mut worst: f64 = 0.0;
    let mut worst_asym: f64 = 0.0;
    for p in &points {
        let s = paracomplex::metric_from_potential(f, p, &fd)?;
        let ric = &s.logdet_hessian * paracomplex::RICCI_SIGN;
        let residual = (&ric - &s.g * lambda).amax();
        worst = worst.max(residual);
        worst_asym = worst_asym.max(paracomplex::christoffel(f, p, &fd)?.max_asymmetry());
        samples.push(json!({
            "point": p,
            "metric": matrix_json(&s.g),
            "ricci": matrix_json(&ric),
            "residual": residual,
        }));
    }
    let result = json!({
        "potential": f.describe(),
        "dimension": f.dimension(),
        "lambda": lambda,
        "lambda_source": source,
        "max_residual": worst,
        "samples": samples,
    });
    let checks = vec![
        Check::with_detail("einstein_residual", worst < RESIDUAL_TOLERANCE, format!("{worst:.3e} < {RESIDUAL_TOLERANCE:e}")),
        Check::with_detail("christoffel_symmetric", worst_asym < 1e-8, format!("{worst_asym:.3e}")),
    ];
    Ok(Report::new(command.to_string(), json!({ "config": text }), result, checks))
}

pub fn cmd_catalog(name: Option<&str>) -> Result<Report, CliError> {
    let result = match name {
        Some(n) => diagram_json(&gradation::catalog_lookup(n)?),
        None => {
            let entries: Vec<Value> = gradation::catalog_names()
                .iter()
                .map(|n| gradation::catalog_lookup(n).map(|d| diagram_json(&d)))
                .collect::<Result<_, _>>()?;
            json!({ "diagrams": entries })
        }
    };
    let command = match name {
        Some(n) => format!("catalog {n}"),
        None => "catalog".into(),
    };
    Ok(Report::new(command, json!({ "name": name }), result, Vec::new()))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Roots(t) => cmd_roots(simple_type(t)?),
        Command::Gradations { ty, satake } => cmd_gradations(simple_type(ty)?, satake.as_deref()),
        Command::Koszul(a) => cmd_koszul(a),
        Command::Rho(a) => cmd_rho(a),
        Command::Einstein { graded, lambda } => cmd_einstein(graded, lambda),
        Command::Verify { max_rank, inject_fault } => cmd_verify(*max_rank, *inject_fault),
        Command::Potential { config } => cmd_potential(config),
        Command::Catalog { name } => cmd_catalog(name.as_deref()),
    }
}

/// Parses arguments, runs the command and writes output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
            let _ = out.write_all(text.as_bytes());
            let is_verify = matches!(cli.command, Command::Verify { .. });
            if is_verify && !report.all_passed() {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
