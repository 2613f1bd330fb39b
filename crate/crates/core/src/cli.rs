//! Command-line front end. `run` is the whole program minus process I/O so
//! that it can be driven from tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{check_associativity, Algebra, DEFAULT_DIM_CAP};
use crate::homology::{certificate_from_dims, HomologyEngine, HomologyError, Theory};
use crate::io::{self, InputError, LoadOptions};
use crate::mixed::{build_mixed_complex_capped, verify_cyclic_relations, verify_mixed_identities, Check, ComplexError, DEFAULT_MAX_CHAIN_DIM};
use crate::orbifold::{betti_table, gl_rank_warnings};
use crate::towers::{continuity_check, hp_continuity_check, TowerError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_SIZE_CAP: i32 = 2;
pub const EXIT_NOT_ESTABLISHED: i32 = 3;

/// Algebra dimension cap applied when the requested degree is 4 or more.
pub const HIGH_DEGREE_DIM_CAP: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "cychom", version, about = "Exact Hochschild, cyclic and periodic cyclic homology of finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Highest homological degree reported.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Skip the associativity check on input algebras.
    #[arg(long, global = true)]
    pub no_validate: bool,

    /// Maximum algebra dimension (default 64, or 16 when --max-degree >= 4).
    #[arg(long, global = true)]
    pub cap_dim: Option<usize>,

    /// Lift all size caps.
    #[arg(long, global = true)]
    pub i_know: bool,

    /// Include the full stabilization evidence.
    #[arg(long, global = true)]
    pub certificate: bool,

    /// Run brute-force cross-checks where available.
    #[arg(long, global = true)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate an algebra file.
    Check { input: PathBuf },
    /// Hochschild homology.
    Hh { input: PathBuf },
    /// Cyclic homology.
    Hc { input: PathBuf },
    /// Periodic cyclic homology, only through a stabilization certificate.
    Hp { input: PathBuf },
    /// Verify the mixed-complex and cyclic identities.
    Identities { input: PathBuf },
    /// Continuity checks along a tower of algebras.
    Tower { input: PathBuf },
    /// Invariant Betti numbers of torus quotients.
    Orbifold { input: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Hh { .. } => "hh",
            Command::Hc { .. } => "hc",
            Command::Hp { .. } => "hp",
            Command::Identities { .. } => "identities",
            Command::Tower { .. } => "tower",
            Command::Orbifold { .. } => "orbifold",
        }
    }

    fn input(&self) -> &PathBuf {
        match self {
            Command::Check { input }
            | Command::Hh { input }
            | Command::Hc { input }
            | Command::Hp { input }
            | Command::Identities { input }
            | Command::Tower { input }
            | Command::Orbifold { input } => input,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        let (code, kind) = match e {
            InputError::Parse { .. } | InputError::Io { .. } => (EXIT_INVALID, "PARSE_ERROR"),
            InputError::Validation(_) => (EXIT_INVALID, "VALIDATION_ERROR"),
            InputError::SizeCap { .. } => (EXIT_SIZE_CAP, "SIZE_CAP_EXCEEDED"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        let (code, kind) = match e {
            ComplexError::SizeCapExceeded { .. } => (EXIT_SIZE_CAP, "SIZE_CAP_EXCEEDED"),
            _ => (EXIT_INVALID, "VALIDATION_ERROR"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Complex(c) => c.into(),
            other => Failure { code: EXIT_INVALID, kind: "VALIDATION_ERROR", message: other.to_string() },
        }
    }
}

impl From<TowerError> for Failure {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Homology(h) => h.into(),
            other => Failure { code: EXIT_INVALID, kind: "VALIDATION_ERROR", message: other.to_string() },
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

struct Job<'a> {
    cli: &'a Cli,
    header: Map<String, Value>,
}

impl Job<'_> {
    fn load_options(&self) -> LoadOptions {
        LoadOptions { validate: !self.cli.no_validate, dim_cap: self.dim_cap() }
    }

    fn dim_cap(&self) -> usize {
        if self.cli.i_know {
            return usize::MAX;
        }
        self.cli.cap_dim.unwrap_or(if self.cli.max_degree >= 4 { HIGH_DEGREE_DIM_CAP } else { DEFAULT_DIM_CAP })
    }

    fn chain_cap(&self) -> usize {
        if self.cli.i_know {
            usize::MAX
        } else {
            DEFAULT_MAX_CHAIN_DIM
        }
    }

    fn algebra(&self) -> Result<Algebra, Failure> {
        Ok(io::parse_algebra_file(self.cli.command.input(), self.load_options())?)
    }

    fn engine(&self, a: &Algebra) -> Result<HomologyEngine, Failure> {
        Ok(HomologyEngine::with_cap(a, self.cli.max_degree, self.chain_cap())?)
    }

    fn set_certificate(&mut self, v: Value) {
        self.header.insert("certificate".into(), v);
    }

    /// Returns the exit code and the `result` section.
    fn execute(&mut self) -> Result<(i32, Value), Failure> {
        let n = self.cli.max_degree;
        match &self.cli.command {
            Command::Check { .. } => {
                let a = self.algebra()?;
                let associativity = if self.cli.no_validate {
                    match check_associativity(&a) {
                        None => "verified".to_string(),
                        Some((i, j, k)) => format!("fails at ({i}, {j}, {k})"),
                    }
                } else {
                    "verified".to_string()
                };
                Ok((
                    EXIT_OK,
                    json!({
                        "dim": a.dim(),
                        "basis": a.labels(),
                        "unit": a.unit().map(|u| u.to_vec()),
                        "commutative": a.is_commutative(),
                        "associativity": associativity,
                    }),
                ))
            }
            Command::Hh { .. } | Command::Hc { .. } => {
                let theory = if matches!(self.cli.command, Command::Hh { .. }) { Theory::HH } else { Theory::HC };
                let a = self.algebra()?;
                let engine = self.engine(&a)?;
                let report = engine.report(theory, false)?;
                let mut result = json!({ "theory": report.theory, "dims": report.dims });
                let cert = engine.certificate();
                self.set_certificate(cert.as_ref().map_or(json!("NOT_ESTABLISHED"), |c| json!(c.n)));
                if self.cli.certificate {
                    result["stabilization"] = cert.map_or(json!("NOT_ESTABLISHED"), |c| to_value(&c));
                }
                if self.cli.oracle {
                    let hh0 = engine.hochschild_dims()[0];
                    let hc0 = engine.cyclic_dims()[0];
                    result["oracle"] = json!({ "hc0_equals_hh0": hh0 == hc0 });
                }
                Ok((EXIT_OK, result))
            }
            Command::Hp { .. } => {
                let a = self.algebra()?;
                let engine = self.engine(&a)?;
                match engine.periodic() {
                    Ok(report) => {
                        let evidence = report.certificate.expect("HP always carries evidence");
                        self.set_certificate(json!(evidence.certificate.n));
                        let mut result = json!({
                            "status": "ESTABLISHED",
                            "hp_even": report.dims[0],
                            "hp_odd": report.dims[1],
                            "read_from": [evidence.even_degree, evidence.odd_degree],
                        });
                        if self.cli.certificate {
                            result["evidence"] = to_value(&evidence);
                        }
                        Ok((EXIT_OK, result))
                    }
                    Err(HomologyError::NoCertificate { n_max, hochschild }) => {
                        self.set_certificate(json!("NOT_ESTABLISHED"));
                        Ok((
                            EXIT_NOT_ESTABLISHED,
                            json!({
                                "status": "NOT_ESTABLISHED",
                                "reason": if certificate_from_dims(&hochschild, n_max).is_some() {
                                    "the stabilized odd degree lies above --max-degree".to_string()
                                } else {
                                    format!("no N <= {} with HH_n = 0 for all N < n <= {n_max}", n_max.saturating_sub(2))
                                },
                                "hochschild": hochschild,
                            }),
                        ))
                    }
                    Err(e) => Err(e.into()),
                }
            }
            Command::Identities { .. } => {
                let a = self.algebra()?;
                let mc = build_mixed_complex_capped(&a, n, self.chain_cap())?;
                let report = verify_mixed_identities(&mc);
                let relations = verify_cyclic_relations(&a, n.max(1))?;
                let check = |c: &Check| match c {
                    Check::Pass => json!("pass"),
                    Check::NotApplicable => json!("n/a"),
                    Check::Fail { row, col, value } => json!({ "fail": { "row": row, "col": col, "value": value } }),
                };
                let degrees: Vec<Value> = report
                    .degrees
                    .iter()
                    .map(|d| {
                        json!({
                            "degree": d.degree,
                            "b_tilde_squared": check(&d.b_squared),
                            "anticommutator": check(&d.anticommutator),
                            "big_b_tilde_squared": check(&d.big_b_squared),
                        })
                    })
                    .collect();
                let rels: Vec<Value> = relations
                    .iter()
                    .map(|r| {
                        json!({
                            "tensor_degree": r.tensor_degree,
                            "lambda_order": check(&r.lambda_order),
                            "norm_kills_one_minus_lambda": check(&r.norm_kills),
                            "b_lambda": check(&r.b_lambda),
                            "norm_b": check(&r.norm_b),
                        })
                    })
                    .collect();
                let pass = report.all_pass()
                    && relations.iter().all(|r| {
                        r.lambda_order.passed() && r.norm_kills.passed() && r.b_lambda.passed() && r.norm_b.passed()
                    });
                let code = if pass { EXIT_OK } else { EXIT_INVALID };
                Ok((code, json!({ "pass": pass, "mixed": degrees, "cyclic_relations": rels })))
            }
            Command::Tower { .. } => {
                let ds = io::parse_tower_file(self.cli.command.input(), self.load_options())?;
                let stage_dims: Vec<usize> = ds.stages().iter().map(Algebra::dim).collect();
                let hh = continuity_check(&ds, Theory::HH, n)?;
                let hc = continuity_check(&ds, Theory::HC, n)?;
                let hp = match hp_continuity_check(&ds, n) {
                    Ok(r) => {
                        self.set_certificate(json!(r.common_n));
                        to_value(&r)
                    }
                    Err(TowerError::CertMissing { stage, n_max, hochschild }) => {
                        self.set_certificate(json!("CERT_MISSING"));
                        json!({ "status": "CERT_MISSING", "stage": stage, "n_max": n_max, "hochschild": hochschild })
                    }
                    Err(e) => return Err(e.into()),
                };
                let pass = hh.all_pass() && hc.all_pass() && hp.get("pass").is_none_or(|p| p == &json!(true));
                Ok((
                    if pass { EXIT_OK } else { EXIT_INVALID },
                    json!({ "stage_algebra_dims": stage_dims, "hh": hh, "hc": hc, "hp": hp, "pass": pass }),
                ))
            }
            Command::Orbifold { .. } => {
                let list = io::parse_components_file(self.cli.command.input())?;
                let table = betti_table(&list.components, self.cli.oracle)
                    .map_err(|e| Failure { code: EXIT_INVALID, kind: "VALIDATION_ERROR", message: e.to_string() })?;
                let warnings = list.gl_rank().map(|k| gl_rank_warnings(k, &list.components)).unwrap_or_default();
                let code = if table.all_checks_pass() { EXIT_OK } else { EXIT_INVALID };
                let mut result = to_value(&table);
                result["warnings"] = json!(warnings);
                if let Some(label) = &list.label {
                    result["label"] = json!(label);
                }
                Ok((code, result))
            }
        }
    }
}

fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(value, 0, &mut out);
            out
        }
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
        _ => None,
    }
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").expect("write to string"),
                    None => {
                        writeln!(out, "{pad}{k}:").expect("write to string");
                        render_text(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                match scalar(v) {
                    Some(s) => writeln!(out, "{pad}- {s}").expect("write to string"),
                    None => {
                        writeln!(out, "{pad}[{i}]").expect("write to string");
                        render_text(v, indent + 1, out);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).expect("write to string"),
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let input = cli.command.input();
    let digest = match std::fs::read(input) {
        Ok(bytes) => hex::encode(Sha256::digest(&bytes)),
        Err(e) => {
            let message = format!("cannot read {}: {e}", input.display());
            return Outcome { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {message}\n") };
        }
    };
    let mut header = Map::new();
    header.insert("tool".into(), json!("cychom"));
    header.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    header.insert("command".into(), json!(cli.command.name()));
    header.insert("max_degree".into(), json!(cli.max_degree));
    header.insert("input_sha256".into(), json!(digest));
    let mut job = Job { cli, header };
    let (code, body, stderr) = match job.execute() {
        Ok((code, result)) => (code, ("result", result), String::new()),
        Err(f) => {
            let stderr = format!("error: {}\n", f.message);
            (f.code, ("error", json!({ "kind": f.kind, "message": f.message })), stderr)
        }
    };
    let mut report = Map::new();
    report.insert("header".into(), Value::Object(job.header));
    report.insert(body.0.into(), body.1);
    Outcome { code, stdout: render(&Value::Object(report), cli.format), stderr }
}
