//! Job parsing and execution: one subcommand in, one JSON report out.

use std::fmt;
use std::time::Instant;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use vanderkit_core::agreement::AgreementReport;
use vanderkit_core::factor::{
    factor_u, invert_confluent_with, invert_simple_with,
    residual, ConfluentMethod, InversionConfig,
};
use vanderkit_core::matfunc::{hermite_coefficients, hermite_data_for, matrix_function, MatrixFunction};
use vanderkit_core::oracle::{gauss_jordan_invert, series_exp};
use vanderkit_core::vander::{build_confluent, det_product_formula, VandermondeKind};
use vanderkit_core::{Node, Rational, Scalar, Spectrum, DEFAULT_SEPARATION_TOL};

use crate::bench::{chebyshev_nodes, run_bench, DEFAULT_SIZES};
use crate::wire::{
    matrix_json, parse_matrix, parse_nodes, spectrum_json, MatrixSpec, NodeSpec,
    ScalarMode, WireScalar,
};

/// Series length for the exponential oracle in `verify`.
pub const DEFAULT_TERMS: usize = 35;

/// Default `verify` tolerance per unit of matrix order in float mode.
pub const DEFAULT_VERIFY_TOL_PER_ORDER: f64 = 1e-8;

/// Tolerance for comparing factors in the agreement report (float mode).
const AGREEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Build,
    Det,
    Factor,
    Invert,
    Matfunc,
    Verify,
    Bench,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Det => "det",
            Command::Factor => "factor",
            Command::Invert => "invert",
            Command::Matfunc => "matfunc",
            Command::Verify => "verify",
            Command::Bench => "bench",
        }
    }

    fn needs_input(self) -> bool {
        self != Command::Bench
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionName {
    Exp,
    Log,
}

impl FunctionName {
    fn function(self) -> MatrixFunction {
        match self {
            FunctionName::Exp => MatrixFunction::Exp,
            FunctionName::Log => MatrixFunction::Log,
        }
    }

    fn name(self) -> &'static str {
        match self {
            FunctionName::Exp => "exp",
            FunctionName::Log => "log",
        }
    }
}

/// The JSON document read from `--input` / `--stdin`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    #[serde(default)]
    pub nodes: Option<Vec<NodeSpec>>,
    #[serde(default)]
    pub scalar: Option<ScalarMode>,
    #[serde(default)]
    pub matrix: Option<MatrixSpec>,
    #[serde(default)]
    pub function: Option<FunctionName>,
    #[serde(default)]
    pub cases: Option<Vec<VerifyCase>>,
    #[serde(default)]
    pub separation_tol: Option<f64>,
}

/// A `verify` case: a spectrum, optionally with a matrix and function to check.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyCase {
    pub nodes: Vec<NodeSpec>,
    #[serde(default)]
    pub matrix: Option<MatrixSpec>,
    #[serde(default)]
    pub function: Option<FunctionName>,
}

/// A fully resolved job.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    pub scalar: ScalarMode,
    pub output: OutputFormat,
    /// Raw input document, echoed in the report.
    pub raw_input: Value,
    pub input: InputDoc,
    /// Overrides both the ill-conditioning threshold and the `verify` tolerance.
    pub tol: Option<f64>,
    pub terms: usize,
    pub sizes: Vec<usize>,
}

impl JobSpec {
    /// Parses the input text and resolves the scalar mode: explicit flag,
    /// then the document's `scalar` field, then `env_scalar`, then rational.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        command: Command,
        input_text: Option<&str>,
        scalar_flag: Option<ScalarMode>,
        env_scalar: Option<&str>,
        output: OutputFormat,
        tol: Option<f64>,
        terms: Option<usize>,
        sizes: Vec<usize>,
    ) -> Result<Self, CliError> {
        let raw_input = match input_text {
            Some(text) => serde_json::from_str::<Value>(text)
                .map_err(|e| CliError::Malformed(format!("input is not valid JSON: {e}")))?,
            None if command.needs_input() => {
                return Err(CliError::Malformed(
                    "no input given; pass --input FILE or --stdin".into(),
                ))
            }
            None => json!({}),
        };
        let input: InputDoc = serde_json::from_value(raw_input.clone())
            .map_err(|e| CliError::Malformed(format!("input document: {e}")))?;
        let env_mode = match env_scalar {
            Some(text) => Some(ScalarMode::parse(text).ok_or_else(|| {
                CliError::Malformed(format!("VANDERKIT_SCALAR={text:?} is not rational or float"))
            })?),
            None => None,
        };
        let scalar = scalar_flag
            .or(input.scalar)
            .or(env_mode)
            .unwrap_or(ScalarMode::Rational);
        if let Some(t) = tol {
            if t.is_nan() || t < 0.0 {
                return Err(CliError::Malformed(format!("--tol must be non-negative, got {t}")));
            }
        }
        if sizes.contains(&0) {
            return Err(CliError::Malformed("--sizes entries must be positive".into()));
        }
        Ok(Self {
            command,
            scalar,
            output,
            raw_input,
            input,
            tol,
            terms: terms.unwrap_or(DEFAULT_TERMS),
            sizes: if sizes.is_empty() { DEFAULT_SIZES.to_vec() } else { sizes },
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Input could not be understood (exit 2).
    Malformed(String),
    /// The library rejected well-formed input (exit 1).
    Library(vanderkit_core::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Malformed(_) => "malformed_input",
            CliError::Library(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Library(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"code": self.code(), "message": self.to_string()}})
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed(m) => f.write_str(m),
            CliError::Library(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vanderkit_core::Error> for CliError {
    fn from(e: vanderkit_core::Error) -> Self {
        CliError::Library(e)
    }
}

/// A finished job: report, whether it succeeded, and diagnostics for stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    pub success: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

pub fn run(job: &JobSpec) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let mut outcome = match job.scalar {
        ScalarMode::Rational => Runner::<Rational>::new(job).dispatch()?,
        ScalarMode::Float => Runner::<f64>::new(job).dispatch()?,
    };
    let mut head = Map::new();
    head.insert("command".into(), json!(job.command.name()));
    head.insert("scalar".into(), json!(job.scalar.name()));
    head.insert("input".into(), job.raw_input.clone());
    if let Value::Object(body) = std::mem::take(&mut outcome.report) {
        head.extend(body);
    }
    head.insert(
        "timing".into(),
        json!({"elapsed_us": start.elapsed().as_micros() as u64}),
    );
    outcome.report = Value::Object(head);
    Ok(outcome)
}

struct Runner<'a, S> {
    job: &'a JobSpec,
    warnings: Vec<String>,
    _scalar: std::marker::PhantomData<S>,
}

impl<'a, S: WireScalar + Send + Sync> Runner<'a, S> {
    fn new(job: &'a JobSpec) -> Self {
        Self {
            job,
            warnings: Vec::new(),
            _scalar: std::marker::PhantomData,
        }
    }

    fn dispatch(mut self) -> Result<Outcome, CliError> {
        let (report, success) = match self.job.command {
            Command::Build => (self.build()?, true),
            Command::Det => (self.det()?, true),
            Command::Factor => (self.factor()?, true),
            Command::Invert => (self.invert()?, true),
            Command::Matfunc => (self.matfunc()?, true),
            Command::Verify => self.verify()?,
            Command::Bench => self.bench()?,
        };
        Ok(Outcome {
            report,
            success,
            warnings: self.warnings,
        })
    }

    fn config(&self) -> InversionConfig {
        InversionConfig {
            residual_warn_tol: self.job.tol,
        }
    }

    fn spectrum_of(&self, nodes: &[NodeSpec]) -> Result<Spectrum<S>, CliError> {
        let parsed = parse_nodes::<S>(nodes).map_err(CliError::Malformed)?;
        let sep = self.job.input.separation_tol.unwrap_or(DEFAULT_SEPARATION_TOL);
        Ok(Spectrum::with_separation(parsed, sep)?)
    }

    fn spectrum(&self) -> Result<Spectrum<S>, CliError> {
        let nodes = self
            .job
            .input
            .nodes
            .as_deref()
            .ok_or_else(|| CliError::Malformed("input needs a \"nodes\" list".into()))?;
        self.spectrum_of(nodes)
    }

    fn build(&self) -> Result<Value, CliError> {
        let v = build_confluent(&self.spectrum()?)?;
        let kind = match v.kind {
            VandermondeKind::Simple => "simple",
            VandermondeKind::Confluent => "confluent",
        };
        Ok(json!({"kind": kind, "matrix": matrix_json(&v.matrix)}))
    }

    fn det(&self) -> Result<Value, CliError> {
        let det = det_product_formula(&self.spectrum()?)?;
        Ok(json!({"determinant": det.to_json()}))
    }

    fn factor(&self) -> Result<Value, CliError> {
        let s = self.spectrum()?;
        if s.is_simple() {
            let inv = invert_simple_with(&s, &self.config())?;
            Ok(json!({
                "method": "simple",
                "d": matrix_json(inv.d.matrix()),
                "w": matrix_json(inv.w.matrix()),
                "l": matrix_json(inv.l.matrix()),
                "u": matrix_json(factor_u(&s)?.matrix()),
                "inverse": matrix_json(&inv.inverse),
            }))
        } else {
            let inv = invert_confluent_with(&s, &self.config())?;
            Ok(json!({
                "method": method_name(inv.method),
                "column_order": inv.column_order,
                "uc": matrix_json(inv.uc.matrix()),
                "lc": matrix_json(inv.lc.matrix()),
                "inverse": matrix_json(&inv.inverse),
            }))
        }
    }

    fn invert(&mut self) -> Result<Value, CliError> {
        let s = self.spectrum()?;
        let (inverse, residual_norm, ill, method) = if s.is_simple() {
            let inv = invert_simple_with(&s, &self.config())?;
            (inv.inverse, inv.residual_norm, inv.ill_conditioned, "simple")
        } else {
            let inv = invert_confluent_with(&s, &self.config())?;
            (inv.inverse, inv.residual_norm, inv.ill_conditioned, method_name(inv.method))
        };
        if ill {
            self.warnings.push(format!(
                "warning: residual {} exceeds {:e}; the spectrum is ill-conditioned",
                residual_norm,
                self.config().warn_tol(s.size())
            ));
        }
        Ok(json!({
            "method": method,
            "inverse": matrix_json(&inverse),
            "residual_norm": residual_norm.to_json(),
            "ill_conditioned": ill,
        }))
    }

    fn matfunc(&self) -> Result<Value, CliError> {
        if S::MODE != ScalarMode::Float {
            return Err(CliError::Malformed(
                "matfunc needs --scalar float: exp and log values are not rational".into(),
            ));
        }
        let input = &self.job.input;
        let f = input
            .function
            .ok_or_else(|| CliError::Malformed("matfunc needs \"function\": exp or log".into()))?;
        let a = parse_matrix::<f64>(
            input
                .matrix
                .as_ref()
                .ok_or_else(|| CliError::Malformed("matfunc needs a \"matrix\"".into()))?,
        )
        .map_err(CliError::Malformed)?;
        let s = float_spectrum(&self.spectrum()?)?;
        let result = matrix_function(&a, &s, f.function())?;
        let coefficients = hermite_coefficients(&hermite_data_for(f.function(), &s)?)?;
        Ok(json!({
            "function": f.name(),
            "coefficients": coefficients.0,
            "result": matrix_json(&result),
        }))
    }

    fn verify_tol(&self, order: usize) -> f64 {
        self.job.tol.unwrap_or(if S::EXACT {
            0.0
        } else {
            DEFAULT_VERIFY_TOL_PER_ORDER * order as f64
        })
    }

    fn verify(&self) -> Result<(Value, bool), CliError> {
        let input = &self.job.input;
        let cases: Vec<VerifyCase> = match (&input.cases, &input.nodes) {
            (Some(cases), None) => cases.clone(),
            (None, Some(nodes)) => vec![VerifyCase {
                nodes: nodes.clone(),
                matrix: input.matrix.clone(),
                function: input.function,
            }],
            (Some(_), Some(_)) => {
                return Err(CliError::Malformed(
                    "give either \"cases\" or \"nodes\", not both".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Malformed("verify needs \"cases\" or \"nodes\"".into()))
            }
        };
        if cases.is_empty() {
            return Err(CliError::Malformed("verify needs at least one case".into()));
        }

        let mut rows = Vec::with_capacity(cases.len());
        let mut agreement = AgreementReport::new();
        let mut all_pass = true;
        let mut max_residual = 0.0f64;
        for case in &cases {
            let s = self.spectrum_of(&case.nodes)?;
            let n = s.size();
            let tol = self.verify_tol(n);
            let c = build_confluent(&s)?.matrix;
            let inverse = if s.is_simple() {
                invert_simple_with(&s, &self.config())?.inverse
            } else {
                invert_confluent_with(&s, &self.config())?.inverse
            };
            let res = residual(&c, &inverse)?.to_f64();
            // relative to the oracle's largest entry, so huge ill-conditioned
            // inverses are judged by their significant digits
            let oracle = gauss_jordan_invert(&c)?;
            let oracle_diff = inverse.max_abs_diff(&oracle)? / oracle.max_abs().to_f64().max(1.0);
            let mut row = json!({
                "nodes": spectrum_json(&s),
                "residual_norm": res,
                "oracle_relative_diff": oracle_diff,
            });
            let mut worst = res.max(oracle_diff);

            if s.repeated_count() == 1 {
                agreement.record(&repeated_first(&s)?, AGREEMENT_TOL)?;
            }
            if let Some(f) = case.function {
                let matrix = case.matrix.as_ref().ok_or_else(|| {
                    CliError::Malformed("a case with \"function\" needs a \"matrix\"".into())
                })?;
                if S::MODE != ScalarMode::Float {
                    return Err(CliError::Malformed(
                        "matrix-function cases need --scalar float".into(),
                    ));
                }
                let a = parse_matrix::<f64>(matrix).map_err(CliError::Malformed)?;
                let fs = float_spectrum(&s)?;
                let fa = matrix_function(&a, &fs, f.function())?;
                let err = match f {
                    FunctionName::Exp => fa.max_abs_diff(&series_exp(&a, self.job.terms)?)?,
                    FunctionName::Log => series_exp(&fa, self.job.terms)?.max_abs_diff(&a)?,
                };
                row["function"] = json!(f.name());
                row["function_error"] = json!(err);
                worst = worst.max(err);
            }
            let passed = worst <= tol;
            row["tolerance"] = json!(tol);
            row["passed"] = json!(passed);
            all_pass &= passed;
            max_residual = max_residual.max(worst);
            rows.push(row);
        }

        let mut report = json!({
            "cases": rows,
            "max_residual": max_residual,
            "passed": all_pass,
        });
        if agreement.cases > 0 {
            report["agreement"] = agreement_json(&agreement);
        }
        Ok((report, all_pass))
    }

    fn bench(&self) -> Result<(Value, bool), CliError> {
        let report = match S::MODE {
            ScalarMode::Float => run_bench(&self.job.sizes, chebyshev_nodes)?,
            ScalarMode::Rational => run_bench(&self.job.sizes, |n| {
                (0..n as i64).map(|k| Rational::from_i64(k - n as i64 / 2)).collect()
            })?,
        };
        let value = serde_json::to_value(&report)
            .map_err(|e| CliError::Malformed(format!("cannot serialize bench report: {e}")))?;
        Ok((value, true))
    }
}

fn method_name(m: ConfluentMethod) -> &'static str {
    match m {
        ConfluentMethod::Simple => "simple",
        ConfluentMethod::ClosedForm => "closed_form",
        ConfluentMethod::Elimination => "elimination",
    }
}

fn float_spectrum<S: Scalar>(s: &Spectrum<S>) -> Result<Spectrum<f64>, CliError> {
    Ok(s.map(|v| v.to_f64())?)
}

/// The same spectrum with its single repeated node moved to the front.
fn repeated_first<S: Scalar>(s: &Spectrum<S>) -> Result<Spectrum<S>, CliError> {
    let mut nodes: Vec<Node<S>> = s.nodes().to_vec();
    if let Some(k) = nodes.iter().position(|n| n.multiplicity > 1) {
        let node = nodes.remove(k);
        nodes.insert(0, node);
    }
    Ok(Spectrum::with_separation(nodes, 0.0)?)
}

pub fn agreement_json(report: &AgreementReport) -> Value {
    json!({
        "cases": report.cases,
        "complete": report.is_complete(),
        "regions": report.regions.iter().map(|r| json!({
            "region": r.region.name(),
            "entries": r.entries,
            "agreeing": r.agreeing,
            "agrees": r.agrees(),
            "first_disagreement": r.first_disagreement.as_ref().map(|d| json!({
                "case": d.case, "row": d.row, "col": d.col,
            })),
        })).collect::<Vec<_>>(),
    })
}
