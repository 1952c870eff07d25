use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use serde_json::{json, Value};
use tropopt::oracle::{
    check_samples, check_solution_set, default_grid, Verification, VerifyOptions, GridSpec,
};
use tropopt::semifield::{parse_rational, ExactAdditive, MaxPlus, MaxTimes, MinPlus, MinTimes, Semifield};
use tropopt::spectral::{eigenvectors, spectral_radius};
use tropopt::{Error, ProblemInstance, Rational, Scalar, SemifieldId, TropMatrix};

use crate::codec::{self, GridOptions, InstanceFile, Mode, ReportFile};
use crate::CliError;

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Solve an instance and print the report.
    Solve { file: PathBuf },
    /// Solve an instance and check the report against the brute-force oracle.
    Verify {
        file: PathBuf,
        /// Number of random solution-set elements to test.
        #[arg(long)]
        samples: Option<usize>,
        /// Grid step for the optimality check, e.g. `1/6`.
        #[arg(long, value_name = "a/b")]
        grid_step: Option<String>,
        /// Perturb the reported optimum before checking (test hook).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Run one matrix operation.
    Algebra { op: Algebra, file: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Star,
    Plus,
    Eigen,
    SpectralRadius,
}

/// Exit code and output of a finished command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `command`; `env_mode` is the value of `TROPOPT_MODE`, if set.
pub fn run(command: &Command, env_mode: Option<&str>) -> Outcome {
    match execute(command, env_mode) {
        Ok(v) => Outcome {
            code: 0,
            stdout: codec::to_text(&v),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: e.diagnostic().map(|d| codec::to_text(&d)).unwrap_or_default(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    codec::parse_json(&text)
}

/// Multiplicative semifields only have a floating-point carrier.
fn effective_mode(id: SemifieldId, file_mode: Mode, env_mode: Option<&str>) -> Result<Mode, CliError> {
    let mode = match env_mode {
        Some(s) => Mode::parse(s)?,
        None => file_mode,
    };
    Ok(if id.is_additive() { mode } else { Mode::Float })
}

macro_rules! dispatch {
    ($id:expr, $mode:expr, $f:ident($($arg:expr),*)) => {
        match ($id, $mode) {
            (SemifieldId::MaxPlus, Mode::Exact) => $f::<MaxPlus<Rational>>($($arg),*),
            (SemifieldId::MaxPlus, Mode::Float) => $f::<MaxPlus<f64>>($($arg),*),
            (SemifieldId::MinPlus, Mode::Exact) => $f::<MinPlus<Rational>>($($arg),*),
            (SemifieldId::MinPlus, Mode::Float) => $f::<MinPlus<f64>>($($arg),*),
            (SemifieldId::MaxTimes, _) => $f::<MaxTimes>($($arg),*),
            (SemifieldId::MinTimes, _) => $f::<MinTimes>($($arg),*),
        }
    };
}

fn execute(command: &Command, env_mode: Option<&str>) -> Result<Value, CliError> {
    match command {
        Command::Solve { file } => {
            let inst = codec::parse_instance_file(&read(file)?)?;
            let mode = effective_mode(inst.semifield, inst.mode, env_mode)?;
            dispatch!(inst.semifield, mode, solve_file(&inst, mode))
        }
        Command::Verify {
            file,
            samples,
            grid_step,
            inject_fault,
        } => {
            let inst = codec::parse_instance_file(&read(file)?)?;
            let mode = effective_mode(inst.semifield, inst.mode, env_mode)?;
            let request = VerifyRequest {
                samples: samples.or(inst.samples).unwrap_or(VerifyOptions::default().samples),
                step: grid_step.clone().or_else(|| inst.grid.step.clone()),
                grid: inst.grid.clone(),
                inject_fault: *inject_fault,
            };
            if request.samples == 0 {
                return Err(CliError::Input("--samples must be positive".into()));
            }
            dispatch!(inst.semifield, mode, verify_file(&inst, mode, &request))
        }
        Command::Algebra { op, file } => {
            let (id, file_mode, matrix) = codec::parse_matrix_file(&read(file)?)?;
            let mode = effective_mode(id, file_mode, env_mode)?;
            dispatch!(id, mode, algebra(*op, &matrix))
        }
    }
}

fn solve_report<K: Semifield>(file: &InstanceFile, mode: Mode) -> Result<(ProblemInstance<K>, ReportFile<K>), CliError> {
    let inst = codec::decode_instance::<K>(file)?;
    let report = tropopt::solve(&inst)?;
    Ok((
        inst,
        ReportFile {
            form: file.form,
            mode,
            report,
        },
    ))
}

fn solve_file<K: CarrierVerify>(file: &InstanceFile, mode: Mode) -> Result<Value, CliError> {
    let (_, report) = solve_report::<K>(file, mode)?;
    Ok(codec::report_to_json(&report))
}

/// Verification settings merged from the command line and the file.
struct VerifyRequest {
    samples: usize,
    step: Option<String>,
    grid: GridOptions,
    inject_fault: bool,
}

/// How a carrier is verified: exact carriers run the grid oracle, floating
/// ones only the sampling check.
trait CarrierVerify: Semifield {
    fn verify(inst: &ProblemInstance<Self>, report: &ReportFile<Self>, request: &VerifySettings) -> Result<Value, CliError>;
}

/// Verification settings after parsing.
struct VerifySettings {
    samples: usize,
    step: Option<Rational>,
    lower: Option<Value>,
    upper: Option<Value>,
}

fn bounds<K: ExactAdditive>(v: &Option<Value>, n: usize, fallback: &[Rational], what: &str) -> Result<Vec<Rational>, CliError> {
    let parse = |x: &Value, what: &str| -> Result<Rational, CliError> {
        match codec::scalar_from_json::<K>(x, what)? {
            Scalar::Finite(r) => Ok(r),
            Scalar::Bottom => Err(CliError::Input(format!("{what}: grid bounds must be finite"))),
        }
    };
    match v {
        None => Ok(fallback.to_vec()),
        Some(Value::Array(items)) => {
            if items.len() != n {
                return Err(CliError::Input(format!("{what}: expected {n} entries")));
            }
            items
                .iter()
                .enumerate()
                .map(|(i, x)| parse(x, &format!("{what}[{i}]")))
                .collect()
        }
        Some(x) => Ok(vec![parse(x, what)?; n]),
    }
}

fn record<K: Semifield>(report: &ReportFile<K>, verification: Value) -> Value {
    json!({
        "semifield": K::ID.as_str(),
        "problem": report.form.id(),
        "sense": report.report.sense.as_str(),
        "optimum": codec::scalar_to_json(report.report.value),
        "verification": verification,
    })
}

fn rational_text(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn verify_exact<K: ExactAdditive>(
    inst: &ProblemInstance<K>,
    report: &ReportFile<K>,
    request: &VerifySettings,
) -> Result<Value, CliError> {
    let default = default_grid(inst);
    let n = inst.dim();
    let grid = GridSpec::new(
        bounds::<K>(&request.lower, n, &default.lower, "options.grid.lower")?,
        bounds::<K>(&request.upper, n, &default.upper, "options.grid.upper")?,
        request.step.unwrap_or(default.step),
    )?;
    let options = VerifyOptions {
        samples: request.samples,
        grid: Some(grid.clone()),
        ..VerifyOptions::default()
    };
    let Verification {
        samples_checked,
        oracle,
        members_checked,
    } = check_solution_set(inst, &report.report, &options)?;
    let oracle = oracle.expect("the exact check always runs the grid");
    Ok(record(
        report,
        json!({
            "status": "pass",
            "samples_checked": samples_checked,
            "members_checked": members_checked,
            "grid": {
                "lower": grid.lower.iter().map(rational_text).collect::<Vec<_>>(),
                "upper": grid.upper.iter().map(rational_text).collect::<Vec<_>>(),
                "step": rational_text(&grid.step),
                "evaluated": oracle.evaluated_count,
                "feasible": oracle.feasible_count,
                "best": codec::scalar_to_json(oracle.best_value),
                "argbest_count": oracle.argbest_count,
            },
        }),
    ))
}

fn verify_float<K: Semifield>(
    inst: &ProblemInstance<K>,
    report: &ReportFile<K>,
    request: &VerifySettings,
) -> Result<Value, CliError> {
    let samples_checked = check_samples(inst, &report.report, request.samples, VerifyOptions::default().seed)?;
    Ok(record(
        report,
        json!({
            "status": "pass",
            "samples_checked": samples_checked,
            "members_checked": 0,
            "grid": Value::Null,
        }),
    ))
}

macro_rules! carrier {
    ($verify:ident: $($t:ty),*) => {
        $(impl CarrierVerify for $t {
            fn verify(inst: &ProblemInstance<Self>, report: &ReportFile<Self>, request: &VerifySettings) -> Result<Value, CliError> {
                $verify(inst, report, request)
            }
        })*
    };
}

carrier!(verify_exact: MaxPlus<Rational>, MinPlus<Rational>);
carrier!(verify_float: MaxPlus<f64>, MinPlus<f64>, MaxTimes, MinTimes);

fn verify_file<K: CarrierVerify>(file: &InstanceFile, mode: Mode, request: &VerifyRequest) -> Result<Value, CliError> {
    let step = match &request.step {
        Some(s) => {
            let r = parse_rational(s).map_err(|e| CliError::Input(format!("grid step: {e}")))?;
            if r <= Rational::from_integer(0) {
                return Err(CliError::Input("grid step must be positive".into()));
            }
            Some(r)
        }
        None => None,
    };
    let (inst, mut report) = solve_report::<K>(file, mode)?;
    if request.inject_fault {
        let v = report.report.value;
        report.report.value = if v.is_finite() { v * Scalar::unit_step() } else { Scalar::one() };
    }
    let settings = VerifySettings {
        samples: request.samples,
        step,
        lower: request.grid.lower.clone(),
        upper: request.grid.upper.clone(),
    };
    K::verify(&inst, &report, &settings)
}

fn algebra<K: Semifield>(op: Algebra, matrix: &Value) -> Result<Value, CliError> {
    let a: TropMatrix<K> = codec::matrix_from_json(matrix, "matrix")?;
    if !a.is_square() {
        return Err(CliError::Input(format!("matrix must be square, got {}x{}", a.rows(), a.cols())));
    }
    let renamed = |e: Error, name: &str| -> CliError {
        match e {
            Error::StarDiverges | Error::TraceNotOne => {
                let condition = e.condition().replace("Tr(A)", &format!("Tr({name})"));
                CliError::Precondition {
                    message: e.to_string().replace("Tr(A)", &format!("Tr({name})")),
                    condition,
                }
            }
            other => other.into(),
        }
    };
    let (name, body) = match op {
        Algebra::Star => ("star", json!({ "result": codec::matrix_to_json(&a.kleene_star().map_err(|e| renamed(e, "B"))?) })),
        Algebra::Plus => ("plus", json!({ "result": codec::matrix_to_json(&a.plus_closure().map_err(|e| renamed(e, "C"))?) })),
        Algebra::Eigen => {
            let spec = eigenvectors(&a)?;
            (
                "eigen",
                json!({
                    "lambda": codec::scalar_to_json(spec.lambda),
                    "generator": codec::matrix_to_json(&spec.eigen_generator),
                }),
            )
        }
        Algebra::SpectralRadius => (
            "spectral-radius",
            json!({ "lambda": codec::scalar_to_json(spectral_radius(&a)?) }),
        ),
    };
    let mut out = json!({ "semifield": K::ID.as_str(), "operation": name });
    for (k, v) in body.as_object().expect("object literal") {
        out[k] = v.clone();
    }
    Ok(out)
}
