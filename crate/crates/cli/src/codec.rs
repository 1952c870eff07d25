//! JSON encoding of scalars, matrices, instances and reports.
//!
//! `𝟘` is `null`; finite values are strings (`"3"`, `"-1/2"`, `"0.25"`) so
//! that rationals survive unchanged. Plain JSON numbers are accepted on input.

use serde_json::{json, Map, Value};
use tropopt::semifield::Semifield;
use tropopt::solvers::InstanceBuilder;
use tropopt::{Form, OptimumReport, ProblemInstance, Scalar, SemifieldId, Sense, SolutionSet, TropMatrix, TropVector};

use crate::CliError;

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn scalar_to_json<K: Semifield>(s: Scalar<K>) -> Value {
    match s {
        Scalar::Bottom => Value::Null,
        Scalar::Finite(v) => Value::String(K::render_value(&v)),
    }
}

pub fn vector_to_json<K: Semifield>(v: &TropVector<K>) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn matrix_to_json<K: Semifield>(m: &TropMatrix<K>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().copied().map(scalar_to_json).collect()))
            .collect(),
    )
}

pub fn scalar_from_json<K: Semifield>(v: &Value, what: &str) -> Result<Scalar<K>, CliError> {
    let text = match v {
        Value::Null => return Ok(Scalar::Bottom),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(schema(format!("{what}: expected a number, string or null, got {other}"))),
    };
    K::parse_value(&text)
        .and_then(Scalar::finite)
        .map_err(|e| schema(format!("{what}: {e}")))
}

pub fn vector_from_json<K: Semifield>(v: &Value, what: &str) -> Result<TropVector<K>, CliError> {
    let items = v
        .as_array()
        .ok_or_else(|| schema(format!("{what}: expected an array")))?;
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from_json(x, &format!("{what}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    TropVector::new(entries).map_err(|e| schema(format!("{what}: {e}")))
}

pub fn matrix_from_json<K: Semifield>(v: &Value, what: &str) -> Result<TropMatrix<K>, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| schema(format!("{what}: expected an array of rows")))?;
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| Ok(vector_from_json::<K>(r, &format!("{what}[{i}]"))?.entries().to_vec()))
        .collect::<Result<Vec<_>, CliError>>()?;
    TropMatrix::from_rows(rows).map_err(|e| schema(format!("{what}: {e}")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value, CliError> {
    obj.get(key).ok_or_else(|| schema(format!("{what}: missing field `{key}`")))
}

fn string_field(obj: &Map<String, Value>, key: &str, what: &str) -> Result<String, CliError> {
    field(obj, key, what)?
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| schema(format!("{what}: `{key}` must be a string")))
}

/// Arithmetic used for the additive semifields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode, CliError> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(schema(format!("unknown arithmetic mode `{other}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Grid override from the instance options; bounds are broadcast when given
/// as a single value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridOptions {
    pub lower: Option<Value>,
    pub upper: Option<Value>,
    pub step: Option<String>,
}

/// A parsed instance file whose `data` is still raw JSON; it is decoded
/// once the semifield and mode are known.
#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub semifield: SemifieldId,
    pub form: Form,
    pub data: Map<String, Value>,
    pub mode: Mode,
    pub samples: Option<usize>,
    pub grid: GridOptions,
}

pub fn parse_json(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| schema(format!("malformed JSON: {e}")))
}

fn top_level(v: &Value) -> Result<&Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| schema("expected a JSON object"))
}

fn semifield_of(obj: &Map<String, Value>) -> Result<SemifieldId, CliError> {
    string_field(obj, "semifield", "file")?
        .parse()
        .map_err(|e: tropopt::Error| schema(e.to_string()))
}

fn mode_of(obj: &Map<String, Value>) -> Result<Mode, CliError> {
    match obj.get("options").and_then(|o| o.get("mode")) {
        None => Ok(Mode::Exact),
        Some(Value::String(s)) => Mode::parse(s),
        Some(_) => Err(schema("options.mode must be a string")),
    }
}

pub fn parse_instance_file(v: &Value) -> Result<InstanceFile, CliError> {
    let obj = top_level(v)?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "semifield" | "problem" | "data" | "options") {
            return Err(schema(format!("unknown top-level field `{key}`")));
        }
    }
    let semifield = semifield_of(obj)?;
    let form: Form = string_field(obj, "problem", "file")?
        .parse()
        .map_err(|e: tropopt::Error| schema(e.to_string()))?;
    let data = field(obj, "data", "file")?
        .as_object()
        .ok_or_else(|| schema("`data` must be an object"))?
        .clone();
    let mode = mode_of(obj)?;
    let mut samples = None;
    let mut grid = GridOptions::default();
    if let Some(opts) = obj.get("options") {
        let opts = opts.as_object().ok_or_else(|| schema("`options` must be an object"))?;
        for (key, value) in opts {
            match key.as_str() {
                "mode" => {}
                "samples" => {
                    samples = Some(
                        value
                            .as_u64()
                            .filter(|&n| n > 0)
                            .ok_or_else(|| schema("options.samples must be a positive integer"))?
                            as usize,
                    )
                }
                "grid" => {
                    let g = value.as_object().ok_or_else(|| schema("options.grid must be an object"))?;
                    for (gk, gv) in g {
                        match gk.as_str() {
                            "lower" => grid.lower = Some(gv.clone()),
                            "upper" => grid.upper = Some(gv.clone()),
                            "step" => {
                                grid.step = Some(match gv {
                                    Value::String(s) => s.clone(),
                                    Value::Number(n) => n.to_string(),
                                    _ => return Err(schema("options.grid.step must be a number or string")),
                                })
                            }
                            other => return Err(schema(format!("unknown grid option `{other}`"))),
                        }
                    }
                }
                other => return Err(schema(format!("unknown option `{other}`"))),
            }
        }
    }
    Ok(InstanceFile {
        semifield,
        form,
        data,
        mode,
        samples,
        grid,
    })
}

/// Decodes the `data` block into an instance over `K`.
pub fn decode_instance<K: Semifield>(file: &InstanceFile) -> Result<ProblemInstance<K>, CliError> {
    let form = file.form;
    let mut builder = InstanceBuilder::<K> {
        matrices: Vec::new(),
        vectors: Vec::new(),
        scalars: Vec::new(),
    };
    for (name, value) in &file.data {
        let what = format!("data.{name}");
        if form.matrices().contains(&name.as_str()) {
            builder.matrices.push((name.clone(), matrix_from_json(value, &what)?));
        } else if form.vectors().contains(&name.as_str()) {
            builder.vectors.push((name.clone(), vector_from_json(value, &what)?));
        } else if form.scalars().contains(&name.as_str()) {
            builder.scalars.push((name.clone(), scalar_from_json(value, &what)?));
        } else {
            return Err(schema(format!("{what}: not a field of {}", form.id())));
        }
    }
    builder.build(form).map_err(|e| schema(e.to_string()))
}

/// A matrix file for the `algebra` commands: `{"semifield", "matrix"}`.
pub fn parse_matrix_file(v: &Value) -> Result<(SemifieldId, Mode, Value), CliError> {
    let obj = top_level(v)?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "semifield" | "matrix" | "options") {
            return Err(schema(format!("unknown top-level field `{key}`")));
        }
    }
    Ok((semifield_of(obj)?, mode_of(obj)?, field(obj, "matrix", "file")?.clone()))
}

pub fn set_to_json<K: Semifield>(set: &SolutionSet<K>) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(set.kind()));
    match set {
        SolutionSet::Singleton(x) => {
            obj.insert("point".into(), vector_to_json(x));
        }
        SolutionSet::Interval { lower, upper } => {
            obj.insert("lower".into(), vector_to_json(lower));
            obj.insert("upper".into(), vector_to_json(upper));
        }
        SolutionSet::GeneratedInterval {
            generator,
            u_lower,
            u_upper,
        } => {
            obj.insert("generator".into(), matrix_to_json(generator));
            obj.insert("u_lower".into(), vector_to_json(u_lower));
            obj.insert("u_upper".into(), vector_to_json(u_upper));
        }
        SolutionSet::GeneratedCone { generator, u_lower } => {
            obj.insert("generator".into(), matrix_to_json(generator));
            obj.insert("u_lower".into(), vector_to_json(u_lower));
        }
        SolutionSet::PinnedScaledBox { k, s, pin, caps } => {
            obj.insert("k".into(), json!(k));
            obj.insert("s".into(), json!(s));
            obj.insert("pin".into(), scalar_to_json(*pin));
            obj.insert("caps".into(), vector_to_json(caps));
        }
        SolutionSet::Substituted { outer, inner } => {
            obj.insert("outer".into(), matrix_to_json(outer));
            obj.insert("inner".into(), set_to_json(inner));
        }
    }
    Value::Object(obj)
}

pub fn set_from_json<K: Semifield>(v: &Value) -> Result<SolutionSet<K>, CliError> {
    let obj = v.as_object().ok_or_else(|| schema("solution_set must be an object"))?;
    let what = "solution_set";
    let vec = |key: &str| vector_from_json::<K>(field(obj, key, what)?, &format!("{what}.{key}"));
    let mat = |key: &str| matrix_from_json::<K>(field(obj, key, what)?, &format!("{what}.{key}"));
    let index = |key: &str| {
        field(obj, key, what)?
            .as_u64()
            .map(|i| i as usize)
            .ok_or_else(|| schema(format!("{what}.{key} must be an index")))
    };
    Ok(match string_field(obj, "kind", what)?.as_str() {
        "singleton" => SolutionSet::Singleton(vec("point")?),
        "interval" => SolutionSet::Interval {
            lower: vec("lower")?,
            upper: vec("upper")?,
        },
        "generated-interval" => SolutionSet::GeneratedInterval {
            generator: mat("generator")?,
            u_lower: vec("u_lower")?,
            u_upper: vec("u_upper")?,
        },
        "generated-cone" => SolutionSet::GeneratedCone {
            generator: mat("generator")?,
            u_lower: vec("u_lower")?,
        },
        "pinned-scaled-box" => SolutionSet::PinnedScaledBox {
            k: index("k")?,
            s: index("s")?,
            pin: scalar_from_json(field(obj, "pin", what)?, "solution_set.pin")?,
            caps: vec("caps")?,
        },
        "substituted" => SolutionSet::Substituted {
            outer: mat("outer")?,
            inner: Box::new(set_from_json(field(obj, "inner", what)?)?),
        },
        other => return Err(schema(format!("unknown solution set kind `{other}`"))),
    })
}

/// A report together with the metadata written next to it.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportFile<K: Semifield> {
    pub form: Form,
    pub mode: Mode,
    pub report: OptimumReport<K>,
}

pub fn report_to_json<K: Semifield>(r: &ReportFile<K>) -> Value {
    json!({
        "semifield": K::ID.as_str(),
        "problem": r.form.id(),
        "sense": r.report.sense.as_str(),
        "optimum": scalar_to_json(r.report.value),
        "solution_set": set_to_json(&r.report.set),
        "witness": vector_to_json(&r.report.witness),
        "diagnostics": {
            "mode": r.mode.as_str(),
            "checks": r.report.checks,
        },
    })
}

pub fn report_from_json<K: Semifield>(v: &Value) -> Result<ReportFile<K>, CliError> {
    let obj = top_level(v)?;
    let semifield = semifield_of(obj)?;
    if semifield != K::ID {
        return Err(schema(format!("report is for {semifield}, expected {}", K::ID)));
    }
    let form: Form = string_field(obj, "problem", "report")?
        .parse()
        .map_err(|e: tropopt::Error| schema(e.to_string()))?;
    let sense = match string_field(obj, "sense", "report")?.as_str() {
        "minimize" => Sense::Minimize,
        "maximize" => Sense::Maximize,
        other => return Err(schema(format!("unknown sense `{other}`"))),
    };
    let diagnostics = field(obj, "diagnostics", "report")?
        .as_object()
        .ok_or_else(|| schema("diagnostics must be an object"))?;
    let mode = Mode::parse(&string_field(diagnostics, "mode", "diagnostics")?)?;
    let checks = field(diagnostics, "checks", "diagnostics")?
        .as_array()
        .ok_or_else(|| schema("diagnostics.checks must be an array"))?
        .iter()
        .map(|c| c.as_str().map(str::to_string).ok_or_else(|| schema("checks must be strings")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ReportFile {
        form,
        mode,
        report: OptimumReport {
            value: scalar_from_json(field(obj, "optimum", "report")?, "optimum")?,
            sense,
            set: set_from_json(field(obj, "solution_set", "report")?)?,
            witness: vector_from_json(field(obj, "witness", "report")?, "witness")?,
            checks,
        },
    })
}

/// Pretty JSON with a trailing newline, the format of every file we write.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}
