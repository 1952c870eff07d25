//! WebAssembly bindings for the demo page in `www/`.
//!
//! Each function takes and returns JSON text in the command-line formats,
//! so the page can show exactly what `tropopt` would print. Failures come
//! back as `{"error": ..., "condition": ...}` instead of exceptions.

use serde_json::{json, Value};
use tropopt::semifield::MaxPlus;
use tropopt::spectral::eigenvectors;
use tropopt::TropMatrix;
use tropopt_cli::codec::{self, Mode, ReportFile};
use tropopt_cli::CliError;
use wasm_bindgen::prelude::*;

fn render(result: Result<Value, CliError>) -> String {
    let v = match result {
        Ok(v) => v,
        Err(CliError::Precondition { condition, message }) => json!({ "error": message, "condition": condition }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    codec::to_text(&v)
}

fn max_plus_matrix(text: &str) -> Result<TropMatrix<MaxPlus>, CliError> {
    let m = codec::matrix_from_json(&codec::parse_json(text)?, "matrix")?;
    if m.is_square() {
        Ok(m)
    } else {
        Err(CliError::Input("the matrix must be square".into()))
    }
}

/// Kleene star `A*` of a square max-plus matrix.
#[wasm_bindgen]
pub fn kleene_star(matrix: &str) -> String {
    render((|| {
        let a = max_plus_matrix(matrix)?;
        let star = a.kleene_star().map_err(|e| CliError::Precondition {
            condition: e.condition(),
            message: e.to_string(),
        })?;
        Ok(json!({ "star": codec::matrix_to_json(&star) }))
    })())
}

/// Spectral radius and eigenvector generator of a square max-plus matrix.
#[wasm_bindgen]
pub fn eigen(matrix: &str) -> String {
    render((|| {
        let spec = eigenvectors(&max_plus_matrix(matrix)?)?;
        Ok(json!({
            "lambda": codec::scalar_to_json(spec.lambda),
            "generator": codec::matrix_to_json(&spec.eigen_generator),
        }))
    })())
}

/// Solves an instance file (any form, max-plus or min-plus, exact arithmetic).
#[wasm_bindgen]
pub fn solve(instance: &str) -> String {
    render((|| {
        let file = codec::parse_instance_file(&codec::parse_json(instance)?)?;
        macro_rules! go {
            ($k:ty) => {{
                let inst = codec::decode_instance::<$k>(&file)?;
                let report = tropopt::solve(&inst)?;
                Ok(codec::report_to_json(&ReportFile {
                    form: file.form,
                    mode: Mode::Exact,
                    report,
                }))
            }};
        }
        match file.semifield {
            tropopt::SemifieldId::MaxPlus => go!(MaxPlus),
            tropopt::SemifieldId::MinPlus => go!(tropopt::semifield::MinPlus),
            other => Err(CliError::Input(format!("the demo only runs the additive semifields, not {other}"))),
        }
    })())
}
