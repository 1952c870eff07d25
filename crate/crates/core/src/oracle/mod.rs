//! Brute-force verification of solver reports.
//!
//! [`evaluate_objective`] and [`check_feasible`] evaluate the problem
//! displays literally with the matrix operations of `tropalg`;
//! [`PlainInstance`] does the same with hand-written loops. The grid search
//! in [`grid_optimize`] runs the loop version over small integers.

mod cycles;
mod grid;
mod plain;
pub mod random;
mod verify;

pub use cycles::{max_cycle_mean, MAX_CYCLE_DIM};
pub use grid::{default_grid, grid_optimize, GridSpec, OracleReport, ARGBEST_SAMPLE, MAX_GRID_POINTS};
pub use plain::{Dioid, Mpi, PlainInstance};
pub use verify::{check_samples, check_solution_set, sample_solution_set, Verification, VerifyOptions};

use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};
use crate::solvers::ProblemInstance;
use crate::tropalg::{TropMatrix, TropVector};

/// Failures raised by the oracle itself.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("no grid point is feasible")]
    EmptyFeasibleGrid,
    #[error("grid has {points} points, more than the limit {limit}")]
    GridTooLarge { points: u128, limit: u128 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("verification failed on check {check}: {detail}")]
    VerificationFailure { check: &'static str, detail: String },
    #[error(transparent)]
    Algebra(#[from] Error),
}

/// `v⁻` as a row, with the all-zero vector mapping to the all-zero row.
fn conj_or_zero<K: Semifield>(v: &TropVector<K>) -> Result<TropMatrix<K>> {
    if v.is_nonzero() {
        v.conj()
    } else {
        Ok(TropMatrix::zeros(1, v.dim()))
    }
}

/// `v⁻w` for column vectors.
fn pair<K: Semifield>(v: &TropVector<K>, w: &TropVector<K>) -> Result<Scalar<K>> {
    conj_or_zero(v)?.mul(&w.as_column())?.to_scalar()
}

fn quadratic<K: Semifield>(a: &TropMatrix<K>, x: &TropVector<K>) -> Result<Scalar<K>> {
    x.conj()?.mul(a)?.mul(&x.as_column())?.to_scalar()
}

fn check_x<K: Semifield>(inst: &ProblemInstance<K>, x: &TropVector<K>) -> Result<()> {
    inst.validate()?;
    if x.dim() != inst.dim() {
        return Err(Error::ShapeMismatch {
            op: "evaluate",
            lhs: (x.dim(), 1),
            rhs: (inst.dim(), 1),
        });
    }
    Ok(())
}

/// The objective of `inst` at the regular vector `x`.
pub fn evaluate_objective<K: Semifield>(inst: &ProblemInstance<K>, x: &TropVector<K>) -> Result<Scalar<K>> {
    check_x(inst, x)?;
    if !x.is_regular() {
        return Err(Error::not_regular("x is not regular"));
    }
    use ProblemInstance as P;
    match inst {
        P::Rayleigh { a }
        | P::RayleighFull { a, .. }
        | P::RayleighIneq { a, .. }
        | P::RayleighBox { a, .. } => quadratic(a, x),
        P::ChebyBox { p, q, .. } | P::ChebyIneqBox { p, q, .. } | P::ChebyIneq { p, q, .. } => {
            Ok(pair(q, x)? + pair(x, p)?)
        }
        P::ChebyLower { a, p, q, .. } => {
            let y = a.mul_vec(x)?;
            Ok(pair(q, &y)? + pair(&y, p)?)
        }
        P::SpanMin { a, b, p, q }
        | P::SpanMax { a, b, p, q }
        | P::SpanMaxIneq { a, b, p, q, .. }
        | P::SpanMaxEq { a, b, p, q, .. } => Ok(pair(q, &b.mul_vec(x)?)? * pair(&a.mul_vec(x)?, p)?),
        P::SpanMinConstrained { c, .. } => {
            let y = c.mul_vec(x)?;
            let ones = TropVector::ones(y.dim());
            Ok(ones.conj()?.mul(&y.as_column())?.to_scalar()? * pair(&y, &ones)?)
        }
        P::RayleighAffine { a, p, q, c } => Ok(quadratic(a, x)? + pair(x, p)? + pair(q, x)? + *c),
        P::RayleighPIneq { a, p, .. } => Ok(quadratic(a, x)? + pair(x, p)?),
    }
}

/// Whether `x` satisfies every constraint of `inst`.
pub fn check_feasible<K: Semifield>(inst: &ProblemInstance<K>, x: &TropVector<K>) -> Result<bool> {
    check_x(inst, x)?;
    use ProblemInstance as P;
    let sub_invariant = |m: &TropMatrix<K>, g: Option<&TropVector<K>>| -> Result<bool> {
        let mut lhs = m.mul_vec(x)?;
        if let Some(g) = g {
            lhs = lhs.add(g)?;
        }
        lhs.leq(x)
    };
    Ok(match inst {
        P::ChebyBox { g, h, .. } | P::RayleighBox { g, h, .. } => g.leq(x)? && x.leq(h)?,
        P::ChebyLower { g, .. } => g.leq(x)?,
        P::ChebyIneqBox { b, g, h, .. } => sub_invariant(b, Some(g))? && x.leq(h)?,
        P::ChebyIneq { b, .. } => sub_invariant(b, None)?,
        P::SpanMinConstrained { d, .. } => sub_invariant(d, None)?,
        P::SpanMaxIneq { c, .. } => sub_invariant(c, None)?,
        P::SpanMaxEq { c, .. } => c.mul_vec(x)?.approx_eq(x),
        P::RayleighFull { b, c, g, h, .. } => sub_invariant(b, Some(g))? && c.mul_vec(x)?.leq(h)?,
        P::RayleighIneq { b, g, .. } | P::RayleighPIneq { b, g, .. } => sub_invariant(b, Some(g))?,
        P::Rayleigh { .. } | P::SpanMin { .. } | P::SpanMax { .. } | P::RayleighAffine { .. } => true,
    })
}
