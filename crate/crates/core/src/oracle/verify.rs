//! Sampling from solution sets and the combined verification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::{default_grid, grid_optimize, GridSpec, OracleReport};
use super::plain::PlainInstance;
use super::{check_feasible, evaluate_objective, OracleError};
use crate::error::Result;
use crate::semifield::{ExactAdditive, Scalar, Semifield};
use crate::solvers::{Form, OptimumReport, ProblemInstance, SolutionSet};
use crate::tropalg::{TropMatrix, TropVector};

/// Resolution of the random exponents used when drawing from an interval.
const DRAW_RESOLUTION: i64 = 24;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub samples: usize,
    /// Grid for the optimality check; the default grid when absent.
    pub grid: Option<GridSpec>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 50,
            grid: None,
            seed: 0x7A0_907,
        }
    }
}

/// What a successful verification looked at.
#[derive(Debug, Clone, PartialEq)]
pub struct Verification<K: ExactAdditive> {
    pub samples_checked: usize,
    pub oracle: Option<OracleReport<K>>,
    /// How many oracle optima were tested for membership in the reported set.
    pub members_checked: usize,
}

/// `x` drawn from `[lo, hi]` as `lo·(hi/lo)^t`, `t` a random fraction.
fn draw<K: Semifield>(rng: &mut impl Rng, lo: Scalar<K>, hi: Scalar<K>) -> Result<Scalar<K>> {
    let t = rng.gen_range(0..=DRAW_RESOLUTION);
    Ok(lo * hi.div(&lo)?.pow(t, DRAW_RESOLUTION as u64)?)
}

/// Width of the sampling window for unbounded directions: the ratio between
/// the extreme data constants, widened by one unit step.
fn spread<K: Semifield>(inst: &ProblemInstance<K>) -> Scalar<K> {
    let values: Vec<Scalar<K>> = inst.constants().into_iter().map(Scalar::Finite).collect();
    let top = values.iter().copied().fold(Scalar::Bottom, |a, b| a + b);
    let bottom = values
        .iter()
        .copied()
        .reduce(|a, b| if b.lt(&a) { b } else { a });
    let ratio = match (top, bottom) {
        (Scalar::Finite(_), Some(b)) => top.div(&b).unwrap_or(Scalar::one()),
        _ => Scalar::one(),
    };
    ratio + Scalar::unit_step()
}

fn draw_box<K: Semifield>(
    rng: &mut impl Rng,
    lower: &TropVector<K>,
    upper: Option<&TropVector<K>>,
    width: Scalar<K>,
) -> Result<TropVector<K>> {
    let inv = width.inverse()?;
    let mut out = Vec::with_capacity(lower.dim());
    for i in 0..lower.dim() {
        let l = lower.get(i);
        let (lo, hi) = match (l.is_finite(), upper.map(|u| u.get(i))) {
            (true, Some(h)) => (l, h),
            (true, None) => (l, l * width),
            (false, Some(h)) if h.is_finite() => (h * inv, h),
            _ => (inv, width),
        };
        out.push(draw(rng, lo, hi)?);
    }
    TropVector::new(out)
}

fn draw_set<K: Semifield>(rng: &mut impl Rng, set: &SolutionSet<K>, width: Scalar<K>) -> Result<TropVector<K>> {
    match set {
        SolutionSet::Singleton(x) => Ok(x.clone()),
        SolutionSet::Interval { lower, upper } => draw_box(rng, lower, Some(upper), width),
        SolutionSet::GeneratedInterval {
            generator,
            u_lower,
            u_upper,
        } => generator.mul_vec(&draw_box(rng, u_lower, Some(u_upper), width)?),
        SolutionSet::GeneratedCone { generator, u_lower } => {
            generator.mul_vec(&draw_box(rng, u_lower, None, width)?)
        }
        SolutionSet::PinnedScaledBox { k, pin, caps, .. } => {
            let inv = width.inverse()?;
            let alpha = draw(rng, inv, width)?;
            let mut x = Vec::with_capacity(caps.dim());
            for j in 0..caps.dim() {
                if j == *k {
                    x.push(alpha * *pin);
                } else {
                    x.push(alpha * caps.get(j) * draw(rng, inv, Scalar::one())?);
                }
            }
            TropVector::new(x)
        }
        SolutionSet::Substituted { outer, inner } => outer.mul_vec(&draw_set(rng, inner, width)?),
    }
}

/// Draws `count` random elements of `set`; unbounded directions are sampled
/// within a window sized by the instance data.
pub fn sample_solution_set<K: Semifield>(
    inst: &ProblemInstance<K>,
    set: &SolutionSet<K>,
    count: usize,
    seed: u64,
) -> Result<Vec<TropVector<K>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = spread(inst);
    (0..count).map(|_| draw_set(&mut rng, set, width)).collect()
}

fn failure(check: &'static str, detail: String) -> OracleError {
    OracleError::VerificationFailure { check, detail }
}

/// Check (a): sampled set elements are feasible and attain the reported value.
/// Works for every semifield. Returns the number of samples checked.
pub fn check_samples<K: Semifield>(
    inst: &ProblemInstance<K>,
    report: &OptimumReport<K>,
    samples: usize,
    seed: u64,
) -> Result<usize, OracleError> {
    let plain = PlainInstance::from_instance(inst, |s| s);
    let mut points = vec![report.witness.clone()];
    points.extend(sample_solution_set(inst, &report.set, samples, seed)?);
    for (i, x) in points.iter().enumerate() {
        let what = if i == 0 { "witness".to_string() } else { format!("sample {i}") };
        if !x.is_regular() {
            return Err(failure("samples", format!("{what} {x:?} is not regular")));
        }
        if !check_feasible(inst, x)? || !plain.feasible(x.entries()) {
            return Err(failure("samples", format!("{what} {x:?} is infeasible")));
        }
        let value = evaluate_objective(inst, x)?;
        let direct = plain.objective(x.entries());
        if !value.approx_eq(&direct) {
            return Err(failure(
                "samples",
                format!("evaluators disagree at {x:?}: {value} vs {direct}"),
            ));
        }
        if !value.approx_eq(&report.value) {
            return Err(failure(
                "samples",
                format!("{what} {x:?} has objective {value}, reported optimum is {}", report.value),
            ));
        }
    }
    Ok(samples)
}

/// Whether `form` comes with a complete description of its optimal set, so
/// that every optimizer must lie in the reported set.
fn complete(form: Form, set: &SolutionSet<impl Semifield>) -> bool {
    match set {
        SolutionSet::Interval { .. } | SolutionSet::GeneratedInterval { .. } => true,
        SolutionSet::GeneratedCone { .. } => matches!(
            form,
            Form::Rayleigh | Form::RayleighFull | Form::RayleighIneq | Form::RayleighPIneq
        ),
        _ => false,
    }
}

/// Membership in an interval or generated set: `ul ≤ x (≤ uu)` and, for
/// generated sets, `Gx = x`.
fn contains<K: Semifield>(set: &SolutionSet<K>, x: &TropVector<K>) -> Result<bool> {
    let fixed = |g: &TropMatrix<K>| -> Result<bool> { Ok(g.mul_vec(x)?.approx_eq(x)) };
    Ok(match set {
        SolutionSet::Interval { lower, upper } => lower.leq(x)? && x.leq(upper)?,
        SolutionSet::GeneratedInterval {
            generator,
            u_lower,
            u_upper,
        } => fixed(generator)? && u_lower.leq(x)? && x.leq(u_upper)?,
        SolutionSet::GeneratedCone { generator, u_lower } => fixed(generator)? && u_lower.leq(x)?,
        _ => true,
    })
}

/// Runs every check against `report`: the grid optimum must equal the
/// reported value, samples from the set must be feasible and optimal, and
/// grid optima must lie in the set when the set is complete.
pub fn check_solution_set<K: ExactAdditive>(
    inst: &ProblemInstance<K>,
    report: &OptimumReport<K>,
    options: &VerifyOptions,
) -> Result<Verification<K>, OracleError> {
    let grid = options.grid.clone().unwrap_or_else(|| default_grid(inst));
    let oracle = grid_optimize(inst, &grid)?;
    if oracle.best_value != report.value {
        return Err(failure(
            "optimum",
            format!(
                "grid optimum is {}, reported optimum is {}",
                oracle.best_value, report.value
            ),
        ));
    }
    let samples_checked = check_samples(inst, report, options.samples, options.seed)?;
    let mut members_checked = 0;
    if complete(inst.form(), &report.set) {
        for x in &oracle.argbest {
            if !contains(&report.set, x)? {
                return Err(failure("membership", format!("grid optimum {x:?} is outside the reported set")));
            }
            members_checked += 1;
        }
    }
    Ok(Verification {
        samples_checked,
        oracle: Some(oracle),
        members_checked,
    })
}
