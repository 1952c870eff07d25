//! Chebyshev-like approximation problems.

use super::{check_same_dim, conj_row, pick_u, sandwich, vdot, Checks, OptimumReport, Sense, SolutionSet};
use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};
use crate::tropalg::{solve_order_inequality, TropMatrix, TropVector};

/// minimize `q⁻x ⊕ x⁻p` subject to `g ≤ x ≤ h`.
pub fn cheby_box<K: Semifield>(
    p: &TropVector<K>,
    q: &TropVector<K>,
    g: &TropVector<K>,
    h: &TropVector<K>,
) -> Result<OptimumReport<K>> {
    let n = p.dim();
    check_same_dim(&[(q, n), (g, n), (h, n)], "cheby_box")?;
    let mut checks = Checks::new();
    checks.regular(p, "p")?;
    checks.regular(q, "q")?;
    checks.regular(h, "h")?;
    checks.require(g.leq(h)?, "g ≤ h", || Error::BoundsInverted)?;

    let delta = vdot(q, p)?.pow(1, 2)?;
    let mu = delta + vdot(q, g)? + vdot(h, p)?;
    let mu_inv = mu.inverse()?;
    let lower = p.scale(mu_inv).add(g)?;
    let upper = conj_row(&q.conj()?.scale(mu_inv).add(&h.conj()?)?)?;
    Ok(OptimumReport {
        value: mu,
        sense: Sense::Minimize,
        witness: lower.clone(),
        set: SolutionSet::Interval { lower, upper },
        checks: checks.into_vec(),
    })
}

/// minimize `q⁻Ax ⊕ (Ax)⁻p` subject to `x ≥ g`.
///
/// Only one minimizer is produced: `x = μ(q⁻A)⁻`.
pub fn cheby_lower<K: Semifield>(
    a: &TropMatrix<K>,
    p: &TropVector<K>,
    q: &TropVector<K>,
    g: &TropVector<K>,
) -> Result<OptimumReport<K>> {
    check_same_dim(&[(p, a.rows()), (q, a.rows()), (g, a.cols())], "cheby_lower")?;
    let mut checks = Checks::new();
    checks.require(a.classify_regularity().regular, "A regular", || {
        Error::not_regular("A is not regular")
    })?;
    checks.regular(p, "p")?;
    checks.regular(q, "q")?;

    let qa_conj = conj_row(&q.conj()?.mul(a)?)?;
    let delta = a.mul_vec(&qa_conj)?.conj()?.mul(&p.as_column())?.to_scalar()?.pow(1, 2)?;
    let mu = delta + sandwich(q, a, g)?;
    let x = qa_conj.scale(mu);
    Ok(OptimumReport {
        value: mu,
        sense: Sense::Minimize,
        witness: x.clone(),
        set: SolutionSet::Singleton(x),
        checks: checks.into_vec(),
    })
}

/// minimize `x⁻p ⊕ q⁻x` subject to `Bx ⊕ g ≤ x` and, when `h` is given, `x ≤ h`.
pub fn cheby_ineq<K: Semifield>(
    b: &TropMatrix<K>,
    p: &TropVector<K>,
    q: &TropVector<K>,
    g: &TropVector<K>,
    h: Option<&TropVector<K>>,
) -> Result<OptimumReport<K>> {
    let n = p.dim();
    check_same_dim(&[(q, n), (g, n)], "cheby_ineq")?;
    if let Some(h) = h {
        check_same_dim(&[(h, n)], "cheby_ineq")?;
    }
    let mut checks = Checks::new();
    checks.square(b, "B")?;
    let star = solve_order_inequality(b)?;
    checks.0.push("Tr(B) ≤ 1".into());
    checks.nonzero(p, "p")?;
    checks.regular(q, "q")?;
    if let Some(h) = h {
        checks.regular(h, "h")?;
        let gauge = sandwich(h, &star, g)?;
        checks.require(gauge.leq(&Scalar::one()), "h⁻B*g ≤ 1", || {
            Error::infeasible("h⁻B*g > 1")
        })?;
    }

    let mut theta = sandwich(q, &star, p)?.pow(1, 2)? + sandwich(q, &star, g)?;
    if let Some(h) = h {
        theta = theta + sandwich(h, &star, p)?;
    }
    let theta_inv = theta.inverse()?;
    let u_lower = g.add(&p.scale(theta_inv))?;
    let mut row = q.conj()?.scale(theta_inv);
    if let Some(h) = h {
        row = row.add(&h.conj()?)?;
    }
    let u_upper = conj_row(&row.mul(&star)?)?;
    let witness = star.mul_vec(&pick_u(&u_lower, Some(&u_upper)))?;
    Ok(OptimumReport {
        value: theta,
        sense: Sense::Minimize,
        witness,
        set: SolutionSet::GeneratedInterval {
            generator: star,
            u_lower,
            u_upper,
        },
        checks: checks.into_vec(),
    })
}
