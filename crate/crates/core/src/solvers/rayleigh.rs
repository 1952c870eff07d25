//! Problems whose optimum is a spectral radius or one of its extensions.

use super::{check_same_dim, conj_row, pick_u, sandwich, star_of, Checks, OptimumReport, Sense, SolutionSet};
use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};
use crate::spectral::spectral_radius;
use crate::tropalg::{TropMatrix, TropVector};

/// Largest order accepted by the solvers that enumerate compositions of `n`.
pub const MAX_COMPOSITION_DIM: usize = 12;

fn radius_gate<K: Semifield>(checks: &mut Checks, a: &TropMatrix<K>) -> Result<Scalar<K>> {
    checks.square(a, "A")?;
    let lambda = spectral_radius(a)?;
    checks.require(lambda.is_finite(), "λ > 0", || Error::ZeroSpectralRadius)?;
    Ok(lambda)
}

fn dimension_gate(n: usize) -> Result<()> {
    if n > MAX_COMPOSITION_DIM {
        return Err(Error::DimensionTooLarge {
            n,
            max: MAX_COMPOSITION_DIM,
        });
    }
    Ok(())
}

fn cone<K: Semifield>(generator: TropMatrix<K>, u_lower: TropVector<K>) -> Result<(SolutionSet<K>, TropVector<K>)> {
    let witness = generator.mul_vec(&pick_u(&u_lower, None))?;
    Ok((SolutionSet::GeneratedCone { generator, u_lower }, witness))
}

fn interval<K: Semifield>(
    generator: TropMatrix<K>,
    u_lower: TropVector<K>,
    u_upper: TropVector<K>,
) -> Result<(SolutionSet<K>, TropVector<K>)> {
    let witness = generator.mul_vec(&pick_u(&u_lower, Some(&u_upper)))?;
    Ok((
        SolutionSet::GeneratedInterval {
            generator,
            u_lower,
            u_upper,
        },
        witness,
    ))
}

fn report<K: Semifield>(value: Scalar<K>, parts: (SolutionSet<K>, TropVector<K>), checks: Checks) -> OptimumReport<K> {
    OptimumReport {
        value,
        sense: Sense::Minimize,
        set: parts.0,
        witness: parts.1,
        checks: checks.into_vec(),
    }
}

/// `(θ⁻¹A ⊕ B)*`
fn mixed_star<K: Semifield>(theta: Scalar<K>, a: &TropMatrix<K>, b: Option<&TropMatrix<K>>) -> Result<TropMatrix<K>> {
    let scaled = a.scale(theta.inverse()?);
    match b {
        Some(b) => scaled.add(b)?.kleene_star(),
        None => scaled.kleene_star(),
    }
}

/// Sum of `tr^{1/k}(B^{i₀} A B^{i₁} ⋯ A B^{i_k} T)` over `1 ≤ k ≤ k_max` and
/// compositions with `min_total ≤ i₀ + ⋯ + i_k ≤ n − k`; `i₀ = 0` unless
/// `leading_power` is set. Words are grown depth-first from shared prefixes.
struct Words<'a, K: Semifield> {
    a: &'a TropMatrix<K>,
    b_powers: Vec<TropMatrix<K>>,
    tail: Option<&'a TropMatrix<K>>,
    k_max: usize,
    min_total: usize,
    n: usize,
    acc: Scalar<K>,
}

impl<K: Semifield> Words<'_, K> {
    fn grow(&mut self, prefix: &TropMatrix<K>, k: usize, total: usize) -> Result<()> {
        let k = k + 1;
        if k > self.k_max || total + k > self.n {
            return Ok(());
        }
        let with_a = prefix.mul(self.a)?;
        for i in 0..=(self.n - k - total) {
            let word = with_a.mul(&self.b_powers[i])?;
            let total = total + i;
            if total >= self.min_total {
                let closed = match self.tail {
                    Some(t) => word.mul(t)?,
                    None => word.clone(),
                };
                self.acc = self.acc + closed.trace()?.pow(1, k as u64)?;
            }
            self.grow(&word, k, total)?;
        }
        Ok(())
    }
}

fn mixed_traces<K: Semifield>(
    a: &TropMatrix<K>,
    b: &TropMatrix<K>,
    tail: Option<&TropMatrix<K>>,
    leading_power: bool,
    k_max: usize,
    min_total: usize,
) -> Result<Scalar<K>> {
    let n = a.rows();
    let mut b_powers = vec![TropMatrix::identity(n)];
    for i in 1..=n {
        let next = b_powers[i - 1].mul(b)?;
        b_powers.push(next);
    }
    let mut words = Words {
        a,
        b_powers,
        tail,
        k_max,
        min_total,
        n,
        acc: Scalar::Bottom,
    };
    let leads = if leading_power { n } else { 1 };
    for i0 in 0..leads {
        let prefix = words.b_powers[i0].clone();
        words.grow(&prefix, 0, i0)?;
    }
    Ok(words.acc)
}

/// `λ ⊕ ⊕_{k=1..n−1} ⊕_{1≤i₁+⋯+i_k≤n−k} tr^{1/k}(AB^{i₁}⋯AB^{i_k})`
fn inequality_theta<K: Semifield>(a: &TropMatrix<K>, b: &TropMatrix<K>, lambda: Scalar<K>) -> Result<Scalar<K>> {
    let n = a.rows();
    Ok(lambda + mixed_traces(a, b, None, false, n.saturating_sub(1), 1)?)
}

/// minimize `x⁻Ax`.
pub fn rayleigh<K: Semifield>(a: &TropMatrix<K>) -> Result<OptimumReport<K>> {
    let mut checks = Checks::new();
    let lambda = radius_gate(&mut checks, a)?;
    let star = mixed_star(lambda, a, None)?;
    let n = a.rows();
    Ok(report(lambda, cone(star, TropVector::zeros(n))?, checks))
}

/// minimize `x⁻Ax ⊕ x⁻p ⊕ q⁻x ⊕ c`.
pub fn rayleigh_affine<K: Semifield>(
    a: &TropMatrix<K>,
    p: &TropVector<K>,
    q: &TropVector<K>,
    c: Scalar<K>,
) -> Result<OptimumReport<K>> {
    let mut checks = Checks::new();
    let lambda = radius_gate(&mut checks, a)?;
    let n = a.rows();
    check_same_dim(&[(p, n), (q, n)], "rayleigh_affine")?;
    checks.regular(q, "q")?;

    let mut mu = lambda + c;
    let mut power = TropMatrix::identity(n);
    for m in 1..=n {
        if m > 1 {
            power = power.mul(a)?;
        }
        mu = mu + sandwich(q, &power, p)?.pow(1, m as u64 + 1)?;
    }
    let mu_inv = mu.inverse()?;
    let star = mixed_star(mu, a, None)?;
    let u_lower = p.scale(mu_inv);
    let u_upper = conj_row(&q.conj()?.mul(&star)?)?.scale(mu);
    Ok(report(mu, interval(star, u_lower, u_upper)?, checks))
}

/// minimize `x⁻Ax` subject to `Bx ⊕ g ≤ x` and `Cx ≤ h`.
///
/// An all-zero `C` drops the second constraint; the set is then a cone.
pub fn rayleigh_full<K: Semifield>(
    a: &TropMatrix<K>,
    b: &TropMatrix<K>,
    c: &TropMatrix<K>,
    g: &TropVector<K>,
    h: &TropVector<K>,
) -> Result<OptimumReport<K>> {
    let mut checks = Checks::new();
    radius_gate(&mut checks, a)?;
    let n = a.rows();
    checks.square(b, "B")?;
    check_same_dim(&[(g, n), (h, c.rows())], "rayleigh_full")?;
    dimension_gate(n)?;
    let b_star = star_of(b, "B")?;
    checks.0.push("Tr(B) ≤ 1".into());

    if c.is_zero() {
        let theta = mixed_traces(a, b, None, true, n, 0)?;
        let star = mixed_star(theta, a, Some(b))?;
        return Ok(report(theta, cone(star, g.clone())?, checks));
    }

    checks.require(c.classify_regularity().column_regular, "C column-regular", || {
        Error::not_regular("C is not column-regular")
    })?;
    checks.regular(h, "h")?;
    let gauge = sandwich(h, &c.mul(&b_star)?, g)?;
    checks.require(gauge.leq(&Scalar::one()), "h⁻CB*g ≤ 1", || Error::infeasible("h⁻CB*g > 1"))?;

    let tail = TropMatrix::identity(n).add(&g.as_column().mul(&h.conj()?)?.mul(c)?)?;
    let theta = mixed_traces(a, b, Some(&tail), true, n, 0)?;
    let star = mixed_star(theta, a, Some(b))?;
    let u_upper = conj_row(&h.conj()?.mul(c)?.mul(&star)?)?;
    Ok(report(theta, interval(star, g.clone(), u_upper)?, checks))
}

/// minimize `x⁻Ax` subject to `Bx ⊕ g ≤ x`.
pub fn rayleigh_ineq<K: Semifield>(
    a: &TropMatrix<K>,
    b: &TropMatrix<K>,
    g: &TropVector<K>,
) -> Result<OptimumReport<K>> {
    let mut checks = Checks::new();
    let lambda = radius_gate(&mut checks, a)?;
    let n = a.rows();
    checks.square(b, "B")?;
    check_same_dim(&[(g, n)], "rayleigh_ineq")?;
    dimension_gate(n)?;
    star_of(b, "B")?;
    checks.0.push("Tr(B) ≤ 1".into());

    let theta = inequality_theta(a, b, lambda)?;
    let star = mixed_star(theta, a, Some(b))?;
    Ok(report(theta, cone(star, g.clone())?, checks))
}

/// minimize `x⁻Ax` subject to `g ≤ x ≤ h`.
pub fn rayleigh_box<K: Semifield>(
    a: &TropMatrix<K>,
    g: &TropVector<K>,
    h: &TropVector<K>,
) -> Result<OptimumReport<K>> {
    let mut checks = Checks::new();
    let lambda = radius_gate(&mut checks, a)?;
    let n = a.rows();
    check_same_dim(&[(g, n), (h, n)], "rayleigh_box")?;
    checks.regular(h, "h")?;
    checks.require(super::vdot(h, g)?.leq(&Scalar::one()), "h⁻g ≤ 1", || {
        Error::infeasible("h⁻g > 1")
    })?;

    let mut theta = lambda;
    let mut power = TropMatrix::identity(n);
    for k in 1..=n {
        power = power.mul(a)?;
        theta = theta + sandwich(h, &power, g)?.pow(1, k as u64)?;
    }
    let star = mixed_star(theta, a, None)?;
    let u_upper = conj_row(&h.conj()?.mul(&star)?)?;
    Ok(report(theta, interval(star, g.clone(), u_upper)?, checks))
}

/// minimize `x⁻Ax ⊕ x⁻p` subject to `Bx ⊕ g ≤ x`.
pub fn rayleigh_p_ineq<K: Semifield>(
    a: &TropMatrix<K>,
    b: &TropMatrix<K>,
    p: &TropVector<K>,
    g: &TropVector<K>,
) -> Result<OptimumReport<K>> {
    let mut checks = Checks::new();
    let lambda = radius_gate(&mut checks, a)?;
    let n = a.rows();
    checks.square(b, "B")?;
    check_same_dim(&[(p, n), (g, n)], "rayleigh_p_ineq")?;
    dimension_gate(n)?;
    star_of(b, "B")?;
    checks.0.push("Tr(B) ≤ 1".into());

    let theta = inequality_theta(a, b, lambda)?;
    let star = mixed_star(theta, a, Some(b))?;
    let u_lower = p.scale(theta.inverse()?).add(g)?;
    Ok(report(theta, cone(star, u_lower)?, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{MaxPlus, Rational};

    type M = TropMatrix<MaxPlus>;
    type V = TropVector<MaxPlus>;

    fn s(v: i128) -> Scalar<MaxPlus> {
        Scalar::Finite(Rational::from_integer(v))
    }

    fn m(rows: &[&[Option<i128>]]) -> M {
        M::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|v| v.map_or(Scalar::Bottom, s)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn v(xs: &[i128]) -> V {
        V::new(xs.iter().map(|&x| s(x)).collect()).unwrap()
    }

    fn upper_triangular() -> M {
        m(&[&[Some(1), Some(3)], &[Some(0), Some(2)]])
    }

    #[test]
    fn rayleigh_examples() {
        let r = rayleigh(&m(&[&[Some(5)]])).unwrap();
        assert_eq!(r.value, s(5));
        let r = rayleigh(&upper_triangular()).unwrap();
        assert_eq!(r.value, s(2));
        assert_eq!(
            r.set,
            SolutionSet::GeneratedCone {
                generator: m(&[&[Some(0), Some(1)], &[Some(-2), Some(0)]]),
                u_lower: V::zeros(2)
            }
        );
        assert_eq!(rayleigh(&M::zeros(2, 2)), Err(Error::ZeroSpectralRadius));
    }

    #[test]
    fn affine_examples() {
        let r = rayleigh_affine(&m(&[&[Some(0)]]), &v(&[4]), &v(&[0]), s(1)).unwrap();
        assert_eq!(r.value, s(2));
        assert_eq!(
            r.set,
            SolutionSet::GeneratedInterval {
                generator: M::identity(1),
                u_lower: v(&[2]),
                u_upper: v(&[2])
            }
        );
        let r = rayleigh_affine(&upper_triangular(), &v(&[0, 0]), &v(&[0, 0]), s(9)).unwrap();
        assert_eq!(r.value, s(9));
    }

    #[test]
    fn full_examples() {
        let r = rayleigh_full(&m(&[&[Some(1)]]), &M::zeros(1, 1), &m(&[&[Some(0)]]), &v(&[0]), &v(&[5])).unwrap();
        assert_eq!(r.value, s(1));
        assert_eq!(
            r.set,
            SolutionSet::GeneratedInterval {
                generator: M::identity(1),
                u_lower: v(&[0]),
                u_upper: v(&[5])
            }
        );
    }

    #[test]
    fn box_examples() {
        let a = upper_triangular();
        assert_eq!(rayleigh_box(&a, &v(&[0, 0]), &v(&[10, 10])).unwrap().value, s(2));
        assert_eq!(rayleigh_box(&a, &v(&[0, 0]), &v(&[0, 0])).unwrap().value, s(3));
        assert_eq!(
            rayleigh_box(&a, &v(&[1, 1]), &v(&[0, 0])),
            Err(Error::infeasible("h⁻g > 1"))
        );
    }

    #[test]
    fn inequality_examples() {
        let a = upper_triangular();
        let g = v(&[0, -1]);
        let r = rayleigh_ineq(&a, &M::zeros(2, 2), &g).unwrap();
        assert_eq!(r.value, s(2));
        assert_eq!(
            rayleigh_ineq(&a, &m(&[&[Some(1), None], &[None, None]]), &g),
            Err(Error::infeasible("Tr(B) > 1"))
        );
        let r = rayleigh_p_ineq(&m(&[&[Some(1)]]), &M::zeros(1, 1), &v(&[0]), &V::zeros(1)).unwrap();
        assert_eq!(r.value, s(1));
        assert_eq!(
            r.set,
            SolutionSet::GeneratedCone {
                generator: M::identity(1),
                u_lower: v(&[-1])
            }
        );
    }

    #[test]
    fn full_specializes() {
        let a = m(&[&[Some(-1), Some(2), None], &[Some(0), None, Some(1)], &[Some(-3), Some(1), Some(0)]]);
        let b = m(&[&[None, Some(-1), None], &[Some(-2), None, Some(0)], &[None, Some(-1), Some(-2)]]);
        let g = v(&[0, -2, 1]);
        let ineq = rayleigh_ineq(&a, &b, &g).unwrap();
        let full = rayleigh_full(&a, &b, &M::zeros(2, 3), &g, &v(&[0, 0])).unwrap();
        assert_eq!(ineq.value, full.value);
        assert_eq!(ineq.set, full.set);

        let h = v(&[3, 4, 2]);
        let boxed = rayleigh_box(&a, &g, &h).unwrap();
        let full = rayleigh_full(&a, &M::zeros(3, 3), &M::identity(3), &g, &h).unwrap();
        assert_eq!(boxed.value, full.value);
        assert_eq!(boxed.set, full.set);
    }

    #[test]
    fn refuses_large_dimensions() {
        let n = MAX_COMPOSITION_DIM + 1;
        let a = M::identity(n);
        assert_eq!(
            rayleigh_ineq(&a, &M::zeros(n, n), &V::zeros(n)),
            Err(Error::DimensionTooLarge { n, max: MAX_COMPOSITION_DIM })
        );
    }
}
