//! Spectral radius and eigenvectors of square matrices.

use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};
use crate::tropalg::TropMatrix;

/// The spectral radius together with a generator of its eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport<K: Semifield> {
    pub lambda: Scalar<K>,
    /// Every `eigen_generator ⊗ u` with `u` regular is an eigenvector for `lambda`.
    pub eigen_generator: TropMatrix<K>,
}

/// `λ = ⊕_{m=1..n} tr^{1/m}(Aᵐ)`.
pub fn spectral_radius<K: Semifield>(a: &TropMatrix<K>) -> Result<Scalar<K>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut power = a.clone();
    let mut lambda = Scalar::Bottom;
    for m in 1..=a.rows() {
        if m > 1 {
            power = power.mul(a)?;
        }
        lambda = lambda + power.trace()?.pow(1, m as u64)?;
    }
    Ok(lambda)
}

/// Eigenvectors for the spectral radius: `x = (λ⁻¹A)⁺u`.
pub fn eigenvectors<K: Semifield>(a: &TropMatrix<K>) -> Result<SpectrumReport<K>> {
    let lambda = spectral_radius(a)?;
    if lambda.is_zero() {
        return Err(Error::ZeroSpectralRadius);
    }
    let normalized = a.scale(lambda.inverse()?);
    Ok(SpectrumReport {
        lambda,
        eigen_generator: normalized.plus_closure()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{MaxPlus, Rational};
    use crate::tropalg::TropVector;

    type M = TropMatrix<MaxPlus>;

    fn s(v: i128) -> Scalar<MaxPlus> {
        Scalar::Finite(Rational::from_integer(v))
    }

    #[test]
    fn radius_examples() {
        let single = M::from_rows(vec![vec![s(7)]]).unwrap();
        assert_eq!(spectral_radius(&single).unwrap(), s(7));
        let a = M::from_rows(vec![vec![s(1), s(3)], vec![s(0), s(2)]]).unwrap();
        assert_eq!(spectral_radius(&a).unwrap(), s(2));
        assert_eq!(spectral_radius(&M::zeros(3, 3)).unwrap(), Scalar::Bottom);
        assert!(spectral_radius(&M::zeros(2, 3)).is_err());
    }

    #[test]
    fn fractional_radius() {
        // single 3-cycle of weight 1
        let mut a = M::zeros(3, 3);
        a.set(0, 1, s(1));
        a.set(1, 2, s(0));
        a.set(2, 0, s(0));
        assert_eq!(spectral_radius(&a).unwrap(), Scalar::Finite(Rational::new(1, 3)));
    }

    #[test]
    fn eigenvector_examples() {
        let a = M::from_rows(vec![vec![s(1), s(3)], vec![s(0), s(2)]]).unwrap();
        let report = eigenvectors(&a).unwrap();
        assert_eq!(report.lambda, s(2));
        assert_eq!(report.eigen_generator, M::from_rows(vec![vec![s(1)], vec![s(0)]]).unwrap());
        let x = report.eigen_generator.column(0);
        assert_eq!(a.mul_vec(&x).unwrap(), TropVector::new(vec![s(3), s(2)]).unwrap());
        assert_eq!(a.mul_vec(&x).unwrap(), x.scale(s(2)));

        let single = M::from_rows(vec![vec![s(-4)]]).unwrap();
        assert_eq!(eigenvectors(&single).unwrap().eigen_generator, M::from_rows(vec![vec![s(0)]]).unwrap());
        assert_eq!(eigenvectors(&M::zeros(2, 2)), Err(Error::ZeroSpectralRadius));
    }

    #[test]
    fn nilpotent_matrix_has_no_radius() {
        let mut a = M::zeros(2, 2);
        a.set(0, 1, s(5));
        assert_eq!(spectral_radius(&a).unwrap(), Scalar::Bottom);
        assert_eq!(eigenvectors(&a), Err(Error::ZeroSpectralRadius));
    }
}
