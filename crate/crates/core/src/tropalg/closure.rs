//! Kleene star, plus-closure, and the generators of `Bx ≤ x` and `Cx = x`.

use super::TropMatrix;
use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};

impl<K: Semifield> TropMatrix<K> {
    /// `A* = I ⊕ A ⊕ ⋯ ⊕ Aⁿ⁻¹`, defined when `Tr(A) ≤ 𝟙`.
    ///
    /// Computed as `(I ⊕ A)^(2^j)` with `2^j ≥ n − 1`; past exponent `n − 1`
    /// the extra powers are absorbed because every cycle weight is at most `𝟙`.
    pub fn kleene_star(&self) -> Result<Self> {
        let tr = self.tr_poly()?;
        if !tr.leq(&Scalar::one()) {
            return Err(Error::StarDiverges);
        }
        let n = self.rows();
        let mut acc = Self::identity(n).add(self)?;
        let mut reach = 1;
        while reach < n.saturating_sub(1) {
            acc = acc.mul(&acc)?;
            reach *= 2;
        }
        if n == 1 {
            acc = Self::identity(1);
        }
        Ok(acc)
    }

    /// `A⁺`: the columns of `A^× = A A*` carrying `𝟙` on the diagonal,
    /// defined when `Tr(A) = 𝟙`. Columns keep ascending index order.
    pub fn plus_closure(&self) -> Result<Self> {
        let tr = self.tr_poly()?;
        if !tr.approx_eq(&Scalar::one()) {
            return Err(Error::TraceNotOne);
        }
        let cross = self.mul(&self.kleene_star()?)?;
        let critical: Vec<usize> = (0..self.rows())
            .filter(|&j| cross.get(j, j).approx_eq(&Scalar::one()))
            .collect();
        assert!(!critical.is_empty(), "Tr(A) = 1 but no diagonal entry of AA* is 1");
        cross.select_columns(&critical)
    }
}

/// Generator `B*` of all regular solutions of `Bx ≤ x`: `x = B*u`, `u` regular.
pub fn solve_order_inequality<K: Semifield>(b: &TropMatrix<K>) -> Result<TropMatrix<K>> {
    b.kleene_star().map_err(|e| match e {
        Error::StarDiverges => Error::infeasible("Tr(B) > 1"),
        other => other,
    })
}

/// Generator `C⁺` of the solutions of `Cx = x`: `x = C⁺u`.
pub fn solve_fixpoint_equation<K: Semifield>(c: &TropMatrix<K>) -> Result<TropMatrix<K>> {
    c.plus_closure().map_err(|e| match e {
        Error::TraceNotOne => Error::infeasible("Tr(C) ≠ 1"),
        other => other,
    })
}
