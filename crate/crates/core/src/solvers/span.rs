//! Problems whose objective is built from the span seminorm.

use super::{check_same_dim, conj_row, star_of, Checks, OptimumReport, Sense, SolutionSet};
use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};
use crate::tropalg::{TropMatrix, TropVector};

/// Which linear constraint restricts [`span_max_constrained`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    /// `Cx ≤ x`
    Inequality,
    /// `Cx = x`
    Equality,
}

fn row_regular<K: Semifield>(checks: &mut Checks, m: &TropMatrix<K>, name: &str) -> Result<()> {
    checks.require(m.classify_regularity().row_regular, &format!("{name} row-regular"), || {
        Error::not_regular(format!("{name} is not row-regular"))
    })
}

fn column_regular<K: Semifield>(checks: &mut Checks, m: &TropMatrix<K>, name: &str) -> Result<()> {
    checks.require(
        m.classify_regularity().column_regular,
        &format!("{name} column-regular"),
        || Error::not_regular(format!("{name} is not column-regular")),
    )
}

fn ray<K: Semifield>(generator: TropVector<K>) -> SolutionSet<K> {
    SolutionSet::GeneratedCone {
        generator: generator.as_column(),
        u_lower: TropVector::zeros(1),
    }
}

/// minimize `q⁻Bx (Ax)⁻p`; attained on the ray `x = α(q⁻B)⁻`.
pub fn span_min<K: Semifield>(
    a: &TropMatrix<K>,
    b: &TropMatrix<K>,
    p: &TropVector<K>,
    q: &TropVector<K>,
) -> Result<OptimumReport<K>> {
    check_same_dim(&[(p, a.rows()), (q, b.rows())], "span_min")?;
    if a.cols() != b.cols() {
        return Err(Error::ShapeMismatch {
            op: "span_min",
            lhs: a.shape(),
            rhs: b.shape(),
        });
    }
    let mut checks = Checks::new();
    row_regular(&mut checks, a, "A")?;
    column_regular(&mut checks, b, "B")?;
    checks.nonzero(p, "p")?;
    checks.regular(q, "q")?;

    let x = conj_row(&q.conj()?.mul(b)?)?;
    let delta = a.mul_vec(&x)?.conj()?.mul(&p.as_column())?.to_scalar()?;
    Ok(OptimumReport {
        value: delta,
        sense: Sense::Minimize,
        witness: x.clone(),
        set: ray(x),
        checks: checks.into_vec(),
    })
}

/// minimize the span `𝟙ᵀy y⁻𝟙` of `y = Cx` subject to `Dx ≤ x`.
pub fn span_min_constrained<K: Semifield>(
    c: &TropMatrix<K>,
    d: &TropMatrix<K>,
) -> Result<OptimumReport<K>> {
    let mut checks = Checks::new();
    checks.square(d, "D")?;
    if c.cols() != d.rows() {
        return Err(Error::ShapeMismatch {
            op: "span_min_constrained",
            lhs: c.shape(),
            rhs: d.shape(),
        });
    }
    let star = star_of(d, "D")?;
    checks.0.push("Tr(D) ≤ 1".into());
    checks.require(c.classify_regularity().regular, "C regular", || {
        Error::not_regular("C is not regular")
    })?;

    let cd = c.mul(&star)?;
    let r = conj_row(&TropVector::ones(c.rows()).conj()?.mul(&cd)?)?;
    let delta = cd.mul_vec(&r)?.conj()?.mul(&TropVector::ones(c.rows()).as_column())?.to_scalar()?;
    let x = star.mul_vec(&r)?;
    Ok(OptimumReport {
        value: delta,
        sense: Sense::Minimize,
        witness: x.clone(),
        set: ray(x),
        checks: checks.into_vec(),
    })
}

/// maximize `q⁻Bx (Ax)⁻p`.
pub fn span_max<K: Semifield>(
    a: &TropMatrix<K>,
    b: &TropMatrix<K>,
    p: &TropVector<K>,
    q: &TropVector<K>,
) -> Result<OptimumReport<K>> {
    span_max_named(a, b, p, q, "A", "B")
}

fn first_argmax<K: Semifield>(values: impl Iterator<Item = Scalar<K>>) -> (usize, Scalar<K>) {
    let mut best = (0, Scalar::Bottom);
    for (i, v) in values.enumerate() {
        if i == 0 || best.1.lt(&v) {
            best = (i, v);
        }
    }
    best
}

fn span_max_named<K: Semifield>(
    a: &TropMatrix<K>,
    b: &TropMatrix<K>,
    p: &TropVector<K>,
    q: &TropVector<K>,
    a_name: &str,
    b_name: &str,
) -> Result<OptimumReport<K>> {
    check_same_dim(&[(p, a.rows()), (q, b.rows())], "span_max")?;
    if a.cols() != b.cols() {
        return Err(Error::ShapeMismatch {
            op: "span_max",
            lhs: a.shape(),
            rhs: b.shape(),
        });
    }
    let mut checks = Checks::new();
    checks.require(
        a.entries().iter().all(Scalar::is_finite),
        &format!("{a_name} has regular columns"),
        || Error::not_regular(format!("{a_name} has a column that is not regular")),
    )?;
    column_regular(&mut checks, b, b_name)?;
    checks.regular(p, "p")?;
    checks.regular(q, "q")?;

    let n = a.cols();
    let q_conj = q.conj()?;
    // a_i⁻p for every column i
    let reach: Vec<Scalar<K>> = (0..n)
        .map(|i| a.column(i).conj()?.mul(&p.as_column())?.to_scalar())
        .collect::<Result<_>>()?;
    let gains = (0..n)
        .map(|i| Ok(q_conj.mul(&b.column(i).as_column())?.to_scalar()? * reach[i]))
        .collect::<Result<Vec<Scalar<K>>>>()?;
    let (k, delta) = first_argmax(gains.into_iter());
    let (s, _) = first_argmax((0..a.rows()).map(|i| a.get(i, k).inverse().map(|x| x * p.get(i)).unwrap_or(Scalar::Bottom)));
    let pin = reach[k];
    let ps = p.get(s);
    let caps = TropVector::from_fn(n, |j| if j == k { pin } else { a.get(s, j).inverse().map(|x| x * ps).unwrap_or(Scalar::Bottom) });
    Ok(OptimumReport {
        value: delta,
        sense: Sense::Maximize,
        witness: caps.clone(),
        set: SolutionSet::PinnedScaledBox { k, s, pin, caps },
        checks: checks.into_vec(),
    })
}

/// maximize `q⁻Bx (Ax)⁻p` subject to `Cx ≤ x` or `Cx = x`, by substituting
/// the general solution `x = Gu` of the constraint.
pub fn span_max_constrained<K: Semifield>(
    a: &TropMatrix<K>,
    b: &TropMatrix<K>,
    c: &TropMatrix<K>,
    p: &TropVector<K>,
    q: &TropVector<K>,
    kind: ConstraintKind,
) -> Result<OptimumReport<K>> {
    let mut checks = Checks::new();
    checks.square(c, "C")?;
    let (outer, a_name, b_name) = match kind {
        ConstraintKind::Inequality => {
            let g = star_of(c, "C")?;
            checks.0.push("Tr(C) ≤ 1".into());
            (g, "AC*", "BC*")
        }
        ConstraintKind::Equality => {
            let g = c.plus_closure().map_err(|e| match e {
                Error::TraceNotOne => Error::infeasible("Tr(C) ≠ 1"),
                other => other,
            })?;
            checks.0.push("Tr(C) = 1".into());
            checks.require(
                g.classify_regularity().row_regular,
                "C⁺ row-regular",
                || Error::infeasible("Cx = x has no regular solution"),
            )?;
            (g, "AC⁺", "BC⁺")
        }
    };
    let inner = span_max_named(&a.mul(&outer)?, &b.mul(&outer)?, p, q, a_name, b_name)?;
    checks.0.extend(inner.checks);
    Ok(OptimumReport {
        value: inner.value,
        sense: Sense::Maximize,
        witness: outer.mul_vec(&inner.witness)?,
        set: SolutionSet::Substituted {
            outer,
            inner: Box::new(inner.set),
        },
        checks: checks.into_vec(),
    })
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

    #[test]
    fn span_min_examples() {
        let one = m(&[&[Some(0)]]);
        let r = span_min(&one, &one, &v(&[1]), &v(&[0])).unwrap();
        assert_eq!(r.value, s(1));

        let id = M::identity(3);
        let r = span_min(&id, &id, &V::ones(3), &V::ones(3)).unwrap();
        assert_eq!(r.value, Scalar::one());
        assert_eq!(r.witness, V::ones(3));

        let diag = m(&[&[Some(0), None], &[None, Some(-3)]]);
        let r = span_min(&diag, &diag, &V::ones(2), &V::ones(2)).unwrap();
        assert_eq!(r.value, s(0));
        assert_eq!(r.witness, v(&[0, 3]));
    }

    #[test]
    fn span_min_constrained_examples() {
        let r = span_min_constrained(&m(&[&[Some(0)]]), &M::zeros(1, 1)).unwrap();
        assert_eq!(r.value, Scalar::one());
        assert_eq!(
            span_min_constrained(&m(&[&[Some(0)]]), &m(&[&[Some(1)]])),
            Err(Error::infeasible("Tr(D) > 1"))
        );
        let c = m(&[&[Some(1), Some(-2)], &[Some(0), Some(3)]]);
        let free = span_min_constrained(&c, &M::zeros(2, 2)).unwrap();
        let direct = span_min(&c, &c, &V::ones(2), &V::ones(2)).unwrap();
        assert_eq!(free.value, direct.value);
    }

    #[test]
    fn span_max_examples() {
        let r = span_max(&m(&[&[Some(2)]]), &m(&[&[Some(1)]]), &v(&[3]), &v(&[0])).unwrap();
        assert_eq!(r.value, s(2));
        assert!(matches!(r.set, SolutionSet::PinnedScaledBox { k: 0, s: 0, .. }));

        let zeros = m(&[&[Some(0), Some(0)], &[Some(0), Some(0)]]);
        let r = span_max(&zeros, &M::identity(2), &V::ones(2), &V::ones(2)).unwrap();
        assert_eq!(r.value, s(0));

        assert!(matches!(
            span_max(&M::identity(2), &M::identity(2), &V::ones(2), &V::ones(2)),
            Err(Error::NotRegular { .. })
        ));
    }

    #[test]
    fn constrained_span_max_reduces() {
        let a = m(&[&[Some(1), Some(0)], &[Some(-1), Some(2)]]);
        let b = m(&[&[Some(0), None], &[Some(3), Some(1)]]);
        let (p, q) = (v(&[0, 1]), v(&[2, 0]));
        let free = span_max(&a, &b, &p, &q).unwrap();
        let ineq = span_max_constrained(&a, &b, &M::zeros(2, 2), &p, &q, ConstraintKind::Inequality).unwrap();
        let eq = span_max_constrained(&a, &b, &M::identity(2), &p, &q, ConstraintKind::Equality).unwrap();
        assert_eq!(free.value, ineq.value);
        assert_eq!(free.value, eq.value);
        assert_eq!(free.witness, ineq.witness);
        assert_eq!(
            span_max_constrained(&a, &b, &m(&[&[Some(1), None], &[None, None]]), &p, &q, ConstraintKind::Inequality),
            Err(Error::infeasible("Tr(C) > 1"))
        );
        assert_eq!(
            span_max_constrained(&a, &b, &M::zeros(2, 2), &p, &q, ConstraintKind::Equality),
            Err(Error::infeasible("Tr(C) ≠ 1"))
        );
    }
}
