//! Objective and constraint evaluation written as explicit scalar loops.
//!
//! This deliberately does not reuse the matrix code in `tropalg`; it is the
//! second half of a double-entry check, and with the small integer
//! max-plus carrier [`Mpi`] it is also the inner loop of the grid search.

use crate::semifield::{Scalar, Semifield};
use crate::solvers::{Form, ProblemInstance};

/// The operations the loops need.
pub trait Dioid: Copy + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn plus(self, other: Self) -> Self;
    fn times(self, other: Self) -> Self;
    /// Multiplicative inverse, with `𝟘 ↦ 𝟘` as in conjugate transposition.
    fn conj(self) -> Self;
    fn le(self, other: Self) -> bool;
    fn same(self, other: Self) -> bool;
}

impl<K: Semifield> Dioid for Scalar<K> {
    fn zero() -> Self {
        Scalar::Bottom
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn times(self, other: Self) -> Self {
        self * other
    }
    fn conj(self) -> Self {
        self.inverse().unwrap_or(Scalar::Bottom)
    }
    fn le(self, other: Self) -> bool {
        self.leq(&other)
    }
    fn same(self, other: Self) -> bool {
        self.approx_eq(&other)
    }
}

/// Max-plus over `i64`; `None` is `−∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mpi(pub Option<i64>);

impl Dioid for Mpi {
    fn zero() -> Self {
        Mpi(None)
    }
    fn one() -> Self {
        Mpi(Some(0))
    }
    fn plus(self, other: Self) -> Self {
        self.max(other)
    }
    fn times(self, other: Self) -> Self {
        match (self.0, other.0) {
            (Some(a), Some(b)) => Mpi(Some(a + b)),
            _ => Mpi(None),
        }
    }
    fn conj(self) -> Self {
        Mpi(self.0.map(|a| -a))
    }
    fn le(self, other: Self) -> bool {
        self <= other
    }
    fn same(self, other: Self) -> bool {
        self == other
    }
}

type Mat<T> = Vec<Vec<T>>;

/// An instance flattened to nested `Vec`s over any [`Dioid`].
#[derive(Debug, Clone)]
pub struct PlainInstance<T> {
    pub form: Form,
    a: Mat<T>,
    b: Mat<T>,
    c: Mat<T>,
    d: Mat<T>,
    p: Vec<T>,
    q: Vec<T>,
    g: Vec<T>,
    h: Vec<T>,
    scalar: T,
}

fn row_times<T: Dioid>(row: &[T], x: &[T]) -> T {
    let mut acc = T::zero();
    for (r, v) in row.iter().zip(x) {
        acc = acc.plus(r.times(*v));
    }
    acc
}

/// `v⁻w`
fn conj_dot<T: Dioid>(v: &[T], w: &[T]) -> T {
    let mut acc = T::zero();
    for (a, b) in v.iter().zip(w) {
        acc = acc.plus(a.conj().times(*b));
    }
    acc
}

/// `q⁻(Mx)`
fn conj_dot_mat<T: Dioid>(q: &[T], m: &Mat<T>, x: &[T]) -> T {
    let mut acc = T::zero();
    for (qi, row) in q.iter().zip(m) {
        acc = acc.plus(qi.conj().times(row_times(row, x)));
    }
    acc
}

/// `(Mx)⁻p`
fn mat_conj_dot<T: Dioid>(m: &Mat<T>, x: &[T], p: &[T]) -> T {
    let mut acc = T::zero();
    for (row, pi) in m.iter().zip(p) {
        acc = acc.plus(row_times(row, x).conj().times(*pi));
    }
    acc
}

/// `x⁻Mx`
fn quadratic<T: Dioid>(m: &Mat<T>, x: &[T]) -> T {
    let mut acc = T::zero();
    for (xi, row) in x.iter().zip(m) {
        acc = acc.plus(xi.conj().times(row_times(row, x)));
    }
    acc
}

/// `Mx ⊕ g ≤ x` (an empty `g` is all-zero).
fn sub_invariant<T: Dioid>(m: &Mat<T>, g: &[T], x: &[T]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        let lhs = row_times(row, x).plus(g.get(i).copied().unwrap_or(T::zero()));
        lhs.le(x[i])
    })
}

fn bounded_by<T: Dioid>(m: &Mat<T>, x: &[T], h: &[T]) -> bool {
    m.iter().zip(h).all(|(row, hi)| row_times(row, x).le(*hi))
}

fn fixed_by<T: Dioid>(m: &Mat<T>, x: &[T]) -> bool {
    m.iter().zip(x).all(|(row, xi)| row_times(row, x).same(*xi))
}

fn between<T: Dioid>(g: &[T], x: &[T], h: &[T]) -> bool {
    g.iter().zip(x).all(|(gi, xi)| gi.le(*xi)) && h.iter().zip(x).all(|(hi, xi)| xi.le(*hi))
}

impl<T: Dioid> PlainInstance<T> {
    /// Flattens `inst`, converting every scalar with `f`.
    pub fn from_instance<K: Semifield>(inst: &ProblemInstance<K>, f: impl Fn(Scalar<K>) -> T) -> Self {
        let mut out = PlainInstance {
            form: inst.form(),
            a: vec![],
            b: vec![],
            c: vec![],
            d: vec![],
            p: vec![],
            q: vec![],
            g: vec![],
            h: vec![],
            scalar: T::zero(),
        };
        for (name, m) in inst.matrices() {
            let rows = (0..m.rows()).map(|i| m.row(i).iter().map(|&s| f(s)).collect()).collect();
            match name {
                "A" => out.a = rows,
                "B" => out.b = rows,
                "C" => out.c = rows,
                _ => out.d = rows,
            }
        }
        for (name, v) in inst.vectors() {
            let entries = v.iter().map(&f).collect();
            match name {
                "p" => out.p = entries,
                "q" => out.q = entries,
                "g" => out.g = entries,
                _ => out.h = entries,
            }
        }
        for (_, s) in inst.scalars() {
            out.scalar = f(s);
        }
        out
    }

    /// The objective at a regular `x`.
    pub fn objective(&self, x: &[T]) -> T {
        match self.form {
            Form::Rayleigh | Form::RayleighFull | Form::RayleighIneq | Form::RayleighBox => {
                quadratic(&self.a, x)
            }
            Form::ChebyBox | Form::ChebyIneqBox | Form::ChebyIneq => {
                conj_dot(&self.q, x).plus(conj_dot(x, &self.p))
            }
            Form::ChebyLower => {
                conj_dot_mat(&self.q, &self.a, x).plus(mat_conj_dot(&self.a, x, &self.p))
            }
            Form::SpanMin | Form::SpanMax | Form::SpanMaxIneq | Form::SpanMaxEq => {
                conj_dot_mat(&self.q, &self.b, x).times(mat_conj_dot(&self.a, x, &self.p))
            }
            Form::SpanMinConstrained => {
                let (mut top, mut inv) = (T::zero(), T::zero());
                for row in &self.c {
                    let y = row_times(row, x);
                    top = top.plus(y);
                    inv = inv.plus(y.conj());
                }
                top.times(inv)
            }
            Form::RayleighAffine => quadratic(&self.a, x)
                .plus(conj_dot(x, &self.p))
                .plus(conj_dot(&self.q, x))
                .plus(self.scalar),
            Form::RayleighPIneq => quadratic(&self.a, x).plus(conj_dot(x, &self.p)),
        }
    }

    /// Whether `x` satisfies every constraint of the form.
    pub fn feasible(&self, x: &[T]) -> bool {
        match self.form {
            Form::ChebyBox | Form::RayleighBox => between(&self.g, x, &self.h),
            Form::ChebyLower => between(&self.g, x, &[]),
            Form::ChebyIneqBox => sub_invariant(&self.b, &self.g, x) && between(&[], x, &self.h),
            Form::ChebyIneq => sub_invariant(&self.b, &[], x),
            Form::SpanMinConstrained => sub_invariant(&self.d, &[], x),
            Form::SpanMaxIneq => sub_invariant(&self.c, &[], x),
            Form::SpanMaxEq => fixed_by(&self.c, x),
            Form::RayleighFull => sub_invariant(&self.b, &self.g, x) && bounded_by(&self.c, x, &self.h),
            Form::RayleighIneq | Form::RayleighPIneq => sub_invariant(&self.b, &self.g, x),
            Form::Rayleigh | Form::SpanMin | Form::SpanMax | Form::RayleighAffine => true,
        }
    }

    /// Componentwise bounds `g ≤ x ≤ h` implied directly by the constraints.
    pub fn direct_bounds(&self) -> (Option<&[T]>, Option<&[T]>) {
        match self.form {
            Form::ChebyBox | Form::RayleighBox | Form::ChebyIneqBox => (Some(&self.g), Some(&self.h)),
            Form::ChebyLower | Form::RayleighFull | Form::RayleighIneq | Form::RayleighPIneq => {
                (Some(&self.g), None)
            }
            _ => (None, None),
        }
    }
}
