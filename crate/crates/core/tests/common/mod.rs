#![allow(dead_code)]

use proptest::prelude::*;
use tropopt::semifield::{MaxPlus, Rational, Scalar};
use tropopt::{TropMatrix, TropVector};

pub type S = Scalar<MaxPlus>;
pub type M = TropMatrix<MaxPlus>;
pub type V = TropVector<MaxPlus>;

pub fn int(v: i128) -> S {
    Scalar::Finite(Rational::from_integer(v))
}

/// Finite rationals with small numerators and denominators.
pub fn finite() -> impl Strategy<Value = S> {
    (-12i128..=12, 1i128..=4).prop_map(|(n, d)| Scalar::Finite(Rational::new(n, d)))
}

/// Finite values or `𝟘`, with `𝟘` about one time in four.
pub fn scalar() -> impl Strategy<Value = S> {
    prop_oneof![1 => Just(Scalar::Bottom), 3 => finite()]
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = M> {
    prop::collection::vec(scalar(), rows * cols).prop_map(move |d| M::new(rows, cols, d).unwrap())
}

pub fn square(n_max: usize) -> impl Strategy<Value = M> {
    (1..=n_max).prop_flat_map(|n| matrix(n, n))
}

pub fn regular_vector(n: usize) -> impl Strategy<Value = V> {
    prop::collection::vec(finite(), n).prop_map(|d| V::new(d).unwrap())
}

pub fn vector(n: usize) -> impl Strategy<Value = V> {
    prop::collection::vec(scalar(), n).prop_map(|d| V::new(d).unwrap())
}

/// `a` shifted so that its spectral radius is at most `𝟙`.
pub fn contract(a: &M) -> M {
    match tropopt::spectral::spectral_radius(a).unwrap() {
        Scalar::Finite(l) if l > Rational::from_integer(0) => a.scale(Scalar::Finite(-l)),
        _ => a.clone(),
    }
}

pub fn negate(a: &M) -> TropMatrix<tropopt::semifield::MinPlus> {
    a.map(|s| s.mirror())
}
