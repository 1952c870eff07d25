//! Linearly ordered, radicable idempotent semifields.
//!
//! A semifield is described by a zero-sized marker type implementing
//! [`Semifield`]; the elements themselves are [`Scalar`]s, which carry the
//! zero element as an explicit [`Scalar::Bottom`] tag. Four instances are
//! provided: max-plus and min-plus (over exact rationals by default, or
//! `f64`), and max-times and min-times (over `f64`, compared with a
//! tolerance).

use std::cmp::Ordering;
use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers used by the additive semifields.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemifieldId {
    MaxPlus,
    MinPlus,
    MaxTimes,
    MinTimes,
}

impl SemifieldId {
    pub const ALL: [SemifieldId; 4] = [
        SemifieldId::MaxPlus,
        SemifieldId::MinPlus,
        SemifieldId::MaxTimes,
        SemifieldId::MinTimes,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SemifieldId::MaxPlus => "max-plus",
            SemifieldId::MinPlus => "min-plus",
            SemifieldId::MaxTimes => "max-times",
            SemifieldId::MinTimes => "min-times",
        }
    }

    /// Whether the multiplication is ordinary addition.
    pub fn is_additive(self) -> bool {
        matches!(self, SemifieldId::MaxPlus | SemifieldId::MinPlus)
    }
}

impl fmt::Display for SemifieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SemifieldId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemifieldId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidScalar(format!("unknown semifield `{s}`")))
    }
}

static FLOAT_TOLERANCE: AtomicU64 = AtomicU64::new(f64::to_bits(1e-9));

/// Comparison tolerance for floating-point carriers.
pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOLERANCE.load(AtomicOrdering::Relaxed))
}

pub fn set_float_tolerance(tol: f64) {
    assert!(tol >= 0.0 && tol.is_finite(), "tolerance must be a finite non-negative number");
    FLOAT_TOLERANCE.store(tol.to_bits(), AtomicOrdering::Relaxed);
}

fn float_cmp(a: f64, b: f64) -> Ordering {
    let scale = 1f64.max(a.abs()).max(b.abs());
    if (a - b).abs() <= float_tolerance() * scale {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Parses `"a/b"`, integers and plain decimals (`"-2.25"`, `"1e3"`) exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidScalar(format!("cannot parse `{s}` as a rational"));
    if let Some((num, den)) = s.split_once('/') {
        let num: i128 = num.trim().parse().map_err(|_| bad())?;
        let den: i128 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<i128>().map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(10);
    for _ in 0..shift.unsigned_abs() {
        value = if shift > 0 { value * ten } else { value / ten };
    }
    Ok(if negative { -value } else { value })
}

/// Numbers that can carry an additive (max-plus / min-plus) semifield.
pub trait Number: Copy + PartialEq + fmt::Debug + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn plus(self, rhs: Self) -> Self;
    fn negated(self) -> Self;
    /// `self * num / den`.
    fn times_ratio(self, num: i64, den: u64) -> Self;
    /// Numeric comparison; floats compare equal within [`float_tolerance`].
    fn compare(&self, other: &Self) -> Ordering;
    fn from_rational(r: Rational) -> Self;
    fn parse_literal(s: &str) -> Result<Self>;
    fn render(&self) -> String;
}

impl Number for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }

    fn plus(self, rhs: Self) -> Self {
        self + rhs
    }

    fn negated(self) -> Self {
        -self
    }

    fn times_ratio(self, num: i64, den: u64) -> Self {
        self * Rational::new(num as i128, den as i128)
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn parse_literal(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

fn parse_float(s: &str) -> Result<f64> {
    let v = if s.contains('/') {
        parse_rational(s)?.to_f64().unwrap_or(f64::NAN)
    } else {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::InvalidScalar(format!("cannot parse `{s}` as a number")))?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidScalar(format!("non-finite literal `{s}`")))
    }
}

fn render_float(v: f64) -> String {
    // no "-0"
    if v == 0.0 {
        "0".to_string()
    } else {
        v.to_string()
    }
}

impl Number for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn plus(self, rhs: Self) -> Self {
        self + rhs
    }

    fn negated(self) -> Self {
        -self
    }

    fn times_ratio(self, num: i64, den: u64) -> Self {
        self * num as f64 / den as f64
    }

    fn compare(&self, other: &Self) -> Ordering {
        float_cmp(*self, *other)
    }

    fn from_rational(r: Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        parse_float(s)
    }

    fn render(&self) -> String {
        render_float(*self)
    }
}

/// The contract every idempotent semifield satisfies.
///
/// Operations on finite values only; the zero element is handled by
/// [`Scalar`]. `cmp_values` is the semifield order (`a ≤ b` iff `a ⊕ b = b`),
/// which for the min-based semifields is the reverse of the numeric order.
pub trait Semifield: Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Value: Copy + PartialEq + fmt::Debug + Send + Sync + 'static;

    const ID: SemifieldId;
    const EXACT: bool;

    fn one_value() -> Self::Value;
    fn mul_values(a: Self::Value, b: Self::Value) -> Self::Value;
    fn cmp_values(a: &Self::Value, b: &Self::Value) -> Ordering;
    fn inv_value(a: Self::Value) -> Self::Value;
    fn pow_value(a: Self::Value, num: i64, den: u64) -> Self::Value;
    /// Rejects numbers outside the carrier (e.g. non-positive for max-times).
    fn check_value(a: Self::Value) -> Result<Self::Value>;
    fn parse_value(s: &str) -> Result<Self::Value>;
    fn render_value(a: &Self::Value) -> String;
    /// An element strictly above one, used to widen sampling ranges.
    fn unit_step() -> Self::Value;

    fn add_values(a: Self::Value, b: Self::Value) -> Self::Value {
        if Self::cmp_values(&a, &b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

macro_rules! marker {
    ($(#[$meta:meta])* $name:ident<$n:ident>) => {
        $(#[$meta])*
        pub struct $name<$n = Rational>(PhantomData<fn() -> $n>);

        impl<$n> Clone for $name<$n> {
            fn clone(&self) -> Self {
                *self
            }
        }
        impl<$n> Copy for $name<$n> {}
        impl<$n> PartialEq for $name<$n> {
            fn eq(&self, _: &Self) -> bool {
                true
            }
        }
        impl<$n> Eq for $name<$n> {}
        impl<$n> fmt::Debug for $name<$n> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(stringify!($name))
            }
        }
    };
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub struct $name;
    };
}

marker!(
    /// (ℝ ∪ {−∞}, max, +, −∞, 0).
    MaxPlus<N>
);
marker!(
    /// (ℝ ∪ {+∞}, min, +, +∞, 0).
    MinPlus<N>
);
marker!(
    /// (ℝ₊ ∪ {0}, max, ×, 0, 1).
    MaxTimes
);
marker!(
    /// (ℝ₊ ∪ {+∞}, min, ×, +∞, 1).
    MinTimes
);

impl<N: Number> Semifield for MaxPlus<N> {
    type Value = N;
    const ID: SemifieldId = SemifieldId::MaxPlus;
    const EXACT: bool = N::EXACT;

    fn one_value() -> N {
        N::zero()
    }
    fn mul_values(a: N, b: N) -> N {
        a.plus(b)
    }
    fn cmp_values(a: &N, b: &N) -> Ordering {
        a.compare(b)
    }
    fn inv_value(a: N) -> N {
        a.negated()
    }
    fn pow_value(a: N, num: i64, den: u64) -> N {
        a.times_ratio(num, den)
    }
    fn check_value(a: N) -> Result<N> {
        Ok(a)
    }
    fn parse_value(s: &str) -> Result<N> {
        N::parse_literal(s)
    }
    fn render_value(a: &N) -> String {
        a.render()
    }
    fn unit_step() -> N {
        N::from_rational(Rational::from_integer(1))
    }
}

impl<N: Number> Semifield for MinPlus<N> {
    type Value = N;
    const ID: SemifieldId = SemifieldId::MinPlus;
    const EXACT: bool = N::EXACT;

    fn one_value() -> N {
        N::zero()
    }
    fn mul_values(a: N, b: N) -> N {
        a.plus(b)
    }
    fn cmp_values(a: &N, b: &N) -> Ordering {
        b.compare(a)
    }
    fn inv_value(a: N) -> N {
        a.negated()
    }
    fn pow_value(a: N, num: i64, den: u64) -> N {
        a.times_ratio(num, den)
    }
    fn check_value(a: N) -> Result<N> {
        Ok(a)
    }
    fn parse_value(s: &str) -> Result<N> {
        N::parse_literal(s)
    }
    fn render_value(a: &N) -> String {
        a.render()
    }
    fn unit_step() -> N {
        N::from_rational(Rational::from_integer(-1))
    }
}

fn check_positive(a: f64) -> Result<f64> {
    if a > 0.0 && a.is_finite() {
        Ok(a)
    } else {
        Err(Error::InvalidScalar(format!(
            "{a} is not a finite positive number (use null for the zero element)"
        )))
    }
}

impl Semifield for MaxTimes {
    type Value = f64;
    const ID: SemifieldId = SemifieldId::MaxTimes;
    const EXACT: bool = false;

    fn one_value() -> f64 {
        1.0
    }
    fn mul_values(a: f64, b: f64) -> f64 {
        a * b
    }
    fn cmp_values(a: &f64, b: &f64) -> Ordering {
        float_cmp(*a, *b)
    }
    fn inv_value(a: f64) -> f64 {
        1.0 / a
    }
    fn pow_value(a: f64, num: i64, den: u64) -> f64 {
        a.powf(num as f64 / den as f64)
    }
    fn check_value(a: f64) -> Result<f64> {
        check_positive(a)
    }
    fn parse_value(s: &str) -> Result<f64> {
        check_positive(parse_float(s)?)
    }
    fn render_value(a: &f64) -> String {
        render_float(*a)
    }
    fn unit_step() -> f64 {
        2.0
    }
}

impl Semifield for MinTimes {
    type Value = f64;
    const ID: SemifieldId = SemifieldId::MinTimes;
    const EXACT: bool = false;

    fn one_value() -> f64 {
        1.0
    }
    fn mul_values(a: f64, b: f64) -> f64 {
        a * b
    }
    fn cmp_values(a: &f64, b: &f64) -> Ordering {
        float_cmp(*b, *a)
    }
    fn inv_value(a: f64) -> f64 {
        1.0 / a
    }
    fn pow_value(a: f64, num: i64, den: u64) -> f64 {
        a.powf(num as f64 / den as f64)
    }
    fn check_value(a: f64) -> Result<f64> {
        check_positive(a)
    }
    fn parse_value(s: &str) -> Result<f64> {
        check_positive(parse_float(s)?)
    }
    fn render_value(a: &f64) -> String {
        render_float(*a)
    }
    fn unit_step() -> f64 {
        0.5
    }
}

/// Additive semifields over exact rationals; the grid oracle works on these.
pub trait ExactAdditive: Semifield<Value = Rational> {
    /// Image under the isomorphism onto max-plus (identity or negation).
    fn to_max_plus(v: Rational) -> Rational;
    fn from_max_plus(v: Rational) -> Rational;
}

impl ExactAdditive for MaxPlus<Rational> {
    fn to_max_plus(v: Rational) -> Rational {
        v
    }
    fn from_max_plus(v: Rational) -> Rational {
        v
    }
}

impl ExactAdditive for MinPlus<Rational> {
    fn to_max_plus(v: Rational) -> Rational {
        -v
    }
    fn from_max_plus(v: Rational) -> Rational {
        -v
    }
}

/// An element of the semifield `K`: the zero element or a finite value.
pub enum Scalar<K: Semifield> {
    Bottom,
    Finite(K::Value),
}

impl<K: Semifield> Clone for Scalar<K> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<K: Semifield> Copy for Scalar<K> {}

impl<K: Semifield> PartialEq for Scalar<K> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Bottom, Scalar::Bottom) => true,
            (Scalar::Finite(a), Scalar::Finite(b)) => a == b,
            _ => false,
        }
    }
}

impl<K: ExactAdditive> Eq for Scalar<K> {}

impl<K: Semifield> fmt::Debug for Scalar<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Bottom => f.write_str("𝟘"),
            Scalar::Finite(v) => f.write_str(&K::render_value(v)),
        }
    }
}

impl<K: Semifield> fmt::Display for Scalar<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<K: Semifield> Default for Scalar<K> {
    fn default() -> Self {
        Scalar::Bottom
    }
}

impl<K: Semifield> Scalar<K> {
    pub fn zero() -> Self {
        Scalar::Bottom
    }

    pub fn one() -> Self {
        Scalar::Finite(K::one_value())
    }

    /// A finite element, checked against the carrier.
    pub fn finite(v: K::Value) -> Result<Self> {
        K::check_value(v).map(Scalar::Finite)
    }

    pub fn parse(s: &str) -> Result<Self> {
        K::parse_value(s).map(Scalar::Finite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Bottom)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_zero()
    }

    pub fn value(&self) -> Option<K::Value> {
        match self {
            Scalar::Bottom => None,
            Scalar::Finite(v) => Some(*v),
        }
    }

    /// Semifield order; the zero element is the least element.
    pub fn order(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Bottom, Scalar::Bottom) => Ordering::Equal,
            (Scalar::Bottom, Scalar::Finite(_)) => Ordering::Less,
            (Scalar::Finite(_), Scalar::Bottom) => Ordering::Greater,
            (Scalar::Finite(a), Scalar::Finite(b)) => K::cmp_values(a, b),
        }
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.order(other) != Ordering::Greater
    }

    pub fn lt(&self, other: &Self) -> bool {
        self.order(other) == Ordering::Less
    }

    /// Equality up to the float tolerance (exact for rational carriers).
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.order(other) == Ordering::Equal
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            Scalar::Bottom => Err(Error::InverseOfZero),
            Scalar::Finite(v) => Ok(Scalar::Finite(K::inv_value(*v))),
        }
    }

    /// `self^(num/den)` in the semifield sense.
    pub fn pow(&self, num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidScalar("zero denominator in exponent".into()));
        }
        match self {
            _ if num == 0 => Ok(Self::one()),
            Scalar::Bottom if num < 0 => Err(Error::InverseOfZero),
            Scalar::Bottom => Ok(Scalar::Bottom),
            Scalar::Finite(v) => Ok(Scalar::Finite(K::pow_value(*v, num, den))),
        }
    }

    /// `self ⊗ other⁻¹`, with `𝟘 / b = 𝟘`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(*self * other.inverse()?)
    }

    pub fn unit_step() -> Self {
        Scalar::Finite(K::unit_step())
    }
}

impl<K: Semifield> std::ops::Add for Scalar<K> {
    type Output = Self;

    /// `⊕`
    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Scalar::Bottom, x) | (x, Scalar::Bottom) => x,
            (Scalar::Finite(a), Scalar::Finite(b)) => Scalar::Finite(K::add_values(a, b)),
        }
    }
}

impl<K: Semifield> std::ops::Mul for Scalar<K> {
    type Output = Self;

    /// `⊗`
    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Scalar::Finite(a), Scalar::Finite(b)) => Scalar::Finite(K::mul_values(a, b)),
            _ => Scalar::Bottom,
        }
    }
}

impl<K: Semifield> std::iter::Sum for Scalar<K> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Scalar::Bottom, |acc, x| acc + x)
    }
}

impl<K: Semifield> std::iter::Product for Scalar<K> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl<N: Number> Scalar<MaxPlus<N>> {
    /// Negation of the finite value: the isomorphism onto min-plus.
    pub fn mirror(self) -> Scalar<MinPlus<N>> {
        match self {
            Scalar::Bottom => Scalar::Bottom,
            Scalar::Finite(v) => Scalar::Finite(v.negated()),
        }
    }
}

impl<N: Number> Scalar<MinPlus<N>> {
    pub fn mirror(self) -> Scalar<MaxPlus<N>> {
        match self {
            Scalar::Bottom => Scalar::Bottom,
            Scalar::Finite(v) => Scalar::Finite(v.negated()),
        }
    }
}
