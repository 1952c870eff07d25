//! Exhaustive search over a rational lattice.

use std::collections::BinaryHeap;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::plain::{Mpi, PlainInstance};
use super::OracleError;
use crate::semifield::{ExactAdditive, MaxPlus, Rational, Scalar};
use crate::solvers::{ProblemInstance, Sense};
use crate::tropalg::TropVector;

/// At most this many optimal grid points are kept in [`OracleReport::argbest`].
pub const ARGBEST_SAMPLE: usize = 512;

/// Grids larger than this are refused.
pub const MAX_GRID_POINTS: u128 = 2_000_000_000;

/// The lattice `lower + t·step`, `0 ≤ t`, inside `[lower, upper]`, in plain
/// numeric coordinates of the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
    pub step: Rational,
}

impl GridSpec {
    pub fn new(lower: Vec<Rational>, upper: Vec<Rational>, step: Rational) -> Result<Self, OracleError> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(OracleError::InvalidGrid("lower and upper must have the same positive length".into()));
        }
        if !step.is_positive() {
            return Err(OracleError::InvalidGrid("step must be positive".into()));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(OracleError::InvalidGrid("lower exceeds upper".into()));
        }
        Ok(GridSpec { lower, upper, step })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Number of lattice points per coordinate.
    pub fn counts(&self) -> Vec<u128> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| ((u - l) / self.step).floor().to_integer() as u128 + 1)
            .collect()
    }

    pub fn points(&self) -> u128 {
        self.counts().iter().product()
    }
}

/// Result of [`grid_optimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport<K: ExactAdditive> {
    pub best_value: Scalar<K>,
    /// A deterministic sample of at most [`ARGBEST_SAMPLE`] optimal points,
    /// sorted; `argbest_count` counts all of them.
    pub argbest: Vec<TropVector<K>>,
    pub argbest_count: u64,
    pub evaluated_count: u64,
    pub feasible_count: u64,
}

fn lcm_upto(n: usize) -> i128 {
    (1..=n as i128).fold(1, |acc, k| acc.lcm(&k))
}

/// The box `[c_min − w, c_max + w]` around the finite data in every
/// coordinate, with step `1/lcm(1..n+1)` refined by the data denominators.
///
/// The margin `w` is the data span `c_max − c_min`, widened to the largest
/// magnitude `|c|` and at least one, so that products and quotients of two
/// constants stay inside the box.
pub fn default_grid<K: ExactAdditive>(inst: &ProblemInstance<K>) -> GridSpec {
    let n = inst.dim();
    let constants = inst.constants();
    let lo = constants.iter().copied().min().unwrap_or_else(Rational::zero);
    let hi = constants.iter().copied().max().unwrap_or_else(Rational::zero);
    let span = constants
        .iter()
        .map(|c| c.abs())
        .fold((hi - lo).max(Rational::from_integer(1)), Rational::max);
    let den = constants.iter().fold(1i128, |acc, c| acc.lcm(c.denom()));
    GridSpec {
        lower: vec![lo - span; n],
        upper: vec![hi + span; n],
        step: Rational::new(1, lcm_upto(n + 1) * den),
    }
}

fn hash_point(x: &[i64]) -> u64 {
    // splitmix64 over the coordinates
    let mut h = 0x9E37_79B9_7F4A_7C15u64;
    for &v in x {
        h ^= v as u64;
        h = h.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h = z ^ (z >> 31);
    }
    h
}

/// Partial result over part of the grid.
struct Tally {
    best: Option<Mpi>,
    count: u64,
    feasible: u64,
    evaluated: u64,
    sample: BinaryHeap<(u64, Vec<i64>)>,
}

impl Tally {
    fn empty() -> Self {
        Tally {
            best: None,
            count: 0,
            feasible: 0,
            evaluated: 0,
            sample: BinaryHeap::new(),
        }
    }

    fn keep(&mut self, key: u64, point: Vec<i64>) {
        self.sample.push((key, point));
        if self.sample.len() > ARGBEST_SAMPLE {
            self.sample.pop();
        }
    }

    fn offer(&mut self, sense: Sense, value: Mpi, x: &[i64]) {
        self.feasible += 1;
        let better = match self.best {
            None => true,
            Some(b) => match sense {
                Sense::Minimize => value < b,
                Sense::Maximize => value > b,
            },
        };
        if better {
            self.best = Some(value);
            self.count = 0;
            self.sample.clear();
        }
        if self.best == Some(value) {
            self.count += 1;
            let key = hash_point(x);
            if self.sample.len() < ARGBEST_SAMPLE || self.sample.peek().is_some_and(|top| (key, x) < (top.0, &top.1[..])) {
                self.keep(key, x.to_vec());
            }
        }
    }

    fn merge(self, other: Tally, sense: Sense) -> Tally {
        let evaluated = self.evaluated + other.evaluated;
        let feasible = self.feasible + other.feasible;
        let mut out = match (self.best, other.best) {
            (_, None) => self,
            (None, Some(_)) => other,
            (Some(a), Some(b)) if a == b => {
                let mut out = self;
                out.count += other.count;
                for (key, point) in other.sample {
                    out.keep(key, point);
                }
                out
            }
            (Some(a), Some(b)) => {
                let self_wins = match sense {
                    Sense::Minimize => a < b,
                    Sense::Maximize => a > b,
                };
                if self_wins {
                    self
                } else {
                    other
                }
            }
        };
        out.evaluated = evaluated;
        out.feasible = feasible;
        out
    }
}

fn to_i64(v: Rational, what: &str) -> Result<i64, OracleError> {
    if !v.is_integer() {
        return Err(OracleError::InvalidGrid(format!("{what} is not on the integer lattice")));
    }
    v.to_integer()
        .to_i64()
        .ok_or_else(|| OracleError::InvalidGrid(format!("{what} overflows the grid arithmetic")))
}

/// Exhaustively evaluates every feasible point of `grid` and reports the best
/// objective value for the instance's sense. Deterministic.
pub fn grid_optimize<K: ExactAdditive>(
    inst: &ProblemInstance<K>,
    grid: &GridSpec,
) -> Result<OracleReport<K>, OracleError> {
    inst.validate()?;
    let n = inst.dim();
    if grid.dim() != n {
        return Err(OracleError::InvalidGrid(format!(
            "grid has dimension {}, instance has {n}",
            grid.dim()
        )));
    }
    let sense = inst.sense();
    // Work in max-plus coordinates; min-plus is carried over by negation.
    let flip = K::to_max_plus(Rational::from_integer(1)) != Rational::from_integer(1);
    let mp: ProblemInstance<MaxPlus> = inst.map(|s| match s {
        Scalar::Bottom => Scalar::Bottom,
        Scalar::Finite(v) => Scalar::Finite(K::to_max_plus(v)),
    });
    let (mut lower, mut upper): (Vec<Rational>, Vec<Rational>) = if flip {
        (grid.upper.iter().map(|v| -v).collect(), grid.lower.iter().map(|v| -v).collect())
    } else {
        (grid.lower.clone(), grid.upper.clone())
    };
    let step = grid.step;

    // Tighten to bounds stated directly on x, staying on the lattice.
    let exact = PlainInstance::<Scalar<MaxPlus>>::from_instance(&mp, |s| s);
    let (gb, hb) = exact.direct_bounds();
    if let Some(g) = gb {
        for i in 0..n {
            if let Scalar::Finite(gi) = g[i] {
                if gi > lower[i] {
                    lower[i] = lower[i] + ((gi - lower[i]) / step).ceil() * step;
                }
            }
        }
    }
    if let Some(h) = hb {
        for i in 0..n {
            match h[i] {
                Scalar::Finite(hi) if hi < upper[i] => upper[i] = hi,
                Scalar::Bottom => return Err(OracleError::EmptyFeasibleGrid),
                _ => {}
            }
        }
    }
    if lower.iter().zip(&upper).any(|(l, u)| l > u) {
        return Err(OracleError::EmptyFeasibleGrid);
    }
    let tight = GridSpec { lower, upper, step };
    let counts = tight.counts();
    let points = tight.points();
    if points > MAX_GRID_POINTS {
        return Err(OracleError::GridTooLarge {
            points,
            limit: MAX_GRID_POINTS,
        });
    }

    // Scale everything to integers.
    let scale = mp
        .constants()
        .iter()
        .chain(&tight.lower)
        .chain(std::iter::once(&step))
        .fold(1i128, |acc, v| acc.lcm(v.denom()));
    let scale_r = Rational::from_integer(scale);
    for c in mp.constants() {
        to_i64(c * scale_r, "data")?;
    }
    let int = PlainInstance::<Mpi>::from_instance(&mp, |s| {
        Mpi(s.value().map(|v| (v * scale_r).to_integer() as i64))
    });
    let base: Vec<i64> = tight
        .lower
        .iter()
        .map(|l| to_i64(l * scale_r, "grid bound"))
        .collect::<Result<_, _>>()?;
    let stride = to_i64(step * scale_r, "grid step")?;
    let counts: Vec<u64> = counts.iter().map(|&c| c as u64).collect();

    let tally = (0..counts[0])
        .into_par_iter()
        .map(|t0| {
            let mut tally = Tally::empty();
            let mut t = vec![0u64; n];
            t[0] = t0;
            let mut coords: Vec<i64> = base.clone();
            let mut x: Vec<Mpi> = vec![Mpi(None); n];
            loop {
                for i in 0..n {
                    coords[i] = base[i] + stride * t[i] as i64;
                    x[i] = Mpi(Some(coords[i]));
                }
                tally.evaluated += 1;
                if int.feasible(&x) {
                    tally.offer(sense, int.objective(&x), &coords);
                }
                // odometer over coordinates 1..n
                let mut i = n;
                loop {
                    if i == 1 {
                        return tally;
                    }
                    i -= 1;
                    t[i] += 1;
                    if t[i] < counts[i] {
                        break;
                    }
                    t[i] = 0;
                }
            }
        })
        .reduce(Tally::empty, |a, b| a.merge(b, sense));

    let best = match tally.best {
        Some(b) if tally.feasible > 0 => b,
        _ => return Err(OracleError::EmptyFeasibleGrid),
    };
    let back = |v: i64| -> Scalar<K> { Scalar::Finite(K::from_max_plus(Rational::new(v as i128, scale))) };
    let best_value = match best.0 {
        None => Scalar::Bottom,
        Some(v) => back(v),
    };
    let mut argbest: Vec<Vec<i64>> = tally.sample.into_iter().map(|(_, p)| p).collect();
    argbest.sort();
    let argbest = argbest
        .into_iter()
        .map(|p| TropVector::from_fn(n, |i| back(p[i])))
        .collect();
    Ok(OracleReport {
        best_value,
        argbest,
        argbest_count: tally.count,
        evaluated_count: tally.evaluated,
        feasible_count: tally.feasible,
    })
}
