//! Closed-form solvers for the supported tropical optimization problems.
//!
//! Every solver returns the optimal value, a symbolic description of the
//! optimal set ([`SolutionSet`]) and one concrete regular optimizer.

mod cheby;
mod instance;
mod rayleigh;
mod span;

pub use cheby::{cheby_box, cheby_ineq, cheby_lower};
pub use instance::{Form, InstanceBuilder, ProblemInstance};
pub use rayleigh::{
    rayleigh, rayleigh_affine, rayleigh_box, rayleigh_full, rayleigh_ineq, rayleigh_p_ineq,
    MAX_COMPOSITION_DIM,
};
pub use span::{span_max, span_max_constrained, span_min, span_min_constrained, ConstraintKind};

use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};
use crate::tropalg::{TropMatrix, TropVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    pub fn as_str(self) -> &'static str {
        match self {
            Sense::Minimize => "minimize",
            Sense::Maximize => "maximize",
        }
    }

    /// Whether `candidate` is strictly better than `incumbent`.
    pub fn improves<K: Semifield>(self, candidate: &Scalar<K>, incumbent: &Scalar<K>) -> bool {
        match self {
            Sense::Minimize => candidate.lt(incumbent),
            Sense::Maximize => incumbent.lt(candidate),
        }
    }
}

/// Symbolic description of a set of optimizers.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionSet<K: Semifield> {
    /// A single point; the optimum is attained there, other optimizers are not described.
    Singleton(TropVector<K>),
    /// `lower ≤ x ≤ upper`.
    Interval {
        lower: TropVector<K>,
        upper: TropVector<K>,
    },
    /// `x = G u` with `u_lower ≤ u ≤ u_upper`.
    GeneratedInterval {
        generator: TropMatrix<K>,
        u_lower: TropVector<K>,
        u_upper: TropVector<K>,
    },
    /// `x = G u` with `u ≥ u_lower`, `u` regular.
    GeneratedCone {
        generator: TropMatrix<K>,
        u_lower: TropVector<K>,
    },
    /// `x_k = α·pin`, `x_j ≤ α·caps_j` for `j ≠ k`, any `α > 𝟘`. Indices are 0-based
    /// and `caps_k = pin`.
    PinnedScaledBox {
        k: usize,
        s: usize,
        pin: Scalar<K>,
        caps: TropVector<K>,
    },
    /// `x = outer ⊗ u` with `u` ranging over `inner`.
    Substituted {
        outer: TropMatrix<K>,
        inner: Box<SolutionSet<K>>,
    },
}

impl<K: Semifield> SolutionSet<K> {
    pub fn kind(&self) -> &'static str {
        match self {
            SolutionSet::Singleton(_) => "singleton",
            SolutionSet::Interval { .. } => "interval",
            SolutionSet::GeneratedInterval { .. } => "generated-interval",
            SolutionSet::GeneratedCone { .. } => "generated-cone",
            SolutionSet::PinnedScaledBox { .. } => "pinned-scaled-box",
            SolutionSet::Substituted { .. } => "substituted",
        }
    }
}

/// Result of a solver call.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimumReport<K: Semifield> {
    pub value: Scalar<K>,
    pub sense: Sense,
    pub set: SolutionSet<K>,
    pub witness: TropVector<K>,
    /// Preconditions that were checked, in the order they were checked.
    pub checks: Vec<String>,
}

/// Dispatches an instance to its solver.
pub fn solve<K: Semifield>(instance: &ProblemInstance<K>) -> Result<OptimumReport<K>> {
    instance.validate()?;
    use ProblemInstance as P;
    match instance {
        P::Rayleigh { a } => rayleigh(a),
        P::ChebyBox { p, q, g, h } => cheby_box(p, q, g, h),
        P::ChebyLower { a, p, q, g } => cheby_lower(a, p, q, g),
        P::ChebyIneqBox { b, p, q, g, h } => cheby_ineq(b, p, q, g, Some(h)),
        P::ChebyIneq { b, p, q } => cheby_ineq(b, p, q, &TropVector::zeros(p.dim()), None),
        P::SpanMin { a, b, p, q } => span_min(a, b, p, q),
        P::SpanMinConstrained { c, d } => span_min_constrained(c, d),
        P::SpanMax { a, b, p, q } => span_max(a, b, p, q),
        P::SpanMaxIneq { a, b, c, p, q } => {
            span_max_constrained(a, b, c, p, q, ConstraintKind::Inequality)
        }
        P::SpanMaxEq { a, b, c, p, q } => {
            span_max_constrained(a, b, c, p, q, ConstraintKind::Equality)
        }
        P::RayleighAffine { a, p, q, c } => rayleigh_affine(a, p, q, *c),
        P::RayleighFull { a, b, c, g, h } => rayleigh_full(a, b, c, g, h),
        P::RayleighIneq { a, b, g } => rayleigh_ineq(a, b, g),
        P::RayleighBox { a, g, h } => rayleigh_box(a, g, h),
        P::RayleighPIneq { a, b, p, g } => rayleigh_p_ineq(a, b, p, g),
    }
}

// Small helpers shared by the solvers.

/// Records and enforces a precondition.
struct Checks(Vec<String>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn require(&mut self, ok: bool, name: &str, err: impl FnOnce() -> Error) -> Result<()> {
        if ok {
            self.0.push(name.to_string());
            Ok(())
        } else {
            Err(err())
        }
    }

    fn regular<K: Semifield>(&mut self, v: &TropVector<K>, name: &str) -> Result<()> {
        self.require(v.is_regular(), &format!("{name} regular"), || {
            Error::not_regular(format!("{name} is not regular"))
        })
    }

    fn nonzero<K: Semifield>(&mut self, v: &TropVector<K>, name: &str) -> Result<()> {
        self.require(v.is_nonzero(), &format!("{name} nonzero"), || Error::zero_vector(name))
    }

    fn square<K: Semifield>(&mut self, m: &TropMatrix<K>, name: &str) -> Result<()> {
        self.require(m.is_square(), &format!("{name} square"), || Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }

    fn into_vec(self) -> Vec<String> {
        self.0
    }
}

/// `v⁻ ⊗ m ⊗ w` for column vectors `v`, `w`.
fn sandwich<K: Semifield>(v: &TropVector<K>, m: &TropMatrix<K>, w: &TropVector<K>) -> Result<Scalar<K>> {
    v.conj()?.mul(m)?.mul(&w.as_column())?.to_scalar()
}

/// `v⁻ ⊗ w`.
fn vdot<K: Semifield>(v: &TropVector<K>, w: &TropVector<K>) -> Result<Scalar<K>> {
    v.conj()?.mul(&w.as_column())?.to_scalar()
}

/// Column vector `r⁻` for a row matrix `r`.
fn conj_row<K: Semifield>(r: &TropMatrix<K>) -> Result<TropVector<K>> {
    TropVector::from_column(&r.conj()?)
}

/// A regular parameter vector inside the bounds: the lower bound where finite,
/// else the upper bound, else `𝟙`.
fn pick_u<K: Semifield>(lower: &TropVector<K>, upper: Option<&TropVector<K>>) -> TropVector<K> {
    TropVector::from_fn(lower.dim(), |i| {
        let l = lower.get(i);
        if l.is_finite() {
            l
        } else {
            upper.map(|u| u.get(i)).filter(Scalar::is_finite).unwrap_or(Scalar::one())
        }
    })
}

fn check_same_dim<K: Semifield>(vs: &[(&TropVector<K>, usize)], op: &'static str) -> Result<()> {
    for (v, dim) in vs {
        if v.dim() != *dim {
            return Err(Error::ShapeMismatch {
                op,
                lhs: (v.dim(), 1),
                rhs: (*dim, 1),
            });
        }
    }
    Ok(())
}

/// `M*`, reporting divergence as the infeasibility `Tr(name) > 1`.
fn star_of<K: Semifield>(m: &TropMatrix<K>, name: &str) -> Result<TropMatrix<K>> {
    m.kleene_star().map_err(|e| match e {
        Error::StarDiverges => Error::infeasible(format!("Tr({name}) > 1")),
        other => other,
    })
}
