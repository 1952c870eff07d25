use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};
use crate::tropalg::{TropMatrix, TropVector};

use super::Sense;

/// The supported problem forms, named after their displays in the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    Rayleigh,
    ChebyBox,
    ChebyLower,
    ChebyIneqBox,
    ChebyIneq,
    SpanMin,
    SpanMinConstrained,
    SpanMax,
    SpanMaxIneq,
    SpanMaxEq,
    RayleighAffine,
    RayleighFull,
    RayleighIneq,
    RayleighBox,
    RayleighPIneq,
}

impl Form {
    pub const ALL: [Form; 15] = [
        Form::Rayleigh,
        Form::ChebyBox,
        Form::ChebyLower,
        Form::ChebyIneqBox,
        Form::ChebyIneq,
        Form::SpanMin,
        Form::SpanMinConstrained,
        Form::SpanMax,
        Form::SpanMaxIneq,
        Form::SpanMaxEq,
        Form::RayleighAffine,
        Form::RayleighFull,
        Form::RayleighIneq,
        Form::RayleighBox,
        Form::RayleighPIneq,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Form::Rayleigh => "P3-rayleigh",
            Form::ChebyBox => "P4-cheby-box",
            Form::ChebyLower => "P5-cheby-lower",
            Form::ChebyIneqBox => "P6-cheby-ineq-box",
            Form::ChebyIneq => "P8-cheby-ineq",
            Form::SpanMin => "P9-span-min",
            Form::SpanMinConstrained => "P10-span-min-eqineq",
            Form::SpanMax => "P11-span-max",
            Form::SpanMaxIneq => "P13-span-max-ineq",
            Form::SpanMaxEq => "P14-span-max-eq",
            Form::RayleighAffine => "P15-rayleigh-affine",
            Form::RayleighFull => "P16-rayleigh-full",
            Form::RayleighIneq => "P17-rayleigh-ineq",
            Form::RayleighBox => "P18-rayleigh-box",
            Form::RayleighPIneq => "P19-rayleigh-p-ineq",
        }
    }

    pub fn sense(self) -> Sense {
        match self {
            Form::SpanMax | Form::SpanMaxIneq | Form::SpanMaxEq => Sense::Maximize,
            _ => Sense::Minimize,
        }
    }

    /// Matrix field names, in canonical order.
    pub fn matrices(self) -> &'static [&'static str] {
        match self {
            Form::Rayleigh | Form::RayleighAffine | Form::RayleighBox => &["A"],
            Form::ChebyBox => &[],
            Form::ChebyLower => &["A"],
            Form::ChebyIneqBox | Form::ChebyIneq => &["B"],
            Form::SpanMin | Form::SpanMax => &["A", "B"],
            Form::SpanMinConstrained => &["C", "D"],
            Form::SpanMaxIneq | Form::SpanMaxEq => &["A", "B", "C"],
            Form::RayleighFull => &["A", "B", "C"],
            Form::RayleighIneq | Form::RayleighPIneq => &["A", "B"],
        }
    }

    /// Vector field names, in canonical order.
    pub fn vectors(self) -> &'static [&'static str] {
        match self {
            Form::Rayleigh | Form::SpanMinConstrained => &[],
            Form::ChebyBox | Form::ChebyIneqBox => &["p", "q", "g", "h"],
            Form::ChebyLower => &["p", "q", "g"],
            Form::ChebyIneq => &["p", "q"],
            Form::SpanMin | Form::SpanMax | Form::SpanMaxIneq | Form::SpanMaxEq => &["p", "q"],
            Form::RayleighAffine => &["p", "q"],
            Form::RayleighFull => &["g", "h"],
            Form::RayleighIneq => &["g"],
            Form::RayleighBox => &["g", "h"],
            Form::RayleighPIneq => &["p", "g"],
        }
    }

    /// Scalar field names.
    pub fn scalars(self) -> &'static [&'static str] {
        match self {
            Form::RayleighAffine => &["c"],
            _ => &[],
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Form::ALL
            .into_iter()
            .find(|f| f.id() == s || f.id().split_once('-').map(|(p, _)| p) == Some(s))
            .ok_or_else(|| Error::InvalidShape(format!("unknown problem form {s:?}")))
    }
}

/// One optimization problem with its data.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance<K: Semifield> {
    /// minimize `x⁻Ax`.
    Rayleigh { a: TropMatrix<K> },
    /// minimize `q⁻x ⊕ x⁻p` subject to `g ≤ x ≤ h`.
    ChebyBox {
        p: TropVector<K>,
        q: TropVector<K>,
        g: TropVector<K>,
        h: TropVector<K>,
    },
    /// minimize `q⁻Ax ⊕ (Ax)⁻p` subject to `x ≥ g`.
    ChebyLower {
        a: TropMatrix<K>,
        p: TropVector<K>,
        q: TropVector<K>,
        g: TropVector<K>,
    },
    /// minimize `x⁻p ⊕ q⁻x` subject to `Bx ⊕ g ≤ x`, `x ≤ h`.
    ChebyIneqBox {
        b: TropMatrix<K>,
        p: TropVector<K>,
        q: TropVector<K>,
        g: TropVector<K>,
        h: TropVector<K>,
    },
    /// minimize `x⁻p ⊕ q⁻x` subject to `Bx ≤ x`.
    ChebyIneq {
        b: TropMatrix<K>,
        p: TropVector<K>,
        q: TropVector<K>,
    },
    /// minimize `q⁻Bx (Ax)⁻p`.
    SpanMin {
        a: TropMatrix<K>,
        b: TropMatrix<K>,
        p: TropVector<K>,
        q: TropVector<K>,
    },
    /// minimize `𝟙ᵀy y⁻𝟙` subject to `Cx = y`, `Dx ≤ x`.
    SpanMinConstrained { c: TropMatrix<K>, d: TropMatrix<K> },
    /// maximize `q⁻Bx (Ax)⁻p`.
    SpanMax {
        a: TropMatrix<K>,
        b: TropMatrix<K>,
        p: TropVector<K>,
        q: TropVector<K>,
    },
    /// maximize `q⁻Bx (Ax)⁻p` subject to `Cx ≤ x`.
    SpanMaxIneq {
        a: TropMatrix<K>,
        b: TropMatrix<K>,
        c: TropMatrix<K>,
        p: TropVector<K>,
        q: TropVector<K>,
    },
    /// maximize `q⁻Bx (Ax)⁻p` subject to `Cx = x`.
    SpanMaxEq {
        a: TropMatrix<K>,
        b: TropMatrix<K>,
        c: TropMatrix<K>,
        p: TropVector<K>,
        q: TropVector<K>,
    },
    /// minimize `x⁻Ax ⊕ x⁻p ⊕ q⁻x ⊕ c`.
    RayleighAffine {
        a: TropMatrix<K>,
        p: TropVector<K>,
        q: TropVector<K>,
        c: Scalar<K>,
    },
    /// minimize `x⁻Ax` subject to `Bx ⊕ g ≤ x`, `Cx ≤ h`.
    RayleighFull {
        a: TropMatrix<K>,
        b: TropMatrix<K>,
        c: TropMatrix<K>,
        g: TropVector<K>,
        h: TropVector<K>,
    },
    /// minimize `x⁻Ax` subject to `Bx ⊕ g ≤ x`.
    RayleighIneq {
        a: TropMatrix<K>,
        b: TropMatrix<K>,
        g: TropVector<K>,
    },
    /// minimize `x⁻Ax` subject to `g ≤ x ≤ h`.
    RayleighBox {
        a: TropMatrix<K>,
        g: TropVector<K>,
        h: TropVector<K>,
    },
    /// minimize `x⁻Ax ⊕ x⁻p` subject to `Bx ⊕ g ≤ x`.
    RayleighPIneq {
        a: TropMatrix<K>,
        b: TropMatrix<K>,
        p: TropVector<K>,
        g: TropVector<K>,
    },
}

fn shape_err(what: String) -> Error {
    Error::InvalidShape(what)
}

fn want_square<K: Semifield>(name: &str, m: &TropMatrix<K>, n: usize) -> Result<()> {
    if m.shape() != (n, n) {
        return Err(shape_err(format!(
            "{name} must be {n}x{n}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn want_cols<K: Semifield>(name: &str, m: &TropMatrix<K>, n: usize) -> Result<()> {
    if m.cols() != n {
        return Err(shape_err(format!("{name} must have {n} columns, got {}", m.cols())));
    }
    Ok(())
}

fn want_dim<K: Semifield>(name: &str, v: &TropVector<K>, n: usize) -> Result<()> {
    if v.dim() != n {
        return Err(shape_err(format!("{name} must have dimension {n}, got {}", v.dim())));
    }
    Ok(())
}

impl<K: Semifield> ProblemInstance<K> {
    pub fn form(&self) -> Form {
        use ProblemInstance as P;
        match self {
            P::Rayleigh { .. } => Form::Rayleigh,
            P::ChebyBox { .. } => Form::ChebyBox,
            P::ChebyLower { .. } => Form::ChebyLower,
            P::ChebyIneqBox { .. } => Form::ChebyIneqBox,
            P::ChebyIneq { .. } => Form::ChebyIneq,
            P::SpanMin { .. } => Form::SpanMin,
            P::SpanMinConstrained { .. } => Form::SpanMinConstrained,
            P::SpanMax { .. } => Form::SpanMax,
            P::SpanMaxIneq { .. } => Form::SpanMaxIneq,
            P::SpanMaxEq { .. } => Form::SpanMaxEq,
            P::RayleighAffine { .. } => Form::RayleighAffine,
            P::RayleighFull { .. } => Form::RayleighFull,
            P::RayleighIneq { .. } => Form::RayleighIneq,
            P::RayleighBox { .. } => Form::RayleighBox,
            P::RayleighPIneq { .. } => Form::RayleighPIneq,
        }
    }

    pub fn sense(&self) -> Sense {
        self.form().sense()
    }

    /// Dimension of the decision vector `x`.
    pub fn dim(&self) -> usize {
        use ProblemInstance as P;
        match self {
            P::ChebyBox { p, .. } => p.dim(),
            P::ChebyIneqBox { b: m, .. }
            | P::ChebyIneq { b: m, .. }
            | P::SpanMinConstrained { d: m, .. }
            | P::Rayleigh { a: m }
            | P::ChebyLower { a: m, .. }
            | P::SpanMin { a: m, .. }
            | P::SpanMax { a: m, .. }
            | P::SpanMaxIneq { a: m, .. }
            | P::SpanMaxEq { a: m, .. }
            | P::RayleighAffine { a: m, .. }
            | P::RayleighFull { a: m, .. }
            | P::RayleighIneq { a: m, .. }
            | P::RayleighBox { a: m, .. }
            | P::RayleighPIneq { a: m, .. } => m.cols(),
        }
    }

    /// Checks that all arrays have consistent shapes for the form.
    pub fn validate(&self) -> Result<()> {
        use ProblemInstance as P;
        let n = self.dim();
        match self {
            P::Rayleigh { a } => want_square("A", a, n),
            P::ChebyBox { p, q, g, h } => {
                want_dim("q", q, n)?;
                want_dim("g", g, n)?;
                want_dim("h", h, n)?;
                want_dim("p", p, n)
            }
            P::ChebyLower { a, p, q, g } => {
                want_dim("p", p, a.rows())?;
                want_dim("q", q, a.rows())?;
                want_dim("g", g, n)
            }
            P::ChebyIneqBox { b, p, q, g, h } => {
                want_square("B", b, n)?;
                for (name, v) in [("p", p), ("q", q), ("g", g), ("h", h)] {
                    want_dim(name, v, n)?;
                }
                Ok(())
            }
            P::ChebyIneq { b, p, q } => {
                want_square("B", b, n)?;
                want_dim("p", p, n)?;
                want_dim("q", q, n)
            }
            P::SpanMin { a, b, p, q } | P::SpanMax { a, b, p, q } => {
                want_cols("B", b, n)?;
                want_dim("p", p, a.rows())?;
                want_dim("q", q, b.rows())
            }
            P::SpanMinConstrained { c, d } => {
                want_square("D", d, n)?;
                want_cols("C", c, n)
            }
            P::SpanMaxIneq { a, b, c, p, q } | P::SpanMaxEq { a, b, c, p, q } => {
                want_cols("B", b, n)?;
                want_square("C", c, n)?;
                want_dim("p", p, a.rows())?;
                want_dim("q", q, b.rows())
            }
            P::RayleighAffine { a, p, q, .. } => {
                want_square("A", a, n)?;
                want_dim("p", p, n)?;
                want_dim("q", q, n)
            }
            P::RayleighFull { a, b, c, g, h } => {
                want_square("A", a, n)?;
                want_square("B", b, n)?;
                want_cols("C", c, n)?;
                want_dim("g", g, n)?;
                want_dim("h", h, c.rows())
            }
            P::RayleighIneq { a, b, g } => {
                want_square("A", a, n)?;
                want_square("B", b, n)?;
                want_dim("g", g, n)
            }
            P::RayleighBox { a, g, h } => {
                want_square("A", a, n)?;
                want_dim("g", g, n)?;
                want_dim("h", h, n)
            }
            P::RayleighPIneq { a, b, p, g } => {
                want_square("A", a, n)?;
                want_square("B", b, n)?;
                want_dim("p", p, n)?;
                want_dim("g", g, n)
            }
        }
    }

    /// Named matrices, in the order of [`Form::matrices`].
    pub fn matrices(&self) -> Vec<(&'static str, &TropMatrix<K>)> {
        use ProblemInstance as P;
        match self {
            P::Rayleigh { a } | P::RayleighAffine { a, .. } | P::RayleighBox { a, .. } => {
                vec![("A", a)]
            }
            P::ChebyBox { .. } => vec![],
            P::ChebyLower { a, .. } => vec![("A", a)],
            P::ChebyIneqBox { b, .. } | P::ChebyIneq { b, .. } => vec![("B", b)],
            P::SpanMin { a, b, .. } | P::SpanMax { a, b, .. } => vec![("A", a), ("B", b)],
            P::SpanMinConstrained { c, d } => vec![("C", c), ("D", d)],
            P::SpanMaxIneq { a, b, c, .. }
            | P::SpanMaxEq { a, b, c, .. }
            | P::RayleighFull { a, b, c, .. } => vec![("A", a), ("B", b), ("C", c)],
            P::RayleighIneq { a, b, .. } | P::RayleighPIneq { a, b, .. } => {
                vec![("A", a), ("B", b)]
            }
        }
    }

    /// Named vectors, in the order of [`Form::vectors`].
    pub fn vectors(&self) -> Vec<(&'static str, &TropVector<K>)> {
        use ProblemInstance as P;
        match self {
            P::Rayleigh { .. } | P::SpanMinConstrained { .. } => vec![],
            P::ChebyBox { p, q, g, h } | P::ChebyIneqBox { p, q, g, h, .. } => {
                vec![("p", p), ("q", q), ("g", g), ("h", h)]
            }
            P::ChebyLower { p, q, g, .. } => vec![("p", p), ("q", q), ("g", g)],
            P::ChebyIneq { p, q, .. }
            | P::SpanMin { p, q, .. }
            | P::SpanMax { p, q, .. }
            | P::SpanMaxIneq { p, q, .. }
            | P::SpanMaxEq { p, q, .. }
            | P::RayleighAffine { p, q, .. } => vec![("p", p), ("q", q)],
            P::RayleighFull { g, h, .. } | P::RayleighBox { g, h, .. } => {
                vec![("g", g), ("h", h)]
            }
            P::RayleighIneq { g, .. } => vec![("g", g)],
            P::RayleighPIneq { p, g, .. } => vec![("p", p), ("g", g)],
        }
    }

    /// Named scalars, in the order of [`Form::scalars`].
    pub fn scalars(&self) -> Vec<(&'static str, Scalar<K>)> {
        match self {
            ProblemInstance::RayleighAffine { c, .. } => vec![("c", *c)],
            _ => vec![],
        }
    }

    /// Every finite constant appearing in the data.
    pub fn constants(&self) -> Vec<K::Value> {
        let mut out = Vec::new();
        for (_, m) in self.matrices() {
            out.extend(m.entries().iter().filter_map(Scalar::value));
        }
        for (_, v) in self.vectors() {
            out.extend(v.iter().filter_map(|s| s.value()));
        }
        for (_, s) in self.scalars() {
            out.extend(s.value());
        }
        out
    }

    /// Applies `f` to every scalar of the data, keeping the form.
    pub fn map<L: Semifield>(&self, f: impl Fn(Scalar<K>) -> Scalar<L>) -> ProblemInstance<L> {
        use ProblemInstance as P;
        let m = |x: &TropMatrix<K>| x.map(&f);
        let v = |x: &TropVector<K>| x.map(&f);
        match self {
            P::Rayleigh { a } => P::Rayleigh { a: m(a) },
            P::ChebyBox { p, q, g, h } => P::ChebyBox {
                p: v(p),
                q: v(q),
                g: v(g),
                h: v(h),
            },
            P::ChebyLower { a, p, q, g } => P::ChebyLower {
                a: m(a),
                p: v(p),
                q: v(q),
                g: v(g),
            },
            P::ChebyIneqBox { b, p, q, g, h } => P::ChebyIneqBox {
                b: m(b),
                p: v(p),
                q: v(q),
                g: v(g),
                h: v(h),
            },
            P::ChebyIneq { b, p, q } => P::ChebyIneq {
                b: m(b),
                p: v(p),
                q: v(q),
            },
            P::SpanMin { a, b, p, q } => P::SpanMin {
                a: m(a),
                b: m(b),
                p: v(p),
                q: v(q),
            },
            P::SpanMinConstrained { c, d } => P::SpanMinConstrained { c: m(c), d: m(d) },
            P::SpanMax { a, b, p, q } => P::SpanMax {
                a: m(a),
                b: m(b),
                p: v(p),
                q: v(q),
            },
            P::SpanMaxIneq { a, b, c, p, q } => P::SpanMaxIneq {
                a: m(a),
                b: m(b),
                c: m(c),
                p: v(p),
                q: v(q),
            },
            P::SpanMaxEq { a, b, c, p, q } => P::SpanMaxEq {
                a: m(a),
                b: m(b),
                c: m(c),
                p: v(p),
                q: v(q),
            },
            P::RayleighAffine { a, p, q, c } => P::RayleighAffine {
                a: m(a),
                p: v(p),
                q: v(q),
                c: f(*c),
            },
            P::RayleighFull { a, b, c, g, h } => P::RayleighFull {
                a: m(a),
                b: m(b),
                c: m(c),
                g: v(g),
                h: v(h),
            },
            P::RayleighIneq { a, b, g } => P::RayleighIneq {
                a: m(a),
                b: m(b),
                g: v(g),
            },
            P::RayleighBox { a, g, h } => P::RayleighBox {
                a: m(a),
                g: v(g),
                h: v(h),
            },
            P::RayleighPIneq { a, b, p, g } => P::RayleighPIneq {
                a: m(a),
                b: m(b),
                p: v(p),
                g: v(g),
            },
        }
    }
}

/// Assembles an instance from named fields; missing fields are schema errors.
pub struct InstanceBuilder<K: Semifield> {
    pub matrices: Vec<(String, TropMatrix<K>)>,
    pub vectors: Vec<(String, TropVector<K>)>,
    pub scalars: Vec<(String, Scalar<K>)>,
}

impl<K: Semifield> InstanceBuilder<K> {
    fn take_matrix(&mut self, name: &str) -> Result<TropMatrix<K>> {
        let i = self
            .matrices
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| shape_err(format!("missing matrix {name}")))?;
        Ok(self.matrices.swap_remove(i).1)
    }

    fn take_vector(&mut self, name: &str) -> Result<TropVector<K>> {
        let i = self
            .vectors
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| shape_err(format!("missing vector {name}")))?;
        Ok(self.vectors.swap_remove(i).1)
    }

    fn take_scalar(&mut self, name: &str) -> Result<Scalar<K>> {
        let i = self
            .scalars
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| shape_err(format!("missing scalar {name}")))?;
        Ok(self.scalars.swap_remove(i).1)
    }

    /// Builds and validates an instance of `form`.
    pub fn build(mut self, form: Form) -> Result<ProblemInstance<K>> {
        use ProblemInstance as P;
        let inst = match form {
            Form::Rayleigh => P::Rayleigh {
                a: self.take_matrix("A")?,
            },
            Form::ChebyBox => P::ChebyBox {
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
                g: self.take_vector("g")?,
                h: self.take_vector("h")?,
            },
            Form::ChebyLower => P::ChebyLower {
                a: self.take_matrix("A")?,
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
                g: self.take_vector("g")?,
            },
            Form::ChebyIneqBox => P::ChebyIneqBox {
                b: self.take_matrix("B")?,
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
                g: self.take_vector("g")?,
                h: self.take_vector("h")?,
            },
            Form::ChebyIneq => P::ChebyIneq {
                b: self.take_matrix("B")?,
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
            },
            Form::SpanMin => P::SpanMin {
                a: self.take_matrix("A")?,
                b: self.take_matrix("B")?,
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
            },
            Form::SpanMinConstrained => P::SpanMinConstrained {
                c: self.take_matrix("C")?,
                d: self.take_matrix("D")?,
            },
            Form::SpanMax => P::SpanMax {
                a: self.take_matrix("A")?,
                b: self.take_matrix("B")?,
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
            },
            Form::SpanMaxIneq => P::SpanMaxIneq {
                a: self.take_matrix("A")?,
                b: self.take_matrix("B")?,
                c: self.take_matrix("C")?,
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
            },
            Form::SpanMaxEq => P::SpanMaxEq {
                a: self.take_matrix("A")?,
                b: self.take_matrix("B")?,
                c: self.take_matrix("C")?,
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
            },
            Form::RayleighAffine => P::RayleighAffine {
                a: self.take_matrix("A")?,
                p: self.take_vector("p")?,
                q: self.take_vector("q")?,
                c: self.take_scalar("c")?,
            },
            Form::RayleighFull => P::RayleighFull {
                a: self.take_matrix("A")?,
                b: self.take_matrix("B")?,
                c: self.take_matrix("C")?,
                g: self.take_vector("g")?,
                h: self.take_vector("h")?,
            },
            Form::RayleighIneq => P::RayleighIneq {
                a: self.take_matrix("A")?,
                b: self.take_matrix("B")?,
                g: self.take_vector("g")?,
            },
            Form::RayleighBox => P::RayleighBox {
                a: self.take_matrix("A")?,
                g: self.take_vector("g")?,
                h: self.take_vector("h")?,
            },
            Form::RayleighPIneq => P::RayleighPIneq {
                a: self.take_matrix("A")?,
                b: self.take_matrix("B")?,
                p: self.take_vector("p")?,
                g: self.take_vector("g")?,
            },
        };
        let leftover: Vec<&str> = self
            .matrices
            .iter()
            .map(|(n, _)| n.as_str())
            .chain(self.vectors.iter().map(|(n, _)| n.as_str()))
            .chain(self.scalars.iter().map(|(n, _)| n.as_str()))
            .collect();
        if !leftover.is_empty() {
            return Err(shape_err(format!(
                "unexpected fields for {form}: {}",
                leftover.join(", ")
            )));
        }
        inst.validate()?;
        Ok(inst)
    }
}
