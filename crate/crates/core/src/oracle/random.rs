//! Random integer max-plus instances for property tests.

use rand::Rng;

use crate::semifield::{MaxPlus, Rational, Scalar};
use crate::solvers::{Form, ProblemInstance};
use crate::spectral::spectral_radius;
use crate::tropalg::{TropMatrix, TropVector};

type S = Scalar<MaxPlus>;
type M = TropMatrix<MaxPlus>;
type V = TropVector<MaxPlus>;

/// Shape and value range of generated data.
#[derive(Debug, Clone)]
pub struct DataRange {
    pub n_max: usize,
    /// Row bound for the rectangular matrices of the span and Chebyshev forms.
    pub m_max: usize,
    pub lo: i64,
    pub hi: i64,
    /// Probability that an entry allowed to be `𝟘` is `𝟘`.
    pub zero_prob: f64,
}

impl Default for DataRange {
    fn default() -> Self {
        DataRange {
            n_max: 3,
            m_max: 4,
            lo: -2,
            hi: 2,
            zero_prob: 0.25,
        }
    }
}

fn int(v: i64) -> S {
    Scalar::Finite(Rational::from_integer(v as i128))
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    range: &'a DataRange,
}

impl<R: Rng> Gen<'_, R> {
    fn finite(&mut self) -> S {
        int(self.rng.gen_range(self.range.lo..=self.range.hi))
    }

    fn entry(&mut self) -> S {
        if self.rng.gen_bool(self.range.zero_prob) {
            Scalar::Bottom
        } else {
            self.finite()
        }
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> M {
        M::from_fn(rows, cols, |_, _| self.entry())
    }

    fn full_matrix(&mut self, rows: usize, cols: usize) -> M {
        M::from_fn(rows, cols, |_, _| self.finite())
    }

    /// A random matrix with at least one finite entry in every row and column.
    fn regular_matrix(&mut self, rows: usize, cols: usize) -> M {
        let mut a = self.matrix(rows, cols);
        for i in 0..rows {
            if (0..cols).all(|j| a.get(i, j).is_zero()) {
                let j = self.rng.gen_range(0..cols);
                a.set(i, j, self.finite());
            }
        }
        for j in 0..cols {
            if (0..rows).all(|i| a.get(i, j).is_zero()) {
                let i = self.rng.gen_range(0..rows);
                a.set(i, j, self.finite());
            }
        }
        a
    }

    fn vector(&mut self, n: usize) -> V {
        V::from_fn(n, |_| self.entry())
    }

    fn regular(&mut self, n: usize) -> V {
        V::from_fn(n, |_| self.finite())
    }

    fn nonzero(&mut self, n: usize) -> V {
        let mut v = self.vector(n);
        if !v.is_nonzero() {
            let i = self.rng.gen_range(0..n);
            v.set(i, self.finite());
        }
        v
    }

    fn dims(&mut self) -> (usize, usize) {
        (self.rng.gen_range(1..=self.range.n_max), self.rng.gen_range(1..=self.range.m_max))
    }

    /// A matrix shifted by an integer so that its spectral radius is at most `𝟙`.
    fn contracting(&mut self, n: usize) -> M {
        let b = self.matrix(n, n);
        let shift = match spectral_radius(&b).unwrap() {
            Scalar::Finite(l) if l > Rational::from_integer(0) => l.ceil(),
            _ => Rational::from_integer(0),
        };
        b.scale(Scalar::Finite(-shift))
    }

    /// A matrix whose spectral radius is exactly `𝟙`, when the random draw
    /// allows it (integer radius); otherwise a plain random matrix.
    fn critical(&mut self, n: usize) -> M {
        let c = self.matrix(n, n);
        match spectral_radius(&c).unwrap() {
            Scalar::Finite(l) if l.is_integer() => c.scale(Scalar::Finite(-l)),
            _ => c,
        }
    }

    /// `v ⊗ δ` with random offsets `δ ≥ 𝟙`; `𝟘` entries become random.
    fn above(&mut self, v: &V) -> V {
        V::from_fn(v.dim(), |i| match v.get(i) {
            Scalar::Finite(x) => Scalar::Finite(x) * int(self.rng.gen_range(0..=2)),
            Scalar::Bottom => self.finite(),
        })
    }
}

/// A random instance of `form` with integer max-plus data.
///
/// With `shaped` set the data is adjusted toward the form's preconditions
/// (contracting constraint matrices, upper bounds above lower bounds), so
/// most draws are solvable; without it the data is left raw, which often
/// produces infeasible instances.
pub fn random_instance<R: Rng>(rng: &mut R, form: Form, range: &DataRange, shaped: bool) -> ProblemInstance<MaxPlus> {
    let mut gen = Gen { rng, range };
    let (n, m) = gen.dims();
    let constraint = |gen: &mut Gen<'_, R>, n: usize| {
        if shaped {
            gen.contracting(n)
        } else {
            let mut b = gen.matrix(n, n);
            if gen.rng.gen_bool(0.5) {
                b = b.scale(int(-1));
            }
            b
        }
    };
    use ProblemInstance as P;
    match form {
        Form::Rayleigh => P::Rayleigh { a: gen.matrix(n, n) },
        Form::ChebyBox => {
            let g = gen.vector(n);
            let h = if shaped { gen.above(&g) } else { gen.regular(n) };
            P::ChebyBox {
                p: gen.regular(n),
                q: gen.regular(n),
                g,
                h,
            }
        }
        Form::ChebyLower => P::ChebyLower {
            a: gen.regular_matrix(m, n),
            p: gen.regular(m),
            q: gen.regular(m),
            g: gen.vector(n),
        },
        Form::ChebyIneqBox => {
            let b = constraint(&mut gen, n);
            let g = gen.vector(n);
            let h = match (shaped, b.kleene_star()) {
                (true, Ok(star)) => gen.above(&star.mul_vec(&g).unwrap()),
                _ => gen.regular(n),
            };
            P::ChebyIneqBox {
                b,
                p: gen.nonzero(n),
                q: gen.regular(n),
                g,
                h,
            }
        }
        Form::ChebyIneq => P::ChebyIneq {
            b: constraint(&mut gen, n),
            p: gen.nonzero(n),
            q: gen.regular(n),
        },
        Form::SpanMin => {
            let m2 = gen.rng.gen_range(1..=range.m_max);
            P::SpanMin {
                a: gen.regular_matrix(m, n),
                b: gen.regular_matrix(m2, n),
                p: gen.nonzero(m),
                q: gen.regular(m2),
            }
        }
        Form::SpanMinConstrained => P::SpanMinConstrained {
            c: gen.regular_matrix(m, n),
            d: constraint(&mut gen, n),
        },
        Form::SpanMax => {
            let m2 = gen.rng.gen_range(1..=range.m_max);
            P::SpanMax {
                a: gen.full_matrix(m, n),
                b: gen.regular_matrix(m2, n),
                p: gen.regular(m),
                q: gen.regular(m2),
            }
        }
        Form::SpanMaxIneq | Form::SpanMaxEq => {
            let m2 = gen.rng.gen_range(1..=range.m_max);
            let a = gen.full_matrix(m, n);
            let b = gen.regular_matrix(m2, n);
            let c = match (form, shaped) {
                (Form::SpanMaxIneq, _) => constraint(&mut gen, n),
                (_, true) => gen.critical(n),
                (_, false) => gen.matrix(n, n),
            };
            let (p, q) = (gen.regular(m), gen.regular(m2));
            if form == Form::SpanMaxIneq {
                P::SpanMaxIneq { a, b, c, p, q }
            } else {
                P::SpanMaxEq { a, b, c, p, q }
            }
        }
        Form::RayleighAffine => {
            let c = gen.entry();
            P::RayleighAffine {
                a: gen.matrix(n, n),
                p: gen.vector(n),
                q: gen.regular(n),
                c,
            }
        }
        Form::RayleighFull => {
            let a = gen.matrix(n, n);
            let b = constraint(&mut gen, n);
            let c = gen.regular_matrix(m, n);
            let g = gen.vector(n);
            let h = match (shaped, b.kleene_star()) {
                (true, Ok(star)) => gen.above(&c.mul(&star).unwrap().mul_vec(&g).unwrap()),
                _ => gen.regular(m),
            };
            P::RayleighFull { a, b, c, g, h }
        }
        Form::RayleighIneq => P::RayleighIneq {
            a: gen.matrix(n, n),
            b: constraint(&mut gen, n),
            g: gen.vector(n),
        },
        Form::RayleighBox => {
            let a = gen.matrix(n, n);
            let g = gen.vector(n);
            let h = if shaped { gen.above(&g) } else { gen.regular(n) };
            P::RayleighBox { a, g, h }
        }
        Form::RayleighPIneq => P::RayleighPIneq {
            a: gen.matrix(n, n),
            b: constraint(&mut gen, n),
            p: gen.vector(n),
            g: gen.vector(n),
        },
    }
}
