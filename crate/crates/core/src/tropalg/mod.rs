//! Dense matrices and vectors over an idempotent semifield.

mod closure;

pub use closure::{solve_fixpoint_equation, solve_order_inequality};

use std::fmt;

use crate::error::{Error, Result};
use crate::semifield::{Scalar, Semifield};

/// Row/column regularity flags of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityClass {
    pub row_regular: bool,
    pub column_regular: bool,
    pub regular: bool,
}

/// A `rows × cols` matrix stored row-major, zero entries included.
pub struct TropMatrix<K: Semifield> {
    rows: usize,
    cols: usize,
    data: Vec<Scalar<K>>,
}

impl<K: Semifield> Clone for TropMatrix<K> {
    fn clone(&self) -> Self {
        TropMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }
}

impl<K: Semifield> PartialEq for TropMatrix<K> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<K: Semifield> fmt::Debug for TropMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_vecs()).finish()
    }
}

impl<K: Semifield> TropMatrix<K> {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar<K>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!("{rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(TropMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar<K>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidShape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar<K>) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let data = (0..rows * cols).map(|idx| f(idx / cols, idx % cols)).collect();
        TropMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Scalar::Bottom)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::Bottom })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar<K> {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar<K>) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Scalar<K>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar<K>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar<K>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> TropVector<K> {
        TropVector {
            entries: (0..self.rows).map(|i| self.get(i, j)).collect(),
        }
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidShape("no columns selected".into()));
        }
        Ok(Self::from_fn(self.rows, columns.len(), |i, j| self.get(i, columns[j])))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map<L: Semifield>(&self, f: impl Fn(Scalar<K>) -> Scalar<L>) -> TropMatrix<L> {
        TropMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                op,
                lhs: self.shape(),
                rhs: other.shape(),
            })
        }
    }

    /// Entrywise `⊕`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(TropMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    /// Matrix product with `⊕` as sum and `⊗` as product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                lhs: self.shape(),
                rhs: other.shape(),
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn scale(&self, c: Scalar<K>) -> Self {
        TropMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| c * a).collect(),
        }
    }

    pub fn mul_vec(&self, x: &TropVector<K>) -> Result<TropVector<K>> {
        if self.cols != x.dim() {
            return Err(Error::ShapeMismatch {
                op: "mul_vec",
                lhs: self.shape(),
                rhs: (x.dim(), 1),
            });
        }
        Ok(TropVector {
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().zip(&x.entries).map(|(&a, &b)| a * b).sum())
                .collect(),
        })
    }

    /// `A⁻`: transpose with every finite entry inverted.
    pub fn conj(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::AllZeroMatrix);
        }
        Ok(Self::from_fn(self.cols, self.rows, |i, j| {
            self.get(j, i).inverse().unwrap_or(Scalar::Bottom)
        }))
    }

    /// `‖A‖`, the sum of all entries.
    pub fn norm(&self) -> Scalar<K> {
        self.data.iter().copied().sum()
    }

    fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn trace(&self) -> Result<Scalar<K>> {
        self.check_square()?;
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// `Tr(A) = tr A ⊕ tr A² ⊕ ⋯ ⊕ tr Aⁿ`.
    pub fn tr_poly(&self) -> Result<Scalar<K>> {
        self.check_square()?;
        let mut power = self.clone();
        let mut total = power.trace()?;
        for _ in 1..self.rows {
            power = power.mul(self)?;
            total = total + power.trace()?;
        }
        Ok(total)
    }

    /// `Aᵏ`, with `A⁰ = I`.
    pub fn pow(&self, k: usize) -> Result<Self> {
        self.check_square()?;
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Entrywise semifield order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.same_shape(other, "leq")?;
        Ok(self.data.iter().zip(&other.data).all(|(a, b)| a.leq(b)))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.shape() == other.shape()
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }

    pub fn classify_regularity(&self) -> RegularityClass {
        let row_regular = (0..self.rows).all(|i| self.row(i).iter().any(Scalar::is_finite));
        let column_regular =
            (0..self.cols).all(|j| (0..self.rows).any(|i| self.get(i, j).is_finite()));
        RegularityClass {
            row_regular,
            column_regular,
            regular: row_regular && column_regular,
        }
    }

    /// The single entry of a 1×1 matrix.
    pub fn to_scalar(&self) -> Result<Scalar<K>> {
        if self.shape() == (1, 1) {
            Ok(self.data[0])
        } else {
            Err(Error::ShapeMismatch {
                op: "to_scalar",
                lhs: self.shape(),
                rhs: (1, 1),
            })
        }
    }
}

/// A column vector.
pub struct TropVector<K: Semifield> {
    entries: Vec<Scalar<K>>,
}

impl<K: Semifield> Clone for TropVector<K> {
    fn clone(&self) -> Self {
        TropVector {
            entries: self.entries.clone(),
        }
    }
}

impl<K: Semifield> PartialEq for TropVector<K> {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl<K: Semifield> fmt::Debug for TropVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

impl<K: Semifield> TropVector<K> {
    pub fn new(entries: Vec<Scalar<K>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidShape("empty vector".into()));
        }
        Ok(TropVector { entries })
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> Scalar<K>) -> Self {
        assert!(dim > 0, "empty vector");
        TropVector {
            entries: (0..dim).map(f).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_| Scalar::Bottom)
    }

    /// The vector `𝟙 = (𝟙, …, 𝟙)ᵀ`.
    pub fn ones(dim: usize) -> Self {
        Self::from_fn(dim, |_| Scalar::one())
    }

    pub fn from_column(m: &TropMatrix<K>) -> Result<Self> {
        if m.cols() != 1 {
            return Err(Error::InvalidShape(format!("{}x{} is not a column", m.rows, m.cols)));
        }
        Ok(m.column(0))
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Scalar<K> {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: Scalar<K>) {
        self.entries[i] = value;
    }

    pub fn entries(&self) -> &[Scalar<K>] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = Scalar<K>> + '_ {
        self.entries.iter().copied()
    }

    pub fn map<L: Semifield>(&self, f: impl Fn(Scalar<K>) -> Scalar<L>) -> TropVector<L> {
        TropVector {
            entries: self.entries.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn is_regular(&self) -> bool {
        self.entries.iter().all(Scalar::is_finite)
    }

    pub fn is_nonzero(&self) -> bool {
        self.entries.iter().any(Scalar::is_finite)
    }

    pub fn as_column(&self) -> TropMatrix<K> {
        TropMatrix {
            rows: self.dim(),
            cols: 1,
            data: self.entries.clone(),
        }
    }

    /// `x⁻` as a 1×n row matrix.
    pub fn conj(&self) -> Result<TropMatrix<K>> {
        self.as_column().conj()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch {
                op: "add",
                lhs: (self.dim(), 1),
                rhs: (other.dim(), 1),
            });
        }
        Ok(TropVector {
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: Scalar<K>) -> Self {
        TropVector {
            entries: self.entries.iter().map(|&a| c * a).collect(),
        }
    }

    /// Componentwise semifield order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch {
                op: "leq",
                lhs: (self.dim(), 1),
                rhs: (other.dim(), 1),
            });
        }
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a.leq(b)))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim() == other.dim()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.approx_eq(b))
    }

    pub fn norm(&self) -> Scalar<K> {
        self.iter().sum()
    }
}
