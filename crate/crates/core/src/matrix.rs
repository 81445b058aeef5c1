//! Dense matrices over `ExactComplex` and linear substitutions.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::ExactComplex;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactComplex>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ExactComplex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = ExactComplex::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactComplex>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[ExactComplex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactComplex>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ExactComplex]) -> Result<Vec<ExactComplex>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("matrix-vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(ExactComplex::zero(), |acc, (a, b)| acc + a * b))
            .collect())
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].inv().expect("nonzero pivot");
            for j in 0..n {
                a[(col, j)] *= &p;
                inv[(col, j)] *= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let da = &factor * &a[(col, j)];
                    a[(r, j)] -= &da;
                    let di = &factor * &inv[(col, j)];
                    inv[(r, j)] -= &di;
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = ExactComplex;
    fn index(&self, (i, j): (usize, usize)) -> &ExactComplex {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactComplex {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (k, v) in self.row(i).iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Linear substitution operator `u(x) ↦ u(Mx)`.
///
/// Row `j` of `M` expresses the `j`-th argument of the input function in the
/// variables of the result. The stored block is square and stands for the
/// infinite matrix that continues with the identity; an `m×n` input is
/// zero-padded to `max(m, n)` first. The stored block is trimmed so that two
/// substitutions acting identically compare equal, and the identity
/// substitution has dimension 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinearSubst {
    block: Matrix,
}

impl LinearSubst {
    pub fn identity() -> Self {
        LinearSubst { block: Matrix::identity(0) }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let n = m.rows().max(m.cols());
        let mut block = Matrix::zeros(n, n);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                block[(i, j)] = m[(i, j)].clone();
            }
        }
        LinearSubst { block }.trimmed()
    }

    pub fn from_rows(rows: Vec<Vec<ExactComplex>>) -> Result<Self> {
        Ok(LinearSubst::from_matrix(&Matrix::from_rows(rows)?))
    }

    /// Integer convenience constructor.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| ExactComplex::from(v)).collect()).collect();
        LinearSubst::from_rows(rows).expect("rectangular literal")
    }

    /// `E_i`: the identity with row `i` zeroed, i.e. evaluation at `x_i = 0`.
    pub fn evaluation(i: usize) -> Self {
        let mut m = Matrix::identity(i + 1);
        m[(i, i)] = ExactComplex::zero();
        LinearSubst::from_matrix(&m)
    }

    /// Diagonal substitution with the given leading entries.
    pub fn diagonal(entries: &[ExactComplex]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        LinearSubst::from_matrix(&m)
    }

    fn trimmed(mut self) -> Self {
        loop {
            let n = self.block.rows();
            if n == 0 {
                return self;
            }
            let last = n - 1;
            let trivial = (0..n).all(|k| {
                let want = if k == last { ExactComplex::one() } else { ExactComplex::zero() };
                self.block[(last, k)] == want && self.block[(k, last)] == want
            });
            if !trivial {
                return self;
            }
            let mut m = Matrix::zeros(last, last);
            for i in 0..last {
                for j in 0..last {
                    m[(i, j)] = self.block[(i, j)].clone();
                }
            }
            self.block = m;
        }
    }

    /// Size of the stored block; variables at or beyond it pass through.
    pub fn dim(&self) -> usize {
        self.block.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.dim() == 0
    }

    pub fn entry(&self, i: usize, j: usize) -> ExactComplex {
        let n = self.dim();
        if i < n && j < n {
            self.block[(i, j)].clone()
        } else if i == j {
            ExactComplex::one()
        } else {
            ExactComplex::zero()
        }
    }

    /// Nonzero entries of row `i` as `(column, value)`.
    pub fn row_terms(&self, i: usize) -> Vec<(usize, ExactComplex)> {
        if i >= self.dim() {
            return vec![(i, ExactComplex::one())];
        }
        self.block.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect()
    }

    /// Nonzero entries of column `j` as `(row, value)`.
    pub fn column_terms(&self, j: usize) -> Vec<(usize, ExactComplex)> {
        if j >= self.dim() {
            return vec![(j, ExactComplex::one())];
        }
        (0..self.dim()).map(|i| (i, self.block[(i, j)].clone())).filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_terms(i).is_empty()
    }

    pub fn column_is_zero(&self, j: usize) -> bool {
        self.column_terms(j).is_empty()
    }

    /// `Some(c)` when row `i` and column `i` both equal `c·e_i`, `c ≠ 0`: the
    /// substitution then scales `x_i` and leaves every other argument free of
    /// `x_i`.
    pub fn isolated_scale(&self, i: usize) -> Option<ExactComplex> {
        let row = self.row_terms(i);
        let col = self.column_terms(i);
        match (row.as_slice(), col.as_slice()) {
            ([(j, c)], [(k, _)]) if *j == i && *k == i => Some(c.clone()),
            _ => None,
        }
    }

    /// The square block padded (with identity) to size `n ≥ dim()`.
    pub fn to_matrix(&self, n: usize) -> Matrix {
        let n = n.max(self.dim());
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.entry(i, j);
            }
        }
        m
    }

    pub fn block(&self) -> &Matrix {
        &self.block
    }

    /// Matrix product `self · rhs`. As operators, `Subst(M)·Subst(N)` acts
    /// as `Subst(N·M)`.
    pub fn mul(&self, rhs: &LinearSubst) -> LinearSubst {
        let n = self.dim().max(rhs.dim());
        let prod = self.to_matrix(n).mul(&rhs.to_matrix(n)).expect("square blocks");
        LinearSubst { block: prod }.trimmed()
    }

    pub fn inverse(&self) -> Result<LinearSubst> {
        Ok(LinearSubst { block: self.block.inverse()? }.trimmed())
    }
}

impl fmt::Display for LinearSubst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subst{}", self.block)
    }
}
