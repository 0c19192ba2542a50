use std::fmt;

use num_traits::{One, Zero};

use super::scalar::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| super::rat(x)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!(
                    "column {j} has length {} instead of {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if !x.is_zero() {
                    t.data[c * self.rows + r] = x.clone();
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * out.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn zip_with(&self, other: &RatMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    fn to_row_vecs(&self) -> Vec<Vec<Rational>> {
        if self.cols == 0 {
            return vec![Vec::new(); self.rows];
        }
        self.data.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut rows = self.to_row_vecs();
        let pivots = eliminate(&mut rows, self.cols, true);
        let data = rows.into_iter().flatten().collect();
        (
            RatMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_row_vecs();
        eliminate(&mut rows, self.cols, false).len()
    }

    /// Exact basis of the null space, `cols - rank` vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    let x = r.get(i, f);
                    if !x.is_zero() {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Indices of a maximal set of linearly independent columns (the pivot columns).
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut rows = self.to_row_vecs();
        eliminate(&mut rows, self.cols, false)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let pivots = eliminate(&mut rows, n, true);
        if pivots.len() != n {
            return None;
        }
        let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Some(RatMatrix {
            rows: n,
            cols: n,
            data,
        })
    }

    /// Solves the normal equations `mᵀm x = mᵀb` exactly.
    pub fn solve_least_squares_exact(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mt = self.transpose();
        let gram = mt.mul(self)?;
        let rhs = mt.mul_vec(b)?;
        gram.solve_square(&rhs).ok_or(Error::SingularNormalEquations)
    }

    /// Unique solution of a square nonsingular system, `None` if singular.
    pub fn solve_square(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        if self.rows != self.cols || b.len() != self.rows {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let pivots = eliminate(&mut rows, n, true);
        if pivots.len() != n {
            return None;
        }
        Some(rows.into_iter().map(|mut r| r.pop().unwrap()).collect())
    }

    /// Minimum-norm solution of a consistent system `self · x = b`, or `None`
    /// when the system has no solution.
    pub fn solve_min_norm(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        if b.len() != self.rows {
            return None;
        }
        let n = self.cols;
        let mut rows: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let pivots = eliminate(&mut rows, n + 1, true);
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![Rational::zero(); n];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][n].clone();
        }
        let kernel = self.kernel_basis();
        if kernel.is_empty() {
            return Some(x);
        }
        // x - K (KᵀK)⁻¹ Kᵀ x
        let k = RatMatrix::from_columns(n, &kernel).ok()?;
        let kt = k.transpose();
        let coeffs = kt.mul(&k).ok()?.solve_square(&kt.mul_vec(&x).ok()?)?;
        let shift = k.mul_vec(&coeffs).ok()?;
        Some(x.iter().zip(&shift).map(|(a, s)| a - s).collect())
    }

    /// Orthogonal projector onto the span of this matrix's columns.
    pub fn column_space_projector(&self) -> RatMatrix {
        let cols = self.independent_columns();
        if cols.is_empty() {
            return RatMatrix::zeros(self.rows, self.rows);
        }
        let basis: Vec<Vec<Rational>> = cols.iter().map(|&c| self.column(c)).collect();
        let b = RatMatrix::from_columns(self.rows, &basis).expect("consistent column lengths");
        let bt = b.transpose();
        let gram_inv = bt
            .mul(&b)
            .expect("shapes agree")
            .inverse()
            .expect("independent columns have an invertible Gram matrix");
        b.mul(&gram_inv).and_then(|m| m.mul(&bt)).expect("shapes agree")
    }
}

/// Gauss–Jordan elimination over the first `pivot_cols` columns of `rows`.
/// With `reduce`, pivots are normalized to one and cleared above as well,
/// giving the reduced form. Returns the pivot columns.
fn eliminate(rows: &mut [Vec<Rational>], pivot_cols: usize, reduce: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..pivot_cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let mut pivot_row = std::mem::take(&mut rows[next]);
        if reduce {
            let inv = pivot_row[col].recip();
            for x in pivot_row.iter_mut().skip(col) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<usize> = (col..pivot_row.len())
            .filter(|&c| !pivot_row[c].is_zero())
            .collect();
        let pivot = pivot_row[col].clone();
        let others = if reduce {
            0..rows.len()
        } else {
            next + 1..rows.len()
        };
        for r in others {
            if r == next {
                continue;
            }
            let row = &mut rows[r];
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot;
            for &c in &support {
                let delta = &factor * &pivot_row[c];
                row[c] -= delta;
            }
        }
        rows[next] = pivot_row;
        pivots.push(col);
        next += 1;
    }
    pivots
}
