use std::fmt;

use super::{CoeffError, RatFunc, Rational};

/// Dense row-major matrix over ℚ(x). Ranks in this crate are small, so no
/// sparsity is exploited.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoeffMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

impl CoeffMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CoeffMatrix { rows, cols, entries: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        CoeffMatrix::from_fn(n, n, |i, j| if i == j { RatFunc::one() } else { RatFunc::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CoeffMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self, CoeffError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CoeffError::ShapeMismatch("ragged rows".into()));
        }
        Ok(CoeffMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        let data = rows.iter().map(|row| row.iter().map(|&v| RatFunc::from_int(v)).collect()).collect();
        CoeffMatrix::from_rows(data).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: RatFunc) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFunc> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        CoeffMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        CoeffMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.map(|e| e * c)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let c = Rational::from_integer(c.into());
        self.map(|e| e.scale(&c))
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    pub fn add(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_shape(other, "add")?;
        Ok(CoeffMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CoeffError> {
        self.same_shape(other, "sub")?;
        Ok(CoeffMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CoeffError> {
        if self.cols != other.rows {
            return Err(CoeffError::ShapeMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(CoeffMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RatFunc::zero();
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    pub fn apply(&self, v: &[RatFunc]) -> Result<Vec<RatFunc>, CoeffError> {
        if v.len() != self.cols {
            return Err(CoeffError::ShapeMismatch(format!("apply {}x{} to {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect())
    }

    /// `Mᵀ = −M`, which also forces a zero diagonal.
    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<(), CoeffError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoeffError::ShapeMismatch(format!(
                "{op} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<(), CoeffError> {
        if !self.is_square() {
            return Err(CoeffError::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        Ok(())
    }

    /// Determinant by fraction-free Bareiss elimination with row pivoting.
    pub fn determinant(&self) -> Result<RatFunc, CoeffError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(RatFunc::one());
        }
        let mut a: Vec<Vec<RatFunc>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = false;
        let mut prev = RatFunc::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = !sign;
                    }
                    None => return Ok(RatFunc::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = &num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if sign { -det } else { det })
    }

    /// Inverse by Gauss–Jordan elimination over ℚ(x).
    pub fn inverse(&self) -> Result<Self, CoeffError> {
        self.require_square()?;
        let n = self.rows;
        let mut a: Vec<Vec<RatFunc>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<RatFunc>> = (0..n).map(|i| CoeffMatrix::identity(n).row(i).to_vec()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(CoeffError::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].inverse()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &p;
                inv[col][j] = &inv[col][j] * &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - &t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
        CoeffMatrix::from_rows(inv)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, CoeffError> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.evaluate(point)).collect()).collect()
    }

    pub fn display_with(&self, vars: &[String]) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.display_with(vars)).collect()).collect()
    }
}

impl fmt::Display for CoeffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
