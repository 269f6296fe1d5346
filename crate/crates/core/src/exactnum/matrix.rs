use super::{Field, Rat};
use crate::error::{Error, Result};

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

pub type RatMatrix = Matrix<Rat>;

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![F::zero(); n * n];
        for i in 0..n {
            e[i * n + i] = F::one();
        }
        Matrix { rows: n, cols: n, entries: e }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut m: Vec<Vec<F>> = self.entries.chunks(n).map(<[F]>::to_vec).collect();
        let mut sign = false;
        let mut prev = F::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(p) => {
                        m.swap(k, p);
                        sign = !sign;
                    }
                    None => return Ok(F::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                    m[i][j] = t.div(&prev)?;
                }
                m[i][k] = F::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }
}

/// Exact determinant of a square matrix.
pub fn det_exact<F: Field>(m: &Matrix<F>) -> Result<F> {
    m.det()
}
