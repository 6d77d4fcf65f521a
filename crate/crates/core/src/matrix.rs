//! Dense matrices over `{+1, -1}` with exact integer arithmetic.

use std::fmt;

use crate::error::{Error, Result};

/// A row-major matrix whose entries are all `+1` or `-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PmMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i8>,
}

impl PmMatrix {
    /// All-`+1` matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        PmMatrix {
            rows,
            cols,
            data: vec![1; rows * cols],
        }
    }

    /// Builds a matrix from explicit rows, rejecting ragged input and any
    /// entry other than `±1`.
    pub fn from_rows<R: AsRef<[i8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != 1 && v != -1 {
                    return Err(Error::NotSign {
                        row: i,
                        col: j,
                        value: v as i64,
                    });
                }
            }
            data.extend_from_slice(row);
        }
        Ok(PmMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from an entry function; `f` must return `±1`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert!(v == 1 || v == -1);
                data.push(v);
            }
        }
        PmMatrix { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i8) {
        debug_assert!(v == 1 || v == -1);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[i8]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = -*v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self.data[i * self.cols + j] = -self.data[i * self.cols + j];
        }
    }

    /// Inner product of rows `i` and `j`.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        dot(self.row(i), self.row(j))
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        self.row(i).iter().map(|&v| v as i64).sum()
    }

    /// `M·Mᵀ` as a row-major `rows × rows` integer matrix.
    pub fn gram(&self) -> Vec<i64> {
        let n = self.rows;
        let mut g = vec![0i64; n * n];
        for i in 0..n {
            for j in i..n {
                let d = self.dot(i, j);
                g[i * n + j] = d;
                g[j * n + i] = d;
            }
        }
        g
    }

    /// Matrix made of the listed rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> PmMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        PmMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Drops column `j`.
    pub fn without_col(&self, j: usize) -> PmMatrix {
        assert!(j < self.cols);
        let cols = self.cols - 1;
        let mut data = Vec::with_capacity(self.rows * cols);
        for row in self.iter_rows() {
            data.extend_from_slice(&row[..j]);
            data.extend_from_slice(&row[j + 1..]);
        }
        PmMatrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &PmMatrix) -> PmMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        PmMatrix::from_fn(rows, cols, |i, j| {
            self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols)
        })
    }

    /// Appends the rows of `other` below `self`.
    pub fn vstack(&self, other: &PmMatrix) -> Result<PmMatrix> {
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(Error::Shape(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let cols = if self.rows == 0 {
            other.cols
        } else {
            self.cols
        };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(PmMatrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    /// Row rendered with `+` and `-`.
    pub fn row_string(&self, i: usize) -> String {
        sign_string(self.row(i))
    }
}

impl fmt::Debug for PmMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PmMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row_string(i))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[i8], b: &[i8]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| (x * y) as i64).sum()
}

/// Entry-wise (Schur) product of two sign vectors.
pub fn schur(a: &[i8], b: &[i8]) -> Vec<i8> {
    a.iter().zip(b).map(|(&x, &y)| x * y).collect()
}

pub fn sign_string(row: &[i8]) -> String {
    row.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect()
}
