//! Dense matrices and their decimal-text serialization.

use std::io::{BufRead, Write};

use super::real::Real;
use crate::error::{Error, Result};

/// Dense symmetric matrix stored as its lower triangle.
///
/// Symmetry is structural: `get(i, j)` and `get(j, i)` read the same cell.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    hi * (hi + 1) / 2 + lo
}

impl<T: Real> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![T::zero(); n * (n + 1) / 2],
        }
    }

    /// Builds from `f(i, j)` evaluated for `i >= j` only.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                data.push(f(i, j));
            }
        }
        SymMatrix { n, data }
    }

    /// Builds from a full square array; the upper triangle is ignored.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must be square"));
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j].clone()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[packed(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[packed(i, j)] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Leading principal `k × k` submatrix.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k.min(self.n), |i, j| self.get(i, j).clone())
    }

    pub fn frobenius_norm(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            for j in 0..=i {
                let v = self.get(i, j).sqr();
                if i == j {
                    s += v;
                } else {
                    s += v.clone() + v;
                }
            }
        }
        s.sqrt()
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let mut acc = T::zero();
                for (j, vj) in v.iter().enumerate() {
                    acc += self.get(i, j).clone() * vj;
                }
                acc
            })
            .collect()
    }

    pub fn map<U: Real>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Writes one row per line, entries space separated at full precision.
    pub fn write_decimal<W: Write>(&self, mut w: W) -> Result<()> {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_decimal()).collect();
            writeln!(w, "{}", row.join(" "))?;
        }
        Ok(())
    }

    /// Reads the format produced by [`SymMatrix::write_decimal`].
    ///
    /// Blank lines and lines starting with `#` are skipped. The matrix
    /// must be square and symmetric.
    pub fn read_decimal<R: BufRead>(r: R) -> Result<Self> {
        let rows = read_rows::<T, R>(r)?;
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for j in 0..i {
                if row[j] != rows[j][i] {
                    return Err(Error::Parse(format!("entry ({i},{j}) is not symmetric")));
                }
            }
        }
        Self::from_rows(&rows)
    }
}

/// Parses whitespace separated decimal rows, skipping blanks and `#` comments.
pub fn read_rows<T: Real, R: BufRead>(r: R) -> Result<Vec<Vec<T>>> {
    let mut rows = Vec::new();
    for line in r.lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        rows.push(t.split_whitespace().map(T::parse).collect::<Result<Vec<T>>>()?);
    }
    Ok(rows)
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x.clone() * y;
    }
    acc
}

pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// `a -= k * b`
pub fn axpy_sub<T: Real>(a: &mut [T], k: &T, b: &[T]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= k.clone() * y;
    }
}
