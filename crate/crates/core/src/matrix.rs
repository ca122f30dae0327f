//! Dense exact matrices over the cyclotomic field.
//!
//! Sizes stay tiny (2x2 up to 16x16 reshapes), so everything is plain
//! Gaussian elimination with exact division.

use crate::error::{Error, Result};
use crate::field::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ScalarMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        ScalarMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// 2x2 from row-major entries.
    pub fn mat2(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        ScalarMatrix { rows: 2, cols: 2, data: vec![a, b, c, d] }
    }

    /// 2x2 from integer entries.
    pub fn mat2i(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::mat2(a.into(), b.into(), c.into(), d.into())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = ScalarMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ScalarMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn scalar_mul(&self, s: &Scalar) -> ScalarMatrix {
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.mul(s)).collect(),
        }
    }

    pub fn add(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> ScalarMatrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = ScalarMatrix::identity(self.rows);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Determinant of a 2x2 matrix.
    pub fn det2(&self) -> Scalar {
        assert_eq!((self.rows, self.cols), (2, 2));
        self.get(0, 0).mul(self.get(1, 1)).sub(&self.get(0, 1).mul(self.get(1, 0)))
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let pivot = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for c in 0..m.cols {
                    let a = m.get(row, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.get(row, col).inv().unwrap();
            for r in row + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).mul(&inv);
                for c in col..m.cols {
                    let v = m.get(r, c).sub(&f.mul(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Solves self * x = b for square systems; `SingularSystem` otherwise.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else {
                return Err(Error::SingularSystem);
            };
            if p != col {
                for c in 0..n {
                    let a = m.get(col, c).clone();
                    let bb = m.get(p, c).clone();
                    m.set(col, c, bb);
                    m.set(p, c, a);
                }
                rhs.swap(col, p);
            }
            let inv = m.get(col, col).inv().unwrap();
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).mul(&inv);
                for c in col..n {
                    let v = m.get(r, c).sub(&f.mul(m.get(col, c)));
                    m.set(r, c, v);
                }
                rhs[r] = rhs[r].sub(&f.mul(&rhs[col]));
            }
        }
        let x = rhs
            .iter()
            .enumerate()
            .map(|(i, v)| v.mul(&m.get(i, i).inv().unwrap()))
            .collect();
        Ok(x)
    }

    /// Inverse of a square matrix; `SingularBasis` when singular.
    pub fn inverse(&self) -> Result<ScalarMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            match self.solve(&e) {
                Ok(c) => cols.push(c),
                Err(_) => return Err(Error::SingularBasis),
            }
        }
        let mut out = ScalarMatrix::zero(n, n);
        for (j, col) in cols.iter().enumerate() {
            for (ii, v) in col.iter().enumerate() {
                out.set(ii, j, v.clone());
            }
        }
        Ok(out)
    }

    /// Proportionality test: returns c with other = c * self, when it exists
    /// and is nonzero on at least one entry (both-zero matrices give c = 1).
    pub fn proportional_to(&self, other: &ScalarMatrix) -> Option<Scalar> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let first = self.data.iter().position(|v| !v.is_zero());
        let Some(k) = first else {
            return other.is_zero().then(Scalar::one);
        };
        if other.data[k].is_zero() {
            return None;
        }
        let c = other.data[k].div(&self.data[k]).unwrap();
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            if a.mul(&c) != *b {
                return None;
            }
        }
        Some(c)
    }
}

impl std::fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
