//! Prime fields and small dense matrices over them.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p` for a small prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Fp> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::Shape(format!("{p} is not a prime")));
        }
        if p > 251 {
            return Err(Error::Budget(format!("field size {p} exceeds the supported 251")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn order(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        ((self.p - a as u32) % self.p) as u8
    }
}

/// A `rows × cols` matrix stored row-major; it maps `F_p^cols → F_p^rows`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    /// `self · rhs`, i.e. apply `rhs` first.
    pub fn mul(&self, rhs: &Matrix, field: Fp) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shapes do not compose");
        let mut out = Matrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = 0u8;
                for k in 0..self.cols {
                    acc = field.add(acc, field.mul(self.get(r, k), rhs.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn apply(&self, v: &[u8], field: Fp) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).fold(0u8, |acc, k| field.add(acc, field.mul(self.get(r, k), v[k]))))
            .collect()
    }

    /// Row-major digits read as a base-`p` numeral, most significant first.
    pub fn code(&self, field: Fp) -> u64 {
        self.data.iter().fold(0u64, |acc, &d| acc * field.order() as u64 + d as u64)
    }

    pub fn from_code(rows: usize, cols: usize, mut code: u64, field: Fp) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for slot in m.data.iter_mut().rev() {
            *slot = (code % field.order() as u64) as u8;
            code /= field.order() as u64;
        }
        m
    }

    /// Number of `rows × cols` matrices over `field`.
    pub fn count(rows: usize, cols: usize, field: Fp) -> u64 {
        (field.order() as u64).pow((rows * cols) as u32)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}x{}", self.rows, self.cols)?;
        if !self.data.is_empty() {
            f.write_str("_")?;
            for d in &self.data {
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

/// Vector of `F_p^n` with the given index (base-`p` digits, most significant first).
pub fn vector_from_index(n: usize, mut index: u64, field: Fp) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for slot in v.iter_mut().rev() {
        *slot = (index % field.order() as u64) as u8;
        index /= field.order() as u64;
    }
    v
}

pub fn vector_index(v: &[u8], field: Fp) -> u64 {
    v.iter().fold(0u64, |acc, &d| acc * field.order() as u64 + d as u64)
}
