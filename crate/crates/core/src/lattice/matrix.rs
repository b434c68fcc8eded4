use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::point::Point;

/// A square integer matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    d: usize,
    e: Vec<i64>,
}

impl IntMatrix {
    pub fn new(d: usize, entries: Vec<i64>) -> Result<Self> {
        if d == 0 || entries.len() != d * d {
            return Err(Error::invalid("matrix must be square and nonempty"));
        }
        Ok(IntMatrix { d, e: entries })
    }

    pub fn identity(d: usize) -> Self {
        let mut e = vec![0; d * d];
        for i in 0..d {
            e[i * d + i] = 1;
        }
        IntMatrix { d, e }
    }

    pub fn from_cols(cols: &[Point]) -> Result<Self> {
        let d = cols.len();
        if d == 0 || cols.iter().any(|c| c.len() != d) {
            return Err(Error::invalid("need d columns of length d"));
        }
        let mut e = vec![0; d * d];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..d {
                e[i * d + j] = col[i];
            }
        }
        Ok(IntMatrix { d, e })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn at(&self, r: usize, c: usize) -> i64 {
        self.e[r * self.d + c]
    }

    pub fn entries(&self) -> &[i64] {
        &self.e
    }

    pub fn col(&self, j: usize) -> Point {
        (0..self.d).map(|i| self.at(i, j)).collect()
    }

    pub fn cols(&self) -> Vec<Point> {
        (0..self.d).map(|j| self.col(j)).collect()
    }

    pub fn row(&self, i: usize) -> Point {
        self.e[i * self.d..(i + 1) * self.d].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let d = self.d;
        let mut e = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                e[j * d + i] = self.at(i, j);
            }
        }
        IntMatrix { d, e }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut e = vec![0i64; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc: i128 = 0;
                for k in 0..d {
                    acc += self.at(i, k) as i128 * other.at(k, j) as i128;
                }
                e[i * d + j] = i64::try_from(acc).expect("matrix product overflows i64");
            }
        }
        IntMatrix { d, e }
    }

    pub fn mul_vec(&self, v: &[i64]) -> Point {
        assert_eq!(self.d, v.len());
        (0..self.d)
            .map(|i| {
                let acc: i128 = (0..self.d)
                    .map(|k| self.at(i, k) as i128 * v[k] as i128)
                    .sum();
                i64::try_from(acc).expect("matrix-vector product overflows i64")
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect();
        IntMatrix { d: self.d, e }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect();
        IntMatrix { d: self.d, e }
    }

    pub fn neg(&self) -> Self {
        IntMatrix { d: self.d, e: self.e.iter().map(|a| -a).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = IntMatrix::identity(self.d);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i128 {
        let d = self.d;
        let mut m: Vec<i128> = self.e.iter().map(|&x| x as i128).collect();
        let mut sign: i128 = 1;
        let mut prev: i128 = 1;
        for k in 0..d {
            if m[k * d + k] == 0 {
                let swap = (k + 1..d).find(|&r| m[r * d + k] != 0);
                match swap {
                    Some(r) => {
                        for c in 0..d {
                            m.swap(k * d + c, r * d + c);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    m[i * d + j] =
                        (m[i * d + j] * m[k * d + k] - m[i * d + k] * m[k * d + j]) / prev;
                }
                m[i * d + k] = 0;
            }
            prev = m[k * d + k];
        }
        sign * m[(d - 1) * d + (d - 1)]
    }

    pub fn is_singular(&self) -> bool {
        self.det() == 0
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.d,
            cols: self.d,
            e: self.e.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect(),
        }
    }

    /// Exact inverse as a rational matrix; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        self.to_rat().inverse()
    }
}

/// A rectangular matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    e: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, e: Vec<BigRational>) -> Result<Self> {
        if rows == 0 || cols == 0 || e.len() != rows * cols {
            return Err(Error::invalid("bad rational matrix shape"));
        }
        Ok(RatMatrix { rows, cols, e })
    }

    pub fn identity(d: usize) -> Self {
        let mut e = vec![BigRational::zero(); d * d];
        for i in 0..d {
            e[i * d + i] = BigRational::one();
        }
        RatMatrix { rows: d, cols: d, e }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.e[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        let idx = r * self.cols + c;
        self.e[idx] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut e = Vec::with_capacity(self.e.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                e.push(self.at(i, j).clone());
            }
        }
        RatMatrix { rows: self.cols, cols: self.rows, e }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut e = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * other.at(k, j);
                }
                e.push(acc);
            }
        }
        RatMatrix { rows: self.rows, cols: other.cols, e }
    }

    pub fn mul_int_vec(&self, v: &[i64]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * BigRational::from_integer(BigInt::from(v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.at(i, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    /// Gauss-Jordan inverse; `None` when singular. Square matrices only.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let d = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(d);
        for col in 0..d {
            let pivot = (col..d).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for c in 0..d {
                    let x = a.at(pivot, c).clone();
                    let y = a.at(col, c).clone();
                    a.set(pivot, c, y);
                    a.set(col, c, x);
                    let x = inv.at(pivot, c).clone();
                    let y = inv.at(col, c).clone();
                    inv.set(pivot, c, y);
                    inv.set(col, c, x);
                }
            }
            let p = a.at(col, col).clone();
            for c in 0..d {
                let v = a.at(col, c) / &p;
                a.set(col, c, v);
                let v = inv.at(col, c) / &p;
                inv.set(col, c, v);
            }
            for r in 0..d {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for c in 0..d {
                    let v = a.at(r, c) - &f * a.at(col, c);
                    a.set(r, c, v);
                    let v = inv.at(r, c) - &f * inv.at(col, c);
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.e.iter().all(|x| x.is_integer())
    }

    /// Convert to an integer matrix; error if any entry is non-integral or
    /// out of `i64` range.
    pub fn to_int(&self) -> Result<IntMatrix> {
        assert_eq!(self.rows, self.cols);
        let mut e = Vec::with_capacity(self.e.len());
        for x in &self.e {
            if !x.is_integer() {
                return Err(Error::invalid("matrix entry is not an integer"));
            }
            let v = x.to_integer();
            let v: i64 = int_to_i64(&v)?;
            e.push(v);
        }
        IntMatrix::new(self.rows, e)
    }

    /// Trace (square matrices).
    pub fn trace(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let mut acc = BigRational::zero();
        for i in 0..self.rows {
            acc += self.at(i, i);
        }
        acc
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.at(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

pub fn int_to_i64(v: &BigInt) -> Result<i64> {
    i64::try_from(v.clone()).map_err(|_| Error::invalid("integer out of i64 range".to_string()))
}

pub fn rat_abs(x: &BigRational) -> BigRational {
    if x.is_negative() {
        -x.clone()
    } else {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        let m = IntMatrix::new(2, vec![1, -1, 1, 1]).unwrap();
        assert_eq!(m.det(), 2);
        let m = IntMatrix::new(3, vec![2, 0, 0, 0, 3, 0, 0, 0, 5]).unwrap();
        assert_eq!(m.det(), 30);
        let m = IntMatrix::new(2, vec![1, 2, 2, 4]).unwrap();
        assert_eq!(m.det(), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = IntMatrix::new(2, vec![2, 0, -1, 3]).unwrap();
        let inv = m.inverse().unwrap();
        let prod = m.to_rat().mul(&inv);
        assert_eq!(prod, RatMatrix::identity(2));
    }

    #[test]
    fn pow_and_mul() {
        let m = IntMatrix::new(2, vec![1, -1, 1, 1]).unwrap();
        let m2 = m.pow(2);
        assert_eq!(m2, IntMatrix::new(2, vec![0, -2, 2, 0]).unwrap());
        assert_eq!(m.pow(0), IntMatrix::identity(2));
    }
}
