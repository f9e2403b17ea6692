//! Dense matrices over arbitrary-precision rationals.
//!
//! Everything here is exact; there is no floating point anywhere in the
//! crate. Matrices are small (at most the dimension of the Lie algebra),
//! so a plain dense representation with Gauss-Jordan inversion is enough.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix { n, entries: vec![Rat::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = rat(v);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = RatMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.n {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Exact inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let d = &factor * &a[(col, j)];
                    a[(r, j)] -= d;
                    let d = &factor * &inv[(col, j)];
                    inv[(r, j)] -= d;
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Rat {
        let n = self.n;
        let mut a = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !a[(r, col)].is_zero()) {
                Some(p) => p,
                None => return Rat::zero(),
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] / &p;
                for j in col..n {
                    let d = &factor * &a[(col, j)];
                    a[(r, j)] -= d;
                }
            }
        }
        det
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let want_one = i == j;
                if self[(i, j)].is_one() != want_one || (!want_one && !self[(i, j)].is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.n + j]
    }
}

/// True if `y == c * x` for some scalar `c`; returns the scalar.
pub fn proportion(x: &[Rat], y: &[Rat]) -> Option<Rat> {
    assert_eq!(x.len(), y.len());
    let k = x.iter().position(|v| !v.is_zero())?;
    let c = &y[k] / &x[k];
    for i in 0..x.len() {
        if &x[i] * &c != y[i] {
            return None;
        }
    }
    Some(c)
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().abs() == BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_small_matrix() {
        // (1 - C) for the A2 Coxeter element s1 s2.
        let m = RatMatrix::from_int_rows(&[vec![1, 1], vec![-1, 2]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(inv[(0, 0)], Rat::new(BigInt::from(2), BigInt::from(3)));
        assert_eq!(inv[(0, 1)], Rat::new(BigInt::from(-1), BigInt::from(3)));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = RatMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(matches!(m.inverse(), Err(Error::SingularMatrix)));
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = RatMatrix::from_int_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.determinant(), rat(4));
    }

    #[test]
    fn proportion_detects_scaling() {
        let x = vec![rat(2), rat(0), rat(-4)];
        let y = vec![rat(-1), rat(0), rat(2)];
        assert_eq!(proportion(&x, &y), Some(Rat::new(BigInt::from(-1), BigInt::from(2))));
        let z = vec![rat(-1), rat(1), rat(2)];
        assert_eq!(proportion(&x, &z), None);
    }
}
