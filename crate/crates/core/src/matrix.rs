//! Exact dense matrices over Q with ring-membership contracts.
//!
//! Everything downstream works with tiny dense matrices (desk scale n), so
//! the representation is a plain row-major `Vec<Rational>`.  Determinants go
//! through fraction-free Bareiss elimination on a denominator-cleared integer
//! copy, which keeps intermediate entry sizes polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{parse_rational, Rational, Ring};

/// Immutable dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Matrix> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Matrix {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| {
            Rational::from_integer(BigInt::from(rows[i][j]))
        })
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| Rational::zero())
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    /// True when every entry lies in the given ring.
    pub fn entries_in(&self, ring: &Ring) -> bool {
        self.entries.iter().all(|x| ring.contains(x))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn first_entry_outside(&self, ring: &Ring) -> Option<&Rational> {
        self.entries.iter().find(|x| !ring.contains(x))
    }

    /// Require every entry to lie in `ring`, reporting the first offender.
    pub fn require_entries_in(&self, ring: &Ring) -> Result<()> {
        match self.first_entry_outside(ring) {
            None => Ok(()),
            Some(x) => Err(Error::EntryOutsideRing {
                entry: x.to_string(),
                ring: ring.to_string(),
            }),
        }
    }

    /// Exact determinant via Bareiss fraction-free elimination.  Rational
    /// entries are first scaled row-wise to integers; the scaling factors
    /// divide back out at the end.
    pub fn det(&self) -> Result<Rational> {
        self.require_square()?;
        let n = self.rows;

        // Clear denominators one row at a time, remembering the factors.
        let mut scale = Rational::one();
        let mut work: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = num_integer::lcm(lcm, self.get(i, j).denom().clone());
            }
            scale *= Rational::from_integer(lcm.clone());
            let row = (0..n)
                .map(|j| {
                    let x = self.get(i, j);
                    x.numer() * (&lcm / x.denom())
                })
                .collect();
            work.push(row);
        }

        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if work[k][k].is_zero() {
                match (k + 1..n).find(|&i| !work[i][k].is_zero()) {
                    Some(i) => {
                        work.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &work[i][j] * &work[k][k] - &work[i][k] * &work[k][j];
                    // Bareiss: the previous pivot divides exactly.
                    work[i][j] = t / &prev;
                }
                work[i][k] = BigInt::zero();
            }
            prev = work[k][k].clone();
        }
        Ok(Rational::from_integer(sign * work[n - 1][n - 1].clone()) / scale)
    }

    /// True when det(M) is a unit of the ring (entries are checked first).
    pub fn is_invertible_over(&self, ring: &Ring) -> Result<bool> {
        self.require_square()?;
        self.require_entries_in(ring)?;
        Ok(ring.is_unit(&self.det()?))
    }

    /// Scale a matrix over Z[1/p] by the minimal p^l making it integral.
    pub fn clear_p_denominators(&self, p: u32) -> Result<(Matrix, u32)> {
        let ring = Ring::p_local(p)?;
        self.require_entries_in(&ring)?;
        let p_big = BigInt::from(p);
        let mut l = 0u32;
        for x in &self.entries {
            let mut d = x.denom().clone();
            let mut e = 0u32;
            while !d.is_one() {
                d /= &p_big;
                e += 1;
            }
            l = l.max(e);
        }
        let factor = Rational::from_integer(p_big.pow(l));
        Ok((self.scale(&factor), l))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += self.get(i, k) * rhs.get(k, j);
            }
            acc
        })
    }
}

/// Text form used by the CLI and fixtures: rows separated by `;`,
/// entries by `,`, each entry a rational literal.  Example: `1,-1;1,-4`.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Matrix> {
        let rows: Vec<Vec<Rational>> = s
            .trim()
            .split(';')
            .map(|row| row.split(',').map(parse_rational).collect())
            .collect::<Result<_>>()?;
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::Parse("empty matrix text".into()));
        }
        Matrix::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn det_examples() {
        assert_eq!(Matrix::identity(2).det().unwrap(), rat(1, 1));
        let m = Matrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(m.det().unwrap(), rat(6, 1));
        // cofactor expansion by hand: 1*(-4) - (-1)*1 = -3
        let m = Matrix::from_i64_rows(&[&[1, -1], &[1, -4]]);
        assert_eq!(m.det().unwrap(), rat(-3, 1));
        assert!(Matrix::zero(2, 3).det().is_err());
    }

    #[test]
    fn det_rational_entries() {
        let m = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 5), rat(1, 7)],
        ])
        .unwrap();
        // 1/14 - 1/15 = 1/210
        assert_eq!(m.det().unwrap(), rat(1, 210));
    }

    #[test]
    fn invertibility_over_rings() {
        let z2 = Ring::p_local(2).unwrap();
        let m = Matrix::from_rows(vec![vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]])
            .unwrap();
        assert!(!m.is_invertible_over(&z2).unwrap()); // det 3/2, v_2 = 3
        let m = Matrix::from_rows(vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(-1, 4)]])
            .unwrap();
        assert!(m.is_invertible_over(&z2).unwrap()); // det -1/2
        let m = Matrix::from_i64_rows(&[&[0, 0], &[0, 1]]);
        assert!(!m.is_invertible_over(&Ring::Rationals).unwrap());
        let m = Matrix::from_rows(vec![vec![rat(1, 3)]]).unwrap();
        assert!(m.is_invertible_over(&z2).is_err()); // 1/3 outside Z[1/2]
    }

    #[test]
    fn clear_denominators_examples() {
        let m = Matrix::from_rows(vec![vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]])
            .unwrap();
        let (m1, l) = m.clear_p_denominators(2).unwrap();
        assert_eq!(l, 1);
        assert_eq!(m1, Matrix::from_i64_rows(&[&[1, 0], &[0, 6]]));

        let m = Matrix::from_i64_rows(&[&[4, -7], &[0, 9]]);
        let (m1, l) = m.clear_p_denominators(3).unwrap();
        assert_eq!(l, 0);
        assert_eq!(m1, m);

        let m = Matrix::from_rows(vec![vec![rat(3, 4)]]).unwrap();
        let (m1, l) = m.clear_p_denominators(2).unwrap();
        assert_eq!(l, 2);
        assert_eq!(m1, Matrix::from_i64_rows(&[&[3]]));

        let m = Matrix::from_rows(vec![vec![rat(1, 3)]]).unwrap();
        assert!(m.clear_p_denominators(2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let m: Matrix = "1,-1;1,-4".parse().unwrap();
        assert_eq!(m, Matrix::from_i64_rows(&[&[1, -1], &[1, -4]]));
        assert_eq!(m.to_string(), "1,-1;1,-4");
        let m: Matrix = "2,0;0,1/2".parse().unwrap();
        assert_eq!(m.to_string(), "2,0;0,1/2");
        assert!("1,2;3".parse::<Matrix>().is_err());
        assert!("".parse::<Matrix>().is_err());
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-9i64..=9, 1i64..=4), n * n).prop_map(move |cells| {
            let entries = cells.into_iter().map(|(a, b)| rat(a, b)).collect();
            Matrix::new(n, n, entries).unwrap()
        })
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in arb_matrix(3), b in arb_matrix(3)) {
            let ab = &a * &b;
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        // Similarity invariance underpins conjugation-invariance of
        // Reidemeister numbers downstream: det(Id - P N P^-1) = det(Id - N).
        #[test]
        fn det_similarity_invariance(n in arb_matrix(2),
                                     shears in proptest::collection::vec(
                                         (0usize..2, 0usize..2, -3i64..=3), 1..6)) {
            let id = Matrix::identity(2);
            let mut p = id.clone();
            let mut p_inv = id.clone();
            for (i, j, c) in shears {
                if i == j { continue; }
                let mut shear = id.clone();
                shear.entries[i * 2 + j] = rat(c, 1);
                let mut unshear = id.clone();
                unshear.entries[i * 2 + j] = rat(-c, 1);
                p = &p * &shear;
                p_inv = &unshear * &p_inv;
            }
            prop_assert!((&p * &p_inv).is_identity());
            let conjugated = &(&p * &n) * &p_inv;
            let lhs = (&id - &conjugated).det().unwrap();
            let rhs = (&id - &n).det().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
