//! Smith normal form over Z with explicit unimodular transforms.
//!
//! `U * M * V = D` with D diagonal, nonnegative, and each diagonal entry
//! dividing the next.  The pivot is always the smallest nonzero absolute
//! value in the remaining submatrix, which makes the output deterministic.
//! Every returned decomposition is re-checked against its invariants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Rational;

#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    /// Diagonal matrix with the divisibility chain d1 | d2 | ... | dr.
    pub d: Matrix,
    /// Unimodular row transform (rows x rows).
    pub u: Matrix,
    /// Unimodular column transform (cols x cols).
    pub v: Matrix,
}

impl SmithDecomposition {
    /// Diagonal entries of D, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).numer().clone()).collect()
    }
}

struct Worker {
    m: usize,
    n: usize,
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Worker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        for x in &mut self.u[i] {
            *x = -std::mem::take(x);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.n {
            let t = &self.a[j][k] * c;
            self.a[i][k] += t;
        }
        for k in 0..self.m {
            let t = &self.u[j][k] * c;
            self.u[i][k] += t;
        }
    }

    /// col_j += c * col_i
    fn add_col(&mut self, j: usize, i: usize, c: &BigInt) {
        for row in &mut self.a {
            let t = &row[i] * c;
            row[j] += t;
        }
        for row in &mut self.v {
            let t = &row[i] * c;
            row[j] += t;
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix, row-major ties.
    fn pivot_position(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in k..self.m {
            for j in k..self.n {
                if self.a[i][j].is_zero() {
                    continue;
                }
                let mag = self.a[i][j].abs();
                match &best {
                    Some((_, b)) if *b <= mag => {}
                    _ => best = Some(((i, j), mag)),
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    fn reduce(&mut self) {
        let steps = self.m.min(self.n);
        for k in 0..steps {
            'pivot: loop {
                let (pi, pj) = match self.pivot_position(k) {
                    Some(pos) => pos,
                    None => return,
                };
                if pi != k {
                    self.swap_rows(k, pi);
                }
                if pj != k {
                    self.swap_cols(k, pj);
                }
                if self.a[k][k].is_negative() {
                    self.negate_row(k);
                }
                let pivot = self.a[k][k].clone();
                for i in k + 1..self.m {
                    if !self.a[i][k].is_zero() {
                        let q = -(&self.a[i][k] / &pivot);
                        self.add_row(i, k, &q);
                    }
                }
                if (k + 1..self.m).any(|i| !self.a[i][k].is_zero()) {
                    continue 'pivot; // leftover remainders are smaller than the pivot
                }
                for j in k + 1..self.n {
                    if !self.a[k][j].is_zero() {
                        let q = -(&self.a[k][j] / &pivot);
                        self.add_col(j, k, &q);
                    }
                }
                if (k + 1..self.n).any(|j| !self.a[k][j].is_zero()) {
                    continue 'pivot;
                }
                // Divisibility chain: fold in any entry the pivot misses.
                for i in k + 1..self.m {
                    for j in k + 1..self.n {
                        if !(&self.a[i][j] % &pivot).is_zero() {
                            self.add_row(k, i, &BigInt::one());
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
        }
    }
}

fn to_matrix(grid: &[Vec<BigInt>]) -> Matrix {
    Matrix::from_fn(grid.len(), grid[0].len(), |i, j| {
        Rational::from_integer(grid[i][j].clone())
    })
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &Matrix) -> Result<SmithDecomposition> {
    let a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let x = m.get(i, j);
                    if x.denom().is_one() {
                        Ok(x.numer().clone())
                    } else {
                        Err(Error::NonIntegerEntry {
                            entry: x.to_string(),
                        })
                    }
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let ident = |k: usize| -> Vec<Vec<BigInt>> {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    };

    let mut w = Worker {
        m: m.rows(),
        n: m.cols(),
        a,
        u: ident(m.rows()),
        v: ident(m.cols()),
    };
    w.reduce();

    let dec = SmithDecomposition {
        d: to_matrix(&w.a),
        u: to_matrix(&w.u),
        v: to_matrix(&w.v),
    };
    validate(m, &dec);
    Ok(dec)
}

/// The decomposition invariants hold by construction; a violation would be an
/// internal bug, so it panics rather than returning an error.
fn validate(m: &Matrix, dec: &SmithDecomposition) {
    assert_eq!(&(&dec.u * m) * &dec.v, dec.d, "U*M*V != D");
    let unit = |x: Rational| x.numer().magnitude().is_one() && x.denom().is_one();
    assert!(unit(dec.u.det().unwrap().abs()), "U not unimodular");
    assert!(unit(dec.v.det().unwrap().abs()), "V not unimodular");
    let diag = dec.diagonal();
    for d in &diag {
        assert!(!d.is_negative(), "negative diagonal entry");
    }
    for i in 0..dec.d.rows() {
        for j in 0..dec.d.cols() {
            if i != j {
                assert!(dec.d.get(i, j).is_zero(), "off-diagonal entry in D");
            }
        }
    }
    for w in diag.windows(2) {
        if w[0].is_zero() {
            assert!(w[1].is_zero(), "zero before nonzero in the chain");
        } else {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain broken");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_of(m: &Matrix) -> Vec<i64> {
        smith_normal_form(m)
            .unwrap()
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(diag_of(&Matrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(diag_of(&Matrix::from_i64_rows(&[&[0]])), vec![0]);
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        assert_eq!(diag_of(&Matrix::from_i64_rows(&[&[2, 4], &[6, 8]])), vec![2, 4]);
    }

    #[test]
    fn snf_known_4x4() {
        let m = Matrix::from_i64_rows(&[
            &[-6, 111, -36, 6],
            &[5, -672, 210, 74],
            &[0, -255, 81, 24],
            &[-7, 255, -81, -10],
        ]);
        assert_eq!(diag_of(&m), vec![1, 3, 21, 0]);
    }

    #[test]
    fn snf_rejects_fractions() {
        let m: Matrix = "1/2".parse().unwrap();
        assert!(smith_normal_form(&m).is_err());
    }

    fn arb_int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-30i64..=30, rows * cols).prop_map(move |cells| {
            Matrix::from_fn(rows, cols, |i, j| {
                Rational::from_integer(BigInt::from(cells[i * cols + j]))
            })
        })
    }

    proptest! {
        // validate() already asserts U*M*V = D, unimodularity and the
        // divisibility chain on every call; this drives it across shapes.
        #[test]
        fn snf_invariants_hold(m in arb_int_matrix(3, 3)) {
            smith_normal_form(&m).unwrap();
        }

        #[test]
        fn snf_invariants_hold_rectangular(m in arb_int_matrix(2, 3)) {
            smith_normal_form(&m).unwrap();
        }
    }
}
