//! The twisted centralizer equation N = M*N*M and the Q dichotomy.
//!
//! Over Q the spectrum of Q^n x|_theta Z is {inf} or {2, inf}, decided by
//! whether some N in the solution space of N = M*N*M keeps det(N),
//! det(Id-N) and det(Id-M*N) all nonzero.  The solution space is a linear
//! subspace; the three determinants multiply into one polynomial q of
//! per-variable degree at most 3n on that space, so q is identically zero
//! iff it vanishes on the whole grid {0..3n}^d.  The grid walk is
//! deterministic and short-circuits on the first witness.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Rational;

/// Basis of the solution space of N = M*N*M over Q.
#[derive(Debug, Clone)]
pub struct CentralizerSpace {
    basis: Vec<Matrix>,
}

impl CentralizerSpace {
    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The matrix with coordinates c in this basis.
    pub fn combine(&self, coords: &[Rational]) -> Matrix {
        assert_eq!(coords.len(), self.basis.len());
        let n = self.basis[0].rows();
        let mut acc = Matrix::zero(n, n);
        for (c, b) in coords.iter().zip(&self.basis) {
            acc = &acc + &b.scale(c);
        }
        acc
    }
}

/// Solve the homogeneous n^2 x n^2 system M*N*M - N = 0 by exact Gaussian
/// elimination and return a basis of the solution space (possibly empty).
pub fn twisted_centralizer_basis(m: &Matrix) -> Result<CentralizerSpace> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = m.rows();
    let vars = n * n;

    // Row (i,j), column (k,l): coefficient of N[k,l] in (M*N*M - N)[i,j],
    // which is M[i,k]*M[l,j] - [ (i,j) == (k,l) ].
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(vars);
    for i in 0..n {
        for j in 0..n {
            let mut row = Vec::with_capacity(vars);
            for k in 0..n {
                for l in 0..n {
                    let mut coeff = m.get(i, k) * m.get(l, j);
                    if (i, j) == (k, l) {
                        coeff -= Rational::one();
                    }
                    row.push(coeff);
                }
            }
            a.push(row);
        }
    }

    // Reduced row echelon form.
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..vars {
        let Some(pivot_row) = (rank..vars).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let inv = a[rank][col].clone().recip();
        for x in &mut a[rank] {
            *x *= &inv;
        }
        for r in 0..vars {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..vars {
                    let t = &a[rank][c] * &factor;
                    a[r][c] -= t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    // One basis vector per free column, in column order.
    let mut basis = Vec::new();
    for free in 0..vars {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut vec = vec![Rational::zero(); vars];
        vec[free] = Rational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            vec[pc] = -a[r][free].clone();
        }
        basis.push(Matrix::new(n, n, vec)?);
    }

    // Every basis element solves the equation exactly.
    for b in &basis {
        debug_assert_eq!(&(&(m * b) * m), b);
    }
    Ok(CentralizerSpace { basis })
}

/// Verdict of the Q dichotomy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QSpectrumDecision {
    /// Spec = {inf}: no admissible N exists; the certificate says why.
    InfOnly(InfCertificate),
    /// Spec = {2, inf}, witnessed by an N with R = 2.
    TwoAndInf { witness: Matrix },
}

/// Certificate that the product polynomial has no nonzero value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfCertificate {
    pub centralizer_dim: usize,
    /// Grid points exhausted ((3n+1)^d when the space is nontrivial).
    pub grid_points: u64,
}

/// Decide whether Q^n x|_theta Z has spectrum {inf} or {2, inf}.
pub fn decide_q_spectrum(m: &Matrix) -> Result<QSpectrumDecision> {
    let space = twisted_centralizer_basis(m)?;
    let d = space.dim();
    if d == 0 {
        return Ok(QSpectrumDecision::InfOnly(InfCertificate {
            centralizer_dim: 0,
            grid_points: 0,
        }));
    }
    let n = m.rows();
    let grid_max = 3 * n as u64; // per-variable degree of the product is <= 3n
    let id = Matrix::identity(n);

    let mut coords = vec![0u64; d];
    let mut points = 0u64;
    // Max-norm shells: small witnesses are found first, and exhausting all
    // shells still covers the whole grid {0..3n}^d.
    for shell in 0..=grid_max {
        loop {
            if coords.iter().max().copied() == Some(shell) {
                points += 1;
                let rational_coords: Vec<Rational> = coords
                    .iter()
                    .map(|&c| Rational::from_integer(BigInt::from(c)))
                    .collect();
                let candidate = space.combine(&rational_coords);
                if !candidate.det()?.is_zero()
                    && !(&id - &candidate).det()?.is_zero()
                    && !(&id - &(m * &candidate)).det()?.is_zero()
                {
                    return Ok(QSpectrumDecision::TwoAndInf { witness: candidate });
                }
            }
            // odometer over {0..shell}^d
            let mut i = 0;
            loop {
                if i == d {
                    coords.iter_mut().for_each(|c| *c = 0);
                    break;
                }
                coords[i] += 1;
                if coords[i] <= shell {
                    break;
                }
                coords[i] = 0;
                i += 1;
            }
            if coords.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(QSpectrumDecision::InfOnly(InfCertificate {
        centralizer_dim: d,
        grid_points: points,
    }))
}
