//! Groups A^n x|_theta Z with A in {Q, Z[1/p]} and their automorphisms.
//!
//! The kernel A^n is characteristic (every element is divisible by
//! arbitrarily large integers), so an automorphism splits into a triple
//! (N, eps, z): its restriction N to the kernel, the induced map eps = +-1
//! on the quotient Z, and the kernel component z of the image of the
//! Z-generator.  When eps = +1 the Reidemeister number is infinite; when
//! eps = -1 it is R(N) + R(M*N) with both summands counted as cokernel
//! cardinalities of Id - (.).

use crate::cokernel::{coker_card_formula, ExtNat};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Rational, Ring, Sign};

/// A group A^n x|_theta Z, described by its coefficient ring and theta(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDesc {
    ring: Ring,
    n: usize,
    theta: Matrix,
    label: Option<String>,
}

impl GroupDesc {
    /// Validates that theta(1) is n x n over the ring and invertible over it
    /// (it is the matrix of an automorphism of A^n).
    pub fn new(ring: Ring, theta: Matrix) -> Result<GroupDesc> {
        if ring == Ring::Integers {
            return Err(Error::Parse(
                "kernel ring must be Q or Z[1/p]".into(),
            ));
        }
        if !theta.is_square() {
            return Err(Error::NotSquare {
                rows: theta.rows(),
                cols: theta.cols(),
            });
        }
        theta.require_entries_in(&ring)?;
        if !theta.is_invertible_over(&ring)? {
            return Err(Error::NotInvertibleOver {
                det: theta.det()?.to_string(),
                ring: ring.to_string(),
            });
        }
        let n = theta.rows();
        Ok(GroupDesc {
            ring,
            n,
            theta,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> GroupDesc {
        self.label = Some(label.into());
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &Matrix {
        &self.theta
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

/// An automorphism of A^n x| Z as a kernel-preserving triple.
///
/// The translation component z never enters the Reidemeister count; it is
/// carried so the descriptor stays a faithful automorphism description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoDesc {
    pub restriction: Matrix,
    pub eps: Sign,
    pub z: Vec<Rational>,
}

impl AutoDesc {
    pub fn new(restriction: Matrix, eps: Sign, z: Vec<Rational>) -> AutoDesc {
        AutoDesc {
            restriction,
            eps,
            z,
        }
    }

    /// Automorphism with zero translation component.
    pub fn linear(restriction: Matrix, eps: Sign) -> AutoDesc {
        let n = restriction.rows();
        AutoDesc::new(restriction, eps, vec![Rational::from_integer(0.into()); n])
    }
}

/// True iff (N, eps) restricts/extends to an automorphism of the group:
/// N is invertible over the ring and N*M = M^eps*N holds exactly
/// (for eps = -1 this is N = M*N*M after multiplying through by M).
pub fn check_automorphism(group: &GroupDesc, auto: &AutoDesc) -> Result<bool> {
    let m = group.theta();
    let n_mat = &auto.restriction;
    if n_mat.rows() != group.n() || n_mat.cols() != group.n() {
        return Err(Error::DimensionMismatch {
            expected: group.n(),
            got: n_mat.rows(),
        });
    }
    if auto.z.len() != group.n() {
        return Err(Error::DimensionMismatch {
            expected: group.n(),
            got: auto.z.len(),
        });
    }
    if !n_mat.entries_in(group.ring()) || auto.z.iter().any(|x| !group.ring().contains(x)) {
        return Ok(false);
    }
    if !n_mat.is_invertible_over(group.ring())? {
        return Ok(false);
    }
    let compatible = match auto.eps {
        Sign::Plus => (n_mat * m) == (m * n_mat),
        Sign::Minus => (&(m * n_mat) * m) == *n_mat,
    };
    Ok(compatible)
}

/// Reidemeister number of an automorphism N of the abelian group A^n:
/// the cardinality of coker(Id - N).
pub fn reidemeister_abelian(n_mat: &Matrix, ring: &Ring) -> Result<ExtNat> {
    if !n_mat.is_square() {
        return Err(Error::NotSquare {
            rows: n_mat.rows(),
            cols: n_mat.cols(),
        });
    }
    let shifted = &Matrix::identity(n_mat.rows()) - n_mat;
    coker_card_formula(&shifted, ring)
}

/// Total Reidemeister number with its two summands when eps = -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReidemeisterResult {
    pub total: ExtNat,
    /// (R(N), R(M*N)); absent when eps = +1.
    pub parts: Option<(ExtNat, ExtNat)>,
}

/// Reidemeister number of an automorphism of A^n x| Z.
///
/// eps = +1 short-circuits to infinity; eps = -1 reduces to the sum
/// R(N) + R(M*N).  The translation component z plays no role.
pub fn reidemeister_semidirect(group: &GroupDesc, auto: &AutoDesc) -> Result<ReidemeisterResult> {
    if !check_automorphism(group, auto)? {
        return Err(Error::IncompatibleAutomorphism);
    }
    match auto.eps {
        Sign::Plus => Ok(ReidemeisterResult {
            total: ExtNat::Infinity,
            parts: None,
        }),
        Sign::Minus => {
            let left = reidemeister_abelian(&auto.restriction, group.ring())?;
            let right =
                reidemeister_abelian(&(group.theta() * &auto.restriction), group.ring())?;
            Ok(ReidemeisterResult {
                total: &left + &right,
                parts: Some((left, right)),
            })
        }
    }
}

/// Reidemeister number of the degree-d endomorphism of Z/mZ:
/// gcd(|1-d|, m), with gcd(0, m) = m.
pub fn reidemeister_cyclic_endo(m: u64, d: i64) -> u64 {
    num_integer::gcd((1 - d).unsigned_abs(), m)
}

/// Independent oracle for the cyclic formula: count the orbits of
/// x ~ x + (1-d)g (mod m) over all g by an explicit sweep (no gcd call).
pub fn brute_force_cyclic(m: u64, d: i64) -> u64 {
    let m_i = m as i64;
    let step = (1 - d).rem_euclid(m_i) as u64;
    let mut visited = vec![false; m as usize];
    let mut classes = 0;
    for start in 0..m {
        if visited[start as usize] {
            continue;
        }
        classes += 1;
        let mut x = start;
        while !visited[x as usize] {
            visited[x as usize] = true;
            x = (x + step) % m;
        }
    }
    classes
}
