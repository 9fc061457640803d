//! Cardinality of coker(psi: A^n -> A^n) for A in {Q, Z[1/p], Z}.
//!
//! Two independent routes are provided and must agree over Z[1/p]:
//! the determinant formula (`coker_card_formula`, the prime-to-p part of
//! det) and the localization oracle (`coker_card_oracle`, which clears
//! denominators, takes the Smith normal form over Z and strips the p-part
//! of each elementary divisor).  A finite-quotient brute force over Z/m
//! cross-checks the integer route on small instances.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashSet;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{strip_p, v_p, Ring};
use crate::snf::smith_normal_form;

/// A cokernel or Reidemeister cardinality: a positive natural or infinity.
/// Addition absorbs infinity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(BigUint),
    Infinity,
}

impl ExtNat {
    /// Wrap a finite cardinality; zero is never a valid cardinality.
    pub fn finite(n: impl Into<BigUint>) -> ExtNat {
        let n = n.into();
        assert!(!n.is_zero(), "a cardinality is never 0");
        ExtNat::Finite(n)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            ExtNat::Finite(n) => Some(n),
            ExtNat::Infinity => None,
        }
    }
}

impl Add for &ExtNat {
    type Output = ExtNat;
    fn add(self, rhs: &ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a + b),
            _ => ExtNat::Infinity,
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;
    fn add(self, rhs: ExtNat) -> ExtNat {
        &self + &rhs
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinity => write!(f, "inf"),
        }
    }
}

/// |coker(M)| by the determinant formula.
///
/// Q: 1 when det != 0, infinite otherwise.  Z[1/p]: the prime-to-p part of
/// det when det != 0.  Z: |det| (the Smith oracle's own ground truth).
pub fn coker_card_formula(m: &Matrix, ring: &Ring) -> Result<ExtNat> {
    m.require_entries_in(ring)?;
    let det = m.det()?;
    if det.is_zero() {
        return Ok(ExtNat::Infinity);
    }
    Ok(match ring {
        Ring::Rationals => ExtNat::finite(1u32),
        Ring::PLocal(p) => ExtNat::Finite(v_p(&det, *p)?),
        Ring::Integers => ExtNat::Finite(det.numer().magnitude().clone()),
    })
}

/// |coker(M)| over Z[1/p] replayed through the localization diagram:
/// scale by p^l to an integer matrix, diagonalize over Z, and keep only the
/// torsion of order prime to p.  Must agree with `coker_card_formula`.
pub fn coker_card_oracle(m: &Matrix, p: u32) -> Result<ExtNat> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let (cleared, _l) = m.clear_p_denominators(p)?;
    let snf = smith_normal_form(&cleared)?;
    let mut card = BigUint::one();
    for d in snf.diagonal() {
        if d.is_zero() {
            return Ok(ExtNat::Infinity); // coker contains a copy of Z
        }
        card *= strip_p(d.magnitude(), p);
    }
    Ok(ExtNat::Finite(card))
}

/// |coker(M mod m)| on (Z/m)^n by explicit image enumeration; a sanity
/// check for the Smith route on small instances only.
pub fn coker_card_z_bruteforce(m: &Matrix, modulus: u64) -> Result<u64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut reduced = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let x = m.get(i, j);
            if !x.denom().is_one() {
                return Err(Error::NonIntegerEntry {
                    entry: x.to_string(),
                });
            }
            let r = x.numer().mod_floor(&num_bigint::BigInt::from(modulus));
            reduced[i][j] = u64::try_from(&r).expect("residue fits u64");
        }
    }
    let total = modulus.pow(n as u32);
    assert!(total <= 10_000_000, "brute force domain too large");
    let mut image = HashSet::new();
    let mut x = vec![0u64; n];
    loop {
        let mut key = 0u64;
        for row in &reduced {
            let y: u64 = row
                .iter()
                .zip(&x)
                .map(|(a, b)| (a * b) % modulus)
                .sum::<u64>()
                % modulus;
            key = key * modulus + y;
        }
        image.insert(key);
        // odometer step over (Z/m)^n
        let mut i = 0;
        loop {
            if i == n {
                return Ok(total / image.len() as u64);
            }
            x[i] += 1;
            if x[i] < modulus {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}
