//! Exact scalar arithmetic over Q and its subrings Z[1/p] and Z.
//!
//! Every scalar in the crate is an arbitrary-precision [`Rational`] kept in
//! canonical reduced form (coprime numerator/denominator, positive
//! denominator, zero as 0/1).  A [`Ring`] selects which subring of Q a
//! computation lives in; `v_p` and `unit_log` expose the prime-to-p part and
//! the `±p^t` unit decomposition that drive every cokernel count downstream.

use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Canonical exact rational scalar.  `num_rational` keeps values reduced with
/// a positive denominator, which is exactly the canonical form we rely on.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse the rational literal grammar used by every text interface:
/// optional sign, decimal integer, optional `/` followed by a positive
/// decimal integer.  Examples: `-3/4`, `7`, `0`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let (numer_text, denom_text) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = numer_text
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational literal {text:?}")))?;
    let denom: BigInt = match denom_text {
        Some(d) => {
            if d.starts_with('+') || d.starts_with('-') {
                return Err(Error::Parse(format!(
                    "denominator must be an unsigned positive integer in {text:?}"
                )));
            }
            d.parse()
                .map_err(|_| Error::Parse(format!("bad rational literal {text:?}")))?
        }
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Sign of a unit, also used for the induced action on the quotient Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(n: i32) -> Option<Sign> {
        match n {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_int(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Decomposition of a unit of Z[1/p] as `sign * p^exponent` (the unit group
/// of Z[1/p] is generated by -1 and p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitDecomposition {
    pub sign: Sign,
    pub exponent: i64,
}

impl UnitDecomposition {
    /// Reconstruct the unit this decomposition describes.
    pub fn value(&self, p: u32) -> Rational {
        let mag = BigInt::from(p).pow(self.exponent.unsigned_abs() as u32);
        let unsigned = if self.exponent >= 0 {
            Rational::from_integer(mag)
        } else {
            Rational::new(BigInt::one(), mag)
        };
        match self.sign {
            Sign::Plus => unsigned,
            Sign::Minus => -unsigned,
        }
    }
}

/// Deterministic trial-division primality check; p here is desk scale.
pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Which coefficient ring a computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The full field Q.
    Rationals,
    /// Z[1/p]: rationals whose reduced denominator is a power of the prime p.
    PLocal(u32),
    /// The integers, used by the Smith-normal-form oracle.
    Integers,
}

impl Ring {
    /// Construct Z[1/p], rejecting composite p up front.
    pub fn p_local(p: u32) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PLocal(p))
        } else {
            Err(Error::NotPrime { p })
        }
    }

    /// The prime p when this ring is Z[1/p].
    pub fn prime(&self) -> Option<u32> {
        match self {
            Ring::PLocal(p) => Some(*p),
            _ => None,
        }
    }

    /// Membership test: always true for Q; for Z[1/p] the reduced
    /// denominator must be a power of p; for Z it must be 1.
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::Integers => x.denom().is_one(),
            Ring::PLocal(p) => strip_p(&x.denom().magnitude(), *p).is_one(),
        }
    }

    /// Unit test: Q: any nonzero; Z[1/p]: x = ±p^t, i.e. v_p(x) = 1;
    /// Z: x = ±1.
    pub fn is_unit(&self, x: &Rational) -> bool {
        if x.is_zero() {
            return false;
        }
        match self {
            Ring::Rationals => true,
            Ring::Integers => x.numer().magnitude().is_one() && x.denom().is_one(),
            Ring::PLocal(p) => v_p(x, *p).map(|q| q.is_one()).unwrap_or(false),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rationals => write!(f, "Q"),
            Ring::PLocal(p) => write!(f, "Z[1/{p}]"),
            Ring::Integers => write!(f, "Z"),
        }
    }
}

/// Remove every factor of p from n.
pub(crate) fn strip_p(n: &BigUint, p: u32) -> BigUint {
    let p = BigUint::from(p);
    let mut n = n.clone();
    if n.is_zero() {
        return n;
    }
    loop {
        let (q, r) = n.div_rem(&p);
        if r.is_zero() {
            n = q;
        } else {
            return n;
        }
    }
}

/// Number of factors of p in n (n must be nonzero).
fn p_exponent(n: &BigUint, p: u32) -> u32 {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if r.is_zero() {
            n = q;
            e += 1;
        } else {
            return e;
        }
    }
}

/// The prime-to-p part of a nonzero rational: the unique positive natural q
/// with x = ±q/p^n once every factor of p is stripped from the reduced
/// numerator and denominator jointly.  For x in Z[1/p] this is the classical
/// v_P; the joint extraction extends it to all of Q without disturbing the
/// unit criterion (v_p(x) = 1 iff x = ±p^t).
pub fn v_p(x: &Rational, p: u32) -> Result<BigUint> {
    if x.is_zero() {
        return Err(Error::ValuationAtZero);
    }
    debug_assert!(is_prime(p));
    let numer = strip_p(x.numer().magnitude(), p);
    let denom = strip_p(x.denom().magnitude(), p);
    Ok(numer * denom)
}

/// Decompose a unit of Z[1/p] as sign * p^t.
pub fn unit_log(x: &Rational, p: u32) -> Result<UnitDecomposition> {
    if x.is_zero() || !v_p(x, p)?.is_one() {
        return Err(Error::NotAUnit {
            p,
            value: x.to_string(),
        });
    }
    let sign = match x.numer().sign() {
        IntSign::Minus => Sign::Minus,
        _ => Sign::Plus,
    };
    let exponent =
        p_exponent(x.numer().magnitude(), p) as i64 - p_exponent(x.denom().magnitude(), p) as i64;
    Ok(UnitDecomposition { sign, exponent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn membership_examples() {
        assert!(Ring::p_local(2).unwrap().contains(&rat(3, 4)));
        assert!(!Ring::p_local(3).unwrap().contains(&rat(3, 4)));
        assert!(Ring::Rationals.contains(&rat(7, 1)));
        assert!(Ring::Integers.contains(&rat(7, 1)));
        assert!(!Ring::Integers.contains(&rat(7, 2)));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(v_p(&rat(1, 1), 2).unwrap(), BigUint::from(1u32));
        assert_eq!(v_p(&rat(1, 1), 5).unwrap(), BigUint::from(1u32));
        assert_eq!(v_p(&rat(-40, 1), 2).unwrap(), BigUint::from(5u32));
        assert_eq!(v_p(&rat(3, 4), 2).unwrap(), BigUint::from(3u32));
        assert_eq!(v_p(&Rational::zero(), 2), Err(Error::ValuationAtZero));
    }

    #[test]
    fn unit_examples() {
        let z3 = Ring::p_local(3).unwrap();
        assert!(z3.is_unit(&rat(1, 9)));
        assert!(!z3.is_unit(&rat(6, 1)));
        assert!(Ring::Rationals.is_unit(&rat(-5, 7)));
        assert!(!Ring::Rationals.is_unit(&Rational::zero()));
        assert!(Ring::Integers.is_unit(&rat(-1, 1)));
        assert!(!Ring::Integers.is_unit(&rat(2, 1)));
    }

    #[test]
    fn unit_log_examples() {
        let d = unit_log(&rat(8, 1), 2).unwrap();
        assert_eq!((d.sign, d.exponent), (Sign::Plus, 3));
        let d = unit_log(&rat(-1, 3), 3).unwrap();
        assert_eq!((d.sign, d.exponent), (Sign::Minus, -1));
        assert!(unit_log(&rat(6, 1), 2).is_err());
        assert!(unit_log(&Rational::zero(), 2).is_err());
    }

    #[test]
    fn composite_p_rejected() {
        assert!(Ring::p_local(4).is_err());
        assert!(Ring::p_local(1).is_err());
        assert!(Ring::p_local(2).is_ok());
        assert!(Ring::p_local(97).is_ok());
    }

    #[test]
    fn parse_round_trip() {
        for text in ["-3/4", "7", "0", "12/35", "-1"] {
            let x = parse_rational(text).unwrap();
            assert_eq!(x.to_string(), text);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("a").is_err());
        // not in the grammar, but normalization keeps canonical form anyway
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..200).prop_map(|(n, d)| rat(n, d))
    }

    fn arb_p_local(p: u32) -> impl Strategy<Value = Rational> {
        (-50i64..50, 0u32..4)
            .prop_map(move |(a, k)| Rational::new(BigInt::from(a), BigInt::from(p).pow(k)))
    }

    proptest! {
        #[test]
        fn canonical_form_closure(x in arb_rational(), y in arb_rational()) {
            for z in [&x + &y, &x * &y, -x.clone()] {
                prop_assert!(z.denom().is_positive());
                prop_assert!(z.numer().gcd(z.denom()).is_one());
            }
            if !y.is_zero() {
                let inv = y.recip();
                prop_assert!(inv.denom().is_positive());
                prop_assert!(inv.numer().gcd(inv.denom()).is_one());
            }
        }

        #[test]
        fn valuation_is_multiplicative(x in arb_p_local(3), y in arb_p_local(3)) {
            prop_assume!(!x.is_zero() && !y.is_zero());
            let lhs = v_p(&(&x * &y), 3).unwrap();
            let rhs = v_p(&x, 3).unwrap() * v_p(&y, 3).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn unit_criterion(x in arb_p_local(5)) {
            let ring = Ring::PLocal(5);
            let by_valuation = !x.is_zero() && v_p(&x, 5).unwrap().is_one();
            prop_assert_eq!(ring.is_unit(&x), by_valuation);
        }

        #[test]
        fn unit_log_round_trip(sign in prop_oneof![Just(Sign::Plus), Just(Sign::Minus)],
                               t in -8i64..8) {
            let dec = UnitDecomposition { sign, exponent: t };
            let x = dec.value(2);
            prop_assert_eq!(unit_log(&x, 2).unwrap(), dec);
        }

        #[test]
        fn ring_closure(x in arb_p_local(2), y in arb_p_local(2)) {
            let ring = Ring::PLocal(2);
            prop_assert!(ring.contains(&(&x + &y)));
            prop_assert!(ring.contains(&(&x * &y)));
            prop_assert!(ring.contains(&(-x.clone())));
        }
    }
}
