//! Classification of theta(1) into the case families the closed-form
//! spectrum catalog knows about.

use std::fmt;

use num_traits::{One, Zero};

use crate::group::GroupDesc;
use crate::matrix::Matrix;
use crate::ring::{Rational, Ring};

/// Shape of theta(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThetaCase {
    /// n = 1, theta(1) = multiplication by r.
    Scalar(Rational),
    /// n = 2 diagonal, theta(1) = diag(r, s) (excluding the identity).
    Diag(Rational, Rational),
    /// n = 2 anti-diagonal with entries u (top right) and v (bottom left).
    AntiDiag(Rational, Rational),
    /// theta(1) = Id, n >= 2 (the direct product A^n x Z).
    Identity,
    /// anything else
    General,
}

impl fmt::Display for ThetaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaCase::Scalar(r) => write!(f, "SCALAR r={r}"),
            ThetaCase::Diag(r, s) => write!(f, "DIAG r={r} s={s}"),
            ThetaCase::AntiDiag(u, v) => write!(f, "ANTIDIAG u={u} v={v}"),
            ThetaCase::Identity => write!(f, "IDENTITY"),
            ThetaCase::General => write!(f, "GENERAL"),
        }
    }
}

/// Identifier of a closed-form catalog clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum ClauseId {
    P2_5a,
    P2_5b,
    P3_1a,
    P3_1a_INF,
    P3_1b_POS,
    P3_1b_NEG,
    P3_1b_INF,
    P3_1c_POS,
    P3_1c_NEG,
    P3_1c_INF,
    P3_2,
    P3_4,
    P3_4_COR,
    P3_5a,
    P3_5b,
    P3_5c,
    P3_5d,
    P3_6a,
    P3_6b,
    P3_6c,
    P3_7a,
    P3_7b,
    P3_7c,
    P3_7d,
    P3_8a,
    P3_8b,
    P3_8c,
    P4_1,
}

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ClauseId::P2_5a => "P2.5a",
            ClauseId::P2_5b => "P2.5b",
            ClauseId::P3_1a => "P3.1a",
            ClauseId::P3_1a_INF => "P3.1a(r-infinity)",
            ClauseId::P3_1b_POS => "P3.1b(theta=1)",
            ClauseId::P3_1b_NEG => "P3.1b(theta=-1)",
            ClauseId::P3_1b_INF => "P3.1b(r-infinity)",
            ClauseId::P3_1c_POS => "P3.1c(theta=1)",
            ClauseId::P3_1c_NEG => "P3.1c(theta=-1)",
            ClauseId::P3_1c_INF => "P3.1c(r-infinity)",
            ClauseId::P3_2 => "P3.2",
            ClauseId::P3_4 => "P3.4",
            ClauseId::P3_4_COR => "P3.4-cor",
            ClauseId::P3_5a => "P3.5a",
            ClauseId::P3_5b => "P3.5b",
            ClauseId::P3_5c => "P3.5c",
            ClauseId::P3_5d => "P3.5d",
            ClauseId::P3_6a => "P3.6a",
            ClauseId::P3_6b => "P3.6b",
            ClauseId::P3_6c => "P3.6c",
            ClauseId::P3_7a => "P3.7a",
            ClauseId::P3_7b => "P3.7b",
            ClauseId::P3_7c => "P3.7c",
            ClauseId::P3_7d => "P3.7d",
            ClauseId::P3_8a => "P3.8a",
            ClauseId::P3_8b => "P3.8b",
            ClauseId::P3_8c => "P3.8c",
            ClauseId::P4_1 => "P4.1",
        };
        write!(f, "{name}")
    }
}

fn is_pm_one(x: &Rational) -> bool {
    x.is_one() || (-x).is_one()
}

/// Shape of theta(1): scalar, diagonal, anti-diagonal, identity or general.
pub fn classify_theta(group: &GroupDesc) -> ThetaCase {
    let m = group.theta();
    let n = group.n();
    if n == 1 {
        return ThetaCase::Scalar(m.get(0, 0).clone());
    }
    if m.is_identity() {
        return ThetaCase::Identity;
    }
    if n == 2 {
        let (a, b) = (m.get(0, 0), m.get(0, 1));
        let (c, d) = (m.get(1, 0), m.get(1, 1));
        if b.is_zero() && c.is_zero() {
            return ThetaCase::Diag(a.clone(), d.clone());
        }
        if a.is_zero() && d.is_zero() {
            return ThetaCase::AntiDiag(b.clone(), c.clone());
        }
    }
    ThetaCase::General
}

/// The catalog clause that governs this group, when one applies.
pub fn clause_for(group: &GroupDesc) -> Option<ClauseId> {
    let case = classify_theta(group);
    match (group.ring(), &case) {
        (Ring::Rationals, ThetaCase::Scalar(r)) => {
            if is_pm_one(r) {
                Some(ClauseId::P3_1a)
            } else {
                Some(ClauseId::P3_1a_INF)
            }
        }
        (Ring::Rationals, _) => {
            if group.n() == 2 {
                Some(ClauseId::P3_2)
            } else {
                Some(ClauseId::P4_1)
            }
        }
        (Ring::PLocal(p), ThetaCase::Scalar(r)) => {
            let odd = *p != 2;
            Some(if r.is_one() {
                if odd {
                    ClauseId::P3_1b_POS
                } else {
                    ClauseId::P3_1c_POS
                }
            } else if (-r).is_one() {
                if odd {
                    ClauseId::P3_1b_NEG
                } else {
                    ClauseId::P3_1c_NEG
                }
            } else if odd {
                ClauseId::P3_1b_INF
            } else {
                ClauseId::P3_1c_INF
            })
        }
        (Ring::PLocal(_), ThetaCase::Identity) if group.n() == 2 => Some(ClauseId::P3_4_COR),
        (Ring::PLocal(p), ThetaCase::Diag(r, s)) => {
            let two = *p == 2;
            if is_pm_one(r) && r == s {
                Some(if two { ClauseId::P3_5a } else { ClauseId::P3_7a })
            } else if is_pm_one(r) && *r == -s.clone() {
                Some(if two { ClauseId::P3_5b } else { ClauseId::P3_7b })
            } else if (r * s).is_one() && !is_pm_one(r) {
                Some(if two { ClauseId::P3_5c } else { ClauseId::P3_7c })
            } else {
                Some(if two { ClauseId::P3_5d } else { ClauseId::P3_7d })
            }
        }
        (Ring::PLocal(p), ThetaCase::AntiDiag(u, v)) => {
            let two = *p == 2;
            let uv = u * v;
            if uv.is_one() {
                Some(if two { ClauseId::P3_6a } else { ClauseId::P3_8a })
            } else if (-&uv).is_one() {
                Some(if two { ClauseId::P3_6b } else { ClauseId::P3_8b })
            } else {
                // u^2 v^2 != 1
                Some(if two { ClauseId::P3_6c } else { ClauseId::P3_8c })
            }
        }
        _ => None,
    }
}

/// Witness matrix N = [[0,1],[-1,m]]: determinant 1 and det(Id-N) = 2-m,
/// the workhorse for attaining values over A^2.
pub fn companion_witness(m_param: &Rational) -> Matrix {
    Matrix::from_rows(vec![
        vec![Rational::zero(), Rational::one()],
        vec![-Rational::one(), m_param.clone()],
    ])
    .expect("2x2 construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_group(p: u32, theta: &str) -> GroupDesc {
        GroupDesc::new(Ring::p_local(p).unwrap(), theta.parse().unwrap()).unwrap()
    }

    fn q_group(theta: &str) -> GroupDesc {
        GroupDesc::new(Ring::Rationals, theta.parse().unwrap()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let g = p_group(2, "1,0;0,-1");
        assert!(matches!(classify_theta(&g), ThetaCase::Diag(_, _)));
        assert_eq!(clause_for(&g), Some(ClauseId::P3_5b));

        let g = p_group(3, "0,1;1,0");
        assert!(matches!(classify_theta(&g), ThetaCase::AntiDiag(_, _)));
        assert_eq!(clause_for(&g), Some(ClauseId::P3_8a));

        let g = q_group("7");
        assert!(matches!(classify_theta(&g), ThetaCase::Scalar(_)));
        assert_eq!(clause_for(&g), Some(ClauseId::P3_1a_INF));

        let g = q_group("1");
        assert_eq!(clause_for(&g), Some(ClauseId::P3_1a));

        let g = p_group(3, "1,0;0,1");
        assert_eq!(classify_theta(&g), ThetaCase::Identity);
        assert_eq!(clause_for(&g), Some(ClauseId::P3_4_COR));

        let g = p_group(2, "0,2;1,0");
        assert_eq!(clause_for(&g), Some(ClauseId::P3_6c));

        let g = q_group("2,0,0;0,3,0;0,0,5");
        assert_eq!(clause_for(&g), Some(ClauseId::P4_1));

        let g = p_group(2, "1,1;0,1");
        assert_eq!(classify_theta(&g), ThetaCase::General);
        assert_eq!(clause_for(&g), None);

        // diag r = -s = -1 is still clause b
        let g = p_group(5, "-1,0;0,1");
        assert_eq!(clause_for(&g), Some(ClauseId::P3_7b));

        // -Id is clause a with r = s = -1
        let g = p_group(2, "-1,0;0,-1");
        assert_eq!(clause_for(&g), Some(ClauseId::P3_5a));
    }
}
