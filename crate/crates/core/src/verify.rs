//! Clause-by-clause reproduction battery.
//!
//! Runs every closed-form spectrum check plus the cross-cutting property
//! suites, and reports PASS / DISCREPANCY / FAIL per check.  A DISCREPANCY
//! is a reproducible mismatch between a statement and what the engine (or
//! the statement's own derivation) produces; it is reported, never patched,
//! and does not fail the run.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;
use std::fmt;

use crate::cokernel::{coker_card_formula, coker_card_oracle, ExtNat};
use crate::group::{
    brute_force_cyclic, check_automorphism, reidemeister_abelian, reidemeister_cyclic_endo,
    reidemeister_semidirect, AutoDesc, GroupDesc,
};
use crate::matrix::Matrix;
use crate::ring::{v_p, Rational, Ring, Sign};
use crate::spectrum::{
    closed_form, companion_witness, decide_q_spectrum, enumerate_spectrum, ClauseId, EnumBound,
    QSpectrumDecision, SpectrumReport, Variant,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Discrepancy,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Discrepancy => write!(f, "DISCREPANCY"),
            Status::Fail => write!(f, "FAIL"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn discrepancies(&self) -> usize {
        self.count(Status::Discrepancy)
    }

    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    fn push(&mut self, id: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status,
            detail: detail.into(),
        });
    }

    fn pass_fail(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(id, if ok { Status::Pass } else { Status::Fail }, detail);
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn p_group(p: u32, theta: &str) -> GroupDesc {
    GroupDesc::new(Ring::p_local(p).unwrap(), theta.parse().unwrap()).unwrap()
}

fn q_group(theta: &str) -> GroupDesc {
    GroupDesc::new(Ring::Rationals, theta.parse().unwrap()).unwrap()
}

fn unit(p: u32, sign: i64, e: i64) -> Rational {
    let mag = BigInt::from(p).pow(e.unsigned_abs() as u32);
    let base = if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    };
    base * rat(sign, 1)
}

/// Run the whole battery.  `bound` scales the clause enumerations; the
/// fixed-size suites (valuation agreement, Franz, property checks) always
/// run in full.
pub fn run_verification(bound: &EnumBound) -> VerifyReport {
    let mut report = VerifyReport::default();
    check_lemma24(&mut report);
    check_franz(&mut report);
    check_prop25(&mut report, bound);
    check_prop31(&mut report, bound);
    check_q_dichotomy(&mut report);
    check_prop34(&mut report);
    check_clauses(&mut report, bound);
    check_property_suites(&mut report);
    report
}

// ---------------------------------------------------------------- lemma 2.4

fn random_p_local_matrix(rng: &mut StdRng, n: usize, p: u32) -> Matrix {
    Matrix::from_fn(n, n, |_, _| {
        let a = rng.gen_range(-9i64..=9);
        let k = rng.gen_range(0u32..=3);
        Rational::new(BigInt::from(a), BigInt::from(p).pow(k))
    })
}

fn check_lemma24(report: &mut VerifyReport) {
    for n in 1..=3usize {
        for p in [2u32, 3, 5] {
            let ring = Ring::p_local(p).unwrap();
            let mut rng = StdRng::seed_from_u64(0xC0FFEE + (n as u64) * 100 + p as u64);
            let mut bad = 0usize;
            let mut infinite_seen = 0usize;
            for case in 0..520 {
                let mut m = random_p_local_matrix(&mut rng, n, p);
                if case >= 500 {
                    // force a singular example so the infinite case is hit
                    if n == 1 {
                        m = Matrix::zero(1, 1);
                    } else {
                        let scale = rat(rng.gen_range(-3i64..=3), 1);
                        m = Matrix::from_fn(n, n, |i, j| {
                            if i == n - 1 {
                                m.get(0, j) * &scale
                            } else {
                                m.get(i, j).clone()
                            }
                        });
                    }
                }
                let formula = coker_card_formula(&m, &ring).unwrap();
                let oracle = coker_card_oracle(&m, p).unwrap();
                if formula != oracle {
                    bad += 1;
                }
                if formula == ExtNat::Infinity {
                    infinite_seen += 1;
                }
            }
            report.pass_fail(
                format!("L2.4-agreement-n{n}-p{p}"),
                bad == 0 && infinite_seen > 0,
                format!("520 random matrices, {infinite_seen} infinite, {bad} disagreements"),
            );
        }
    }
}

// -------------------------------------------------------------------- Franz

fn check_franz(report: &mut VerifyReport) {
    let mut bad = 0;
    for m in 2..=60u64 {
        for d in -10..=10i64 {
            if reidemeister_cyclic_endo(m, d) != brute_force_cyclic(m, d) {
                bad += 1;
            }
        }
    }
    report.pass_fail(
        "Franz-gcd",
        bad == 0,
        format!("m in [2,60], d in [-10,10], {bad} disagreements"),
    );
}

// ----------------------------------------------------------------- prop 2.5

fn check_prop25(report: &mut VerifyReport, bound: &EnumBound) {
    // Q: multiplication maps give R in {1, inf} only, with inf exactly at 1
    let mut ok = true;
    for r in [rat(1, 1), rat(-1, 1), rat(5, 1), rat(-3, 7), rat(22, 5)] {
        let n = Matrix::new(1, 1, vec![r.clone()]).unwrap();
        let got = reidemeister_abelian(&n, &Ring::Rationals).unwrap();
        let want = if r.is_one() {
            ExtNat::Infinity
        } else {
            ExtNat::finite(1u32)
        };
        ok &= got == want;
    }
    report.pass_fail("P2.5a", ok, "multiplication maps on Q give R in {1, inf}");

    let t = bound.exponent + 2;
    for p in [2u32, 3, 5] {
        let ring = Ring::p_local(p).unwrap();
        let mut attained = BTreeSet::new();
        let mut infinite_at_one = false;
        for e in -(t as i64)..=(t as i64) {
            for sign in [1, -1] {
                let k = unit(p, sign, e);
                let n = Matrix::new(1, 1, vec![k.clone()]).unwrap();
                match reidemeister_abelian(&n, &ring).unwrap() {
                    ExtNat::Finite(v) => {
                        attained.insert(u64::try_from(&v).unwrap());
                    }
                    ExtNat::Infinity => infinite_at_one = k.is_one(),
                }
            }
        }
        // stated set intersected with the attainable range |t| <= bound
        let catalog = closed_form(ClauseId::P2_5b, &ring).unwrap();
        let cap = (p as u64).pow(t) + 1;
        let expected = catalog.stated().members(cap, Some(t));
        report.pass_fail(
            format!("P2.5b-p{p}"),
            attained == expected && infinite_at_one,
            format!("units |t| <= {t}: attained {attained:?}"),
        );
    }
}

// ----------------------------------------------------------------- prop 3.1

fn abbreviate(values: &BTreeSet<u64>) -> String {
    let shown: Vec<String> = values.iter().take(10).map(u64::to_string).collect();
    if values.len() > 10 {
        format!("[{}, +{} more]", shown.join(","), values.len() - 10)
    } else {
        format!("[{}]", shown.join(","))
    }
}

/// Summarize a report's comparisons: which variants match, which do not.
fn variant_summary(report: &SpectrumReport) -> String {
    report
        .comparisons
        .iter()
        .map(|c| {
            if c.matches {
                format!("{} matches", c.variant)
            } else {
                format!(
                    "{} off (extra {}, unattained {})",
                    c.variant,
                    abbreviate(&c.extra_computed),
                    abbreviate(&c.unattained)
                )
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Status for a clause where statement and engine are expected to agree.
fn expect_match(report: &mut VerifyReport, id: &str, spec: &SpectrumReport) {
    report.pass_fail(
        id,
        !spec.has_discrepancy(),
        format!(
            "values {}; {}",
            abbreviate(&spec.values().into_iter().collect()),
            variant_summary(spec)
        ),
    );
}

/// Status for a clause with a documented statement/engine mismatch: the
/// stated variant must mismatch in the frozen way.  When an alternative
/// variant (proof- or engine-derived) exists it must be the one the
/// enumeration matches; theta(1) = -Id has no closed alternative.  At very
/// small bounds the variants can coincide, which is a pass, not a failure;
/// the frozen distinguishing values are only demanded once the bounds can
/// reach them.
fn expect_documented_discrepancy(
    report: &mut VerifyReport,
    id: &str,
    spec: &SpectrumReport,
    must_be_off: &[u64],
) {
    let has_alternative = spec.comparisons.iter().any(|c| c.variant != Variant::Stated);
    let alternative_ok = !has_alternative
        || spec
            .comparisons
            .iter()
            .any(|c| c.variant != Variant::Stated && c.matches);
    let stated = spec
        .comparisons
        .iter()
        .find(|c| c.variant == Variant::Stated)
        .expect("stated variant present");
    let enforced: Vec<u64> = if spec.bound.exponent >= 2 {
        must_be_off
            .iter()
            .copied()
            .filter(|v| *v <= spec.bound.value_cap)
            .collect()
    } else {
        Vec::new()
    };
    let frozen_present = enforced
        .iter()
        .all(|v| stated.extra_computed.contains(v) || stated.unattained.contains(v));
    let status = if stated.matches {
        if alternative_ok && enforced.is_empty() {
            Status::Pass // variants coincide within these bounds
        } else {
            Status::Fail
        }
    } else if frozen_present && alternative_ok {
        Status::Discrepancy
    } else {
        Status::Fail
    };
    report.push(
        id,
        status,
        format!(
            "values {}; {}",
            abbreviate(&spec.values().into_iter().collect()),
            variant_summary(spec)
        ),
    );
}

fn check_prop31(report: &mut VerifyReport, bound: &EnumBound) {
    let scalar_bound = EnumBound {
        exponent: bound.exponent + 1,
        value_cap: 2 * 5u64.pow(bound.exponent + 2),
        coeff_bound: None,
    };

    // Q^1: scalar theta
    for (theta, label, want_two) in [("1", "r=1", true), ("-1", "r=-1", true), ("5", "r-inf", false)]
    {
        let spec = enumerate_spectrum(&q_group(theta), &scalar_bound).unwrap();
        let ok = if want_two {
            spec.values() == vec![2]
        } else {
            spec.values().is_empty()
        };
        report.pass_fail(format!("P3.1a-{label}"), ok, format!("values {:?}", spec.values()));
    }

    for p in [3u32, 5] {
        let spec = enumerate_spectrum(&p_group(p, "1"), &scalar_bound).unwrap();
        // 2(p^1 +- 1) values that the stated (undoubled) set misses
        let frozen = if p == 3 { 16 } else { 8 };
        expect_documented_discrepancy(report, &format!("P3.1b-p{p}-theta=1"), &spec, &[frozen]);

        let spec = enumerate_spectrum(&p_group(p, "-1"), &scalar_bound).unwrap();
        expect_match(report, &format!("P3.1b-p{p}-theta=-1"), &spec);

        let theta = format!("{p}");
        let spec = enumerate_spectrum(&p_group(p, &theta), &scalar_bound).unwrap();
        report.pass_fail(
            format!("P3.1b-p{p}-r-inf"),
            spec.values().is_empty() && !spec.has_discrepancy(),
            format!("values {:?}", spec.values()),
        );
    }

    let spec = enumerate_spectrum(&p_group(2, "1"), &scalar_bound).unwrap();
    expect_match(report, "P3.1c-theta=1", &spec);
    let spec = enumerate_spectrum(&p_group(2, "-1"), &scalar_bound).unwrap();
    expect_match(report, "P3.1c-theta=-1", &spec);
    let spec = enumerate_spectrum(&p_group(2, "2"), &scalar_bound).unwrap();
    report.pass_fail(
        "P3.1c-r-inf",
        spec.values().is_empty() && !spec.has_discrepancy(),
        format!("values {:?}", spec.values()),
    );
}

// --------------------------------------------------- props 3.2 / 4.1 over Q

fn check_q_dichotomy(report: &mut VerifyReport) {
    let expect_inf = |report: &mut VerifyReport, id: &str, theta: &str| {
        let ok = matches!(
            decide_q_spectrum(&theta.parse().unwrap()).unwrap(),
            QSpectrumDecision::InfOnly(_)
        );
        report.pass_fail(id, ok, format!("theta {theta}: Spec = {{inf}}"));
    };
    let expect_two = |report: &mut VerifyReport, id: &str, theta: &str| {
        let m: Matrix = theta.parse().unwrap();
        let ok = match decide_q_spectrum(&m).unwrap() {
            QSpectrumDecision::TwoAndInf { witness } => {
                let g = GroupDesc::new(Ring::Rationals, m.clone()).unwrap();
                let auto = AutoDesc::linear(witness, Sign::Minus);
                reidemeister_semidirect(&g, &auto).unwrap().total == ExtNat::finite(2u32)
            }
            QSpectrumDecision::InfOnly(_) => false,
        };
        report.pass_fail(id, ok, format!("theta {theta}: Spec = {{2, inf}}, witness verified"));
    };

    expect_inf(report, "P3.2-example1", "2,0;0,3");
    expect_two(report, "P3.2-example2", "2,0;0,1/2");
    expect_inf(report, "P3.2-example3-nonunit", "0,2;1,0");
    expect_two(report, "P3.2-example3-swap", "0,1;1,0");
    expect_inf(report, "P4.1-diag235", "2,0,0;0,3,0;0,0,5");
}

// ----------------------------------------------------------------- prop 3.4

fn check_prop34(report: &mut VerifyReport) {
    for p in [2u32, 3, 5] {
        let ring = Ring::p_local(p).unwrap();
        let mut attained = BTreeSet::new();
        let mut off_support = Vec::new();
        for m_param in -40i64..=44 {
            let n = companion_witness(&rat(m_param, 1));
            if let ExtNat::Finite(v) = reidemeister_abelian(&n, &ring).unwrap() {
                let v = u64::try_from(&v).unwrap();
                attained.insert(v);
                if v % p as u64 == 0 {
                    off_support.push(v);
                }
            }
        }
        let want: BTreeSet<u64> = (1..=40).filter(|n| n % p as u64 != 0).collect();
        let ok = off_support.is_empty() && want.iter().all(|v| attained.contains(v));
        report.pass_fail(
            format!("P3.4-p{p}"),
            ok,
            format!("companion witnesses attain every n <= 40 coprime to {p}"),
        );

        // the corollary doubles the spectrum
        let spec = enumerate_spectrum(
            &p_group(p, "1,0;0,1"),
            &EnumBound {
                exponent: 3,
                value_cap: 80,
                coeff_bound: None,
            },
        )
        .unwrap();
        let want: BTreeSet<u64> = (1..=40).filter(|n| n % p as u64 != 0).map(|n| 2 * n).collect();
        let got: BTreeSet<u64> = spec.values().into_iter().collect();
        report.pass_fail(
            format!("P3.4cor-p{p}"),
            got == want && !spec.has_discrepancy(),
            format!("doubled values up to 80: {} members", got.len()),
        );
    }
}

// ----------------------------------------------- props 3.5 - 3.8 clause runs

fn check_clauses(report: &mut VerifyReport, bound: &EnumBound) {
    // p = 2, diagonal theta (prop 3.5).  Clause (a) covers theta = +-Id;
    // +Id runs as the direct-product corollary and matches, -Id exceeds
    // the stated set.
    let spec = enumerate_spectrum(&p_group(2, "1,0;0,1"), bound).unwrap();
    expect_match(report, "P3.5a-plus-id", &spec);

    let spec = enumerate_spectrum(&p_group(2, "-1,0;0,-1"), bound).unwrap();
    expect_documented_discrepancy(report, "P3.5a-minus-id", &spec, &[4]);

    let spec = enumerate_spectrum(&p_group(2, "1,0;0,-1"), bound).unwrap();
    expect_match(report, "P3.5b", &spec);

    let spec = enumerate_spectrum(&p_group(2, "2,0;0,1/2"), bound).unwrap();
    expect_documented_discrepancy(report, "P3.5c", &spec, &[4]);

    let spec = enumerate_spectrum(&p_group(2, "2,0;0,4"), bound).unwrap();
    report.pass_fail(
        "P3.5d",
        spec.values().is_empty() && !spec.has_discrepancy(),
        spec.notes.join("; "),
    );

    // p = 2, anti-diagonal theta (prop 3.6)
    let spec = enumerate_spectrum(&p_group(2, "0,1;1,0"), bound).unwrap();
    expect_match(report, "P3.6a", &spec);
    check_p36a_corner(report);

    let spec = enumerate_spectrum(&p_group(2, "0,-1;1,0"), bound).unwrap();
    expect_documented_discrepancy(report, "P3.6b", &spec, &[2]);

    let spec = enumerate_spectrum(&p_group(2, "0,2;1,0"), bound).unwrap();
    report.pass_fail(
        "P3.6c",
        spec.values().is_empty() && !spec.has_discrepancy(),
        spec.notes.join("; "),
    );

    // p odd (props 3.7 and 3.8)
    for p in [3u32, 5] {
        let spec = enumerate_spectrum(&p_group(p, "1,0;0,1"), bound).unwrap();
        expect_match(report, &format!("P3.7a-plus-id-p{p}"), &spec);

        let spec = enumerate_spectrum(&p_group(p, "-1,0;0,-1"), bound).unwrap();
        let frozen_extra = match p {
            3 => 6,
            _ => 40,
        };
        expect_documented_discrepancy(
            report,
            &format!("P3.7a-minus-id-p{p}"),
            &spec,
            &[frozen_extra],
        );

        let spec = enumerate_spectrum(&p_group(p, "1,0;0,-1"), bound).unwrap();
        expect_match(report, &format!("P3.7b-p{p}"), &spec);

        let theta = format!("{p},0;0,1/{p}");
        let spec = enumerate_spectrum(&p_group(p, &theta), bound).unwrap();
        expect_match(report, &format!("P3.7c-p{p}"), &spec);

        let theta = format!("{p},0;0,{}", p * p);
        let spec = enumerate_spectrum(&p_group(p, &theta), bound).unwrap();
        report.pass_fail(
            format!("P3.7d-p{p}"),
            spec.values().is_empty() && !spec.has_discrepancy(),
            spec.notes.join("; "),
        );

        let spec = enumerate_spectrum(&p_group(p, "0,1;1,0"), bound).unwrap();
        let four_p_sq = 4 * (p as u64).pow(2);
        expect_documented_discrepancy(report, &format!("P3.8a-p{p}"), &spec, &[four_p_sq]);

        let spec = enumerate_spectrum(&p_group(p, "0,-1;1,0"), bound).unwrap();
        // the stated plus-branch 2(p+1) is never attained; for p = 1 mod 4
        // the engine also exceeds the proof-derived set (odd exponents)
        expect_documented_discrepancy(report, &format!("P3.8b-p{p}"), &spec, &[2 * (p as u64 + 1)]);

        let theta = format!("0,{p};1,0");
        let spec = enumerate_spectrum(&p_group(p, &theta), bound).unwrap();
        report.pass_fail(
            format!("P3.8c-p{p}"),
            spec.values().is_empty() && !spec.has_discrepancy(),
            spec.notes.join("; "),
        );
    }
}

/// The four sign pairs at l1 = l2 = 0 for uv = 1, p = 2: the determinant
/// pairs (det(Id-N), -det(Id-MN)) must be (0,0), (0,0), (0,-4), (4,0) and
/// every one gives R = inf.
fn check_p36a_corner(report: &mut VerifyReport) {
    let g = p_group(2, "0,1;1,0");
    let id = Matrix::identity(2);
    let mut got = Vec::new();
    let mut all_infinite = true;
    for (e1, e2) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        // a + bv = e1, a - bv = e2 with u = v = 1
        let a = rat(e1 + e2, 2);
        let b = rat(e1 - e2, 2);
        let n = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b, a]]).unwrap();
        let d1 = (&id - &n).det().unwrap();
        let d2 = -(&id - &(g.theta() * &n)).det().unwrap();
        got.push((d1.to_string(), d2.to_string()));
        if n.is_invertible_over(g.ring()).unwrap() {
            let auto = AutoDesc::linear(n, Sign::Minus);
            all_infinite &=
                reidemeister_semidirect(&g, &auto).unwrap().total == ExtNat::Infinity;
        }
    }
    let want = [
        ("0".to_string(), "0".to_string()),
        ("0".to_string(), "0".to_string()),
        ("0".to_string(), "-4".to_string()),
        ("4".to_string(), "0".to_string()),
    ];
    report.pass_fail(
        "P3.6a-corner",
        got == want && all_infinite,
        format!("determinant pairs {got:?}, all infinite"),
    );
}

// -------------------------------------------------------- property suites

fn random_unit(rng: &mut StdRng, p: u32, t: i64) -> Rational {
    unit(p, if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(-t..=t))
}

/// Random 2x2 matrix invertible over Z[1/p], built from unit diagonals and
/// integer shears, returned with its exact inverse.
fn random_invertible_pair(rng: &mut StdRng, p: u32) -> (Matrix, Matrix) {
    let d1 = random_unit(rng, p, 2);
    let d2 = random_unit(rng, p, 2);
    let mut m = Matrix::from_rows(vec![
        vec![d1.clone(), Rational::zero()],
        vec![Rational::zero(), d2.clone()],
    ])
    .unwrap();
    let mut inv = Matrix::from_rows(vec![
        vec![d1.recip(), Rational::zero()],
        vec![Rational::zero(), d2.recip()],
    ])
    .unwrap();
    for _ in 0..3 {
        let c = rat(rng.gen_range(-4i64..=4), 1);
        let (i, j) = if rng.gen_bool(0.5) { (0, 1) } else { (1, 0) };
        let elementary = |coeff: &Rational| {
            Matrix::from_fn(2, 2, |r, s| {
                if r == s {
                    Rational::one()
                } else if (r, s) == (i, j) {
                    coeff.clone()
                } else {
                    Rational::zero()
                }
            })
        };
        m = &elementary(&c) * &m;
        inv = &inv * &elementary(&-c.clone());
    }
    debug_assert!((&m * &inv).is_identity());
    (m, inv)
}

fn check_property_suites(report: &mut VerifyReport) {
    // v_p multiplicativity on 1000 random pairs
    let mut rng = StdRng::seed_from_u64(0xABCD);
    let mut ok = true;
    for _ in 0..1000 {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let x = Rational::new(
            BigInt::from(rng.gen_range(-99i64..=99)),
            BigInt::from(p).pow(rng.gen_range(0..4)),
        );
        let y = Rational::new(
            BigInt::from(rng.gen_range(-99i64..=99)),
            BigInt::from(p).pow(rng.gen_range(0..4)),
        );
        if x.is_zero() || y.is_zero() {
            continue;
        }
        ok &= v_p(&(&x * &y), p).unwrap() == v_p(&x, p).unwrap() * v_p(&y, p).unwrap();
    }
    report.pass_fail("props-vp-multiplicativity", ok, "1000 random pairs");

    // composition closure: 500 random compatible pairs per theta case
    let mut rng = StdRng::seed_from_u64(0xBEEF);
    let mut ok = true;
    let cases: Vec<GroupDesc> = vec![
        p_group(2, "1,0;0,-1"),
        p_group(2, "-1,0;0,-1"),
        p_group(3, "0,1;1,0"),
        p_group(5, "-1"),
    ];
    for g in &cases {
        for _ in 0..500 {
            let (a1, a2) = (random_compatible(&mut rng, g), random_compatible(&mut rng, g));
            debug_assert!(check_automorphism(g, &a1).unwrap());
            debug_assert!(check_automorphism(g, &a2).unwrap());
            let composed = AutoDesc::linear(&a1.restriction * &a2.restriction, a1.eps * a2.eps);
            ok &= check_automorphism(g, &composed).unwrap();
        }
    }
    report.pass_fail(
        "props-composition-closure",
        ok,
        "500 compatible pairs per theta case compose to automorphisms",
    );

    // similarity invariance of the abelian Reidemeister number
    let mut rng = StdRng::seed_from_u64(0xD1CE);
    let mut ok = true;
    for _ in 0..500 {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let ring = Ring::p_local(p).unwrap();
        let (n, _) = random_invertible_pair(&mut rng, p);
        let (pm, pinv) = random_invertible_pair(&mut rng, p);
        let conj = &(&pm * &n) * &pinv;
        ok &= reidemeister_abelian(&n, &ring).unwrap()
            == reidemeister_abelian(&conj, &ring).unwrap();
    }
    report.pass_fail("props-similarity-invariance", ok, "500 random conjugations");

    // z-independence of the semidirect Reidemeister number
    let mut rng = StdRng::seed_from_u64(0xFACE);
    let mut ok = true;
    let g = p_group(2, "1,0;0,-1");
    for _ in 0..100 {
        let n = Matrix::from_rows(vec![
            vec![random_unit(&mut rng, 2, 3), Rational::zero()],
            vec![Rational::zero(), random_unit(&mut rng, 2, 3)],
        ])
        .unwrap();
        let z1: Vec<Rational> = (0..2)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(4)))
            .collect();
        let z2: Vec<Rational> = (0..2)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(8)))
            .collect();
        let r1 = reidemeister_semidirect(&g, &AutoDesc::new(n.clone(), Sign::Minus, z1)).unwrap();
        let r2 = reidemeister_semidirect(&g, &AutoDesc::new(n, Sign::Minus, z2)).unwrap();
        ok &= r1 == r2;
    }
    report.pass_fail("props-z-independence", ok, "100 random z pairs");

    // extended-natural algebra
    let fin = |v: u64| ExtNat::finite(v);
    let assoc = (&(&fin(2) + &fin(3)) + &fin(4)) == (&fin(2) + &(&fin(3) + &fin(4)));
    let comm = (&fin(7) + &fin(9)) == (&fin(9) + &fin(7));
    let absorb = (&ExtNat::Infinity + &fin(5)) == ExtNat::Infinity
        && (&fin(5) + &ExtNat::Infinity) == ExtNat::Infinity
        && (&ExtNat::Infinity + &ExtNat::Infinity) == ExtNat::Infinity;
    report.pass_fail(
        "props-extnat-absorption",
        assoc && comm && absorb,
        "associative, commutative, infinity-absorbing",
    );
}

/// A random automorphism compatible with the given theta, exercising both
/// eps values where both exist.
fn random_compatible(rng: &mut StdRng, g: &GroupDesc) -> AutoDesc {
    let p = g.ring().prime().unwrap();
    let minus = rng.gen_bool(0.5);
    match crate::spectrum::classify_theta(g) {
        crate::spectrum::ThetaCase::Scalar(_) => {
            let k = random_unit(rng, p, 3);
            AutoDesc::linear(
                Matrix::new(1, 1, vec![k]).unwrap(),
                if minus { Sign::Minus } else { Sign::Plus },
            )
        }
        crate::spectrum::ThetaCase::Diag(r, s) if r == -s.clone() => {
            // diagonal N works for both eps signs
            let n = Matrix::from_rows(vec![
                vec![random_unit(rng, p, 3), Rational::zero()],
                vec![Rational::zero(), random_unit(rng, p, 3)],
            ])
            .unwrap();
            AutoDesc::linear(n, if minus { Sign::Minus } else { Sign::Plus })
        }
        crate::spectrum::ThetaCase::Diag(_, _) => {
            // theta = -Id: everything invertible is compatible
            let (n, _) = random_invertible_pair(rng, p);
            AutoDesc::linear(n, if minus { Sign::Minus } else { Sign::Plus })
        }
        crate::spectrum::ThetaCase::AntiDiag(_, v) => {
            // uv = 1 here: for eps = -1, N = [[a,b],[b v^2, a]] with unit
            // combinations; for eps = +1, powers of theta times units
            if minus {
                let k1 = random_unit(rng, p, 3);
                let k2 = random_unit(rng, p, 3);
                let half = rat(1, 2);
                let a = (&k1 + &k2) * &half;
                let bv = (&k1 - &k2) * &half;
                let b = &bv / &v;
                let c = &bv * &v;
                AutoDesc::linear(
                    Matrix::from_rows(vec![vec![a.clone(), b], vec![c, a]]).unwrap(),
                    Sign::Minus,
                )
            } else {
                let scale = random_unit(rng, p, 3);
                let base = if rng.gen_bool(0.5) {
                    Matrix::identity(2)
                } else {
                    g.theta().clone()
                };
                AutoDesc::linear(base.scale(&scale), Sign::Plus)
            }
        }
        _ => {
            let (n, _) = random_invertible_pair(rng, p);
            AutoDesc::linear(n, if minus { Sign::Minus } else { Sign::Plus })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_has_no_failures_at_small_bounds() {
        let report = run_verification(&EnumBound {
            exponent: 2,
            value_cap: 300,
            coeff_bound: None,
        });
        for check in &report.checks {
            assert_ne!(
                check.status,
                Status::Fail,
                "{}: {}",
                check.id,
                check.detail
            );
        }
        assert!(report.discrepancies() > 0);
    }
}
