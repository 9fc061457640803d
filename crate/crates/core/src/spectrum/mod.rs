//! Spectrum-level machinery: the twisted centralizer equation, the Q
//! dichotomy, theta classification, the closed-form catalog, and bounded
//! enumeration of Z[1/p] spectra.

mod catalog;
mod centralizer;
mod classify;
mod enumerate;

pub use catalog::{closed_form, ClauseCatalog, SpectrumFamily, Variant};
pub use centralizer::{
    decide_q_spectrum, twisted_centralizer_basis, CentralizerSpace, InfCertificate,
    QSpectrumDecision,
};
pub use classify::{classify_theta, clause_for, companion_witness, ClauseId, ThetaCase};
pub use enumerate::{
    bounded_generic_search, enumerate_spectrum, EnumBound, SpectrumReport, VariantComparison,
};

use num_bigint::BigUint;

use crate::cokernel::ExtNat;

/// Membership of a Reidemeister value in a closed-form set; infinity always
/// belongs.
pub fn spectrum_membership(value: &ExtNat, family: &SpectrumFamily) -> bool {
    match value {
        ExtNat::Infinity => true,
        ExtNat::Finite(k) => family.contains(k),
    }
}

/// Convenience for tests and the CLI: membership of a small finite value.
pub fn spectrum_membership_u64(value: u64, family: &SpectrumFamily) -> bool {
    family.contains(&BigUint::from(value))
}
