//! Exact computation of Reidemeister numbers and Reidemeister spectra for
//! the metabelian groups Q^n x|_theta Z and Z[1/p]^n x|_theta Z.
//!
//! Everything is exact arithmetic: scalars are arbitrary-precision rationals
//! in canonical form, cokernel cardinalities come from determinant
//! valuations cross-checked by an independent Smith-normal-form route, and
//! the Q dichotomy is decided by a deterministic grid test for polynomial
//! identities.  No floating point anywhere.
//!
//! The crate layers as:
//!
//! - [`ring`]: canonical rationals, the rings Q / Z[1/p] / Z, the
//!   prime-to-p part `v_p`, and unit decompositions.
//! - [`matrix`] and [`snf`]: exact dense linear algebra, Bareiss
//!   determinants, Smith normal form with unimodular transforms.
//! - [`cokernel`]: cokernel cardinalities (the formula/oracle pair) and the
//!   extended naturals with absorbing infinity.
//! - [`group`]: group and automorphism descriptors, Reidemeister numbers of
//!   abelian and semidirect automorphisms, and the gcd formula for Z/mZ
//!   endomorphisms with its brute-force oracle.
//! - [`spectrum`]: the twisted centralizer equation, the {inf} vs {2, inf}
//!   decision over Q, theta classification, the closed-form spectrum
//!   catalog, and bounded enumeration with witnesses.
//! - [`verify`]: the clause-by-clause reproduction battery used by the CLI
//!   and the acceptance suite.

pub mod cokernel;
pub mod error;
pub mod group;
pub mod matrix;
pub mod ring;
pub mod snf;
pub mod spectrum;
pub mod verify;

pub use cokernel::{coker_card_formula, coker_card_oracle, coker_card_z_bruteforce, ExtNat};
pub use error::{Error, Result};
pub use group::{
    brute_force_cyclic, check_automorphism, reidemeister_abelian, reidemeister_cyclic_endo,
    reidemeister_semidirect, AutoDesc, GroupDesc, ReidemeisterResult,
};
pub use matrix::Matrix;
pub use ring::{parse_rational, unit_log, v_p, Rational, Ring, Sign, UnitDecomposition};
pub use snf::{smith_normal_form, SmithDecomposition};
pub use spectrum::{
    classify_theta, clause_for, closed_form, decide_q_spectrum, enumerate_spectrum,
    spectrum_membership, twisted_centralizer_basis, CentralizerSpace, ClauseCatalog, ClauseId,
    EnumBound, QSpectrumDecision, SpectrumReport, ThetaCase, Variant,
};
