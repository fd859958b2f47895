//! Conjugation invariants, stability and irreducibility tests, and
//! trace-coordinate fiber enumeration for n-tuples of 2x2 complex matrices.
//!
//! The library revolves around three layers:
//!
//! * [`mat2`], [`word`], [`tuple`] — matrices, free-group words, and the
//!   [`tuple::NTuple`] type they act on;
//! * [`invariants`], [`coords`] — the tau/nu/sigma/Delta invariants, trace
//!   fingerprints, and trace-coordinate vectors;
//! * [`structure`], [`magnus`] — triangularization and stability criteria,
//!   normal forms, generator fixing, and forward/inverse evaluation of the
//!   Magnus trace map with full fiber enumeration.
//!
//! The [`cli`] module backs the `sl2orbit` binary (JSON requests in, JSON
//! reports out).
//!
//! Every comparison against zero uses an absolute tolerance scaled by the
//! magnitude of the operands; see [`Tolerances`] for the three knobs.

pub mod cli;
pub mod coords;
pub mod error;
pub mod invariants;
pub mod magnus;
pub mod mat2;
pub mod structure;
pub mod tuple;
pub mod word;

pub use error::{Error, Result};
pub use mat2::{Mat2, C64};
pub use tuple::NTuple;
pub use word::Word;

/// Tolerance knobs shared across the library.
///
/// * `tol` — general zero test: a quantity q built from operands of magnitude
///   m counts as zero when |q| <= tol * max(1, m^deg) with deg the algebraic
///   degree of q in the operands.
/// * `branch` — case-split threshold for the inversion branch choices
///   (nu(z) ~ 0, sigma(z) ~ 0), deliberately looser than `tol` because the
///   formulas on either side of the cliff divide by these quantities.
/// * `fingerprint` — per-coordinate threshold when comparing trace
///   fingerprints for orbit identity.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub tol: f64,
    pub branch: f64,
    pub fingerprint: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol: 1e-9,
            branch: 1e-8,
            fingerprint: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn with_tol(tol: f64) -> Self {
        Tolerances {
            tol,
            ..Default::default()
        }
    }

    /// |value| <= tol * max(1, scale)?
    pub fn is_zero(&self, value: f64, scale: f64) -> bool {
        value <= self.tol * scale.max(1.0)
    }

    /// |value| <= branch * max(1, scale)?
    pub fn is_branch_zero(&self, value: f64, scale: f64) -> bool {
        value <= self.branch * scale.max(1.0)
    }
}
