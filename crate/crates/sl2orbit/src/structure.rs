//! Structure theory of matrix tuples: simultaneous triangularization,
//! stability and irreducibility, normal forms, generator fixing, and explicit
//! conjugators.
//!
//! The load-bearing facts, each finitely checkable from the invariants in
//! [`crate::invariants`]:
//!
//! * a tuple is simultaneously triangularizable iff every sigma_jk and every
//!   Delta_jkl vanishes — equivalently iff every triple of entries is;
//! * a tuple is stable (no common invariant line, closed orbit of maximal
//!   dimension) iff some sigma_jk or Delta_jkl is nonzero;
//! * for SL(2,C) tuples, irreducible = stable, and irreducibility is also
//!   certified by any commutator-subgroup word with trace != 2.

mod conjugator;
mod culler_shalen;
mod generators;
mod line;
mod normal_form;
mod triangular;

pub use conjugator::conjugator;
pub use culler_shalen::{culler_shalen_sample, CommutatorEvidence, CERTIFY_THRESHOLD};
pub use generators::{fix_generators, GeneratorChange, Move};
pub use line::invariant_line_oracle;
pub use normal_form::transposition_normal_form;
pub use triangular::{
    diagonalize_component, is_irreducible, is_stable, triangularize, StabilityReport,
    TriangularizeReport,
};

use crate::mat2::C64;

/// First nonvanishing invariant found by the stability scan, with its value.
#[derive(Clone, Debug)]
pub enum Witness {
    Sigma {
        j: usize,
        k: usize,
        value: C64,
    },
    Delta {
        j: usize,
        k: usize,
        l: usize,
        value: C64,
    },
}

impl Witness {
    pub fn value(&self) -> C64 {
        match self {
            Witness::Sigma { value, .. } | Witness::Delta { value, .. } => *value,
        }
    }
}

/// Scan order frozen: pairs (j, k) with j < k lexicographically, then triples
/// (j, k, l) with j < k < l lexicographically; the first invariant exceeding
/// the scaled tolerance wins. Returns None when everything vanishes.
pub(crate) fn scan_witness(
    a: &crate::tuple::NTuple,
    tols: &crate::Tolerances,
) -> crate::Result<Option<Witness>> {
    let n = a.n();
    let norms: Vec<f64> = (1..=n)
        .map(|j| a.entry(j).map(|m| m.max_norm().max(1.0)))
        .collect::<crate::Result<_>>()?;
    for j in 1..=n {
        for k in (j + 1)..=n {
            let value = crate::invariants::sigma(a, j, k)?;
            let scale = (norms[j - 1] * norms[k - 1]).powi(2);
            if !tols.is_zero(value.norm(), scale) {
                return Ok(Some(Witness::Sigma { j, k, value }));
            }
        }
    }
    for j in 1..=n {
        for k in (j + 1)..=n {
            for l in (k + 1)..=n {
                let value = crate::invariants::delta(a, j, k, l)?;
                let scale = (norms[j - 1] * norms[k - 1] * norms[l - 1]).powi(2);
                if !tols.is_zero(value.norm(), scale) {
                    return Ok(Some(Witness::Delta { j, k, l, value }));
                }
            }
        }
    }
    Ok(None)
}
