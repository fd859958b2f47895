//! Fiber representation, orbit enumeration, and the round-trip certifier.

use crate::coords::TraceVector;
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, fingerprint_distance, sigma};
use crate::mat2::C64;
use crate::tuple::NTuple;
use crate::Tolerances;

use super::forward::forward_tn;

/// Hard cap on the number of free transposition signs (entries beyond the
/// first two): at most 2^16 candidate patterns are enumerated.
pub const MAX_FREE_SIGNS: usize = 16;

/// How a fiber computation resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberStatus {
    /// The fiber is a nonempty union of at most 2^(n-2) conjugacy orbits,
    /// all listed in `orbits`.
    NonemptyFinite,
    /// The fiber is provably empty; `notes` (and, for the rank obstruction,
    /// `witness_indices`) record why.
    Empty,
    /// Nothing finite is claimed. When `witness` is present the fiber is
    /// nonempty — it contains the witness — but may be positive-dimensional.
    Undetermined,
}

/// One conjugacy orbit of a fiber: a representative tuple, the transposition
/// pattern that produced it from the base solution (one '+' or '-' per entry
/// 3..n, leftmost = entry 3, '-' meaning transposed; empty for n = 2 and for
/// witnesses), and the forward residual max |T(tuple) - z|.
#[derive(Clone, Debug)]
pub struct OrbitRep {
    pub tuple: NTuple,
    pub pattern: String,
    pub residual: f64,
}

/// The fiber of a trace vector, as far as it could be decided.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub status: FiberStatus,
    /// Orbit representatives in binary sign-pattern order (entry n is the
    /// least significant sign); populated only for `NonemptyFinite`.
    pub orbits: Vec<OrbitRep>,
    /// A verified point of the fiber when the status is `Undetermined` but
    /// nonemptiness was established constructively.
    pub witness: Option<OrbitRep>,
    /// For the rank-two emptiness obstruction: the entry indices (j, l) whose
    /// off-diagonal data is inconsistent.
    pub witness_indices: Option<(usize, usize)>,
    /// Machine-readable reasons for `Empty` / `Undetermined` outcomes; the
    /// leading token of each note is a stable slug.
    pub notes: Vec<String>,
}

impl Fiber {
    pub(crate) fn nonempty(orbits: Vec<OrbitRep>) -> Self {
        Fiber {
            status: FiberStatus::NonemptyFinite,
            orbits,
            witness: None,
            witness_indices: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn empty(notes: Vec<String>) -> Self {
        Fiber {
            status: FiberStatus::Empty,
            orbits: Vec::new(),
            witness: None,
            witness_indices: None,
            notes,
        }
    }

    pub(crate) fn empty_at(notes: Vec<String>, indices: (usize, usize)) -> Self {
        Fiber {
            witness_indices: Some(indices),
            ..Fiber::empty(notes)
        }
    }

    pub(crate) fn undetermined(notes: Vec<String>) -> Self {
        Fiber {
            status: FiberStatus::Undetermined,
            orbits: Vec::new(),
            witness: None,
            witness_indices: None,
            notes,
        }
    }

    pub(crate) fn undetermined_with_witness(notes: Vec<String>, witness: OrbitRep) -> Self {
        Fiber {
            witness: Some(witness),
            ..Fiber::undetermined(notes)
        }
    }
}

/// '+'/'-' pattern for entries 3..n: bit 0 of `mask` is entry n (least
/// significant), so counting masks upward lists patterns in lexicographic
/// order with '+' < '-'.
pub(crate) fn pattern_string(mask: usize, k_free: usize) -> String {
    (0..k_free)
        .map(|p| {
            if mask >> (k_free - 1 - p) & 1 == 1 {
                '-'
            } else {
                '+'
            }
        })
        .collect()
}

/// Residual allowed between a fiber member's trace vector and the target z
/// (degree-4 scale; the branch tolerance dominates because near-cliff inputs
/// are solved after snapping coordinates by up to that much).
pub(crate) fn residual_allowance(tols: &Tolerances, max_norm: f64) -> f64 {
    tols.tol.max(tols.branch) * max_norm.max(1.0).powi(4)
}

/// Enumerate the fiber through a verified base solution: all 2^(n-2)
/// transposition patterns of entries 3..n, deduplicated by trace fingerprint
/// (a pattern collapses when the entry it flips is already symmetric).
///
/// The base must carry the SL2 flag, match z under the trace map, have
/// transposition-invariant entries 1 and 2, and satisfy sigma_12 != 0;
/// anything else is an `InvalidBase` error.
pub fn enumerate_fiber(base: &NTuple, z: &TraceVector, tols: &Tolerances) -> Result<Fiber> {
    if base.n() != z.n() {
        return Err(Error::InvalidBase(format!(
            "base has n = {} but the trace vector has n = {}",
            base.n(),
            z.n()
        )));
    }
    if !base.is_sl2() {
        return Err(Error::InvalidBase(
            "base entries must have determinant one".into(),
        ));
    }
    for j in 1..=2 {
        let e = base.entry(j)?;
        if !tols.is_zero((e.b - e.c).norm(), e.max_norm()) {
            return Err(Error::InvalidBase(format!(
                "entry {j} of the base must be transposition-invariant (|b - c| = {:.3e})",
                (e.b - e.c).norm()
            )));
        }
    }
    let s12 = sigma(base, 1, 2)?;
    let pair_scale = (base.entry(1)?.max_norm() * base.entry(2)?.max_norm()).powi(2);
    if tols.is_branch_zero(s12.norm(), pair_scale) {
        return Err(Error::InvalidBase(
            "sigma_12 of the base vanishes; entries 1 and 2 share an invariant line".into(),
        ));
    }
    let allowance = residual_allowance(tols, z.max_norm());
    let base_residual = forward_tn(base)?.max_abs_diff(z);
    if base_residual > allowance {
        return Err(Error::InvalidBase(format!(
            "trace map of the base misses z by {base_residual:.3e} (allowed {allowance:.3e})"
        )));
    }
    let k_free = base.n() - 2;
    if k_free > MAX_FREE_SIGNS {
        return Err(Error::InvalidInput(format!(
            "fiber enumeration over 2^{k_free} transposition patterns exceeds the 2^{MAX_FREE_SIGNS} cap"
        )));
    }

    let mut orbits: Vec<OrbitRep> = Vec::new();
    let mut prints: Vec<Vec<C64>> = Vec::new();
    for mask in 0..(1usize << k_free) {
        let mut t = base.clone();
        for p in 0..k_free {
            if mask >> (k_free - 1 - p) & 1 == 1 {
                t = t.with_entry_transposed(3 + p)?;
            }
        }
        let fp = fingerprint(&t)?;
        let duplicate = prints
            .iter()
            .any(|q| fingerprint_distance(q, &fp).is_some_and(|d| d <= tols.fingerprint));
        if duplicate {
            continue;
        }
        let residual = forward_tn(&t)?.max_abs_diff(z);
        orbits.push(OrbitRep {
            tuple: t,
            pattern: pattern_string(mask, k_free),
            residual,
        });
        prints.push(fp);
    }
    Ok(Fiber::nonempty(orbits))
}

/// Result of the forward-invert round trip on a concrete tuple.
#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub pass: bool,
    pub orbit_count: usize,
    /// Sign pattern of the unique orbit matching the input's fingerprint.
    pub matched_pattern: Option<String>,
    /// Fingerprint distance to that orbit.
    pub matched_distance: Option<f64>,
    /// Largest forward residual over the fiber's orbits.
    pub max_residual: f64,
    /// Everything that went wrong; empty iff `pass`.
    pub failures: Vec<String>,
}

/// End-to-end certification that inversion recovers a tuple's orbit:
/// z = T_n(A), invert, then require a nonempty finite fiber, small forward
/// residuals throughout, and exactly one orbit whose fingerprint is A's.
pub fn fiber_cross_check(a: &NTuple, tols: &Tolerances) -> Result<CrossCheckReport> {
    if !a.is_sl2() {
        return Err(Error::NotSL2(
            "the round-trip certification needs determinant-one entries".into(),
        ));
    }
    if a.n() < 2 {
        return Err(Error::InvalidInput(
            "the round-trip certification needs n >= 2".into(),
        ));
    }
    let s12 = sigma(a, 1, 2)?;
    let pair_scale = (a.entry(1)?.max_norm() * a.entry(2)?.max_norm()).powi(2);
    if tols.is_branch_zero(s12.norm(), pair_scale) {
        return Err(Error::NotApplicable(
            "sigma_12 vanishes; finite-fiber certification needs sigma_12 != 0".into(),
        ));
    }

    let z = forward_tn(a)?;
    let fiber = super::invert_tn(&z, tols)?;
    let mut failures = Vec::new();
    if fiber.status != FiberStatus::NonemptyFinite {
        failures.push(format!(
            "inversion returned {:?} instead of NonemptyFinite",
            fiber.status
        ));
    }
    let allowance = residual_allowance(tols, z.max_norm());
    let max_residual = fiber.orbits.iter().map(|o| o.residual).fold(0.0, f64::max);
    for o in &fiber.orbits {
        if o.residual > allowance {
            failures.push(format!(
                "orbit '{}' has forward residual {:.3e} (allowed {allowance:.3e})",
                o.pattern, o.residual
            ));
        }
    }
    let fp = fingerprint(a)?;
    let mut matches: Vec<(String, f64)> = Vec::new();
    for o in &fiber.orbits {
        let d = fingerprint_distance(&fp, &fingerprint(&o.tuple)?).unwrap_or(f64::INFINITY);
        if d <= tols.fingerprint {
            matches.push((o.pattern.clone(), d));
        }
    }
    match matches.len() {
        1 => {}
        0 => failures.push("no orbit of the fiber matches the input's fingerprint".into()),
        k => failures.push(format!(
            "{k} orbits match the input's fingerprint; expected one"
        )),
    }
    let (matched_pattern, matched_distance) = matches.into_iter().next().unzip();
    Ok(CrossCheckReport {
        pass: failures.is_empty(),
        orbit_count: fiber.orbits.len(),
        matched_pattern,
        matched_distance,
        max_residual,
        failures,
    })
}
