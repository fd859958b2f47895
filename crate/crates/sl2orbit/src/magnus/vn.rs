//! Inversion of the extended trace map on V_n (general 2x2 tuples, no
//! determinant constraint).

use crate::coords::VnTraceVector;
use crate::error::{Error, Result};
use crate::invariants::{fingerprint_distance, vn_trace_profile};
use crate::mat2::{Mat2, C64, ZERO};
use crate::tuple::NTuple;
use crate::Tolerances;

use super::fiber::{pattern_string, Fiber, OrbitRep, MAX_FREE_SIGNS};
use super::forward::forward_that_n;

/// Invert the extended trace map at z.
///
/// Requires tau_11(z) != 0 and sigma_12(z) != 0; either degeneracy yields an
/// `Undetermined` fiber (a status, not an error), since the quaternion
/// components stop being pinned by the coordinates there. Off those loci the
/// extra square coordinates determine every entry up to independent sign
/// choices of gamma_3..gamma_n, which are enumerated exactly like the
/// transposition patterns of the determinant-one fiber.
pub fn invert_that_n(z: &VnTraceVector, tols: &Tolerances) -> Result<Fiber> {
    let n = z.n();
    let m = z.max_norm();
    let tau11 = z.tau(1, 1)?;
    if tols.is_branch_zero(tau11.norm(), m * m) {
        return Ok(Fiber::undetermined(vec![format!(
            "tau-11-degenerate: |tau_11(z)| = {:.3e} pins no beta component for entry 1",
            tau11.norm()
        )]));
    }
    let sigma12 = z.sigma12()?;
    if tols.is_branch_zero(sigma12.norm(), m.powi(4)) {
        return Ok(Fiber::undetermined(vec![format!(
            "sigma-12-degenerate: |sigma_12(z)| = {:.3e}; entries 1 and 2 of any preimage share a line and the fiber need not be finite",
            sigma12.norm()
        )]));
    }
    let k_free = n - 2;
    if k_free > MAX_FREE_SIGNS {
        return Err(Error::InvalidInput(format!(
            "fiber enumeration over 2^{k_free} gamma signs exceeds the 2^{MAX_FREE_SIGNS} cap"
        )));
    }

    let alpha: Vec<C64> = (1..=n)
        .map(|j| z.z(j).map(|x| x / 2.0))
        .collect::<Result<_>>()?;
    let beta1 = (-tau11 / 2.0).sqrt();
    let delta2 = (sigma12 / (tau11 * 2.0)).sqrt();
    let tau12 = z.tau(1, 2)?;

    let mut entries = Vec::with_capacity(n);
    entries.push(Mat2::from_quaternion(alpha[0], beta1, ZERO, ZERO));
    entries.push(Mat2::from_quaternion(
        alpha[1],
        -tau12 / (beta1 * 2.0),
        ZERO,
        delta2,
    ));
    for k in 3..=n {
        let tau1k = z.tau(1, k)?;
        let tau2k = z.tau(2, k)?;
        let betak = -tau1k / (beta1 * 2.0);
        let deltak = (tau12 * tau1k - tau11 * tau2k) / (delta2 * tau11 * 2.0);
        let gammak = (-z.delta_12k(k)? / (sigma12 * 4.0)).sqrt();
        entries.push(Mat2::from_quaternion(alpha[k - 1], betak, gammak, deltak));
    }
    let base = NTuple::new(entries)?;

    let mut orbits: Vec<OrbitRep> = Vec::new();
    let mut profiles: Vec<Vec<C64>> = Vec::new();
    for mask in 0..(1usize << k_free) {
        let mut t = base.clone();
        for p in 0..k_free {
            if mask >> (k_free - 1 - p) & 1 == 1 {
                t = t.with_entry_transposed(3 + p)?;
            }
        }
        let profile = vn_trace_profile(&t)?;
        let duplicate = profiles
            .iter()
            .any(|q| fingerprint_distance(q, &profile).is_some_and(|d| d <= tols.fingerprint));
        if duplicate {
            continue;
        }
        let residual = forward_that_n(&t)?.max_abs_diff(z);
        orbits.push(OrbitRep {
            tuple: t,
            pattern: pattern_string(mask, k_free),
            residual,
        });
        profiles.push(profile);
    }
    Ok(Fiber::nonempty(orbits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::delta;
    use crate::magnus::fiber::FiberStatus;
    use crate::tuple::random_tuple;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn real_vec(n: usize, coords: &[f64]) -> VnTraceVector {
        VnTraceVector::new(n, coords.iter().map(|&x| C64::new(x, 0.0)).collect()).unwrap()
    }

    fn generic(z: &VnTraceVector, t: &Tolerances) -> bool {
        let m = z.max_norm();
        !t.is_branch_zero(z.tau(1, 1).unwrap().norm(), m * m)
            && !t.is_branch_zero(z.sigma12().unwrap().norm(), m.powi(4))
    }

    #[test]
    fn round_trips_recover_the_trace_profile() {
        let t = tols();
        for (seed, n) in [(11u64, 2usize), (12, 3), (13, 3), (14, 4), (15, 4)] {
            let a = random_tuple(seed, n);
            let z = forward_that_n(&a).unwrap();
            if !generic(&z, &t) {
                continue;
            }
            let fiber = invert_that_n(&z, &t).unwrap();
            assert_eq!(fiber.status, FiberStatus::NonemptyFinite);
            assert!(!fiber.orbits.is_empty() && fiber.orbits.len() <= 1 << (n - 2));
            for orbit in &fiber.orbits {
                assert!(
                    orbit.residual < 1e-8,
                    "seed {seed}: residual {:.3e}",
                    orbit.residual
                );
            }
            let target = vn_trace_profile(&a).unwrap();
            let matched = fiber
                .orbits
                .iter()
                .filter(|o| {
                    fingerprint_distance(&target, &vn_trace_profile(&o.tuple).unwrap())
                        .is_some_and(|d| d <= 1e-7)
                })
                .count();
            assert_eq!(
                matched, 1,
                "seed {seed}: input profile must match exactly one orbit"
            );
        }
    }

    #[test]
    fn triangular_pair_image_is_undetermined() {
        // Forward image of (diag(2,1), [[1,1],[0,2]]): sigma_12 vanishes.
        let z = real_vec(2, &[3.0, 5.0, 3.0, 5.0, 4.0]);
        let fiber = invert_that_n(&z, &tols()).unwrap();
        assert_eq!(fiber.status, FiberStatus::Undetermined);
        assert!(fiber.orbits.is_empty() && fiber.witness.is_none());
        assert!(fiber
            .notes
            .iter()
            .any(|s| s.starts_with("sigma-12-degenerate")));
    }

    #[test]
    fn vanishing_tau_11_is_undetermined() {
        let z = real_vec(2, &[2.0, 2.0, 0.0, 0.0, 1.0]);
        let fiber = invert_that_n(&z, &tols()).unwrap();
        assert_eq!(fiber.status, FiberStatus::Undetermined);
        assert!(fiber
            .notes
            .iter()
            .any(|s| s.starts_with("tau-11-degenerate")));
    }

    #[test]
    fn gram_form_of_delta_matches_the_word_expansion() {
        for seed in [21u64, 22, 23] {
            let a = random_tuple(seed, 4);
            let z = forward_that_n(&a).unwrap();
            for k in 3..=4 {
                let from_z = z.delta_12k(k).unwrap();
                let from_words = delta(&a, 1, 2, k).unwrap();
                assert!(
                    (from_z - from_words).norm() < 1e-8,
                    "seed {seed}, k = {k}: {from_z} vs {from_words}"
                );
            }
        }
    }

    #[test]
    fn generic_four_entry_fiber_lists_all_gamma_signs_in_order() {
        let t = tols();
        let a = random_tuple(31, 4);
        let z = forward_that_n(&a).unwrap();
        assert!(
            generic(&z, &t),
            "seed 31 must stay away from the degenerate loci"
        );
        let fiber = invert_that_n(&z, &t).unwrap();
        let patterns: Vec<&str> = fiber.orbits.iter().map(|o| o.pattern.as_str()).collect();
        assert_eq!(patterns, ["++", "+-", "-+", "--"]);
    }
}
