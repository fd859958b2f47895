//! Inversion on the locus sigma_12(z) = 0, where entries 1 and 2 of any
//! solution share an invariant line and fibers can be empty or
//! positive-dimensional.
//!
//! No finiteness claims are made here. The solver returns
//! * `Empty` with machine-checkable obstruction notes when no solution can
//!   exist at the working tolerance,
//! * `Undetermined` with a verified witness tuple when it can construct a
//!   point of the fiber, and
//! * plain `Undetermined` when a candidate was assembled but could not be
//!   verified — never a false emptiness claim.

use crate::coords::TraceVector;
use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64, I, ONE, ZERO};
use crate::tuple::{NTuple, SL2_DET_TOL};
use crate::Tolerances;

use super::fiber::{residual_allowance, Fiber, OrbitRep};
use super::forward::forward_tn;

/// Invert the trace map on the locus sigma_12(z) = 0.
///
/// Dispatch: both nu's zero -> parallel parabolic family; nu_1 nonzero ->
/// entry 1 diagonalizes and entry 2 is triangular in the same basis; nu_1
/// zero but nu_2 not -> solve with entries 1 and 2 exchanged. A z with
/// sigma_12 bounded away from zero is refused with `NotApplicable`; use the
/// general inversion entry point for those.
pub fn invert_on_z12(z: &TraceVector, tols: &Tolerances) -> Result<Fiber> {
    let m = z.max_norm();
    let s12 = z.sigma(1, 2)?;
    if !tols.is_branch_zero(s12.norm(), m.powi(4)) {
        return Err(Error::NotApplicable(format!(
            "sigma_12(z) has modulus {:.3e}; the shared-line solver applies only on its zero locus",
            s12.norm()
        )));
    }
    let m2 = m.powi(2);
    let nu1_zero = tols.is_branch_zero(z.nu(1)?.norm(), m2);
    let nu2_zero = tols.is_branch_zero(z.nu(2)?.norm(), m2);
    if nu1_zero && nu2_zero {
        parabolic_locus(z, tols)
    } else if nu1_zero {
        let mut fiber = invert_on_z12(&z.swap_first_two(), tols)?;
        if let Some(w) = fiber.witness.take() {
            fiber.witness = Some(OrbitRep {
                tuple: w.tuple.with_entries_swapped(1, 2)?,
                ..w
            });
        }
        fiber.notes.insert(
            0,
            "entries-exchanged: nu_1 vanishes but nu_2 does not, so the solve ran with entries 1 and 2 swapped".into(),
        );
        Ok(fiber)
    } else {
        regular_first_entry(z, tols)
    }
}

fn argmax_norm(values: &[C64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if v.norm() > values[best].norm() {
            best = i;
        }
    }
    best
}

/// Both traces sit at +-2: any solution has entries 1 and 2 parabolic with a
/// common fixed line. After normalizing both traces to +2, the pair traces
/// force u_j = z_1j - z_j and v_j = z_2j - z_j to be the outer products
/// b_1 c_j and b_2 c_j, so a 2x2 minor of [u; v] bounded away from zero is a
/// proof of emptiness, and rank <= 1 data admits an explicit witness.
fn parabolic_locus(z: &TraceVector, tols: &Tolerances) -> Result<Fiber> {
    let n = z.n();
    let m = z.max_norm();
    let mut zz = z.clone();
    let mut flips: Vec<usize> = Vec::new();
    for j in 1..=2 {
        let zj = zz.z(j)?;
        if (zj + 2.0).norm() < (zj - 2.0).norm() {
            zz = zz.negate_entry(j)?;
            flips.push(j);
        }
    }

    let u: Vec<C64> = (3..=n)
        .map(|j| Ok(zz.z_pair(1, j)? - zz.z(j)?))
        .collect::<Result<_>>()?;
    let v: Vec<C64> = (3..=n)
        .map(|j| Ok(zz.z_pair(2, j)? - zz.z(j)?))
        .collect::<Result<_>>()?;

    let mut largest: Option<(usize, usize, f64)> = None;
    for p in 0..u.len() {
        for q in (p + 1)..u.len() {
            let minor = (u[p] * v[q] - u[q] * v[p]).norm();
            if largest.is_none_or(|(_, _, b)| minor > b) {
                largest = Some((p, q, minor));
            }
        }
    }
    if let Some((p, q, minor)) = largest {
        if !tols.is_zero(minor, m * m) {
            let (j, l) = (p + 3, q + 3);
            return Ok(Fiber::empty_at(
                vec![format!(
                    "rank-obstruction: entries {j} and {l} give the parabolic pairing array [z_1j - z_j; z_2j - z_j] a 2x2 minor of modulus {minor:.3e}, so no tuple with a shared line maps to z"
                )],
                (j, l),
            ));
        }
    }

    let unorm = u.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let vnorm = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let (b1, b2, corners): (C64, C64, Vec<C64>) = if !tols.is_zero(unorm, m) && unorm >= vnorm {
        let js = argmax_norm(&u);
        (ONE, v[js] / u[js], u.clone())
    } else if !tols.is_zero(vnorm, m) {
        let js = argmax_norm(&v);
        (u[js] / v[js], ONE, v.clone())
    } else {
        (ONE, ONE, vec![ZERO; u.len()])
    };

    let mut entries = Vec::with_capacity(n);
    entries.push(Mat2::new(ONE, b1, ZERO, ONE));
    entries.push(Mat2::new(ONE, b2, ZERO, ONE));
    for j in 3..=n {
        let aj = zz.z(j)? / 2.0;
        let cj = corners[j - 3];
        if !tols.is_zero(cj.norm(), m) {
            entries.push(Mat2::new(aj, (aj * aj - ONE) / cj, cj, aj));
        } else {
            entries.push(Mat2::from_quaternion(
                aj,
                (ONE - aj * aj).sqrt(),
                ZERO,
                ZERO,
            ));
        }
    }
    let mut tuple = NTuple::new(entries)?;
    for &j in &flips {
        let negated = tuple.entry(j)?.scale(-ONE);
        tuple = tuple.with_entry_replaced(j, negated)?;
    }
    let notes = vec![
        "parabolic-family: entries 1 and 2 are parallel parabolic elements; the fiber may be positive-dimensional".into(),
    ];
    finish_with_witness(tuple, z, tols, notes)
}

/// Verify a candidate witness by a forward round trip; downgrade to a plain
/// `Undetermined` rather than ever claiming emptiness from a failed build.
fn finish_with_witness(
    tuple: NTuple,
    z: &TraceVector,
    tols: &Tolerances,
    mut notes: Vec<String>,
) -> Result<Fiber> {
    let residual = forward_tn(&tuple)?.max_abs_diff(z);
    let allowance = residual_allowance(tols, z.max_norm());
    if residual <= allowance {
        Ok(Fiber::undetermined_with_witness(
            notes,
            OrbitRep {
                tuple,
                pattern: String::new(),
                residual,
            },
        ))
    } else {
        notes.push(format!(
            "witness-verification-failed: candidate misses z by {residual:.3e} (allowed {allowance:.3e})"
        ));
        Ok(Fiber::undetermined(notes))
    }
}

/// nu_1(z) != 0: entry 1 diagonalizes and entry 2 is triangular in the same
/// basis, with beta_2 determined up to the sign of a square root. For each
/// admissible sign, try entry 2 with a unit corner (rigid completion) and
/// then entry 2 diagonal (always completable when every forced corner c_k
/// vanishes). Emptiness is claimed only when every sign/shape is obstructed
/// by a clean dichotomy; a built-but-unverified candidate blocks that claim.
fn regular_first_entry(z: &TraceVector, tols: &Tolerances) -> Result<Fiber> {
    let n = z.n();
    let m = z.max_norm();
    let m2 = m * m;
    let beta1 = (-z.nu(1)? / 2.0).sqrt();
    let nu2 = z.nu(2)?;
    let tau12 = z.tau(1, 2)?;
    let alpha: Vec<C64> = (1..=n)
        .map(|j| z.z(j).map(|x| x / 2.0))
        .collect::<Result<_>>()?;

    let beta2_mag = (-nu2 / 2.0).sqrt();
    let beta2_signs: Vec<(char, C64)> = if tols.is_branch_zero(nu2.norm(), m2) {
        vec![('+', beta2_mag)]
    } else {
        vec![('+', beta2_mag), ('-', -beta2_mag)]
    };
    // The two sign mismatches multiply to sigma_12(z) ~ 0, so the consistent
    // sign passes a sqrt(branch)-sized gate even when the other just misses.
    let sign_gate = tols.branch.sqrt() * m2.max(1.0);
    let allowance = residual_allowance(tols, m);

    let mut notes: Vec<String> = Vec::new();
    let mut fuzzy = false;

    for (sign, beta2) in beta2_signs {
        let mismatch = (tau12 + beta1 * beta2 * 2.0).norm();
        if mismatch > sign_gate {
            notes.push(format!(
                "sign-obstruction({sign}): tau_12 + 2 beta_1 beta_2 has modulus {mismatch:.3e}, so no solution uses this square root of -nu_2/2"
            ));
            continue;
        }
        let mut betas = vec![ZERO; n + 1];
        let mut corner = vec![ZERO; n + 1];
        let mut defect = vec![ZERO; n + 1];
        for k in 3..=n {
            let bk = -z.tau(1, k)? / (beta1 * 2.0);
            betas[k] = bk;
            corner[k] = z.tau(2, k)? + beta2 * bk * 2.0;
            defect[k] = alpha[k - 1] * alpha[k - 1] + bk * bk - ONE;
        }

        let shapes: [(&str, StdResult<Vec<Mat2>>); 2] = [
            (
                "triangular",
                triangular_second_entry(
                    n, m2, tols, &alpha, beta1, beta2, &betas, &corner, &defect,
                ),
            ),
            (
                "diagonal",
                diagonal_second_entry(n, m2, tols, &alpha, beta1, beta2, &betas, &corner, &defect),
            ),
        ];
        for (shape, built) in shapes {
            match built {
                Ok(entries) => {
                    let slack = SL2_DET_TOL.max(tols.tol * m2.max(1.0));
                    let tuple = NTuple::with_tol(entries, slack)?;
                    let residual = forward_tn(&tuple)?.max_abs_diff(z);
                    if residual <= allowance {
                        notes.push(format!(
                            "witness-shape({sign}, {shape}): entry 1 diagonal, entry 2 {shape} in the same basis"
                        ));
                        notes.push("shared-line: the fiber may be positive-dimensional; only nonemptiness is certified".into());
                        return Ok(Fiber::undetermined_with_witness(
                            notes,
                            OrbitRep {
                                tuple,
                                pattern: String::new(),
                                residual,
                            },
                        ));
                    }
                    fuzzy = true;
                    notes.push(format!(
                        "witness-verification-failed({sign}, {shape}): residual {residual:.3e} exceeds {allowance:.3e}"
                    ));
                }
                Err(msg) => notes.push(format!("shape-obstruction({sign}, {shape}): {msg}")),
            }
        }
    }

    if fuzzy {
        notes.push(
            "undetermined: a candidate was assembled but could not be verified, so neither nonemptiness nor emptiness is claimed".into(),
        );
        Ok(Fiber::undetermined(notes))
    } else {
        notes.push("empty: every square-root sign and second-entry shape is obstructed".into());
        Ok(Fiber::empty(notes))
    }
}

type StdResult<T> = std::result::Result<T, String>;

/// Entry 2 = [[alpha_2 + i beta_2, 1], [0, alpha_2 - i beta_2]]. Each later
/// entry has forced corner c_k and needs b_k c_k to equal its determinant
/// defect, which pins b_k unless c_k vanishes; then the defect must too.
#[allow(clippy::too_many_arguments)]
fn triangular_second_entry(
    n: usize,
    m2: f64,
    tols: &Tolerances,
    alpha: &[C64],
    beta1: C64,
    beta2: C64,
    betas: &[C64],
    corner: &[C64],
    defect: &[C64],
) -> StdResult<Vec<Mat2>> {
    let mut entries = Vec::with_capacity(n);
    entries.push(Mat2::diag(alpha[0] + I * beta1, alpha[0] - I * beta1));
    entries.push(Mat2::new(
        alpha[1] + I * beta2,
        ONE,
        ZERO,
        alpha[1] - I * beta2,
    ));
    for k in 3..=n {
        let hi = alpha[k - 1] + I * betas[k];
        let lo = alpha[k - 1] - I * betas[k];
        let dscale = alpha[k - 1].norm().powi(2) + betas[k].norm().powi(2);
        if !tols.is_zero(corner[k].norm(), m2) {
            entries.push(Mat2::new(hi, defect[k] / corner[k], corner[k], lo));
        } else if tols.is_zero(defect[k].norm(), dscale) {
            entries.push(Mat2::new(hi, ZERO, corner[k], lo));
        } else {
            return Err(format!(
                "entry {k} has corner modulus {:.3e} but determinant defect {:.3e}; no completion with a unit corner at entry 2",
                corner[k].norm(),
                defect[k].norm()
            ));
        }
    }
    Ok(entries)
}

/// Entry 2 diagonal: consistent only when every forced corner c_k vanishes;
/// the completion [[alpha_k + i beta_k, defect_k], [1, alpha_k - i beta_k]]
/// then always exists (exact determinant one, no division).
#[allow(clippy::too_many_arguments)]
fn diagonal_second_entry(
    n: usize,
    m2: f64,
    tols: &Tolerances,
    alpha: &[C64],
    beta1: C64,
    beta2: C64,
    betas: &[C64],
    corner: &[C64],
    defect: &[C64],
) -> StdResult<Vec<Mat2>> {
    for (k, ck) in corner.iter().enumerate().skip(3) {
        if !tols.is_zero(ck.norm(), m2) {
            return Err(format!(
                "entry {k} has forced corner of modulus {:.3e}, incompatible with a diagonal second entry",
                ck.norm()
            ));
        }
    }
    let mut entries = Vec::with_capacity(n);
    entries.push(Mat2::diag(alpha[0] + I * beta1, alpha[0] - I * beta1));
    entries.push(Mat2::diag(alpha[1] + I * beta2, alpha[1] - I * beta2));
    for k in 3..=n {
        entries.push(Mat2::new(
            alpha[k - 1] + I * betas[k],
            defect[k],
            ONE,
            alpha[k - 1] - I * betas[k],
        ));
    }
    Ok(entries)
}
