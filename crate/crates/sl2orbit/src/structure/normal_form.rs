//! Transposition normal form: conjugate a tuple with sigma_12 != 0 so that
//! its first two entries are symmetric matrices.
//!
//! Symmetric first-two-entries is exactly the shape preserved by simultaneous
//! transposition, which is what makes the fiber enumeration of the Magnus
//! trace map finite. Two constructions cover the branch split on nu_1:
//!
//! * nu_1 != 0: diagonalize A_1 (distinct eigenvalues), then balance A_2 by a
//!   diagonal conjugation diag(x, 1/x) with x^4 = c_2/b_2, which makes A_2
//!   symmetric with equal off-diagonal entries;
//! * nu_1 = nu_2 = 0 (both unipotent type): put A_1 in upper Jordan form,
//!   drive A_2 lower triangular with g = [[x, 1], [0, 1/x]], x = e_2/(2 b_2)
//!   (this kills the upper entry because e_2^2 + 4 b_2 c_2 = 2 nu_2 = 0),
//!   balance b_1 = c_2, and finish with the unitary u = (1/sqrt 2)[[1, i],
//!   [i, 1]], which sends the pair to the symmetric lambda-form
//!   [[p + L, iL], [iL, p - L]], [[q - L, iL], [iL, q + L]] with 16 L^4 =
//!   sigma_12;
//! * nu_1 = 0 != nu_2: swap entries 1 and 2, run the first construction, and
//!   swap back (the conjugator is shared).

use crate::invariants;
use crate::mat2::{Mat2, C64, I, ONE, ZERO};
use crate::tuple::NTuple;
use crate::{Error, Result, Tolerances};

fn asym(m: &Mat2) -> f64 {
    (m.b - m.c).norm()
}

/// Conjugate the tuple so entries 1 and 2 become symmetric. Returns (B, g)
/// with B = g A g^-1, det g = 1. On SL(2,C) input with nu_1 != 0 the first
/// entry comes out diagonal and the second in the form
/// [[a_2, i d_2], [i d_2, d_2']] with d_2^2 = sigma_12 / (2 nu_1).
///
/// An input whose first two entries are already symmetric is returned
/// unchanged with g = I. Requires sigma_12 != 0 (NotApplicable otherwise);
/// inputs with |nu| within the branch tolerance of zero but not exactly zero
/// sit on a documented accuracy cliff.
pub fn transposition_normal_form(a: &NTuple, tols: &Tolerances) -> Result<(NTuple, Mat2)> {
    if a.n() < 2 {
        return Err(Error::NotApplicable(
            "normal form needs at least two entries".into(),
        ));
    }
    let m1 = a.entry(1)?.max_norm().max(1.0);
    let m2 = a.entry(2)?.max_norm().max(1.0);
    let sigma12 = invariants::sigma(a, 1, 2)?;
    if tols.is_zero(sigma12.norm(), (m1 * m2).powi(2)) {
        return Err(Error::NotApplicable(
            "sigma_12 vanishes: the pair shares a line".into(),
        ));
    }
    if asym(a.entry(1)?) <= tols.tol * m1 && asym(a.entry(2)?) <= tols.tol * m2 {
        return Ok((a.clone(), Mat2::identity()));
    }
    let nu1 = invariants::nu(a, 1)?;
    let nu2 = invariants::nu(a, 2)?;
    if !tols.is_branch_zero(nu1.norm(), m1 * m1) {
        distinct_eigenvalue_form(a, tols)
    } else if !tols.is_branch_zero(nu2.norm(), m2 * m2) {
        let swapped = a.with_entries_swapped(1, 2)?;
        let (b, g) = distinct_eigenvalue_form(&swapped, tols)?;
        Ok((b.with_entries_swapped(1, 2)?, g))
    } else {
        lambda_form(a, tols)
    }
}

/// nu_1 != 0 branch: A_1 has distinct eigenvalues. Conjugate into the
/// eigenbasis (normalized to determinant one) and balance the off-diagonal
/// entries of A_2.
fn distinct_eigenvalue_form(a: &NTuple, tols: &Tolerances) -> Result<(NTuple, Mat2)> {
    let a1 = a.entry(1)?;
    let (lp, lm) = a1.eigenvalues();
    let vp = a1
        .eigenvector_for(lp, tols.tol)
        .ok_or_else(|| Error::NumericalFailure("no eigenvector for the first entry".into()))?;
    let vm = a1
        .eigenvector_for(lm, tols.tol)
        .ok_or_else(|| Error::NumericalFailure("no eigenvector for the first entry".into()))?;
    let basis = Mat2::new(vp[0], vm[0], vp[1], vm[1]);
    let det = basis.det();
    if det.norm() <= tols.tol {
        return Err(Error::NumericalFailure(
            "eigenbasis of the first entry is singular".into(),
        ));
    }
    let basis = basis.scale(ONE / det.sqrt());
    let g0 = basis.sl2_inverse();
    let step1 = a.conjugate(&g0, tols.tol)?;
    let a2 = *step1.entry(2)?;
    let scale2 = a2.max_norm().max(1.0);
    // sigma_12 = -e_1^2 b_2 c_2 in this frame, so both off-diagonal entries
    // of A_2 are bounded away from zero.
    if a2.b.norm() <= tols.tol * scale2 || a2.c.norm() <= tols.tol * scale2 {
        return Err(Error::NumericalFailure(
            "second entry is triangular in the eigenbasis despite sigma_12 != 0".into(),
        ));
    }
    let x = (a2.c / a2.b).sqrt().sqrt();
    let g1 = Mat2::diag(x, ONE / x);
    let out = step1.conjugate(&g1, tols.tol)?;
    Ok((out, g1 * g0))
}

/// nu_1 = nu_2 = 0 branch (both entries unipotent type).
fn lambda_form(a: &NTuple, tols: &Tolerances) -> Result<(NTuple, Mat2)> {
    let a1 = a.entry(1)?;
    if a1.is_scalar(tols.tol) {
        return Err(Error::NumericalFailure(
            "first entry is scalar despite sigma_12 != 0".into(),
        ));
    }
    let mean = a1.trace() * 0.5;
    let v = a1
        .eigenvector_for(mean, tols.tol)
        .ok_or_else(|| Error::NumericalFailure("no eigenvector for the first entry".into()))?;
    // Unitary completion puts the repeated-eigenvalue eigenvector first:
    // upper Jordan form.
    let g0 = Mat2::new(v[0].conj(), v[1].conj(), -v[1], v[0]);
    let step1 = a.conjugate(&g0, tols.tol)?;
    let scale1 = step1.entry(1)?.max_norm().max(1.0);
    if step1.entry(1)?.b.norm() <= tols.tol * scale1 {
        return Err(Error::NumericalFailure(
            "first entry collapsed to a scalar".into(),
        ));
    }
    let a2 = *step1.entry(2)?;
    let scale2 = a2.max_norm().max(1.0);
    let (step2, g1) = if a2.b.norm() > tols.tol * scale2 {
        let e2 = a2.diff();
        // e_2 = 0 with b_2 != 0 would force c_2 = 0 (nu_2 = 0) and hence
        // sigma_12 = 0, against the precondition.
        if e2.norm() <= tols.tol * scale2 {
            return Err(Error::NumericalFailure(
                "second entry has equal diagonal and a nonzero upper corner".into(),
            ));
        }
        let x = e2 / (a2.b * 2.0);
        let g1 = Mat2::new(x, ONE, ZERO, ONE / x);
        (step1.conjugate(&g1, tols.tol)?, g1)
    } else {
        (step1.clone(), Mat2::identity())
    };
    let bb = step2.entry(1)?.b;
    let cc = step2.entry(2)?.c;
    if cc.norm() <= tols.tol * step2.entry(2)?.max_norm().max(1.0)
        || bb.norm() <= tols.tol * step2.entry(1)?.max_norm().max(1.0)
    {
        return Err(Error::NumericalFailure("balancing entries vanished".into()));
    }
    let x = (cc / bb).sqrt().sqrt();
    let g2 = Mat2::diag(x, ONE / x);
    let step3 = step2.conjugate(&g2, tols.tol)?;
    let r = C64::new(0.5_f64.sqrt(), 0.0);
    let u = Mat2::new(r, r * I, r * I, r);
    let out = step3.conjugate(&u, tols.tol)?;
    Ok((out, u * g2 * g1 * g0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{fingerprint, fingerprint_distance};

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn assert_sym_pair(b: &NTuple) {
        assert!(asym(b.entry(1).unwrap()) < 1e-9);
        assert!(asym(b.entry(2).unwrap()) < 1e-9);
    }

    fn assert_same_orbit(a: &NTuple, b: &NTuple) {
        let d = fingerprint_distance(&fingerprint(a).unwrap(), &fingerprint(b).unwrap()).unwrap();
        assert!(d < 1e-9, "fingerprint drift {d}");
    }

    #[test]
    fn symmetric_pair_is_returned_unchanged() {
        let a = NTuple::new(vec![
            Mat2::new(I, ZERO, ZERO, -I),
            Mat2::new(ZERO, I, I, ZERO),
        ])
        .unwrap();
        let (b, g) = transposition_normal_form(&a, &tols()).unwrap();
        assert_eq!(g, Mat2::identity());
        assert!(b.max_abs_diff(&a).unwrap() == 0.0);
    }

    #[test]
    fn distinct_eigenvalue_pair_reaches_diagonal_symmetric_shape() {
        // nu_1 = 2.5, sigma_12 = -71.
        let a = NTuple::new(vec![
            Mat2::from_real(2.0, 1.0, 1.0, 1.0),
            Mat2::from_real(1.0, 2.0, 3.0, 7.0),
        ])
        .unwrap();
        assert!(a.is_sl2());
        let t = tols();
        let (b, g) = transposition_normal_form(&a, &t).unwrap();
        assert!((g.det() - ONE).norm() < 1e-10);
        assert_sym_pair(&b);
        let b1 = b.entry(1).unwrap();
        assert!(
            b1.b.norm() < 1e-9 && b1.c.norm() < 1e-9,
            "first entry diagonal"
        );
        // delta_2^2 = sigma_12 / (2 nu_1) = -71/5.
        let d2 = b.entry(2).unwrap().b / I;
        assert!((d2 * d2 - C64::new(-14.2, 0.0)).norm() < 1e-9);
        assert_same_orbit(&a, &b);
        // The returned g really performs the move.
        assert!(a.conjugate(&g, t.tol).unwrap().max_abs_diff(&b).unwrap() < 1e-9);
    }

    #[test]
    fn unipotent_pair_reaches_lambda_shape() {
        // nu_1 = nu_2 = 0, sigma_12 = (b_1 c_2)^2 = 36.
        let a = NTuple::new(vec![
            Mat2::from_real(1.0, 2.0, 0.0, 1.0),
            Mat2::from_real(1.0, 0.0, 3.0, 1.0),
        ])
        .unwrap();
        let t = tols();
        let (b, g) = transposition_normal_form(&a, &t).unwrap();
        assert!((g.det() - ONE).norm() < 1e-10);
        assert_sym_pair(&b);
        let b1 = b.entry(1).unwrap();
        // Lambda shape: off-diagonal entry equals i * (a - d)/2.
        let lambda = b1.diff() * 0.5;
        assert!((b1.b - I * lambda).norm() < 1e-9);
        // 16 lambda^4 = sigma_12 = 36.
        assert!((lambda.powu(4) * 16.0 - C64::new(36.0, 0.0)).norm() < 1e-8);
        assert_same_orbit(&a, &b);
    }

    #[test]
    fn swaps_roles_when_only_second_entry_has_distinct_eigenvalues() {
        let a = NTuple::new(vec![
            Mat2::from_real(1.0, 2.0, 0.0, 1.0),
            Mat2::from_real(2.0, 1.0, 1.0, 1.0),
        ])
        .unwrap();
        let t = tols();
        let (b, g) = transposition_normal_form(&a, &t).unwrap();
        assert_sym_pair(&b);
        let b2 = b.entry(2).unwrap();
        assert!(
            b2.b.norm() < 1e-9 && b2.c.norm() < 1e-9,
            "second entry diagonal"
        );
        assert_same_orbit(&a, &b);
        assert!(a.conjugate(&g, t.tol).unwrap().max_abs_diff(&b).unwrap() < 1e-9);
    }

    #[test]
    fn triangular_pair_is_rejected() {
        let a = NTuple::new(vec![
            Mat2::from_real(2.0, 1.0, 0.0, 0.5),
            Mat2::from_real(3.0, 0.0, 0.0, 1.0 / 3.0),
        ])
        .unwrap();
        assert!(matches!(
            transposition_normal_form(&a, &tols()),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn extra_entries_ride_along() {
        let a = NTuple::new(vec![
            Mat2::from_real(2.0, 1.0, 1.0, 1.0),
            Mat2::from_real(1.0, 2.0, 3.0, 7.0),
            Mat2::from_real(0.0, 1.0, -1.0, 0.0),
        ])
        .unwrap();
        let t = tols();
        let (b, g) = transposition_normal_form(&a, &t).unwrap();
        assert_sym_pair(&b);
        assert_same_orbit(&a, &b);
        assert!(a.conjugate(&g, t.tol).unwrap().max_abs_diff(&b).unwrap() < 1e-9);
    }
}
