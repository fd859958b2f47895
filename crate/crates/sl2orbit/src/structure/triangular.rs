//! Simultaneous triangularization and the stability / irreducibility
//! decisions, all reduced to the finite invariant scan.

use super::line::invariant_line_oracle;
use super::{scan_witness, Witness};
use crate::mat2::{Mat2, C64};
use crate::tuple::NTuple;
use crate::{Error, Result, Tolerances};

/// Outcome of the stability decision.
#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub stable: bool,
    /// First nonvanishing invariant in the frozen scan order, when stable.
    pub witness: Option<Witness>,
}

/// Outcome of the triangularization attempt.
#[derive(Clone, Debug)]
pub struct TriangularizeReport {
    pub triangularizable: bool,
    /// Determinant-one conjugator g with g A_j g^-1 upper triangular for all
    /// j, present exactly when triangularizable.
    pub conjugator: Option<Mat2>,
    /// Obstruction when not triangularizable.
    pub witness: Option<Witness>,
    /// Largest |lower-left entry| over the conjugated tuple, when
    /// triangularizable.
    pub max_subdiagonal: Option<f64>,
}

/// A tuple is stable iff some sigma_jk or Delta_jkl is nonzero; equivalently
/// iff it has no common invariant line.
pub fn is_stable(a: &NTuple, tols: &Tolerances) -> Result<StabilityReport> {
    let witness = scan_witness(a, tols)?;
    Ok(StabilityReport {
        stable: witness.is_some(),
        witness,
    })
}

/// For SL(2,C) tuples irreducibility coincides with stability. Rejects
/// tuples whose entries are not all determinant one.
pub fn is_irreducible(a: &NTuple, tols: &Tolerances) -> Result<StabilityReport> {
    if !a.is_sl2() {
        return Err(Error::NotSL2(
            "irreducibility is defined for determinant-one tuples".into(),
        ));
    }
    is_stable(a, tols)
}

/// Decide simultaneous upper-triangularizability and produce a conjugator.
///
/// The decision is the vanishing of every sigma_jk and Delta_jkl. When they
/// all vanish, a common invariant line v is found by the eigenvector oracle
/// and completed to the unitary determinant-one conjugator
/// g = [[conj v_1, conj v_2], [-v_2, v_1]], which maps span(v) to span(e_1)
/// and so makes every entry upper triangular.
pub fn triangularize(a: &NTuple, tols: &Tolerances) -> Result<TriangularizeReport> {
    if let Some(witness) = scan_witness(a, tols)? {
        return Ok(TriangularizeReport {
            triangularizable: false,
            conjugator: None,
            witness: Some(witness),
            max_subdiagonal: None,
        });
    }
    let v = invariant_line_oracle(a, tols).ok_or_else(|| {
        Error::NumericalFailure("invariants vanish but no common line was found".into())
    })?;
    let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v = [v[0] / nv, v[1] / nv];
    // Unitary completion; det g = |v_1|^2 + |v_2|^2 = 1.
    let g = Mat2::new(v[0].conj(), v[1].conj(), -v[1], v[0]);
    let conjugated = a.conjugate(&g, tols.tol)?;
    let mut max_sub: f64 = 0.0;
    for m in conjugated.entries() {
        max_sub = max_sub.max(m.c.norm());
        let bound = tols.tol * m.max_norm().max(1.0);
        if m.c.norm() > bound {
            return Err(Error::NumericalFailure(
                "conjugated entry kept a large lower-left corner".into(),
            ));
        }
    }
    Ok(TriangularizeReport {
        triangularizable: true,
        conjugator: Some(g),
        witness: None,
        max_subdiagonal: Some(max_sub),
    })
}

/// Given an upper-triangular tuple whose j-th entry has distinct diagonal
/// entries, conjugate by the unipotent g = [[1, b_j/(a_j - d_j)], [0, 1]] so
/// that the j-th entry becomes diagonal while every entry stays upper
/// triangular. Returns the conjugated tuple and g.
pub fn diagonalize_component(a: &NTuple, j: usize, tols: &Tolerances) -> Result<(NTuple, Mat2)> {
    a.check_index(j)?;
    for m in a.entries() {
        if m.c.norm() > tols.tol * m.max_norm().max(1.0) {
            return Err(Error::NotApplicable(
                "all entries must be upper triangular".into(),
            ));
        }
    }
    let mj = a.entry(j)?;
    let e = mj.diff();
    if e.norm() <= tols.tol * mj.max_norm().max(1.0) {
        return Err(Error::DegenerateEigenvalues(format!(
            "entry {j} has equal diagonal entries"
        )));
    }
    let g = Mat2::new(
        C64::new(1.0, 0.0),
        mj.b / e,
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
    );
    let conjugated = a.conjugate(&g, tols.tol)?;
    Ok((conjugated, g))
}
