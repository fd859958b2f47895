//! Forward evaluation of the trace maps.

use crate::coords::{TraceVector, VnTraceVector};
use crate::error::{Error, Result};
use crate::mat2::C64;
use crate::tuple::NTuple;

fn tr(a: &NTuple, j: usize) -> Result<C64> {
    Ok(a.entry(j)?.trace())
}

fn tr_pair(a: &NTuple, j: usize, k: usize) -> Result<C64> {
    Ok((*a.entry(j)? * *a.entry(k)?).trace())
}

/// The trace map A -> (t_1, t_2, t_12, then t_k, t_1k, t_2k for k = 3..n).
///
/// Conjugation-invariant; requires the SL2 flag (on SL(2,C) these 3n-3
/// coordinates determine the conjugacy orbit of a stable tuple up to the
/// finite transposition ambiguity resolved by [`super::enumerate_fiber`]).
pub fn forward_tn(a: &NTuple) -> Result<TraceVector> {
    if !a.is_sl2() {
        return Err(Error::NotSL2(
            "the trace map is defined on determinant-one tuples; run validate first".into(),
        ));
    }
    if a.n() < 2 {
        return Err(Error::InvalidInput(
            "the trace map needs n >= 2 entries".into(),
        ));
    }
    let n = a.n();
    let mut coords = Vec::with_capacity(3 * n - 3);
    coords.push(tr(a, 1)?);
    coords.push(tr(a, 2)?);
    coords.push(tr_pair(a, 1, 2)?);
    for k in 3..=n {
        coords.push(tr(a, k)?);
        coords.push(tr_pair(a, 1, k)?);
        coords.push(tr_pair(a, 2, k)?);
    }
    TraceVector::new(n, coords)
}

/// The extended trace map for arbitrary 2x2 tuples:
/// (t_1, t_11, t_2, t_22, t_12, then t_k, t_kk, t_1k, t_2k for k = 3..n).
///
/// No determinant constraint; the squares t_jj = tr(A_j^2) replace the
/// information that det = 1 supplies in the short layout.
pub fn forward_that_n(a: &NTuple) -> Result<VnTraceVector> {
    if a.n() < 2 {
        return Err(Error::InvalidInput(
            "the trace map needs n >= 2 entries".into(),
        ));
    }
    let n = a.n();
    let mut coords = Vec::with_capacity(4 * n - 3);
    coords.push(tr(a, 1)?);
    coords.push(tr_pair(a, 1, 1)?);
    coords.push(tr(a, 2)?);
    coords.push(tr_pair(a, 2, 2)?);
    coords.push(tr_pair(a, 1, 2)?);
    for k in 3..=n {
        coords.push(tr(a, k)?);
        coords.push(tr_pair(a, k, k)?);
        coords.push(tr_pair(a, 1, k)?);
        coords.push(tr_pair(a, 2, k)?);
    }
    VnTraceVector::new(n, coords)
}
