//! Certified search for a common invariant line.
//!
//! A common invariant line of (A_1, ..., A_n), if one exists, is spanned by an
//! eigenvector of any non-scalar entry. So the candidate set — every
//! eigenvector of every non-scalar entry, plus the coordinate axes when all
//! entries are scalar — is exhaustive, and each candidate is accepted or
//! rejected by a direct residual test against every entry.

use crate::mat2::C64;
use crate::tuple::NTuple;
use crate::Tolerances;

fn norm2(v: &[C64; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

/// Residual of v as an eigenvector candidate for m: ||m v - <v, m v> v|| for
/// unit v, i.e. the component of m v orthogonal to v.
fn line_residual(m: &crate::mat2::Mat2, v: &[C64; 2]) -> f64 {
    let mv = [m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]];
    let lambda = v[0].conj() * mv[0] + v[1].conj() * mv[1];
    let orth = [mv[0] - lambda * v[0], mv[1] - lambda * v[1]];
    norm2(&orth)
}

/// Scale the accepted candidate so its largest-magnitude component is 1.
fn canonicalize(v: [C64; 2]) -> [C64; 2] {
    if v[0].norm() >= v[1].norm() {
        [C64::new(1.0, 0.0), v[1] / v[0]]
    } else {
        [v[0] / v[1], C64::new(1.0, 0.0)]
    }
}

/// Find a line fixed by every entry of the tuple, or None when no candidate
/// passes the residual test (which certifies there is no common line, up to
/// the stated tolerance).
///
/// The candidate v is accepted iff for every j
/// `||A_j v - <v, A_j v> v|| <= tol * max(1, ||A_j||)` with v normalized.
/// The returned vector is scaled so that its largest component equals 1; an
/// upper-triangular tuple therefore reports (1, 0).
pub fn invariant_line_oracle(a: &NTuple, tols: &Tolerances) -> Option<[C64; 2]> {
    let mut candidates: Vec<[C64; 2]> = Vec::new();
    for m in a.entries() {
        if m.is_scalar(tols.tol) {
            continue;
        }
        let (lp, lm) = m.eigenvalues();
        for lambda in [lp, lm] {
            if let Some(v) = m.eigenvector_for(lambda, tols.tol) {
                candidates.push(v);
            }
        }
    }
    if candidates.is_empty() {
        // Every entry is scalar: any line works; offer the axes.
        candidates.push([C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        candidates.push([C64::new(0.0, 0.0), C64::new(1.0, 0.0)]);
    }
    'cand: for v in candidates {
        let nv = norm2(&v);
        if nv == 0.0 || !nv.is_finite() {
            continue;
        }
        let v = [v[0] / nv, v[1] / nv];
        for m in a.entries() {
            let bound = tols.tol * m.max_norm().max(1.0);
            if line_residual(m, &v) > bound {
                continue 'cand;
            }
        }
        return Some(canonicalize(v));
    }
    None
}
