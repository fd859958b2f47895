//! Conjugation invariants of matrix tuples.
//!
//! With t_j = tr(A_j), t_jk = tr(A_j A_k), t_jkl = tr(A_j A_k A_l):
//!
//! ```text
//!     tau_jk   = t_jk - t_j t_k / 2
//!     nu_j     = tau_jj = t_jj - t_j^2 / 2
//!     sigma_jk = tau_jk^2 - nu_j nu_k
//!     Delta_jkl = (t_jkl - t_lkj)^2
//! ```
//!
//! In matrix entries (e = a - d): nu = e^2/2 + 2bc and
//! sigma_jk = (b_j c_k - c_j b_k)^2 - (b_j e_k - e_j b_k)(c_j e_k - e_j c_k).
//! sigma and Delta are fully symmetric in their indices and vanish whenever an
//! index repeats. The 3x3 Gram matrix of tau over {j,k,l} ties them together:
//! its top-left 2x2 minor is -sigma_jk and its determinant is -Delta_jkl/2.
//!
//! For SL(2,C) entries nu_j = t_j^2/2 - 2 and
//! sigma_jk = t_j^2 + t_k^2 + t_jk^2 - t_j t_k t_jk - 4 = tr([A_j, A_k]) - 2.

use crate::error::{Error, Result};
use crate::mat2::C64;
use crate::tuple::NTuple;
use crate::word::Word;

fn trace_pair(a: &NTuple, j: usize, k: usize) -> Result<C64> {
    Ok((*a.entry(j)? * *a.entry(k)?).trace())
}

fn trace_triple(a: &NTuple, j: usize, k: usize, l: usize) -> Result<C64> {
    Ok((*a.entry(j)? * *a.entry(k)? * *a.entry(l)?).trace())
}

/// tau_jk = tr(A_j A_k) - tr(A_j) tr(A_k) / 2.
pub fn tau(a: &NTuple, j: usize, k: usize) -> Result<C64> {
    let tjk = trace_pair(a, j, k)?;
    Ok(tjk - a.entry(j)?.trace() * a.entry(k)?.trace() / 2.0)
}

/// nu_j = tau_jj; nonzero exactly when A_j has distinct eigenvalues.
pub fn nu(a: &NTuple, j: usize) -> Result<C64> {
    tau(a, j, j)
}

/// sigma_jk = tau_jk^2 - nu_j nu_k; vanishes iff the pair (A_j, A_k) is
/// simultaneously triangularizable (and always when j = k).
pub fn sigma(a: &NTuple, j: usize, k: usize) -> Result<C64> {
    let t = tau(a, j, k)?;
    Ok(t * t - nu(a, j)? * nu(a, k)?)
}

/// Delta_jkl = (t_jkl - t_lkj)^2, the squared antisymmetric triple trace.
/// Symmetric under all permutations of {j,k,l}; zero when any index repeats.
pub fn delta(a: &NTuple, j: usize, k: usize, l: usize) -> Result<C64> {
    let fwd = trace_triple(a, j, k, l)?;
    let rev = trace_triple(a, l, k, j)?;
    let d = fwd - rev;
    Ok(d * d)
}

/// The 3x3 Gram matrix [tau_{uv}] over indices (j, k, l), row-major.
pub fn gram(a: &NTuple, j: usize, k: usize, l: usize) -> Result<[[C64; 3]; 3]> {
    let idx = [j, k, l];
    let mut g = [[C64::new(0.0, 0.0); 3]; 3];
    for (r, &u) in idx.iter().enumerate() {
        for (c, &v) in idx.iter().enumerate() {
            g[r][c] = tau(a, u, v)?;
        }
    }
    Ok(g)
}

/// Determinant of a 3x3 complex matrix (row-major).
pub fn det3(g: &[[C64; 3]; 3]) -> C64 {
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

/// The frozen fingerprint word list for SL2 tuples: singles e_j ascending,
/// then pairs e_j e_k (j < k) lexicographic, then triples e_j e_k e_l
/// (j < k < l) lexicographic. Length n + C(n,2) + C(n,3) = (n^3 + 5n)/6.
pub fn fingerprint_words(n: usize) -> Vec<Word> {
    let mut words = Vec::new();
    for j in 1..=n {
        words.push(Word::generator(j));
    }
    for j in 1..=n {
        for k in (j + 1)..=n {
            words.push(Word::new([j as i32, k as i32]).expect("positive letters"));
        }
    }
    for j in 1..=n {
        for k in (j + 1)..=n {
            for l in (k + 1)..=n {
                words.push(Word::new([j as i32, k as i32, l as i32]).expect("positive letters"));
            }
        }
    }
    words
}

/// Trace fingerprint over the frozen word list; separates conjugation orbits
/// of stable SL(2,C) tuples. Requires the SL2 flag.
pub fn fingerprint(a: &NTuple) -> Result<Vec<C64>> {
    if !a.is_sl2() {
        return Err(Error::NotSL2(
            "fingerprint is defined for SL(2,C) tuples; run validate first".into(),
        ));
    }
    fingerprint_words(a.n())
        .iter()
        .map(|w| a.trace_word(w))
        .collect()
}

/// Max per-coordinate distance between two fingerprints (infinity norm).
/// Lengths must agree; returns None otherwise.
pub fn fingerprint_distance(x: &[C64], y: &[C64]) -> Option<f64> {
    if x.len() != y.len() {
        return None;
    }
    Some(
        x.iter()
            .zip(y)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max),
    )
}

/// Trace profile separating orbits of general (not necessarily SL2) 2x2
/// tuples: singles, squares t_jj, pairs (j < k), and one orientation of each
/// triple (j < k < l). Squares recover determinants via
/// det = (t_j^2 - t_jj)/2, and the reversed triple traces are determined by
/// the fundamental trace identity, so this list separates closed orbits.
pub fn vn_trace_profile(a: &NTuple) -> Result<Vec<C64>> {
    let n = a.n();
    let mut out = Vec::new();
    for j in 1..=n {
        out.push(a.entry(j)?.trace());
    }
    for j in 1..=n {
        out.push(trace_pair(a, j, j)?);
    }
    for j in 1..=n {
        for k in (j + 1)..=n {
            out.push(trace_pair(a, j, k)?);
        }
    }
    for j in 1..=n {
        for k in (j + 1)..=n {
            for l in (k + 1)..=n {
                out.push(trace_triple(a, j, k, l)?);
            }
        }
    }
    Ok(out)
}
