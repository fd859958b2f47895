//! n-tuples A = (A_1, ..., A_n) of 2x2 complex matrices, the objects every
//! invariant and normal form acts on. Entries use 1-based indices j in 1..=n
//! to match the trace-coordinate conventions.
//!
//! A tuple carries an `sl2` flag recording that every entry satisfies
//! |det A_j - 1| <= tol at validation time; operations that need exact
//! inverses-by-adjugate or SL(2,C)-only identities check this flag.

use crate::error::{Error, Result};
use crate::mat2::{Mat2, C64};
use crate::word::Word;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Determinant tolerance used by the constructors' automatic SL2 detection.
pub const SL2_DET_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct NTuple {
    entries: Vec<Mat2>,
    sl2: bool,
}

/// Diagnostic record produced by [`NTuple::validate`].
#[derive(Clone, Debug)]
pub struct Validation {
    pub finite: bool,
    pub sl2: bool,
    /// |det A_j - 1| per entry.
    pub det_residuals: Vec<f64>,
}

impl NTuple {
    /// Build a tuple, rejecting non-finite entries and auto-detecting the SL2
    /// flag at tolerance [`SL2_DET_TOL`].
    pub fn new(entries: Vec<Mat2>) -> Result<Self> {
        Self::with_tol(entries, SL2_DET_TOL)
    }

    /// Build with an explicit determinant tolerance for the SL2 flag.
    pub fn with_tol(entries: Vec<Mat2>, tol: f64) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("tuple must have n >= 1 entries".into()));
        }
        for (i, m) in entries.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "entry {} has a non-finite coefficient",
                    i + 1
                )));
            }
        }
        let sl2 = entries
            .iter()
            .all(|m| (m.det() - C64::new(1.0, 0.0)).norm() <= tol);
        Ok(NTuple { entries, sl2 })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn is_sl2(&self) -> bool {
        self.sl2
    }

    /// Entry A_j, 1-based.
    pub fn entry(&self, j: usize) -> Result<&Mat2> {
        self.check_index(j)?;
        Ok(&self.entries[j - 1])
    }

    pub fn entries(&self) -> &[Mat2] {
        &self.entries
    }

    pub fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n() {
            return Err(Error::IndexOutOfRange(format!(
                "index {} outside 1..={}",
                j,
                self.n()
            )));
        }
        Ok(())
    }

    /// Largest entry magnitude across the tuple, floored at 1 (tolerance scale).
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(Mat2::max_norm).fold(1.0, f64::max)
    }

    /// Re-check finiteness and determinants; refreshes the SL2 flag.
    pub fn validate(&mut self, tol: f64) -> Validation {
        let finite = self.entries.iter().all(Mat2::is_finite);
        let det_residuals: Vec<f64> = self
            .entries
            .iter()
            .map(|m| (m.det() - C64::new(1.0, 0.0)).norm())
            .collect();
        let sl2 = finite && det_residuals.iter().all(|&r| r <= tol);
        self.sl2 = sl2;
        Validation {
            finite,
            sl2,
            det_residuals,
        }
    }

    /// (g A_1 g^{-1}, ..., g A_n g^{-1}). Errors if det(g) ~ 0.
    pub fn conjugate(&self, g: &Mat2, tol: f64) -> Result<NTuple> {
        let ginv = g.inverse(tol)?;
        let entries = self.entries.iter().map(|m| *g * *m * ginv).collect();
        Ok(NTuple {
            entries,
            sl2: self.sl2,
        })
    }

    /// Largest entrywise absolute difference from another tuple of the same
    /// arity.
    pub fn max_abs_diff(&self, other: &NTuple) -> Result<f64> {
        if self.n() != other.n() {
            return Err(Error::InvalidInput("tuple lengths differ".into()));
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(x, y)| x.max_abs_diff(y))
            .fold(0.0, f64::max))
    }

    /// Copy with entry j replaced by its transpose.
    pub fn with_entry_transposed(&self, j: usize) -> Result<NTuple> {
        self.check_index(j)?;
        let mut entries = self.entries.clone();
        entries[j - 1] = entries[j - 1].transpose();
        Ok(NTuple {
            entries,
            sl2: self.sl2,
        })
    }

    /// Copy with entries j and k swapped.
    pub fn with_entries_swapped(&self, j: usize, k: usize) -> Result<NTuple> {
        self.check_index(j)?;
        self.check_index(k)?;
        let mut entries = self.entries.clone();
        entries.swap(j - 1, k - 1);
        Ok(NTuple {
            entries,
            sl2: self.sl2,
        })
    }

    /// Copy with entry j replaced by the given matrix; the SL2 flag is
    /// re-derived for the replacement only.
    pub fn with_entry_replaced(&self, j: usize, m: Mat2) -> Result<NTuple> {
        self.check_index(j)?;
        if !m.is_finite() {
            return Err(Error::InvalidInput(
                "replacement entry is not finite".into(),
            ));
        }
        let mut entries = self.entries.clone();
        entries[j - 1] = m;
        let sl2 = self.sl2 && (m.det() - C64::new(1.0, 0.0)).norm() <= SL2_DET_TOL;
        Ok(NTuple { entries, sl2 })
    }

    /// Evaluate a word: the product of A_j^{±1} over its letters. Inverse
    /// letters use the adjugate when the SL2 flag is set and the general
    /// inverse otherwise.
    pub fn word_eval(&self, w: &Word) -> Result<Mat2> {
        let mut acc = Mat2::identity();
        for &l in w.letters() {
            let j = l.unsigned_abs() as usize;
            if j > self.n() {
                return Err(Error::InvalidWord(format!(
                    "word references e{} but the tuple has n = {}",
                    j,
                    self.n()
                )));
            }
            let m = self.entries[j - 1];
            let factor = if l > 0 {
                m
            } else if self.sl2 {
                m.sl2_inverse()
            } else {
                m.inverse(SL2_DET_TOL)?
            };
            acc = acc * factor;
        }
        Ok(acc)
    }

    /// tr(word_eval(w)); the empty word gives tr(I) = 2.
    pub fn trace_word(&self, w: &Word) -> Result<C64> {
        Ok(self.word_eval(w)?.trace())
    }
}

/// Uniform f64 in [-1, 1) derived from the raw stream (53-bit mantissa), so
/// sampled values cannot drift with distribution-crate versions.
pub(crate) fn unit_interval(rng: &mut ChaCha8Rng) -> f64 {
    let u = rng.next_u64() >> 11;
    2.0 * (u as f64 / (1u64 << 53) as f64) - 1.0
}

pub(crate) fn random_c64(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(unit_interval(rng), unit_interval(rng))
}

/// Draw `count` SL(2,C) matrices from the seeded deterministic stream: sample
/// quaternion parameters with uniform(-1,1) real/imaginary parts, resample
/// while |alpha^2+beta^2+gamma^2+delta^2| < 1e-6, then rescale to make that
/// quadratic norm exactly 1 (so det = 1).
pub fn random_sl2(seed: u64, count: usize) -> Vec<Mat2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = [
            random_c64(&mut rng),
            random_c64(&mut rng),
            random_c64(&mut rng),
            random_c64(&mut rng),
        ];
        let s = q.iter().map(|z| z * z).sum::<C64>();
        if s.norm() < 1e-6 {
            continue;
        }
        let r = s.sqrt();
        out.push(Mat2::from_quaternion(
            q[0] / r,
            q[1] / r,
            q[2] / r,
            q[3] / r,
        ));
    }
    out
}

/// Seeded random SL2 tuple of length n (sl2 flag set).
pub fn random_sl2_tuple(seed: u64, n: usize) -> NTuple {
    NTuple::new(random_sl2(seed, n)).expect("sampled entries are finite")
}

/// Seeded random 2x2 tuple with uniform(-1,1) entries and no determinant
/// normalization (general, typically non-SL2).
pub fn random_tuple(seed: u64, n: usize) -> NTuple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..n)
        .map(|_| {
            Mat2::new(
                random_c64(&mut rng),
                random_c64(&mut rng),
                random_c64(&mut rng),
                random_c64(&mut rng),
            )
        })
        .collect();
    NTuple::new(entries).expect("sampled entries are finite")
}
