//! Sampled irreducibility certificates from commutator traces.
//!
//! An SL(2,C) representation is irreducible exactly when some element of the
//! commutator subgroup has trace different from 2 (Culler-Shalen). Sampling
//! words in [F_n, F_n] therefore gives a one-sided test: a trace far from 2
//! certifies irreducibility, while all-near-2 over any finite sample is only
//! evidence of reducibility.

use crate::mat2::C64;
use crate::tuple::NTuple;
use crate::word::Word;
use crate::{Error, Result};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deviation above which a sampled trace certifies irreducibility.
pub const CERTIFY_THRESHOLD: f64 = 1e-6;

/// Longest reduced word sampled; keeps the evaluated traces numerically tame.
const MAX_WORD_LEN: usize = 16;

/// Largest number of commutator factors multiplied into one sample.
const MAX_DEPTH: u64 = 4;

/// Outcome of the sampling run.
#[derive(Clone, Debug)]
pub struct CommutatorEvidence {
    /// Number of words evaluated.
    pub samples: usize,
    /// max |tr(w) - 2| over the evaluated words.
    pub max_deviation: f64,
    /// The word attaining the maximum, with its trace.
    pub witness: Option<(Word, C64)>,
    /// True when the maximum exceeds [`CERTIFY_THRESHOLD`]: the tuple is
    /// certified irreducible. False is NOT a reducibility proof.
    pub certified: bool,
}

fn generator_power(rng: &mut ChaCha8Rng, n: usize) -> Word {
    let j = 1 + (rng.next_u64() as usize) % n;
    let sign = if rng.next_u64() & 1 == 0 { 1 } else { -1 };
    Word::generator(j).pow(sign)
}

/// One random element of the commutator subgroup: a product of at most
/// [`MAX_DEPTH`] conjugated generator commutators, truncated to reduced
/// length <= [`MAX_WORD_LEN`].
fn random_commutator_word(rng: &mut ChaCha8Rng, n: usize) -> Word {
    let depth = 1 + rng.next_u64() % MAX_DEPTH;
    let mut w = Word::empty();
    for _ in 0..depth {
        let u = generator_power(rng, n);
        let mut v = generator_power(rng, n);
        while v.letters()[0].unsigned_abs() == u.letters()[0].unsigned_abs() {
            v = generator_power(rng, n);
        }
        let mut factor = Word::commutator(&u, &v);
        if rng.next_u64() & 1 == 0 {
            factor = factor.conjugated_by(&generator_power(rng, n));
        }
        let candidate = w.concat(&factor);
        if candidate.len() > MAX_WORD_LEN {
            break;
        }
        w = candidate;
    }
    if w.is_empty() {
        Word::commutator(&Word::generator(1), &Word::generator(2))
    } else {
        w
    }
}

/// Evaluate `samples` words of the commutator subgroup on the tuple and
/// report the largest trace deviation from 2. The word plan is
/// deterministic: the plain generator commutators [e_j, e_k] (j < k, lex
/// order) come first, then seeded random products. For n = 1 the commutator
/// subgroup is trivial and the evidence is vacuous.
pub fn culler_shalen_sample(a: &NTuple, samples: usize, seed: u64) -> Result<CommutatorEvidence> {
    if !a.is_sl2() {
        return Err(Error::NotSL2(
            "commutator sampling needs determinant-one entries".into(),
        ));
    }
    let n = a.n();
    if n < 2 || samples == 0 {
        return Ok(CommutatorEvidence {
            samples: 0,
            max_deviation: 0.0,
            witness: None,
            certified: false,
        });
    }
    let mut plan: Vec<Word> = Vec::with_capacity(samples);
    'outer: for j in 1..=n {
        for k in (j + 1)..=n {
            if plan.len() == samples {
                break 'outer;
            }
            plan.push(Word::commutator(&Word::generator(j), &Word::generator(k)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while plan.len() < samples {
        plan.push(random_commutator_word(&mut rng, n));
    }

    let mut max_deviation: f64 = 0.0;
    let mut witness: Option<(Word, C64)> = None;
    for w in plan {
        let tr = a.trace_word(&w)?;
        let dev = (tr - C64::new(2.0, 0.0)).norm();
        if dev > max_deviation || witness.is_none() {
            max_deviation = dev;
            witness = Some((w, tr));
        }
    }
    Ok(CommutatorEvidence {
        samples,
        max_deviation,
        witness,
        certified: max_deviation > CERTIFY_THRESHOLD,
    })
}
