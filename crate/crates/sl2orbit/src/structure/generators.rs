//! Free-group generator changes that repair degenerate leading invariants.
//!
//! An n-tuple is the image of the generators of the free group F_n. Index
//! transpositions and shift automorphisms e_j -> e_j e_k^m change the
//! generating set without changing the represented group, so conjugation
//! invariants of the new tuple are word-substitution images of the old ones.
//! For any irreducible tuple a finite sequence of such moves reaches
//! sigma_12 != 0 and nu_1 != 0, the "generic corner" every later
//! construction (normal form, trace-map inversion) starts from.

use super::triangular::is_irreducible;
use super::Witness;
use crate::invariants;
use crate::tuple::NTuple;
use crate::word::Word;
use crate::{Error, Result, Tolerances};

/// One generator move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Swap generators i and j.
    Transpose { i: usize, j: usize },
    /// e_target -> e_target * e_source^exponent; all other generators fixed.
    Shift {
        target: usize,
        source: usize,
        exponent: i32,
    },
}

/// An ordered, replayable list of moves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorChange {
    pub moves: Vec<Move>,
}

impl GeneratorChange {
    pub fn identity() -> Self {
        GeneratorChange { moves: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replay the moves on a tuple. Equivalent to evaluating
    /// [`Self::generator_words`] on the input (tested), but applied
    /// incrementally.
    pub fn apply(&self, a: &NTuple) -> Result<NTuple> {
        let mut current = a.clone();
        for mv in &self.moves {
            current = match *mv {
                Move::Transpose { i, j } => current.with_entries_swapped(i, j)?,
                Move::Shift {
                    target,
                    source,
                    exponent,
                } => {
                    current.check_index(target)?;
                    current.check_index(source)?;
                    let w = Word::generator(target).concat(&Word::generator(source).pow(exponent));
                    let m = current.word_eval(&w)?;
                    current.with_entry_replaced(target, m)?
                }
            };
        }
        Ok(current)
    }

    /// The words w_1, ..., w_n in the original generators such that applying
    /// the moves to a tuple A yields (A(w_1), ..., A(w_n)).
    pub fn generator_words(&self, n: usize) -> Vec<Word> {
        let mut words: Vec<Word> = (1..=n).map(Word::generator).collect();
        for mv in &self.moves {
            match *mv {
                Move::Transpose { i, j } => {
                    if i <= n && j <= n {
                        words.swap(i - 1, j - 1);
                    }
                }
                Move::Shift {
                    target,
                    source,
                    exponent,
                } => {
                    if target <= n && source <= n {
                        let shifted = words[target - 1].concat(&words[source - 1].pow(exponent));
                        words[target - 1] = shifted;
                    }
                }
            }
        }
        words
    }
}

fn sigma12_is_zero(a: &NTuple, tols: &Tolerances) -> Result<bool> {
    let m1 = a.entry(1)?.max_norm().max(1.0);
    let m2 = a.entry(2)?.max_norm().max(1.0);
    let s = invariants::sigma(a, 1, 2)?;
    Ok(tols.is_zero(s.norm(), (m1 * m2).powi(2)))
}

fn nu1_is_zero(a: &NTuple, tols: &Tolerances) -> Result<bool> {
    let m1 = a.entry(1)?.max_norm().max(1.0);
    let v = invariants::nu(a, 1)?;
    Ok(tols.is_zero(v.norm(), m1 * m1))
}

/// Bring the witnessed sigma pair to positions (1, 2).
fn moves_for_sigma_pair(j: usize, k: usize) -> Vec<Move> {
    match (j, k) {
        (1, 2) => vec![],
        (1, k) => vec![Move::Transpose { i: 2, j: k }],
        (2, k) => vec![Move::Transpose { i: 1, j: k }],
        (j, k) => vec![Move::Transpose { i: 1, j }, Move::Transpose { i: 2, j: k }],
    }
}

/// Bring the witnessed Delta triple to positions (1, 2, 3), tracking how
/// earlier swaps displace later targets.
fn moves_for_delta_triple(j: usize, k: usize, l: usize) -> Vec<Move> {
    let mut pos = [j, k, l];
    let mut moves = Vec::new();
    for step in 0..3 {
        let want = step + 1;
        let cur = pos[step];
        if cur != want {
            moves.push(Move::Transpose { i: want, j: cur });
            for p in pos.iter_mut().skip(step + 1) {
                if *p == want {
                    *p = cur;
                }
            }
            pos[step] = want;
        }
    }
    moves
}

/// Shift candidates tried, in order, when every sigma vanishes but some
/// Delta does not. Theory guarantees e_1 -> e_1 e_3 works generically; the
/// rest of the battery covers the measure-zero misses.
const SHIFT_BATTERY: [(usize, usize, i32); 8] = [
    (1, 3, 1),
    (1, 3, 2),
    (1, 3, -1),
    (2, 3, 1),
    (2, 3, 2),
    (2, 3, -1),
    (1, 3, 3),
    (2, 3, 3),
];

/// Maximum exponent tried for the nu_1 repair e_1 -> e_1 e_2^k. Some k
/// always works in exact arithmetic; the cap is an engineering cutoff.
const MAX_NU_SHIFT: i32 = 8;

/// Change generators of an irreducible SL(2,C) tuple until sigma_12 != 0 and
/// nu_1 != 0. Returns the new tuple together with the replayable move list;
/// an input that already satisfies both gets the identity change.
pub fn fix_generators(a: &NTuple, tols: &Tolerances) -> Result<(NTuple, GeneratorChange)> {
    let report = is_irreducible(a, tols)?;
    let witness = report
        .witness
        .ok_or_else(|| Error::NotIrreducible("every sigma and Delta invariant vanishes".into()))?;
    let mut moves: Vec<Move> = Vec::new();
    let mut current = a.clone();

    let permutation = match witness {
        Witness::Sigma { j, k, .. } => moves_for_sigma_pair(j, k),
        Witness::Delta { j, k, l, .. } => moves_for_delta_triple(j, k, l),
    };
    for mv in permutation {
        current = GeneratorChange { moves: vec![mv] }.apply(&current)?;
        moves.push(mv);
    }

    if matches!(witness, Witness::Delta { .. }) {
        let mut repaired = false;
        for (target, source, exponent) in SHIFT_BATTERY {
            let mv = Move::Shift {
                target,
                source,
                exponent,
            };
            let trial = GeneratorChange { moves: vec![mv] }.apply(&current)?;
            if !sigma12_is_zero(&trial, tols)? {
                current = trial;
                moves.push(mv);
                repaired = true;
                break;
            }
        }
        if !repaired {
            return Err(Error::NumericalFailure(
                "no shift in the battery produced sigma_12 != 0".into(),
            ));
        }
    }
    if sigma12_is_zero(&current, tols)? {
        return Err(Error::NumericalFailure(
            "sigma_12 still vanishes after permutation".into(),
        ));
    }

    if nu1_is_zero(&current, tols)? {
        let mut repaired = false;
        for exponent in 1..=MAX_NU_SHIFT {
            let mv = Move::Shift {
                target: 1,
                source: 2,
                exponent,
            };
            let trial = GeneratorChange { moves: vec![mv] }.apply(&current)?;
            if !nu1_is_zero(&trial, tols)? {
                current = trial;
                moves.push(mv);
                repaired = true;
                break;
            }
        }
        if !repaired {
            return Err(Error::NumericalFailure(format!(
                "nu_1 vanishes for every shift exponent up to {MAX_NU_SHIFT}"
            )));
        }
    }

    Ok((current, GeneratorChange { moves }))
}
