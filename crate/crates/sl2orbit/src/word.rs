//! Words in the free group F_n on generators e_1, ..., e_n.
//!
//! A letter is a nonzero signed integer: +j stands for e_j, -j for e_j^{-1}.
//! Words are stored freely reduced; reduction happens at construction and is
//! maintained by every operation, so `len()` is always the reduced length.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    /// The empty word (identity of F_n).
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    /// Build from signed letters, reducing adjacent inverse pairs. Zero
    /// letters are rejected; index range against a particular n is checked at
    /// evaluation time.
    pub fn new<IT: IntoIterator<Item = i32>>(letters: IT) -> Result<Self> {
        let mut w = Word::empty();
        for l in letters {
            if l == 0 {
                return Err(Error::InvalidWord("letter 0 has no generator".into()));
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Single generator e_j (j >= 1).
    pub fn generator(j: usize) -> Self {
        Word {
            letters: vec![j as i32],
        }
    }

    fn push(&mut self, letter: i32) {
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index mentioned (0 for the empty word).
    pub fn max_index(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Concatenation with free reduction at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// w^k for any integer k.
    pub fn pow(&self, k: i32) -> Word {
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut w = Word::empty();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// [u, v] = u v u^{-1} v^{-1}.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// g w g^{-1}.
    pub fn conjugated_by(&self, g: &Word) -> Word {
        g.concat(self).concat(&g.inverse())
    }
}

impl std::fmt::Display for Word {
    /// Renders e.g. "e1 e2^-1 e3"; the empty word renders as "1".
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("e{l}")
                } else {
                    format!("e{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
