//! Elements of `G = G_1 * ... * G_n` in reduced (normal) form.
//!
//! A word is a product `s_1 s_2 ... s_m` read left to right where no syllable
//! is the identity and adjacent syllables lie in distinct factors. Normal
//! forms are unique, so structural equality is group equality.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::factor::{FactorElement, FactorSystem, SystemId};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    system: SystemId,
    syllables: Vec<FactorElement>,
}

impl Word {
    pub fn system(&self) -> SystemId {
        self.system
    }

    pub fn syllables(&self) -> &[FactorElement] {
        &self.syllables
    }

    /// Syllable length of the normal form.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn first(&self) -> Option<&FactorElement> {
        self.syllables.first()
    }

    pub fn last(&self) -> Option<&FactorElement> {
        self.syllables.last()
    }

    pub fn leading_factor(&self) -> Option<usize> {
        self.first().map(FactorElement::factor)
    }

    pub fn trailing_factor(&self) -> Option<usize> {
        self.last().map(FactorElement::factor)
    }

    /// The subword on a range of syllable positions (already reduced).
    pub fn subword(&self, range: core::ops::Range<usize>) -> Word {
        Word { system: self.system, syllables: self.syllables[range].to_vec() }
    }

    /// If the word is a single syllable (or empty), that element.
    pub fn as_letter(&self) -> Option<Option<&FactorElement>> {
        match self.syllables.as_slice() {
            [] => Some(None),
            [s] => Some(Some(s)),
            _ => None,
        }
    }
}

/// Renders as `[[factor,payload],...]` with 1-based factor indices.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, s) in self.syllables.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// `w = left · core · right` with `left ∈ G_j`, `right ∈ G_i` split off the
/// normal form. Two words share a double coset `G_j w G_i` exactly when their
/// cores agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetSplit {
    pub left: Option<FactorElement>,
    pub core: Word,
    pub right: Option<FactorElement>,
}

impl FactorSystem {
    pub fn one(&self) -> Word {
        Word { system: self.id(), syllables: Vec::new() }
    }

    /// The one-syllable word for `e` (empty when `e` is the identity).
    pub fn letter(&self, e: &FactorElement) -> Word {
        let mut syllables = Vec::new();
        if !self.fg_is_identity(e) {
            syllables.push(e.clone());
        }
        Word { system: self.id(), syllables }
    }

    fn push_letter(&self, out: &mut Vec<FactorElement>, e: &FactorElement) {
        if self.fg_is_identity(e) {
            return;
        }
        if let Some(top) = out.last_mut() {
            if top.factor() == e.factor() {
                let p = self.fg_mul_same(top, e);
                if self.fg_is_identity(&p) {
                    out.pop();
                } else {
                    *top = p;
                }
                return;
            }
        }
        out.push(e.clone());
    }

    /// Normal form of the product of `letters`.
    pub fn reduce<'a, I>(&self, letters: I) -> Result<Word>
    where
        I: IntoIterator<Item = &'a FactorElement>,
    {
        let mut out = Vec::new();
        for e in letters {
            self.check_element(e)?;
            self.push_letter(&mut out, e);
        }
        Ok(Word { system: self.id(), syllables: out })
    }

    /// Test and example helper: `[(factor, value), ...]` with 0-based factors.
    /// Panics on invalid input.
    pub fn word(&self, letters: &[(usize, i64)]) -> Word {
        let elems: Vec<_> = letters.iter().map(|&(f, v)| self.elem(f, v)).collect();
        self.reduce(elems.iter()).expect("valid letters")
    }

    fn assert_same(&self, u: &Word) {
        assert_eq!(u.system, self.id(), "word belongs to a different factor system");
    }

    pub fn check_word(&self, u: &Word) -> Result<()> {
        if u.system == self.id() {
            Ok(())
        } else {
            Err(Error::MixedSystems)
        }
    }

    /// Product `u·v`. Panics if either word comes from another system; see
    /// [`FactorSystem::checked_mul`].
    pub fn mul(&self, u: &Word, v: &Word) -> Word {
        self.assert_same(u);
        self.assert_same(v);
        let mut out = u.syllables.clone();
        for e in &v.syllables {
            self.push_letter(&mut out, e);
        }
        Word { system: self.id(), syllables: out }
    }

    pub fn checked_mul(&self, u: &Word, v: &Word) -> Result<Word> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(self.mul(u, v))
    }

    pub fn mul_all(&self, words: &[&Word]) -> Word {
        let mut acc = self.one();
        for w in words {
            acc = self.mul(&acc, w);
        }
        acc
    }

    pub fn inv(&self, u: &Word) -> Word {
        self.assert_same(u);
        Word {
            system: self.id(),
            syllables: u.syllables.iter().rev().map(|e| self.fg_inv(e)).collect(),
        }
    }

    pub fn checked_inv(&self, u: &Word) -> Result<Word> {
        self.check_word(u)?;
        Ok(self.inv(u))
    }

    /// `h^-1 u h`.
    pub fn conj(&self, u: &Word, h: &Word) -> Word {
        self.mul_all(&[&self.inv(h), u, h])
    }

    /// Splits off a leading `G_factor` syllable: `w = head · rest` where
    /// `rest` does not start in `G_factor`. `rest` is the canonical
    /// representative of the right coset `G_factor · w`.
    pub fn strip_leading(&self, w: &Word, factor: usize) -> (Option<FactorElement>, Word) {
        self.assert_same(w);
        match w.syllables.first() {
            Some(s) if s.factor() == factor => (
                Some(s.clone()),
                Word { system: self.id(), syllables: w.syllables[1..].to_vec() },
            ),
            _ => (None, w.clone()),
        }
    }

    /// Canonical representative of the coset `G_factor · w`.
    pub fn coset_rep(&self, factor: usize, w: &Word) -> Word {
        self.strip_leading(w, factor).1
    }

    /// Decomposes `w` against the double coset `G_left · w · G_right`
    /// (`left != right`): strips at most one leading `G_left` syllable and at
    /// most one trailing `G_right` syllable.
    pub fn double_coset_split(&self, w: &Word, left: usize, right: usize) -> DoubleCosetSplit {
        assert_ne!(left, right, "double coset of a factor with itself");
        self.assert_same(w);
        let mut s = w.syllables.as_slice();
        let mut l = None;
        let mut r = None;
        if let Some((first, rest)) = s.split_first() {
            if first.factor() == left {
                l = Some(first.clone());
                s = rest;
            }
        }
        if let Some((last, rest)) = s.split_last() {
            if last.factor() == right {
                r = Some(last.clone());
                s = rest;
            }
        }
        DoubleCosetSplit {
            left: l,
            core: Word { system: self.id(), syllables: s.to_vec() },
            right: r,
        }
    }

    pub fn opt_letter(&self, e: &Option<FactorElement>) -> Word {
        e.as_ref().map_or_else(|| self.one(), |e| self.letter(e))
    }

    /// Every reduced word of syllable length exactly `len` whose first
    /// syllable avoids `avoid_first`, in a deterministic order.
    pub fn words_of_length(&self, len: usize, avoid_first: Option<usize>) -> Result<Vec<Word>> {
        let mut letters = Vec::with_capacity(self.rank());
        for f in 0..self.rank() {
            letters.push(self.nontrivial_elements(f).ok_or(Error::InfiniteFactor(f))?);
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(len);
        fill(self.id(), &letters, len, avoid_first, &mut current, &mut out);
        Ok(out)
    }

    /// Every reduced word of syllable length at most `max_len`.
    pub fn words_up_to(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for len in 0..=max_len {
            out.extend(self.words_of_length(len, None)?);
        }
        Ok(out)
    }
}

fn fill(
    system: SystemId,
    letters: &[Vec<FactorElement>],
    len: usize,
    avoid: Option<usize>,
    current: &mut Vec<FactorElement>,
    out: &mut Vec<Word>,
) {
    if current.len() == len {
        out.push(Word { system, syllables: current.clone() });
        return;
    }
    for (f, elems) in letters.iter().enumerate() {
        if Some(f) == avoid {
            continue;
        }
        for e in elems {
            current.push(e.clone());
            fill(system, letters, len, Some(f), current, out);
            current.pop();
        }
    }
}
