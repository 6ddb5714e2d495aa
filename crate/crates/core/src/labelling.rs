//! Labellings of the two star shapes.
//!
//! An α-label `(g_1, ..., g_n)` puts `G_k^{g_k}` on the k-th leaf of a star
//! whose centre is trivial. An A-label with apex `i` puts `G_i^{g_i}` on the
//! centre and the remaining conjugates on the leaves. Slots are stored with
//! the leading `G_k` syllable stripped, since `G_k^{h g} = G_k^g` for
//! `h ∈ G_k`. Two labels of the same shape may still be equivalent; that is
//! decided by [`FactorSystem::alpha_equivalent`] and
//! [`FactorSystem::a_equivalent`].

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::factor::FactorSystem;
use crate::tree::TreeVertex;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaLabel {
    slots: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ALabel {
    apex: usize,
    slots: Vec<Word>,
}

impl AlphaLabel {
    pub fn slots(&self) -> &[Word] {
        &self.slots
    }

    pub fn slot(&self, k: usize) -> &Word {
        &self.slots[k]
    }

    /// Total syllable length of the slots.
    pub fn weight(&self) -> usize {
        self.slots.iter().map(Word::len).sum()
    }
}

impl ALabel {
    pub fn apex(&self) -> usize {
        self.apex
    }

    pub fn slots(&self) -> &[Word] {
        &self.slots
    }
}

impl fmt::Display for AlphaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(α")?;
        for (k, w) in self.slots.iter().enumerate() {
            f.write_str(if k == 0 { ": " } else { ", " })?;
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for ALabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(A{}", self.apex + 1)?;
        for (k, w) in self.slots.iter().enumerate() {
            f.write_str(if k == 0 { ": " } else { ", " })?;
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// The wedge of the `n` spokes `[U·x, G_k·g_k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpokeGraph {
    pub center: TreeVertex,
    pub spokes: Vec<Vec<TreeVertex>>,
    /// Total edge count, spokes counted separately even where they overlap.
    pub volume: usize,
}

impl FactorSystem {
    fn canonical_slots(&self, slots: Vec<Word>) -> Result<Vec<Word>> {
        if slots.len() != self.rank() {
            return Err(Error::Arity { expected: self.rank(), got: slots.len() });
        }
        slots
            .iter()
            .enumerate()
            .map(|(k, w)| {
                self.check_word(w)?;
                Ok(self.coset_rep(k, w))
            })
            .collect()
    }

    pub fn alpha_label(&self, slots: Vec<Word>) -> Result<AlphaLabel> {
        Ok(AlphaLabel { slots: self.canonical_slots(slots)? })
    }

    pub fn a_label(&self, apex: usize, slots: Vec<Word>) -> Result<ALabel> {
        self.check_index(apex)?;
        Ok(ALabel { apex, slots: self.canonical_slots(slots)? })
    }

    /// The base α-label `(ε, ..., ε)`.
    pub fn base_alpha(&self) -> AlphaLabel {
        AlphaLabel { slots: (0..self.rank()).map(|_| self.one()).collect() }
    }

    /// The base A-label with apex `i`.
    pub fn base_a(&self, apex: usize) -> ALabel {
        ALabel { apex, slots: self.base_alpha().slots }
    }

    /// Solves for the unique `g` with `L2_k ∈ G_k · L1_k · g` for every
    /// slot, or reports the first slot that rules every candidate out.
    pub(crate) fn alpha_witness(&self, l1: &AlphaLabel, l2: &AlphaLabel) -> Result<Word, usize> {
        let (g, h) = (&l1.slots, &l2.slots);
        // g = g_1^-1 u h_1 = g_2^-1 v h_2 with u ∈ G_1, v ∈ G_2, i.e.
        // h_2 h_1^-1 = v^-1 (g_2 g_1^-1) u, an equation in G_2 \ G / G_1.
        let w = self.mul(&g[1], &self.inv(&g[0]));
        let w2 = self.mul(&h[1], &self.inv(&h[0]));
        let d = self.double_coset_split(&w, 1, 0);
        let d2 = self.double_coset_split(&w2, 1, 0);
        if d.core != d2.core {
            return Err(1);
        }
        let r = self.opt_letter(&d.right);
        let r2 = self.opt_letter(&d2.right);
        let u = self.mul(&self.inv(&r), &r2);
        let cand = self.mul_all(&[&self.inv(&g[0]), &u, &h[0]]);
        for k in 0..self.rank() {
            // Need h_k g^-1 g_k^-1 ∈ G_k.
            let t = self.mul_all(&[&h[k], &self.inv(&cand), &self.inv(&g[k])]);
            match t.as_letter() {
                Some(None) => {}
                Some(Some(e)) if e.factor() == k => {}
                _ => return Err(k),
            }
        }
        Ok(cand)
    }

    /// Whether `G_k^{h_k} = G_k^{g_k g}` for a common `g` and every `k`,
    /// returning that `g`.
    pub fn alpha_equivalent(&self, l1: &AlphaLabel, l2: &AlphaLabel) -> Option<Word> {
        self.alpha_witness(l1, l2).ok()
    }

    /// Slots of an A-label translated so the apex slot is `ε`.
    fn apex_normalised(&self, m: &ALabel) -> Vec<Word> {
        let t = self.inv(&m.slots[m.apex]);
        m.slots.iter().map(|w| self.mul(w, &t)).collect()
    }

    /// A-label equivalence: equal apexes, and after moving both apex slots
    /// to `ε`, every other slot agrees in `G_k \ G / G_i`.
    pub fn a_equivalent(&self, m1: &ALabel, m2: &ALabel) -> bool {
        if m1.apex != m2.apex {
            return false;
        }
        let i = m1.apex;
        let t1 = self.apex_normalised(m1);
        let t2 = self.apex_normalised(m2);
        (0..self.rank()).filter(|&k| k != i).all(|k| {
            self.double_coset_split(&t1[k], k, i).core == self.double_coset_split(&t2[k], k, i).core
        })
    }

    /// The `n` collapses of an α-label; the i-th has apex `i`.
    pub fn collapses(&self, l: &AlphaLabel) -> Vec<ALabel> {
        (0..self.rank()).map(|apex| ALabel { apex, slots: l.slots.clone() }).collect()
    }

    pub fn spoke(&self, l: &AlphaLabel, x: &Word, k: usize) -> Vec<TreeVertex> {
        self.geodesic(&TreeVertex::U(x.clone()), &TreeVertex::C { factor: k, rep: l.slots[k].clone() })
    }

    pub fn spoke_graph(&self, l: &AlphaLabel, x: &Word) -> SpokeGraph {
        let spokes: Vec<_> = (0..self.rank()).map(|k| self.spoke(l, x, k)).collect();
        let volume = spokes.iter().map(|s| s.len() - 1).sum();
        SpokeGraph { center: TreeVertex::U(x.clone()), spokes, volume }
    }

    /// Length of spoke `k` at `U·x`.
    pub fn spoke_length(&self, l: &AlphaLabel, x: &Word, k: usize) -> usize {
        2 * self.coset_rep(k, &self.mul(&l.slots[k], &self.inv(x))).len() + 1
    }

    pub fn volume(&self, l: &AlphaLabel, x: &Word) -> usize {
        (0..self.rank()).map(|k| self.spoke_length(l, x, k)).sum()
    }

    /// Whether `l` is equivalent to the base α-label.
    pub fn is_base(&self, l: &AlphaLabel) -> bool {
        self.base_witness(l).is_some()
    }

    /// A vertex `U·x` at which `l` has volume `n`, if there is one.
    pub fn base_witness(&self, l: &AlphaLabel) -> Option<Word> {
        self.alpha_equivalent(&self.base_alpha(), l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn k3() -> FactorSystem {
        FactorSystem::cyclic(&[2, 2, 2]).unwrap()
    }

    fn alpha(s: &FactorSystem, slots: [&[(usize, i64)]; 3]) -> AlphaLabel {
        s.alpha_label(slots.iter().map(|w| s.word(w)).collect()).unwrap()
    }

    #[test]
    fn alpha_equivalence_examples() {
        let s = k3();
        let base = s.base_alpha();
        let aaa = alpha(&s, [&[(0, 1)], &[(0, 1)], &[(0, 1)]]);
        assert_eq!(s.alpha_equivalent(&base, &aaa), Some(s.word(&[(0, 1)])));
        let eeb = alpha(&s, [&[], &[], &[(1, 1)]]);
        assert_eq!(s.alpha_equivalent(&base, &eeb), None);
        assert_eq!(s.alpha_equivalent(&eeb, &eeb), Some(s.one()));
    }

    #[test]
    fn a_equivalence_examples() {
        let s = k3();
        let m = s.base_a(0);
        let ea = s.a_label(0, vec![s.one(), s.word(&[(0, 1)]), s.one()]).unwrap();
        assert!(s.a_equivalent(&m, &ea));
        assert!(!s.a_equivalent(&m, &s.base_a(1)));
        let eeb = s.a_label(0, vec![s.one(), s.one(), s.word(&[(1, 1)])]).unwrap();
        assert!(!s.a_equivalent(&m, &eeb));
    }

    #[test]
    fn slot_canonical_storage() {
        let s = k3();
        // G_2^b = G_2, so b in slot 2 is absorbed.
        let l = alpha(&s, [&[], &[(1, 1)], &[]]);
        assert_eq!(l, s.base_alpha());
        assert_eq!(s.alpha_label(vec![s.one()]), Err(Error::Arity { expected: 3, got: 1 }));
    }

    #[test]
    fn collapses_of_base() {
        let s = k3();
        let c = s.collapses(&s.base_alpha());
        assert_eq!(c, vec![s.base_a(0), s.base_a(1), s.base_a(2)]);
    }

    #[test]
    fn volume_examples() {
        let s = k3();
        let e = s.one();
        assert_eq!(s.volume(&s.base_alpha(), &e), 3);
        let l = alpha(&s, [&[], &[], &[(1, 1), (0, 1)]]);
        assert_eq!(s.volume(&l, &e), 7);
        assert_eq!(s.spoke_graph(&l, &e).volume, 7);
        assert_eq!(s.volume(&alpha(&s, [&[], &[], &[(1, 1)]]), &e), 5);
    }

    #[test]
    fn is_base_examples() {
        let s = k3();
        assert!(s.is_base(&s.base_alpha()));
        let aaa = alpha(&s, [&[(0, 1)], &[(0, 1)], &[(0, 1)]]);
        let x = s.base_witness(&aaa).unwrap();
        assert_eq!(s.volume(&aaa, &x), 3);
        assert!(!s.is_base(&alpha(&s, [&[], &[], &[(1, 1)]])));
    }
}
