//! Random elements, words and automorphisms for property tests and the
//! self-test suite. Every generator draws from a caller-supplied RNG so runs
//! are reproducible from a seed.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::autos::{PureSymmetricAuto, WhiteheadAuto};
use crate::factor::{FactorAutoPart, FactorElement, FactorGroup, FactorMap, FactorSystem, Payload};
use crate::labelling::AlphaLabel;
use crate::word::Word;

/// Largest absolute payload drawn for an infinite cyclic factor.
pub const INT_RANGE: i64 = 5;

/// A non-identity element of factor `k`.
pub fn element<R: Rng + ?Sized>(sys: &FactorSystem, rng: &mut R, k: usize) -> FactorElement {
    let payload = match sys.factor(k) {
        FactorGroup::Cyclic { order } => Payload::Residue(rng.gen_range(1..*order)),
        FactorGroup::Table(t) => {
            let mut i = rng.gen_range(0..t.order() as u32 - 1);
            if i >= t.identity() {
                i += 1;
            }
            Payload::Index(i)
        }
        FactorGroup::InfiniteCyclic => {
            let v = rng.gen_range(1..=INT_RANGE);
            Payload::Int(BigInt::from(if rng.gen_bool(0.5) { v } else { -v }))
        }
    };
    sys.element(k, payload).expect("sampled element")
}

/// A reduced word of exactly `len` syllables whose first syllable avoids
/// `avoid_first`.
pub fn word<R: Rng + ?Sized>(sys: &FactorSystem, rng: &mut R, len: usize, avoid_first: Option<usize>) -> Word {
    let n = sys.rank();
    let mut letters = Vec::with_capacity(len);
    let mut prev = avoid_first;
    for _ in 0..len {
        let mut k = rng.gen_range(0..n - usize::from(prev.is_some()));
        if let Some(p) = prev {
            if k >= p {
                k += 1;
            }
        }
        letters.push(element(sys, rng, k));
        prev = Some(k);
    }
    sys.reduce(letters.iter()).expect("sampled letters")
}

/// A random automorphism of a single factor.
pub fn factor_map<R: Rng + ?Sized>(sys: &FactorSystem, rng: &mut R, k: usize) -> FactorAutoPart {
    let map = match sys.factor(k) {
        FactorGroup::InfiniteCyclic => FactorMap::Sign(rng.gen_bool(0.5)),
        g => {
            let all = g.all_automorphisms().expect("finite factor");
            all[rng.gen_range(0..all.len())].clone()
        }
    };
    FactorAutoPart { factor: k, map }
}

pub fn factor_auto<R: Rng + ?Sized>(sys: &FactorSystem, rng: &mut R) -> Vec<FactorAutoPart> {
    (0..sys.rank()).map(|k| factor_map(sys, rng, k)).collect()
}

/// A Whitehead automorphism with a random non-empty target set.
pub fn whitehead<R: Rng + ?Sized>(sys: &FactorSystem, rng: &mut R) -> WhiteheadAuto {
    let n = sys.rank();
    let i = rng.gen_range(0..n);
    let others: Vec<usize> = (0..n).filter(|&k| k != i).collect();
    let mut targets: Vec<usize> = others.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if targets.is_empty() {
        targets.push(others[rng.gen_range(0..others.len())]);
    }
    sys.whitehead(&targets, element(sys, rng, i)).expect("valid Whitehead")
}

fn max_conj_len(psi: &PureSymmetricAuto) -> usize {
    psi.conj().iter().map(Word::len).max().unwrap_or(0)
}

/// A product of random Whitehead and inner automorphisms, with every
/// conjugator of syllable length at most `max_len`, followed by a random
/// factor automorphism. Always a genuine automorphism.
pub fn automorphism<R: Rng + ?Sized>(sys: &FactorSystem, rng: &mut R, max_len: usize) -> PureSymmetricAuto {
    let mut psi = sys.identity_psa();
    let steps = rng.gen_range(0..=2 * max_len + 2);
    for _ in 0..steps {
        let g = if rng.gen_bool(0.15) {
            let len = rng.gen_range(1..=2);
            sys.inner_psa(&word(sys, rng, len, None))
        } else {
            sys.whitehead_psa(&whitehead(sys, rng))
        };
        let next = sys.compose(&g, &psi);
        if max_conj_len(&next) <= max_len {
            psi = next;
        }
    }
    sys.compose(&psi, &sys.factor_psa(&factor_auto(sys, rng)))
}

/// The image of the base α-label under a random automorphism, so always a
/// free splitting.
pub fn splitting<R: Rng + ?Sized>(sys: &FactorSystem, rng: &mut R, max_len: usize) -> AlphaLabel {
    let psi = automorphism(sys, rng, max_len);
    sys.act_alpha(&sys.base_alpha(), &psi)
}
