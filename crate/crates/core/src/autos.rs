//! Pure symmetric automorphisms and their factorization.
//!
//! A pure symmetric automorphism `ψ` is given by per-factor automorphisms
//! `φ_k` and conjugators `c_k`, acting by `ψ(x) = c_k^-1 φ_k(x) c_k` on
//! `G_k`. Composition is ordinary function composition: `compose(f, g)`
//! applies `g` first. A [`Factorization`] reads
//! `ψ = w_1 ∘ ... ∘ w_r ∘ Φ ∘ ι_h` with `ι_h(y) = h^-1 y h`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factor::{FactorAutoPart, FactorElement, FactorSystem};
use crate::labelling::{ALabel, AlphaLabel};
use crate::word::Word;

/// Stored canonically: `c_k` never starts with a `G_k` syllable (such a
/// syllable is folded into `φ_k`). The representation of an automorphism is
/// therefore unique and `==` is equality of automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PureSymmetricAuto {
    phi: Vec<FactorAutoPart>,
    conj: Vec<Word>,
}

impl PureSymmetricAuto {
    pub fn phi(&self) -> &[FactorAutoPart] {
        &self.phi
    }

    pub fn conj(&self) -> &[Word] {
        &self.conj
    }

    /// The factor automorphism part `(φ_1, ..., φ_n)`.
    pub fn factor_part(&self) -> &[FactorAutoPart] {
        &self.phi
    }
}

/// `(Y, x)`: conjugates each factor in `Y` by `x ∈ G_i` and fixes the rest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WhiteheadAuto {
    targets: Vec<usize>,
    x: FactorElement,
}

impl WhiteheadAuto {
    /// Sorted, without repeats.
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn operating(&self) -> usize {
        self.x.factor()
    }

    pub fn x(&self) -> &FactorElement {
        &self.x
    }
}

/// `ψ = whitehead[0] ∘ ... ∘ whitehead[r-1] ∘ factor ∘ ι_inner`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub whitehead: Vec<WhiteheadAuto>,
    pub factor: Vec<FactorAutoPart>,
    pub inner: Word,
}

impl FactorSystem {
    fn map_elem(&self, phi: &FactorAutoPart, e: &FactorElement) -> FactorElement {
        let k = e.factor();
        FactorElement::new_unchecked(k, self.factor(k).apply_map(&phi.map, e.payload()))
    }

    fn canonical_auto(&self, mut phi: Vec<FactorAutoPart>, conj: Vec<Word>) -> PureSymmetricAuto {
        let conj = conj
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let (head, rest) = self.strip_leading(c, k);
                if let Some(b) = head {
                    phi[k] = self.compose_auto(&self.conjugation_auto(&b), &phi[k]);
                }
                rest
            })
            .collect();
        PureSymmetricAuto { phi, conj }
    }

    /// Builds `ψ` from factor maps and conjugators. Whether the result is
    /// onto is not checked here; see [`FactorSystem::is_automorphism`].
    pub fn auto(&self, phi: Vec<FactorAutoPart>, conj: Vec<Word>) -> Result<PureSymmetricAuto> {
        let n = self.rank();
        if phi.len() != n {
            return Err(Error::Arity { expected: n, got: phi.len() });
        }
        if conj.len() != n {
            return Err(Error::Arity { expected: n, got: conj.len() });
        }
        for (k, p) in phi.iter().enumerate() {
            self.validate_auto(p)?;
            if p.factor != k {
                return Err(Error::CrossFactor { left: k, right: p.factor });
            }
        }
        for c in &conj {
            self.check_word(c)?;
        }
        Ok(self.canonical_auto(phi, conj))
    }

    pub fn identity_factor_auto(&self) -> Vec<FactorAutoPart> {
        (0..self.rank()).map(|k| self.identity_auto(k)).collect()
    }

    pub fn identity_psa(&self) -> PureSymmetricAuto {
        self.factor_psa(&self.identity_factor_auto())
    }

    pub fn factor_psa(&self, phi: &[FactorAutoPart]) -> PureSymmetricAuto {
        PureSymmetricAuto { phi: phi.to_vec(), conj: (0..self.rank()).map(|_| self.one()).collect() }
    }

    /// `ι_h : y -> h^-1 y h`.
    pub fn inner_psa(&self, h: &Word) -> PureSymmetricAuto {
        self.canonical_auto(self.identity_factor_auto(), (0..self.rank()).map(|_| h.clone()).collect())
    }

    /// The automorphism with identity factor maps and conjugators `slots`.
    pub fn tuple_psa(&self, slots: &[Word]) -> PureSymmetricAuto {
        self.canonical_auto(self.identity_factor_auto(), slots.to_vec())
    }

    pub fn whitehead(&self, targets: &[usize], x: FactorElement) -> Result<WhiteheadAuto> {
        self.check_element(&x)?;
        let mut targets = targets.to_vec();
        targets.sort_unstable();
        targets.dedup();
        for &t in &targets {
            self.check_index(t)?;
            if t == x.factor() {
                return Err(Error::OperatingFactorInTargets(t));
            }
        }
        Ok(WhiteheadAuto { targets, x })
    }

    pub fn whitehead_psa(&self, w: &WhiteheadAuto) -> PureSymmetricAuto {
        let x = self.letter(&w.x);
        let conj = (0..self.rank())
            .map(|k| if w.targets.contains(&k) { x.clone() } else { self.one() })
            .collect();
        PureSymmetricAuto { phi: self.identity_factor_auto(), conj }
    }

    pub fn invert_whitehead(&self, w: &WhiteheadAuto) -> WhiteheadAuto {
        WhiteheadAuto { targets: w.targets.clone(), x: self.fg_inv(&w.x) }
    }

    /// Applies a factor automorphism letter by letter.
    pub fn apply_factor_auto(&self, phi: &[FactorAutoPart], w: &Word) -> Word {
        let imgs: Vec<_> = w.syllables().iter().map(|s| self.map_elem(&phi[s.factor()], s)).collect();
        self.reduce(imgs.iter()).expect("images stay in their factors")
    }

    /// `outer ∘ inner`, factorwise.
    pub fn compose_factor_autos(&self, outer: &[FactorAutoPart], inner: &[FactorAutoPart]) -> Vec<FactorAutoPart> {
        outer.iter().zip(inner).map(|(o, i)| self.compose_auto(o, i)).collect()
    }

    pub fn invert_factor_auto(&self, phi: &[FactorAutoPart]) -> Vec<FactorAutoPart> {
        phi.iter().map(|p| self.invert_auto(p)).collect()
    }

    pub fn apply(&self, psi: &PureSymmetricAuto, w: &Word) -> Word {
        let mut out = self.one();
        for s in w.syllables() {
            let k = s.factor();
            let img = self.letter(&self.map_elem(&psi.phi[k], s));
            let c = &psi.conj[k];
            out = self.mul_all(&[&out, &self.inv(c), &img, c]);
        }
        out
    }

    /// `f ∘ g`.
    pub fn compose(&self, f: &PureSymmetricAuto, g: &PureSymmetricAuto) -> PureSymmetricAuto {
        let phi = self.compose_factor_autos(&f.phi, &g.phi);
        // f(g(x)) = f(c_g)^-1 c_f^-1 (φ_f φ_g)(x) c_f f(c_g)
        let conj = (0..self.rank()).map(|k| self.mul(&f.conj[k], &self.apply(f, &g.conj[k]))).collect();
        self.canonical_auto(phi, conj)
    }

    pub fn compose_all(&self, autos: &[&PureSymmetricAuto]) -> PureSymmetricAuto {
        autos.iter().fold(self.identity_psa(), |acc, a| self.compose(&acc, a))
    }

    /// `ψ^-1`, obtained by inverting a factorization.
    pub fn invert(&self, psi: &PureSymmetricAuto) -> Result<PureSymmetricAuto> {
        let f = self.factorize(psi)?;
        // ψ^-1 = ι_{h^-1} ∘ Φ^-1 ∘ w_r^-1 ∘ ... ∘ w_1^-1
        let mut out = self.inner_psa(&self.inv(&f.inner));
        out = self.compose(&out, &self.factor_psa(&self.invert_factor_auto(&f.factor)));
        for w in f.whitehead.iter().rev() {
            out = self.compose(&out, &self.whitehead_psa(&self.invert_whitehead(w)));
        }
        Ok(out)
    }

    /// Whether the endomorphism is onto, i.e. the conjugates `G_k^{c_k}`
    /// form a free splitting of `G`.
    pub fn is_automorphism(&self, psi: &PureSymmetricAuto) -> bool {
        self.factorize(psi).is_ok()
    }

    /// `h` with `ψ = ι_h`, if there is one.
    pub fn is_inner(&self, psi: &PureSymmetricAuto) -> Option<Word> {
        // ψ = ι_h forces h ∈ G_k c_k for every k; the cosets for k = 0, 1
        // meet in at most one point.
        let c = &psi.conj;
        let w = self.mul(&c[0], &self.inv(&c[1]));
        let d = self.double_coset_split(&w, 0, 1);
        if !d.core.is_empty() {
            return None;
        }
        let h = self.mul(&self.inv(&self.opt_letter(&d.left)), &c[0]);
        for (k, ck) in c.iter().enumerate() {
            let dk = self.mul(ck, &self.inv(&h));
            let a = match dk.as_letter() {
                Some(None) => self.fg_identity(k),
                Some(Some(e)) if e.factor() == k => self.fg_inv(e),
                _ => return None,
            };
            if psi.phi[k] != self.conjugation_auto(&a) {
                return None;
            }
        }
        Some(h)
    }

    /// Whether `a` and `b` agree up to an inner automorphism.
    pub fn outer_equal(&self, a: &PureSymmetricAuto, b: &PureSymmetricAuto) -> Result<bool> {
        Ok(self.is_inner(&self.compose(&self.invert(a)?, b)).is_some())
    }

    /// The image of an α-label: slot `k` becomes `c_k ψ(g_k)`.
    pub fn act_alpha(&self, l: &AlphaLabel, psi: &PureSymmetricAuto) -> AlphaLabel {
        self.alpha_label(self.act_slots(l.slots(), psi)).expect("same arity")
    }

    pub fn act_a(&self, m: &ALabel, psi: &PureSymmetricAuto) -> ALabel {
        self.a_label(m.apex(), self.act_slots(m.slots(), psi)).expect("same arity")
    }

    fn act_slots(&self, slots: &[Word], psi: &PureSymmetricAuto) -> Vec<Word> {
        slots.iter().enumerate().map(|(k, g)| self.mul(&psi.conj[k], &self.apply(psi, g))).collect()
    }

    /// For `ψ` fixing the base α-class: `ψ = Φ ∘ ι_h` with `Φ` a factor
    /// automorphism.
    pub fn decompose_alpha_stabiliser(&self, psi: &PureSymmetricAuto) -> Result<Factorization> {
        let image = self.act_alpha(&self.base_alpha(), psi);
        let g = self
            .alpha_witness(&self.base_alpha(), &image)
            .map_err(|slot| Error::NotStabilizer { slot })?;
        // c_k = a_k g, so ψ = ι_g ∘ Φ with Φ_k = (x -> a_k^-1 x a_k) ∘ φ_k.
        let factor: Vec<_> = (0..self.rank())
            .map(|k| {
                let a = self.mul(&psi.conj[k], &self.inv(&g));
                let a = a.as_letter().expect("slot absorbed by its factor").cloned();
                let a = a.unwrap_or_else(|| self.fg_identity(k));
                self.compose_auto(&self.conjugation_auto(&a), &psi.phi[k])
            })
            .collect();
        let inner = self.apply_factor_auto(&self.invert_factor_auto(&factor), &g);
        Ok(Factorization { whitehead: Vec::new(), factor, inner })
    }

    /// For `ψ` fixing the class of the base A-label with apex `i`:
    /// `ψ = (G_j, r_j)... ∘ Φ ∘ ι_h` with every Whitehead operating in `G_i`.
    pub fn decompose_a_stabiliser(&self, psi: &PureSymmetricAuto, i: usize) -> Result<Factorization> {
        self.check_index(i)?;
        let c = &psi.conj;
        let ci_inv = self.inv(&c[i]);
        let mut factor = psi.phi.clone();
        let mut whitehead = Vec::new();
        let mut undo = Vec::with_capacity(self.rank());
        for j in 0..self.rank() {
            if j == i {
                undo.push(self.one());
                continue;
            }
            // c_j c_i^-1 = l_j r_j with l_j ∈ G_j, r_j ∈ G_i.
            let d = self.double_coset_split(&self.mul(&c[j], &ci_inv), j, i);
            if !d.core.is_empty() {
                return Err(Error::NotStabilizer { slot: j });
            }
            if let Some(l) = &d.left {
                factor[j] = self.compose_auto(&self.conjugation_auto(l), &psi.phi[j]);
            }
            match &d.right {
                Some(r) => {
                    undo.push(self.letter(&self.fg_inv(r)));
                    whitehead.push(WhiteheadAuto { targets: alloc::vec![j], x: r.clone() });
                }
                None => undo.push(self.one()),
            }
        }
        // ψ = ι_{c_i} ∘ X = X ∘ ι_{X^-1(c_i)} where X = W ∘ Φ.
        let w_inv = PureSymmetricAuto { phi: self.identity_factor_auto(), conj: undo };
        let inner = self.apply_factor_auto(&self.invert_factor_auto(&factor), &self.apply(&w_inv, &c[i]));
        Ok(Factorization { whitehead, factor, inner })
    }

    /// Writes `ψ` as Whitehead automorphisms, a factor automorphism and an
    /// inner automorphism, following the volume reduction of its
    /// conjugator tuple.
    pub fn factorize(&self, psi: &PureSymmetricAuto) -> Result<Factorization> {
        let start = self.alpha_label(psi.conj.clone())?;
        if self.is_base(&start) {
            return self.decompose_alpha_stabiliser(psi);
        }
        let red = self.reduce_to_base(&start).map_err(|e| match e {
            Error::NonSplitting { .. } => Error::NotAutomorphism,
            other => other,
        })?;
        // With t' the label after a move, ψ_t ∘ (G_j, a) = ψ_{t'} ∘ β where
        // β conjugates G_j by the absorbed syllable. Walking back from the
        // base, the β's are pushed right through the Whiteheads using
        // β ∘ (Y, a) = (Y, β(a)) ∘ β.
        let mut acc = self.identity_factor_auto();
        let mut whitehead = Vec::with_capacity(red.moves.len());
        for mv in red.moves.iter().rev() {
            if let Some(b) = &mv.absorbed {
                acc[mv.j] = self.compose_auto(&acc[mv.j], &self.conjugation_auto(b));
            }
            let x = self.map_elem(&acc[mv.i], &self.fg_inv(&mv.a));
            whitehead.push(WhiteheadAuto { targets: alloc::vec![mv.j], x });
        }
        let factor = self.compose_factor_autos(&acc, &psi.phi);
        Ok(Factorization { whitehead, factor, inner: self.one() })
    }

    /// The automorphism a factorization denotes.
    pub fn factorization_psa(&self, f: &Factorization) -> Result<PureSymmetricAuto> {
        let identity_conj = (0..self.rank()).map(|_| self.one()).collect();
        let factor = self.auto(f.factor.clone(), identity_conj)?;
        let mut out = self.compose(&factor, &self.inner_psa(&f.inner));
        for w in f.whitehead.iter().rev() {
            let w = self.whitehead(&w.targets, w.x.clone())?;
            out = self.compose(&self.whitehead_psa(&w), &out);
        }
        Ok(out)
    }

    /// Checks `f` against `ψ` on the test set of every factor.
    pub fn verify_factorization(&self, psi: &PureSymmetricAuto, f: &Factorization) -> bool {
        if self.check_word(&f.inner).is_err() {
            return false;
        }
        let Ok(composite) = self.factorization_psa(f) else {
            return false;
        };
        (0..self.rank()).all(|k| {
            self.test_set(k).iter().all(|e| {
                let w = self.letter(e);
                self.apply(psi, &w) == self.apply(&composite, &w)
            })
        })
    }
}
