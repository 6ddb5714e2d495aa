//! Volume-bounded balls of the complex spanned by α- and A-classes.
//!
//! For a finite factor system and a bound `V`, the ball holds one
//! representative of every α-class that has a label with volume at most `V`
//! at `U·ε`, one representative of every A-class collapsing from them, and
//! the collapse edges. Reduction never raises volume, so the path from any
//! α-class in the ball to the base stays inside it.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factor::FactorSystem;
use crate::labelling::{ALabel, AlphaLabel};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnBall {
    pub bound: usize,
    pub alpha: Vec<AlphaLabel>,
    pub a: Vec<ALabel>,
    /// `(alpha index, a index)` collapse edges.
    pub edges: Vec<(usize, usize)>,
}

/// One failed check of [`FactorSystem::check_ball`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallFailure {
    EdgeOutOfRange { edge: usize },
    EdgeNotCollapse { alpha: usize, a: usize },
    /// An α-class without exactly one edge per apex.
    ShortCollapseSet { alpha: usize, found: usize },
    Unreached { alpha: usize },
    LeftBall { alpha: usize },
    MissingBase,
    BaseCollapses { found: usize },
    FundamentalDomain { alpha: usize },
    FundamentalDomainA { a: usize },
    DuplicateAlpha { first: usize, second: usize },
    DuplicateA { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallReport {
    pub alpha_classes: usize,
    pub a_classes: usize,
    pub edges: usize,
    pub failures: Vec<BallFailure>,
}

impl BallReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl FactorSystem {
    fn check_bound(&self, bound: usize) -> Result<()> {
        if let Some(f) = (0..self.rank()).find(|&f| !self.factor(f).is_finite()) {
            return Err(Error::InfiniteFactor(f));
        }
        if bound < self.rank() {
            return Err(Error::BoundBelowRank { bound, n: self.rank() });
        }
        Ok(())
    }

    /// Every slot-canonical α-label with volume at most `bound` at `U·ε`,
    /// ordered by total syllable length and then by label order.
    pub fn ball_candidates(&self, bound: usize) -> Result<Vec<AlphaLabel>> {
        self.check_bound(bound)?;
        let n = self.rank();
        // Spoke k has length 2|g_k| + 1.
        let budget = (bound - n) / 2;
        let mut by_slot_len: Vec<Vec<Vec<Word>>> = Vec::with_capacity(n);
        for k in 0..n {
            let mut lens = Vec::with_capacity(budget + 1);
            for len in 0..=budget {
                lens.push(self.words_of_length(len, Some(k))?);
            }
            by_slot_len.push(lens);
        }
        let mut out = Vec::new();
        let mut lens = alloc::vec![0usize; n];
        loop {
            if lens.iter().sum::<usize>() <= budget {
                let mut partial: Vec<Vec<Word>> = alloc::vec![Vec::new()];
                for k in 0..n {
                    let mut next = Vec::new();
                    for p in &partial {
                        for w in &by_slot_len[k][lens[k]] {
                            let mut q = p.clone();
                            q.push(w.clone());
                            next.push(q);
                        }
                    }
                    partial = next;
                }
                for slots in partial {
                    out.push(self.alpha_label(slots)?);
                }
            }
            // Odometer over per-slot lengths.
            let mut k = 0;
            while k < n {
                lens[k] += 1;
                if lens[k] <= budget {
                    break;
                }
                lens[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Whether the label's conjugates form a free splitting of `G`.
    pub fn is_splitting(&self, l: &AlphaLabel) -> bool {
        self.reduce_to_base(l).is_ok()
    }

    /// Deduplicates splitting candidates (already in representative order)
    /// into classes and adds the collapses.
    pub fn assemble_ball(&self, bound: usize, splitting: Vec<AlphaLabel>) -> SnBall {
        let mut alpha: Vec<AlphaLabel> = Vec::new();
        for l in splitting {
            if !alpha.iter().any(|r| self.alpha_equivalent(r, &l).is_some()) {
                alpha.push(l);
            }
        }
        let mut a: Vec<ALabel> = Vec::new();
        let mut edges = Vec::new();
        for (li, l) in alpha.iter().enumerate() {
            for m in self.collapses(l) {
                let ai = match a.iter().position(|r| self.a_equivalent(r, &m)) {
                    Some(ai) => ai,
                    None => {
                        a.push(m);
                        a.len() - 1
                    }
                };
                edges.push((li, ai));
            }
        }
        SnBall { bound, alpha, a, edges }
    }

    pub fn enumerate_ball(&self, bound: usize) -> Result<SnBall> {
        let splitting = self.ball_candidates(bound)?.into_iter().filter(|l| self.is_splitting(l)).collect();
        Ok(self.assemble_ball(bound, splitting))
    }

    fn alpha_class_of(&self, ball: &SnBall, l: &AlphaLabel) -> Option<usize> {
        ball.alpha.iter().position(|r| self.alpha_equivalent(r, l).is_some())
    }

    /// Structural checks of a ball: collapse edges, reduction paths to the
    /// base staying in the ball, the base's collapses, translation of every
    /// class back to the base cell, and that no two representatives are
    /// equivalent.
    pub fn check_ball(&self, ball: &SnBall) -> BallReport {
        let n = self.rank();
        let e = self.one();
        let mut failures = Vec::new();
        let mut incident: Vec<Vec<usize>> = alloc::vec![Vec::new(); ball.alpha.len()];
        for (idx, &(li, ai)) in ball.edges.iter().enumerate() {
            if li >= ball.alpha.len() || ai >= ball.a.len() {
                failures.push(BallFailure::EdgeOutOfRange { edge: idx });
                continue;
            }
            let m = &ball.a[ai];
            if !self.a_equivalent(&self.collapses(&ball.alpha[li])[m.apex()], m) {
                failures.push(BallFailure::EdgeNotCollapse { alpha: li, a: ai });
            }
            incident[li].push(m.apex());
        }
        for (li, apexes) in incident.iter_mut().enumerate() {
            apexes.sort_unstable();
            apexes.dedup();
            if apexes.len() != n {
                failures.push(BallFailure::ShortCollapseSet { alpha: li, found: apexes.len() });
            }
        }

        for (li, l) in ball.alpha.iter().enumerate() {
            match self.reduce_to_base(l) {
                Err(_) => failures.push(BallFailure::Unreached { alpha: li }),
                Ok(r) => {
                    let inside = r.labels.iter().all(|m| {
                        self.volume(m, &e) <= ball.bound && self.alpha_class_of(ball, m).is_some()
                    });
                    if !inside {
                        failures.push(BallFailure::LeftBall { alpha: li });
                    }
                }
            }
        }

        match self.alpha_class_of(ball, &self.base_alpha()) {
            None => failures.push(BallFailure::MissingBase),
            Some(bi) => {
                let mut hits = alloc::vec![false; n];
                let mut found = 0;
                for &(li, ai) in &ball.edges {
                    if li != bi || ai >= ball.a.len() {
                        continue;
                    }
                    found += 1;
                    let m = &ball.a[ai];
                    if self.a_equivalent(m, &self.base_a(m.apex())) {
                        hits[m.apex()] = true;
                    }
                }
                if found != n || hits.iter().any(|h| !h) {
                    failures.push(BallFailure::BaseCollapses { found });
                }
            }
        }

        // The tuple automorphism of an α-representative carries the base
        // label onto it, so its inverse carries the class (and its
        // collapses) back onto the base cell.
        let mut back = Vec::with_capacity(ball.alpha.len());
        for (li, l) in ball.alpha.iter().enumerate() {
            let inv = self.invert(&self.tuple_psa(l.slots())).ok();
            if !inv.as_ref().is_some_and(|inv| self.is_base(&self.act_alpha(l, inv))) {
                failures.push(BallFailure::FundamentalDomain { alpha: li });
            }
            back.push(inv);
        }
        for (ai, m) in ball.a.iter().enumerate() {
            let ok = ball.edges.iter().find(|&&(_, x)| x == ai).is_some_and(|&(li, _)| {
                back.get(li).and_then(Option::as_ref).is_some_and(|inv| {
                    self.a_equivalent(&self.act_a(m, inv), &self.base_a(m.apex()))
                })
            });
            if !ok {
                failures.push(BallFailure::FundamentalDomainA { a: ai });
            }
        }

        for first in 0..ball.alpha.len() {
            for second in first + 1..ball.alpha.len() {
                if self.alpha_equivalent(&ball.alpha[first], &ball.alpha[second]).is_some() {
                    failures.push(BallFailure::DuplicateAlpha { first, second });
                }
            }
        }
        for first in 0..ball.a.len() {
            for second in first + 1..ball.a.len() {
                if self.a_equivalent(&ball.a[first], &ball.a[second]) {
                    failures.push(BallFailure::DuplicateA { first, second });
                }
            }
        }

        BallReport {
            alpha_classes: ball.alpha.len(),
            a_classes: ball.a.len(),
            edges: ball.edges.len(),
            failures,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> FactorSystem {
        FactorSystem::cyclic(&[2, 2, 2]).unwrap()
    }

    #[test]
    fn smallest_ball() {
        let s = k3();
        let ball = s.enumerate_ball(3).unwrap();
        assert_eq!((ball.alpha.len(), ball.a.len(), ball.edges.len()), (1, 3, 3));
        assert!(s.check_ball(&ball).passed());
    }

    #[test]
    fn ball_of_volume_five() {
        let s = k3();
        let ball = s.enumerate_ball(5).unwrap();
        // Base plus one class per nontrivial letter: (ε, ε, a) and
        // (ε, a, ε) differ by translating by a.
        assert_eq!(ball.alpha.len(), 1 + 3);
        assert!(s.check_ball(&ball).passed());
    }

    #[test]
    fn removed_edge_is_flagged() {
        let s = k3();
        let mut ball = s.enumerate_ball(5).unwrap();
        let (li, _) = ball.edges.remove(4);
        let report = s.check_ball(&ball);
        assert!(report.failures.contains(&BallFailure::ShortCollapseSet { alpha: li, found: 2 }));
    }

    #[test]
    fn bad_bounds() {
        let s = k3();
        assert_eq!(s.enumerate_ball(2), Err(Error::BoundBelowRank { bound: 2, n: 3 }));
    }
}
