//! Volume reduction of α-labels.
//!
//! When the spoke graph at `U·x` has volume above `n`, some spoke `j` passes
//! through the endpoint `G_i·g_i` of another spoke. Writing `U·y` and `U·z`
//! for the spoke's neighbours of `G_i·g_i` (nearer to and further from
//! `U·x`), the element `z^-1 y` fixes `G_i·g_i` and swings the tail of spoke
//! `j` back onto the shorter side. Replacing `g_j` by `g_j z^-1 y` changes the
//! label along an α–A–α path and strictly lowers the volume.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factor::{FactorElement, FactorSystem};
use crate::labelling::AlphaLabel;
use crate::tree::TreeVertex;
use crate::word::Word;

/// Spoke `j` runs `[U·x, ..., U·y, G_i·g_i, U·z, ..., G_j·g_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldWitness {
    pub i: usize,
    pub j: usize,
    pub y: Word,
    pub z: Word,
    /// Position of `G_i·g_i` on spoke `j`.
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    /// Operating factor.
    pub i: usize,
    /// Slot that moved.
    pub j: usize,
    /// `g_i z^-1 y g_i^-1`, a non-trivial element of `G_i`.
    pub a: FactorElement,
    /// Leading `G_j` syllable dropped when the new slot was made canonical.
    pub absorbed: Option<FactorElement>,
    pub vol_before: usize,
    pub vol_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Start label, each intermediate label, and the final (base) label.
    pub labels: Vec<AlphaLabel>,
    pub moves: Vec<MoveRecord>,
}

impl Reduction {
    pub fn final_label(&self) -> &AlphaLabel {
        self.labels.last().expect("at least the start label")
    }
}

impl FactorSystem {
    /// The first fold in `(j, i)` order, or `None` when no spoke passes
    /// through another spoke's endpoint.
    pub fn find_fold(&self, l: &AlphaLabel, x: &Word) -> Option<FoldWitness> {
        let n = self.rank();
        let ends: Vec<TreeVertex> =
            (0..n).map(|k| TreeVertex::C { factor: k, rep: l.slot(k).clone() }).collect();
        for j in 0..n {
            let spoke = self.spoke(l, x, j);
            for i in (0..n).filter(|&i| i != j) {
                if let Some(position) = spoke.iter().position(|v| *v == ends[i]) {
                    return Some(FoldWitness {
                        i,
                        j,
                        y: spoke[position - 1].rep().clone(),
                        z: spoke[position + 1].rep().clone(),
                        position,
                    });
                }
            }
        }
        None
    }

    /// One volume-lowering move at `U·x`.
    pub fn reduce_step(&self, l: &AlphaLabel, x: &Word) -> Result<(AlphaLabel, MoveRecord)> {
        let n = self.rank();
        let vol_before = self.volume(l, x);
        if vol_before == n {
            return Err(Error::AlreadyBase(n));
        }
        let FoldWitness { i, j, y, z, .. } =
            self.find_fold(l, x).ok_or(Error::NonSplitting { volume: vol_before, n })?;
        let c = self.mul(&self.inv(&z), &y);
        let gi = l.slot(i);
        let a = self.mul_all(&[gi, &c, &self.inv(gi)]);
        let a = match a.as_letter() {
            Some(Some(e)) if e.factor() == i => e.clone(),
            _ => unreachable!("z^-1 y fixes G_i·g_i"),
        };
        let (absorbed, moved) = self.strip_leading(&self.mul(l.slot(j), &c), j);
        let mut slots = l.slots().to_vec();
        slots[j] = moved;
        let next = self.alpha_label(slots)?;
        let vol_after = self.volume(&next, x);
        Ok((next, MoveRecord { i, j, a, absorbed, vol_before, vol_after }))
    }

    /// Reduces at `U·ε` until the label is the base label.
    pub fn reduce_to_base(&self, l: &AlphaLabel) -> Result<Reduction> {
        let n = self.rank();
        let e = self.one();
        let mut labels = alloc::vec![l.clone()];
        let mut moves = Vec::new();
        loop {
            let current = labels.last().expect("nonempty");
            if self.volume(current, &e) == n {
                break;
            }
            let (next, mv) = self.reduce_step(current, &e)?;
            labels.push(next);
            moves.push(mv);
        }
        Ok(Reduction { labels, moves })
    }
}
