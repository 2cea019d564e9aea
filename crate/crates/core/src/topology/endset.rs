//! Exact arithmetic on two-sided translates `g₁·K·g₂` of an end.
//!
//! With `G = ⊔ ⟨z⟩·t_i` and `⟨z⟩` normal, every translate of an end has the
//! form `{z^j·t_i : ω·j >= b_i}` for an orientation `ω = ±1` and one
//! threshold per coset, so translation, inclusion and finite differences
//! reduce to integer bookkeeping.

use serde::Serialize;

use crate::ends::{AxisDecomposition, EndDescriptor};
use crate::group::{Element, GroupOracle};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EndSet {
    pub orientation: i64,
    pub thresholds: Vec<i64>,
}

impl EndSet {
    pub fn of_end(end: &EndDescriptor) -> Self {
        EndSet {
            orientation: end.side.sign(),
            thresholds: vec![end.n0; end.transversal().len()],
        }
    }

    pub fn contains(&self, dec: &AxisDecomposition, g: &Element) -> bool {
        let (j, i) = dec.decompose(g);
        self.orientation * j >= self.thresholds[i]
    }

    /// `g·S`.
    pub fn left_translate(&self, oracle: &GroupOracle, dec: &AxisDecomposition, g: &Element) -> Self {
        let orientation = self.orientation * dec.orientation(oracle, g);
        let mut thresholds = vec![0; self.thresholds.len()];
        for (i, t) in dec.transversal.iter().enumerate() {
            let (c, m) = dec.decompose(&oracle.mul(g, t));
            thresholds[m] = self.thresholds[i] + orientation * c;
        }
        EndSet {
            orientation,
            thresholds,
        }
    }

    /// `S·g`.
    pub fn right_translate(&self, oracle: &GroupOracle, dec: &AxisDecomposition, g: &Element) -> Self {
        let mut thresholds = vec![0; self.thresholds.len()];
        for (i, t) in dec.transversal.iter().enumerate() {
            let (c, m) = dec.decompose(&oracle.mul(t, g));
            thresholds[m] = self.thresholds[i] + self.orientation * c;
        }
        EndSet {
            orientation: self.orientation,
            thresholds,
        }
    }

    /// `g₁·S·g₂`.
    pub fn translate(&self, oracle: &GroupOracle, dec: &AxisDecomposition, left: &Element, right: &Element) -> Self {
        self.left_translate(oracle, dec, left).right_translate(oracle, dec, right)
    }

    /// `|self \ other|`, or `None` when it is infinite (opposite orientations).
    pub fn difference_size(&self, other: &EndSet) -> Option<u64> {
        (self.orientation == other.orientation).then(|| {
            self.thresholds
                .iter()
                .zip(&other.thresholds)
                .map(|(a, b)| (b - a).max(0) as u64)
                .sum()
        })
    }

    pub fn is_subset(&self, other: &EndSet) -> bool {
        self.difference_size(other) == Some(0)
    }

    /// Whether the intersection is infinite.
    pub fn meets_infinitely(&self, other: &EndSet) -> bool {
        self.orientation == other.orientation
    }
}
