//! Ends of finitely generated groups.
//!
//! The number of ends is estimated by counting the components of the annulus
//! `r <= |g| <= R(r)` that reach its outer layer, with `R(r) = 3r + window`.
//! For the virtually cyclic catalog entries the two ends are also available
//! symbolically, as [`EndDescriptor`]s.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cayley::{count_outer_components, Ball, DEFAULT_MEMORY_CAP};
use crate::error::{Error, Result};
use crate::group::{Element, GroupKind, GroupOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Positive => 1,
            Side::Negative => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Self {
        if sign >= 0 {
            Side::Positive
        } else {
            Side::Negative
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EndsClass {
    ZeroEnds,
    OneEnd,
    TwoEnds,
    ManyEndsGrowing,
    UnknownAtScale,
}

#[derive(Clone, Copy, Debug)]
pub struct EndsParams {
    pub r_max: usize,
    pub window: usize,
    pub cap: usize,
}

impl Default for EndsParams {
    fn default() -> Self {
        EndsParams {
            r_max: 12,
            window: 4,
            cap: DEFAULT_MEMORY_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EndsReport {
    pub group: String,
    /// Inner radius `r` -> number of outer-touching annulus components.
    pub counts_by_radius: BTreeMap<usize, usize>,
    /// Inner radius `r` -> outer radius actually used.
    pub outer_radius: BTreeMap<usize, usize>,
    pub stabilized_count: Option<usize>,
    pub classification: EndsClass,
    pub saturated: bool,
    /// Radius of the enumerated ball; below `3 r_max + window` when the cap
    /// was hit.
    pub ball_radius: usize,
    pub ball_size: usize,
    pub window: usize,
}

/// Estimates the number of ends from annulus component counts.
pub fn ends_estimate(oracle: &GroupOracle, params: EndsParams) -> Result<EndsReport> {
    let EndsParams { r_max, window, cap } = params;
    if window < 2 || r_max < window {
        return Err(Error::Precondition(format!(
            "need r_max >= window >= 2, got r_max = {r_max}, window = {window}"
        )));
    }
    if oracle.chain().is_some() {
        return Err(Error::NotFinitelyGenerated(oracle.name().to_string()));
    }
    let target = 3 * r_max + window;
    let ball = Ball::grow_within(oracle, target, cap);
    if !ball.is_saturated() && ball.radius() < r_max + 2 {
        // strict growth stops at the same layer and reports its projected size
        return Err(Ball::new(oracle, r_max + 2, cap).expect_err("lenient growth stopped short"));
    }
    let adjacency = ball.adjacency(oracle);
    let mut counts_by_radius = BTreeMap::new();
    let mut outer_radius = BTreeMap::new();
    for r in 1..=r_max {
        let outer = (3 * r + window).min(ball.radius());
        counts_by_radius.insert(r, count_outer_components(&ball, &adjacency, r, outer));
        outer_radius.insert(r, outer);
    }
    let tail: Vec<usize> = counts_by_radius.values().rev().take(window).copied().collect();
    let stabilized_count = tail.windows(2).all(|w| w[0] == w[1]).then(|| tail[0]);
    // `tail` is reversed, so strict growth means strictly decreasing here
    let growing = tail.windows(2).all(|w| w[0] > w[1]);
    let classification = if ball.is_saturated() {
        EndsClass::ZeroEnds
    } else {
        match stabilized_count {
            Some(1) => EndsClass::OneEnd,
            Some(2) => EndsClass::TwoEnds,
            _ if growing => EndsClass::ManyEndsGrowing,
            _ => EndsClass::UnknownAtScale,
        }
    };
    Ok(EndsReport {
        group: oracle.name().to_string(),
        counts_by_radius,
        outer_radius,
        stabilized_count,
        classification,
        saturated: ball.is_saturated(),
        ball_radius: ball.radius(),
        ball_size: ball.len(),
        window,
    })
}

/// Decomposition `G = ⊔ ⟨z⟩·t` of a virtually cyclic catalog group over a
/// normal infinite cyclic subgroup `⟨z⟩` and a finite transversal.
#[derive(Clone, Debug, Serialize)]
pub struct AxisDecomposition {
    pub axis: Element,
    pub transversal: Vec<Element>,
}

impl AxisDecomposition {
    pub fn for_oracle(oracle: &GroupOracle) -> Result<Self> {
        let not_vc = || Error::NotVirtuallyCyclic(oracle.name().to_string());
        let (axis, transversal) = match oracle.kind() {
            GroupKind::Lattice { rank: 1 } => (oracle.parse_element("t")?, vec![oracle.identity().clone()]),
            GroupKind::CyclicTimesFinite { order } => {
                let c = oracle.parse_element("c")?;
                (
                    oracle.parse_element("t")?,
                    (0..*order as i64).map(|i| oracle.pow(&c, i)).collect(),
                )
            }
            GroupKind::InfiniteDihedral => (
                oracle.parse_element("r")?,
                vec![oracle.identity().clone(), oracle.parse_element("s")?],
            ),
            _ => return Err(not_vc()),
        };
        Ok(AxisDecomposition { axis, transversal })
    }

    /// `(k, i)` with `g = z^k · t_i`.
    pub fn decompose(&self, g: &Element) -> (i64, usize) {
        if let Some(v) = g.coordinates() {
            return (v[0], 0);
        }
        if let Some((shift, rot)) = g.cyclic_ext_parts() {
            return (shift, rot as usize);
        }
        if let Some((shift, flip)) = g.dihedral_parts() {
            // s r^k = r^-k s
            return if flip { (-shift, 1) } else { (shift, 0) };
        }
        panic!("{g} is not an element of a virtually cyclic catalog group")
    }

    /// `z^k · t_i`.
    pub fn compose(&self, oracle: &GroupOracle, k: i64, i: usize) -> Element {
        oracle.mul(&oracle.pow(&self.axis, k), &self.transversal[i])
    }

    /// `χ(g) ∈ {+1, -1}` with `g z g⁻¹ = z^χ(g)`.
    pub fn orientation(&self, oracle: &GroupOracle, g: &Element) -> i64 {
        let (k, i) = self.decompose(&oracle.conjugate(g, &self.axis));
        assert!(i == 0 && k.abs() == 1, "axis is not normal with unit action");
        k
    }
}

/// One end `K = {z^k · t : t ∈ T, side·k >= n0}` of a virtually cyclic group.
#[derive(Clone, Debug, Serialize)]
pub struct EndDescriptor {
    pub group: String,
    pub side: Side,
    pub decomposition: AxisDecomposition,
    pub n0: i64,
}

impl EndDescriptor {
    pub fn axis(&self) -> &Element {
        &self.decomposition.axis
    }

    pub fn transversal(&self) -> &[Element] {
        &self.decomposition.transversal
    }

    pub fn contains(&self, g: &Element) -> bool {
        let (k, _) = self.decomposition.decompose(g);
        self.side.sign() * k >= self.n0
    }
}

pub fn end_descriptor(oracle: &GroupOracle, side: Side) -> Result<EndDescriptor> {
    Ok(EndDescriptor {
        group: oracle.name().to_string(),
        side,
        decomposition: AxisDecomposition::for_oracle(oracle)?,
        n0: 1,
    })
}
