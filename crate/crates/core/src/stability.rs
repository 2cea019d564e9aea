//! Translational almost-stability: is `|A Δ A·x|` finite for every `x`?
//!
//! Counts are taken on the windows of [`crate::window`]. For word groups the
//! profile of `x` runs over `r <= r_max - |x|`; for locally finite groups over
//! the chain levels `G_r`, `r <= r_max`, which are closed under translation by
//! `x ∈ G_r`.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupOracle};
use crate::subset::SubsetSpec;
use crate::window::Windows;

/// Number of trailing radii that must agree for a count to be called bounded.
pub const PLATEAU: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum StabilityVerdict {
    BoundedAtScale { bound: usize },
    GrowingAtScale { slope: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityProfile {
    pub subset: String,
    pub translate: Element,
    /// `r -> |(A Δ A·x) ∩ W(r)|`.
    pub by_radius: BTreeMap<usize, usize>,
    pub verdict: StabilityVerdict,
}

impl StabilityProfile {
    pub fn is_bounded(&self) -> bool {
        matches!(self.verdict, StabilityVerdict::BoundedAtScale { .. })
    }
}

/// `|(A Δ A·x) ∩ W(r)|` for every admissible radius.
pub fn symdiff_profile(
    oracle: &GroupOracle,
    a: &SubsetSpec,
    x: &Element,
    r_max: usize,
    cap: usize,
) -> Result<StabilityProfile> {
    let windows = Windows::for_oracle(oracle, r_max, cap)?;
    symdiff_profile_in(oracle, a, x, &windows)
}

pub(crate) fn symdiff_profile_in(
    oracle: &GroupOracle,
    a: &SubsetSpec,
    x: &Element,
    windows: &Windows,
) -> Result<StabilityProfile> {
    let r_max = windows.radius();
    let scale = oracle.scale_of(x);
    if r_max < scale + 2 {
        return Err(Error::Precondition(format!(
            "r_max = {r_max} must be at least scale({x}) + 2 = {}",
            scale + 2
        )));
    }
    let top = if windows.is_chain() { r_max } else { r_max - scale };
    let x_inv = oracle.inv(x);
    let mut by_radius = BTreeMap::new();
    let mut count = 0;
    let mut seen = 0;
    for r in 0..=top {
        for g in &windows.within(r)[seen..] {
            // g ∈ A·x  iff  g·x⁻¹ ∈ A
            if a.contains(oracle, g) != a.contains(oracle, &oracle.mul(g, &x_inv)) {
                count += 1;
            }
        }
        seen = windows.size(r);
        by_radius.insert(r, count);
    }
    let verdict = plateau_verdict(&by_radius);
    Ok(StabilityProfile {
        subset: a.name().to_string(),
        translate: x.clone(),
        by_radius,
        verdict,
    })
}

fn plateau_verdict(by_radius: &BTreeMap<usize, usize>) -> StabilityVerdict {
    let tail: Vec<usize> = by_radius.values().rev().take(PLATEAU).copied().collect();
    if tail.len() == PLATEAU && tail.windows(2).all(|w| w[0] == w[1]) {
        return StabilityVerdict::BoundedAtScale { bound: tail[0] };
    }
    StabilityVerdict::GrowingAtScale {
        slope: least_squares_slope(by_radius),
    }
}

fn least_squares_slope(points: &BTreeMap<usize, usize>) -> f64 {
    let n = points.len() as f64;
    let mx = points.keys().map(|&r| r as f64).sum::<f64>() / n;
    let my = points.values().map(|&c| c as f64).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (&r, &c) in points {
        sxy += (r as f64 - mx) * (c as f64 - my);
        sxx += (r as f64 - mx).powi(2);
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SetClass {
    FiniteAtScale,
    CofiniteAtScale,
    AlmostStableProper,
    NotAlmostStable,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostStableReport {
    pub subset: String,
    pub class: SetClass,
    pub profiles: Vec<StabilityProfile>,
    /// Generators whose scale exceeds `r_max - 2`, left untested.
    pub untested: Vec<Element>,
    /// `r -> |A ∩ W(r)|` over the last radii.
    pub member_counts: BTreeMap<usize, usize>,
    /// `r -> |W(r) \ A|` over the last radii.
    pub complement_counts: BTreeMap<usize, usize>,
    pub r_max: usize,
}

impl AlmostStableReport {
    pub fn almost_stable(&self) -> bool {
        self.class != SetClass::NotAlmostStable
    }
}

/// Classifies `A` by size and by the symmetric-difference profiles of the
/// generators; a set is almost stable once all generators are.
pub fn classify_almost_stable(
    oracle: &GroupOracle,
    a: &SubsetSpec,
    r_max: usize,
    cap: usize,
) -> Result<AlmostStableReport> {
    let windows = Windows::for_oracle(oracle, r_max, cap)?;
    classify_almost_stable_in(oracle, a, &windows)
}

pub(crate) fn classify_almost_stable_in(
    oracle: &GroupOracle,
    a: &SubsetSpec,
    windows: &Windows,
) -> Result<AlmostStableReport> {
    let r_max = windows.radius();
    if r_max < PLATEAU {
        return Err(Error::Precondition(format!("r_max = {r_max} must be at least {PLATEAU}")));
    }
    let mut profiles = Vec::new();
    let mut untested = Vec::new();
    for s in oracle.generator_elements() {
        if oracle.scale_of(s) + 2 <= r_max {
            profiles.push(symdiff_profile_in(oracle, a, s, windows)?);
        } else {
            untested.push(s.clone());
        }
    }
    let mut member_counts = BTreeMap::new();
    let mut complement_counts = BTreeMap::new();
    for r in r_max + 1 - PLATEAU..=r_max {
        let inside = a.count_in(oracle, windows.within(r));
        member_counts.insert(r, inside);
        complement_counts.insert(r, windows.size(r) - inside);
    }
    let constant = |m: &BTreeMap<usize, usize>| m.values().collect::<HashSet<_>>().len() == 1;
    let class = if constant(&member_counts) {
        SetClass::FiniteAtScale
    } else if constant(&complement_counts) {
        SetClass::CofiniteAtScale
    } else if profiles.iter().all(StabilityProfile::is_bounded) {
        SetClass::AlmostStableProper
    } else {
        SetClass::NotAlmostStable
    };
    Ok(AlmostStableReport {
        subset: a.name().to_string(),
        class,
        profiles,
        untested,
        member_counts,
        complement_counts,
        r_max,
    })
}

/// A partition `G = A ⊔ B` of a locally finite group in which both parts are
/// infinite and almost stable.
#[derive(Clone, Debug, Serialize)]
pub struct StablePartition {
    pub a: SubsetSpec,
    pub b: SubsetSpec,
    /// `transversals[n - base]` holds left coset representatives `A_n` with
    /// `A_n·G_n = G_{n+1} \ G_n`, each the least element of its coset.
    pub transversals: Vec<Vec<Element>>,
    /// `n -> (|A ∩ G_n|, |B ∩ G_n|)`.
    pub sizes: BTreeMap<usize, (usize, usize)>,
}

/// Builds `A = G_base ∪ A_base·G_base ∪ A_{base+2}·G_{base+2} ∪ …` and its
/// complement `B`, verifying the construction on every chain level.
pub fn stable_partition_locally_finite(oracle: &GroupOracle) -> Result<StablePartition> {
    let chain = oracle
        .chain()
        .ok_or_else(|| Error::NoChain(oracle.name().to_string()))?;
    let (base, top) = (chain.base(), chain.top());
    if top - base < 4 {
        return Err(Error::ChainTooShallow {
            group: oracle.name().to_string(),
            depth: top - base,
            required: 4,
        });
    }
    let a = SubsetSpec::parse("prop10", oracle)?;
    let b = SubsetSpec::parse("prop10:B", oracle)?;
    let mut transversals = Vec::new();
    for n in base..top {
        let lower = chain.level(n).expect("level");
        let upper = chain.level(n + 1).expect("level");
        let lower_set: HashSet<&Element> = lower.iter().collect();
        let mut annulus: Vec<&Element> = upper.iter().filter(|g| !lower_set.contains(g)).collect();
        annulus.sort();
        let mut covered: HashSet<Element> = HashSet::new();
        let mut reps = Vec::new();
        for x in annulus.iter().copied() {
            if covered.contains(x) {
                continue;
            }
            reps.push(x.clone());
            for h in lower {
                let y = oracle.mul(x, h);
                if !covered.insert(y) {
                    return Err(Error::Precondition(format!("cosets of G_{n} overlap at {x}")));
                }
            }
        }
        let annulus: HashSet<Element> = annulus.into_iter().cloned().collect();
        if covered != annulus {
            return Err(Error::Precondition(format!("A_{n}·G_{n} differs from G_{} \\ G_{n}", n + 1)));
        }
        // the even annuli lie in A, the odd ones in B
        let side = if (n - base) % 2 == 0 { &a } else { &b };
        if let Some(g) = annulus.iter().find(|g| !side.contains(oracle, g)) {
            return Err(Error::Precondition(format!("{g} lies on the wrong side")));
        }
        transversals.push(reps);
    }
    let mut sizes = BTreeMap::new();
    for n in base..=top {
        let level = chain.level(n).expect("level");
        crate::subset::check_partition(oracle, &a, &b, level)?;
        let in_a = a.count_in(oracle, level);
        sizes.insert(n, (in_a, level.len() - in_a));
    }
    Ok(StablePartition {
        a,
        b,
        transversals,
        sizes,
    })
}
