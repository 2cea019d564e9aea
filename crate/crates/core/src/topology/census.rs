//! The four named shift-continuous locally compact topologies on `ℤ⁰`.

use serde::Serialize;

use super::{
    almost_stability_bridge, check_semigroup_continuity, check_shift_continuity, classify_dichotomy, is_hausdorff,
    is_locally_compact, BaseElement, BaseFamily, DichotomyClass, DichotomyReport, Verdict, VerdictKind,
    ZeroTopologySpec,
};
use crate::ends::Side;
use crate::error::Result;
use crate::group::GroupOracle;

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub label: String,
    pub hausdorff: Verdict,
    pub shift_continuous: Verdict,
    pub locally_compact: Verdict,
    pub semigroup: Verdict,
    pub dichotomy: DichotomyReport,
    pub bridge: Verdict,
}

/// `base` is a neighborhood of `0` in `first` that contains no base element
/// of `second`, so the two topologies differ.
#[derive(Clone, Debug, Serialize)]
pub struct Distinctness {
    pub first: String,
    pub second: String,
    pub base: BaseElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub radius: usize,
    pub entries: Vec<CensusEntry>,
    pub distinct: Vec<Distinctness>,
    pub pairwise_distinct: bool,
    pub semigroup_count: usize,
    pub classes: Vec<DichotomyClass>,
    /// The census lists the named families only; it does not rule out others.
    pub exhaustiveness: String,
}

/// The scale-independent part of a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub labels: Vec<String>,
    pub classes: Vec<DichotomyClass>,
    pub semigroup: Vec<VerdictKind>,
    pub semigroup_count: usize,
    pub pairwise_distinct: bool,
}

impl Census {
    pub fn summary(&self) -> CensusSummary {
        CensusSummary {
            labels: self.entries.iter().map(|e| e.label.clone()).collect(),
            classes: self.classes.clone(),
            semigroup: self.entries.iter().map(|e| e.semigroup.kind()).collect(),
            semigroup_count: self.semigroup_count,
            pairwise_distinct: self.pairwise_distinct,
        }
    }
}

/// The canonical base element of a named family on ℤ.
fn canonical(spec: &ZeroTopologySpec) -> BaseElement {
    let o = &spec.group;
    match &spec.family {
        BaseFamily::Discrete => BaseElement::Zero,
        BaseFamily::Cofinite => BaseElement::Cofinite { excluded: vec![] },
        BaseFamily::EndBase(_) => BaseElement::EndTranslate {
            left: o.identity().clone(),
            right: o.identity().clone(),
        },
        BaseFamily::Explicit(_) => unreachable!("census uses named families"),
    }
}

/// Whether the canonical base element of `a` contains a base element of `b`,
/// for named families on an infinite group without orientation flips.
fn contains_base_of(a: &ZeroTopologySpec, b: &ZeroTopologySpec) -> bool {
    match (&a.family, &b.family) {
        (_, BaseFamily::Discrete) => true,
        // {0} holds no infinite set
        (BaseFamily::Discrete, _) => false,
        // a cofinite set contains every far enough tail
        (BaseFamily::Cofinite, _) => true,
        // a tail misses infinitely many points
        (BaseFamily::EndBase(_), BaseFamily::Cofinite) => false,
        (BaseFamily::EndBase(x), BaseFamily::EndBase(y)) => x.side == y.side,
        _ => unreachable!("census uses named families"),
    }
}

fn census_entry(spec: &ZeroTopologySpec, r: usize) -> Result<CensusEntry> {
    Ok(CensusEntry {
        label: spec.label(),
        hausdorff: is_hausdorff(spec, r)?,
        shift_continuous: check_shift_continuity(spec, r)?,
        locally_compact: is_locally_compact(spec, r)?,
        semigroup: check_semigroup_continuity(spec, r)?,
        dichotomy: classify_dichotomy(spec, r)?,
        bridge: almost_stability_bridge(spec, r)?,
    })
}

/// Discrete, cofinite and both end bases on `ℤ⁰`, checked at radius `r`.
pub fn enumerate_z_topologies(r: usize) -> Result<Census> {
    let z = GroupOracle::from_spec("Z")?;
    let specs = [
        ZeroTopologySpec::discrete(&z),
        ZeroTopologySpec::cofinite(&z),
        ZeroTopologySpec::end_base(&z, Side::Positive)?,
        ZeroTopologySpec::end_base(&z, Side::Negative)?,
    ];
    let entries = std::thread::scope(|scope| {
        let handles: Vec<_> = specs.iter().map(|spec| scope.spawn(move || census_entry(spec, r))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut distinct = Vec::new();
    let mut pairwise_distinct = true;
    for i in 0..specs.len() {
        for j in i + 1..specs.len() {
            let (a, b) = (&specs[i], &specs[j]);
            let found = if !contains_base_of(a, b) {
                Some((a, b))
            } else if !contains_base_of(b, a) {
                Some((b, a))
            } else {
                None
            };
            match found {
                Some((x, y)) => distinct.push(Distinctness {
                    first: x.label(),
                    second: y.label(),
                    base: canonical(x),
                }),
                None => pairwise_distinct = false,
            }
        }
    }
    Ok(Census {
        radius: r,
        semigroup_count: entries.iter().filter(|e| e.semigroup.is_proven()).count(),
        classes: entries.iter().map(|e| e.dichotomy.class).collect(),
        entries,
        distinct,
        pairwise_distinct,
        exhaustiveness: "scale-limited: named families only, no claim that the list is complete".into(),
    })
}
