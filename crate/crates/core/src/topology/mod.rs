//! Shift-continuous topologies on `G⁰ = G ∪ {0}` with isolated group points.
//!
//! Such a topology is fixed by a neighborhood base at `0`. Named families are
//! reasoned about symbolically; explicit families are checked on windows.
//! Every check returns a [`Verdict`] carrying the radius it ran at.

mod census;
mod checks;
mod endset;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Serialize, Serializer};

use crate::cayley::DEFAULT_MEMORY_CAP;
use crate::ends::{end_descriptor, EndDescriptor, Side};
use crate::error::{Error, Result};
use crate::group::{Element, GroupOracle};
use crate::subset::SubsetSpec;

pub use census::{enumerate_z_topologies, Census, CensusEntry, CensusSummary, Distinctness};
pub use checks::{
    almost_stability_bridge, check_filter_base, check_semigroup_continuity, check_shift_continuity,
    classify_dichotomy, example15_bundle, is_compact, is_hausdorff, is_locally_compact, zero_ideal_check,
    zero_is_isolated, Consistency, DichotomyClass, DichotomyReport, Example15Bundle,
};
pub use endset::EndSet;

/// Most generating sets an explicit base may list.
pub const MAX_EXPLICIT: usize = 64;

#[derive(Clone, Debug)]
pub enum BaseFamily {
    /// `{0}` is open.
    Discrete,
    /// `(G \ F) ∪ {0}` for finite `F`.
    Cofinite,
    /// `g₁·K·g₂ ∪ {0}` for all `g₁, g₂`.
    EndBase(EndDescriptor),
    /// `U_i ∪ {0}` for the listed sets.
    Explicit(Vec<SubsetSpec>),
}

#[derive(Clone, Debug)]
pub struct ZeroTopologySpec {
    pub group: GroupOracle,
    pub family: BaseFamily,
    pub cap: usize,
}

impl ZeroTopologySpec {
    pub fn discrete(group: &GroupOracle) -> Self {
        Self::with_family(group, BaseFamily::Discrete)
    }

    pub fn cofinite(group: &GroupOracle) -> Self {
        Self::with_family(group, BaseFamily::Cofinite)
    }

    pub fn end_base(group: &GroupOracle, side: Side) -> Result<Self> {
        Ok(Self::with_family(group, BaseFamily::EndBase(end_descriptor(group, side)?)))
    }

    pub fn explicit(group: &GroupOracle, sets: Vec<SubsetSpec>) -> Result<Self> {
        if sets.len() > MAX_EXPLICIT {
            return Err(Error::ExplicitTooLarge(sets.len()));
        }
        if sets.is_empty() {
            return Err(Error::TopologyLiteral("explicit base with no sets".into()));
        }
        Ok(Self::with_family(group, BaseFamily::Explicit(sets)))
    }

    fn with_family(group: &GroupOracle, family: BaseFamily) -> Self {
        ZeroTopologySpec {
            group: group.clone(),
            family,
            cap: DEFAULT_MEMORY_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Parses `discrete`, `cofinite`, `end:+`, `end:-` or `explicit:<file>`,
    /// where the file lists one subset literal per line (`#` starts a
    /// comment).
    pub fn parse(literal: &str, group: &GroupOracle) -> Result<Self> {
        match literal.trim() {
            "discrete" => Ok(Self::discrete(group)),
            "cofinite" => Ok(Self::cofinite(group)),
            "end:+" => Self::end_base(group, Side::Positive),
            "end:-" => Self::end_base(group, Side::Negative),
            other => {
                let path = other
                    .strip_prefix("explicit:")
                    .ok_or_else(|| Error::TopologyLiteral(other.to_string()))?;
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| Error::TopologyLiteral(format!("{other}: {e}")))?;
                Self::explicit(group, parse_explicit_lines(&text, group)?)
            }
        }
    }

    pub fn label(&self) -> String {
        match &self.family {
            BaseFamily::Discrete => "discrete".into(),
            BaseFamily::Cofinite => "cofinite".into(),
            BaseFamily::EndBase(end) => match end.side {
                Side::Positive => "end:+".into(),
                Side::Negative => "end:-".into(),
            },
            BaseFamily::Explicit(sets) => format!(
                "explicit[{}]",
                sets.iter().map(|s| s.name()).collect::<Vec<_>>().join("; ")
            ),
        }
    }
}

/// The end base `{g₁·K·g₂}` of a virtually cyclic group.
pub fn example15_base(group: &GroupOracle, side: Side) -> Result<ZeroTopologySpec> {
    ZeroTopologySpec::end_base(group, side)
}

/// One subset literal per nonblank line; `#` starts a comment.
pub fn parse_explicit_lines(text: &str, group: &GroupOracle) -> Result<Vec<SubsetSpec>> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(|line| SubsetSpec::parse(line, group))
        .collect()
}

/// A base element, named so that it can be rebuilt and checked independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BaseElement {
    /// `{0}`.
    Zero,
    /// `(G \ excluded) ∪ {0}`.
    Cofinite { excluded: Vec<Element> },
    /// `left·K·right ∪ {0}`.
    EndTranslate { left: Element, right: Element },
    /// `U_index ∪ {0}` of an explicit base.
    Explicit { index: usize, name: String },
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseElement::Zero => f.write_str("{0}"),
            BaseElement::Cofinite { excluded } => {
                let list: Vec<String> = excluded.iter().map(|g| g.to_string()).collect();
                write!(f, "G \\ {{{}}} ∪ {{0}}", list.join(", "))
            }
            BaseElement::EndTranslate { left, right } => write!(f, "{left}·K·{right} ∪ {{0}}"),
            BaseElement::Explicit { index, name } => write!(f, "U{index} = {name} ∪ {{0}}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum Witness {
    /// A single base element does the job (`U₀`, `{0}`, a refinement).
    BaseElement(BaseElement),
    /// Every point of the window is excluded by some base element.
    Exclusions {
        checked: usize,
        examples: Vec<(Element, BaseElement)>,
    },
    /// `g·(g₁Kg₂)·h = (g·g₁)·K·(g₂·h)`: translates of base elements are base
    /// elements.
    TranslationClosure { checked: usize },
    /// Per generator and base element, sets `V` with `g·V ⊆ U` and `V'·g ⊆ U`.
    TranslateRefinements {
        checked: usize,
        examples: Vec<(Element, BaseElement, BaseElement, BaseElement)>,
    },
    /// Triples `(U, V, W)` with `(V \ {0})·(W \ {0}) ⊆ U`.
    ProductRefinements {
        refinements: Vec<(BaseElement, BaseElement, BaseElement)>,
        checked_products: usize,
    },
    /// Every base element is cofinite.
    AllCofinite { checked: usize },
    /// Any two base elements contain a common base element.
    CommonRefinement { checked: usize },
    /// `0` absorbs every point of the window.
    Absorbing { checked: usize },
    /// Profiles of `U₀ \ {0}` are bounded for every generator.
    BoundedProfiles { base: BaseElement, bounds: Vec<(Element, usize)> },
}

#[derive(Clone, Debug, Serialize)]
pub enum Counterexample {
    /// No base element excludes this point.
    UnseparatedPoint(Element),
    /// The complement of this base element keeps growing.
    UnboundedComplement {
        base: BaseElement,
        counts: BTreeMap<usize, usize>,
    },
    /// This base element keeps gaining points, so it is not `{0}`.
    InfiniteBaseElement {
        base: BaseElement,
        counts: BTreeMap<usize, usize>,
    },
    /// `u0 \ v` keeps growing; every candidate `U₀` has such a partner.
    InfiniteDifference {
        u0: BaseElement,
        v: BaseElement,
        counts: BTreeMap<usize, usize>,
    },
    /// No base element `V` has `g·V ⊆ U` (or `V·g ⊆ U`).
    NoTranslateRefinement {
        generator: Element,
        side: TranslationSide,
        target: BaseElement,
    },
    /// `v·w ∉ U` although `v` and `w` avoid any finite set inside the window.
    ProductEscape {
        target: BaseElement,
        v: Element,
        w: Element,
        product: Element,
    },
    /// No pair of base elements multiplies into the target at scale.
    NoProductRefinement { target: BaseElement },
    /// Two base elements whose intersection contains no base element.
    NoCommonRefinement {
        u: BaseElement,
        v: BaseElement,
        intersection_counts: BTreeMap<usize, usize>,
    },
    /// `0·g`, `g·0` or `0·0` is not `0`.
    NotAbsorbing(Element),
    /// A profile of `U₀ \ {0}` keeps growing.
    GrowingProfile { base: BaseElement, generator: Element },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TranslationSide {
    Left,
    Right,
}

#[derive(Clone, Debug, Serialize)]
pub enum Status {
    Proven(Witness),
    RefutedAtScale(Counterexample),
    UnknownAtScale { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub scale: usize,
}

impl Verdict {
    pub fn proven(witness: Witness, scale: usize) -> Self {
        Verdict {
            status: Status::Proven(witness),
            scale,
        }
    }

    pub fn refuted(counterexample: Counterexample, scale: usize) -> Self {
        Verdict {
            status: Status::RefutedAtScale(counterexample),
            scale,
        }
    }

    pub fn unknown(reason: impl Into<String>, scale: usize) -> Self {
        Verdict {
            status: Status::UnknownAtScale { reason: reason.into() },
            scale,
        }
    }

    pub fn is_proven(&self) -> bool {
        matches!(self.status, Status::Proven(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.status, Status::RefutedAtScale(_))
    }

    pub fn kind(&self) -> VerdictKind {
        match self.status {
            Status::Proven(_) => VerdictKind::Proven,
            Status::RefutedAtScale(_) => VerdictKind::RefutedAtScale,
            Status::UnknownAtScale { .. } => VerdictKind::UnknownAtScale,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    Proven,
    RefutedAtScale,
    UnknownAtScale,
}

/// A point of `G⁰`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ZeroExt {
    Zero,
    Point(Element),
}

impl ZeroExt {
    pub fn mul(&self, oracle: &GroupOracle, other: &ZeroExt) -> ZeroExt {
        match (self, other) {
            (ZeroExt::Point(g), ZeroExt::Point(h)) => ZeroExt::Point(oracle.mul(g, h)),
            _ => ZeroExt::Zero,
        }
    }
}

impl Serialize for ZeroTopologySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{} on {}⁰", self.label(), self.group.name()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_families() {
        let z = GroupOracle::from_spec("Z").unwrap();
        for lit in ["discrete", "cofinite", "end:+", "end:-"] {
            assert_eq!(ZeroTopologySpec::parse(lit, &z).unwrap().label(), lit);
        }
        assert!(ZeroTopologySpec::parse("end:+", &GroupOracle::from_spec("F2").unwrap()).is_err());
        assert!(matches!(
            ZeroTopologySpec::parse("bogus", &z),
            Err(Error::TopologyLiteral(_))
        ));
        assert!(ZeroTopologySpec::parse("explicit:/nonexistent/base.txt", &z).is_err());
    }

    #[test]
    fn explicit_files() {
        let z = GroupOracle::from_spec("Z").unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("base.txt");
        std::fs::write(&path, "# evens only\neven\n\nfinite:[0, 2]  # a finite set\n").unwrap();
        let spec = ZeroTopologySpec::parse(&format!("explicit:{}", path.display()), &z).unwrap();
        match &spec.family {
            BaseFamily::Explicit(sets) => assert_eq!(sets.len(), 2),
            other => panic!("{other:?}"),
        }
        let many = vec![SubsetSpec::hashed(1); MAX_EXPLICIT + 1];
        assert!(matches!(
            ZeroTopologySpec::explicit(&z, many),
            Err(Error::ExplicitTooLarge(65))
        ));
    }

    #[test]
    fn zero_is_absorbing() {
        let z = GroupOracle::from_spec("Z").unwrap();
        let one = ZeroExt::Point(z.vector(&[1]).unwrap());
        assert_eq!(one.mul(&z, &ZeroExt::Zero), ZeroExt::Zero);
        assert_eq!(one.mul(&z, &one), ZeroExt::Point(z.vector(&[2]).unwrap()));
    }
}
