//! Subsets of infinite groups given by total membership predicates.
//!
//! A [`SubsetSpec`] never enumerates its members; it answers membership for
//! any element. Literals:
//!
//! | literal | set |
//! |---|---|
//! | `nat` | `{k >= 0}` in `Z` |
//! | `even`, `odd` | coordinate-sum parity on lattices, word-length parity elsewhere |
//! | `halfplane:m>=0`, `halfplane:n<2` | coordinate half-space (`m, n, k` name the first three coordinates) |
//! | `halfspace:1,-2>=3` | `{v : <w, v> >= c}` |
//! | `parity:1,1:2:0` | `{v : <w, v> mod q ∈ R}` |
//! | `wordlen:3:0,1` | `{g : |g| mod q ∈ R}` |
//! | `finite:[a, b^2]`, `cofinite:[e]` | finite and cofinite sets |
//! | `end:+`, `end:-` | the ends of a virtually cyclic group |
//! | `annulus:2:0`, `annulus:3:1,2:nobase` | unions of chain annuli by index mod period |
//! | `prop10`, `prop10:B` | the stable partition of a locally finite group |
//! | `hash:<seed>` | a seeded pseudo-random half |
//! | `complement:<literal>` | complement |

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::ends::{end_descriptor, EndDescriptor, Side};
use crate::error::{Error, Result};
use crate::group::parse::split_list;
use crate::group::{Element, GroupKind, GroupOracle};

/// Membership predicate for [`SubsetKind::Custom`].
pub type Predicate = Arc<dyn Fn(&GroupOracle, &Element) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct SubsetSpec {
    name: String,
    kind: SubsetKind,
}

#[derive(Clone)]
pub enum SubsetKind {
    FiniteList(BTreeSet<Element>),
    CofiniteComplementOf(BTreeSet<Element>),
    Ray(EndDescriptor),
    /// Chain groups: `G_base` (if `bottom`) together with the annuli
    /// `G_{n+1} \ G_n` whose index `n - base` has residue in `residues`.
    AnnulusParity {
        bottom: bool,
        period: usize,
        residues: Vec<usize>,
    },
    WordLengthCondition {
        modulus: usize,
        residues: Vec<usize>,
    },
    ParityClass {
        weights: Vec<i64>,
        modulus: i64,
        residues: Vec<i64>,
    },
    HalfSpace {
        normal: Vec<i64>,
        offset: i64,
    },
    Hashed {
        seed: u64,
    },
    Complement(Box<SubsetSpec>),
    Custom(Predicate),
}

/// Size class of a subset when it is known without enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SymbolicExtent {
    Finite,
    Cofinite,
}

impl SubsetSpec {
    pub fn new(name: impl Into<String>, kind: SubsetKind) -> Self {
        SubsetSpec {
            name: name.into(),
            kind,
        }
    }

    pub fn finite(elements: impl IntoIterator<Item = Element>) -> Self {
        let set: BTreeSet<Element> = elements.into_iter().collect();
        let name = format!("finite:[{}]", join(&set));
        SubsetSpec::new(name, SubsetKind::FiniteList(set))
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = Element>) -> Self {
        let set: BTreeSet<Element> = excluded.into_iter().collect();
        let name = format!("cofinite:[{}]", join(&set));
        SubsetSpec::new(name, SubsetKind::CofiniteComplementOf(set))
    }

    pub fn ray(end: EndDescriptor) -> Self {
        let sign = match end.side {
            Side::Positive => '+',
            Side::Negative => '-',
        };
        let name = if end.n0 == 1 {
            format!("end:{sign}")
        } else {
            format!("end:{sign}{}", end.n0)
        };
        SubsetSpec::new(name, SubsetKind::Ray(end))
    }

    pub fn hashed(seed: u64) -> Self {
        SubsetSpec::new(format!("hash:{seed}"), SubsetKind::Hashed { seed })
    }

    pub fn annulus(bottom: bool, period: usize, residues: Vec<usize>) -> Self {
        let list = residues.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        let name = if bottom {
            format!("annulus:{period}:{list}")
        } else {
            format!("annulus:{period}:{list}:nobase")
        };
        SubsetSpec::new(
            name,
            SubsetKind::AnnulusParity {
                bottom,
                period,
                residues,
            },
        )
    }

    pub fn custom(
        name: impl Into<String>,
        f: impl Fn(&GroupOracle, &Element) -> bool + Send + Sync + 'static,
    ) -> Self {
        SubsetSpec::new(name, SubsetKind::Custom(Arc::new(f)))
    }

    pub fn complement(&self) -> Self {
        if let SubsetKind::Complement(inner) = &self.kind {
            return (**inner).clone();
        }
        SubsetSpec::new(
            format!("complement:{}", self.name),
            SubsetKind::Complement(Box::new(self.clone())),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &SubsetKind {
        &self.kind
    }

    pub fn contains(&self, oracle: &GroupOracle, g: &Element) -> bool {
        match &self.kind {
            SubsetKind::FiniteList(set) => set.contains(g),
            SubsetKind::CofiniteComplementOf(set) => !set.contains(g),
            SubsetKind::Ray(end) => end.contains(g),
            SubsetKind::AnnulusParity {
                bottom,
                period,
                residues,
            } => {
                let chain = oracle.chain().expect("annulus subsets need a chain");
                let level = oracle.chain_level(g).expect("chain group");
                if level == chain.base() {
                    *bottom
                } else {
                    residues.contains(&((level - chain.base() - 1) % period))
                }
            }
            SubsetKind::WordLengthCondition { modulus, residues } => {
                residues.contains(&(oracle.word_length(g) % modulus))
            }
            SubsetKind::ParityClass {
                weights,
                modulus,
                residues,
            } => {
                let v = g.coordinates().expect("lattice element");
                let dot: i64 = weights.iter().zip(v).map(|(w, x)| w * x).sum();
                residues.contains(&dot.rem_euclid(*modulus))
            }
            SubsetKind::HalfSpace { normal, offset } => {
                let v = g.coordinates().expect("lattice element");
                normal.iter().zip(v).map(|(w, x)| w * x).sum::<i64>() >= *offset
            }
            SubsetKind::Hashed { seed } => seeded_bit(*seed, g),
            SubsetKind::Complement(inner) => !inner.contains(oracle, g),
            SubsetKind::Custom(f) => f(oracle, g),
        }
    }

    /// Number of members among `elements`.
    pub fn count_in(&self, oracle: &GroupOracle, elements: &[Element]) -> usize {
        elements.iter().filter(|g| self.contains(oracle, g)).count()
    }

    /// Finite or cofinite when this is evident from the representation.
    pub fn symbolic_extent(&self) -> Option<SymbolicExtent> {
        match &self.kind {
            SubsetKind::FiniteList(_) => Some(SymbolicExtent::Finite),
            SubsetKind::CofiniteComplementOf(_) => Some(SymbolicExtent::Cofinite),
            SubsetKind::Complement(inner) => inner.symbolic_extent().map(|e| match e {
                SymbolicExtent::Finite => SymbolicExtent::Cofinite,
                SymbolicExtent::Cofinite => SymbolicExtent::Finite,
            }),
            _ => None,
        }
    }

    /// Parses a subset literal (see the module docs) for `oracle`.
    pub fn parse(literal: &str, oracle: &GroupOracle) -> Result<Self> {
        let lit = literal.trim();
        let bad = |reason: &str| Error::SubsetLiteral {
            literal: lit.to_string(),
            reason: reason.to_string(),
        };
        let (head, rest) = match lit.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (lit, None),
        };
        let spec = match (head, rest) {
            ("nat", None) => {
                lattice_rank(oracle).filter(|&r| r == 1).ok_or_else(|| bad("`nat` needs Z"))?;
                SubsetKind::HalfSpace {
                    normal: vec![1],
                    offset: 0,
                }
            }
            ("even" | "odd", None) => {
                let residue = usize::from(head == "odd");
                match lattice_rank(oracle) {
                    Some(rank) => SubsetKind::ParityClass {
                        weights: vec![1; rank],
                        modulus: 2,
                        residues: vec![residue as i64],
                    },
                    None => SubsetKind::WordLengthCondition {
                        modulus: 2,
                        residues: vec![residue],
                    },
                }
            }
            ("halfplane", Some(cond)) => {
                let rank = lattice_rank(oracle).ok_or_else(|| bad("half-planes need a lattice"))?;
                let (var, op, value) = split_comparison(cond).ok_or_else(|| bad("expected <var><op><int>"))?;
                let axis = match var {
                    "m" => 0,
                    "n" => 1,
                    "k" => 2,
                    _ => var
                        .strip_prefix('x')
                        .and_then(|i| i.parse::<usize>().ok())
                        .filter(|&i| i >= 1)
                        .map(|i| i - 1)
                        .ok_or_else(|| bad("unknown coordinate"))?,
                };
                if axis >= rank {
                    return Err(bad("coordinate beyond the lattice rank"));
                }
                let mut normal = vec![0; rank];
                normal[axis] = 1;
                half_space(normal, op, value)
            }
            ("halfspace", Some(cond)) => {
                let rank = lattice_rank(oracle).ok_or_else(|| bad("half-spaces need a lattice"))?;
                let (weights, op, value) = split_comparison(cond).ok_or_else(|| bad("expected <w1,..,wn><op><int>"))?;
                let normal = parse_ints(weights).ok_or_else(|| bad("weights must be integers"))?;
                if normal.len() != rank {
                    return Err(Error::Arity {
                        expected: rank,
                        found: normal.len(),
                    });
                }
                half_space(normal, op, value)
            }
            ("parity", Some(body)) => {
                let rank = lattice_rank(oracle).ok_or_else(|| bad("parity classes need a lattice"))?;
                let parts: Vec<&str> = body.split(':').collect();
                let [w, q, r] = parts[..] else {
                    return Err(bad("expected parity:<weights>:<modulus>:<residues>"));
                };
                let weights = parse_ints(w).ok_or_else(|| bad("weights must be integers"))?;
                if weights.len() != rank {
                    return Err(Error::Arity {
                        expected: rank,
                        found: weights.len(),
                    });
                }
                let modulus: i64 = q.parse().ok().filter(|&q| q >= 1).ok_or_else(|| bad("modulus must be positive"))?;
                let residues = parse_ints(r).ok_or_else(|| bad("residues must be integers"))?;
                SubsetKind::ParityClass {
                    weights,
                    modulus,
                    residues: residues.iter().map(|x| x.rem_euclid(modulus)).collect(),
                }
            }
            ("wordlen", Some(body)) => {
                let (q, r) = body.split_once(':').ok_or_else(|| bad("expected wordlen:<modulus>:<residues>"))?;
                let modulus: usize = q.parse().ok().filter(|&q| q >= 1).ok_or_else(|| bad("modulus must be positive"))?;
                let residues = parse_ints(r).ok_or_else(|| bad("residues must be integers"))?;
                SubsetKind::WordLengthCondition {
                    modulus,
                    residues: residues.iter().map(|x| x.rem_euclid(modulus as i64) as usize).collect(),
                }
            }
            ("finite" | "cofinite", Some(list)) => {
                let inner = list
                    .trim()
                    .strip_prefix('[')
                    .and_then(|l| l.strip_suffix(']'))
                    .ok_or_else(|| bad("expected a bracketed list"))?;
                let mut set = BTreeSet::new();
                if !inner.trim().is_empty() {
                    for item in split_list(inner).map_err(|r| bad(&r))? {
                        set.insert(oracle.parse_element(item)?);
                    }
                }
                if head == "finite" {
                    SubsetKind::FiniteList(set)
                } else {
                    SubsetKind::CofiniteComplementOf(set)
                }
            }
            ("end", Some(side)) => {
                let (sign, n0) = side.split_at(side.len().min(1));
                let side = match sign {
                    "+" => Side::Positive,
                    "-" => Side::Negative,
                    _ => return Err(bad("expected end:+ or end:-")),
                };
                let mut end = end_descriptor(oracle, side)?;
                if !n0.is_empty() {
                    end.n0 = n0.parse().map_err(|_| bad("bad end threshold"))?;
                }
                SubsetKind::Ray(end)
            }
            ("annulus", Some(body)) => {
                oracle.chain().ok_or_else(|| Error::NoChain(oracle.name().to_string()))?;
                let parts: Vec<&str> = body.split(':').collect();
                let (p, r, bottom) = match parts[..] {
                    [p, r] => (p, r, true),
                    [p, r, "nobase"] => (p, r, false),
                    _ => return Err(bad("expected annulus:<period>:<residues>[:nobase]")),
                };
                let period: usize = p.parse().ok().filter(|&p| p >= 1).ok_or_else(|| bad("period must be positive"))?;
                let residues = parse_ints(r).ok_or_else(|| bad("residues must be integers"))?;
                SubsetKind::AnnulusParity {
                    bottom,
                    period,
                    residues: residues.iter().map(|x| x.rem_euclid(period as i64) as usize).collect(),
                }
            }
            ("prop10", part) => {
                oracle.chain().ok_or_else(|| Error::NoChain(oracle.name().to_string()))?;
                let a = matches!(part, None | Some("A"));
                if !a && part != Some("B") {
                    return Err(bad("expected prop10, prop10:A or prop10:B"));
                }
                SubsetKind::AnnulusParity {
                    bottom: a,
                    period: 2,
                    residues: vec![usize::from(!a)],
                }
            }
            ("hash", Some(seed)) => SubsetKind::Hashed {
                seed: seed.parse().map_err(|_| bad("seed must be an unsigned integer"))?,
            },
            ("complement", Some(inner)) => {
                return Ok(SubsetSpec::parse(inner, oracle)?.complement());
            }
            _ => return Err(bad("unrecognized literal")),
        };
        Ok(SubsetSpec::new(lit, spec))
    }
}

impl fmt::Debug for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetSpec({})", self.name)
    }
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl Serialize for SubsetSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

/// Checks that `a` and `b` partition `elements`.
pub fn check_partition(oracle: &GroupOracle, a: &SubsetSpec, b: &SubsetSpec, elements: &[Element]) -> Result<()> {
    for g in elements {
        match (a.contains(oracle, g), b.contains(oracle, g)) {
            (true, true) => return Err(Error::NotDisjoint(g.to_string())),
            (false, false) => return Err(Error::NotCovering(g.to_string())),
            _ => {}
        }
    }
    Ok(())
}

/// A pseudo-random bit per element: FNV-1a over the canonical form, mixed with
/// the seed through the splitmix64 finalizer.
fn seeded_bit(seed: u64, g: &Element) -> bool {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in g.to_string().bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut z = h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    z & 1 == 1
}

fn lattice_rank(oracle: &GroupOracle) -> Option<usize> {
    match oracle.kind() {
        GroupKind::Lattice { rank } => Some(*rank),
        _ => None,
    }
}

fn split_comparison(s: &str) -> Option<(&str, &str, i64)> {
    for op in [">=", "<=", ">", "<"] {
        if let Some((lhs, rhs)) = s.split_once(op) {
            return Some((lhs.trim(), op, rhs.trim().parse().ok()?));
        }
    }
    None
}

fn half_space(normal: Vec<i64>, op: &str, value: i64) -> SubsetKind {
    let (normal, offset) = match op {
        ">=" => (normal, value),
        ">" => (normal, value + 1),
        "<=" => (normal.iter().map(|w| -w).collect(), -value),
        _ => (normal.iter().map(|w| -w).collect(), -value + 1),
    };
    SubsetKind::HalfSpace { normal, offset }
}

fn parse_ints(s: &str) -> Option<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

fn join(set: &BTreeSet<Element>) -> String {
    set.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
}
