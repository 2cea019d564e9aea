//! Group oracles for the fixed catalog.
//!
//! Every catalog group is realized by closed-form arithmetic on canonical
//! forms. Infinite groups are never materialized; finite windows onto them are
//! produced by [`crate::cayley`] (word-length balls) or, for locally finite
//! groups, by the declared chain of finite subgroups.

mod catalog;
mod element;
pub(crate) mod parse;

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use catalog::{CATALOG, DEFAULT_CHAIN_DEPTH};
pub use element::Element;
pub(crate) use element::Repr;

/// Which side of the flexible/stable dichotomy the catalog entry is known to
/// fall on. Used only for consistency reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlexibilityClass {
    Flexible,
    Stable,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `Z^rank`.
    Lattice { rank: usize },
    /// Free group of the given rank.
    Free { rank: usize },
    /// `<r, s | s^2, srs = r^-1>`.
    InfiniteDihedral,
    /// `Z x C_order`.
    CyclicTimesFinite { order: u32 },
    /// `C_order`.
    Cyclic { order: u32 },
    /// Countable direct sum of `C_2`, chain `G_n = C_2^n`.
    DirectSumC2 { depth: usize },
    /// Finitary symmetric group on the naturals, chain `G_n = Sym(n)`.
    FinitarySymmetric { depth: usize },
    /// `Sym(degree)`.
    Symmetric { degree: usize },
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub element: Element,
}

/// Ascending chain of finite subgroups `G_base ⊂ G_{base+1} ⊂ …`, each level
/// listed explicitly in canonical order.
#[derive(Clone, Debug)]
pub struct Chain {
    base: usize,
    levels: Vec<Vec<Element>>,
}

impl Chain {
    /// Index of the bottom member.
    pub fn base(&self) -> usize {
        self.base
    }

    /// Index of the top materialized member.
    pub fn top(&self) -> usize {
        self.base + self.levels.len() - 1
    }

    /// Elements of `G_n`, for `base <= n <= top`.
    pub fn level(&self, n: usize) -> Option<&[Element]> {
        n.checked_sub(self.base)
            .and_then(|i| self.levels.get(i))
            .map(Vec::as_slice)
    }
}

/// A finitely generated group (or, for locally finite entries, a countable
/// group with a declared chain) given by closed-form operations.
#[derive(Clone, Debug)]
pub struct GroupOracle {
    name: String,
    kind: GroupKind,
    identity: Element,
    generators: Vec<Generator>,
    chain: Option<Chain>,
    flexibility: FlexibilityClass,
}

impl GroupOracle {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn identity(&self) -> &Element {
        &self.identity
    }

    /// Symmetric generating set (closed under inversion).
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_elements(&self) -> impl Iterator<Item = &Element> {
        self.generators.iter().map(|g| &g.element)
    }

    pub fn chain(&self) -> Option<&Chain> {
        self.chain.as_ref()
    }

    pub fn flexibility_class(&self) -> FlexibilityClass {
        self.flexibility
    }

    pub fn is_finite(&self) -> bool {
        matches!(
            self.kind,
            GroupKind::Cyclic { .. } | GroupKind::Symmetric { .. }
        )
    }

    /// Finite exact order of the group, when it is finite.
    pub fn order(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Cyclic { order } => Some(order as usize),
            GroupKind::Symmetric { degree } => Some((1..=degree).product()),
            _ => None,
        }
    }

    /// Whether the catalog entry is an infinite virtually cyclic group.
    pub fn is_virtually_cyclic(&self) -> bool {
        match self.kind {
            GroupKind::Lattice { rank } => rank == 1,
            GroupKind::InfiniteDihedral | GroupKind::CyclicTimesFinite { .. } => true,
            _ => false,
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        *g == self.identity
    }

    pub fn mul(&self, g: &Element, h: &Element) -> Element {
        use Repr::*;
        let repr = match (&g.0, &h.0) {
            (Lattice(a), Lattice(b)) => {
                Lattice(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Word(a), Word(b)) => {
                let mut out = a.clone();
                for &letter in b {
                    if out.last() == Some(&-letter) {
                        out.pop();
                    } else {
                        out.push(letter);
                    }
                }
                Word(out)
            }
            // s^e1 r^k1 s^e2 r^k2 = s^(e1+e2) r^((-1)^e2 k1 + k2)
            (
                Dihedral { shift: k1, flip: e1 },
                Dihedral { shift: k2, flip: e2 },
            ) => Dihedral {
                shift: if *e2 { -k1 + k2 } else { k1 + k2 },
                flip: e1 ^ e2,
            },
            (CyclicExt { shift: k1, rot: c1 }, CyclicExt { shift: k2, rot: c2 }) => {
                let m = self.cyclic_order();
                CyclicExt {
                    shift: k1 + k2,
                    rot: (c1 + c2) % m,
                }
            }
            (Residue(a), Residue(b)) => Residue((a + b) % self.cyclic_order()),
            (Support(a), Support(b)) => {
                let set: BTreeSet<u32> = a.iter().copied().collect();
                let other: BTreeSet<u32> = b.iter().copied().collect();
                Support(set.symmetric_difference(&other).copied().collect())
            }
            // first g, then h
            (Perm(a), Perm(b)) => {
                let n = a.len().max(b.len());
                let img = |p: &[u8], i: usize| p.get(i).map_or(i, |&x| x as usize);
                let out = (0..n).map(|i| img(b, img(a, i)) as u8).collect();
                Perm(trim_perm(out))
            }
            _ => panic!("elements {g} and {h} do not belong to the same group"),
        };
        Element(repr)
    }

    pub fn inv(&self, g: &Element) -> Element {
        use Repr::*;
        let repr = match &g.0 {
            Lattice(a) => Lattice(a.iter().map(|x| -x).collect()),
            Word(w) => Word(w.iter().rev().map(|l| -l).collect()),
            Dihedral { shift, flip } => {
                if *flip {
                    Dihedral { shift: *shift, flip: true }
                } else {
                    Dihedral { shift: -shift, flip: false }
                }
            }
            CyclicExt { shift, rot } => {
                let m = self.cyclic_order();
                CyclicExt {
                    shift: -shift,
                    rot: (m - rot) % m,
                }
            }
            Residue(k) => Residue((self.cyclic_order() - k) % self.cyclic_order()),
            Support(s) => Support(s.clone()),
            Perm(p) => {
                let mut out = vec![0u8; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    out[x as usize] = i as u8;
                }
                Perm(out)
            }
        };
        Element(repr)
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(g) } else { g.clone() };
        let mut acc = self.identity.clone();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// `g h g^-1`.
    pub fn conjugate(&self, g: &Element, h: &Element) -> Element {
        self.mul(&self.mul(g, h), &self.inv(g))
    }

    /// Smallest `k` in `1..=bound` with `g^k = e`, if any.
    pub fn order_up_to(&self, g: &Element, bound: usize) -> Option<usize> {
        let mut acc = g.clone();
        for k in 1..=bound {
            if self.is_identity(&acc) {
                return Some(k);
            }
            acc = self.mul(&acc, g);
        }
        None
    }

    /// Word length with respect to the catalog generating set, in closed form.
    pub fn word_length(&self, g: &Element) -> usize {
        use Repr::*;
        match &g.0 {
            Lattice(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            Word(w) => w.len(),
            Dihedral { shift, flip } => shift.unsigned_abs() as usize + usize::from(*flip),
            CyclicExt { shift, rot } => {
                let m = self.cyclic_order();
                shift.unsigned_abs() as usize + rot.min(&(m - rot)).to_owned() as usize
            }
            Residue(k) => {
                let m = self.cyclic_order();
                (*k).min(m - k) as usize
            }
            Support(s) => s.len(),
            Perm(p) => {
                let mut inversions = 0;
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        if p[i] > p[j] {
                            inversions += 1;
                        }
                    }
                }
                inversions
            }
        }
    }

    /// Least `n` with `g ∈ G_n` for the declared chain.
    pub fn chain_level(&self, g: &Element) -> Result<usize> {
        let chain = self
            .chain
            .as_ref()
            .ok_or_else(|| Error::NoChain(self.name.clone()))?;
        let level = match &g.0 {
            Repr::Support(s) => s.last().map_or(0, |&i| i as usize + 1),
            Repr::Perm(p) => p.len(),
            _ => unreachable!("chain oracles only hold supports and permutations"),
        };
        Ok(level.max(chain.base))
    }

    /// The scale of an element inside the windows used by the stability and
    /// electoral modules: chain level for locally finite groups, word length
    /// otherwise.
    pub fn scale_of(&self, g: &Element) -> usize {
        match self.chain {
            Some(_) => self.chain_level(g).expect("chain present"),
            None => self.word_length(g),
        }
    }

    /// Product of a random word of `len` generators.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> Element {
        let mut acc = self.identity.clone();
        for _ in 0..len {
            let gen = &self.generators[rng.gen_range(0..self.generators.len())];
            acc = self.mul(&acc, &gen.element);
        }
        acc
    }

    /// Element of `Z^n` from integer coordinates.
    pub fn vector(&self, coords: &[i64]) -> Result<Element> {
        match self.kind {
            GroupKind::Lattice { rank } if rank == coords.len() => {
                Ok(Element(Repr::Lattice(coords.to_vec())))
            }
            GroupKind::Lattice { rank } => Err(Error::Arity {
                expected: rank,
                found: coords.len(),
            }),
            _ => Err(Error::Syntax {
                expr: format!("{coords:?}"),
                reason: format!("{} is not a lattice group", self.name),
            }),
        }
    }

    fn cyclic_order(&self) -> u32 {
        match self.kind {
            GroupKind::CyclicTimesFinite { order } | GroupKind::Cyclic { order } => order,
            _ => unreachable!("no cyclic factor"),
        }
    }
}

pub(crate) fn trim_perm(mut p: Vec<u8>) -> Vec<u8> {
    while let Some(&last) = p.last() {
        if last as usize == p.len() - 1 {
            p.pop();
        } else {
            break;
        }
    }
    p
}
