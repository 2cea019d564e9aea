use super::{trim_perm, Chain, Element, FlexibilityClass, Generator, GroupKind, GroupOracle, Repr};
use crate::error::{Error, Result};

/// Default number of chain levels for locally finite entries.
pub const DEFAULT_CHAIN_DEPTH: usize = 8;

/// Spec strings accepted by [`GroupOracle::from_spec`] that name the standard
/// catalog.
pub const CATALOG: &[&str] = &[
    "Z", "Z^2", "Z^3", "F2", "Dinf", "ZxC2", "ZxC6", "DirSumC2", "FinSym", "C12", "Sym5",
];

impl GroupOracle {
    /// Builds a catalog oracle from its spec string (`Z`, `Z^3`, `F2`, `Dinf`,
    /// `ZxC6`, `DirSumC2`, `FinSym`, `C12`, `Sym5`, …).
    pub fn from_spec(spec: &str) -> Result<Self> {
        Self::from_spec_with_depth(spec, DEFAULT_CHAIN_DEPTH)
    }

    /// As [`GroupOracle::from_spec`], with an explicit chain depth for the
    /// locally finite entries.
    pub fn from_spec_with_depth(spec: &str, depth: usize) -> Result<Self> {
        let s = spec.trim();
        let unknown = || Error::UnknownGroup(spec.to_string());
        let kind = if s == "Z" {
            GroupKind::Lattice { rank: 1 }
        } else if let Some(n) = s.strip_prefix("Z^") {
            let rank: usize = n.parse().map_err(|_| unknown())?;
            if rank == 0 {
                return Err(unknown());
            }
            GroupKind::Lattice { rank }
        } else if s == "Dinf" {
            GroupKind::InfiniteDihedral
        } else if let Some(m) = s.strip_prefix("ZxC") {
            let order: u32 = m.parse().map_err(|_| unknown())?;
            if order < 2 {
                return Err(unknown());
            }
            GroupKind::CyclicTimesFinite { order }
        } else if s == "DirSumC2" {
            GroupKind::DirectSumC2 { depth }
        } else if s == "FinSym" {
            GroupKind::FinitarySymmetric { depth }
        } else if let Some(n) = s.strip_prefix("Sym") {
            let degree: usize = n.parse().map_err(|_| unknown())?;
            if !(1..=10).contains(&degree) {
                return Err(unknown());
            }
            GroupKind::Symmetric { degree }
        } else if let Some(k) = s.strip_prefix('F') {
            let rank: usize = k.parse().map_err(|_| unknown())?;
            if !(1..=26).contains(&rank) {
                return Err(unknown());
            }
            GroupKind::Free { rank }
        } else if let Some(m) = s.strip_prefix('C') {
            let order: u32 = m.parse().map_err(|_| unknown())?;
            if order < 1 {
                return Err(unknown());
            }
            GroupKind::Cyclic { order }
        } else {
            return Err(unknown());
        };
        if matches!(
            kind,
            GroupKind::DirectSumC2 { .. } | GroupKind::FinitarySymmetric { .. }
        ) && depth < 2
        {
            return Err(Error::ChainTooShallow {
                group: s.to_string(),
                depth,
                required: 2,
            });
        }
        Ok(Self::build(s.to_string(), kind))
    }

    fn build(name: String, kind: GroupKind) -> Self {
        let mut generators = Vec::new();
        let mut push = |label: &str, repr: Repr| {
            generators.push(Generator {
                label: label.to_string(),
                element: Element(repr),
            })
        };
        let (identity, chain, flexibility) = match kind {
            GroupKind::Lattice { rank } => {
                for i in 0..rank {
                    let name = if rank == 1 {
                        "t".to_string()
                    } else {
                        format!("x{}", i + 1)
                    };
                    for sign in [1, -1] {
                        let mut v = vec![0; rank];
                        v[i] = sign;
                        let label = if sign == 1 {
                            name.clone()
                        } else {
                            format!("{name}^-1")
                        };
                        push(&label, Repr::Lattice(v));
                    }
                }
                let class = if rank >= 2 {
                    FlexibilityClass::Flexible
                } else {
                    FlexibilityClass::Stable
                };
                (Repr::Lattice(vec![0; rank]), None, class)
            }
            GroupKind::Free { rank } => {
                for i in 0..rank {
                    let letter = (b'a' + i as u8) as char;
                    push(&letter.to_string(), Repr::Word(vec![i as i8 + 1]));
                    push(&format!("{letter}^-1"), Repr::Word(vec![-(i as i8 + 1)]));
                }
                let class = if rank >= 2 {
                    FlexibilityClass::Flexible
                } else {
                    FlexibilityClass::Stable
                };
                (Repr::Word(vec![]), None, class)
            }
            GroupKind::InfiniteDihedral => {
                push("r", Repr::Dihedral { shift: 1, flip: false });
                push("r^-1", Repr::Dihedral { shift: -1, flip: false });
                push("s", Repr::Dihedral { shift: 0, flip: true });
                (
                    Repr::Dihedral { shift: 0, flip: false },
                    None,
                    FlexibilityClass::Stable,
                )
            }
            GroupKind::CyclicTimesFinite { order } => {
                push("t", Repr::CyclicExt { shift: 1, rot: 0 });
                push("t^-1", Repr::CyclicExt { shift: -1, rot: 0 });
                push("c", Repr::CyclicExt { shift: 0, rot: 1 % order });
                if order > 2 {
                    push("c^-1", Repr::CyclicExt { shift: 0, rot: order - 1 });
                }
                (
                    Repr::CyclicExt { shift: 0, rot: 0 },
                    None,
                    FlexibilityClass::Stable,
                )
            }
            GroupKind::Cyclic { order } => {
                if order > 1 {
                    push("c", Repr::Residue(1));
                }
                if order > 2 {
                    push("c^-1", Repr::Residue(order - 1));
                }
                (Repr::Residue(0), None, FlexibilityClass::Unknown)
            }
            GroupKind::DirectSumC2 { depth } => {
                for i in 0..depth {
                    push(&format!("e{i}"), Repr::Support(vec![i as u32]));
                }
                let levels = (0..=depth).map(cube_elements).collect();
                (
                    Repr::Support(vec![]),
                    Some(Chain { base: 0, levels }),
                    FlexibilityClass::Stable,
                )
            }
            GroupKind::FinitarySymmetric { depth } => {
                for i in 1..depth {
                    push(&format!("s{i}"), Repr::Perm(adjacent_transposition(i)));
                }
                let levels = (1..=depth).map(symmetric_elements).collect();
                (
                    Repr::Perm(vec![]),
                    Some(Chain { base: 1, levels }),
                    FlexibilityClass::Stable,
                )
            }
            GroupKind::Symmetric { degree } => {
                for i in 1..degree {
                    push(&format!("s{i}"), Repr::Perm(adjacent_transposition(i)));
                }
                (Repr::Perm(vec![]), None, FlexibilityClass::Unknown)
            }
        };
        GroupOracle {
            name,
            kind,
            identity: Element(identity),
            generators,
            chain,
            flexibility,
        }
    }
}

/// The transposition `(i i+1)` in 1-based point notation.
fn adjacent_transposition(i: usize) -> Vec<u8> {
    let mut p: Vec<u8> = (0..=i as u8).collect();
    p.swap(i - 1, i);
    p
}

/// All of `C_2^n`, sorted canonically.
fn cube_elements(n: usize) -> Vec<Element> {
    let mut out: Vec<Element> = (0u64..1 << n)
        .map(|mask| {
            let support = (0..n as u32).filter(|i| mask >> i & 1 == 1).collect();
            Element(Repr::Support(support))
        })
        .collect();
    out.sort();
    out
}

/// All of `Sym(n)`, sorted canonically.
fn symmetric_elements(n: usize) -> Vec<Element> {
    fn extend(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Element>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Element(Repr::Perm(trim_perm(prefix.clone()))));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x as u8);
                extend(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out.sort();
    out
}
