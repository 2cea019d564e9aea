use std::fmt;

use serde::{Serialize, Serializer};

/// A group element in canonical form.
///
/// Two elements are equal iff their canonical forms are equal, so the derived
/// `Eq`, `Hash` and `Ord` are the group-level equality, hashing and the total
/// order used for deterministic tie-breaking. Elements are only built by a
/// [`GroupOracle`](super::GroupOracle), which keeps every value canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Element(pub(crate) Repr);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) enum Repr {
    /// Integer vector of `Z^n`.
    Lattice(Vec<i64>),
    /// Freely reduced word; letter `+(i+1)` is generator `i`, `-(i+1)` its inverse.
    Word(Vec<i8>),
    /// `s^flip r^shift` in the infinite dihedral group.
    Dihedral { shift: i64, flip: bool },
    /// `t^shift c^rot` in `Z x C_m`, with `rot < m`.
    CyclicExt { shift: i64, rot: u32 },
    /// `c^k` in `C_m`, `k < m`.
    Residue(u32),
    /// Sorted, duplicate-free support of an element of the direct sum of `C_2`.
    Support(Vec<u32>),
    /// Images of the points `0..n` with trailing fixed points trimmed.
    Perm(Vec<u8>),
}

impl Element {
    /// Integer coordinates, for lattice groups.
    pub fn coordinates(&self) -> Option<&[i64]> {
        match &self.0 {
            Repr::Lattice(v) => Some(v),
            _ => None,
        }
    }

    /// Letters of a reduced free-group word (`+(i+1)` / `-(i+1)`).
    pub fn letters(&self) -> Option<&[i8]> {
        match &self.0 {
            Repr::Word(w) => Some(w),
            _ => None,
        }
    }

    /// Normal-form pair `(shift, flip)` of `s^flip r^shift`.
    pub fn dihedral_parts(&self) -> Option<(i64, bool)> {
        match self.0 {
            Repr::Dihedral { shift, flip } => Some((shift, flip)),
            _ => None,
        }
    }

    /// `(shift, rot)` of `t^shift c^rot` in `Z x C_m`.
    pub fn cyclic_ext_parts(&self) -> Option<(i64, u32)> {
        match self.0 {
            Repr::CyclicExt { shift, rot } => Some((shift, rot)),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u32> {
        match self.0 {
            Repr::Residue(k) => Some(k),
            _ => None,
        }
    }

    /// Support indices for the direct sum of `C_2` (0-based coordinates).
    pub fn support(&self) -> Option<&[u32]> {
        match &self.0 {
            Repr::Support(s) => Some(s),
            _ => None,
        }
    }

    /// Point images (0-based) of a finitary permutation.
    pub fn images(&self) -> Option<&[u8]> {
        match &self.0 {
            Repr::Perm(p) => Some(p),
            _ => None,
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, name: &str, exp: i64) -> fmt::Result {
    if exp == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{exp}")
    }
}

fn letter_name(letter: i8) -> char {
    (b'a' + (letter.unsigned_abs() - 1)) as char
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Lattice(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Repr::Lattice(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Repr::Word(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                let mut first = true;
                let mut i = 0;
                while i < w.len() {
                    let mut j = i;
                    while j < w.len() && w[j] == w[i] {
                        j += 1;
                    }
                    let run = (j - i) as i64;
                    let exp = if w[i] > 0 { run } else { -run };
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write_power(f, &letter_name(w[i]).to_string(), exp)?;
                    i = j;
                }
                Ok(())
            }
            Repr::Dihedral { shift, flip } => match (*flip, *shift) {
                (false, 0) => write!(f, "e"),
                (true, 0) => write!(f, "s"),
                (false, k) => write_power(f, "r", k),
                (true, k) => {
                    write!(f, "s*")?;
                    write_power(f, "r", k)
                }
            },
            Repr::CyclicExt { shift, rot } => match (*shift, *rot) {
                (0, 0) => write!(f, "e"),
                (k, 0) => write_power(f, "t", k),
                (0, c) => write_power(f, "c", c as i64),
                (k, c) => {
                    write_power(f, "t", k)?;
                    write!(f, "*")?;
                    write_power(f, "c", c as i64)
                }
            },
            Repr::Residue(0) => write!(f, "e"),
            Repr::Residue(k) => write_power(f, "c", *k as i64),
            Repr::Support(s) => {
                if s.is_empty() {
                    return write!(f, "e");
                }
                for (i, idx) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "e{idx}")?;
                }
                Ok(())
            }
            Repr::Perm(p) => {
                let mut seen = vec![false; p.len()];
                let mut any = false;
                for start in 0..p.len() {
                    if seen[start] || p[start] as usize == start {
                        continue;
                    }
                    any = true;
                    write!(f, "(")?;
                    let mut cur = start;
                    let mut first = true;
                    while !seen[cur] {
                        seen[cur] = true;
                        if !first {
                            write!(f, " ")?;
                        }
                        first = false;
                        write!(f, "{}", cur + 1)?;
                        cur = p[cur] as usize;
                    }
                    write!(f, ")")?;
                }
                if !any {
                    write!(f, "e")?;
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
