//! Element expressions: `a*b^-1*a`, `(2,-3)`, `s*r^2`, `(1 2)(3 4)`, `e`.

use super::{trim_perm, Element, GroupKind, GroupOracle, Repr};
use crate::error::{Error, Result};

impl GroupOracle {
    /// Parses an element expression: `*`-separated factors, each a generator
    /// name with an optional integer exponent, a tuple literal (lattice
    /// groups), or cycle notation (permutation groups). `e` is the identity.
    pub fn parse_element(&self, expr: &str) -> Result<Element> {
        let syntax = |reason: &str| Error::Syntax {
            expr: expr.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = expr.trim();
        if trimmed.is_empty() {
            return Err(syntax("empty expression"));
        }
        if matches!(self.kind, GroupKind::Lattice { rank: 1 }) {
            if let Ok(k) = trimmed.parse::<i64>() {
                return Ok(Element(Repr::Lattice(vec![k])));
            }
        }
        let mut acc = self.identity.clone();
        for factor in split_top_level(trimmed, '*').map_err(|r| syntax(&r))? {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(syntax("empty factor"));
            }
            let value = if factor.starts_with('(') {
                self.parse_parenthesized(factor, expr)?
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: i64 = e.trim().parse().map_err(|_| syntax("bad exponent"))?;
                        (n.trim(), e)
                    }
                    None => (factor, 1),
                };
                let base = self.named_element(name)?;
                self.pow(&base, exp)
            };
            acc = self.mul(&acc, &value);
        }
        Ok(acc)
    }

    fn named_element(&self, name: &str) -> Result<Element> {
        if name == "e" {
            return Ok(self.identity.clone());
        }
        if let Some(g) = self.generators.iter().find(|g| g.label == name) {
            return Ok(g.element.clone());
        }
        let unknown = || Error::UnknownGenerator {
            group: self.name.clone(),
            name: name.to_string(),
        };
        // the locally finite groups have infinitely many named generators
        match self.kind {
            GroupKind::DirectSumC2 { .. } => {
                let i: u32 = name
                    .strip_prefix('e')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(unknown)?;
                Ok(Element(Repr::Support(vec![i])))
            }
            GroupKind::FinitarySymmetric { .. } => {
                let i: usize = name
                    .strip_prefix('s')
                    .and_then(|d| d.parse().ok())
                    .filter(|&i| (1..255).contains(&i))
                    .ok_or_else(unknown)?;
                let mut p: Vec<u8> = (0..=i as u8).collect();
                p.swap(i - 1, i);
                Ok(Element(Repr::Perm(p)))
            }
            _ => Err(unknown()),
        }
    }

    fn parse_parenthesized(&self, factor: &str, expr: &str) -> Result<Element> {
        let syntax = |reason: &str| Error::Syntax {
            expr: expr.to_string(),
            reason: reason.to_string(),
        };
        match self.kind {
            GroupKind::Lattice { rank } => {
                let inner = factor
                    .strip_prefix('(')
                    .and_then(|f| f.strip_suffix(')'))
                    .ok_or_else(|| syntax("unbalanced tuple"))?;
                let coords = inner
                    .split(',')
                    .map(|c| c.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| syntax("tuple entries must be integers"))?;
                if coords.len() != rank {
                    return Err(Error::Arity {
                        expected: rank,
                        found: coords.len(),
                    });
                }
                Ok(Element(Repr::Lattice(coords)))
            }
            GroupKind::Symmetric { .. } | GroupKind::FinitarySymmetric { .. } => {
                let limit = match self.kind {
                    GroupKind::Symmetric { degree } => degree,
                    _ => 255,
                };
                let mut acc = self.identity.clone();
                let mut rest = factor;
                while !rest.is_empty() {
                    let close = rest.find(')').ok_or_else(|| syntax("unbalanced cycle"))?;
                    let body = rest[..close]
                        .strip_prefix('(')
                        .ok_or_else(|| syntax("cycle must start with `(`"))?;
                    let points = body
                        .split_whitespace()
                        .map(|p| p.parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| syntax("cycle points must be positive integers"))?;
                    acc = self.mul(&acc, &cycle(&points, limit).map_err(|r| syntax(&r))?);
                    rest = rest[close + 1..].trim_start();
                }
                Ok(acc)
            }
            _ => Err(syntax("parenthesized literals need a lattice or permutation group")),
        }
    }
}

fn cycle(points: &[usize], limit: usize) -> std::result::Result<Element, String> {
    if points.iter().any(|&p| p == 0 || p > limit) {
        return Err(format!("cycle points must lie in 1..={limit}"));
    }
    let n = points.iter().copied().max().unwrap_or(0);
    let mut p: Vec<u8> = (0..n as u8).collect();
    let mut seen = vec![false; n + 1];
    for &x in points {
        if std::mem::replace(&mut seen[x], true) {
            return Err("repeated point in cycle".into());
        }
    }
    for (i, &x) in points.iter().enumerate() {
        let next = points[(i + 1) % points.len()];
        p[x - 1] = (next - 1) as u8;
    }
    Ok(Element(Repr::Perm(trim_perm(p))))
}

fn split_top_level(s: &str, sep: char) -> std::result::Result<Vec<&str>, String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced parentheses".into());
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    parts.push(&s[start..]);
    Ok(parts)
}

/// Splits on top-level commas, ignoring commas inside brackets; shared with
/// the subset literal parser.
pub(crate) fn split_list(s: &str) -> std::result::Result<Vec<&str>, String> {
    split_top_level(s, ',')
}
