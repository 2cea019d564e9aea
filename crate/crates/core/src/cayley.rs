//! Balls, spheres and annulus components of the right Cayley graph.
//!
//! Adjacency is `g ~ g·s` for every generator `s`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupOracle};

/// Default cap on the number of materialized elements.
pub const DEFAULT_MEMORY_CAP: usize = 5_000_000;

/// Elements of word length at most `radius`, stored layer by layer.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    elements: Vec<Element>,
    /// `offsets[k]..offsets[k+1]` is layer `k`.
    offsets: Vec<usize>,
    index: HashMap<Element, usize>,
    saturated: bool,
    truncated: bool,
}

impl Ball {
    /// Breadth-first ball of radius `r`; fails if it would exceed `cap`
    /// elements.
    pub fn new(oracle: &GroupOracle, r: usize, cap: usize) -> Result<Self> {
        let ball = Self::build(oracle, r, cap, true)?;
        Ok(ball)
    }

    /// Grows the ball towards radius `target`, stopping early (without error)
    /// before the next layer would exceed `cap`. Check [`Ball::radius`] for the
    /// radius reached.
    pub fn grow_within(oracle: &GroupOracle, target: usize, cap: usize) -> Self {
        Self::build(oracle, target, cap, false).expect("non-strict growth never fails")
    }

    fn build(oracle: &GroupOracle, target: usize, cap: usize, strict: bool) -> Result<Self> {
        let mut elements = vec![oracle.identity().clone()];
        let mut offsets = vec![0, 1];
        let mut index = HashMap::new();
        index.insert(oracle.identity().clone(), 0);
        let mut saturated = false;
        let mut truncated = false;
        let mut radius = 0;
        let gens: Vec<&Element> = oracle.generator_elements().collect();

        while radius < target {
            let k = offsets.len() - 2;
            let last = offsets[k + 1] - offsets[k];
            if last == 0 {
                saturated = true;
                radius = target;
                break;
            }
            let prev = if k == 0 { 1 } else { offsets[k] - offsets[k - 1] };
            let projected = if k == 0 {
                gens.len()
            } else {
                (last as f64 * last as f64 / prev.max(1) as f64).ceil() as usize
            };
            if elements.len() + projected > cap {
                if strict {
                    return Err(Error::CapExceeded {
                        cap,
                        radius: radius + 1,
                        projected: elements.len() + projected,
                    });
                }
                truncated = true;
                break;
            }
            let mut next: Vec<Element> = Vec::new();
            for g in &elements[offsets[k]..offsets[k + 1]] {
                for s in &gens {
                    let h = oracle.mul(g, s);
                    if !index.contains_key(&h) {
                        index.insert(h.clone(), usize::MAX);
                        next.push(h);
                    }
                }
            }
            next.sort();
            let start = elements.len();
            for (j, h) in next.into_iter().enumerate() {
                *index.get_mut(&h).expect("inserted above") = start + j;
                elements.push(h);
            }
            offsets.push(elements.len());
            radius += 1;
            if elements.len() > cap {
                if strict {
                    return Err(Error::CapExceeded {
                        cap,
                        radius,
                        projected: elements.len(),
                    });
                }
                truncated = true;
                break;
            }
        }
        if !saturated && offsets[offsets.len() - 1] == offsets[offsets.len() - 2] {
            saturated = true;
        }
        // keep one offset per radius even past saturation
        while offsets.len() < radius + 2 {
            offsets.push(elements.len());
        }
        Ok(Ball {
            radius,
            elements,
            offsets,
            index,
            saturated,
            truncated,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All elements, ordered by word length and then canonically.
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Elements of word length at most `r` (a prefix of [`Ball::elements`]).
    pub fn within(&self, r: usize) -> &[Element] {
        let r = r.min(self.radius);
        &self.elements[..self.offsets[r + 1]]
    }

    /// Elements of word length exactly `k`; empty beyond the radius.
    pub fn layer(&self, k: usize) -> &[Element] {
        if k > self.radius {
            return &[];
        }
        &self.elements[self.offsets[k]..self.offsets[k + 1]]
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        (0..=self.radius).map(|k| self.layer(k).len()).collect()
    }

    /// Some sphere of radius at most `radius` is empty: the ball is the whole
    /// group.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Growth stopped below the requested radius because of the cap.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn word_length(&self, g: &Element) -> Option<usize> {
        let i = self.index_of(g)?;
        Some(self.offsets.partition_point(|&o| o <= i) - 1)
    }

    fn layer_of_index(&self, i: usize) -> usize {
        self.offsets.partition_point(|&o| o <= i) - 1
    }

    /// Neighbor table `g -> g·s` restricted to the ball.
    pub fn adjacency(&self, oracle: &GroupOracle) -> Adjacency {
        let gens: Vec<&Element> = oracle.generator_elements().collect();
        let stride = gens.len();
        let mut table = Vec::with_capacity(self.elements.len() * stride);
        for g in &self.elements {
            for s in &gens {
                let h = oracle.mul(g, s);
                table.push(self.index_of(&h).map_or(u32::MAX, |i| i as u32));
            }
        }
        let layers = (0..self.elements.len())
            .map(|i| self.layer_of_index(i) as u32)
            .collect();
        Adjacency {
            stride,
            table,
            layers,
        }
    }
}

/// Right-multiplication neighbor table of a [`Ball`].
#[derive(Clone, Debug)]
pub struct Adjacency {
    stride: usize,
    table: Vec<u32>,
    layers: Vec<u32>,
}

impl Adjacency {
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[i * self.stride..(i + 1) * self.stride]
            .iter()
            .filter(|&&j| j != u32::MAX)
            .map(|&j| j as usize)
    }

    pub fn layer(&self, i: usize) -> usize {
        self.layers[i] as usize
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    /// Members in canonical order.
    pub elements: Vec<Element>,
    /// Whether the component reaches the outermost layer of the annulus.
    pub touches_outer: bool,
}

/// Connected components of the annulus `{g : r_inner <= |g| <= r_outer}`
/// under Cayley adjacency restricted to the annulus.
pub fn annulus_components(
    ball: &Ball,
    adjacency: &Adjacency,
    r_inner: usize,
    r_outer: usize,
) -> Vec<Component> {
    assert!(r_outer <= ball.radius(), "annulus exceeds the ball");
    let lo = ball.offsets[r_inner.min(ball.radius + 1)];
    let hi = ball.offsets[r_outer + 1];
    let mut comp_of = vec![u32::MAX; hi - lo];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in lo..hi {
        if comp_of[start - lo] != u32::MAX {
            continue;
        }
        let id = out.len() as u32;
        comp_of[start - lo] = id;
        queue.push_back(start);
        let mut members = Vec::new();
        let mut touches = false;
        while let Some(i) = queue.pop_front() {
            members.push(i);
            touches |= adjacency.layer(i) == r_outer;
            for j in adjacency.neighbors(i) {
                if (lo..hi).contains(&j) && comp_of[j - lo] == u32::MAX {
                    comp_of[j - lo] = id;
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        out.push(Component {
            elements: members.into_iter().map(|i| ball.elements[i].clone()).collect(),
            touches_outer: touches,
        });
    }
    for c in &mut out {
        c.elements.sort();
    }
    out.sort_by(|a, b| a.elements.first().cmp(&b.elements.first()));
    out
}

/// Counts the annulus components that reach the outer layer, without
/// collecting their members.
pub fn count_outer_components(
    ball: &Ball,
    adjacency: &Adjacency,
    r_inner: usize,
    r_outer: usize,
) -> usize {
    assert!(r_outer <= ball.radius(), "annulus exceeds the ball");
    let lo = ball.offsets[r_inner.min(ball.radius + 1)];
    let hi = ball.offsets[r_outer + 1];
    let mut seen = vec![false; hi - lo];
    let mut queue = VecDeque::new();
    let mut count = 0;
    for start in lo..hi {
        if seen[start - lo] {
            continue;
        }
        seen[start - lo] = true;
        queue.push_back(start);
        let mut touches = false;
        while let Some(i) = queue.pop_front() {
            touches |= adjacency.layer(i) == r_outer;
            for j in adjacency.neighbors(i) {
                if (lo..hi).contains(&j) && !seen[j - lo] {
                    seen[j - lo] = true;
                    queue.push_back(j);
                }
            }
        }
        count += usize::from(touches);
    }
    count
}

/// Components of `Ball(r_outer)` minus the open ball of radius `r_inner`,
/// i.e. of the annulus `r_inner <= |g| <= r_outer`.
pub fn components_outside(
    oracle: &GroupOracle,
    r_inner: usize,
    r_outer: usize,
    cap: usize,
) -> Result<Vec<Component>> {
    if r_inner >= r_outer {
        return Err(Error::Precondition(format!(
            "need r_inner < r_outer, got {r_inner} >= {r_outer}"
        )));
    }
    let ball = Ball::new(oracle, r_outer, cap)?;
    let adjacency = ball.adjacency(oracle);
    Ok(annulus_components(&ball, &adjacency, r_inner, r_outer))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> GroupOracle {
        GroupOracle::from_spec(spec).unwrap()
    }

    #[test]
    fn interval_in_z() {
        let z = g("Z");
        let b = Ball::new(&z, 3, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(b.len(), 7);
        let mut values: Vec<i64> = b.elements().iter().map(|e| e.coordinates().unwrap()[0]).collect();
        values.sort();
        assert_eq!(values, (-3..=3).collect::<Vec<_>>());
    }

    #[test]
    fn diamond_and_tree_sizes() {
        let z2 = g("Z^2");
        // brute-force count of |m| + |n| <= 2
        let brute = (-2i64..=2)
            .flat_map(|m| (-2i64..=2).map(move |n| (m, n)))
            .filter(|(m, n)| m.abs() + n.abs() <= 2)
            .count();
        assert_eq!(brute, 13);
        assert_eq!(Ball::new(&z2, 2, DEFAULT_MEMORY_CAP).unwrap().len(), brute);

        // reduced words of length <= 2 over {a, A, b, B}
        let letters = [1i8, -1, 2, -2];
        let mut words = 1;
        for x in letters {
            words += 1;
            for y in letters {
                if y != -x {
                    words += 1;
                }
            }
        }
        assert_eq!(words, 17);
        assert_eq!(Ball::new(&g("F2"), 2, DEFAULT_MEMORY_CAP).unwrap().len(), words);
    }

    #[test]
    fn layers_match_closed_form_word_length() {
        for spec in ["Z^2", "F2", "Dinf", "ZxC6", "Sym5", "C12"] {
            let o = g(spec);
            let b = Ball::new(&o, 6, DEFAULT_MEMORY_CAP).unwrap();
            for x in b.elements() {
                assert_eq!(b.word_length(x), Some(o.word_length(x)), "{spec} {x}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = Ball::new(&g("F2"), 12, 10_000).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 10_000, .. }));
        let grown = Ball::grow_within(&g("F2"), 12, 10_000);
        assert!(grown.is_truncated());
        assert!(grown.len() <= 10_000);
        assert_eq!(grown.radius(), 7);
    }

    #[test]
    fn z_annulus_has_two_rays() {
        let comps = components_outside(&g("Z"), 2, 8, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(comps.len(), 2);
        let z = g("Z");
        let ray = |lo: i64, hi: i64| -> Vec<Element> {
            let mut v: Vec<Element> = (lo..=hi).map(|k| z.vector(&[k]).unwrap()).collect();
            v.sort();
            v
        };
        assert_eq!(comps[0].elements, ray(-8, -2));
        assert_eq!(comps[1].elements, ray(2, 8));
        assert!(comps.iter().all(|c| c.touches_outer));
    }

    #[test]
    fn finite_group_saturates() {
        let comps = components_outside(&g("C12"), 2, 8, DEFAULT_MEMORY_CAP).unwrap();
        assert!(!comps.is_empty());
        assert!(comps.iter().all(|c| !c.touches_outer));
        let b = Ball::new(&g("C12"), 8, DEFAULT_MEMORY_CAP).unwrap();
        assert!(b.is_saturated());
        assert_eq!(b.len(), 12);
        assert!(b.layer(7).is_empty());
    }

    #[test]
    fn free_group_one_component_per_sphere_vertex() {
        let comps = components_outside(&g("F2"), 1, 5, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(comps.len(), 4);
        assert!(comps.iter().all(|c| c.touches_outer));
    }

    #[test]
    fn annulus_from_zero_covers_the_ball() {
        let o = g("Z^2");
        let b = Ball::new(&o, 5, DEFAULT_MEMORY_CAP).unwrap();
        let adj = b.adjacency(&o);
        let whole = annulus_components(&b, &adj, 0, 5);
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].elements.len(), b.len());
        let punctured = annulus_components(&b, &adj, 1, 5);
        let total: usize = punctured.iter().map(|c| c.elements.len()).sum();
        assert_eq!(total, b.len() - 1);
        assert!(punctured.iter().all(|c| !c.elements.contains(o.identity())));
    }
}
