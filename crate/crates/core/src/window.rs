//! Nested finite windows `W(0) ⊆ W(1) ⊆ … ⊆ W(r)` onto a group.
//!
//! For finitely generated oracles `W(k)` is the word-length ball of radius
//! `k`. For locally finite oracles it is the chain member `G_k`, which is a
//! subgroup, so translates of the window by its own elements stay inside it.

use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::group::{Element, GroupOracle};

#[derive(Clone, Debug)]
pub struct Windows {
    elements: Vec<Element>,
    offsets: Vec<usize>,
    radius: usize,
    chain: bool,
}

impl Windows {
    pub fn for_oracle(oracle: &GroupOracle, r: usize, cap: usize) -> Result<Self> {
        match oracle.chain() {
            Some(chain) => {
                if r > chain.top() {
                    return Err(Error::BeyondChain {
                        radius: r,
                        depth: chain.top(),
                    });
                }
                let mut elements: Vec<Element> = Vec::new();
                let mut offsets = vec![0];
                for k in 0..=r {
                    // below the base every window is G_base
                    let fresh: Vec<Element> = if k == 0 {
                        chain.level(chain.base()).expect("base level").to_vec()
                    } else if k > chain.base() {
                        let level = chain.level(k).expect("within chain");
                        level
                            .iter()
                            .filter(|g| oracle.chain_level(g).ok() == Some(k))
                            .cloned()
                            .collect()
                    } else {
                        Vec::new()
                    };
                    let mut fresh = fresh;
                    fresh.sort();
                    elements.extend(fresh);
                    offsets.push(elements.len());
                }
                Ok(Windows {
                    elements,
                    offsets,
                    radius: r,
                    chain: true,
                })
            }
            None => {
                let ball = Ball::new(oracle, r, cap)?;
                let mut offsets = vec![0];
                for k in 0..=r {
                    offsets.push(offsets[k] + ball.layer(k).len());
                }
                Ok(Windows {
                    elements: ball.elements().to_vec(),
                    offsets,
                    radius: r,
                    chain: false,
                })
            }
        }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Whether the windows are chain members rather than word-length balls.
    pub fn is_chain(&self) -> bool {
        self.chain
    }

    /// `W(k)`, ordered by scale and then canonically.
    pub fn within(&self, k: usize) -> &[Element] {
        &self.elements[..self.offsets[k.min(self.radius) + 1]]
    }

    pub fn all(&self) -> &[Element] {
        &self.elements
    }

    /// `|W(k)|`.
    pub fn size(&self, k: usize) -> usize {
        self.offsets[k.min(self.radius) + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::DEFAULT_MEMORY_CAP;

    #[test]
    fn chain_windows_are_chain_levels() {
        let ds = GroupOracle::from_spec("DirSumC2").unwrap();
        let w = Windows::for_oracle(&ds, 5, DEFAULT_MEMORY_CAP).unwrap();
        for k in 0..=5 {
            assert_eq!(w.size(k), 1 << k);
        }
        assert!(Windows::for_oracle(&ds, 9, DEFAULT_MEMORY_CAP).is_err());

        let fs = GroupOracle::from_spec_with_depth("FinSym", 5).unwrap();
        let w = Windows::for_oracle(&fs, 5, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(
            (0..=5).map(|k| w.size(k)).collect::<Vec<_>>(),
            vec![1, 1, 2, 6, 24, 120]
        );
    }

    #[test]
    fn ball_windows() {
        let z = GroupOracle::from_spec("Z").unwrap();
        let w = Windows::for_oracle(&z, 4, DEFAULT_MEMORY_CAP).unwrap();
        assert_eq!(w.size(0), 1);
        assert_eq!(w.size(4), 9);
        assert!(!w.is_chain());
    }
}
