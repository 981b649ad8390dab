//! Per-node random tags `r ∈ (0, 1)`.
//!
//! Tags come from a counter-based generator keyed by `(seed, node id)`, so any
//! node can compute its own tag without shared state. Sequential runs,
//! simulated runs, parallel schedules and incremental updates all see the same
//! value for the same node.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::NodeId;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Tag for `id` under `seed`. The 52-bit mantissa is centred on a half-step,
/// so the smallest value is `2^-53` and the largest `1 - 2^-53`.
pub fn tag_for(seed: u64, id: u64) -> f64 {
    let z = splitmix64(seed ^ splitmix64(id.wrapping_mul(GOLDEN)));
    ((z >> 12) as f64 + 0.5) * f64::powi(2.0, -52)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tags {
    values: Vec<f64>,
}

impl Tags {
    pub fn from_seed(seed: u64, n: usize) -> Self {
        Self {
            values: (0..n as u64).map(|id| tag_for(seed, id)).collect(),
        }
    }

    /// Explicit tags, mainly for tests that need a particular ordering.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if let Some((node, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, &r)| !(r > 0.0 && r < 1.0))
        {
            return Err(Error::InvalidTag {
                node: node as NodeId,
                value,
            });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: NodeId) -> f64 {
        self.values[v as usize]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    /// Appends the tag for the next node id.
    pub(crate) fn push_seeded(&mut self, seed: u64) -> f64 {
        let r = tag_for(seed, self.values.len() as u64);
        self.values.push(r);
        r
    }
}

/// Node weight `w = base + r` compared exactly as the triple
/// `(base, r, id)`. With an integer base and `r ∈ (0, 1)` this is the
/// same order as comparing `base + r`, without the rounding that a float sum
/// suffers once `base` is large; the id settles equal tags.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Weight {
    pub base: u64,
    pub tag: f64,
    pub id: NodeId,
}

impl Weight {
    pub fn new(base: u64, tag: f64, id: NodeId) -> Self {
        Self { base, tag, id }
    }

    pub fn value(&self) -> f64 {
        self.base as f64 + self.tag
    }
}

impl Eq for Weight {}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then(self.tag.total_cmp(&other.tag))
            .then(self.id.cmp(&other.id))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(Tags::from_seed(7, 50), Tags::from_seed(7, 50));
    }

    #[test]
    fn different_seeds_differ() {
        for s in 0..10u64 {
            assert_ne!(Tags::from_seed(s, 20), Tags::from_seed(s + 1000, 20));
        }
    }

    #[test]
    fn strictly_inside_unit_interval() {
        for seed in [0u64, 1, u64::MAX] {
            for id in 0..100_000u64 {
                let r = tag_for(seed, id);
                assert!(r > 0.0 && r < 1.0, "seed {seed} id {id}: {r}");
            }
        }
        let top = ((u64::MAX >> 12) as f64 + 0.5) * f64::powi(2.0, -52);
        assert!(top < 1.0);
        assert!(0.5 * f64::powi(2.0, -52) > 0.0);
    }

    #[test]
    fn prefix_stable() {
        let mut t = Tags::from_seed(3, 10);
        t.push_seeded(3);
        assert_eq!(t, Tags::from_seed(3, 11));
    }

    #[test]
    fn rejects_out_of_range_values() {
        assert!(Tags::from_values(vec![0.5, 1.0]).is_err());
        assert!(Tags::from_values(vec![0.0]).is_err());
        assert!(Tags::from_values(vec![f64::NAN]).is_err());
        assert!(Tags::from_values(vec![0.1, 0.9]).is_ok());
    }

    #[test]
    fn weight_order_matches_sum_and_breaks_ties_by_id() {
        let a = Weight::new(3, 0.9, 0);
        let b = Weight::new(4, 0.1, 1);
        assert!(a < b);
        assert_eq!(a.value() < b.value(), a < b);
        assert!(Weight::new(2, 0.5, 1) < Weight::new(2, 0.5, 2));
        // 2^53 + 0.25 rounds away in f64 but the triple still orders it
        let big = 1u64 << 53;
        assert!(Weight::new(big, 0.25, 0) < Weight::new(big, 0.75, 0));
    }
}
