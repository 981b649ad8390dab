//! Ground truth for tests and benchmarks: domination checkers, an exact
//! solver for small graphs, the greedy baseline and the approximation-ratio
//! trial on triangle-free planar graphs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{solve, RunConfig};
use crate::error::{Error, Result};
use crate::generate;
use crate::graph::{Graph, KHopScratch, NodeId};

/// Default node limit for [`exact_mds`].
pub const EXACT_BUDGET: usize = 24;

fn membership(g: &Graph, s: &[NodeId]) -> Vec<bool> {
    let mut in_s = vec![false; g.node_count()];
    for &v in s {
        in_s[v as usize] = true;
    }
    in_s
}

/// Every node outside `s` has a neighbor in `s`.
pub fn is_dominating(g: &Graph, s: &[NodeId]) -> bool {
    let in_s = membership(g, s);
    g.nodes()
        .all(|v| in_s[v as usize] || g.neighbors(v).iter().any(|&u| in_s[u as usize]))
}

/// Every node, members of `s` included, has a neighbor in `s`.
pub fn is_total_dominating(g: &Graph, s: &[NodeId]) -> bool {
    let in_s = membership(g, s);
    g.nodes()
        .all(|v| g.neighbors(v).iter().any(|&u| in_s[u as usize]))
}

/// Total domination restricted to vertices of positive degree; isolated
/// vertices must be in `s` themselves.
pub fn is_total_dominating_non_isolated(g: &Graph, s: &[NodeId]) -> bool {
    let in_s = membership(g, s);
    g.nodes().all(|v| {
        let nbrs = g.neighbors(v);
        if nbrs.is_empty() {
            in_s[v as usize]
        } else {
            nbrs.iter().any(|&u| in_s[u as usize])
        }
    })
}

/// Distance-`k` domination. With `total`, a node in `s` still needs another
/// member of `s` within distance `k`; isolated nodes are exempt from the total
/// requirement when they are themselves in `s`.
pub fn is_k_dominating(g: &Graph, s: &[NodeId], k: usize, total: bool) -> bool {
    assert!(k >= 1);
    let in_s = membership(g, s);
    let mut scratch = KHopScratch::new(g.node_count());
    g.nodes().all(|v| {
        if in_s[v as usize] && (!total || g.neighbors(v).is_empty()) {
            return true;
        }
        scratch.collect(g, v, k).iter().any(|&u| in_s[u as usize])
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub gamma: usize,
    /// `None` when the graph has isolated vertices.
    pub gamma_t: Option<usize>,
    pub witness: Vec<NodeId>,
    pub total_witness: Option<Vec<NodeId>>,
}

/// Both optima. Fails when `g` has more than `budget` nodes.
pub fn exact(g: &Graph, budget: usize) -> Result<ExactResult> {
    let (gamma, witness) = exact_mds(g, false, budget)?;
    let total = if g.isolated_vertices().is_empty() {
        Some(exact_mds(g, true, budget)?)
    } else {
        None
    };
    Ok(ExactResult {
        gamma,
        gamma_t: total.as_ref().map(|t| t.0),
        witness,
        total_witness: total.map(|t| t.1),
    })
}

/// Minimum (total) dominating set by enumerating subsets in increasing size.
/// Within one size, subsets are generated in increasing index order and a
/// branch is cut as soon as the lowest uncovered node has no remaining
/// candidate that could cover it, or the remaining picks cannot cover the
/// remaining nodes even at maximum coverage.
pub fn exact_mds(g: &Graph, total: bool, budget: usize) -> Result<(usize, Vec<NodeId>)> {
    let n = g.node_count();
    if n > budget || n > 63 {
        return Err(Error::BudgetExceeded { n, budget });
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if total {
        if let Some(&v) = g.isolated_vertices().first() {
            return Err(Error::IsolatedVertex(v));
        }
    }
    // cover[u]: nodes that picking u covers. coverers[v]: nodes covering v.
    let cover: Vec<u64> = g
        .nodes()
        .map(|u| {
            let open = g.neighbors(u).iter().fold(0u64, |m, &w| m | 1 << w);
            if total {
                open
            } else {
                open | 1 << u
            }
        })
        .collect();
    let coverers = cover.clone();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let max_cover = cover.iter().map(|c| c.count_ones()).max().unwrap_or(0);

    let search = Search {
        cover: &cover,
        coverers: &coverers,
        full,
        max_cover,
        n,
    };
    for size in 1..=n {
        let mut picked = Vec::with_capacity(size);
        if search.dfs(0, size, 0, &mut picked) {
            return Ok((size, picked));
        }
    }
    unreachable!("the full vertex set always dominates a graph without isolated vertices")
}

struct Search<'a> {
    cover: &'a [u64],
    coverers: &'a [u64],
    full: u64,
    max_cover: u32,
    n: usize,
}

impl Search<'_> {
    fn dfs(&self, start: usize, left: usize, covered: u64, picked: &mut Vec<NodeId>) -> bool {
        if covered == self.full {
            return true;
        }
        if left == 0 {
            return false;
        }
        let uncovered = self.full & !covered;
        if uncovered.count_ones() > left as u32 * self.max_cover {
            return false;
        }
        let lowest = uncovered.trailing_zeros() as usize;
        let tail = if start >= 64 { 0 } else { !0u64 << start };
        if self.coverers[lowest] & tail == 0 {
            return false;
        }
        for u in start..=self.n - left {
            picked.push(u as NodeId);
            if self.dfs(u + 1, left - 1, covered | self.cover[u], picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
}

/// Classic greedy: repeatedly take the node whose closed neighborhood covers
/// the most uncovered nodes; ties go to the smaller id.
pub fn greedy_mds(g: &Graph) -> Vec<NodeId> {
    let n = g.node_count();
    let mut covered = vec![false; n];
    let mut remaining = n;
    let gain = |v: NodeId, covered: &[bool]| {
        (!covered[v as usize]) as usize
            + g.neighbors(v)
                .iter()
                .filter(|&&u| !covered[u as usize])
                .count()
    };
    let mut heap: BinaryHeap<(usize, Reverse<NodeId>)> = g
        .nodes()
        .map(|v| (g.neighbors(v).len() + 1, Reverse(v)))
        .collect();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (stale, Reverse(v)) = heap.pop().expect("uncovered nodes remain");
        let fresh = gain(v, &covered);
        if fresh != stale {
            // gains only shrink, so a refreshed entry never jumps ahead of a
            // valid one
            if fresh > 0 {
                heap.push((fresh, Reverse(v)));
            }
            continue;
        }
        chosen.push(v);
        for u in std::iter::once(v).chain(g.neighbors(v).iter().copied()) {
            if !covered[u as usize] {
                covered[u as usize] = true;
                remaining -= 1;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioTrial {
    pub seed: u64,
    pub n: usize,
    pub edges: usize,
    pub m: usize,
    pub size: usize,
    pub gamma: usize,
    pub gamma_t: usize,
    pub ratio_mds: f64,
    pub ratio_mtds: f64,
}

/// Node-count range used by [`approx_ratio_trial`].
pub const TRIAL_NODES: std::ops::RangeInclusive<usize> = 6..=20;

/// Runs the marking algorithm with `m` refinement rounds on a seeded
/// triangle-free planar graph and compares against the exact optima.
pub fn approx_ratio_trial(seed: u64, m: usize) -> Result<RatioTrial> {
    let mut rng = generate::rng(seed ^ 0x5eed_7a1a);
    let n = rng.gen_range(TRIAL_NODES);
    let density = rng.gen_range(0.3..=1.0);
    let g = generate::planar_triangle_free(seed, n, density);
    ratio_on(&g, seed, m)
}

pub fn ratio_on(g: &Graph, seed: u64, m: usize) -> Result<RatioTrial> {
    let opt = exact(g, EXACT_BUDGET)?;
    let gamma_t = opt
        .gamma_t
        .ok_or_else(|| Error::IsolatedVertex(g.isolated_vertices()[0]))?;
    let sol = solve(g, &RunConfig::new(seed, m))?;
    Ok(RatioTrial {
        seed,
        n: g.node_count(),
        edges: g.edge_count(),
        m,
        size: sol.size(),
        gamma: opt.gamma,
        gamma_t,
        ratio_mds: sol.size() as f64 / opt.gamma as f64,
        ratio_mtds: sol.size() as f64 / gamma_t as f64,
    })
}
