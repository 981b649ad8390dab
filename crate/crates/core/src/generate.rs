//! Deterministic graph families and seeded random generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `v0 - v1 - ... - v(n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n as NodeId).map(|v| (v - 1, v)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n as NodeId).map(|v| (v, (v + 1) % n as NodeId)))
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves as NodeId).map(|v| (0, v)))
}

pub fn complete(n: usize) -> Graph {
    let n = n as NodeId;
    Graph::from_edges(
        n as usize,
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    )
}

/// Centre 0 with `legs` paths of `leg_len` nodes hanging off it.
pub fn spider(legs: usize, leg_len: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..legs {
        let mut prev = 0;
        for _ in 0..leg_len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::from_edges(next as usize, edges)
}

/// `rows x cols` grid, row-major ids.
pub fn grid(rows: usize, cols: usize) -> Graph {
    Graph::from_edges(rows * cols, grid_edges(rows * cols, cols))
}

/// Grid edges among the first `n` cells of a row-major grid with `cols`
/// columns. The cell set is full rows plus a prefix of one more row, which is
/// always connected.
fn grid_edges(n: usize, cols: usize) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for i in 0..n {
        if (i + 1) % cols != 0 && i + 1 < n {
            edges.push((i as NodeId, (i + 1) as NodeId));
        }
        if i + cols < n {
            edges.push((i as NodeId, (i + cols) as NodeId));
        }
    }
    edges
}

/// `G(n, m)`: `m` distinct edges drawn uniformly. `m` is capped at
/// `n(n-1)/2`.
pub fn gnm(seed: u64, n: usize, m: usize) -> Graph {
    let max = n * n.saturating_sub(1) / 2;
    let m = m.min(max);
    let mut rng = rng(seed);
    if m * 2 > max {
        let mut all: Vec<(NodeId, NodeId)> = (0..n as NodeId)
            .flat_map(|u| (u + 1..n as NodeId).map(move |v| (u, v)))
            .collect();
        all.shuffle(&mut rng);
        all.truncate(m);
        return Graph::from_edges(n, all);
    }
    let mut seen = HashSet::with_capacity(m);
    while seen.len() < m {
        let u = rng.gen_range(0..n as NodeId);
        let v = rng.gen_range(0..n as NodeId);
        if u != v {
            seen.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = seen.into_iter().collect();
    edges.sort_unstable();
    Graph::from_edges(n, edges)
}

/// Connected triangle-free planar graph on `n >= 2` nodes: a random subgraph
/// of a near-square grid. Each grid edge survives with probability `density`;
/// if the result is disconnected, further grid edges are added in random
/// order, union-find style, until it is connected. Subgraphs of grids are
/// planar and bipartite, so no triangle can appear.
pub fn planar_triangle_free(seed: u64, n: usize, density: f64) -> Graph {
    assert!(n >= 2, "need at least two nodes");
    let mut rng = rng(seed);
    let rows = ((n as f64).sqrt().floor() as usize).max(1);
    let cols = n.div_ceil(rows).max(2);
    let mut candidates = grid_edges(n, cols);

    let mut uf = UnionFind::new(n);
    let mut kept = Vec::new();
    let mut rest = Vec::new();
    for e in candidates.drain(..) {
        if rng.gen_bool(density.clamp(0.0, 1.0)) {
            uf.union(e.0, e.1);
            kept.push(e);
        } else {
            rest.push(e);
        }
    }
    rest.shuffle(&mut rng);
    for e in rest {
        if uf.components == 1 {
            break;
        }
        if uf.union(e.0, e.1) {
            kept.push(e);
        }
    }
    Graph::from_edges(n, kept)
}

struct UnionFind {
    parent: Vec<NodeId>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as NodeId).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut v: NodeId) -> NodeId {
        while self.parent[v as usize] != v {
            let p = self.parent[v as usize];
            self.parent[v as usize] = self.parent[p as usize];
            v = p;
        }
        v
    }

    fn union(&mut self, a: NodeId, b: NodeId) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        self.components -= 1;
        true
    }
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// True when some edge `{u, v}` has a common neighbor.
pub fn has_triangle(g: &Graph) -> bool {
    g.edges().any(|(u, v)| {
        let (a, b) = (g.neighbors(u), g.neighbors(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    })
}
