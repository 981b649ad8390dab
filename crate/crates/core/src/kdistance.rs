//! Distance-k (total) domination: the marking algorithm run with "neighbor"
//! meaning "within distance k". Neighborhoods are either queried on the fly by
//! depth-bounded BFS, or materialized once as the power graph `G^k`.

use serde::{Deserialize, Serialize};

use crate::engine::{self, RunConfig, Solution, Topology};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, KHopScratch, NodeId};

/// Neighborhoods at distance `1..=k`, answered from the base graph.
#[derive(Clone, Copy, Debug)]
pub struct KHopView<'g> {
    graph: &'g Graph,
    k: usize,
}

impl<'g> KHopView<'g> {
    pub fn new(graph: &'g Graph, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidK);
        }
        Ok(Self { graph, k })
    }
}

impl Topology for KHopView<'_> {
    type Scratch = KHopScratch;

    fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn new_scratch(&self) -> KHopScratch {
        KHopScratch::new(self.graph.node_count())
    }

    fn neighbors_with<'a>(&'a self, v: NodeId, scratch: &'a mut KHopScratch) -> &'a [NodeId] {
        scratch.collect(self.graph, v, self.k)
    }

    fn hop_cost(&self) -> usize {
        self.k
    }
}

/// A materialized power graph still charges `k` communication rounds per
/// algorithm round, since its edges are paths in the original network.
struct Materialized<'g> {
    power: &'g Graph,
    k: usize,
}

impl Topology for Materialized<'_> {
    type Scratch = ();

    fn node_count(&self) -> usize {
        self.power.node_count()
    }

    fn new_scratch(&self) {}

    fn neighbors_with<'a>(&'a self, v: NodeId, _: &'a mut ()) -> &'a [NodeId] {
        self.power.neighbors(v)
    }

    fn hop_cost(&self) -> usize {
        self.k
    }
}

/// `G^k`: `{u, v}` is an edge iff `1 <= dist(u, v) <= k`. `max_edges` bounds
/// the result; exceeding it fails early rather than exhausting memory.
pub fn power_graph(g: &Graph, k: usize, max_edges: Option<usize>) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if k == 1 {
        return Ok(g.clone());
    }
    let limit = max_edges.unwrap_or(usize::MAX);
    let mut builder = GraphBuilder::new();
    for label in g.labels() {
        builder.node(label);
    }
    let mut scratch = KHopScratch::new(g.node_count());
    let mut count = 0usize;
    for v in g.nodes() {
        for &u in scratch.collect(g, v, k) {
            if v < u {
                count += 1;
                if count > limit {
                    return Err(Error::PowerGraphTooLarge { limit });
                }
                builder.add_edge(v, u);
            }
        }
    }
    Ok(builder.build())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KConfig {
    pub k: usize,
    pub base: RunConfig,
    /// Build `G^k` up front instead of querying k-hop neighborhoods per round.
    pub materialize_power_graph: bool,
}

impl KConfig {
    pub fn new(k: usize, base: RunConfig) -> Self {
        Self {
            k,
            base,
            materialize_power_graph: false,
        }
    }

    pub fn materialized(self) -> Self {
        Self {
            materialize_power_graph: true,
            ..self
        }
    }
}

/// Marks a distance-k total dominating set. A node's degree in its weight is
/// the size of its k-hop neighborhood. `k = 1` is exactly [`engine::solve`].
pub fn solve_kdistance(g: &Graph, cfg: &KConfig) -> Result<Solution> {
    match cfg.k {
        0 => Err(Error::InvalidK),
        1 => engine::solve(g, &cfg.base),
        k if cfg.materialize_power_graph => {
            let power = power_graph(g, k, None)?;
            engine::run(&Materialized { power: &power, k }, &cfg.base, None, k)
        }
        k => engine::run(&KHopView::new(g, k)?, &cfg.base, None, k),
    }
}
