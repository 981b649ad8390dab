//! The local marking algorithm.
//!
//! Every node draws a tag `r ∈ (0, 1)` and publishes the weight `d + r`. Each
//! node then marks its heaviest neighbor. A refinement round recomputes every
//! weight as `x + r`, where `x` counts the marks the node received in the
//! previous round, clears all marks and lets every node mark again. After `m`
//! refinement rounds the marked nodes form a total dominating set of the
//! non-isolated part of the graph.
//!
//! Two execution modes produce identical marked sets: a sequential pass over
//! plain arrays, and a synchronous message-passing simulation ([`sim`]) where
//! every node only reads what its neighbors sent in the previous exchange.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::tags::{Tags, Weight};

pub mod sim;

pub use sim::MessageTrace;

/// Neighborhood structure the engine runs over. The plain graph is one; the
/// k-hop view used for distance-k domination is another.
pub trait Topology: Sync {
    type Scratch: Send;

    fn node_count(&self) -> usize;

    fn new_scratch(&self) -> Self::Scratch;

    /// Neighbors of `v`, in any order, never containing `v`.
    fn neighbors_with<'a>(&'a self, v: NodeId, scratch: &'a mut Self::Scratch) -> &'a [NodeId];

    /// Physical communication rounds needed per algorithm round.
    fn hop_cost(&self) -> usize {
        1
    }
}

impl Topology for Graph {
    type Scratch = ();

    fn node_count(&self) -> usize {
        Graph::node_count(self)
    }

    fn new_scratch(&self) {}

    fn neighbors_with<'a>(&'a self, v: NodeId, _: &'a mut ()) -> &'a [NodeId] {
        self.neighbors(v)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[default]
    #[serde(rename = "seq", alias = "sequential")]
    Sequential,
    #[serde(rename = "sim", alias = "distributed-sim")]
    DistributedSim,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sequential => "seq",
            Mode::DistributedSim => "sim",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "seq" | "sequential" => Ok(Mode::Sequential),
            "sim" | "distributed-sim" => Ok(Mode::DistributedSim),
            other => Err(format!("unknown mode {other:?} (expected seq or sim)")),
        }
    }
}

/// What to do with degree-0 vertices, which no neighbor can ever mark.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsolatedPolicy {
    /// Refuse the input: total domination is undefined with isolated vertices.
    #[default]
    Error,
    /// Put every isolated vertex into the solution (dominating-set semantics).
    Include,
}

impl FromStr for IsolatedPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "error" => Ok(Self::Error),
            "include" | "include-in-solution" => Ok(Self::Include),
            other => Err(format!(
                "unknown isolated policy {other:?} (expected error or include)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Number of refinement rounds.
    pub m: usize,
    pub mode: Mode,
    pub isolated: IsolatedPolicy,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            m: 0,
            mode: Mode::Sequential,
            isolated: IsolatedPolicy::Error,
        }
    }
}

impl RunConfig {
    pub fn new(seed: u64, m: usize) -> Self {
        Self {
            seed,
            m,
            ..Self::default()
        }
    }

    pub fn with_mode(self, mode: Mode) -> Self {
        Self { mode, ..self }
    }

    pub fn with_isolated(self, isolated: IsolatedPolicy) -> Self {
        Self { isolated, ..self }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    /// Sorted, without duplicates.
    pub marked: Vec<NodeId>,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Algorithm rounds, `k * (2 + m)`.
    pub rounds: usize,
    /// Messages exchanged; always 0 in sequential mode.
    pub messages: u64,
    pub elapsed: Duration,
    pub trace: Option<MessageTrace>,
}

impl Solution {
    pub fn size(&self) -> usize {
        self.marked.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.marked.binary_search(&v).is_ok()
    }
}

/// The neighbor each node currently marks; `None` for isolated nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choices(Vec<Option<NodeId>>);

impl Choices {
    pub fn new(choices: Vec<Option<NodeId>>) -> Self {
        Self(choices)
    }

    pub fn get(&self, v: NodeId) -> Option<NodeId> {
        self.0[v as usize]
    }

    pub fn as_slice(&self) -> &[Option<NodeId>] {
        &self.0
    }

    /// `x_v`: how many nodes currently mark `v`.
    pub fn mark_counts(&self) -> Vec<u64> {
        let mut x = vec![0u64; self.0.len()];
        for c in self.0.iter().flatten() {
            x[*c as usize] += 1;
        }
        x
    }

    /// The image of the choice map, sorted.
    pub fn marked(&self) -> Vec<NodeId> {
        let mut hit = vec![false; self.0.len()];
        for c in self.0.iter().flatten() {
            hit[*c as usize] = true;
        }
        (0..self.0.len() as NodeId)
            .filter(|&v| hit[v as usize])
            .collect()
    }
}

/// The neighbor of maximum weight `base[u] + r_u`, ties to the larger id.
pub(crate) fn heaviest(neighbors: &[NodeId], base: &[u64], tags: &Tags) -> Option<NodeId> {
    neighbors
        .iter()
        .map(|&u| Weight::new(base[u as usize], tags.get(u), u))
        .max()
        .map(|w| w.id)
}

/// [`heaviest`] over an adjacency-list graph with weights `degree + r`.
pub(crate) fn heaviest_by_degree(adj: &[Vec<NodeId>], v: NodeId, tags: &Tags) -> Option<NodeId> {
    adj[v as usize]
        .iter()
        .map(|&u| Weight::new(adj[u as usize].len() as u64, tags.get(u), u))
        .max()
        .map(|w| w.id)
}

fn mark_all<T: Topology>(topo: &T, base: &[u64], tags: &Tags) -> Choices {
    let mut scratch = topo.new_scratch();
    Choices(
        (0..topo.node_count() as NodeId)
            .map(|v| heaviest(topo.neighbors_with(v, &mut scratch), base, tags))
            .collect(),
    )
}

fn degrees<T: Topology>(topo: &T) -> Vec<u64> {
    let mut scratch = topo.new_scratch();
    (0..topo.node_count() as NodeId)
        .map(|v| topo.neighbors_with(v, &mut scratch).len() as u64)
        .collect()
}

/// Every node marks its neighbor with the largest `base + r`.
pub fn mark_by_weight(g: &Graph, base: &[u64], tags: &Tags) -> Choices {
    assert_eq!(base.len(), g.node_count());
    mark_all(g, base, tags)
}

/// Every node marks its neighbor with the largest `d + r`.
/// Isolated nodes mark nothing.
pub fn initial_mark(g: &Graph, tags: &Tags) -> Choices {
    mark_all(g, &degrees(g), tags)
}

/// One refinement round: count marks from `prev`, drop all marks, and let
/// every node re-mark its neighbor with the largest `x + r`.
pub fn refine_round(g: &Graph, tags: &Tags, prev: &Choices) -> Choices {
    mark_all(g, &prev.mark_counts(), tags)
}

pub fn solve(g: &Graph, cfg: &RunConfig) -> Result<Solution> {
    run(g, cfg, None, 1)
}

/// [`solve`] with caller-supplied tags instead of seeded ones.
pub fn solve_with_tags(g: &Graph, cfg: &RunConfig, tags: &Tags) -> Result<Solution> {
    run(g, cfg, Some(tags), 1)
}

/// Runs the distributed simulation regardless of `cfg.mode`. The returned
/// solution always carries its trace.
pub fn simulate_rounds(g: &Graph, cfg: &RunConfig) -> Result<Solution> {
    solve(g, &cfg.with_mode(Mode::DistributedSim))
}

pub(crate) fn run<T: Topology>(
    topo: &T,
    cfg: &RunConfig,
    tags: Option<&Tags>,
    k: usize,
) -> Result<Solution> {
    let n = topo.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let seeded;
    let tags = match tags {
        Some(t) if t.len() != n => {
            return Err(Error::TagCount {
                expected: n,
                got: t.len(),
            })
        }
        Some(t) => t,
        None => {
            seeded = Tags::from_seed(cfg.seed, n);
            &seeded
        }
    };

    let start = Instant::now();
    let degree = degrees(topo);
    let isolated: Vec<NodeId> = (0..n as NodeId)
        .filter(|&v| degree[v as usize] == 0)
        .collect();
    if cfg.isolated == IsolatedPolicy::Error {
        if let Some(&v) = isolated.first() {
            return Err(Error::IsolatedVertex(v));
        }
    }

    let (mut marked, messages, trace) = match cfg.mode {
        Mode::Sequential => {
            let mut choices = mark_all(topo, &degree, tags);
            for _ in 0..cfg.m {
                choices = mark_all(topo, &choices.mark_counts(), tags);
            }
            (choices.marked(), 0, None)
        }
        Mode::DistributedSim => {
            let (marked, trace) = sim::run(topo, tags, cfg.m);
            (marked, trace.total(), Some(trace))
        }
    };
    if !isolated.is_empty() {
        marked.extend(isolated);
        marked.sort_unstable();
    }
    let elapsed = start.elapsed();

    Ok(Solution {
        marked,
        m: cfg.m,
        k,
        seed: cfg.seed,
        mode: cfg.mode,
        rounds: topo.hop_cost() * (2 + cfg.m),
        messages,
        elapsed,
        trace,
    })
}
