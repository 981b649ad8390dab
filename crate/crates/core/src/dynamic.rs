//! Incremental maintenance of the `m = 0` marking under edge updates.
//!
//! With no refinement rounds a node's choice depends only on its neighbors'
//! degrees and tags. Inserting or deleting `{u, v}` changes the degrees of `u`
//! and `v` and the neighbor lists of `u` and `v`, so only `u`, `v` and their
//! neighbors can change their choice. Those are re-evaluated; everything else
//! is left alone.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::engine::{heaviest_by_degree, IsolatedPolicy};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::tags::Tags;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeOp {
    Insert,
    Delete,
}

impl fmt::Display for EdgeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeOp::Insert => "+",
            EdgeOp::Delete => "-",
        })
    }
}

/// Nodes touched by one update.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateOutcome {
    /// Nodes whose choice was re-evaluated, sorted.
    pub affected: Vec<NodeId>,
    /// Nodes whose choice actually changed, sorted.
    pub changed: Vec<NodeId>,
}

#[derive(Clone, Debug)]
pub struct DynamicState {
    adj: Vec<Vec<NodeId>>,
    labels: Vec<String>,
    seed: u64,
    tags: Tags,
    choices: Vec<Option<NodeId>>,
    /// How many nodes mark each node; the solution is `{v : marks[v] > 0}`.
    marks: Vec<u32>,
    edges: usize,
    policy: IsolatedPolicy,
}

impl DynamicState {
    /// Solves `g` from scratch with `m = 0` and tags from `seed`.
    pub fn new(g: &Graph, seed: u64, policy: IsolatedPolicy) -> Result<Self> {
        if g.node_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        if policy == IsolatedPolicy::Error {
            if let Some(&v) = g.isolated_vertices().first() {
                return Err(Error::IsolatedVertex(v));
            }
        }
        let n = g.node_count();
        let mut state = Self {
            adj: g.nodes().map(|v| g.neighbors(v).to_vec()).collect(),
            labels: g.labels().to_vec(),
            seed,
            tags: Tags::from_seed(seed, n),
            choices: vec![None; n],
            marks: vec![0; n],
            edges: g.edge_count(),
            policy,
        };
        for v in g.nodes() {
            state.rechoose(v);
        }
        Ok(state)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn tags(&self) -> &Tags {
        &self.tags
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn choices(&self) -> &[Option<NodeId>] {
        &self.choices
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v as usize]
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as NodeId)
    }

    /// Adds a node with the next id; its tag comes from the same keyed stream.
    /// It stays isolated until an edge is inserted.
    pub fn add_node(&mut self, label: impl Into<String>) -> NodeId {
        let id = self.adj.len() as NodeId;
        self.adj.push(Vec::new());
        self.labels.push(label.into());
        self.tags.push_seeded(self.seed);
        self.choices.push(None);
        self.marks.push(0);
        id
    }

    /// Current solution: marked nodes, plus isolated nodes under
    /// [`IsolatedPolicy::Include`]. Sorted.
    pub fn marked(&self) -> Vec<NodeId> {
        let include = self.policy == IsolatedPolicy::Include;
        (0..self.adj.len() as NodeId)
            .filter(|&v| self.marks[v as usize] > 0 || (include && self.adj[v as usize].is_empty()))
            .collect()
    }

    pub fn size(&self) -> usize {
        let include = self.policy == IsolatedPolicy::Include;
        self.marks
            .iter()
            .zip(&self.adj)
            .filter(|(&x, nbrs)| x > 0 || (include && nbrs.is_empty()))
            .count()
    }

    /// Snapshot of the current graph.
    pub fn to_graph(&self) -> Graph {
        let edges = self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| (u as NodeId) < v)
                .map(move |v| (u as NodeId, v))
        });
        Graph::from_edges(self.adj.len(), edges).with_labels(self.labels.clone())
    }

    pub fn apply_edge(&mut self, op: EdgeOp, u: NodeId, v: NodeId) -> Result<UpdateOutcome> {
        for x in [u, v] {
            if x as usize >= self.adj.len() {
                return Err(Error::NodeOutOfRange {
                    node: x as u64,
                    n: self.adj.len(),
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match op {
            EdgeOp::Insert => {
                let pos_u = match self.adj[u as usize].binary_search(&v) {
                    Ok(_) => return Err(Error::EdgeExists(u, v)),
                    Err(p) => p,
                };
                self.adj[u as usize].insert(pos_u, v);
                let pos_v = self.adj[v as usize].binary_search(&u).unwrap_err();
                self.adj[v as usize].insert(pos_v, u);
                self.edges += 1;
            }
            EdgeOp::Delete => {
                let Ok(pos_u) = self.adj[u as usize].binary_search(&v) else {
                    return Err(Error::EdgeMissing(u, v));
                };
                if self.policy == IsolatedPolicy::Error {
                    for x in [u, v] {
                        if self.adj[x as usize].len() == 1 {
                            return Err(Error::IsolatedVertex(x));
                        }
                    }
                }
                self.adj[u as usize].remove(pos_u);
                let pos_v = self.adj[v as usize].binary_search(&u).unwrap();
                self.adj[v as usize].remove(pos_v);
                self.edges -= 1;
            }
        }

        // After an insert the new lists contain the old ones. After a delete
        // the old lists are the new ones plus {u, v}, both already included.
        let affected: BTreeSet<NodeId> = [u, v]
            .into_iter()
            .chain(self.adj[u as usize].iter().copied())
            .chain(self.adj[v as usize].iter().copied())
            .collect();
        let changed = affected
            .iter()
            .copied()
            .filter(|&w| self.rechoose(w))
            .collect();
        Ok(UpdateOutcome {
            affected: affected.into_iter().collect(),
            changed,
        })
    }

    /// Recomputes `w`'s choice; returns whether it changed.
    fn rechoose(&mut self, w: NodeId) -> bool {
        let new = heaviest_by_degree(&self.adj, w, &self.tags);
        let old = self.choices[w as usize];
        if new == old {
            return false;
        }
        if let Some(o) = old {
            self.marks[o as usize] -= 1;
        }
        if let Some(c) = new {
            self.marks[c as usize] += 1;
        }
        self.choices[w as usize] = new;
        true
    }
}

/// One line of an update stream: `+ u v` or `- u v`, with node labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledUpdate {
    pub op: EdgeOp,
    pub u: String,
    pub v: String,
}

impl FromStr for LabeledUpdate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut it = s.split_whitespace();
        let op = match it.next() {
            Some("+") => EdgeOp::Insert,
            Some("-") => EdgeOp::Delete,
            other => return Err(format!("expected '+' or '-', found {other:?}")),
        };
        match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => Ok(Self {
                op,
                u: u.to_owned(),
                v: v.to_owned(),
            }),
            _ => Err(format!("expected '{op} u v', found {s:?}")),
        }
    }
}

/// Parses an update stream, skipping blank lines and `#`/`%` comments.
pub fn parse_updates(text: &str) -> Result<Vec<LabeledUpdate>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !(l.is_empty() || l.starts_with('#') || l.starts_with('%'))
        })
        .map(|(i, l)| l.parse().map_err(|e: String| Error::parse(i + 1, e)))
        .collect()
}
