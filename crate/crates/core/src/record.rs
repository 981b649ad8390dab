//! JSON form of a solution, as written by `localds solve` and read back by
//! `localds verify`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::{Mode, Solution};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub instance: String,
    pub n: usize,
    pub m_edges: usize,
    pub seed: u64,
    pub m: usize,
    pub k: usize,
    pub mode: Mode,
    pub size: usize,
    pub rounds: usize,
    pub messages: u64,
    pub elapsed_s: f64,
    /// Dense node ids; omitted for large graphs unless requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<NodeId>>,
}

impl SolutionRecord {
    pub fn new(instance: impl Into<String>, g: &Graph, s: &Solution, emit_marked: bool) -> Self {
        Self {
            instance: instance.into(),
            n: g.node_count(),
            m_edges: g.edge_count(),
            seed: s.seed,
            m: s.m,
            k: s.k,
            mode: s.mode,
            size: s.size(),
            rounds: s.rounds,
            messages: s.messages,
            elapsed_s: s.elapsed.as_secs_f64(),
            marked: emit_marked.then(|| s.marked.clone()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
