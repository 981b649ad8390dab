//! Immutable simple undirected graphs in compressed adjacency form, plus the
//! text loaders used by the benchmark instances.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node index in `[0, n)`.
pub type NodeId = u32;

/// Counts of what normalization removed while building a graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationStats {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

/// Simple undirected graph. Adjacency lists are sorted, symmetric and free of
/// self-loops and duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    labels: Vec<String>,
    stats: NormalizationStats,
}

impl Graph {
    /// Builds a graph on `n` nodes labelled `0..n` from an edge iterator.
    /// Self-loops are dropped and repeated edges merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut builder = GraphBuilder::with_nodes(n);
        for (u, v) in edges {
            builder.add_edge(u, v);
        }
        builder.build()
    }

    /// Replaces the node labels.
    pub fn with_labels(self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.node_count());
        Self { labels, ..self }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        0..self.node_count() as NodeId
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Checked degree lookup.
    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check(v)?;
        Ok(self.neighbors(v).len())
    }

    pub fn max_degree(&self) -> usize {
        self.nodes()
            .map(|v| self.neighbors(v).len())
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.nodes()
            .map(|v| self.neighbors(v).len())
            .min()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Reverse label lookup. Linear scan; build a map for repeated queries.
    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as NodeId)
    }

    pub fn stats(&self) -> NormalizationStats {
        self.stats
    }

    /// All vertices of degree zero.
    pub fn isolated_vertices(&self) -> Vec<NodeId> {
        self.nodes()
            .filter(|&v| self.neighbors(v).is_empty())
            .collect()
    }

    /// `{u != v : dist(u, v) <= k}`, sorted ascending.
    pub fn khop_neighbors(&self, v: NodeId, k: usize) -> Result<Vec<NodeId>> {
        self.check(v)?;
        if k == 0 {
            return Err(Error::InvalidK);
        }
        let mut scratch = KHopScratch::new(self.node_count());
        let mut out = scratch.collect(self, v, k).to_vec();
        out.sort_unstable();
        Ok(out)
    }

    pub(crate) fn check(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v as u64,
                n: self.node_count(),
            })
        }
    }
}

/// Reusable state for depth-bounded BFS. Visited marks are epoch-stamped so
/// repeated queries do not clear the whole array.
#[derive(Clone, Debug)]
pub struct KHopScratch {
    stamp: Vec<u32>,
    epoch: u32,
    frontier: Vec<NodeId>,
    next: Vec<NodeId>,
    out: Vec<NodeId>,
}

impl KHopScratch {
    pub fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
            out: Vec::new(),
        }
    }

    /// Nodes within distance `k` of `v`, excluding `v`, in BFS order.
    pub fn collect(&mut self, g: &Graph, v: NodeId, k: usize) -> &[NodeId] {
        if self.stamp.len() < g.node_count() {
            self.stamp.resize(g.node_count(), 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        self.out.clear();
        self.frontier.clear();
        self.frontier.push(v);
        self.stamp[v as usize] = epoch;

        for _ in 0..k {
            self.next.clear();
            for &u in &self.frontier {
                for &w in g.neighbors(u) {
                    if self.stamp[w as usize] != epoch {
                        self.stamp[w as usize] = epoch;
                        self.next.push(w);
                    }
                }
            }
            if self.next.is_empty() {
                break;
            }
            self.out.extend_from_slice(&self.next);
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        &self.out
    }
}

/// Accumulates labelled nodes and edges, then normalizes into a [`Graph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    self_loops: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder pre-populated with nodes labelled `"0".."n-1"`.
    pub fn with_nodes(n: usize) -> Self {
        Self::with_numbered_nodes(n, 0)
    }

    fn with_numbered_nodes(n: usize, first: usize) -> Self {
        let mut b = Self::default();
        for i in 0..n {
            b.node((first + i).to_string());
        }
        b
    }

    /// Returns the dense id for `label`, creating it on first sight.
    pub fn node(&mut self, label: impl AsRef<str>) -> NodeId {
        let label = label.as_ref();
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len() as NodeId;
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Records an edge between dense ids. Self-loops are counted and dropped.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) {
        let n = self.labels.len() as NodeId;
        assert!(u < n && v < n, "edge ({u}, {v}) references unknown node");
        if u == v {
            self.self_loops += 1;
        } else {
            self.edges.push((u.min(v), u.max(v)));
        }
    }

    pub fn add_labeled_edge(&mut self, u: &str, v: &str) {
        let u = self.node(u);
        let v = self.node(v);
        self.add_edge(u, v);
    }

    pub fn build(mut self) -> Graph {
        let n = self.labels.len();
        let raw = self.edges.len();
        self.edges.sort_unstable();
        self.edges.dedup();
        let duplicate_edges = raw - self.edges.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &self.edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in &self.edges {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        Graph {
            offsets,
            targets,
            labels: self.labels,
            stats: NormalizationStats {
                self_loops: self.self_loops,
                duplicate_edges,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    /// `u v` per line; a lone token declares a node.
    #[serde(alias = "edge-list")]
    EdgeList,
    /// `e u v` lines with a `p <kind> n m` header, 1-based.
    Dimacs,
    /// Matrix Market coordinate pattern, 1-based.
    #[serde(alias = "matrix-market")]
    Mtx,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" | "edge-list" | "el" | "txt" => Ok(Self::EdgeList),
            "dimacs" => Ok(Self::Dimacs),
            "mtx" | "matrix-market" | "mm" => Ok(Self::Mtx),
            other => Err(format!(
                "unknown graph format {other:?} (expected edgelist, dimacs or mtx)"
            )),
        }
    }
}

impl GraphFormat {
    /// Guesses the format from a file extension, defaulting to edge list.
    pub fn from_path(path: &Path) -> Self {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("mtx") => Self::Mtx,
            Some("dimacs" | "col" | "clq") => Self::Dimacs,
            _ => Self::EdgeList,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    pub format: GraphFormat,
    /// Accept arcs without their reverse. When false, a one-directional arc
    /// is a parse error.
    pub treat_directed_as_undirected: bool,
    pub comment_prefixes: Vec<char>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            format: GraphFormat::EdgeList,
            treat_directed_as_undirected: true,
            comment_prefixes: vec!['#', '%'],
        }
    }
}

impl LoadOptions {
    pub fn new(format: GraphFormat) -> Self {
        Self {
            format,
            ..Self::default()
        }
    }
}

pub fn load_graph(path: impl AsRef<Path>, opts: &LoadOptions) -> Result<Graph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_graph(BufReader::new(file), opts).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

pub fn read_graph(reader: impl BufRead, opts: &LoadOptions) -> Result<Graph> {
    let mut builder = None;
    let mut arcs = Vec::new();
    let mut dims_seen = false;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::io("<input>", e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with(opts.comment_prefixes.as_slice()) {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();

        match opts.format {
            GraphFormat::EdgeList => {
                let b = builder.get_or_insert_with(GraphBuilder::new);
                match tokens.as_slice() {
                    [single] => {
                        b.node(single);
                    }
                    [u, v, ..] => {
                        let (u, v) = (b.node(u), b.node(v));
                        arcs.push((u, v, lineno));
                    }
                    [] => unreachable!(),
                }
            }
            GraphFormat::Mtx => {
                if !dims_seen {
                    let [rows, cols, ..] = tokens.as_slice() else {
                        return Err(Error::parse(lineno, "expected 'rows cols nnz' size line"));
                    };
                    let rows = parse_count(rows, lineno)?;
                    let cols = parse_count(cols, lineno)?;
                    builder = Some(GraphBuilder::with_numbered_nodes(rows.max(cols), 1));
                    dims_seen = true;
                    continue;
                }
                let b = builder.as_mut().unwrap();
                let [u, v, ..] = tokens.as_slice() else {
                    return Err(Error::parse(lineno, "expected 'row col' entry"));
                };
                arcs.push((
                    parse_one_based(u, b.node_count(), lineno)?,
                    parse_one_based(v, b.node_count(), lineno)?,
                    lineno,
                ));
            }
            GraphFormat::Dimacs => match tokens.as_slice() {
                ["c", ..] => {}
                ["p", _, n, ..] => {
                    if dims_seen {
                        return Err(Error::parse(lineno, "duplicate 'p' line"));
                    }
                    builder = Some(GraphBuilder::with_numbered_nodes(
                        parse_count(n, lineno)?,
                        1,
                    ));
                    dims_seen = true;
                }
                ["e", u, v, ..] => {
                    let Some(b) = builder.as_mut() else {
                        return Err(Error::parse(lineno, "edge before 'p' line"));
                    };
                    arcs.push((
                        parse_one_based(u, b.node_count(), lineno)?,
                        parse_one_based(v, b.node_count(), lineno)?,
                        lineno,
                    ));
                }
                _ => return Err(Error::parse(lineno, format!("unrecognized line {line:?}"))),
            },
        }
    }

    let mut builder = builder.ok_or(Error::EmptyGraph)?;
    if !opts.treat_directed_as_undirected {
        check_symmetric(&arcs)?;
    }
    for (u, v, _) in arcs {
        builder.add_edge(u, v);
    }
    let g = builder.build();
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(g)
}

fn check_symmetric(arcs: &[(NodeId, NodeId, usize)]) -> Result<()> {
    let present: std::collections::HashSet<(NodeId, NodeId)> =
        arcs.iter().map(|&(u, v, _)| (u, v)).collect();
    match arcs
        .iter()
        .find(|&&(u, v, _)| u != v && !present.contains(&(v, u)))
    {
        Some(&(u, v, line)) => Err(Error::parse(
            line,
            format!("arc ({u}, {v}) has no reverse arc"),
        )),
        None => Ok(()),
    }
}

fn parse_count(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected a count, found {tok:?}")))
}

fn parse_one_based(tok: &str, n: usize, line: usize) -> Result<NodeId> {
    let i: usize = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a node index, found {tok:?}")))?;
    if i == 0 || i > n {
        return Err(Error::parse(
            line,
            format!("node index {i} outside 1..={n}"),
        ));
    }
    Ok((i - 1) as NodeId)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_list(text: &str) -> Result<Graph> {
        read_graph(text.as_bytes(), &LoadOptions::default())
    }

    #[test]
    fn duplicate_and_reversed_edges_merge() {
        let g = edge_list("1 2\n2 3\n3 1\n1 2").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        assert_eq!(g.stats().duplicate_edges, 1);
    }

    #[test]
    fn self_loop_dropped_node_kept() {
        let g = edge_list("5 5\n5 6").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(g.stats().self_loops, 1);
        assert!(g.isolated_vertices().is_empty());

        let g = edge_list("5 5").unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.isolated_vertices(), vec![0]);
    }

    #[test]
    fn declared_node_is_isolated() {
        let g = edge_list("1 2\n3\n").unwrap();
        let iso: Vec<_> = g.isolated_vertices().iter().map(|&v| g.label(v)).collect();
        assert_eq!(iso, ["3"]);
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let g = edge_list("# snap header\n% mm comment\n\n0 1\n1 2 0.5\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.label(0), "0");
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(edge_list("# nothing\n"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn matrix_market_pattern() {
        let text =
            "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n4 4 3\n2 1\n3 2\n4 3\n";
        let g = read_graph(text.as_bytes(), &LoadOptions::new(GraphFormat::Mtx)).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.label(3), "4");
    }

    #[test]
    fn matrix_market_index_out_of_range_reports_line() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n4 1\n";
        let err = read_graph(text.as_bytes(), &LoadOptions::new(GraphFormat::Mtx)).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn dimacs_keeps_declared_nodes() {
        let text = "c comment\np edge 5 2\ne 1 2\ne 2 3\n";
        let g = read_graph(text.as_bytes(), &LoadOptions::new(GraphFormat::Dimacs)).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.isolated_vertices(), vec![3, 4]);
    }

    #[test]
    fn dimacs_edge_before_header() {
        let err =
            read_graph("e 1 2\n".as_bytes(), &LoadOptions::new(GraphFormat::Dimacs)).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn bad_token_reports_line() {
        let err = read_graph(
            "p edge 3 1\ne 1 x\n".as_bytes(),
            &LoadOptions::new(GraphFormat::Dimacs),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn strict_undirected_rejects_one_way_arcs() {
        let opts = LoadOptions {
            treat_directed_as_undirected: false,
            ..LoadOptions::default()
        };
        assert!(read_graph("1 2\n2 1\n".as_bytes(), &opts).is_ok());
        assert!(read_graph("1 2\n2 3\n3 2\n".as_bytes(), &opts).is_err());
    }

    #[test]
    fn degrees() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(k4.nodes().all(|v| k4.degree(v).unwrap() == 3));
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(p5.degree(0).unwrap(), 1);
        assert!(matches!(p5.degree(5), Err(Error::NodeOutOfRange { .. })));
    }

    #[test]
    fn khop_on_path() {
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(p5.khop_neighbors(0, 2).unwrap(), vec![1, 2]);
        assert_eq!(p5.khop_neighbors(2, 1).unwrap(), p5.neighbors(2));
        assert!(matches!(p5.khop_neighbors(0, 0), Err(Error::InvalidK)));
        assert!(p5.khop_neighbors(9, 1).is_err());
    }

    #[test]
    fn khop_spider_center_reaches_all_legs() {
        // center 0, legs 0-1-2, 0-3-4, 0-5-6
        let spider = Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        assert_eq!(spider.khop_neighbors(0, 2).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(spider.khop_neighbors(2, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn format_names() {
        assert_eq!("mtx".parse::<GraphFormat>().unwrap(), GraphFormat::Mtx);
        assert_eq!(
            "edgelist".parse::<GraphFormat>().unwrap(),
            GraphFormat::EdgeList
        );
        assert!("gml".parse::<GraphFormat>().is_err());
        assert_eq!(
            GraphFormat::from_path(Path::new("a/frb.mtx")),
            GraphFormat::Mtx
        );
    }
}
