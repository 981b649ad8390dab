//! Set cover by the same marking scheme: every element picks the heaviest
//! subset containing it, starting from weight `|A_j| + r_j` and then
//! `x_j + r_j` for `m` refinement rounds, where `x_j` counts the elements that
//! picked subset `j` last round. The picked subsets always form a cover.

use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::engine::RunConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tags::{Tags, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    n_elements: usize,
    subsets: Vec<Vec<u32>>,
    /// element -> ids of subsets containing it
    membership: Vec<Vec<u32>>,
}

impl SetSystem {
    /// Builds the system; elements are `0..n_elements`. Duplicate elements in a
    /// subset are merged. Fails if an element lies in no subset.
    pub fn new(n_elements: usize, subsets: Vec<Vec<u32>>) -> Result<Self> {
        let mut membership = vec![Vec::new(); n_elements];
        let mut clean = Vec::with_capacity(subsets.len());
        for (j, mut s) in subsets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            for &e in &s {
                let slot = membership
                    .get_mut(e as usize)
                    .ok_or(Error::NodeOutOfRange {
                        node: e as u64,
                        n: n_elements,
                    })?;
                slot.push(j as u32);
            }
            clean.push(s);
        }
        if let Some(e) = membership.iter().position(Vec::is_empty) {
            return Err(Error::Uncovered(e as u32));
        }
        Ok(Self {
            n_elements,
            subsets: clean,
            membership,
        })
    }

    /// Closed neighborhoods of `g` as subsets: a cover is a dominating set.
    pub fn closed_neighborhoods(g: &Graph) -> Result<Self> {
        Self::new(
            g.node_count(),
            g.nodes()
                .map(|v| {
                    let mut s: Vec<u32> = g.neighbors(v).to_vec();
                    s.push(v);
                    s
                })
                .collect(),
        )
    }

    pub fn n_elements(&self) -> usize {
        self.n_elements
    }

    pub fn n_subsets(&self) -> usize {
        self.subsets.len()
    }

    pub fn subset(&self, j: u32) -> &[u32] {
        &self.subsets[j as usize]
    }

    pub fn containing(&self, e: u32) -> &[u32] {
        &self.membership[e as usize]
    }

    /// True when the union of `chosen` is every element.
    pub fn is_cover(&self, chosen: &[u32]) -> bool {
        let mut hit = vec![false; self.n_elements];
        for &j in chosen {
            for &e in &self.subsets[j as usize] {
                hit[e as usize] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}

/// Reads `n_elements n_subsets` followed by one line of element ids per
/// subset. Element ids in the file are 1-based. Blank lines and `#`/`%`
/// comments are skipped.
pub fn read_set_system(reader: impl BufRead) -> Result<SetSystem> {
    let mut header: Option<(usize, usize)> = None;
    let mut subsets = Vec::new();
    let mut last_line = 0;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = line.map_err(|e| Error::io("<input>", e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with(['#', '%']) {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(lineno, format!("expected an integer, found {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let Some((n, _)) = header else {
            let [n, s] = nums[..] else {
                return Err(Error::parse(lineno, "expected 'n_elements n_subsets'"));
            };
            header = Some((n, s));
            continue;
        };
        let subset = nums
            .into_iter()
            .map(|e| {
                if e == 0 || e > n {
                    Err(Error::parse(lineno, format!("element {e} outside 1..={n}")))
                } else {
                    Ok((e - 1) as u32)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        subsets.push(subset);
    }
    let (n, s) = header.ok_or(Error::EmptyGraph)?;
    if subsets.len() != s {
        return Err(Error::parse(
            last_line,
            format!("header declares {s} subsets, found {}", subsets.len()),
        ));
    }
    SetSystem::new(n, subsets)
}

pub fn load_set_system(path: impl AsRef<Path>) -> Result<SetSystem> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_set_system(std::io::BufReader::new(file))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSolution {
    /// Picked subset ids, sorted.
    pub chosen: Vec<u32>,
    pub m: usize,
    pub seed: u64,
    pub rounds: usize,
}

impl CoverSolution {
    pub fn size(&self) -> usize {
        self.chosen.len()
    }
}

fn pick_all(sys: &SetSystem, base: &[u64], tags: &Tags) -> Vec<u32> {
    sys.membership
        .iter()
        .map(|containing| {
            containing
                .iter()
                .map(|&j| Weight::new(base[j as usize], tags.get(j), j))
                .max()
                .expect("every element lies in some subset")
                .id
        })
        .collect()
}

pub fn solve_setcover(sys: &SetSystem, cfg: &RunConfig) -> CoverSolution {
    let tags = Tags::from_seed(cfg.seed, sys.n_subsets());
    solve_setcover_with_tags(sys, cfg, &tags)
}

/// Tags are indexed by subset id.
pub fn solve_setcover_with_tags(sys: &SetSystem, cfg: &RunConfig, tags: &Tags) -> CoverSolution {
    assert_eq!(tags.len(), sys.n_subsets(), "one tag per subset");
    let sizes: Vec<u64> = sys.subsets.iter().map(|s| s.len() as u64).collect();
    let mut picks = pick_all(sys, &sizes, tags);
    for _ in 0..cfg.m {
        let mut x = vec![0u64; sys.n_subsets()];
        for &j in &picks {
            x[j as usize] += 1;
        }
        picks = pick_all(sys, &x, tags);
    }
    picks.sort_unstable();
    picks.dedup();
    CoverSolution {
        chosen: picks,
        m: cfg.m,
        seed: cfg.seed,
        rounds: 2 + cfg.m,
    }
}
