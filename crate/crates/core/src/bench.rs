//! Multi-seed benchmark harness and report emission.
//!
//! A [`BenchSpec`] names instance files and the cross-product of refinement
//! counts and seeds to run. Every cell (instance, m) runs all seeds, checks each
//! solution before recording it, and reports the best and average size with
//! the average solve time. Failures are recorded per cell and the run
//! continues.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::engine::{IsolatedPolicy, Mode, RunConfig};
use crate::error::{Error, Result};
use crate::graph::{load_graph, Graph, GraphFormat, LoadOptions};
use crate::kdistance::{solve_kdistance, KConfig};
use crate::oracles::{is_k_dominating, is_total_dominating_non_isolated};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub name: String,
    pub path: PathBuf,
    /// Guessed from the file extension when absent.
    #[serde(default)]
    pub format: Option<GraphFormat>,
}

fn default_m_values() -> Vec<usize> {
    vec![0, 2, 5]
}

fn default_seeds() -> Vec<u64> {
    (1..=10).collect()
}

fn default_k() -> usize {
    1
}

fn default_isolated() -> IsolatedPolicy {
    IsolatedPolicy::Include
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSpec {
    pub instances: Vec<InstanceSpec>,
    #[serde(default = "default_m_values")]
    pub m_values: Vec<usize>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_k")]
    pub k: usize,
    /// Per-run limit on solve time. The solver is not interrupted; a run that
    /// overshoots marks its cell as failed and skips the remaining seeds.
    #[serde(default)]
    pub time_limit_s: Option<f64>,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default = "default_isolated")]
    pub isolated: IsolatedPolicy,
}

impl BenchSpec {
    pub fn new(instances: Vec<InstanceSpec>) -> Self {
        Self {
            instances,
            m_values: default_m_values(),
            seeds: default_seeds(),
            k: default_k(),
            time_limit_s: None,
            mode: Mode::Sequential,
            isolated: default_isolated(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let problem = if self.instances.is_empty() {
            "no instances"
        } else if self.m_values.is_empty() {
            "empty m_values"
        } else if self.seeds.is_empty() {
            "empty seed list"
        } else if self.k == 0 {
            "k must be at least 1"
        } else if self.time_limit_s.is_some_and(|t| t.is_nan() || t <= 0.0) {
            "time_limit_s must be positive"
        } else {
            return Ok(());
        };
        Err(Error::InvalidSpec(problem.to_owned()))
    }

    /// Parses TOML; relative instance paths are resolved against `base_dir`.
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Self> {
        let mut spec: Self = toml::from_str(text)?;
        for inst in &mut spec.instances {
            if inst.path.is_relative() {
                inst.path = base_dir.join(&inst.path);
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m_edges: usize,
    pub m: usize,
    pub k: usize,
    #[serde(rename = "Dmin")]
    pub dmin: Option<usize>,
    #[serde(rename = "Davg")]
    pub davg: Option<f64>,
    pub time_avg_s: Option<f64>,
    pub mode: Mode,
    #[serde(default)]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

/// Output formats for [`emit_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    Markdown,
}

impl ReportFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Self::Json,
            Some("md" | "markdown") => Self::Markdown,
            _ => Self::Csv,
        }
    }
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "md" | "markdown" | "markdown-table" => Ok(Self::Markdown),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

/// Solve one seed and verify the result before it may be recorded.
fn run_once(g: &Graph, cfg: &KConfig) -> std::result::Result<(usize, Duration), String> {
    let sol = solve_kdistance(g, cfg).map_err(|e| e.to_string())?;
    let valid = if cfg.k == 1 {
        is_total_dominating_non_isolated(g, &sol.marked)
    } else {
        is_k_dominating(g, &sol.marked, cfg.k, true)
    };
    if !valid {
        return Err(format!("seed {}: solution failed verification", sol.seed));
    }
    Ok((sol.size(), sol.elapsed))
}

fn run_cell(
    g: &Graph,
    spec: &BenchSpec,
    m: usize,
) -> std::result::Result<(usize, f64, f64), String> {
    let mut sizes = Vec::with_capacity(spec.seeds.len());
    let mut total = Duration::ZERO;
    for &seed in &spec.seeds {
        let base = RunConfig::new(seed, m)
            .with_mode(spec.mode)
            .with_isolated(spec.isolated);
        let (size, elapsed) = run_once(g, &KConfig::new(spec.k, base))?;
        if let Some(limit) = spec.time_limit_s {
            if elapsed.as_secs_f64() > limit {
                return Err(format!(
                    "seed {seed}: time limit {limit}s exceeded ({:.3}s)",
                    elapsed.as_secs_f64()
                ));
            }
        }
        sizes.push(size);
        total += elapsed;
    }
    let runs = sizes.len() as f64;
    let dmin = *sizes.iter().min().expect("seed list is nonempty");
    let davg = sizes.iter().sum::<usize>() as f64 / runs;
    Ok((dmin, davg, total.as_secs_f64() / runs))
}

/// Runs every (instance, m) cell over all seeds in sequence.
pub fn run_bench(spec: &BenchSpec) -> Result<BenchReport> {
    spec.validate()?;
    let mut rows = Vec::new();
    for inst in &spec.instances {
        let format = inst
            .format
            .unwrap_or_else(|| GraphFormat::from_path(&inst.path));
        let loaded = load_graph(&inst.path, &LoadOptions::new(format));
        for &m in &spec.m_values {
            let mut row = BenchRow {
                instance: inst.name.clone(),
                n: 0,
                m_edges: 0,
                m,
                k: spec.k,
                dmin: None,
                davg: None,
                time_avg_s: None,
                mode: spec.mode,
                error: None,
            };
            match &loaded {
                Err(e) => row.error = Some(e.to_string()),
                Ok(g) => {
                    row.n = g.node_count();
                    row.m_edges = g.edge_count();
                    match run_cell(g, spec, m) {
                        Ok((dmin, davg, t)) => {
                            row.dmin = Some(dmin);
                            row.davg = Some(davg);
                            row.time_avg_s = Some(t);
                        }
                        Err(e) => row.error = Some(e),
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(BenchReport { rows })
}

impl BenchReport {
    pub fn write_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }

    pub fn read_csv(reader: impl Read) -> Result<Self> {
        let rows = csv::Reader::from_reader(reader)
            .deserialize()
            .collect::<std::result::Result<Vec<BenchRow>, _>>()?;
        Ok(Self { rows })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_markdown(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        let mut out = String::from(
            "| instance | n | m_edges | m | k | Dmin | Davg | time_avg_s | mode | error |\n\
             |---|---|---|---|---|---|---|---|---|---|\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                r.instance,
                r.n,
                r.m_edges,
                r.m,
                r.k,
                opt(&r.dmin),
                opt(&r.davg),
                opt(&r.time_avg_s),
                r.mode,
                r.error.as_deref().unwrap_or("").replace('|', "\\|"),
            );
        }
        out
    }
}

pub fn emit_report(
    report: &BenchReport,
    format: ReportFormat,
    path: impl AsRef<Path>,
) -> Result<()> {
    if report.rows.is_empty() {
        return Err(Error::EmptyReport);
    }
    let path = path.as_ref();
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    match format {
        ReportFormat::Csv => report.write_csv(&mut file)?,
        ReportFormat::Json => file
            .write_all(report.to_json()?.as_bytes())
            .map_err(|e| Error::io(path, e))?,
        ReportFormat::Markdown => file
            .write_all(report.to_markdown().as_bytes())
            .map_err(|e| Error::io(path, e))?,
    }
    Ok(())
}
