//! Experiment configuration files (TOML).
//!
//! ```toml
//! version = 1
//! name = "greedy-small"
//! algorithm = "greedy_maxcut"
//!
//! [graph]
//! kind = "gnp"
//! n = 12
//! p = 0.5
//!
//! [seeds]
//! count = 20
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use distcut::graph::{self, Graph};

use crate::algorithm::{Algorithm, Mode, Params};
use crate::HarnessError;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    pub name: String,
    pub algorithm: Algorithm,
    /// Must match the algorithm's model when given.
    #[serde(default)]
    pub mode: Option<Mode>,
    pub graph: GraphSpec,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub seeds: Seeds,
}

/// Where each run's graph comes from. Random generators are reseeded with
/// the run's seed, so every run sees a fresh instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Gnp {
        n: usize,
        p: f64,
        #[serde(default)]
        directed: bool,
    },
    Bipartite {
        n1: usize,
        n2: usize,
        p: f64,
    },
    EvenCycle {
        n: usize,
    },
    Cycle {
        n: usize,
        #[serde(default)]
        directed: bool,
    },
    Complete {
        n: usize,
    },
    Star {
        leaves: usize,
        #[serde(default)]
        directed: bool,
    },
    File {
        path: PathBuf,
    },
}

impl GraphSpec {
    pub fn build(&self, seed: u64) -> Result<Graph, HarnessError> {
        Ok(match self {
            GraphSpec::Gnp { n, p, directed } => graph::gen_gnp(*n, *p, seed, *directed)?,
            GraphSpec::Bipartite { n1, n2, p } => graph::gen_random_bipartite(*n1, *n2, *p, seed)?.graph,
            GraphSpec::EvenCycle { n } => graph::gen_even_cycle(*n)?,
            GraphSpec::Cycle { n, directed } => graph::cycle(*n, *directed)?,
            GraphSpec::Complete { n } => graph::complete(*n),
            GraphSpec::Star { leaves, directed } => graph::star(*leaves, *directed),
            GraphSpec::File { path } => read_graph(path)?,
        })
    }

    /// Short description used to group rows in summary tables.
    pub fn label(&self) -> String {
        let arrow = |d: bool| if d { "di" } else { "" };
        match self {
            GraphSpec::Gnp { n, p, directed } => format!("{}gnp(n={n},p={p})", arrow(*directed)),
            GraphSpec::Bipartite { n1, n2, p } => format!("bipartite({n1}+{n2},p={p})"),
            GraphSpec::EvenCycle { n } => format!("cycle(n={n})"),
            GraphSpec::Cycle { n, directed } => format!("{}cycle(n={n})", arrow(*directed)),
            GraphSpec::Complete { n } => format!("complete(n={n})"),
            GraphSpec::Star { leaves, directed } => format!("{}star(leaves={leaves})", arrow(*directed)),
            GraphSpec::File { path } => format!("file({})", path.display()),
        }
    }

    /// Orientation, when known without reading a file.
    pub fn directed(&self) -> Option<bool> {
        match self {
            GraphSpec::Gnp { directed, .. } | GraphSpec::Cycle { directed, .. } | GraphSpec::Star { directed, .. } => {
                Some(*directed)
            }
            GraphSpec::Bipartite { .. } | GraphSpec::EvenCycle { .. } | GraphSpec::Complete { .. } => Some(false),
            GraphSpec::File { .. } => None,
        }
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(path.to_path_buf(), e))?;
    Ok(Graph::from_edge_list(&text)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Seeds {
    /// Explicit seeds; overrides `count` and `base`.
    pub list: Option<Vec<u64>>,
    pub count: u64,
    pub base: u64,
}

impl Default for Seeds {
    fn default() -> Self {
        Seeds { list: None, count: 10, base: 0 }
    }
}

impl Seeds {
    pub fn values(&self) -> Vec<u64> {
        match &self.list {
            Some(list) => list.clone(),
            None => (self.base..self.base + self.count).collect(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(path.to_path_buf(), e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if self.version != CONFIG_VERSION {
            return bad(format!("unsupported config version {} (expected {CONFIG_VERSION})", self.version));
        }
        if let Some(mode) = self.mode {
            if mode != self.algorithm.mode() {
                return bad(format!(
                    "{} runs in {}, not {}",
                    self.algorithm,
                    self.algorithm.mode().label(),
                    mode.label()
                ));
            }
        }
        if let (Some(obj), Some(directed)) = (self.algorithm.objective(), self.graph.directed()) {
            if (obj == distcut::Objective::Dicut) != directed {
                let want = if directed { "an undirected" } else { "a directed" };
                return bad(format!("{} needs {want} graph", self.algorithm));
            }
        }
        let p = &self.params;
        if !(p.epsilon > 0.0 && p.epsilon < 1.0) {
            return bad(format!("epsilon must lie in (0, 1), got {}", p.epsilon));
        }
        if p.k.is_nan() || p.k <= 2.0 {
            return bad(format!("k must exceed 2, got {}", p.k));
        }
        if p.c == 0 {
            return bad("c must be positive".into());
        }
        if p.oracle_cap > distcut::oracle::ORACLE_CAP {
            return bad(format!("oracle_cap may not exceed {}", distcut::oracle::ORACLE_CAP));
        }
        if self.seeds.values().is_empty() {
            return bad("no seeds".into());
        }
        Ok(())
    }
}
