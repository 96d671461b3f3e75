//! Run configuration: JSON file merged with command-line overrides.

use serde::{Deserialize, Serialize};

use phasespace_core::battery::default_battery;
use phasespace_core::inequality::{RelationId, SuiteConfig};
use phasespace_core::{Ext, StateKind};

use crate::CliError;

/// Grid extent: a number or the string "auto".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Extent {
    Fixed(f64),
    Auto(AutoTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AutoTag {
    #[serde(rename = "auto")]
    Auto,
}

impl Extent {
    pub fn auto() -> Self {
        Extent::Auto(AutoTag::Auto)
    }

    pub fn fixed(&self) -> Option<f64> {
        match self {
            Extent::Fixed(r) => Some(*r),
            Extent::Auto(_) => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s == "auto" {
            return Ok(Extent::auto());
        }
        s.parse::<f64>()
            .map(Extent::Fixed)
            .map_err(|_| CliError::config(format!("grid extent must be a number or \"auto\", got {s:?}")))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct GridSpec {
    #[serde(rename = "R")]
    pub r: Extent,
    #[serde(rename = "N")]
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { r: Extent::auto(), n: 256 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputSpec {
    pub dir: String,
    pub formats: Vec<Format>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { dir: ".".into(), formats: vec![Format::Json, Format::Table] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Bin,
    Json,
    Table,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "bin" => Ok(Format::Bin),
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            other => Err(CliError::config(format!(
                "unknown format {other:?}; expected csv|bin|json|table"
            ))),
        }
    }
}

/// The declarative run configuration. Every field has a default so a config
/// file is optional; flags override individual fields after loading.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// State descriptors, e.g. "vacuum", "fock:2", "coherent:0.7+0.2i".
    /// None = the default battery.
    pub states: Option<Vec<String>>,
    pub cutoff: usize,
    pub grid: GridSpec,
    /// Relation names; None = every relation the suite defines.
    pub relations: Option<Vec<String>>,
    pub q_lattice: Vec<Ext>,
    pub r_lattice: Vec<Ext>,
    pub output: OutputSpec,
}

impl Default for RunConfig {
    fn default() -> Self {
        let suite = SuiteConfig::default();
        RunConfig {
            states: None,
            cutoff: 63,
            grid: GridSpec::default(),
            relations: None,
            q_lattice: suite.q_lattice,
            r_lattice: suite.r_lattice,
            output: OutputSpec::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {path}: {e}")))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("invalid config {path}: {e}")))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid.n < 16 || self.grid.n % 2 != 0 {
            return Err(CliError::config(format!(
                "grid N = {} must be even and >= 16",
                self.grid.n
            )));
        }
        if self.q_lattice.is_empty() || self.r_lattice.is_empty() {
            return Err(CliError::config("q/r lattices must be non-empty".into()));
        }
        if let Some(states) = &self.states {
            if states.is_empty() {
                return Err(CliError::config("state list is empty".into()));
            }
        }
        Ok(())
    }

    /// Parsed state list (config order preserved; default battery if unset).
    pub fn resolve_states(&self) -> Result<Vec<StateKind>, CliError> {
        match &self.states {
            None => Ok(default_battery()),
            Some(list) => list
                .iter()
                .map(|d| StateKind::parse(d).map_err(CliError::from_core))
                .collect(),
        }
    }

    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            grid_points: self.grid.n,
            grid_half_extent: self.grid.r.fixed(),
            r_lattice: self.r_lattice.clone(),
            q_lattice: self.q_lattice.clone(),
        }
    }

    /// Relation list: names from the config expanded over the lattices, or
    /// every relation when unspecified.
    pub fn resolve_relations(&self) -> Result<Vec<RelationId>, CliError> {
        let suite = self.suite_config();
        let Some(names) = &self.relations else {
            return Ok(phasespace_core::inequality::default_relations(&suite));
        };
        let mut rels = Vec::new();
        for name in names {
            match name.as_str() {
                "entropy_relation" => {
                    rels.extend(self.r_lattice.iter().map(|&r| RelationId::EntropyRelation { r }))
                }
                "collision_case" => rels.push(RelationId::CollisionCase),
                "renyi_infty_case" => rels.push(RelationId::RenyiInftyCase),
                "p1_case" => {
                    rels.extend(self.q_lattice.iter().map(|&q| RelationId::P1Case { q }))
                }
                "p_infty_case" => rels.push(RelationId::PInftyCase),
                "wehrl_lieb" => rels.push(RelationId::WehrlLieb),
                "purity_norm_identity" => rels.push(RelationId::PurityNormIdentity),
                "convolution_identity" => rels.push(RelationId::ConvolutionIdentity),
                other => {
                    return Err(CliError::config(format!("unknown relation {other:?}")));
                }
            }
        }
        if rels.is_empty() {
            return Err(CliError::config("relation list is empty".into()));
        }
        Ok(rels)
    }
}
