//! Run configuration files.
//!
//! ```toml
//! model = "dihedral.toml"   # relative to the config file
//! radius = 8
//! n = 7
//! seed = 42
//!
//! [stages]
//! complex = false
//!
//! [geometry]
//! epsilon = 1
//! mode = "sampled"
//! samples = 5000
//! ```
//!
//! Every section is optional; see the field defaults below.

use std::path::{Path, PathBuf};

use relrips::group::{ModelFile, PeripheralDef};
use relrips::{GroupModel, PeripheralSpec};
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: PathBuf,
    pub radius: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cert_radius: Option<u32>,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Replaces the peripheral list of the model file when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peripheral: Option<Vec<PeripheralDef>>,
    #[serde(default)]
    pub stages: Stages,
    #[serde(default)]
    pub limits: Limits,
    #[serde(default)]
    pub complex: ComplexConfig,
    #[serde(default)]
    pub fineness: FinenessConfig,
    #[serde(default)]
    pub delta: DeltaConfig,
    #[serde(default)]
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub hulls: HullConfig,
    #[serde(default)]
    pub subgroups: SubgroupConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Stages {
    pub complex: bool,
    pub dismantle: bool,
    pub edge_search: bool,
    pub orbits: bool,
    pub fineness: bool,
    pub delta: bool,
    pub geometry: bool,
    pub hulls: bool,
    pub subgroups: bool,
    pub fixed_points: bool,
}

impl Default for Stages {
    fn default() -> Self {
        Stages {
            complex: true,
            dismantle: true,
            edge_search: false,
            orbits: true,
            fineness: true,
            delta: true,
            geometry: true,
            hulls: true,
            subgroups: true,
            fixed_points: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    pub ball_cap: usize,
    pub table_cap: usize,
    pub simplex_cap: usize,
    pub edge_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ball_cap: relrips::universe::DEFAULT_BALL_CAP,
            table_cap: relrips::universe::DEFAULT_TABLE_CAP,
            simplex_cap: 200_000,
            edge_budget: relrips::dismantle::DEFAULT_EDGE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ComplexConfig {
    pub d_max: usize,
}

impl Default for ComplexConfig {
    fn default() -> Self {
        ComplexConfig { d_max: relrips::complex::DEFAULT_DMAX }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FinenessConfig {
    pub circuit_length: usize,
    pub budget: u64,
}

impl Default for FinenessConfig {
    fn default() -> Self {
        FinenessConfig { circuit_length: 6, budget: 50_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeltaConfig {
    pub mode: Mode,
    pub samples: usize,
}

impl Default for DeltaConfig {
    fn default() -> Self {
        DeltaConfig { mode: Mode::Exhaustive, samples: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    pub epsilon: u32,
    /// `R`; estimated when absent.
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    /// `D`; taken as `max(D̂, ε)` when absent.
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    pub mode: Mode,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_case_budget: Option<u64>,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig { epsilon: 1, r: None, d: None, mode: Mode::Exhaustive, samples: 10_000, worst_case_budget: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct HullConfig {
    /// Smallest hull radius; `4·D` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_min: Option<u32>,
    /// Largest hull radius; `r_min + 4` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SubgroupConfig {
    pub max_order: usize,
}

impl Default for SubgroupConfig {
    fn default() -> Self {
        SubgroupConfig { max_order: 6 }
    }
}

/// Command-line overrides applied on top of a config file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub radius: Option<u32>,
    pub n: Option<u32>,
    pub d_max: Option<usize>,
    pub circuit_length: Option<usize>,
    pub delta_mode: Option<Mode>,
    pub seed: Option<u64>,
    pub epsilon: Option<u32>,
    pub r: Option<u32>,
    pub samples: Option<usize>,
    pub worst_case_budget: Option<u64>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        toml::from_str(text).map_err(|e| Failure::Validation(format!("config: {e}")))
    }

    /// Read a config file; a relative model path is resolved against the file's directory.
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if cfg.model.is_relative() {
            if let Some(dir) = path.parent() {
                cfg.model = dir.join(&cfg.model);
            }
        }
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.radius {
            self.radius = v;
        }
        if let Some(v) = o.n {
            self.n = v;
        }
        if let Some(v) = o.d_max {
            self.complex.d_max = v;
        }
        if let Some(v) = o.circuit_length {
            self.fineness.circuit_length = v;
        }
        if let Some(v) = o.delta_mode {
            self.delta.mode = v;
        }
        if let Some(v) = o.seed {
            self.seed = Some(v);
        }
        if let Some(v) = o.epsilon {
            self.geometry.epsilon = v;
        }
        if let Some(v) = o.r {
            self.geometry.r = Some(v);
        }
        if let Some(v) = o.samples {
            self.geometry.samples = v;
            self.geometry.mode = Mode::Sampled;
        }
        if let Some(v) = o.worst_case_budget {
            self.geometry.worst_case_budget = Some(v);
        }
        if let Some(v) = &o.output {
            self.output = Some(v.clone());
        }
    }

    fn sampling(&self) -> bool {
        (self.stages.delta && self.delta.mode == Mode::Sampled)
            || (self.stages.geometry && self.geometry.mode == Mode::Sampled)
    }

    pub fn validate(&self) -> Result<(), Failure> {
        let fail = |m: &str| Err(Failure::Validation(m.to_string()));
        if self.n == 0 {
            return fail("n must be at least 1");
        }
        if self.cert_radius.is_some_and(|c| c > self.radius) {
            return fail("cert_radius cannot exceed radius");
        }
        if self.complex.d_max == 0 {
            return fail("complex.d_max must be at least 1");
        }
        if self.fineness.circuit_length < 3 {
            return fail("fineness.circuit_length must be at least 3");
        }
        if self.geometry.epsilon == 0 || self.geometry.r == Some(0) {
            return fail("geometry.epsilon and geometry.R must be positive");
        }
        if self.geometry.d.is_some_and(|d| d < self.geometry.epsilon) {
            return fail("geometry.D must be at least geometry.epsilon");
        }
        if let (Some(lo), Some(hi)) = (self.hulls.r_min, self.hulls.r_max) {
            if lo > hi {
                return fail("hulls.r_min exceeds hulls.r_max");
            }
        }
        if self.subgroups.max_order == 0 {
            return fail("subgroups.max_order must be at least 1");
        }
        if self.sampling() && self.seed.is_none() {
            return fail("a seed is required when any stage samples");
        }
        Ok(())
    }

    /// Load and build the model, applying any peripheral override.
    pub fn load_model(&self) -> Result<(ModelFile, GroupModel, Vec<PeripheralSpec>), Failure> {
        let text = std::fs::read_to_string(&self.model)
            .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", self.model.display())))?;
        let mut file = ModelFile::parse(&text)?;
        if let Some(p) = &self.peripheral {
            file.peripheral = p.clone();
        }
        let (model, specs) = file.build()?;
        Ok((file, model, specs))
    }
}
