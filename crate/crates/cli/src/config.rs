//! TOML experiment configurations and their mapping onto core types.
//!
//! Groups and representations are specified by name and parameters, e.g.
//!
//! ```toml
//! [group]
//! kind = "symmetric"
//! m = 4
//!
//! [rep]
//! name = "permutation"
//! ```
//!
//! Every experiment config carries a mandatory seed; nothing is ever seeded
//! from the wall clock.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use equigap_core::group::{Group, Representation};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    /// cyclic | symmetric | dihedral | torus | product
    pub kind: String,
    pub m: Option<usize>,
    /// quadrature node count for torus groups
    pub nodes: Option<usize>,
    pub left: Option<Box<GroupConfig>>,
    pub right: Option<Box<GroupConfig>>,
}

impl GroupConfig {
    pub fn build(&self) -> Result<Group> {
        let group = match self.kind.as_str() {
            "cyclic" => Group::cyclic(self.m.context("cyclic group needs `m`")?)?,
            "symmetric" => Group::symmetric(self.m.context("symmetric group needs `m`")?)?,
            "dihedral" => Group::dihedral(self.m.context("dihedral group needs `m`")?)?,
            "torus" | "torus-so2" => {
                Group::torus_so2(self.nodes.context("torus group needs `nodes`")?)?
            }
            "product" => {
                let left = self.left.as_ref().context("product group needs `left`")?;
                let right = self.right.as_ref().context("product group needs `right`")?;
                Group::product(left.build()?, right.build()?)
            }
            other => bail!("unknown group kind {other:?}"),
        };
        Ok(group)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepConfig {
    /// permutation | reflection | rotation | trivial | direct-sum
    pub name: String,
    pub dim: Option<usize>,
    pub frequency: Option<u32>,
    pub left: Option<Box<RepConfig>>,
    pub right: Option<Box<RepConfig>>,
    /// When set, scales the matrix of the first non-identity element by this
    /// factor, producing a deliberately defective representation for
    /// exercising the verification failure path.
    pub corrupt_scale: Option<f64>,
}

impl RepConfig {
    pub fn build(&self, group: &Group) -> Result<Representation> {
        let rep = match self.name.as_str() {
            "permutation" => Representation::permutation(group)?,
            "reflection" => {
                Representation::reflection(group, self.dim.context("reflection needs `dim`")?)?
            }
            "rotation" => Representation::rotation(group, self.frequency.unwrap_or(1))?,
            "trivial" => Representation::trivial(group, self.dim.unwrap_or(1))?,
            "direct-sum" => {
                let (lg, rg) = match (&self.left, &self.right) {
                    (Some(l), Some(r)) => (l, r),
                    _ => bail!("direct-sum needs `left` and `right` representations"),
                };
                let parts = group_product_parts(group)
                    .context("direct-sum representation needs a product group")?;
                Representation::direct_sum(lg.build(&parts.0)?, rg.build(&parts.1)?)?
            }
            other => bail!("unknown representation name {other:?}"),
        };
        match self.corrupt_scale {
            Some(factor) => {
                let target = group
                    .elements()
                    .into_iter()
                    .nth(1)
                    .context("cannot corrupt a trivial group's representation")?;
                Ok(Representation::corrupted(rep, target, factor)?)
            }
            None => Ok(rep),
        }
    }
}

fn group_product_parts(group: &Group) -> Option<(Group, Group)> {
    group.product_parts()
}

fn default_tol() -> f64 {
    1e-10
}

fn default_pair_samples() -> usize {
    2000
}

fn default_trials() -> usize {
    20_000
}

fn default_oracle_trials() -> usize {
    50_000
}

fn default_sigma() -> f64 {
    1.0
}

fn default_radius() -> f64 {
    1.0
}

fn default_mc_points() -> usize {
    200
}

fn default_q_samples() -> usize {
    64
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyGroupConfig {
    pub group: GroupConfig,
    pub rep: RepConfig,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_pair_samples")]
    pub pair_samples: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetrizerConfig {
    pub group: GroupConfig,
    pub phi: RepConfig,
    /// Defaults to the trivial representation on R¹.
    pub psi: Option<RepConfig>,
    pub out: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapSweepConfig {
    pub group: GroupConfig,
    pub phi: RepConfig,
    pub psi: Option<RepConfig>,
    pub n: Option<usize>,
    pub n_values: Option<Vec<usize>>,
    #[serde(default = "default_sigma")]
    pub sigma_x: f64,
    #[serde(default = "default_sigma")]
    pub sigma_xi: f64,
    #[serde(default = "default_sigma")]
    pub theta_norm: f64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    pub seed: u64,
    pub out: PathBuf,
}

impl GapSweepConfig {
    pub fn sweep_values(&self) -> Result<Vec<usize>> {
        match (&self.n_values, self.n) {
            (Some(values), None) if !values.is_empty() => Ok(values.clone()),
            (None, Some(n)) => Ok(vec![n]),
            _ => bail!("specify exactly one of `n` or a non-empty `n_values`"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCell {
    pub n: usize,
    pub d: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OraclesConfig {
    #[serde(default)]
    pub wishart: Vec<OracleCell>,
    #[serde(default)]
    pub projection: Vec<OracleCell>,
    #[serde(default = "default_oracle_trials")]
    pub trials: usize,
    pub seed: u64,
    pub out: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NnTrainConfig {
    pub group: GroupConfig,
    /// Layer-boundary representations ψ₁..ψ_{L+1}; ψ₁ is the input rep.
    pub layers: Vec<RepConfig>,
    /// projected | regularised | plain
    pub mode: String,
    #[serde(default = "default_sigma")]
    pub lambda: f64,
    pub eta: f64,
    pub steps: usize,
    pub batch: usize,
    pub seed: u64,
    /// Monte Carlo points for the equivariance-error estimate.
    #[serde(default = "default_mc_points")]
    pub mc_points: usize,
    /// Inner group-average draws on continuous groups.
    #[serde(default = "default_q_samples")]
    pub q_samples: usize,
    /// Estimate the equivariance error every this many steps
    /// (0 = only on the final row).
    #[serde(default)]
    pub equiv_every: usize,
    /// Teacher label noise.
    #[serde(default)]
    pub noise: f64,
    pub out: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RademacherConfig {
    pub group: GroupConfig,
    pub phi: RepConfig,
    #[serde(default = "default_radius")]
    pub radius: f64,
    pub n: usize,
    pub mc_sigma: usize,
    pub mc_data: usize,
    pub seed: u64,
    pub out: PathBuf,
}

/// Parses a TOML config file into the given type.
pub fn load<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}
