//! Necessary conditions for the Gorenstein dichotomy of Mackey algebras, checked on a
//! configurable battery of test modules.

use serde::{Deserialize, Serialize};

use crate::algebra::CoefficientRing;
use crate::burncat::{mackey_algebra_capped, BurnsideCategory};
use crate::error::{input_err, Result};
use crate::grpcore::{is_square_free, prime_factors, Group, DEFAULT_ORDER_CAP};

use super::ext::is_self_injective;
use super::integral::{integral_ext, ExtGroup};
use super::module::{corner_projective, semisimple_top, LeftModule};

/// Test modules over `μ_{F_p}(G)`, pulled back to `μ_Z(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatteryModule {
    /// one-dimensional, `e_G` acting as 1
    Residue,
    /// `μ / rad μ`
    SemisimpleTop,
    /// `μ e_G`
    CornerProjective,
}

impl BatteryModule {
    pub fn name(self) -> &'static str {
        match self {
            BatteryModule::Residue => "residue",
            BatteryModule::SemisimpleTop => "semisimple-top",
            BatteryModule::CornerProjective => "corner-projective",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatteryConfig {
    pub modules: Vec<BatteryModule>,
    /// lowest degree checked for vanishing
    pub min_degree: usize,
    /// highest degree checked for vanishing
    pub max_degree: usize,
    /// group order cap for the Mackey algebra
    pub cap: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            modules: vec![BatteryModule::Residue, BatteryModule::SemisimpleTop, BatteryModule::CornerProjective],
            min_degree: 2,
            max_degree: 2,
            cap: DEFAULT_ORDER_CAP,
        }
    }
}

impl BatteryConfig {
    pub fn from_json(text: &str) -> Result<BatteryConfig> {
        let c: BatteryConfig = serde_json::from_str(text).map_err(|e| input_err!("battery config: {e}"))?;
        if c.min_degree == 0 || c.min_degree > c.max_degree {
            return Err(input_err!("battery config: need 1 ≤ min_degree ≤ max_degree"));
        }
        Ok(c)
    }

    pub fn with_bound(mut self, bound: usize) -> BatteryConfig {
        self.max_degree = bound.max(self.min_degree);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtEntry {
    pub p: u64,
    pub module: BatteryModule,
    pub module_dim: usize,
    pub degree: usize,
    pub ext: ExtGroup,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfInjectivityEntry {
    pub p: u64,
    pub self_injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    pub group: String,
    pub order: usize,
    pub square_free: bool,
    /// integral Ext into `μ_Z(G)`, for square-free orders
    pub ext: Vec<ExtEntry>,
    /// self-injectivity of `μ_{F_p}(G)` for each `p` with `p² | |G|`
    pub self_injectivity: Vec<SelfInjectivityEntry>,
    /// whether every expected vanishing or non-vanishing was observed
    pub holds: bool,
}

/// For square-free `|G|`, checks `Ext^i_{μ_Z(G)}(N, μ_Z(G)) = 0` for the configured modules,
/// primes dividing `|G|` and degrees. Otherwise checks that `μ_{F_p}(G)` is not
/// self-injective for each `p` with `p² | |G|`.
pub fn gorenstein_battery(group: &Group, config: &BatteryConfig) -> Result<BatteryReport> {
    let order = group.order();
    let square_free = is_square_free(order as u64);
    let cat = BurnsideCategory::new(group);
    let muz = mackey_algebra_capped(&cat, CoefficientRing::Integers, config.cap)?;
    let e = muz.idempotent(cat.table().whole_class());
    let (mut ext, mut self_injectivity) = (Vec::new(), Vec::new());
    for p in prime_factors(order as u64) {
        let mup = muz.algebra().reduce_mod(CoefficientRing::PrimeField(p));
        if !square_free {
            if (order as u64) % (p * p) == 0 {
                self_injectivity.push(SelfInjectivityEntry { p, self_injective: is_self_injective(&mup)? });
            }
            continue;
        }
        for &module in &config.modules {
            let n = match module {
                BatteryModule::Residue => LeftModule::residue(&mup, e)?,
                BatteryModule::SemisimpleTop => semisimple_top(&mup)?,
                BatteryModule::CornerProjective => corner_projective(&mup, e)?,
            };
            for degree in config.min_degree..=config.max_degree {
                let group = integral_ext(muz.algebra(), &n, degree)?;
                ext.push(ExtEntry { p, module, module_dim: n.dim(), degree, vanishes: group.is_zero(), ext: group });
            }
        }
    }
    let holds = ext.iter().all(|x| x.vanishes) && self_injectivity.iter().all(|x| !x.self_injective);
    Ok(BatteryReport { group: group.name().to_string(), order, square_free, ext, self_injectivity, holds })
}
