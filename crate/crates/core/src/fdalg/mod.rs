//! Finite-dimensional algebras over `F_p` and free algebras over `Z`: radicals, socles,
//! modules, projective resolutions and Ext, invariant bilinear forms, and integral Ext.

mod battery;
mod ext;
mod forms;
mod integral;
mod module;
mod radical;
mod split;

pub use battery::{gorenstein_battery, BatteryConfig, BatteryModule, BatteryReport, ExtEntry, SelfInjectivityEntry};
pub use ext::{ext_dim, ext_dim_with, is_self_injective, GeneratorOrder, Resolution, DEFAULT_RESOLUTION_CAP, FREE_DIM_CAP};
pub use forms::{sigma_is_bimodule_map, symmetric_form_space, unit_retraction_exists, Decision, FormSpace, FORM_SPACE_DIM_CAP};
pub use integral::{integral_ext, rees_reduction_check, ExtGroup, IntegralResolution, ReesCheck, INTEGRAL_RANK_CAP};
pub use module::{corner_projective, hom_dim, semisimple_top, LeftModule};
pub use radical::{is_semisimple, left_annihilated_by, nilpotency_index, radical, socle_left};
