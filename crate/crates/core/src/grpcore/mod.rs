//! Finite groups as multiplication tables, their subgroups and conjugacy classes of subgroups.

mod group;
mod spec;
mod subgroup;

pub use group::{Group, DEFAULT_ORDER_CAP};
pub use spec::GroupSpec;
pub use subgroup::{
    double_cosets, is_prime, is_square_free, prime_factors, prime_power_base, Subgroup, SubgroupClass,
    SubgroupClassTable,
};
