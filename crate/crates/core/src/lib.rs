//! Burnside rings, spans of finite G-sets and Mackey algebras of small finite groups,
//! with exact checks of their ring-theoretic and homological properties.

mod error;

pub mod algebra;
pub mod grpcore;
pub mod burncat;
pub mod burnring;
pub mod fdalg;
pub mod gset;
pub mod linalg;

pub use error::{Error, Result};
