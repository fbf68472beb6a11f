//! Exact linear algebra over `F_p` and `Z`.

pub mod fp;
pub mod int;

pub use fp::{Fp, FpMatrix, Subspace};
pub use int::{Int, Lattice};
