//! The guide in `book/` cannot pull in workspace crates when mdbook tests it, so each
//! chapter is included here and its snippets run as ordinary doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/burnside-rings.md")]
pub mod burnside_rings {}
#[doc = include_str!("../../../book/src/spans.md")]
pub mod spans {}
#[doc = include_str!("../../../book/src/mackey-algebras.md")]
pub mod mackey_algebras {}
#[doc = include_str!("../../../book/src/homological.md")]
pub mod homological {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
