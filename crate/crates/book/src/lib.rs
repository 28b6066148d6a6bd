//! Book chapters compiled as doc-tests.
//!
//! mdbook cannot run snippets against a workspace crate, so each chapter is
//! included here as the docs of an empty module and `cargo test --doc` runs
//! them.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/lenz.md")]
pub mod lenz {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/sphere.md")]
pub mod sphere {}
#[doc = include_str!("../../../book/src/cover.md")]
pub mod cover {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
