//! Command-line plumbing for occlearn: sample generators, bench manifests,
//! CSV reports and plots.

pub mod bench;
pub mod check;
pub mod gen;
pub mod manifest;
pub mod patterns;
pub mod svg;
