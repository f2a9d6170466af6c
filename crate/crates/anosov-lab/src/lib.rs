//! Numerical laboratory for linear representations of word-hyperbolic
//! groups: geodesic combinatorics, Cartan/Jordan spectra, limit curves,
//! critical exponents and box-counting dimensions.
//!
//! Start from the runnable examples (`cargo run --release --example ...`),
//! one per capability; the `anosov-lab` binary exposes the same pipelines
//! as subcommands.

pub mod anosov;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exponents;
pub mod group;
pub mod hausdorff;
pub mod limitset;
pub mod replin;
pub mod svg;
