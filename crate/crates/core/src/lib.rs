//! Agricultural growth diagnostics.
//!
//! Growth accounting of crop revenue, Törnqvist–Theil productivity indices,
//! market and comparative-advantage indicators, and a declarative
//! binding-constraint decision tree that turns those indicators into a
//! diagnostic report.
//!
//! - [`panel`]: loading and validating crop, input-output, price, land-use and cost tables
//! - [`growth_accounting`]: revenue-change decomposition
//! - [`productivity`]: chained output/input/TFP indices and growth rates
//! - [`market`]: price volatility, ratio series, share tables, land-use ratios
//! - [`cai`]: comparative advantage index
//! - [`diagnostics`]: decision-tree loading and evaluation
//! - [`pipeline`]: run configuration and artifact generation behind the CLI

pub mod cai;
pub mod diagnostics;
pub mod error;
pub mod format;
pub mod growth_accounting;
pub mod market;
pub mod panel;
pub mod pipeline;
pub mod productivity;

pub use error::{Error, Result};
