//! Total 7-colorings of plane graphs with maximum degree 6.
//!
//! The crate covers a diamond-free, house-free class of such graphs (with a
//! short-cycle restriction at 6-vertices) in which every graph is totally
//! 7-colorable. It provides:
//!
//! - [`plane`]: plane graphs given by rotation systems, with traced faces;
//! - [`patterns`]: detectors for the class hypotheses;
//! - [`catalog`]: the reducible configurations and the master assignment;
//! - [`discharge`]: exact-rational discharging with an audit of final charges;
//! - [`coloring`]: total colorings, an exact solver and list-coloring helpers;
//! - [`colorer`]: the constructive 7-coloring by reduction and extension;
//! - [`forge`]: seeded generation of graphs in (and just outside) the class;
//! - [`format`]: the text formats for graphs and colorings.

pub mod catalog;
pub mod colorer;
pub mod coloring;
pub mod discharge;
pub mod forge;
pub mod format;
pub mod patterns;
pub mod plane;

pub use catalog::{find_any_reducible, find_matches, ConfigurationKind, ConfigurationMatch};
pub use colorer::{color7, ColorError};
pub use coloring::{is_valid, Color, TotalColoring};
pub use patterns::{hypothesis_report, HypothesisReport};
pub use plane::{PlaneError, PlaneGraph};
