//! Discrete wave equation on finite graphs.
//!
//! - [`graph`]: discrete graphs, vertex roles, lattice index maps and the text format.
//! - [`lattice`]: explicit time stepping under the nodal-mass family of vertex
//!   conditions, discrete energies and the action.
//! - [`closed_form`]: characteristic solution formulas on the interval and the 3-star.
//! - [`control`]: boundary shape control on the 3-star.
//! - [`experiment`]: scattering tables and transmission/reflection measurements.
//! - [`io`]: CSV formats for trajectories, controls, targets and residual reports.

pub mod closed_form;
pub mod control;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod io;
pub mod lattice;

pub use error::{Error, Result};
