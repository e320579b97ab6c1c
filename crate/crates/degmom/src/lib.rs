//! Graph IO, experiment drivers and reports around `degmom_core`.

pub mod bounds;
pub mod distinguish;
pub mod experiment;
pub mod io;
pub mod params;
