//! Incidence geometry of the projective plane over `F4`.
//!
//! The 42 vertices of the point–line incidence graph are the 21 points and
//! 21 lines of `P²(F4)`. Induced cycles and extended Dynkin subgraphs of this
//! graph are searched exhaustively, and the vertices around a configuration
//! are counted and identified.

pub mod config;
pub mod cycles;
pub mod diagram;
pub mod geometry;

pub use config::{
    analyze_config, cycle_case_split, find_affine_d, find_config, CaseSignature, ConfigAnalysis,
    ConfigSearch, Configuration, Split,
};
pub use cycles::{
    chordless_cycles, is_chordless_cycle, plain_cycle, plain_cycle_count, CycleSearch,
    PLAIN_COUNT_MAX,
};
pub use diagram::DiagramType;
pub use geometry::{build_plane, plane, IncidenceGraph, PlaneStats, Vertex};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("unrecognized subgraph: {0}")]
    Unrecognized(String),
    #[error("internal error: {0}")]
    Internal(String),
}
