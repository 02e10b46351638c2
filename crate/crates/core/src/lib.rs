//! Exact unit-vector representations of strongly regular graphs.
//!
//! Parameter feasibility, exact rational linear algebra, graph ingestion and
//! representation checks, norm-2 lattice vectors, and a staged replay showing
//! that no srg(76,21,2,7) exists.

pub mod exactlin;
pub mod graphs;
pub mod params;
pub mod quadratic;
pub mod replay;
pub mod roots;

pub use exactlin::{fmt_rat, parse_rat, LinError, Rat, RatMatrix};
pub use graphs::{Graph, GraphError, MarkedCycle};
pub use params::{validate_params, FeasibilityReport, ParamsError, SrgParams};
pub use replay::{FinalVerdict, ReplayError, ReplayReport, StageVerdict};
pub use roots::{RootClassification, RootSet, RootsError};
