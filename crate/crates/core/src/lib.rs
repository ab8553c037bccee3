//! Locally recoverable codes with `t` disjoint recovering sets: exact rate and
//! distance bounds, the recovering-graph procedures behind them, the classic
//! tightness constructions, and a brute-force oracle over small linear codes.

pub mod bounds;
pub mod code;
pub mod constructions;
pub mod coords;
pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod recovery;
pub mod search;

pub use bounds::{BoundReport, Rational};
pub use code::{LinearCode, MatrixForm, DEFAULT_GUARD};
pub use coords::CoordSet;
pub use error::{Error, Result};
pub use field::{Elem, Field};
pub use graph::{ColoredGraph, RecoveringGraph, ResidualGraph};
pub use matrix::Matrix;
pub use recovery::{LocalityTable, RecoveringFamily};
pub use search::{SweepFlag, SweepRanges, SweepRow};
