//! Ternary-matrix SAT toolkit.
//!
//! A CNF formula is held as a `V x C` matrix of `T`/`F`/`U` cells. On top
//! of that sit an exact (exponential) path-set semantics, a polynomial
//! object search that intersects disjoint clause covers, a brute-force
//! oracle, a seeded instance generator, DIMACS I/O and a benchmark
//! harness.

pub mod bench;
pub mod cli;
mod error;
pub mod explain;
pub mod gen;
pub mod io;
pub mod model;
pub mod oracle;
pub mod pathsem;
pub mod sample;
pub mod solver;

pub use error::{Error, Result};
pub use model::{Assignment, Cell, Column, FillPolicy, Problem};
pub use pathsem::{PathSemantics, PathSet};
pub use solver::{
    inverse_cover, overlap, sat_cover, solve, verify_model, Outcome, ResumeMode, SeedMode,
    Solution, SolveStats, SolverConfig,
};
