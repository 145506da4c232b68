//! Network design in the flexible graph connectivity model.
//!
//! A graph's edges are split into *safe* edges (never fail) and *unsafe*
//! edges (any bounded number may fail). A `(p,q)` solution must stay
//! `p`-edge-connected after the removal of any `q` unsafe edges. This crate
//! implements approximation algorithms for the `(1,k)`, `(k,1)`, `(p,q)` and
//! capacitated `k`-connected variants, the exact feasibility checkers behind
//! them, and a brute-force oracle that certifies every approximation ratio
//! on desk-scale instances.
//!
//! All arithmetic on costs and dual values is exact (arbitrary-precision
//! rationals); there is no floating point in any algorithmic path.
//!
//! The `examples/` directory of this crate is the best entry point: each
//! runnable example exercises one capability end to end. A thin `fgc` binary
//! exposes the same operations on instance files.

pub mod arborescence;
pub mod cuts;
pub mod format;
pub mod gen;
pub mod graph;
pub mod joins;
pub mod mincut;
pub mod oracle;
pub mod primal_dual;
pub mod rational;
pub mod simplex;
pub mod solvers;

pub mod cli;

pub use graph::{CutSide, EdgeId, EdgeLabel, EdgeRecord, EdgeSpec, GraphError, MultiGraph};
pub use rational::{rat, ratio, Rational};
pub use solvers::{
    CapEcssInstance, FgcInstance, SolveError, SolveReport, SolverConfig,
};
