//! Symmetric graph Laplacians as reduced states of a vertex/arc pure state.
//!
//! A connected graph `G` on `n` vertices is mapped to a unit vector in
//! `H_V ⊗ H_V ⊗ H_V` whose vertex marginal is `𝓛/n`, the trace-normalized
//! symmetric Laplacian. The crate computes that state, its partial traces,
//! Von Neumann and Rényi entropies of the resulting density matrices, and
//! checks entropy bounds exhaustively over small connected graphs.
//!
//! Module map:
//!
//! * [`graph`]: graphs, families, bitmask enumeration
//! * [`linalg`]: dense symmetric matrices, Jacobi eigensolver, partial traces
//! * [`laplacian`]: `L`, `L⁺`, `𝓛`, `𝓛⁺`, incidence factorizations
//! * [`qstate`]: the pure state, `ρ_V`, `ρ_E`, partial-trace identities
//! * [`entropy`]: entropies, closed forms, majorization
//! * [`bounds`]: inequality checks and exhaustive scans
//! * [`findings`]: informational tabulations
//! * [`cli`]: the `symlap` command-line surface

pub mod bounds;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod findings;
pub mod graph;
pub mod laplacian;
pub mod linalg;
pub mod qstate;

pub use error::{Error, Result};
pub use graph::{Family, Graph};
