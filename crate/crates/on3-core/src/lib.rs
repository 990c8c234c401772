//! Combinatorial and analytic machinery of O(N)^3 random tensor models.
//!
//! The crate is organised around the pipeline of the quartic model:
//!
//! * [`graph`] — edge-colored graphs (bubbles and 4-colored Feynman graphs),
//!   faces, jackets, demigenus and the degree `omega`;
//! * [`melon`] — elementary melons of types I and II, reduction to core
//!   graphs, LO/NLO classification;
//! * [`census`] — exhaustive Wick-pairing censuses of vacuum graphs and the
//!   brute-force plane-tree oracle;
//! * [`series`] — exact rational arithmetic for the 2-point generating
//!   functions and their algebraic identities;
//! * [`crit`] — the characteristic equation, critical curve, coefficient
//!   asymptotics and exponent fits.
//!
//! Everything except [`crit`] is exact; `crit` is plain `f64` numerics with
//! residual checks. The crate is `no_std` (alloc required).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod census;
pub mod crit;
pub mod error;
pub mod graph;
pub mod melon;
pub mod series;

pub use error::Error;
pub use graph::EdgeColoredGraph;
