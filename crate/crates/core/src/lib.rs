//! Exact colourful simplicial depth in low dimensions.
//!
//! * [`exact`] and [`geometry`]: rational arithmetic and sign predicates.
//! * [`config`] and [`io`]: validated configurations, documents, seeded
//!   generators.
//! * [`depth`]: depth enumeration, coverage, octahedron checks and the
//!   step-by-step lower-bound trace.
//! * [`systems`]: combinatorial vector systems, their parity properties and
//!   the minimum-system search.
//! * [`cli`]: the `csd` command line.

pub mod cli;
pub mod config;
pub mod depth;
pub mod exact;
pub mod geometry;
pub mod io;
pub mod systems;
