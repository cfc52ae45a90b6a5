//! Hard instances for directed unweighted Diameter, built from k-Orthogonal
//! Vectors, with exact verification of the promised diameter gap.
//!
//! The crate has five parts:
//!
//! * [`kov`] — k-OV instances: generation, brute-force decision, common-1
//!   coordinates.
//! * [`graph`] — CSR digraphs, BFS, exact diameter, ST-diameter, the folklore
//!   2-approximation, and a clique-aware BFS engine.
//! * [`reduction`] — the layered k-OV -> Diameter constructions (general
//!   `k >= 5` and the `k = 4` variant) with size accounting.
//! * [`witness`] — explicit short paths certifying the NO-case upper bound,
//!   independently of BFS.
//! * [`pipeline`] — end-to-end generate/build/measure runs producing gap
//!   reports, plus the file formats in [`files`].
//!
//! See the `examples/` directory for runnable entry points per capability,
//! and the `diamred` binary for the same operations as subcommands.

pub mod files;
pub mod graph;
pub mod kov;
pub mod pipeline;
pub mod reduction;
pub mod witness;
