//! The `k = 4` construction.
//!
//! Five layers `L_1..L_5` plus one prime copy `L'_3` and the hubs. By default
//! `L'_3` keeps the coordinate arrays satisfying at least 5 of the 6 hit
//! conditions on `(a_1, b_4)`; the relaxed variant admits every array. On NO
//! instances the diameter is at most 4, on YES instances the witness pair is
//! at distance at least 7.

use super::build::{build_impl, BuildOptions, ReductionGraph};
use super::table::LpRule;
use super::BuildError;
use crate::kov::OvInstance;

pub use super::table::l3p_condition_count;

/// Options specific to the `k = 4` build.
#[derive(Debug, Clone, Copy, Default)]
pub struct K4Options {
    /// Drop the 5-of-6 membership constraint on `L'_3`.
    pub l3p_unconstrained: bool,
}

/// Builds the `k = 4` reduction graph for an augmented 4-OV instance.
pub fn build_k4(
    inst: &OvInstance,
    k4: K4Options,
    opts: &BuildOptions,
) -> Result<ReductionGraph, BuildError> {
    let rule = if k4.l3p_unconstrained {
        LpRule::AllArrays
    } else {
        LpRule::FiveOfSix
    };
    build_impl(inst, 4, rule, opts)
}
