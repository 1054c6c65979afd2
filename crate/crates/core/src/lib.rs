//! Construction and analysis of QC-LDPC codes by lifting a single base
//! exponent matrix.
//!
//! The crate covers:
//!
//! - exponent matrices, their mother matrices, and expansion into binary
//!   parity-check matrices built from circulant permutation blocks
//!   ([`matrix`]);
//! - enumeration of exponent chains (closed backtrack-free walks in the
//!   mother matrix's Tanner graph), the cycle census and girth, plus an
//!   independent BFS girth oracle ([`cycles`]);
//! - the floor, modulo and floor-scale-modulo lifting transforms and
//!   admissible scale-value families ([`lift`]);
//! - exhaustive search for scale values that maximize girth and minimize the
//!   number of shortest cycles ([`search`]);
//! - exact-arithmetic verification of the probabilistic model behind the
//!   lifting transforms ([`theory`]);
//! - a scriptable command-line interface ([`cli`]).

pub mod cli;
pub mod cycles;
pub mod error;
pub mod lift;
pub mod matrix;
pub mod search;
pub mod theory;

pub use cycles::{census, enumerate_chains, graph_girth, shortest_cycles, CycleCensus, Girth};
pub use error::{Error, Result};
pub use lift::{admissible_scales, floor_lift, fsm_lift, modulo_lift, LiftMethod, LiftSpec};
pub use matrix::{alternating_sum_is_cycle, BinaryParityMatrix, ExponentMatrix, MotherMatrix};
pub use search::{build_schedule, search_optimal_r, CandidateSet, LiftSchedule};
pub use theory::{TheoryParams, TheoryReport};
