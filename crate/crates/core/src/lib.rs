//! Collatz representations of rationals with odd numerator and denominator.
//!
//! Running `a -> (3a + 1) / 2^v` on such a rational and recording the powers
//! `v` gives an infinite sequence of positive integers, its Collatz
//! representation. Eventually periodic representations invert in closed form.
//! On top of that the crate provides:
//!
//! - the points `P(A) = (C^{-1}[A,(2)], C^{-1}[A,(1)])` and the graphs they form,
//! - a greedy procedure approximating any rational `z <= -1` by values whose
//!   representation uses only 1's and 2's,
//! - a search for absolutely periodic integers.
//!
//! All arithmetic is exact.

pub mod approx;
pub mod cycles;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod inversion;
pub mod rational;
pub mod seq;
pub mod verify;

pub use approx::{approximate, digits_of, ApproxResult, RoundRecord};
pub use cycles::{find_absolute_loops, LoopReport, LoopSearch};
pub use emit::{emit, Format, Viewport};
pub use error::{Error, Result};
pub use geometry::{fractal_graph, periodic_value_via_line, point_of, FractalGraph, Point};
pub use inversion::{invert, invert_cycle};
pub use rational::{
    collatz_step, inverse_step, parse_rational, two_adic_valuation, OddRational, PartialQuotient,
};
pub use seq::{represent, seq_equal, EventuallyPeriodicSeq, FiniteSeq, Representation};
