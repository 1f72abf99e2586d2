//! Exact large-scale geometry on window-enumerable spaces.
//!
//! Everything here runs on `alloc` alone. Distances are exact rationals
//! (or `+inf`), subsets are symbolic [`SetExpr`] values, and every verdict
//! about infinite objects is a [`ScaleVerdict`] that states how far the
//! finite evidence reaches.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asdim;
pub mod asr;
pub mod coarse;
mod error;
pub mod maps;
mod natset;
mod num;
mod point;
pub mod separation;
pub mod spaces;
pub mod subsets;

pub use error::{Error, Result};
pub use natset::NatSet;
pub use num::{ceil_int, floor_int, int, ratio, ExtReal, Rational};
pub use point::Point;

pub use asr::{AsrModel, ProbeBudget, ScaleVerdict, Witness};
pub use maps::{MapDescriptor, PointMap};
pub use spaces::{SetExpr, Space};
