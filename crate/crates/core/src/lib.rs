//! Reputational cheap talk with an algorithmic advisor.
//!
//! A worker of unknown skill sees a private signal and an algorithm's signal
//! about a binary state, then reports a forecast to a manager who updates on
//! the worker's skill after the state is revealed. The crate computes the
//! unique informative equilibrium, where the low-skill worker overrides a
//! more accurate algorithm with positive probability, along with the
//! comparative statics and forecast-accuracy quantities derived from it, and
//! an independent verification layer (exhaustive strategy scan, Monte Carlo
//! simulation, and sign checks of the supporting inequalities).
//!
//! The crate is `no_std` and only needs `alloc` for result lists.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod equilibrium;
mod error;
pub mod grid;
pub mod model;
pub mod verify;

pub use error::{Error, Result, Violation};
pub use model::ModelParams;
