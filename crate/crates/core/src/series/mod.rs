//! Expansion machinery: Riccati-Bloch small- and large-distance series,
//! generating functions of the Bloch-type equation in the classical
//! coordinate `u = g r` (weak and strong coupling), the cubic closed forms
//! and coefficient recurrences, and the semiclassical phase functions.
//!
//! Everything with exact inputs runs over arbitrary-precision rationals;
//! floats appear only at final evaluation or when an input (an energy
//! coefficient known numerically) is itself a float.

pub mod cubic;
pub mod gb;
pub mod phases;
pub mod rational;
pub mod rb;

pub use cubic::{appendix_y_expansions, c_recurrences, YExpansion};
pub use gb::{gb_strong_corrections, gb_weak_corrections, GeneratingFunctionTable};
pub use phases::semiclassical_phases;
pub use rational::{FloatSeries, Rat, RatPoly, RatSeries};
pub use rb::{rb_large_v_series, rb_small_v_series, strong_small_u_series};
