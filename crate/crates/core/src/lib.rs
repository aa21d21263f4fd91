//! Spectral toolkit for the D-dimensional radial anharmonic oscillator
//! `V(r) = a2 r^2 + a3 g r^3 + ... + am g^{m-2} r^m`.
//!
//! The crate computes low-lying energies and wavefunctions three independent
//! ways and cross-checks them:
//!
//! 1. variational optimization of a compact trial wavefunction whose phase
//!    interpolates the small-r, large-r, weak- and strong-coupling expansions
//!    ([`approximant`], [`variational`]),
//! 2. iterative perturbative corrections built from nested integrals over the
//!    trial weight ([`nonlinearization`]),
//! 3. a Lagrange-mesh eigensolver ([`mesh`]).
//!
//! [`series`] holds the exact-arithmetic expansion machinery (Riccati and
//! Bloch-type recursions, generating functions, semiclassical phases) and
//! [`strongcoupling`] the Symanzik-scaled strong-coupling pipelines.
//!
//! Units: `hbar = 1`, `M = 1/2` unless stated otherwise, so the radial
//! operator is `-(d^2/dr^2 + (D-1)/r d/dr) + V(r)` and the harmonic ground
//! state energy is `sqrt(a2) * D`.

pub mod approximant;
pub mod error;
pub mod interp;
pub mod mesh;
pub mod nonlinearization;
pub mod problem;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod strongcoupling;
pub mod variational;

pub use error::CoreError;
pub use problem::{Conventions, PotentialSpec, StateLabel};
pub use report::SpectralResult;
