//! Numerical invariants of rank-two bundles on threefolds `Z` carrying a
//! half-anticanonical line bundle `L` (so `L^2 = K_Z^-1`) whose generic pencil
//! cuts out an elliptic curve.
//!
//! Nothing here touches actual sheaves. Every operation acts on intersection
//! numbers, multiplicity vectors and slope profiles:
//!
//! * [`model`]: exact rationals, threefold data, rank-two Chern data, twists.
//! * [`riemann_roch`]: Euler characteristics and the rank/degree of the spectrum.
//! * [`spectrum`]: spectra, their admissibility constraints and cohomology tables.
//! * [`hn`]: Harder-Narasimhan polygons over finite (rank, degree) evidence.
//! * [`gm`]: the family invariant `d(W)` and Grauert-Mulich splitting types.

pub mod gm;
pub mod hn;
pub mod model;
pub mod rational;
pub mod riemann_roch;
pub mod spectrum;

pub use rational::Rational;
