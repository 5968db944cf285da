//! Generalized binomial distributions attached to the spherical Landau levels.
//!
//! The crate is split the same way the mathematics is:
//!
//! * [`specfun`] evaluates Jacobi polynomials (negative integer parameters
//!   included), terminating `2F1` sums and log-factorials.
//! * [`gbd`] is the distribution `B(2B, mu, m)` itself: pmf, cdf, inverse
//!   transform sampling, moments, characteristic functions and the
//!   photon-statistics regime classifier.
//! * [`sphere`] holds the geometric side: the eigenbasis `h_j`, norms,
//!   reproducing kernel, generalized coherent states and the quadrature
//!   checks of the resolution of identity.
//! * [`verify`] bundles the invariant suites that the CLI and the
//!   acceptance tests run over parameter grids.

pub mod error;
pub mod gbd;
pub mod quadrature;
pub mod specfun;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};
pub use gbd::{GbdParams, MomentSummary, PmfTable, Regime, RegimeBoundary};
pub use sphere::{CoherentStateCoeffs, EigenspaceSpec, SpherePoint};
