//! Simulation of two-qutrit entangled states under correlated amplitude
//! damping, with weak-measurement and environment-assisted protection
//! protocols, closed-form cross-checks, and deterministic parameter sweeps.
//!
//! Composite basis ordering throughout: |ij> lives at index 3*i + j, so the
//! nine two-qutrit kets run |00>, |01>, |02>, |10>, ..., |22>.

pub mod analytic;
pub mod channels;
pub mod error;
pub mod linalg;
pub mod protection;
pub mod states;
pub mod svg;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use states::{StateAmplitudes, StateClass};
