//! Statevector simulation of Grover search, the Deutsch-Jozsa algorithm and
//! the quantum order-finding subroutine of Shor's algorithm, with coherence
//! (relative entropy and l1-norm) tracked at every step.
//!
//! The crate is `no_std` (with `alloc`); all IO and the CLI live in the
//! companion `cohsim-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coherence;
pub mod dj;
pub mod error;
mod fourier;
pub mod grover;
pub mod modarith;
pub mod order;
pub mod state;

pub use coherence::CoherencePair;
pub use error::Error;
pub use state::StateVector;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
