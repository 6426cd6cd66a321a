//! Error types shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors produced by simulation and post-processing routines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Requested state exceeds the qubit guard.
    Capacity { qubits: usize, max: usize },
    /// Register selection is inconsistent with the state's layout.
    Layout(&'static str),
    /// Base not coprime to the modulus; carries gcd(x, N) > 1.
    InvalidBase { base: u64, modulus: u64, gcd: u64 },
    /// Input violates a numeric or structural precondition.
    Validation(String),
    /// Grover quantity requested for a searched set with no solutions.
    NoSolution,
    /// Function table violates the Deutsch-Jozsa promise.
    InvalidFunction(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Capacity { qubits, max } => {
                write!(f, "{qubits} qubits exceeds the capacity guard of {max}")
            }
            Error::Layout(msg) => write!(f, "register layout error: {msg}"),
            Error::InvalidBase { base, modulus, gcd } => {
                write!(f, "base {base} is not coprime to modulus {modulus} (gcd = {gcd})")
            }
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::NoSolution => write!(f, "operation undefined for zero solutions"),
            Error::InvalidFunction(msg) => write!(f, "invalid function: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
