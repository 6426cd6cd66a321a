//! Deutsch-Jozsa driver: function tables, the phase-oracle + Hadamard
//! pipeline with a coherence trace, and exhaustive balanced-function
//! enumeration at small qubit counts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::coherence::{coherence_of_pure, CoherencePair};
use crate::error::Error;
use crate::state::{PhaseOracle, Register, StateVector};
use crate::Result;

/// Enumeration guard: all `C(2^n, 2^{n-1})` balanced tables are visited.
pub const MAX_ENUMERATION_QUBITS: usize = 4;

/// Function class under the Deutsch-Jozsa promise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DjKind {
    Constant,
    Balanced,
    /// Neither constant nor balanced; violates the promise.
    Other,
}

/// Algorithm verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DjVerdict {
    Constant,
    Balanced,
}

/// A boolean function table over `2^n` inputs.
#[derive(Debug, Clone)]
pub struct DjFunction {
    num_qubits: usize,
    table: Vec<bool>,
    kind: DjKind,
}

impl DjFunction {
    pub fn from_table(num_qubits: usize, table: Vec<bool>) -> Result<Self> {
        if table.len() != 1usize << num_qubits {
            return Err(Error::Validation(format!(
                "table length {} does not match {num_qubits} qubits",
                table.len()
            )));
        }
        let ones = table.iter().filter(|&&b| b).count();
        let kind = if ones == 0 || ones == table.len() {
            DjKind::Constant
        } else if ones * 2 == table.len() {
            DjKind::Balanced
        } else {
            DjKind::Other
        };
        Ok(Self { num_qubits, table, kind })
    }

    /// Parse a bit-string literal like `"01100101"`; index 0 is leftmost.
    pub fn from_bitstring(num_qubits: usize, bits: &str) -> Result<Self> {
        let table: Vec<bool> = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Validation(format!("invalid bit character '{other}'"))),
            })
            .collect::<Result<_>>()?;
        Self::from_table(num_qubits, table)
    }

    pub fn constant(num_qubits: usize, value: bool) -> Result<Self> {
        Self::from_table(num_qubits, alloc::vec![value; 1usize << num_qubits])
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn kind(&self) -> DjKind {
        self.kind
    }

    /// `"01..."` form of the table.
    pub fn bitstring(&self) -> String {
        self.table.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Result of one Deutsch-Jozsa run.
#[derive(Debug, Clone, Copy)]
pub struct DjOutcome {
    pub verdict: DjVerdict,
    /// Coherence of the initial, post-oracle and final states.
    pub stages: [CoherencePair; 3],
    /// Probability of measuring `|0...0>` on the final state.
    pub p_zero: f64,
}

/// Run the pipeline: uniform superposition, phase oracle
/// `|x> -> (-1)^{f(x)} |x>`, Hadamard on every qubit, then read the
/// probability of the all-zeros outcome.
pub fn run_dj(f: &DjFunction) -> Result<DjOutcome> {
    if f.kind() == DjKind::Other {
        return Err(Error::InvalidFunction(format!(
            "table {} is neither constant nor balanced",
            f.bitstring()
        )));
    }
    let n = f.num_qubits();
    let mut state = StateVector::new_uniform(n)?;
    let stage0 = coherence_of_pure(&state)?;

    let table = f.table();
    let oracle = PhaseOracle::from_predicate(n, |x| table[x as usize])?;
    state.apply_phase_oracle(&oracle)?;
    let stage1 = coherence_of_pure(&state)?;

    state.hadamard_all(Register::All)?;
    let stage2 = coherence_of_pure(&state)?;

    let p_zero = state.amplitudes()[0].norm_sqr();
    let verdict = if p_zero >= 0.5 { DjVerdict::Constant } else { DjVerdict::Balanced };
    Ok(DjOutcome { verdict, stages: [stage0, stage1, stage2], p_zero })
}

/// Extremes of the final-state coherence over every balanced table.
#[derive(Debug, Clone)]
pub struct BalancedExtremes {
    pub tables_enumerated: usize,
    pub max_c_r: f64,
    pub max_c_l1: f64,
    /// A table attaining the maximal relative entropy of coherence.
    pub argmax_c_r: String,
    /// A table attaining the maximal l1-norm of coherence.
    pub argmax_c_l1: String,
}

/// Enumerate every balanced function on `n <= 4` qubits, run the pipeline on
/// each, and report final-coherence extremes. Verifies along the way that the
/// all-zeros amplitude vanishes; the extremes themselves are reported as
/// observed, without clamping (at n=4 the l1 maximum is exactly `2^{n-1}`).
pub fn balanced_coherence_extremes(num_qubits: usize) -> Result<BalancedExtremes> {
    if num_qubits < 1 || num_qubits > MAX_ENUMERATION_QUBITS {
        return Err(Error::Capacity { qubits: num_qubits, max: MAX_ENUMERATION_QUBITS });
    }
    let table_len = 1usize << num_qubits;
    let half = table_len / 2;
    let mut best = BalancedExtremes {
        tables_enumerated: 0,
        max_c_r: 0.0,
        max_c_l1: 0.0,
        argmax_c_r: String::new(),
        argmax_c_l1: String::new(),
    };
    for mask in 0u32..(1u32 << table_len) {
        if mask.count_ones() as usize != half {
            continue;
        }
        let table: Vec<bool> = (0..table_len).map(|i| mask >> i & 1 == 1).collect();
        let f = DjFunction::from_table(num_qubits, table)?;
        let outcome = run_dj(&f)?;
        if outcome.verdict != DjVerdict::Balanced || outcome.p_zero > 1e-12 {
            return Err(Error::Validation(format!(
                "balanced table {} did not kill the all-zeros amplitude",
                f.bitstring()
            )));
        }
        let [_, _, fin] = outcome.stages;
        best.tables_enumerated += 1;
        if fin.c_r > best.max_c_r {
            best.max_c_r = fin.c_r;
            best.argmax_c_r = f.bitstring();
        }
        if fin.c_l1 > best.max_c_l1 {
            best.max_c_l1 = fin.c_l1;
            best.argmax_c_l1 = f.bitstring();
        }
    }
    Ok(best)
}
