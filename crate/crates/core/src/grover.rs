//! Grover driver: per-iteration coherence trace, closed-form coherence and
//! derivative evaluators, optimal iteration count, and critical-point
//! classification.
//!
//! Angles follow `cos(theta/2) = sqrt((N - M) / N)` and
//! `omega = (2k + 1) theta / 2` after `k` iterations.

use alloc::format;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::coherence::{coherence_of_pure, CoherencePair};
use crate::error::Error;
use crate::state::{PhaseOracle, StateVector, MAX_QUBITS};
use crate::Result;

/// One Grover search instance.
#[derive(Debug, Clone)]
pub struct GroverConfig {
    num_qubits: usize,
    solutions: Vec<u64>,
    k_max: usize,
}

impl GroverConfig {
    /// Instance with an explicit solution index set; trace length defaults to
    /// `2 k* + 5` to exhibit the periodic revival.
    pub fn new(num_qubits: usize, solutions: &[u64]) -> Result<Self> {
        let oracle = PhaseOracle::from_solutions(num_qubits, solutions)?;
        let m = oracle.solution_count() as u64;
        if m == 0 {
            return Err(Error::NoSolution);
        }
        let k_max = 2 * optimal_iterations(num_qubits, m)? as usize + 5;
        Ok(Self { num_qubits, solutions: oracle.solutions().to_vec(), k_max })
    }

    /// Instance with the default reproducible solution set `{0, .., m-1}`.
    pub fn with_leading_solutions(num_qubits: usize, m: u64) -> Result<Self> {
        let indices: Vec<u64> = (0..m).collect();
        Self::new(num_qubits, &indices)
    }

    /// Instance with `m` solutions placed uniformly at random from the seed.
    pub fn with_random_solutions(num_qubits: usize, m: u64, seed: u64) -> Result<Self> {
        if num_qubits < 1 || num_qubits > MAX_QUBITS {
            return Err(Error::Capacity { qubits: num_qubits, max: MAX_QUBITS });
        }
        let dim = 1u64 << num_qubits;
        if m == 0 {
            return Err(Error::NoSolution);
        }
        if m > dim {
            return Err(Error::Validation(format!("{m} solutions in a {dim}-element space")));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut chosen: Vec<u64> = Vec::with_capacity(m as usize);
        while (chosen.len() as u64) < m {
            let x = rng.next_u64() % dim;
            if !chosen.contains(&x) {
                chosen.push(x);
            }
        }
        Self::new(num_qubits, &chosen)
    }

    /// Override the trace length.
    pub fn with_k_max(mut self, k_max: usize) -> Self {
        self.k_max = k_max;
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn solution_count(&self) -> u64 {
        self.solutions.len() as u64
    }

    pub fn solutions(&self) -> &[u64] {
        &self.solutions
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }
}

/// Per-iteration record of the Grover trace.
#[derive(Debug, Clone, Copy)]
pub struct GroverTraceRow {
    pub k: usize,
    pub c_r_closed: f64,
    pub c_l1_closed: f64,
    pub c_r_sim: f64,
    pub c_l1_sim: f64,
    /// Total probability on the solution indices.
    pub p_success: f64,
}

/// Rotation angle: `theta = 2 arccos(sqrt((N - M) / N))`.
pub fn theta(num_qubits: usize, m: u64) -> f64 {
    let n = (1u64 << num_qubits) as f64;
    let frac = ((n - m as f64) / n).clamp(0.0, 1.0);
    2.0 * libm::acos(libm::sqrt(frac))
}

/// Nearest integer to `(pi / 4) sqrt(N / M)`, half away from zero.
pub fn optimal_iterations(num_qubits: usize, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::NoSolution);
    }
    let n = (1u64 << num_qubits) as f64;
    let k = core::f64::consts::FRAC_PI_4 * libm::sqrt(n / m as f64);
    Ok(libm::round(k) as u64)
}

/// `(cos omega, sin omega)` coefficients of the evolved state over the
/// non-solution and solution superpositions, at real-valued iteration `k`.
pub fn closed_form_state(num_qubits: usize, m: u64, k: f64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::NoSolution);
    }
    let omega = (2.0 * k + 1.0) * theta(num_qubits, m) / 2.0;
    Ok((libm::cos(omega), libm::sin(omega)))
}

/// Closed-form coherence of the evolved state at real-valued iteration `k`.
pub fn closed_form_coherence(num_qubits: usize, m: u64, k: f64) -> Result<CoherencePair> {
    if m == 0 {
        return Err(Error::NoSolution);
    }
    let n = 1u64 << num_qubits;
    let mf = m as f64;
    let nm = (n - m) as f64;
    if n == m {
        // Single-branch state: always M equal-weight terms.
        return Ok(CoherencePair { c_r: num_qubits as f64, c_l1: mf - 1.0 });
    }
    let (cw, sw) = closed_form_state(num_qubits, m, k)?;
    let (ac, as_) = (libm::fabs(cw), libm::fabs(sw));
    let root = libm::sqrt(nm) * ac + libm::sqrt(mf) * as_;
    let c_l1 = (root * root - 1.0).max(0.0);
    let mut c_r = 0.0;
    if ac > 0.0 {
        c_r -= 2.0 * cw * cw * libm::log2(ac / libm::sqrt(nm));
    }
    if as_ > 0.0 {
        c_r -= 2.0 * sw * sw * libm::log2(as_ / libm::sqrt(mf));
    }
    Ok(CoherencePair { c_r: c_r.max(0.0), c_l1 })
}

/// Analytic derivatives `(dC_r/dk, dC_l1/dk)` at real-valued `k`.
///
/// At singular points (`sin omega = 0` for the log argument) the result
/// carries non-finite markers instead of panicking; `sgn(0) = 0` for the
/// l1 branch.
pub fn coherence_derivatives(num_qubits: usize, m: u64, k: f64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::NoSolution);
    }
    let n = (1u64 << num_qubits) as f64;
    let mf = m as f64;
    let th = theta(num_qubits, m);
    let two_omega = (2.0 * k + 1.0) * th;
    let omega = two_omega / 2.0;
    let s2 = libm::sin(two_omega);
    let c2 = libm::cos(two_omega);
    let cot = libm::cos(omega) / libm::sin(omega);
    let d_cr = th * s2 * libm::log2(mf / (n - mf) * cot * cot);
    let sgn = if s2 > 0.0 {
        1.0
    } else if s2 < 0.0 {
        -1.0
    } else {
        0.0
    };
    let d_cl1 = th * ((2.0 * mf - n) * s2 + 2.0 * libm::sqrt((n - mf) * mf) * sgn * c2);
    Ok((d_cr, d_cl1))
}

/// Kind of a critical point of the coherence curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    /// `cos omega = 0`: the state is the solution superposition; coherence minimum.
    SolutionMin,
    /// Right peak of a maximum pair: the state matches the initial superposition.
    InitialStatePeak,
    /// Left peak of a maximum pair: the oracle image of the initial superposition.
    OracleStatePeak,
    /// `cos omega = +-1`: local valley between the paired peaks; lies between
    /// integer iterations and carries no physical state.
    InterPeakValley,
    /// `theta = 0`, i.e. no solutions.
    Degenerate,
}

/// A critical point at real-valued iteration index `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub k: f64,
    pub kind: CriticalKind,
}

/// All critical points of the closed-form coherence in `[0, k_max]`.
pub fn classify_critical_points(num_qubits: usize, m: u64, k_max: f64) -> Vec<CriticalPoint> {
    let mut points = Vec::new();
    if m == 0 {
        points.push(CriticalPoint { k: 0.0, kind: CriticalKind::Degenerate });
        return points;
    }
    let th = theta(num_qubits, m);
    let pi = core::f64::consts::PI;
    // omega = (2k+1) theta / 2  =>  k = omega/theta - 1/2.
    let k_of_omega = |omega: f64| omega / th - 0.5;
    let mut push = |k: f64, kind: CriticalKind| {
        if (-1e-12..=k_max + 1e-12).contains(&k) {
            points.push(CriticalPoint { k: k.max(0.0), kind });
        }
    };
    let omega_max = (2.0 * k_max + 1.0) * th / 2.0;
    let cycles = (omega_max / pi) as i64 + 2;
    for cycle in 0..=cycles {
        let base = cycle as f64 * pi;
        // cos omega = 0 at omega = pi/2 + cycle*pi.
        push(k_of_omega(base + pi / 2.0), CriticalKind::SolutionMin);
        // cot^2 omega = cot^2(theta/2) at omega = cycle*pi +- theta/2.
        push(k_of_omega(base + th / 2.0), CriticalKind::InitialStatePeak);
        push(k_of_omega(base - th / 2.0), CriticalKind::OracleStatePeak);
        // cos omega = +-1 at omega = cycle*pi.
        push(k_of_omega(base), CriticalKind::InterPeakValley);
    }
    points.sort_by(|a, b| a.k.partial_cmp(&b.k).unwrap());
    points
}

/// Run the full simulated trace: row `k` records the state `G^k |psi0>`.
pub fn run_trace(config: &GroverConfig) -> Result<Vec<GroverTraceRow>> {
    let oracle = PhaseOracle::from_solutions(config.num_qubits, &config.solutions)?;
    let m = config.solution_count();
    let mut state = StateVector::new_uniform(config.num_qubits)?;
    let mut rows = Vec::with_capacity(config.k_max + 1);
    for k in 0..=config.k_max {
        let sim = coherence_of_pure(&state)?;
        let closed = closed_form_coherence(config.num_qubits, m, k as f64)?;
        let p_success = config
            .solutions
            .iter()
            .map(|&x| state.amplitudes()[x as usize].norm_sqr())
            .sum();
        rows.push(GroverTraceRow {
            k,
            c_r_closed: closed.c_r,
            c_l1_closed: closed.c_l1,
            c_r_sim: sim.c_r,
            c_l1_sim: sim.c_l1,
            p_success,
        });
        state.apply_phase_oracle(&oracle)?;
        state.apply_diffusion();
    }
    Ok(rows)
}

/// Iteration index with the highest simulated success probability.
pub fn success_argmax(config: &GroverConfig) -> Result<usize> {
    let rows = run_trace(config)?;
    let mut best = 0usize;
    for row in &rows {
        // First maximum; success probability revisits its peak periodically.
        if row.p_success > rows[best].p_success + 1e-12 {
            best = row.k;
        }
    }
    Ok(best)
}

/// Per-solution-count minima of the simulated coherence over `k in [0, 2 k*]`.
#[derive(Debug, Clone, Copy)]
pub struct MinCoherenceRow {
    pub m: u64,
    pub min_c_r: f64,
    pub min_c_l1: f64,
}

pub fn min_coherence_vs_solutions(num_qubits: usize, ms: &[u64]) -> Result<Vec<MinCoherenceRow>> {
    let mut out = Vec::with_capacity(ms.len());
    for &m in ms {
        let k_star = optimal_iterations(num_qubits, m)? as usize;
        let config = GroverConfig::with_leading_solutions(num_qubits, m)?.with_k_max(2 * k_star);
        let rows = run_trace(&config)?;
        let min_c_r = rows.iter().map(|r| r.c_r_sim).fold(f64::INFINITY, f64::min);
        let min_c_l1 = rows.iter().map(|r| r.c_l1_sim).fold(f64::INFINITY, f64::min);
        out.push(MinCoherenceRow { m, min_c_r, min_c_l1 });
    }
    Ok(out)
}
