//! Quantum order-finding with a coherence trace, continued-fractions
//! postprocessing, a classical order oracle, and the factoring wrapper.

use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coherence::{coherence_of_pure, CoherencePair};
use crate::error::Error;
use crate::modarith::{gcd, lcm, mod_pow, prime_power_base};
use crate::state::{Register, StateVector, MAX_QUBITS};
use crate::Result;

/// Order of `x` modulo `n` by iterated modular multiplication.
pub fn classical_order(x: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Validation(alloc::format!("modulus {n} too small")));
    }
    let g = gcd(x, n);
    if g != 1 {
        return Err(Error::InvalidBase { base: x, modulus: n, gcd: g });
    }
    let mut acc = x % n;
    let mut r = 1u64;
    while acc != 1 {
        acc = (acc as u128 * (x % n) as u128 % n as u128) as u64;
        r += 1;
    }
    Ok(r)
}

/// One order-finding instance.
#[derive(Debug, Clone, Copy)]
pub struct QofConfig {
    pub base: u64,
    pub modulus: u64,
    /// Phase-estimation error tolerance behind the default register size.
    pub epsilon: f64,
    /// First-register qubits.
    pub t: usize,
    /// Second-register qubits, `ceil(log2 N)`.
    pub second_qubits: usize,
}

impl QofConfig {
    /// Derive register sizes from the error tolerance:
    /// `t = 2L + 1 + ceil(log2(2 + 1/(2 eps)))` with `L = ceil(log2 N)`.
    pub fn new(base: u64, modulus: u64, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Validation(alloc::format!("epsilon {epsilon} outside (0, 1)")));
        }
        let l = Self::second_register_size(modulus)?;
        let t = 2 * l + 1 + libm::ceil(libm::log2(2.0 + 1.0 / (2.0 * epsilon))) as usize;
        Self::with_registers(base, modulus, epsilon, t, l)
    }

    /// Force the first-register size directly.
    pub fn with_t(base: u64, modulus: u64, t: usize) -> Result<Self> {
        let l = Self::second_register_size(modulus)?;
        Self::with_registers(base, modulus, 0.25, t, l)
    }

    fn with_registers(base: u64, modulus: u64, epsilon: f64, t: usize, l: usize) -> Result<Self> {
        let g = gcd(base, modulus);
        if g != 1 {
            return Err(Error::InvalidBase { base, modulus, gcd: g });
        }
        if base <= 1 || base >= modulus {
            return Err(Error::Validation(alloc::format!(
                "base {base} must satisfy 1 < x < {modulus}"
            )));
        }
        if t < 1 {
            return Err(Error::Validation(alloc::string::String::from(
                "first register needs at least one qubit",
            )));
        }
        if t + l > MAX_QUBITS {
            return Err(Error::Capacity { qubits: t + l, max: MAX_QUBITS });
        }
        Ok(Self { base, modulus, epsilon, t, second_qubits: l })
    }

    fn second_register_size(modulus: u64) -> Result<usize> {
        if modulus < 2 {
            return Err(Error::Validation(alloc::format!("modulus {modulus} too small")));
        }
        Ok(64 - (modulus - 1).leading_zeros() as usize)
    }
}

/// Output of one order-finding run.
#[derive(Debug, Clone)]
pub struct QofOutcome {
    /// Joint-state coherence after initialization, after the modular
    /// exponentiation, and after the inverse Fourier transform.
    pub stages: [CoherencePair; 3],
    /// Measurement distribution over the first register.
    pub distribution: Vec<f64>,
    /// Full joint state after the inverse Fourier transform.
    pub state: StateVector,
}

/// Run the pipeline: Hadamard on the first register, modular-exponentiation
/// black box, inverse Fourier transform on the first register.
pub fn run_qof(config: &QofConfig) -> Result<QofOutcome> {
    let total = config.t + config.second_qubits;
    // Second register starts at |1>.
    let mut state = StateVector::new_basis(total, 1)?;
    state.set_layout(config.t, config.second_qubits)?;

    state.hadamard_all(Register::First)?;
    let stage0 = coherence_of_pure(&state)?;

    state.apply_modexp(config.base, config.modulus)?;
    let stage1 = coherence_of_pure(&state)?;

    state.inverse_qft_first()?;
    let stage2 = coherence_of_pure(&state)?;

    let distribution = state.first_register_distribution()?;
    Ok(QofOutcome { stages: [stage0, stage1, stage2], distribution, state })
}

/// Continued-fraction reconstruction of a measured phase `j / 2^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFractionResult {
    pub measured: u64,
    /// Convergents `(numerator, denominator)` in lowest terms with strictly
    /// increasing denominators.
    pub convergents: Vec<(u64, u64)>,
    /// Smallest convergent denominator `d <= N` with
    /// `|j/2^t - s/d| <= 1/2^{t+1}`, if any.
    pub candidate_order: Option<u64>,
}

/// Continued-fraction expansion of `j / 2^t` with the order candidate for
/// modulus `n`.
pub fn continued_fractions(j: u64, t: usize, n: u64) -> ContinuedFractionResult {
    let denom = 1u64 << t;
    debug_assert!(j < denom);
    if j == 0 {
        return ContinuedFractionResult { measured: 0, convergents: Vec::new(), candidate_order: None };
    }

    // Partial quotients of j / 2^t by the Euclidean algorithm, convergents by
    // the standard recurrence.
    let mut convergents: Vec<(u64, u64)> = Vec::new();
    let (mut num, mut den) = (j, denom);
    let (mut h_prev, mut h) = (0u64, 1u64);
    let (mut k_prev, mut k) = (1u64, 0u64);
    while den != 0 {
        let a = num / den;
        let rem = num % den;
        let h_next = a * h + h_prev;
        let k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        // Keep the later convergent when denominators tie (the leading 0/1
        // convergent shares a denominator with 1/1 when a_1 = 1).
        if convergents.last().map_or(false, |&(_, d)| d == k) {
            convergents.pop();
        }
        convergents.push((h, k));
        num = den;
        den = rem;
    }

    let candidate_order = convergents
        .iter()
        .find(|&&(s, d)| d <= n && phase_within_half_step(j, t, s, d))
        .map(|&(_, d)| d);
    ContinuedFractionResult { measured: j, convergents, candidate_order }
}

/// `|j/2^t - s/d| <= 1/2^{t+1}`, evaluated exactly in integers.
fn phase_within_half_step(j: u64, t: usize, s: u64, d: u64) -> bool {
    let denom = 1u128 << t;
    let lhs = (j as i128 * d as i128 - s as i128 * denom as i128).unsigned_abs() * 2;
    lhs <= d as u128
}

/// Result of the sampling loop around the order-finding subroutine.
#[derive(Debug, Clone)]
pub struct OrderRecovery {
    /// Verified order, if one was found within the sample budget.
    pub order: Option<u64>,
    /// Samples actually drawn.
    pub samples_used: usize,
    /// Per-sample continued-fraction transcripts.
    pub transcripts: Vec<ContinuedFractionResult>,
}

/// Sample first-register outcomes, run continued fractions on each, and
/// accumulate least common multiples of the candidates until a verified
/// order `x^r = 1 (mod N)` appears.
pub fn recover_order(config: &QofConfig, samples: usize, seed: u64) -> Result<OrderRecovery> {
    let outcome = run_qof(config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transcripts = Vec::new();
    let mut acc: u64 = 1;
    for drawn in 1..=samples.max(1) {
        let j = sample_index(&outcome.distribution, &mut rng);
        let cf = continued_fractions(j, config.t, config.modulus);
        let candidate = cf.candidate_order;
        transcripts.push(cf);
        let Some(d) = candidate else { continue };
        acc = lcm(acc, d);
        if acc > config.modulus {
            // A denominator from a bad sample poisoned the lcm; start over
            // from the fresh candidate.
            acc = d;
        }
        if mod_pow(config.base, acc, config.modulus) == 1 {
            let order = minimize_order(config.base, acc, config.modulus);
            return Ok(OrderRecovery { order: Some(order), samples_used: drawn, transcripts });
        }
    }
    Ok(OrderRecovery { order: None, samples_used: samples.max(1), transcripts })
}

/// Smallest divisor `d` of `r` with `x^d = 1 (mod N)`; `r` itself satisfies
/// the congruence, so the result is the true order.
fn minimize_order(x: u64, r: u64, n: u64) -> u64 {
    let mut divisors: Vec<u64> = (1..=r).filter(|d| r % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        if mod_pow(x, d, n) == 1 {
            return d;
        }
    }
    r
}

/// Inverse-CDF sampling from a probability vector.
fn sample_index(dist: &[f64], rng: &mut ChaCha8Rng) -> u64 {
    let u = rng.next_u64() as f64 / (u64::MAX as f64 + 1.0);
    let mut acc = 0.0;
    for (i, &p) in dist.iter().enumerate() {
        acc += p;
        if u < acc {
            return i as u64;
        }
    }
    (dist.len() - 1) as u64
}

/// How a factor pair was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorMethod {
    /// Even modulus: 2 splits off immediately.
    EvenShortcut,
    /// `N = p^k` detected by integer root extraction.
    PrimePower,
    /// The random base already shared a factor with `N`.
    LuckyGcd,
    /// The quantum order-finding route.
    OrderFinding,
}

/// Result of the factoring wrapper.
#[derive(Debug, Clone)]
pub enum ShorOutcome {
    Factors { p: u64, q: u64, method: FactorMethod, attempts: usize },
    /// No nontrivial factor within the attempt budget.
    Failure { attempts: usize },
}

/// Full Shor wrapper around the order-finding subroutine.
///
/// Classical shortcuts (even `N`, prime powers) are resolved without the
/// quantum subroutine; prime `N` is rejected. Each attempt draws a fresh
/// base with a seed derived deterministically from the master seed.
pub fn shor_factor(n: u64, seed: u64, attempt_budget: usize) -> Result<ShorOutcome> {
    if n < 4 {
        return Err(Error::Validation(alloc::format!("{n} has no nontrivial factorization")));
    }
    if n % 2 == 0 {
        return Ok(ShorOutcome::Factors {
            p: 2,
            q: n / 2,
            method: FactorMethod::EvenShortcut,
            attempts: 0,
        });
    }
    if crate::modarith::is_prime(n) {
        return Err(Error::Validation(alloc::format!("{n} is prime")));
    }
    if let Some(p) = prime_power_base(n) {
        return Ok(ShorOutcome::Factors {
            p,
            q: n / p,
            method: FactorMethod::PrimePower,
            attempts: 0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=attempt_budget.max(1) {
        let x = 2 + rng.next_u64() % (n - 2);
        let g = gcd(x, n);
        if g != 1 {
            return Ok(ShorOutcome::Factors {
                p: g.min(n / g),
                q: g.max(n / g),
                method: FactorMethod::LuckyGcd,
                attempts: attempt,
            });
        }
        let config = QofConfig::new(x, n, 0.25)?;
        let recovery = recover_order(&config, 10, seed.wrapping_add(attempt as u64))?;
        let Some(r) = recovery.order else { continue };
        if r % 2 != 0 {
            continue;
        }
        let half_power = mod_pow(x, r / 2, n);
        if half_power == n - 1 {
            continue;
        }
        for candidate in [gcd(half_power + 1, n), gcd(half_power + n - 1, n)] {
            if candidate > 1 && candidate < n && n % candidate == 0 {
                return Ok(ShorOutcome::Factors {
                    p: candidate.min(n / candidate),
                    q: candidate.max(n / candidate),
                    method: FactorMethod::OrderFinding,
                    attempts: attempt,
                });
            }
        }
    }
    Ok(ShorOutcome::Failure { attempts: attempt_budget.max(1) })
}
