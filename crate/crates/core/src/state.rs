//! Dense statevector representation and the unitary primitives the three
//! algorithms are built from.
//!
//! Basis-index convention: with a two-register layout of `t` first-register
//! qubits and `l` second-register qubits, the first register occupies the
//! high-order bits of the index, i.e. `index = j * 2^l + k` for `|j>|k>`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::Error;
use crate::fourier::dft_pow2;
use crate::modarith::{gcd, mod_pow};
use crate::Result;

/// Total-qubit guard: 2^26 complex doubles is about 1 GiB.
pub const MAX_QUBITS: usize = 26;

const FRAC_1_SQRT_2: f64 = core::f64::consts::FRAC_1_SQRT_2;

/// Split of the qubits into a first (high-order) and second (low-order) register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    /// Qubits in the first register (high-order index bits).
    pub first: usize,
    /// Qubits in the second register (low-order index bits).
    pub second: usize,
}

/// Register selection for register-wise transforms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Register {
    /// All qubits of the state.
    All,
    /// The first register of the current layout.
    First,
}

/// Phase oracle `|x> -> (-1)^{f(x)} |x>` given by its explicit solution set.
#[derive(Debug, Clone)]
pub struct PhaseOracle {
    num_qubits: usize,
    solutions: Vec<u64>,
}

impl PhaseOracle {
    /// Oracle marking exactly the given basis indices.
    pub fn from_solutions(num_qubits: usize, indices: &[u64]) -> Result<Self> {
        check_qubits(num_qubits)?;
        let dim = 1u64 << num_qubits;
        let mut solutions: Vec<u64> = indices.to_vec();
        solutions.sort_unstable();
        solutions.dedup();
        if let Some(&bad) = solutions.iter().find(|&&i| i >= dim) {
            return Err(Error::Validation(alloc::format!(
                "solution index {bad} out of range for {num_qubits} qubits"
            )));
        }
        Ok(Self { num_qubits, solutions })
    }

    /// Oracle marking every index where the predicate holds.
    pub fn from_predicate<F: Fn(u64) -> bool>(num_qubits: usize, f: F) -> Result<Self> {
        check_qubits(num_qubits)?;
        let dim = 1u64 << num_qubits;
        let solutions = (0..dim).filter(|&x| f(x)).collect();
        Ok(Self { num_qubits, solutions })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of marked indices M.
    pub fn solution_count(&self) -> usize {
        self.solutions.len()
    }

    pub fn solutions(&self) -> &[u64] {
        &self.solutions
    }

    pub fn is_solution(&self, x: u64) -> bool {
        self.solutions.binary_search(&x).is_ok()
    }
}

/// Dense complex amplitude array over `num_qubits` qubits.
#[derive(Debug, Clone)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
    layout: Option<RegisterLayout>,
}

fn check_qubits(n: usize) -> Result<()> {
    if n < 1 || n > MAX_QUBITS {
        return Err(Error::Capacity { qubits: n, max: MAX_QUBITS });
    }
    Ok(())
}

impl StateVector {
    /// Equal superposition over all basis states, amplitude `1/sqrt(2^n)` each.
    pub fn new_uniform(num_qubits: usize) -> Result<Self> {
        check_qubits(num_qubits)?;
        let dim = 1usize << num_qubits;
        let amp = Complex64::new(1.0 / libm::sqrt(dim as f64), 0.0);
        Ok(Self { num_qubits, amps: vec![amp; dim], layout: None })
    }

    /// Computational basis state `|index>`.
    pub fn new_basis(num_qubits: usize, index: u64) -> Result<Self> {
        check_qubits(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim as u64 {
            return Err(Error::Validation(alloc::format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps, layout: None })
    }

    /// Build a state from raw amplitudes; length must be a power of two and the
    /// vector normalized within 1e-9.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::Validation(alloc::format!(
                "amplitude count {} is not a power of two",
                amps.len()
            )));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        check_qubits(num_qubits)?;
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if libm::fabs(norm_sq - 1.0) > 1e-9 {
            return Err(Error::Validation(alloc::format!(
                "state not normalized: |a|^2 sums to {norm_sq}"
            )));
        }
        Ok(Self { num_qubits, amps, layout: None })
    }

    /// Declare a two-register split; `first + second` must equal the qubit count.
    pub fn set_layout(&mut self, first: usize, second: usize) -> Result<()> {
        if first + second != self.num_qubits || first == 0 {
            return Err(Error::Layout("register split must cover all qubits with a nonempty first register"));
        }
        self.layout = Some(RegisterLayout { first, second });
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn layout(&self) -> Option<RegisterLayout> {
        self.layout
    }

    /// `|a_i|^2` for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Marginal distribution over the first register of the layout.
    pub fn first_register_distribution(&self) -> Result<Vec<f64>> {
        let layout = self.layout.ok_or(Error::Layout("no register layout set"))?;
        let sectors = 1usize << layout.second;
        let mut dist = vec![0.0; 1usize << layout.first];
        for (i, a) in self.amps.iter().enumerate() {
            dist[i / sectors] += a.norm_sqr();
        }
        Ok(dist)
    }

    /// Phase oracle `O`: flips the sign of every marked amplitude.
    pub fn apply_phase_oracle(&mut self, oracle: &PhaseOracle) -> Result<()> {
        if oracle.num_qubits() != self.num_qubits {
            return Err(Error::Validation(alloc::format!(
                "oracle over {} qubits applied to a {}-qubit state",
                oracle.num_qubits(),
                self.num_qubits
            )));
        }
        for &x in &oracle.solutions {
            self.amps[x as usize] = -self.amps[x as usize];
        }
        Ok(())
    }

    /// Diffusion `D = 2|psi0><psi0| - I`, i.e. inversion about the mean amplitude.
    pub fn apply_diffusion(&mut self) {
        let mean: Complex64 = self.amps.iter().sum::<Complex64>() / self.amps.len() as f64;
        let twice = mean * 2.0;
        for a in &mut self.amps {
            *a = twice - *a;
        }
    }

    /// Hadamard on every qubit of the selected register (fast Walsh-Hadamard
    /// butterfly, `1/sqrt(2)` per qubit); self-inverse.
    pub fn hadamard_all(&mut self, register: Register) -> Result<()> {
        let (lo, hi) = self.register_bits(register)?;
        for b in lo..hi {
            let mask = 1usize << b;
            for i in 0..self.amps.len() {
                if i & mask == 0 {
                    let j = i | mask;
                    let (a, c) = (self.amps[i], self.amps[j]);
                    self.amps[i] = (a + c) * FRAC_1_SQRT_2;
                    self.amps[j] = (a - c) * FRAC_1_SQRT_2;
                }
            }
        }
        Ok(())
    }

    /// Modular-exponentiation black box `|j>|k> -> |j>|k * x^j mod N>`.
    ///
    /// With the second register at `|1>` this is the usual `|j>|x^j mod N>`.
    /// Indices `k >= N` are left alone; multiplication by `x^j` is a
    /// permutation of `0..N` since `gcd(x, N) = 1`.
    pub fn apply_modexp(&mut self, base: u64, modulus: u64) -> Result<()> {
        let layout = self.layout.ok_or(Error::Layout("modexp requires a register layout"))?;
        let g = gcd(base, modulus);
        if g != 1 {
            return Err(Error::InvalidBase { base, modulus, gcd: g });
        }
        let second_dim = 1u64 << layout.second;
        if modulus > second_dim {
            return Err(Error::Layout("second register too small for the modulus"));
        }
        let first_dim = 1usize << layout.first;
        let sector = second_dim as usize;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for j in 0..first_dim {
            let p = mod_pow(base, j as u64, modulus) as u128;
            let offset = j * sector;
            for k in 0..sector {
                let a = self.amps[offset + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let k2 = if (k as u64) < modulus {
                    (k as u128 * p % modulus as u128) as usize
                } else {
                    k
                };
                out[offset + k2] = a;
            }
        }
        self.amps = out;
        Ok(())
    }

    /// Forward quantum Fourier transform on the first register:
    /// `|j> -> 2^{-t/2} sum_y exp(+2 pi i j y / 2^t) |y>` per second-register sector.
    pub fn qft_first(&mut self) -> Result<()> {
        self.fourier_first(1.0)
    }

    /// Inverse quantum Fourier transform on the first register.
    pub fn inverse_qft_first(&mut self) -> Result<()> {
        self.fourier_first(-1.0)
    }

    fn fourier_first(&mut self, sign: f64) -> Result<()> {
        let layout = self.layout.ok_or(Error::Layout("Fourier transform requires a register layout"))?;
        let first_dim = 1usize << layout.first;
        let sector = 1usize << layout.second;
        let scale = 1.0 / libm::sqrt(first_dim as f64);
        let mut buf = vec![Complex64::new(0.0, 0.0); first_dim];
        for k in 0..sector {
            for j in 0..first_dim {
                buf[j] = self.amps[j * sector + k];
            }
            dft_pow2(&mut buf, sign);
            for j in 0..first_dim {
                self.amps[j * sector + k] = buf[j] * scale;
            }
        }
        Ok(())
    }

    fn register_bits(&self, register: Register) -> Result<(usize, usize)> {
        match register {
            Register::All => Ok((0, self.num_qubits)),
            Register::First => {
                let layout = self.layout.ok_or(Error::Layout("no register layout set"))?;
                Ok((layout.second, self.num_qubits))
            }
        }
    }
}
