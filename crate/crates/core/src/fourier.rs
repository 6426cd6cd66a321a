//! In-place radix-2 discrete Fourier transform for power-of-two lengths.

use num_complex::Complex64;

/// Unnormalized DFT: `out[y] = sum_j buf[j] * exp(sign * 2*pi*i * j*y / len)`.
///
/// `len` must be a power of two. Callers scale by `1/sqrt(len)` to keep the
/// transform unitary.
pub(crate) fn dft_pow2(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }

    // Bit-reversal permutation.
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            buf.swap(i, j);
        }
    }

    let mut half = 1usize;
    while half < n {
        let step = core::f64::consts::PI * sign / half as f64;
        let w_step = Complex64::new(libm::cos(step), libm::sin(step));
        for block in (0..n).step_by(2 * half) {
            let mut w = Complex64::new(1.0, 0.0);
            for off in 0..half {
                let a = buf[block + off];
                let b = buf[block + off + half] * w;
                buf[block + off] = a + b;
                buf[block + off + half] = a - b;
                w *= w_step;
            }
        }
        half *= 2;
    }
}
