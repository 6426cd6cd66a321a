//! Small modular-arithmetic helpers used by the oracle and order-finding code.

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Least common multiple.
pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// `base^exp mod modulus` by square-and-multiply.
///
/// Intermediate products go through `u128`, so any `u64` modulus is safe.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus > 0, "modulus must be positive");
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut result: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// Trial-division primality check; inputs here never exceed a few words.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// If `n = p^k` for a prime `p` and `k >= 2`, returns `p`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 4 {
        return None;
    }
    for k in 2..=63 {
        let root = integer_kth_root(n, k);
        if root < 2 {
            break;
        }
        if checked_pow(root, k) == Some(n) && is_prime(root) {
            return Some(root);
        }
    }
    None
}

/// Floor of the k-th root of n.
fn integer_kth_root(n: u64, k: u32) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = libm::pow(n as f64, 1.0 / k as f64) as u64;
    // Fix up float error around the boundary.
    while checked_pow(r + 1, k).map_or(false, |p| p <= n) {
        r += 1;
    }
    while r > 0 && checked_pow(r, k).map_or(true, |p| p > n) {
        r -= 1;
    }
    r
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
