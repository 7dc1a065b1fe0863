use crate::error::{Error, Result};

pub const MAX_SIEVE: u64 = 100_000_000;

/// Primes ≤ n by the sieve of Eratosthenes.
pub fn sieve(n: u64) -> Result<Vec<u64>> {
    if n > MAX_SIEVE {
        return Err(Error::Range(format!("sieve limit {n} exceeds {MAX_SIEVE}")));
    }
    if n < 2 {
        return Ok(Vec::new());
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    Ok((2..=n)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect())
}

/// The prime p when n = p^k with k ≥ 1.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut m = n;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return if m == 1 { Some(p) } else { None };
        }
        p += 1;
    }
    Some(n)
}

/// Λ(n) = ln p if n = p^k, else 0.
pub fn mangoldt(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("Λ(0) is undefined".into()));
    }
    Ok(prime_power_base(n).map_or(0.0, |p| (p as f64).ln()))
}
