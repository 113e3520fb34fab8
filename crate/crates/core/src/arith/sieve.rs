use crate::budget::Budget;
use crate::{Error, Result};

/// All primes `<= limit`, ascending, under the default memory budget.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    sieve_primes_with_budget(limit, &Budget::from_env())
}

/// Sieve of Eratosthenes over odd numbers, one bit per odd candidate.
pub fn sieve_primes_with_budget(limit: u64, budget: &Budget) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::Domain(format!("sieve limit must be at least 2, got {limit}")));
    }
    // bit array plus the output vector (~ limit / ln limit entries)
    let approx_count = (limit as f64 / (limit as f64).ln().max(1.0) * 1.3) as u64 + 16;
    budget.check_memory("prime sieve", limit / 16 + 8 * approx_count)?;

    let n_odd = ((limit - 1) / 2) as usize; // odd numbers 3, 5, ..., <= limit
    let mut composite = vec![0u64; n_odd / 64 + 1];
    let mut i = 0usize;
    loop {
        let p = 2 * i as u64 + 3;
        if p.saturating_mul(p) > limit {
            break;
        }
        if composite[i / 64] >> (i % 64) & 1 == 0 {
            let mut j = ((p * p - 3) / 2) as usize;
            while j < n_odd {
                composite[j / 64] |= 1 << (j % 64);
                j += p as usize;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(approx_count as usize);
    primes.push(2);
    for (w, &word) in composite.iter().enumerate() {
        let mut free = !word;
        while free != 0 {
            let bit = free.trailing_zeros() as usize;
            let idx = w * 64 + bit;
            if idx >= n_odd {
                break;
            }
            primes.push(2 * idx as u64 + 3);
            free &= free - 1;
        }
    }
    Ok(primes)
}
