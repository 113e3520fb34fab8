use std::sync::OnceLock;

use crate::budget::Budget;
use crate::Result;

/// Prime factorization of `|n|`: strictly increasing primes with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    entries: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn from_entries(mut entries: Vec<(u64, u32)>) -> Self {
        entries.retain(|&(_, e)| e > 0);
        entries.sort_unstable();
        let mut merged: Vec<(u64, u32)> = Vec::with_capacity(entries.len());
        for (p, e) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => merged.push((p, e)),
            }
        }
        Factorization { entries: merged }
    }

    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.entries.iter().copied()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().map(|&(p, _)| p)
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.entries
            .binary_search_by_key(&p, |&(q, _)| q)
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn is_squarefree(&self) -> bool {
        self.entries.iter().all(|&(_, e)| e == 1)
    }

    /// Product of `p^e`; `None` on `u128` overflow.
    pub fn value(&self) -> Option<u128> {
        self.entries.iter().try_fold(1u128, |acc, &(p, e)| {
            (0..e).try_fold(acc, |v, _| v.checked_mul(p as u128))
        })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

const SMALL_LIMIT: u64 = 1 << 16;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        super::sieve::sieve_primes_with_budget(SMALL_LIMIT, &Budget::default())
            .expect("small sieve fits any budget")
    })
}

/// Factor a nonzero integer (sign discarded).
///
/// Trial division by primes below 2^16, then a deterministic Miller–Rabin
/// test and Brent–Pollard rho on whatever cofactor remains.
pub fn factorize(n: i64) -> Factorization {
    assert!(n != 0, "cannot factor zero");
    let mut m = n.unsigned_abs();
    let mut entries = Vec::new();
    for &p in small_primes() {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            entries.push((p, e));
        }
    }
    if m > 1 {
        split_large(m, &mut entries);
    }
    Factorization::from_entries(entries)
}

fn split_large(m: u64, out: &mut Vec<(u64, u32)>) {
    if m == 1 {
        return;
    }
    if m < SMALL_LIMIT * SMALL_LIMIT || is_prime(m) {
        out.push((m, 1));
        return;
    }
    let d = pollard_brent(m);
    split_large(d, out);
    split_large(m / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut power = 1u64;
        let mut lam = 1u64;
        while g == 1 {
            if power == lam {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            g = gcd(x.abs_diff(y), n);
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Smallest-prime-factor table for fast factorization of census-sized integers.
#[derive(Debug, Clone)]
pub struct FactorTable {
    spf: Vec<u32>,
}

impl FactorTable {
    pub fn new(limit: u64, budget: &Budget) -> Result<Self> {
        let limit = limit.max(2);
        budget.check_memory("factor table", 4 * (limit + 1))?;
        if limit > u32::MAX as u64 {
            return Err(crate::Error::Resource(format!("factor table limit {limit} exceeds 2^32")));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut i = 2usize;
        while i * i <= n {
            if spf[i] == 0 {
                let mut j = i * i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        Ok(FactorTable { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Factor `|n|`, falling back to [`factorize`] above the table limit.
    pub fn factor(&self, n: i64) -> Factorization {
        let mut m = n.unsigned_abs();
        if m > self.limit() {
            return factorize(n);
        }
        assert!(m != 0, "cannot factor zero");
        let mut entries: Vec<(u64, u32)> = Vec::with_capacity(8);
        while m > 1 {
            let s = self.spf[m as usize];
            let p = if s == 0 { m } else { s as u64 };
            match entries.last_mut() {
                Some(last) if last.0 == p => last.1 += 1,
                _ => entries.push((p, 1)),
            }
            m /= p;
        }
        Factorization { entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(factorize(1323).entries(), &[(3, 3), (7, 2)]);
        assert!(factorize(1).is_empty());
        assert_eq!(factorize(-49).entries(), &[(7, 2)]);
        assert_eq!(factorize(i64::MIN).entries(), &[(2, 63)]);
    }

    #[test]
    fn large_semiprimes() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 2_147_483_647u64;
        let f = factorize((p * q) as i64);
        assert_eq!(f.entries(), &[(q, 1), (p, 1)]);
        assert!(is_prime(p) && is_prime(q) && !is_prime(p * q));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn table_matches_trial_division() {
        let t = FactorTable::new(10_000, &Budget::default()).unwrap();
        for n in 1..=10_000i64 {
            assert_eq!(t.factor(n), factorize(n), "n = {n}");
        }
        assert_eq!(t.factor(-20_000_006), factorize(20_000_006));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn roundtrip(n in proptest::num::i64::ANY.prop_filter("nonzero", |n| *n != 0)) {
            let f = factorize(n);
            prop_assert_eq!(f.value(), Some(n.unsigned_abs() as u128));
            let ps: Vec<u64> = f.primes().collect();
            prop_assert!(ps.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(ps.iter().all(|&p| is_prime(p)));
        }
    }

    #[test]
    fn roundtrip_hundred_thousand() {
        let mut x: u64 = 0x9E37_79B9_7F4A_7C15;
        for _ in 0..100_000 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let n = (x >> 24) as i64 + 1;
            assert_eq!(factorize(n).value(), Some(n as u128));
        }
    }
}
