//! Integer and rational arithmetic: sieving, factorization, valuations,
//! fundamental discriminants and exact rationals.

mod discriminant;
mod factor;
mod rational;
mod sieve;

pub use discriminant::{decompose_discriminant, DiscriminantDecomposition};
pub(crate) use discriminant::decompose_factored;
pub use factor::{factorize, is_prime, Factorization, FactorTable};
pub use rational::{ratio, BigRational};
pub use sieve::{sieve_primes, sieve_primes_with_budget};

/// Legendre symbol `(d/p)` for an odd prime `p`.
///
/// Only oddness is checked; primality of `p` is the caller's contract.
pub fn legendre(d: i64, p: u64) -> crate::Result<i8> {
    if p % 2 == 0 || p < 3 {
        return Err(crate::Error::Domain(format!("Legendre symbol needs an odd prime, got {p}")));
    }
    Ok(jacobi(d.rem_euclid(p as i64) as u64, p))
}

/// Jacobi symbol `(a/n)` for odd `n`.
pub(crate) fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Number of distinct primes `p | f` with `p ≡ 1 (mod 3)`.
pub fn count_psi(f: u64) -> u32 {
    assert!(f >= 1, "count_psi needs f >= 1");
    factorize(f as i64)
        .iter()
        .filter(|&(p, _)| p % 3 == 1)
        .count() as u32
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt(n as u64);
        r * r == n as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, 7).unwrap(), 1);
        assert_eq!(legendre(-3, 7).unwrap(), 1);
        assert_eq!(legendre(7, 7).unwrap(), 0);
        assert_eq!(legendre(3, 7).unwrap(), -1);
        assert!(matches!(legendre(3, 2), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 101, 997] {
            for d in -50i64..50 {
                let r = d.rem_euclid(p as i64) as u64;
                let mut e = 1u64;
                for _ in 0..(p - 1) / 2 {
                    e = e * r % p;
                }
                let expect = if r == 0 { 0 } else if e == 1 { 1 } else { -1 };
                assert_eq!(legendre(d, p).unwrap(), expect, "({d}/{p})");
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(count_psi(7), 1);
        assert_eq!(count_psi(10), 0);
        assert_eq!(count_psi(91), 2);
        assert_eq!(count_psi(1), 0);
    }

    #[test]
    fn isqrt_edges() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u64::MAX), 4294967295);
        assert!(is_square(49) && !is_square(-49) && !is_square(50));
    }

    proptest::proptest! {
        #[test]
        fn legendre_multiplicative(m in -100_000i64..100_000, n in -100_000i64..100_000, i in 1usize..200) {
            let p = sieve_primes(2000).unwrap()[i];
            let lhs = legendre(m * n, p).unwrap();
            proptest::prop_assert_eq!(lhs, legendre(m, p).unwrap() * legendre(n, p).unwrap());
        }
    }
}
