//! Independent tabulation of cubic fields through Hunter's theorem: every
//! cubic field of discriminant `D` is generated by a root of some
//! `x³ + a x² + b x + c` with `a = −Tr θ ∈ {−1, 0}` and
//! `T₂ = Σ|θᵢ|² ≤ a²/3 + 2·sqrt(|D|)/3`.
//!
//! Field discriminants come from the round-2 oracle and fields with equal
//! discriminant are told apart by the number of roots modulo small primes.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cubic_genus::forms::{dedekind_field_discriminant, BinaryCubicForm};
use cubic_genus::arith::factorize;
use cubic_genus::Sign;

const PRIMES: [i64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

fn poly_disc(a: i64, b: i64, c: i64) -> i128 {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c
}

fn has_integer_root(a: i64, b: i64, c: i64) -> bool {
    if c == 0 {
        return true;
    }
    (1..=c.abs()).filter(|r| c % r == 0).any(|r| [r, -r].iter().any(|&x| x * x * x + a * x * x + b * x + c == 0))
}

/// The real root of a monic cubic with a single real root, by bisection.
fn lone_real_root(a: i64, b: i64, c: i64) -> f64 {
    let f = |x: f64| ((x + a as f64) * x + b as f64) * x + c as f64;
    let r = 1.0 + [a, b, c].iter().map(|v| v.abs()).max().unwrap() as f64;
    let (mut lo, mut hi) = (-r, r);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn t2(a: i64, b: i64, c: i64, disc: i128) -> f64 {
    if disc > 0 {
        (a * a - 2 * b) as f64
    } else {
        let r = lone_real_root(a, b, c);
        r * r - 2.0 * c as f64 / r
    }
}

fn roots_mod(a: i64, b: i64, c: i64, p: i64) -> usize {
    (0..p).filter(|&x| (((x + a) % p * x + b) % p * x + c).rem_euclid(p) == 0).count()
}

fn largest_square_divisor(n: i64) -> u64 {
    factorize(n).iter().map(|(p, e)| p.pow(e - e % 2)).product()
}

struct Candidate {
    disc: i128,
    poly: (i64, i64, i64),
}

fn same_field(u: &Candidate, v: &Candidate) -> bool {
    PRIMES
        .iter()
        .filter(|&&p| u.disc % p as i128 != 0 && v.disc % p as i128 != 0)
        .all(|&p| roots_mod(u.poly.0, u.poly.1, u.poly.2, p) == roots_mod(v.poly.0, v.poly.1, v.poly.2, p))
}

/// Number of cubic fields of each discriminant `Δ` with `0 < ±Δ ≤ x`.
pub fn hunter_field_counts(x: u64, sign: Sign) -> BTreeMap<i64, usize> {
    let bound = 1.0 / 3.0 + 2.0 * (x as f64).sqrt() / 3.0;
    let bmax = bound.ceil() as i64;
    let cmax = (bound / 3.0).powf(1.5).ceil() as i64;
    let mut fields: BTreeMap<i64, Vec<Candidate>> = BTreeMap::new();
    for a in -1..=0i64 {
        for b in -bmax..=bmax {
            for c in -cmax..=cmax {
                let disc = poly_disc(a, b, c);
                if disc == 0 || (disc > 0) != (sign == Sign::Positive) {
                    continue;
                }
                if t2(a, b, c, disc) > (a * a) as f64 / 3.0 + 2.0 * (x as f64).sqrt() / 3.0 + 1e-9 {
                    continue;
                }
                if has_integer_root(a, b, c) {
                    continue;
                }
                // d_K = disc/i² with i² | disc: skip when even the largest square
                // divisor leaves |d_K| > x
                let square = largest_square_divisor(disc as i64);
                if (disc.unsigned_abs() as u64) / square > x {
                    continue;
                }
                let dk = if square == 1 {
                    disc as i64
                } else {
                    dedekind_field_discriminant(&BinaryCubicForm::new(1, a, b, c)).try_into().expect("fits")
                };
                if dk.unsigned_abs() > x {
                    continue;
                }
                let cand = Candidate { disc, poly: (a, b, c) };
                let group = fields.entry(dk).or_default();
                if !group.iter().any(|g| same_field(g, &cand)) {
                    group.push(cand);
                }
            }
        }
    }
    fields.into_iter().map(|(d, g)| (d, g.len())).collect()
}
