//! Certified evaluation of the genus-statistics constants.
//!
//! Every Euler product is a partial product over primes up to a cutoff,
//! enclosed together with a one-sided bound on the tail.

mod bounded;
mod special;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

pub use bounded::{percent_half_even, BoundedReal};
pub use special::{gamma, zeta};

use bounded::{CompensatedSum, EPS};
use crate::arith::{factorize, sieve_primes};
use crate::{Error, Result, Sign};

/// Default prime cutoff for the Euler products.
pub const DEFAULT_CUTOFF: u64 = 10_000_000;

/// Primes other than 3, sorted by residue mod 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResidueClass {
    OneModThree,
    TwoModThree,
}

impl ResidueClass {
    pub fn contains(self, p: u64) -> bool {
        match self {
            ResidueClass::OneModThree => p % 3 == 1,
            ResidueClass::TwoModThree => p % 3 == 2,
        }
    }

    /// Residue mod 6 of the primes of this class above 3.
    fn mod_six(self) -> u64 {
        match self {
            ResidueClass::OneModThree => 1,
            ResidueClass::TwoModThree => 5,
        }
    }
}

/// `Σ_{n > b, n ≡ r (mod 6)} 1/n² ≤ 1/n0² + 1/(6·n0)` with `n0` the first such `n`.
pub fn residue_tail_bound(b: u64, class: ResidueClass) -> f64 {
    let r = class.mod_six();
    let n0 = b + 1 + (r + 6 - (b + 1) % 6) % 6;
    let n0 = n0 as f64;
    (1.0 / (n0 * n0) + 1.0 / (6.0 * n0)) * (1.0 + 4.0 * EPS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureParams {
    pub sign: Sign,
    /// `n⁺ = 6`, `n⁻ = 2`: the order of the automorphism group of the real embedding.
    pub n: u32,
}

impl SignatureParams {
    pub fn of(sign: Sign) -> Self {
        let n = match sign {
            Sign::Positive => 6,
            Sign::Negative => 2,
        };
        SignatureParams { sign, n }
    }

    /// `m⁺ = 1`, `m⁻ = √3`.
    pub fn m(&self) -> BoundedReal {
        match self.sign {
            Sign::Positive => BoundedReal::exact(1.0),
            Sign::Negative => BoundedReal::new(3f64.sqrt(), 2.0 * EPS * 3f64.sqrt()),
        }
    }
}

/// Partial Euler products over a shared prime table.
#[derive(Debug, Clone)]
pub struct ConstantEvaluator {
    cutoff: u64,
    primes: Vec<u64>,
}

impl ConstantEvaluator {
    pub fn new(cutoff: u64) -> Result<Self> {
        if cutoff < 5 {
            return Err(Error::Domain(format!("Euler product cutoff must be at least 5, got {cutoff}")));
        }
        Ok(ConstantEvaluator { cutoff, primes: sieve_primes(cutoff)? })
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    fn class_primes(&self, class: ResidueClass) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied().filter(move |&p| class.contains(p))
    }

    /// `∏_{p ≤ cutoff, p in class} (1 + c/(p(p+1)))` with the tail enclosed.
    pub fn euler_product(&self, class: ResidueClass, c: u32) -> BoundedReal {
        let mut log = CompensatedSum::default();
        for p in self.class_primes(class) {
            let pf = p as f64;
            log.add((c as f64 / (pf * (pf + 1.0))).ln_1p());
        }
        // each term carries a few ulps from the division and ln_1p
        let term_err = 6.0 * EPS * log.value() + log.rounding_bound();
        let tail = c as f64 * residue_tail_bound(self.cutoff, class);
        let lo = (log.value() - term_err).exp() * (1.0 - 2.0 * EPS);
        let hi = (log.value() + term_err + tail).exp() * (1.0 + 2.0 * EPS);
        BoundedReal::from_interval(lo, hi)
    }

    /// `∏_p (1 − 1/(p² + p + 1))`, which equals `ζ(3)/ζ(2)`.
    pub fn zeta_ratio_product(&self) -> BoundedReal {
        let mut log = CompensatedSum::default();
        for &p in &self.primes {
            let pf = p as f64;
            log.add((-1.0 / (pf * pf + pf + 1.0)).ln_1p());
        }
        let term_err = 6.0 * EPS * log.value().abs() + log.rounding_bound();
        // −ln(1 − 1/(p²+p+1)) ≤ 1/(p² + p) < 1/p², summed over odd n > cutoff
        let n0 = (self.cutoff + 1) as f64;
        let tail = (1.0 / (n0 * n0) + 1.0 / (2.0 * (n0 - 1.0))) * (1.0 + 4.0 * EPS);
        let lo = (log.value() - term_err - tail).exp() * (1.0 - 2.0 * EPS);
        let hi = (log.value() + term_err).exp() * (1.0 + 2.0 * EPS);
        BoundedReal::from_interval(lo, hi)
    }

    /// `P₁ = ∏_{p ≡ 2 (mod 3)} (1 + 1/(p(p+1)))`.
    pub fn p1(&self) -> BoundedReal {
        self.euler_product(ResidueClass::TwoModThree, 1)
    }

    /// Proportion of cubic fields (of either sign) with genus number one.
    pub fn genus_one_density(&self) -> BoundedReal {
        zeta_ratio().scale(29, 27).mul(&self.p1())
    }

    /// Average genus number of cubic fields.
    pub fn average_genus(&self) -> BoundedReal {
        zeta_ratio()
            .scale(119, 108)
            .mul(&self.euler_product(ResidueClass::OneModThree, 3))
            .mul(&self.p1())
    }

    /// Elementary symmetric sums `e_0..=e_k` of `{1/(p(p+1)) : p ≡ 1 (mod 3)}`,
    /// by Newton's identities on the truncated power sums, each enclosed
    /// together with the tail.
    pub fn elementary_symmetric(&self, k: usize) -> Vec<BoundedReal> {
        let xs: Vec<f64> = self
            .class_primes(ResidueClass::OneModThree)
            .map(|p| 1.0 / (p as f64 * (p as f64 + 1.0)))
            .collect();
        let power_sums: Vec<f64> = (0..=k)
            .map(|j| {
                let mut s = CompensatedSum::default();
                if j > 0 {
                    for &x in &xs {
                        s.add(x.powi(j as i32));
                    }
                }
                s.value()
            })
            .collect();
        let mut e = vec![1.0f64; k + 1];
        for m in 1..=k {
            let mut acc = 0.0;
            for i in 1..=m {
                let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
                acc += sign * e[m - i] * power_sums[i];
            }
            e[m] = acc / m as f64;
        }
        let tail = residue_tail_bound(self.cutoff, ResidueClass::OneModThree);
        (0..=k)
            .map(|m| {
                let rounding = 64.0 * (m as f64 + 1.0) * EPS * e[m].abs();
                let mut upper = 0.0;
                let mut tpow = 1.0;
                for i in 0..=m {
                    upper += e[m - i] * tpow;
                    tpow *= tail / (i as f64 + 1.0);
                }
                let lo = (e[m] - rounding).max(0.0);
                let hi = upper * (1.0 + 64.0 * (m as f64 + 1.0) * EPS) + rounding;
                BoundedReal::from_interval(lo, hi)
            })
            .collect()
    }

    /// Proportion of cubic fields with genus number `3^k`.
    pub fn genus_distribution(&self, k: u32) -> BoundedReal {
        let e = self.elementary_symmetric(k as usize);
        let main = e[k as usize].scale(29, 27);
        let inner = if k == 0 { main } else { main.add(&e[k as usize - 1].scale(1, 108)) };
        zeta_ratio().mul(&self.p1()).mul(&inner)
    }
}

/// `ζ(3)/ζ(2)`.
pub fn zeta_ratio() -> BoundedReal {
    zeta(3.0).div(&zeta(2.0))
}

/// `4ζ(1/3) / (5Γ(2/3)³ζ(5/3))`, the secondary coefficient per unit of `m±`.
pub fn secondary_coefficient() -> BoundedReal {
    zeta(1.0 / 3.0)
        .scale(4, 5)
        .div(&gamma(2.0 / 3.0).powi(3))
        .div(&zeta(5.0 / 3.0))
}

/// `1/(2n±ζ(3))`.
pub fn leading_coefficient(sign: Sign) -> BoundedReal {
    let n = SignatureParams::of(sign).n;
    BoundedReal::exact(1.0).div(&zeta(3.0).scale(2 * n as i64, 1))
}

/// Main plus secondary term for the number of cubic fields with `0 < ±Δ ≤ x`.
pub fn dh_count_estimate(x: f64, sign: Sign) -> BoundedReal {
    let xb = BoundedReal::new(x, 0.0);
    let x56 = BoundedReal::new(x.powf(5.0 / 6.0), 4.0 * EPS * x.powf(5.0 / 6.0));
    let m = SignatureParams::of(sign).m();
    leading_coefficient(sign).mul(&xb).add(&secondary_coefficient().mul(&m).mul(&x56))
}

/// `∏_{p | f} 1/(p² + p + 1)` for squarefree `f` coprime to 3.
pub fn dh_local_factor(f: u64) -> Result<BigRational> {
    if f == 0 || f % 3 == 0 {
        return Err(Error::Domain(format!("local factor needs f ≥ 1 coprime to 3, got {f}")));
    }
    let fac = factorize(f as i64);
    if !fac.is_squarefree() {
        return Err(Error::Domain(format!("local factor needs squarefree f, got {f}")));
    }
    Ok(fac.primes().fold(BigRational::one(), |acc, p| {
        acc / BigRational::from(BigInt::from(p * p + p + 1))
    }))
}

/// Exact partial product `∏_{p ≤ cutoff, p in class} (1 + c/(p(p+1)))`.
pub fn euler_product_exact(class: ResidueClass, c: u32, cutoff: u64) -> Result<BigRational> {
    Ok(sieve_primes(cutoff.max(2))?
        .into_iter()
        .filter(|&p| class.contains(p))
        .fold(BigRational::one(), |acc, p| {
            acc * (BigRational::one() + BigRational::new(BigInt::from(c), BigInt::from(p * (p + 1))))
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn tail_bound_start() {
        // first n > 10 with n ≡ 5 mod 6 is 11; with n ≡ 1 mod 6 it is 13
        assert!((residue_tail_bound(10, ResidueClass::TwoModThree) - (1.0 / 121.0 + 1.0 / 66.0)).abs() < 1e-15);
        assert!((residue_tail_bound(12, ResidueClass::OneModThree) - (1.0 / 169.0 + 1.0 / 78.0)).abs() < 1e-15);
        // the bound dominates a long direct sum
        let direct: f64 = (11..2_000_000u64).step_by(6).map(|n| 1.0 / (n * n) as f64).sum();
        assert!(direct < residue_tail_bound(10, ResidueClass::TwoModThree));
    }

    #[test]
    fn exact_partial_products() {
        assert_eq!(
            euler_product_exact(ResidueClass::TwoModThree, 1, 5).unwrap(),
            (ratio(1, 1) + ratio(1, 6)) * (ratio(1, 1) + ratio(1, 30))
        );
        assert_eq!(euler_product_exact(ResidueClass::OneModThree, 3, 7).unwrap(), ratio(1, 1) + ratio(3, 56));
    }

    #[test]
    fn local_factor() {
        assert_eq!(dh_local_factor(1).unwrap(), ratio(1, 1));
        assert_eq!(dh_local_factor(7).unwrap(), ratio(1, 57));
        assert_eq!(dh_local_factor(10).unwrap(), ratio(1, 217));
        assert!(dh_local_factor(12).is_err());
        assert!(dh_local_factor(4).is_err());
    }

    #[test]
    fn leading_ratio() {
        let r = leading_coefficient(Sign::Negative).div(&leading_coefficient(Sign::Positive));
        assert!(r.contains(3.0));
    }

    #[test]
    fn symmetric_sums_match_subset_enumeration() {
        let ev = ConstantEvaluator::new(200).unwrap();
        let xs: Vec<f64> = ev
            .class_primes(ResidueClass::OneModThree)
            .map(|p| 1.0 / (p as f64 * (p as f64 + 1.0)))
            .collect();
        let e = ev.elementary_symmetric(3);
        let n = xs.len();
        let mut direct = [0.0f64; 4];
        for mask in 0u64..(1 << n) {
            let k = mask.count_ones() as usize;
            if k <= 3 {
                direct[k] += (0..n).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).product::<f64>();
            }
        }
        for k in 0..=3 {
            assert!(e[k].lo() <= direct[k] * (1.0 + 1e-12) && direct[k] <= e[k].hi() * (1.0 + 1e-12));
            assert!((e[k].lo() - direct[k]).abs() / direct[k] < 1e-12, "k={k}");
        }
    }
}
