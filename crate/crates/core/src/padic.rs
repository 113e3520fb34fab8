//! The 3-adic density of forms for which 3 is totally ramified and the
//! fundamental discriminant is `≡ 1 (mod 3)`.

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::ratio;
use crate::forms::{is_maximal_at, BinaryCubicForm};
use crate::{Error, Result};

/// Largest modulus exponent the lifting audit accepts.
pub const MAX_EXPONENT: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFormCount {
    /// Forms are counted modulo `3^k`.
    pub modulus_exponent: u32,
    /// Maximal lifts of triple-root forms considered modulo `3^k`.
    pub total_considered: u64,
    /// Those with `Δ ≡ 3⁴ (mod 3⁵)`.
    pub passing: u64,
    /// `passing / 3^{4k}`.
    #[serde(with = "rational_string")]
    pub density: BigRational,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The 8 forms `λ·ℓ³` over `ℤ/3ℤ`, with coefficients in `0..3`.
pub fn triple_root_forms_mod3() -> Vec<BinaryCubicForm> {
    let mut out = Vec::new();
    for a in 0..3i64 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let f = BinaryCubicForm::new(a, b, c, d);
                    if (a, b, c, d) != (0, 0, 0, 0) && is_triple_root_mod3(&f) {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

fn is_triple_root_mod3(f: &BinaryCubicForm) -> bool {
    // λ(ux + vy)³ ≡ λ(u³x³ + v³y³), so only b ≡ c ≡ 0 and one of the
    // four lines (u : v) remains
    let [a, b, c, d] = f.coefficients();
    b % 3 == 0 && c % 3 == 0 && (a % 3 != 0 || d % 3 != 0)
}

fn lifts(base: &BinaryCubicForm, from: i64, to: i64) -> impl Iterator<Item = BinaryCubicForm> + '_ {
    let steps = to / from;
    let [a, b, c, d] = base.coefficients();
    (0..steps.pow(4)).map(move |i| {
        let t = [i % steps, i / steps % steps, i / steps.pow(2) % steps, i / steps.pow(3)];
        BinaryCubicForm::new(a + from * t[0], b + from * t[1], c + from * t[2], d + from * t[3])
    })
}

/// Lifts to `ℤ/9ℤ` of the triple-root forms that are maximal at 3.
pub fn maximal_lifts_mod9() -> Vec<BinaryCubicForm> {
    triple_root_forms_mod3()
        .iter()
        .flat_map(|f| lifts(f, 3, 9).filter(|g| is_maximal_at(g, 3)).collect::<Vec<_>>())
        .collect()
}

pub fn maximal_lift_count_mod9() -> u64 {
    maximal_lifts_mod9().len() as u64
}

#[cfg(test)]
fn disc_mod(f: &BinaryCubicForm, m: i64) -> i64 {
    let [a, b, c, d] = f.coefficients().map(|x| x.rem_euclid(m));
    disc_reduced(a, b, c, d, m)
}

// Coefficients in `0..m` with `m ≤ 243` keep every term below 2^40.
fn disc_reduced(a: i64, b: i64, c: i64, d: i64, m: i64) -> i64 {
    (b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d).rem_euclid(m)
}

fn count_lifts(base: &BinaryCubicForm, m: i64) -> (u64, u64) {
    let [a, b, c, d] = base.coefficients();
    let steps = m / 9;
    let mut passing = 0u64;
    for i in 0..steps {
        let a = a + 9 * i;
        for j in 0..steps {
            let b = b + 9 * j;
            for k in 0..steps {
                let c = c + 9 * k;
                for l in 0..steps {
                    passing += (disc_reduced(a, b, c, d + 9 * l, 243) == 81) as u64;
                }
            }
        }
    }
    ((steps as u64).pow(4), passing)
}

/// Counts modulo `3^k` for `k = 2..=max_exponent`, checking that the density
/// is the same at every level.
pub fn discriminant_condition_series(max_exponent: u32) -> Result<Vec<LocalFormCount>> {
    if !(2..=MAX_EXPONENT).contains(&max_exponent) {
        return Err(Error::Domain(format!("modulus exponent must lie in 2..={MAX_EXPONENT}, got {max_exponent}")));
    }
    let base = maximal_lifts_mod9();
    let mut series = Vec::new();
    for k in 2..=max_exponent {
        let m = 3i64.pow(k);
        let (total, passing) = base
            .par_iter()
            .map(|f| count_lifts(f, m))
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        let density = BigRational::new(passing.into(), 3u64.pow(4 * k).into());
        series.push(LocalFormCount { modulus_exponent: k, total_considered: total, passing, density });
    }
    if let Some(bad) = series.iter().find(|c| c.density != series[0].density) {
        return Err(Error::Inconsistency(format!(
            "3-adic density does not stabilize: {} at k = 2 but {} at k = {}",
            series[0].density, bad.density, bad.modulus_exponent
        )));
    }
    Ok(series)
}

pub fn discriminant_condition_count() -> Result<LocalFormCount> {
    Ok(discriminant_condition_series(MAX_EXPONENT)?.pop().expect("nonempty series"))
}

/// `μ₃(S)` divided by `(1 − 3⁻²)(1 − 3⁻³)`.
pub fn normalized_factor(mu3: &BigRational) -> BigRational {
    mu3 / ((BigRational::one() - ratio(1, 9)) * (BigRational::one() - ratio(1, 27)))
}
