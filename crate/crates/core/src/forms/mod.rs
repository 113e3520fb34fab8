//! Binary cubic forms `ax³ + bx²y + cxy² + dy³` and the enumeration of
//! cubic fields through reduced representatives.

mod enumerate;
mod local;
mod oracle;
pub(crate) mod poly;
mod reduce;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use enumerate::{enumerate_fields, enumerate_window, EnumerationConfig, FieldStream};
pub use local::{is_maximal_at, splitting_type, SplittingType};
pub use oracle::dedekind_field_discriminant;
pub use reduce::{canonical_form, is_reduced};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryCubicForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl BinaryCubicForm {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        BinaryCubicForm { a, b, c, d }
    }

    pub fn coefficients(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `18abcd + b²c² − 4ac³ − 4b³d − 27a²d²`, exact.
    pub fn discriminant(&self) -> BigInt {
        if let Some(v) = self.checked_discriminant() {
            return BigInt::from(v);
        }
        let [a, b, c, d] = self.coefficients().map(BigInt::from);
        BigInt::from(18) * &a * &b * &c * &d + &b * &b * &c * &c
            - BigInt::from(4) * &a * &c * &c * &c
            - BigInt::from(4) * &b * &b * &b * &d
            - BigInt::from(27) * &a * &a * &d * &d
    }

    /// The discriminant in `i128`, or `None` on overflow.
    pub fn checked_discriminant(&self) -> Option<i128> {
        let [a, b, c, d] = self.coefficients().map(|x| x as i128);
        let m = |xs: &[i128]| xs.iter().try_fold(1i128, |acc, &x| acc.checked_mul(x));
        let t1 = m(&[18, a, b, c, d])?;
        let t2 = m(&[b, b, c, c])?;
        let t3 = m(&[4, a, c, c, c])?;
        let t4 = m(&[4, b, b, b, d])?;
        let t5 = m(&[27, a, a, d, d])?;
        t1.checked_add(t2)?
            .checked_sub(t3)?
            .checked_sub(t4)?
            .checked_sub(t5)
    }

    /// Hessian covariant `(P, Q, R) = (b² − 3ac, bc − 9ad, c² − 3bd)`;
    /// `Q² − 4PR = −3Δ`.
    pub fn hessian(&self) -> (i128, i128, i128) {
        let [a, b, c, d] = self.coefficients().map(|x| x as i128);
        (b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d)
    }

    /// `f(m11·x + m12·y, m21·x + m22·y)`.
    ///
    /// Errors if the matrix is not unimodular or a coefficient overflows `i64`.
    pub fn transform(&self, m11: i64, m12: i64, m21: i64, m22: i64) -> Result<Self> {
        let det = m11 as i128 * m22 as i128 - m12 as i128 * m21 as i128;
        if det.abs() != 1 {
            return Err(Error::Domain(format!("matrix determinant {det} is not ±1")));
        }
        let mul = |u: &[BigInt], v: &[BigInt]| {
            let mut out = vec![BigInt::from(0); u.len() + v.len() - 1];
            for (i, x) in u.iter().enumerate() {
                for (j, y) in v.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        };
        // coefficient vectors indexed by the power of y
        let l1 = [BigInt::from(m11), BigInt::from(m12)];
        let l2 = [BigInt::from(m21), BigInt::from(m22)];
        let mut acc = vec![BigInt::from(0); 4];
        for (k, coef) in self.coefficients().into_iter().enumerate() {
            let mut t = vec![BigInt::from(coef)];
            for _ in 0..3 - k {
                t = mul(&t, &l1);
            }
            for _ in 0..k {
                t = mul(&t, &l2);
            }
            for (i, x) in t.into_iter().enumerate() {
                acc[i] += x;
            }
        }
        let out: Vec<i64> = acc
            .iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Domain("transformed coefficient overflows i64".into())))
            .collect::<Result<_>>()?;
        Ok(BinaryCubicForm::new(out[0], out[1], out[2], out[3]))
    }

    pub fn negate(&self) -> Self {
        BinaryCubicForm::new(-self.a, -self.b, -self.c, -self.d)
    }

    /// Value at integer `(x, y)`.
    pub fn eval(&self, x: i128, y: i128) -> Option<i128> {
        let [a, b, c, d] = self.coefficients().map(|v| v as i128);
        let t = [
            a.checked_mul(x.checked_pow(3)?)?,
            b.checked_mul(x.checked_mul(x)?.checked_mul(y)?)?,
            c.checked_mul(x.checked_mul(y)?.checked_mul(y)?)?,
            d.checked_mul(y.checked_pow(3)?)?,
        ];
        t.iter().try_fold(0i128, |s, &v| s.checked_add(v))
    }

    /// Real roots of `f(x, 1)` (the root at infinity, `a = 0`, is not reported).
    pub fn real_roots(&self) -> Vec<f64> {
        let [a, b, c, d] = self.coefficients().map(|v| v as f64);
        let mut roots = if a == 0.0 {
            if b == 0.0 {
                if c == 0.0 { vec![] } else { vec![-d / c] }
            } else {
                let disc = c * c - 4.0 * b * d;
                if disc < 0.0 {
                    vec![]
                } else {
                    let s = disc.sqrt();
                    let q = -0.5 * (c + c.signum() * s);
                    if q == 0.0 { vec![0.0] } else { vec![q / b, d / q] }
                }
            }
        } else {
            cubic_real_roots(b / a, c / a, d / a)
        };
        // polish
        for r in roots.iter_mut() {
            for _ in 0..3 {
                let fv = ((a * *r + b) * *r + c) * *r + d;
                let dv = (3.0 * a * *r + 2.0 * b) * *r + c;
                if dv != 0.0 {
                    let step = fv / dv;
                    if step.is_finite() {
                        *r -= step;
                    }
                }
            }
        }
        roots.sort_by(f64::total_cmp);
        roots
    }

    /// True iff the form has no linear factor over the rationals.
    pub fn is_irreducible(&self) -> bool {
        if self.a == 0 || self.d == 0 {
            return false;
        }
        // a root p/q in lowest terms has q | a
        let qs: Vec<i128> = divisors(self.a.unsigned_abs());
        for r in self.real_roots() {
            for &q in &qs {
                let centre = (r * q as f64).round();
                if !centre.is_finite() {
                    continue;
                }
                let centre = centre as i128;
                for p in centre - 1..=centre + 1 {
                    if self.eval(p, q) == Some(0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl std::fmt::Display for BinaryCubicForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

fn divisors(n: u64) -> Vec<i128> {
    let mut out = vec![1i128];
    for (p, e) in crate::arith::factorize(n as i64).iter() {
        let len = out.len();
        let mut pk = 1i128;
        for _ in 0..e {
            pk *= p as i128;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out
}

/// Real roots of the monic cubic `x³ + bx² + cx + d`.
fn cubic_real_roots(b: f64, c: f64, d: f64) -> Vec<f64> {
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    if disc > 0.0 {
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = (-q / 2.0 - s).cbrt();
        vec![u + v - shift]
    } else {
        let m = 2.0 * (-p / 3.0).max(0.0).sqrt();
        let arg = if m == 0.0 { 0.0 } else { (3.0 * q / (p * m)).clamp(-1.0, 1.0) };
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift)
            .collect()
    }
}
