use std::sync::Arc;

use rayon::prelude::*;

use super::reduce::{is_canonical, is_reduced};
use super::{is_maximal_at, BinaryCubicForm};
use crate::arith::FactorTable;
use crate::budget::Budget;
use crate::{Error, Result, Sign};

#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub workers: usize,
    /// Width of each `|Δ|` window processed and sorted in memory.
    pub window: u64,
    pub budget: Budget,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            window: 2_000_000,
            budget: Budget::from_env(),
        }
    }
}

/// One canonical reduced form per cubic field with `lo ≤ ±Δ ≤ hi`, sorted
/// by `(|Δ|, form)`. `factors` must cover `hi`.
pub fn enumerate_window(lo: u64, hi: u64, sign: Sign, factors: &FactorTable) -> Vec<BinaryCubicForm> {
    assert!(factors.limit() >= hi, "factor table too small for window");
    if hi < lo.max(1) {
        return Vec::new();
    }
    let lo = lo.max(1);
    let items: Vec<(i64, i64)> = leading_pairs(hi, sign);
    let mut out: Vec<(u64, BinaryCubicForm)> = items
        .par_iter()
        .flat_map_iter(|&(a, b)| scan(a, b, lo, hi, sign, factors))
        .collect();
    out.par_sort_unstable();
    out.into_iter().map(|(_, f)| f).collect()
}

fn leading_pairs(hi: u64, sign: Sign) -> Vec<(i64, i64)> {
    let x = hi as f64;
    let mut items = Vec::new();
    match sign {
        Sign::Positive => {
            let amax = ((8.0f64 / 27.0).sqrt() * x.powf(0.25)).floor() as i64 + 1;
            for a in 1..=amax {
                let af = a as f64;
                let t = (0.75 + x.cbrt() / af.powf(4.0 / 3.0)).sqrt() + (2.0 * x.sqrt()).sqrt() / af;
                let bmax = (3.0 * af * t).floor() as i64 + 1;
                items.extend((0..=bmax).map(|b| (a, b)));
            }
        }
        Sign::Negative => {
            let amax = (16.0 * x / 27.0).powf(0.25).floor() as i64 + 1;
            for a in 1..=amax {
                let af = a as f64;
                let t = negative_root_bound(x, af);
                let bmax = (af * (1.0 + t)).floor() as i64 + 1;
                items.extend((0..=bmax).map(|b| (a, b)));
            }
        }
    }
    items
}

/// Bound on the real root of a reduced form with `0 < −Δ ≤ x`.
fn negative_root_bound(x: f64, a: f64) -> f64 {
    let k = (x / 3.0).sqrt() / (a * a);
    0.5 + (k - 0.75).max(0.0).sqrt()
}

/// `d` with `lo ≤ Δ(d) ≤ hi` inside `[dmin, dmax]`, padded, as up to two ranges.
fn d_ranges(a: i64, b: i64, c: i64, lo: i128, hi: i128, dmin: i64, dmax: i64) -> [(i64, i64); 2] {
    // Δ(d) = −27a²d² + βd + γ
    let (af, bf, cf) = (a as f64, b as f64, c as f64);
    let beta = 18.0 * af * bf * cf - 4.0 * bf.powi(3);
    let gamma = bf * bf * cf * cf - 4.0 * af * cf.powi(3);
    let q = 27.0 * af * af;
    let roots = |level: f64| -> Option<(f64, f64)> {
        let disc = beta * beta + 4.0 * q * (gamma - level);
        (disc >= 0.0).then(|| {
            let s = disc.sqrt();
            ((beta - s) / (2.0 * q), (beta + s) / (2.0 * q))
        })
    };
    let empty = [(1, 0), (1, 0)];
    let Some((r1, r2)) = roots(lo as f64) else {
        return empty;
    };
    let clip = |x: f64| x.clamp(-9.0e18, 9.0e18) as i64;
    let (outer_lo, outer_hi) = (clip(r1.floor()) - 2, clip(r2.ceil()) + 2);
    let ranges = match roots(hi as f64) {
        Some((s1, s2)) => {
            let (inner_lo, inner_hi) = (clip(s1.ceil()) + 2, clip(s2.floor()) - 2);
            if inner_lo <= inner_hi {
                [(outer_lo, inner_lo - 1), (inner_hi + 1, outer_hi)]
            } else {
                [(outer_lo, outer_hi), (1, 0)]
            }
        }
        None => [(outer_lo, outer_hi), (1, 0)],
    };
    ranges.map(|(l, h)| (l.max(dmin), h.min(dmax)))
}

fn scan(a: i64, b: i64, lo: u64, hi: u64, sign: Sign, factors: &FactorTable) -> Vec<(u64, BinaryCubicForm)> {
    let mut out = Vec::new();
    let (x, af) = (hi as f64, a as f64);
    let (dlo, dhi) = match sign {
        Sign::Positive => (lo as i128, hi as i128),
        Sign::Negative => (-(hi as i128), -(lo as i128)),
    };
    let (cmin, cmax) = match sign {
        Sign::Positive => {
            let s = x.sqrt();
            let b2 = (b * b) as f64;
            (((b2 - s) / (3.0 * af)).floor() as i64, (b * b - 1).div_euclid(3 * a))
        }
        Sign::Negative => {
            let t = negative_root_bound(x, af);
            let cap = ((16.0 * af * af * x).cbrt() + af * af) / (4.0 * af);
            ((af - af * t).floor() as i64, (cap + af * t).ceil() as i64)
        }
    };
    for c in cmin..=cmax {
        let (dmin, dmax) = match sign {
            Sign::Positive => {
                let p = b * b - 3 * a * c;
                if p < 1 || (p as f64) > x.sqrt() + 1.0 {
                    continue;
                }
                ((b * c - p).div_euclid(9 * a), (b * c + p).div_euclid(9 * a) + 1)
            }
            Sign::Negative => {
                let lo_num = b * c - (a - b) * (a - b) - a * c;
                let hi_num = b * c + (a + b) * (a + b) + a * c;
                (lo_num.div_euclid(a), hi_num.div_euclid(a) + 1)
            }
        };
        for (l, h) in d_ranges(a, b, c, dlo, dhi, dmin, dmax) {
            for d in l..=h {
                let f = BinaryCubicForm::new(a, b, c, d);
                let Some(delta) = f.checked_discriminant() else { continue };
                if delta < dlo || delta > dhi || !is_reduced(&f) || !is_canonical(&f) {
                    continue;
                }
                let n = delta.unsigned_abs() as u64;
                let maximal = factors
                    .factor(delta as i64)
                    .iter()
                    .all(|(p, e)| e < 2 || is_maximal_at(&f, p));
                if maximal && f.is_irreducible() {
                    out.push((n, f));
                }
            }
        }
    }
    out
}

/// Streaming iterator over the forms of [`enumerate_fields`], one
/// `|Δ|`-window at a time.
pub struct FieldStream {
    x: u64,
    sign: Sign,
    window: u64,
    next_lo: u64,
    factors: Arc<FactorTable>,
    pool: Arc<rayon::ThreadPool>,
    buffer: std::vec::IntoIter<BinaryCubicForm>,
}

impl FieldStream {
    /// The factor table covering every discriminant the stream can yield.
    pub fn factor_table(&self) -> Arc<FactorTable> {
        Arc::clone(&self.factors)
    }
}

impl Iterator for FieldStream {
    type Item = BinaryCubicForm;

    fn next(&mut self) -> Option<BinaryCubicForm> {
        loop {
            if let Some(f) = self.buffer.next() {
                return Some(f);
            }
            if self.next_lo > self.x {
                return None;
            }
            let lo = self.next_lo;
            let hi = lo.saturating_add(self.window - 1).min(self.x);
            self.next_lo = hi + 1;
            let (sign, factors) = (self.sign, &self.factors);
            self.buffer = self.pool.install(|| enumerate_window(lo, hi, sign, factors)).into_iter();
        }
    }
}

/// One reduced form per cubic field with `0 < ±Δ ≤ x`, in `(|Δ|, form)` order.
pub fn enumerate_fields(x: u64, sign: Sign, config: &EnumerationConfig) -> Result<FieldStream> {
    if x == 0 {
        return Err(Error::Usage("discriminant bound must be at least 1".into()));
    }
    if config.workers == 0 || config.window == 0 {
        return Err(Error::Usage("workers and window must be positive".into()));
    }
    let factors = Arc::new(FactorTable::new(x, &config.budget)?);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    Ok(FieldStream {
        x,
        sign,
        window: config.window,
        next_lo: 1,
        factors,
        pool: Arc::new(pool),
        buffer: Vec::new().into_iter(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn discs(x: u64, sign: Sign) -> Vec<i64> {
        let cfg = EnumerationConfig { workers: 1, ..Default::default() };
        enumerate_fields(x, sign, &cfg)
            .unwrap()
            .map(|f| f.checked_discriminant().unwrap() as i64)
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(discs(30, Sign::Negative), vec![-23]);
        assert!(discs(48, Sign::Positive).is_empty());
        assert_eq!(discs(100, Sign::Positive), vec![49, 81]);
        assert_eq!(discs(50, Sign::Negative), vec![-23, -31, -44]);
    }

    #[test]
    fn windows_do_not_change_output() {
        let whole = EnumerationConfig { workers: 2, ..Default::default() };
        let split = EnumerationConfig { workers: 1, window: 777, ..Default::default() };
        for sign in [Sign::Positive, Sign::Negative] {
            let a: Vec<_> = enumerate_fields(20_000, sign, &whole).unwrap().collect();
            let b: Vec<_> = enumerate_fields(20_000, sign, &split).unwrap().collect();
            assert_eq!(a, b);
        }
    }
}
