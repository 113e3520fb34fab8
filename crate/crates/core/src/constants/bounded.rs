use serde::{Deserialize, Serialize};

/// Unit roundoff of `f64`.
pub(crate) const EPS: f64 = f64::EPSILON / 2.0;

/// A real number known to lie in `[value − abs_error, value + abs_error]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundedReal {
    pub value: f64,
    pub abs_error: f64,
}

impl BoundedReal {
    pub fn new(value: f64, abs_error: f64) -> Self {
        debug_assert!(abs_error >= 0.0 && value.is_finite());
        BoundedReal { value, abs_error }
    }

    pub fn exact(value: f64) -> Self {
        BoundedReal::new(value, 0.0)
    }

    /// Enclosure of `[lo, hi]`, widened by the rounding of the midpoint.
    pub fn from_interval(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        let value = lo / 2.0 + hi / 2.0;
        let err = (hi - value).max(value - lo);
        BoundedReal::new(value, err * (1.0 + 4.0 * EPS) + 2.0 * EPS * value.abs())
    }

    pub fn lo(&self) -> f64 {
        self.value - self.abs_error
    }

    pub fn hi(&self) -> f64 {
        self.value + self.abs_error
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    pub fn overlaps(&self, other: &BoundedReal) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }

    fn rounded(value: f64, err: f64) -> Self {
        BoundedReal::new(value, err + 2.0 * EPS * value.abs())
    }

    pub fn add(&self, o: &BoundedReal) -> Self {
        BoundedReal::rounded(self.value + o.value, self.abs_error + o.abs_error)
    }

    pub fn sub(&self, o: &BoundedReal) -> Self {
        BoundedReal::rounded(self.value - o.value, self.abs_error + o.abs_error)
    }

    pub fn mul(&self, o: &BoundedReal) -> Self {
        let err = self.value.abs() * o.abs_error + o.value.abs() * self.abs_error + self.abs_error * o.abs_error;
        BoundedReal::rounded(self.value * o.value, err)
    }

    pub fn div(&self, o: &BoundedReal) -> Self {
        let d = o.value.abs();
        assert!(d > o.abs_error, "division by an interval containing zero");
        let err = (self.value.abs() * o.abs_error + d * self.abs_error) / (d * (d - o.abs_error));
        BoundedReal::rounded(self.value / o.value, err)
    }

    /// Multiply by `num/den` (exact integers, small enough to be exact in `f64`).
    pub fn scale(&self, num: i64, den: i64) -> Self {
        self.mul(&BoundedReal::exact(num as f64)).div(&BoundedReal::exact(den as f64))
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(BoundedReal::exact(1.0), |acc, _| acc.mul(self))
    }

    /// The decimal rounding of the value to `decimals` places, if every
    /// point of the interval rounds the same way.
    pub fn certified_round(&self, decimals: usize) -> Option<String> {
        let lo = format!("{:.*}", decimals, self.lo());
        let hi = format!("{:.*}", decimals, self.hi());
        (lo == hi).then_some(lo)
    }

    /// Like [`certified_round`](Self::certified_round) but to `digits` significant digits.
    pub fn certified_significant(&self, digits: usize) -> Option<String> {
        let mag = self.value.abs().log10().floor() as i32;
        let decimals = (digits as i32 - 1 - mag).max(0) as usize;
        self.certified_round(decimals)
    }
}

impl std::fmt::Display for BoundedReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ± {:.1e}", self.value, self.abs_error)
    }
}

/// Neumaier-compensated sum with a bound on its own rounding error.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs_total: f64,
    count: u64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_total += x.abs();
        self.count += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Bound on `|value − exact sum of the added floats|`.
    pub fn rounding_bound(&self) -> f64 {
        let n = self.count as f64;
        2.0 * EPS * self.value().abs() + 2.0 * n * n * EPS * EPS * self.abs_total
    }
}

/// Round `percent` half-to-even at `decimals` places (ties in the binary value).
pub fn percent_half_even(fraction: f64, decimals: usize) -> String {
    format!("{:.*}%", decimals, fraction * 100.0)
}
