use super::bounded::{BoundedReal, CompensatedSum, EPS};

/// `B_2, B_4, …, B_22`.
const BERNOULLI: [f64; 11] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
];

/// `ζ(s)` for real `s ≠ 1`, `s > −15`, by Euler–Maclaurin summation.
///
/// For real `s` the remainder is bounded by the first omitted correction.
pub fn zeta(s: f64) -> BoundedReal {
    assert!(s != 1.0 && s > -15.0, "zeta({s}) outside the supported range");
    const N: u32 = 40;
    const M: usize = 10;
    let n = N as f64;
    let mut sum = CompensatedSum::default();
    for k in 1..N {
        sum.add((k as f64).powf(-s));
    }
    sum.add(n.powf(1.0 - s) / (s - 1.0));
    sum.add(0.5 * n.powf(-s));
    // T_k = B_2k/(2k)! · s(s+1)…(s+2k−2) · N^(−s−2k+1)
    let mut rising = s; // s(s+1)…(s+2k−2)
    let mut fact = 2.0; // (2k)!
    let mut omitted = 0.0;
    for k in 1..=M + 1 {
        let term = BERNOULLI[k - 1] / fact * rising * n.powf(-s - 2.0 * k as f64 + 1.0);
        if k == M + 1 {
            omitted = term.abs();
        } else {
            sum.add(term);
        }
        rising *= (s + 2.0 * k as f64 - 1.0) * (s + 2.0 * k as f64);
        fact *= (2.0 * k as f64 + 1.0) * (2.0 * k as f64 + 2.0);
    }
    // powf is faithful to a few ulps on each term
    let term_rounding = 8.0 * EPS * sum_abs_bound(s, N);
    BoundedReal::new(sum.value(), omitted + sum.rounding_bound() + term_rounding)
}

fn sum_abs_bound(s: f64, n: u32) -> f64 {
    (1..=n).map(|k| (k as f64).powf(-s)).sum::<f64>() + (n as f64).powf(1.0 - s).abs() / (s - 1.0).abs()
}

/// `ln Γ(x)` for `x > 0`: Stirling's series at `x + 12`, shifted back.
fn ln_gamma(x: f64) -> BoundedReal {
    assert!(x > 0.0);
    const SHIFT: u32 = 12;
    const M: usize = 8;
    let z = x + SHIFT as f64;
    let mut sum = CompensatedSum::default();
    sum.add((z - 0.5) * z.ln());
    sum.add(-z);
    sum.add(0.5 * (2.0 * std::f64::consts::PI).ln());
    let mut omitted = 0.0;
    for k in 1..=M + 1 {
        let kk = 2.0 * k as f64;
        let term = BERNOULLI[k - 1] / (kk * (kk - 1.0) * z.powf(kk - 1.0));
        if k == M + 1 {
            omitted = term.abs();
        } else {
            sum.add(term);
        }
    }
    for k in 0..SHIFT {
        sum.add(-(x + k as f64).ln());
    }
    let rounding = 8.0 * EPS * ((z - 0.5) * z.ln() + z + (SHIFT as f64) * z.ln());
    BoundedReal::new(sum.value(), omitted + sum.rounding_bound() + rounding)
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> BoundedReal {
    let l = ln_gamma(x);
    let lo = (l.lo()).exp() * (1.0 - 4.0 * EPS);
    let hi = (l.hi()).exp() * (1.0 + 4.0 * EPS);
    BoundedReal::from_interval(lo, hi)
}
