use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::poly::{reduce, FpPoly};
use super::BinaryCubicForm;

/// How a prime decomposes in the cubic field of a maximal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplittingType {
    /// `(111)`
    Split,
    /// `(12)`
    Partial,
    /// `(3)`
    Inert,
    /// `(1²1)`
    PartiallyRamified,
    /// `(1³)`
    TotallyRamified,
}

impl SplittingType {
    /// `(residue degree, ramification index)` for each prime above `p`.
    pub fn degrees(self) -> &'static [(u8, u8)] {
        match self {
            SplittingType::Split => &[(1, 1), (1, 1), (1, 1)],
            SplittingType::Partial => &[(1, 1), (2, 1)],
            SplittingType::Inert => &[(3, 1)],
            SplittingType::PartiallyRamified => &[(1, 2), (1, 1)],
            SplittingType::TotallyRamified => &[(1, 3)],
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            SplittingType::Split => "111",
            SplittingType::Partial => "12",
            SplittingType::Inert => "3",
            SplittingType::PartiallyRamified => "1^2 1",
            SplittingType::TotallyRamified => "1^3",
        }
    }

    pub fn is_ramified(self) -> bool {
        matches!(self, SplittingType::PartiallyRamified | SplittingType::TotallyRamified)
    }
}

fn mod_p(form: &BinaryCubicForm, p: u64) -> [u64; 4] {
    form.coefficients().map(|x| reduce(x, p))
}

fn dehomogenize(form: &BinaryCubicForm, p: u64) -> FpPoly {
    FpPoly::from_i64(&[form.d, form.c, form.b, form.a], p)
}

/// `f(r, 1) mod p²`.
fn value_mod_p2_is_zero(form: &BinaryCubicForm, r: u64, p: u64) -> bool {
    if p < 1 << 30 {
        let m = (p * p) as i128;
        let [a, b, c, d] = form.coefficients().map(|x| (x as i128).rem_euclid(m));
        let r = r as i128;
        let v = (((a * r + b) % m * r + c) % m * r + d) % m;
        return v == 0;
    }
    value_mod_p2(form, r, p) == BigInt::from(0)
}

fn value_mod_p2(form: &BinaryCubicForm, r: u64, p: u64) -> BigInt {
    let m = BigInt::from(p) * BigInt::from(p);
    let r = BigInt::from(r);
    let [a, b, c, d] = form.coefficients().map(BigInt::from);
    (((a * &r + b) * &r + c) * &r + d).mod_floor(&m)
}

/// Whether the cubic ring of `form` is maximal at the prime `p`.
///
/// The ring fails to be maximal at `p` exactly when the form vanishes mod
/// `p`, or it has a repeated root mod `p` which, once moved to `(0:1)`,
/// leaves the constant coefficient divisible by `p²`.
pub fn is_maximal_at(form: &BinaryCubicForm, p: u64) -> bool {
    let [a, b, c, d] = mod_p(form, p);
    if a == 0 && b == 0 && c == 0 && d == 0 {
        return false;
    }
    if a == 0 && b == 0 {
        // repeated root at infinity
        return BigInt::from(form.a).mod_floor(&(BigInt::from(p) * BigInt::from(p))) != BigInt::from(0);
    }
    match dehomogenize(form, p).repeated_root() {
        Some(r) => !value_mod_p2_is_zero(form, r, p),
        None => true,
    }
}

/// The splitting type of `p` in the field of `form`, which must be maximal at `p`.
pub fn splitting_type(form: &BinaryCubicForm, p: u64) -> SplittingType {
    let [a, b, c, _] = mod_p(form, p);
    let delta = form.discriminant();
    if (delta % BigInt::from(p)) == BigInt::from(0) {
        let triple = if a == 0 {
            b == 0 && c == 0
        } else {
            let g = dehomogenize(form, p);
            match g.repeated_root() {
                Some(r) => {
                    let lin = FpPoly::new(vec![(p - r) % p, 1], p);
                    let cube = lin.mul(&lin).mul(&lin);
                    g.monic() == cube
                }
                None => false,
            }
        };
        return if triple {
            SplittingType::TotallyRamified
        } else {
            SplittingType::PartiallyRamified
        };
    }
    let at_infinity = usize::from(a == 0);
    match dehomogenize(form, p).count_roots() + at_infinity {
        3 => SplittingType::Split,
        1 => SplittingType::Partial,
        0 => SplittingType::Inert,
        n => unreachable!("{n} roots of a separable cubic form mod {p}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_examples() {
        let f = BinaryCubicForm::new(1, 0, 0, -7);
        assert_eq!(splitting_type(&f, 2), SplittingType::Partial);
        assert_eq!(splitting_type(&f, 7), SplittingType::TotallyRamified);
        assert_eq!(splitting_type(&f, 3), SplittingType::TotallyRamified);
        assert_eq!(splitting_type(&f, 5), SplittingType::Partial);
        // x³ - 7 splits completely mod 19? 7 is a cube mod 19 since 4³ = 64 = 7
        assert_eq!(splitting_type(&f, 19), SplittingType::Split);
        assert_eq!(splitting_type(&f, 13), SplittingType::Inert);
        let g = BinaryCubicForm::new(1, 0, 1, 1);
        assert_eq!(splitting_type(&g, 31), SplittingType::PartiallyRamified);
    }

    #[test]
    fn degrees_sum_to_three() {
        for t in [
            SplittingType::Split,
            SplittingType::Partial,
            SplittingType::Inert,
            SplittingType::PartiallyRamified,
            SplittingType::TotallyRamified,
        ] {
            let n: u8 = t.degrees().iter().map(|&(f, e)| f * e).sum();
            assert_eq!(n, 3);
        }
    }

    #[test]
    fn maximality_examples() {
        assert!(is_maximal_at(&BinaryCubicForm::new(1, 0, 0, -7), 3));
        assert!(is_maximal_at(&BinaryCubicForm::new(1, 0, 0, -7), 7));
        // x³ - 28 = x³ - 4·7: not maximal at 2? 2² | 28 and root 0 is triple mod 2
        assert!(!is_maximal_at(&BinaryCubicForm::new(1, 0, 0, -28), 2));
        // x³ - 10: 3-adically x³ - 10 ≡ (x - 1)³ and f(1) = -9
        assert!(!is_maximal_at(&BinaryCubicForm::new(1, 0, 0, -10), 3));
        assert!(!is_maximal_at(&BinaryCubicForm::new(5, 5, 10, 15), 5));
        // repeated root at infinity with p² | a
        assert!(!is_maximal_at(&BinaryCubicForm::new(9, 3, 1, 1), 3));
        assert!(is_maximal_at(&BinaryCubicForm::new(3, 3, 1, 1), 3));
    }
}
