use serde::{Deserialize, Serialize};

use super::{factorize, isqrt, Factorization};
use crate::{Error, Result};

/// `delta = d · f² · 9^three_type` with `d` a fundamental discriminant
/// (or 1) and `f` squarefree, coprime to 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscriminantDecomposition {
    pub delta: i64,
    pub d: i64,
    pub f: u64,
    pub three_type: u8,
}

impl DiscriminantDecomposition {
    /// `F`: the product of all totally ramified primes, `f` or `3f`.
    pub fn conductor(&self) -> u64 {
        if self.three_type > 0 {
            3 * self.f
        } else {
            self.f
        }
    }
}

/// Split a cubic field discriminant into fundamental and ramified parts.
pub fn decompose_discriminant(delta: i64) -> Result<DiscriminantDecomposition> {
    if delta == 0 {
        return Err(Error::Shape(delta));
    }
    decompose_factored(delta, &factorize(delta))
}

/// [`decompose_discriminant`] given the factorization of `|delta|`.
pub(crate) fn decompose_factored(delta: i64, fac: &Factorization) -> Result<DiscriminantDecomposition> {
    if delta == 0 {
        return Err(Error::Shape(delta));
    }
    let kernel: i64 = fac
        .iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p as i64)
        .product();
    let s = delta.signum() * kernel;
    let d = if s.rem_euclid(4) == 1 { s } else { 4 * s };
    if delta % d != 0 {
        return Err(Error::Shape(delta));
    }
    let q = (delta / d) as u64;
    let r = isqrt(q);
    if r * r != q {
        return Err(Error::Shape(delta));
    }
    let mut f = r;
    let mut three_type = 0u8;
    while f % 3 == 0 {
        f /= 3;
        three_type += 1;
    }
    let squarefree = fac.primes().all(|p| f % p != 0 || (f / p) % p != 0);
    if three_type > 2 || !squarefree {
        return Err(Error::Shape(delta));
    }
    Ok(DiscriminantDecomposition { delta, d, f, three_type })
}
