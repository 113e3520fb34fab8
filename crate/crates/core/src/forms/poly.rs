//! Dense polynomials over a prime field, just enough for cubics.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FpPoly {
    /// Coefficients, lowest degree first, no trailing zeros.
    pub c: Vec<u64>,
    pub p: u64,
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

pub(crate) fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

impl FpPoly {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { c, p }
    }

    pub fn from_i64(c: &[i64], p: u64) -> Self {
        FpPoly::new(c.iter().map(|&x| reduce(x, p)).collect(), p)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let li = inv(l, self.p);
                FpPoly::new(self.c.iter().map(|&x| mulmod(x, li, self.p)).collect(), self.p)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| mulmod(x, i as u64 % self.p, self.p))
            .collect();
        FpPoly::new(c, self.p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p)
            .collect();
        FpPoly::new(c, self.p)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(vec![], self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            for (j, &y) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(x, y, self.p)) % self.p;
            }
        }
        FpPoly::new(c, self.p)
    }

    /// Quotient and remainder; `m` must be nonzero.
    pub fn divrem(&self, m: &Self) -> (Self, Self) {
        let dm = m.deg().expect("division by zero polynomial");
        let li = inv(m.c[dm], self.p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len().saturating_sub(dm)];
        while r.len() > dm && !r.is_empty() {
            let top = r.len() - 1;
            let t = mulmod(r[top], li, self.p);
            if t != 0 {
                for (j, &y) in m.c.iter().enumerate() {
                    let k = top - dm + j;
                    r[k] = (r[k] + self.p - mulmod(t, y, self.p)) % self.p;
                }
            }
            q[top - dm] = t;
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (FpPoly::new(q, self.p), FpPoly::new(r, self.p))
    }

    pub fn rem(&self, m: &Self) -> Self {
        self.divrem(m).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `x^e mod m`.
    pub fn x_pow_mod(e: u64, m: &Self) -> Self {
        let p = m.p;
        let mut result = FpPoly::new(vec![1], p).rem(m);
        let mut base = FpPoly::new(vec![0, 1], p).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    #[cfg(test)]
    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &k| (mulmod(acc, x, self.p) + k) % self.p)
    }

    /// Number of distinct roots in the prime field.
    pub fn count_roots(&self) -> usize {
        match self.deg() {
            None => self.p as usize,
            Some(0) => 0,
            Some(_) => {
                let xp = FpPoly::x_pow_mod(self.p, self);
                let t = xp.sub(&FpPoly::new(vec![0, 1], self.p));
                self.gcd(&t).deg().unwrap_or(0)
            }
        }
    }

    /// The unique repeated root of a polynomial of degree 2 or 3, if any.
    pub fn repeated_root(&self) -> Option<u64> {
        let p = self.p;
        if self.deg()? < 2 {
            return None;
        }
        let h = self.gcd(&self.derivative());
        let k = h.deg()?;
        if k == 0 {
            return None;
        }
        let r = if k as u64 % p != 0 {
            // (x - r)^k has x^(k-1) coefficient -k r
            mulmod(p - h.c[k - 1], inv(k as u64 % p, p), p)
        } else {
            // k = p in {2, 3}: (x - r)^p = x^p - r
            (p - h.c[0]) % p
        };
        Some(r)
    }
}
