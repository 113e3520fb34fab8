//! Field discriminants by the Dedekind criterion, enlarged by Round 2
//! where `Z[θ]` is not maximal. Slow and independent of the local test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{mulmod, powmod, FpPoly};
use super::BinaryCubicForm;
use crate::arith::factorize;

type Q = BigRational;
type Row = [BigInt; 3];

/// Discriminant of the cubic field cut out by an irreducible form.
///
/// Monicizes to `g(x) = x³ + bx² + acx + a²d` (so `disc g = a²Δ`), then for
/// each `p` with `p² | disc g` measures the `p`-part of `[O_K : Z[θ]]`.
pub fn dedekind_field_discriminant(form: &BinaryCubicForm) -> BigInt {
    assert!(form.is_irreducible(), "oracle needs an irreducible form, got {form}");
    let (a, b, c, d) = (
        BigInt::from(form.a),
        BigInt::from(form.b),
        BigInt::from(form.c),
        BigInt::from(form.d),
    );
    let g = [&a * &a * &d, &a * &c, b];
    let disc_g = monic_discriminant(&g);
    let delta = form.discriminant();
    debug_assert_eq!(disc_g, &a * &a * &delta);
    let delta64 = delta.to_i64().expect("form discriminant exceeds i64");
    let mut primes: Vec<u64> = factorize(form.a).primes().chain(factorize(delta64).primes()).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut disc = disc_g.clone();
    for p in primes {
        let pb = BigInt::from(p);
        if !(&disc_g % (&pb * &pb)).is_zero() {
            continue;
        }
        let k = index_exponent(&g, p);
        for _ in 0..2 * k {
            disc /= &pb;
        }
    }
    disc
}

/// Discriminant of `x³ + g2·x² + g1·x + g0`, with `g = [g0, g1, g2]`.
fn monic_discriminant(g: &[BigInt; 3]) -> BigInt {
    let (d, c, b) = (&g[0], &g[1], &g[2]);
    BigInt::from(18) * b * c * d + b * b * c * c
        - BigInt::from(4) * c * c * c
        - BigInt::from(4) * b * b * b * d
        - BigInt::from(27) * d * d
}

/// `v_p([O_K : Z[θ]])`.
fn index_exponent(g: &[BigInt; 3], p: u64) -> u32 {
    if dedekind_maximal(g, p) {
        return 0;
    }
    round2(g, p)
}

fn dedekind_maximal(g: &[BigInt; 3], p: u64) -> bool {
    let pb = BigInt::from(p);
    let red = |x: &BigInt| x.mod_floor(&pb).to_u64().unwrap();
    let gbar = FpPoly::new(vec![red(&g[0]), red(&g[1]), red(&g[2]), 1], p);
    let Some(r) = gbar.repeated_root() else {
        return true;
    };
    let lin = FpPoly::new(vec![(p - r) % p, 1], p);
    let mut rest = gbar;
    let mut k = 0;
    loop {
        let (q, rem) = rest.divrem(&lin);
        if !rem.is_zero() {
            break;
        }
        rest = q;
        k += 1;
    }
    // integer lift of (x - r)^k · rest
    let mut prod: Vec<BigInt> = rest.c.iter().map(|&x| BigInt::from(x)).collect();
    for _ in 0..k {
        let mut next = vec![BigInt::zero(); prod.len() + 1];
        for (i, x) in prod.iter().enumerate() {
            next[i + 1] += x;
            next[i] -= x * BigInt::from(r);
        }
        prod = next;
    }
    let full = [g[0].clone(), g[1].clone(), g[2].clone(), BigInt::one()];
    let fr = full
        .iter()
        .zip(prod.iter())
        .rev()
        .fold(BigInt::zero(), |acc, (gi, hi)| {
            let coeff = gi - hi;
            debug_assert!((&coeff % &pb).is_zero());
            acc * BigInt::from(r) + coeff / &pb
        });
    !(fr.mod_floor(&pb)).is_zero()
}

fn mul_power_basis(g: &[BigInt; 3], u: &[Q; 3], v: &[Q; 3]) -> [Q; 3] {
    let mut t: Vec<Q> = vec![Q::zero(); 5];
    for i in 0..3 {
        for j in 0..3 {
            t[i + j] += &u[i] * &v[j];
        }
    }
    for k in (3..5).rev() {
        let top = std::mem::replace(&mut t[k], Q::zero());
        for (i, gi) in g.iter().enumerate() {
            t[k - 3 + i] -= &top * Q::from(gi.clone());
        }
    }
    [t[0].clone(), t[1].clone(), t[2].clone()]
}

fn invert(m: &[[Q; 3]; 3]) -> [[Q; 3]; 3] {
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<Q>> = (0..3)
        .map(|i| (0..3).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    for col in 0..3 {
        let piv = (col..3).find(|&r| !a[r][col].is_zero()).expect("singular basis");
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].recip();
        for j in 0..3 {
            a[col][j] = &a[col][j] * &s;
            inv[col][j] = &inv[col][j] * &s;
        }
        for r in 0..3 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..3 {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    std::array::from_fn(|i| std::array::from_fn(|j| inv[i][j].clone()))
}

fn row_times(v: &[Q; 3], m: &[[Q; 3]; 3]) -> [Q; 3] {
    std::array::from_fn(|j| (0..3).fold(Q::zero(), |s, i| s + &v[i] * &m[i][j]))
}

fn integral(v: [Q; 3]) -> Row {
    v.map(|x| {
        assert!(x.is_integer(), "order not closed under multiplication");
        x.to_integer()
    })
}

/// Upper-triangular basis of the full-rank lattice spanned by `rows`.
fn hnf(mut rows: Vec<Row>) -> [Row; 3] {
    let mut basis: Vec<Row> = Vec::with_capacity(3);
    for col in 0..3 {
        loop {
            let i = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .min_by(|x, y| x.1[col].abs().cmp(&y.1[col].abs()))
                .map(|(i, _)| i)
                .expect("lattice not of full rank");
            let mut pivot = rows.swap_remove(i);
            if pivot[col].is_negative() {
                pivot = pivot.map(|x| -x);
            }
            let mut clean = true;
            for r in rows.iter_mut() {
                if !r[col].is_zero() {
                    let q = r[col].div_floor(&pivot[col]);
                    for k in 0..3 {
                        r[k] -= &q * &pivot[k];
                    }
                    clean &= r[col].is_zero();
                }
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            if clean {
                basis.push(pivot);
                break;
            }
            rows.push(pivot);
        }
    }
    [basis[0].clone(), basis[1].clone(), basis[2].clone()]
}

/// Solve `z · w = v` for upper-triangular `w`.
fn solve_upper(w: &[Row; 3], v: &Row) -> Row {
    let mut v = v.clone();
    let mut z: Row = Default::default();
    for c in 0..3 {
        let (q, r) = v[c].div_rem(&w[c][c]);
        assert!(r.is_zero(), "vector not in lattice");
        for k in 0..3 {
            v[k] -= &q * &w[c][k];
        }
        z[c] = q;
    }
    z
}

/// Basis of `{x ∈ F_p^m : Σ x_i·rows_i = 0}`.
fn left_kernel(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    // transpose: columns of the system A^T x = 0
    let mut a: Vec<Vec<u64>> = (0..n).map(|j| (0..m).map(|i| rows[i][j] % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(pr) = (row..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let s = powmod(a[row][col], p - 2, p);
        for x in a[row].iter_mut() {
            *x = mulmod(*x, s, p);
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                let pivot = a[row].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x + p - mulmod(f, y, p)) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u64; m];
            x[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = (p - a[r][fc]) % p;
            }
            x
        })
        .collect()
}

/// Round 2 from `Z[θ]`: returns `v_p` of the index of `Z[θ]` in `O_K`.
fn round2(g: &[BigInt; 3], p: u64) -> u32 {
    let pb = BigInt::from(p);
    let red = |x: &BigInt| x.mod_floor(&pb).to_u64().unwrap();
    let mut basis: [[Q; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Q::one() } else { Q::zero() }));
    let mut exponent = 0u32;
    loop {
        let inv = invert(&basis);
        let table: Vec<Vec<Row>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| integral(row_times(&mul_power_basis(g, &basis[i], &basis[j]), &inv)))
                    .collect()
            })
            .collect();
        let table_p: Vec<Vec<Vec<u64>>> =
            table.iter().map(|r| r.iter().map(|v| v.iter().map(red).collect()).collect()).collect();
        let mul_p = |x: &[u64], y: &[u64]| -> Vec<u64> {
            let mut out = vec![0u64; 3];
            for i in 0..3 {
                for j in 0..3 {
                    let s = mulmod(x[i], y[j], p);
                    if s != 0 {
                        for k in 0..3 {
                            out[k] = (out[k] + mulmod(s, table_p[i][j][k], p)) % p;
                        }
                    }
                }
            }
            out
        };
        let one: Vec<u64> = integral(row_times(&[Q::one(), Q::zero(), Q::zero()], &inv))
            .iter()
            .map(red)
            .collect();
        let q = if p >= 3 { p } else { 4 };
        let frob: Vec<Vec<u64>> = (0..3)
            .map(|i| {
                let mut base = vec![0u64; 3];
                base[i] = 1;
                let mut acc = one.clone();
                let mut e = q;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = mul_p(&acc, &base);
                    }
                    base = mul_p(&base, &base);
                    e >>= 1;
                }
                acc
            })
            .collect();
        let radical = left_kernel(&frob, p);
        if radical.is_empty() {
            return exponent;
        }
        let mut gens: Vec<Row> = (0..3)
            .map(|i| std::array::from_fn(|j| if i == j { pb.clone() } else { BigInt::zero() }))
            .collect();
        gens.extend(radical.iter().map(|v| std::array::from_fn(|j| BigInt::from(v[j]))));
        let ideal = hnf(gens);
        // multipliers: y ∈ O with y·I ⊆ pI
        let rows: Vec<Vec<u64>> = (0..3)
            .map(|i| {
                let mut row = Vec::with_capacity(9);
                for w in ideal.iter() {
                    let prod: Row = std::array::from_fn(|k| {
                        (0..3).fold(BigInt::zero(), |s, j| s + &w[j] * &table[i][j][k])
                    });
                    row.extend(solve_upper(&ideal, &prod).iter().map(red));
                }
                row
            })
            .collect();
        let kernel = left_kernel(&rows, p);
        if kernel.is_empty() {
            return exponent;
        }
        exponent += kernel.len() as u32;
        let mut gens: Vec<Row> = (0..3)
            .map(|i| std::array::from_fn(|j| if i == j { pb.clone() } else { BigInt::zero() }))
            .collect();
        gens.extend(kernel.iter().map(|v| std::array::from_fn(|j| BigInt::from(v[j]))));
        let u = hnf(gens);
        let pq = Q::from(pb.clone());
        basis = std::array::from_fn(|i| {
            let v: [Q; 3] = std::array::from_fn(|k| {
                (0..3).fold(Q::zero(), |s, j| s + Q::from(u[i][j].clone()) * &basis[j][k])
            });
            v.map(|x| x / &pq)
        });
    }
}
