use super::BinaryCubicForm;

/// Hessian-reduced (positive discriminant) or Belabas-reduced (negative
/// discriminant), with `a > 0`.
pub fn is_reduced(form: &BinaryCubicForm) -> bool {
    let Some(delta) = form.checked_discriminant() else {
        return false;
    };
    if form.a <= 0 || delta == 0 {
        return false;
    }
    let [a, b, c, d] = form.coefficients().map(|x| x as i128);
    if delta > 0 {
        let (p, q, r) = form.hessian();
        q.abs() <= p && p <= r
    } else {
        let mid = a * d - b * c;
        -(a - b) * (a - b) - a * c < mid && mid < (a + b) * (a + b) + a * c && d * d - a * a + a * c - b * d > 0
    }
}

/// Strictly inside the reduced domain: the only reduced forms equivalent
/// to `form` are `form` and `(a, −b, c, −d)`.
pub(crate) fn is_strictly_reduced(form: &BinaryCubicForm) -> bool {
    match form.checked_discriminant() {
        Some(delta) if delta > 0 => {
            let (p, q, r) = form.hessian();
            q.abs() < p && p < r
        }
        Some(delta) if delta < 0 => true,
        _ => false,
    }
}

fn key(f: &BinaryCubicForm) -> (i64, i64, i64, i64, i64, i64) {
    (f.a, f.b.abs(), f.c, f.d.abs(), -f.b, -f.d)
}

/// All 2×2 matrices with entries in {−1, 0, 1} and determinant ±1.
fn small_matrices() -> impl Iterator<Item = (i64, i64, i64, i64)> {
    (0..81).filter_map(|n: i64| {
        let e = |k: u32| (n / 3i64.pow(k)) % 3 - 1;
        let m = (e(0), e(1), e(2), e(3));
        (m.0 * m.3 - m.1 * m.2).abs().eq(&1).then_some(m)
    })
}

/// The distinguished representative among reduced forms equivalent to a
/// reduced form: least `(a, |b|, c, |d|, −b, −d)`.
pub(crate) fn canonical_reduced(form: &BinaryCubicForm) -> BinaryCubicForm {
    if is_strictly_reduced(form) {
        let flip = BinaryCubicForm::new(form.a, -form.b, form.c, -form.d);
        return if key(&flip) < key(form) { flip } else { *form };
    }
    let mut best = *form;
    for (m11, m12, m21, m22) in small_matrices() {
        let Ok(mut g) = form.transform(m11, m12, m21, m22) else {
            continue;
        };
        if g.a < 0 {
            g = g.negate();
        }
        if is_reduced(&g) && key(&g) < key(&best) {
            best = g;
        }
    }
    best
}

/// Whether the enumerator should emit this reduced form for its class.
pub(crate) fn is_canonical(form: &BinaryCubicForm) -> bool {
    if is_strictly_reduced(form) {
        form.b > 0 || (form.b == 0 && form.d > 0)
    } else {
        canonical_reduced(form) == *form
    }
}

/// The quadratic whose reduction drives the cubic's: the Hessian when
/// `Δ > 0`, the complex quadratic factor when `Δ < 0`.
fn driving_quadratic(f: &BinaryCubicForm, positive: bool) -> (f64, f64, f64) {
    if positive {
        let (p, q, r) = f.hessian();
        (p as f64, q as f64, r as f64)
    } else {
        let theta = f.real_roots().into_iter().next().unwrap_or(0.0);
        let [a, b, c, _] = f.coefficients().map(|x| x as f64);
        (a, b + a * theta, c + b * theta + a * theta * theta)
    }
}

/// Reduce an irreducible form and return the canonical representative of
/// its class. `None` if the discriminant is zero or overflows.
pub fn canonical_form(form: &BinaryCubicForm) -> Option<BinaryCubicForm> {
    let delta = form.checked_discriminant()?;
    if delta == 0 || form.a == 0 && form.d == 0 {
        return None;
    }
    let positive = delta > 0;
    let mut f = *form;
    if f.a == 0 {
        f = f.transform(0, 1, 1, 0).ok()?;
    }
    for _ in 0..10_000 {
        if f.a < 0 {
            f = f.negate();
        }
        if is_reduced(&f) {
            return Some(canonical_reduced(&f));
        }
        let (qa, qb, qc) = driving_quadratic(&f, positive);
        if qb.abs() > qa {
            let k = (qb / (2.0 * qa)).round() as i64;
            f = f.transform(1, -k, 0, 1).ok()?;
        } else if qa > qc {
            f = f.transform(0, 1, -1, 0).ok()?;
        } else {
            // numerically reduced but not exactly: settle among neighbours
            let g = small_matrices()
                .filter_map(|(m11, m12, m21, m22)| f.transform(m11, m12, m21, m22).ok())
                .map(|g| if g.a < 0 { g.negate() } else { g })
                .find(is_reduced)?;
            return Some(canonical_reduced(&g));
        }
    }
    None
}
