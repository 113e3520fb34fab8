//! Census records: one per cubic field, with Fröhlich's genus number.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::arith::{decompose_factored, factorize, is_square, DiscriminantDecomposition, Factorization};
use crate::forms::{enumerate_fields, BinaryCubicForm, EnumerationConfig};
use crate::{Error, Result, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicFieldRecord {
    pub delta: i64,
    pub decomposition: DiscriminantDecomposition,
    pub is_cyclic: bool,
    /// Totally ramified primes, ascending: the support of `F`.
    pub tot_ram_primes: Vec<u64>,
    /// `k` with genus number `3^k`.
    pub genus_exponent: u32,
    pub form: BinaryCubicForm,
}

impl CubicFieldRecord {
    pub fn genus_number(&self) -> u64 {
        3u64.pow(self.genus_exponent)
    }

    /// Product of the totally ramified primes.
    pub fn conductor(&self) -> u64 {
        self.decomposition.conductor()
    }
}

/// Build the record of a census representative.
pub fn classify(form: &BinaryCubicForm) -> Result<CubicFieldRecord> {
    let delta = form
        .checked_discriminant()
        .and_then(|d| i64::try_from(d).ok())
        .ok_or_else(|| Error::Domain(format!("discriminant of {form} does not fit in i64")))?;
    if delta == 0 {
        return Err(Error::Shape(0));
    }
    classify_factored(form, delta, &factorize(delta))
}

pub(crate) fn classify_factored(form: &BinaryCubicForm, delta: i64, fac: &Factorization) -> Result<CubicFieldRecord> {
    let dec = decompose_factored(delta, fac)?;
    let f_primes: Vec<u64> = fac.primes().filter(|&p| dec.f % p == 0).collect();
    let mut tot_ram_primes = f_primes.clone();
    if dec.three_type >= 1 {
        tot_ram_primes.push(3);
        tot_ram_primes.sort_unstable();
    }
    let is_cyclic = delta > 0 && is_square(delta);
    let genus_exponent = if is_cyclic {
        let odd = fac.primes().filter(|&p| p % 2 == 1).count() as u32;
        odd.checked_sub(1).ok_or_else(|| Error::Inconsistency(format!("cyclic discriminant {delta} has no odd prime")))?
    } else {
        // (d/p) = 1 for a totally ramified odd p ≠ 3 exactly when p ≡ 1 (mod 3)
        let from_f = f_primes.iter().filter(|&&p| p % 2 == 1 && p % 3 == 1).count() as u32;
        let from_three = u32::from(dec.three_type >= 1 && dec.d.rem_euclid(3) == 1);
        from_f + from_three
    };
    Ok(CubicFieldRecord { delta, decomposition: dec, is_cyclic, tot_ram_primes, genus_exponent, form: *form })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusSummary {
    #[serde(rename = "X")]
    pub x: u64,
    pub sign: Sign,
    pub total_count: u64,
    pub cyclic_count: u64,
    pub counts_by_genus_exponent: BTreeMap<u32, u64>,
    pub genus_one_proportion: f64,
    pub average_genus: f64,
    pub heilbronn_applicable_count: Option<u64>,
}

impl CensusSummary {
    pub fn new(x: u64, sign: Sign) -> Self {
        CensusSummary {
            x,
            sign,
            total_count: 0,
            cyclic_count: 0,
            counts_by_genus_exponent: BTreeMap::new(),
            genus_one_proportion: 0.0,
            average_genus: 0.0,
            heilbronn_applicable_count: None,
        }
    }

    pub fn add(&mut self, record: &CubicFieldRecord) {
        self.total_count += 1;
        self.cyclic_count += u64::from(record.is_cyclic);
        *self.counts_by_genus_exponent.entry(record.genus_exponent).or_insert(0) += 1;
        self.refresh();
    }

    fn refresh(&mut self) {
        if self.total_count == 0 {
            return;
        }
        let total = self.total_count as f64;
        let genus_sum: f64 = self
            .counts_by_genus_exponent
            .iter()
            .map(|(&k, &n)| 3f64.powi(k as i32) * n as f64)
            .sum();
        self.genus_one_proportion = self.counts_by_genus_exponent.get(&0).copied().unwrap_or(0) as f64 / total;
        self.average_genus = genus_sum / total;
    }

    /// Fraction of fields with genus exponent `k`.
    pub fn proportion(&self, k: u32) -> f64 {
        if self.total_count == 0 {
            return 0.0;
        }
        self.counts_by_genus_exponent.get(&k).copied().unwrap_or(0) as f64 / self.total_count as f64
    }
}

/// Enumerate, classify and hand every record to `sink` in `(|Δ|, form)`
/// order; returns the summary of exactly the records delivered.
pub fn run_census<F>(x: u64, sign: Sign, config: &EnumerationConfig, mut sink: F) -> Result<CensusSummary>
where
    F: FnMut(&CubicFieldRecord) -> Result<()>,
{
    let stream = enumerate_fields(x, sign, config)?;
    let table = stream.factor_table();
    let mut summary = CensusSummary::new(x, sign);
    for form in stream {
        let delta = form.checked_discriminant().expect("enumerated discriminant fits") as i64;
        let wrap = |e: Error, written: u64| Error::Interrupted { written, source: Box::new(e) };
        let record = classify_factored(&form, delta, &table.factor(delta)).map_err(|e| wrap(e, summary.total_count))?;
        sink(&record).map_err(|e| wrap(e, summary.total_count))?;
        summary.add(&record);
    }
    Ok(summary)
}

/// Collect a whole census in memory.
pub fn collect_census(x: u64, sign: Sign, config: &EnumerationConfig) -> Result<(Vec<CubicFieldRecord>, CensusSummary)> {
    let mut records = Vec::new();
    let summary = run_census(x, sign, config, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok((records, summary))
}

pub const CSV_HEADER: &str = "delta,d,f,three_type,is_cyclic,genus_exponent,a,b,c,d_coeff";

pub fn write_csv_header<W: Write + ?Sized>(w: &mut W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    Ok(())
}

pub fn write_csv_record<W: Write + ?Sized>(w: &mut W, r: &CubicFieldRecord) -> Result<()> {
    let dec = &r.decomposition;
    let f = &r.form;
    writeln!(
        w,
        "{},{},{},{},{},{},{},{},{},{}",
        r.delta,
        dec.d,
        dec.f,
        dec.three_type,
        u8::from(r.is_cyclic),
        r.genus_exponent,
        f.a,
        f.b,
        f.c,
        f.d
    )?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let r = classify(&BinaryCubicForm::new(1, 0, 0, -7)).unwrap();
        assert_eq!(r.delta, -1323);
        assert!(!r.is_cyclic);
        assert_eq!(r.tot_ram_primes, vec![3, 7]);
        assert_eq!((r.genus_exponent, r.genus_number()), (1, 3));
        assert_eq!(r.conductor(), 21);

        let r = classify(&BinaryCubicForm::new(1, 1, -2, -1)).unwrap();
        assert!(r.is_cyclic);
        assert_eq!(r.genus_exponent, 0);

        let r = classify(&BinaryCubicForm::new(1, 0, 1, 1)).unwrap();
        assert_eq!((r.delta, r.genus_exponent, r.conductor()), (-31, 0, 1));

        // 7·13 = 91: cyclic field of conductor 91 has genus number 3
        let r = classify(&BinaryCubicForm::new(3, 1, -10, 3)).unwrap();
        assert_eq!((r.delta, r.is_cyclic, r.genus_exponent), (8281, true, 1));
    }

    #[test]
    fn small_census() {
        let cfg = EnumerationConfig { workers: 1, ..Default::default() };
        let (recs, s) = collect_census(100, Sign::Positive, &cfg).unwrap();
        assert_eq!(s.total_count, 2);
        assert!(recs.iter().all(|r| r.genus_exponent == 0));
        let (recs, s) = collect_census(30, Sign::Negative, &cfg).unwrap();
        assert_eq!((s.total_count, recs[0].delta, s.genus_one_proportion), (1, -23, 1.0));
    }

    #[test]
    fn sink_errors_report_progress() {
        let cfg = EnumerationConfig { workers: 1, ..Default::default() };
        let mut n = 0;
        let err = run_census(1000, Sign::Negative, &cfg, |_| {
            n += 1;
            if n > 5 {
                Err(Error::Io(std::io::Error::other("disk full")))
            } else {
                Ok(())
            }
        })
        .unwrap_err();
        assert!(matches!(err, Error::Interrupted { written: 5, .. }), "{err}");
        assert_eq!(err.exit_code(), 1);
    }
}
