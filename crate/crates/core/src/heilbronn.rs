//! Heilbronn pairs, the exact weights `b_F`, the constant `B`, and the
//! criterion applied to individual totally real fields of genus number one.

use std::collections::{BTreeSet, HashMap};
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, ratio, sieve_primes};
use crate::budget::Budget;
use crate::census::CubicFieldRecord;
use crate::constants::{zeta, BoundedReal, ConstantEvaluator};
use crate::forms::{splitting_type, SplittingType};
use crate::{Error, Result};

/// Largest number of eligible primes the subset search handles.
pub const MAX_ELIGIBLE: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairGraph {
    #[serde(rename = "F")]
    pub f: u64,
    /// Primes `p < F` with `p ∤ F`.
    pub eligible_primes: Vec<u64>,
    /// Unordered pairs stored as `(p, q)` with `p < q`.
    pub pairs: BTreeSet<(u64, u64)>,
}

/// True iff some `p` in `inert` divides `a` to a power not divisible by 3,
/// i.e. `a` is not a norm.
pub fn is_norm_obstructed(a: u64, inert: &[u64]) -> bool {
    assert!(a >= 1, "is_norm_obstructed needs a ≥ 1");
    factorize(a as i64).iter().any(|(p, e)| e % 3 != 0 && inert.contains(&p))
}

/// Primes `p ∤ F` dividing `n` to a power not divisible by 3.
fn obstructing_primes(n: u64, f: u64) -> Vec<u64> {
    factorize(n as i64)
        .iter()
        .filter(|&(p, e)| e % 3 != 0 && f % p != 0)
        .map(|(p, _)| p)
        .collect()
}

fn check_conductor(f: u64) -> Result<()> {
    if f == 0 || !factorize(f as i64).is_squarefree() {
        return Err(Error::Domain(format!("F must be a positive squarefree integer, got {f}")));
    }
    Ok(())
}

pub fn heilbronn_pairs(f: u64) -> Result<PairGraph> {
    check_conductor(f)?;
    let eligible_primes: Vec<u64> = if f > 2 {
        sieve_primes(f - 1)?.into_iter().filter(|p| f % p != 0).collect()
    } else {
        Vec::new()
    };
    let mut pairs = BTreeSet::new();
    for a in 1..f {
        let pa = obstructing_primes(a, f);
        if pa.is_empty() {
            continue;
        }
        for q in obstructing_primes(f - a, f) {
            for &p in &pa {
                pairs.insert((p.min(q), p.max(q)));
            }
        }
    }
    Ok(PairGraph { f, eligible_primes, pairs })
}

impl PairGraph {
    fn adjacency(&self) -> Result<Vec<u128>> {
        let n = self.eligible_primes.len();
        if n > MAX_ELIGIBLE {
            return Err(Error::Resource(format!(
                "F = {} has {n} eligible primes; the subset search handles at most {MAX_ELIGIBLE}",
                self.f
            )));
        }
        let index: HashMap<u64, usize> = self.eligible_primes.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut adj = vec![0u128; n];
        for (p, q) in &self.pairs {
            let (i, j) = (index[p], index[q]);
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(adj)
    }

    /// Whether the set contains both primes of some pair.
    pub fn is_admissible(&self, set: &[u64]) -> bool {
        self.pairs.iter().any(|(p, q)| set.contains(p) && set.contains(q))
    }
}

/// Normalized local weight `a_p/(1 + 1/p)` of an eligible prime.
pub fn weight(p: u64, inert: bool) -> BigRational {
    let (p, d) = (p as i64, 3 * (p as i64 + 1));
    if inert {
        ratio(p, d)
    } else {
        ratio(2 * p + 3, d)
    }
}

/// Weighted sum over the independent sets of a graph on at most 128
/// vertices: every vertex in the set contributes `w_in`, every other
/// vertex `w_out`.
struct IndependentSetSum<'a, T> {
    adj: &'a [u128],
    w_in: Vec<T>,
    w_out: Vec<T>,
    memo: HashMap<u128, T>,
    budget: u64,
}

impl<T> IndependentSetSum<'_, T>
where
    T: Clone + One + for<'x> Add<&'x T, Output = T> + for<'x> Mul<&'x T, Output = T>,
{
    fn run(&mut self, set: u128) -> Result<T> {
        if set == 0 {
            return Ok(T::one());
        }
        if let Some(v) = self.memo.get(&set) {
            return Ok(v.clone());
        }
        let mut factor = T::one();
        let mut rest = set;
        let mut best: Option<(u32, usize)> = None;
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let deg = (self.adj[v] & set).count_ones();
            if deg == 0 {
                factor = factor * &(self.w_in[v].clone() + &self.w_out[v]);
                rest &= !(1u128 << v);
            } else if best.map_or(true, |(d, _)| deg > d) {
                best = Some((deg, v));
            }
        }
        let value = match best {
            None => factor,
            Some((_, v)) => {
                let bit = 1u128 << v;
                let nbrs = self.adj[v] & rest;
                let without = self.run(rest & !bit)?;
                let with = self.run(rest & !bit & !nbrs)?;
                let mut w = self.w_in[v].clone();
                let mut nb = nbrs;
                while nb != 0 {
                    let u = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    w = w * &self.w_out[u];
                }
                factor * &(self.w_out[v].clone() * &without + &(w * &with))
            }
        };
        if self.memo.len() as u64 >= self.budget {
            return Err(Error::Resource(format!(
                "pair-free subset search exceeded {} memoized states; b_F only known to lie in [0, 1]",
                self.budget
            )));
        }
        self.memo.insert(set, value.clone());
        Ok(value)
    }
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleSets {
    /// Number of admissible subsets of the eligible primes.
    pub count: BigInt,
    /// The sets themselves, when there are at most 20 eligible primes.
    pub sets: Option<Vec<Vec<u64>>>,
}

pub fn admissible_sets(graph: &PairGraph) -> Result<AdmissibleSets> {
    let adj = graph.adjacency()?;
    let n = adj.len();
    let mut search = IndependentSetSum {
        adj: &adj,
        w_in: vec![BigInt::one(); n],
        w_out: vec![BigInt::one(); n],
        memo: HashMap::new(),
        budget: Budget::from_env().bf_nodes,
    };
    let independent = search.run(full_mask(n))?;
    let count = (BigInt::one() << n) - independent;
    let sets = (n <= 20).then(|| {
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| graph.eligible_primes[i]).collect::<Vec<_>>())
            .filter(|set| graph.is_admissible(set))
            .collect()
    });
    Ok(AdmissibleSets { count, sets })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BfResult {
    #[serde(rename = "F")]
    pub f: u64,
    #[serde(with = "rational_string")]
    pub b_f: BigRational,
    /// Only filled in when there are at most 40 eligible primes.
    pub admissible_count: Option<BigInt>,
    pub pairs: PairGraph,
    /// Memoized states visited by the subset search.
    pub nodes: u64,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn compute_bf(f: u64) -> Result<BfResult> {
    compute_bf_with_budget(f, &Budget::from_env())
}

/// `b_F = 1 − Σ_{pair-free I} ∏ weights`, times `8/9` when `3 | F`.
pub fn compute_bf_with_budget(f: u64, budget: &Budget) -> Result<BfResult> {
    let pairs = heilbronn_pairs(f)?;
    let adj = pairs.adjacency()?;
    let mut search = IndependentSetSum {
        adj: &adj,
        w_in: pairs.eligible_primes.iter().map(|&p| weight(p, true)).collect(),
        w_out: pairs.eligible_primes.iter().map(|&p| weight(p, false)).collect(),
        memo: HashMap::new(),
        budget: budget.bf_nodes,
    };
    let pair_free = search.run(full_mask(adj.len()))?;
    let nodes = search.memo.len() as u64;
    let mut b_f = BigRational::one() - pair_free;
    if f % 3 == 0 {
        b_f *= ratio(8, 9);
    }
    let admissible_count = if adj.len() <= 40 { Some(admissible_sets(&pairs)?.count) } else { None };
    Ok(BfResult { f, b_f, admissible_count, pairs, nodes })
}

/// Which primes enter `∏ 1/(p(p+1))` in the sum defining `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeProduct {
    /// `p | F`, including `p = 3` when `3 | F`.
    DividesF,
    /// `p | f`, leaving out the prime 3.
    DividesSmallF,
}

/// Which `F` are summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConductorFamily {
    /// Products of distinct primes `≡ 2 (mod 3)`, optionally times 3: the
    /// conductors that occur for genus number one.
    GenusOne,
    /// Every squarefree `F`.
    AllSquarefree,
}

impl ConductorFamily {
    pub fn contains(self, f: u64) -> bool {
        let fac = factorize(f as i64);
        fac.is_squarefree() && (self == ConductorFamily::AllSquarefree || fac.primes().all(|p| p % 3 != 1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BEstimate {
    #[serde(rename = "Y")]
    pub y: u64,
    pub product: PrimeProduct,
    pub family: ConductorFamily,
    /// `(1/(12ζ(2))) Σ_{F ≤ Y} b_F ∏ 1/(p(p+1))`, a lower bound for `B`.
    pub partial: BoundedReal,
    /// The most the terms with `F > Y` can add, using `b_F ≤ 1`.
    pub tail: BoundedReal,
    /// Certified enclosure of `B`.
    pub lower: f64,
    pub upper: f64,
    pub terms: usize,
}

impl BEstimate {
    pub fn within(&self, lo: f64, hi: f64) -> bool {
        lo <= self.lower && self.upper <= hi
    }
}

fn local_mass(f: u64, product: PrimeProduct) -> BigRational {
    factorize(f as i64)
        .primes()
        .filter(|&p| product == PrimeProduct::DividesF || p != 3)
        .fold(BigRational::one(), |acc, p| acc * ratio(1, (p * (p + 1)) as i64))
}

fn to_bounded(r: &BigRational) -> BoundedReal {
    let v = r.to_f64().expect("finite rational");
    BoundedReal::new(v, 4.0 * f64::EPSILON * v.abs())
}

pub fn estimate_b(y: u64) -> Result<BEstimate> {
    estimate_b_with(y, PrimeProduct::DividesF, ConductorFamily::GenusOne, &Budget::from_env(), 1_000_000)
}

/// Partial sum of `B` over `F ≤ y` and the certified enclosure from the
/// total mass `Σ_F ∏ 1/(p(p+1))` of the family.
pub fn estimate_b_with(
    y: u64,
    product: PrimeProduct,
    family: ConductorFamily,
    budget: &Budget,
    euler_cutoff: u64,
) -> Result<BEstimate> {
    if y < 2 {
        return Err(Error::Domain(format!("cutoff Y must be at least 2, got {y}")));
    }
    let fs: Vec<u64> = (1..=y).filter(|&f| family.contains(f)).collect();
    let bfs: Vec<(u64, BigRational)> = fs
        .par_iter()
        .map(|&f| compute_bf_with_budget(f, budget).map(|r| (f, r.b_f)))
        .collect::<Result<_>>()?;
    let mut sum = BigRational::zero();
    let mut mass = BigRational::zero();
    for (f, b) in &bfs {
        let m = local_mass(*f, product);
        sum += b * &m;
        mass += m;
    }
    // total mass of the family
    let ev = ConstantEvaluator::new(euler_cutoff)?;
    let p1 = ev.p1();
    let all = zeta(2.0).div(&zeta(3.0));
    let total = match (family, product) {
        (ConductorFamily::GenusOne, PrimeProduct::DividesF) => p1.scale(13, 12),
        (ConductorFamily::GenusOne, PrimeProduct::DividesSmallF) => p1.scale(2, 1),
        (ConductorFamily::AllSquarefree, PrimeProduct::DividesF) => all,
        (ConductorFamily::AllSquarefree, PrimeProduct::DividesSmallF) => all.scale(24, 13),
    };
    let norm = zeta(2.0).scale(12, 1);
    let partial = to_bounded(&sum).div(&norm);
    let tail_mass = total.sub(&to_bounded(&mass));
    let tail = BoundedReal::from_interval(0.0, tail_mass.hi().max(0.0)).div(&norm);
    Ok(BEstimate {
        y,
        product,
        family,
        lower: partial.lo(),
        upper: partial.hi() + tail.hi(),
        partial,
        tail,
        terms: bfs.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// `F = a + (F − a)` with both summands non-norms.
    pub a: u64,
    /// Inert prime obstructing `a`.
    pub p: u64,
    /// Inert prime obstructing `F − a`.
    pub q: u64,
}

/// Primes `p < F`, `p ∤ F`, inert in the field of the record.
pub fn inert_primes_below_conductor(record: &CubicFieldRecord) -> Result<Vec<u64>> {
    let f = record.conductor();
    if f <= 2 {
        return Ok(Vec::new());
    }
    Ok(sieve_primes(f - 1)?
        .into_iter()
        .filter(|&p| f % p != 0 && splitting_type(&record.form, p) == SplittingType::Inert)
        .collect())
}

/// A decomposition `F = a + (F − a)` proving Heilbronn's criterion applies.
///
/// The record must be totally real with genus number one, where every
/// integer is a cubic residue modulo `F`.
pub fn heilbronn_witness(record: &CubicFieldRecord) -> Result<Option<Witness>> {
    if record.genus_exponent != 0 || record.delta <= 0 {
        return Err(Error::Domain(format!(
            "Heilbronn's criterion is applied to totally real fields of genus number one; Δ = {} has genus exponent {}",
            record.delta, record.genus_exponent
        )));
    }
    let f = record.conductor();
    let inert = inert_primes_below_conductor(record)?;
    if inert.len() < 2 {
        return Ok(None);
    }
    for a in 1..f {
        let pa = obstructing_primes(a, f);
        let Some(&p) = pa.iter().find(|p| inert.contains(p)) else { continue };
        let qa = obstructing_primes(f - a, f);
        if let Some(&q) = qa.iter().find(|q| inert.contains(q)) {
            return Ok(Some(Witness { a, p, q }));
        }
    }
    Ok(None)
}

pub fn criterion_applies(record: &CubicFieldRecord) -> Result<bool> {
    Ok(heilbronn_witness(record)?.is_some())
}
