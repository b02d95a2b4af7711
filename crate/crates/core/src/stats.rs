//! Empirical moments, point-mass densities and histograms over scan records,
//! and ranking of catalog groups against the observed statistics.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::haar::{Catalog, STGroupEntry, Statistic};
use crate::lpoly::{normalize, predicted_count, weil_check, LPoly};
use crate::{Error, Result};

/// One good prime of a scan. Genus 2 records carry `n2`, `c2` and `a2bar`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub p: u64,
    pub n1: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u64>,
    pub c1: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<i64>,
    pub a1bar: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2bar: Option<f64>,
}

impl ScanRecord {
    pub fn new(lp: &LPoly, n1: u64, n2: Option<u64>) -> Self {
        let norm = normalize(lp);
        ScanRecord {
            p: lp.p,
            n1,
            n2,
            c1: lp.c1,
            c2: lp.c2,
            a1bar: norm.a1bar,
            a2bar: norm.a2bar,
        }
    }

    pub fn genus(&self) -> u8 {
        if self.c2.is_some() {
            2
        } else {
            1
        }
    }

    pub fn lpoly(&self) -> LPoly {
        LPoly {
            genus: self.genus(),
            p: self.p,
            c1: self.c1,
            c2: self.c2,
        }
    }

    /// Checks internal consistency: matching optional fields, the Weil
    /// bound, the count relation and the stored normalized values.
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidInput(format!("record p = {}: {reason}", self.p)));
        if self.c2.is_some() != self.a2bar.is_some() || self.c2.is_some() != self.n2.is_some() {
            return bad("genus 2 fields must be all present or all absent".into());
        }
        if self.n1 as i128 != self.p as i128 + 1 + self.c1 as i128 {
            return bad(format!("n1 = {} inconsistent with c1 = {}", self.n1, self.c1));
        }
        let lp = self.lpoly();
        if !weil_check(&lp) {
            return Err(Error::WeilViolation {
                p: self.p,
                detail: format!("c1 = {}, c2 = {:?}", self.c1, self.c2),
            });
        }
        if let Some(n2) = self.n2 {
            let expected = predicted_count(&lp, 2)?;
            if n2 as i128 != expected {
                return bad(format!("n2 = {n2} inconsistent with c1, c2 (expected {expected})"));
            }
        }
        let norm = normalize(&lp);
        if norm.a1bar != self.a1bar || norm.a2bar != self.a2bar {
            return bad("normalized coefficients do not match c1, c2".into());
        }
        Ok(())
    }

    fn value(&self, statistic: Statistic) -> Option<f64> {
        match statistic {
            Statistic::A1 => Some(self.a1bar),
            Statistic::A2 => self.a2bar,
        }
    }
}

fn uniform_genus(records: &[ScanRecord]) -> Result<u8> {
    let first = records.first().ok_or(Error::Empty("scan records"))?.genus();
    match records.iter().find(|r| r.genus() != first) {
        Some(r) => Err(Error::GenusMismatch {
            expected: first,
            found: r.genus(),
        }),
        None => Ok(first),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub d1: u32,
    pub d2: u32,
    pub value: f64,
    pub std_err: f64,
    pub n: usize,
}

/// Moments over the records with `p <= bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrefixMoments {
    pub bound: u64,
    pub entries: Vec<MomentEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub genus: u8,
    pub dmax: u32,
    /// `(d1, d2)` in lexicographic order; `d2 = 0` only in genus 1.
    pub entries: Vec<MomentEntry>,
    /// Prefix tables at `2^10, 2^11, ...` below the largest prime.
    pub cutoffs: Vec<PrefixMoments>,
}

impl MomentTable {
    pub fn get(&self, d1: u32, d2: u32) -> Option<&MomentEntry> {
        self.entries.iter().find(|e| e.d1 == d1 && e.d2 == d2)
    }

    /// Exact moments of a catalog entry as a table with zero standard errors.
    pub fn theoretical(entry: &STGroupEntry, dmax: u32) -> Result<Self> {
        let entries = moment_grid(entry.genus, dmax)
            .into_iter()
            .map(|(d1, d2)| {
                Ok(MomentEntry {
                    d1,
                    d2,
                    value: to_f64(&entry.exact_moment(d1, d2)?),
                    std_err: 0.0,
                    n: 0,
                })
            })
            .collect::<Result<_>>()?;
        Ok(MomentTable {
            genus: entry.genus,
            dmax,
            entries,
            cutoffs: Vec::new(),
        })
    }
}

fn moment_grid(genus: u8, dmax: u32) -> Vec<(u32, u32)> {
    let d2max = if genus == 2 { dmax } else { 0 };
    (0..=dmax)
        .flat_map(|d1| (0..=d2max).map(move |d2| (d1, d2)))
        .collect()
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Running power sums for every tracked `(d1, d2)`.
#[derive(Debug, Clone, PartialEq)]
struct MomentAccumulator {
    pairs: Vec<(u32, u32)>,
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
    n: usize,
}

impl MomentAccumulator {
    fn new(pairs: Vec<(u32, u32)>) -> Self {
        let k = pairs.len();
        MomentAccumulator {
            pairs,
            sum: vec![0.0; k],
            sum_sq: vec![0.0; k],
            n: 0,
        }
    }

    fn push(&mut self, a1: f64, a2: f64) {
        for (i, &(d1, d2)) in self.pairs.iter().enumerate() {
            let x = a1.powi(d1 as i32) * a2.powi(d2 as i32);
            self.sum[i] += x;
            self.sum_sq[i] += x * x;
        }
        self.n += 1;
    }

    fn entries(&self) -> Vec<MomentEntry> {
        let n = self.n as f64;
        self.pairs
            .iter()
            .enumerate()
            .map(|(i, &(d1, d2))| {
                let mean = self.sum[i] / n;
                let std_err = if self.n > 1 {
                    let var = (self.sum_sq[i] - n * mean * mean) / (n - 1.0);
                    (var.max(0.0) / n).sqrt()
                } else {
                    0.0
                };
                MomentEntry {
                    d1,
                    d2,
                    value: mean,
                    std_err,
                    n: self.n,
                }
            })
            .collect()
    }
}

pub const FIRST_CUTOFF_LOG2: u32 = 10;

/// Averages of `a1bar^d1 a2bar^d2` for `d1, d2 <= dmax` (`d2 = 0` in genus 1),
/// accumulated in ascending-prime order.
pub fn empirical_moments(records: &[ScanRecord], dmax: u32) -> Result<MomentTable> {
    let genus = uniform_genus(records)?;
    let mut sorted: Vec<&ScanRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.p);
    let mut acc = MomentAccumulator::new(moment_grid(genus, dmax));
    let mut cutoffs = Vec::new();
    let mut next = 1u64 << FIRST_CUTOFF_LOG2;
    for r in sorted {
        while r.p > next {
            if acc.n > 0 {
                cutoffs.push(PrefixMoments {
                    bound: next,
                    entries: acc.entries(),
                });
            }
            next *= 2;
        }
        acc.push(r.a1bar, r.a2bar.unwrap_or(0.0));
    }
    Ok(MomentTable {
        genus,
        dmax,
        entries: acc.entries(),
        cutoffs,
    })
}

/// Whether a record hits `statistic = v` exactly: `a1bar = v` iff `c1 = v sqrt p`
/// (only `v = 0` is possible), `a2bar = v` iff `c2 = v p`.
pub fn record_hits(record: &ScanRecord, statistic: Statistic, v: i64) -> Result<bool> {
    match statistic {
        Statistic::A1 => Ok(v == 0 && record.c1 == 0),
        Statistic::A2 => record
            .c2
            .map(|c2| c2 as i128 == v as i128 * record.p as i128)
            .ok_or(Error::GenusMismatch {
                expected: 2,
                found: record.genus(),
            }),
    }
}

/// Exact fraction of records at `statistic = v`; zero for no records.
pub fn empirical_density(records: &[ScanRecord], statistic: Statistic, v: i64) -> Result<BigRational> {
    if records.is_empty() {
        return Ok(BigRational::zero());
    }
    let mut hits = 0usize;
    for r in records {
        if record_hits(r, statistic, v)? {
            hits += 1;
        }
    }
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(records.len())))
}

/// Observed point mass, as fed to [`classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    pub statistic: Statistic,
    pub value: i64,
    pub fraction: f64,
    pub n: usize,
}

impl DensityEstimate {
    pub fn std_err(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (self.fraction * (1.0 - self.fraction) / self.n as f64).sqrt()
    }
}

/// Point masses tracked for classification in the given genus.
pub fn tracked_masses(genus: u8) -> Vec<(Statistic, i64)> {
    let mut out = vec![(Statistic::A1, 0)];
    if genus == 2 {
        out.extend((-2..=2).map(|v| (Statistic::A2, v)));
    }
    out
}

/// Moments tracked for classification in the given genus.
pub fn tracked_moments(genus: u8) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = (1..=6).map(|d1| (d1, 0)).collect();
    if genus == 2 {
        out.extend((1..=3).map(|d2| (0, d2)));
        out.push((2, 1));
    }
    out
}

pub fn empirical_densities(records: &[ScanRecord]) -> Result<Vec<DensityEstimate>> {
    let genus = uniform_genus(records)?;
    tracked_masses(genus)
        .into_iter()
        .map(|(statistic, value)| {
            Ok(DensityEstimate {
                statistic,
                value,
                fraction: to_f64(&empirical_density(records, statistic, value)?),
                n: records.len(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramRow {
    pub left: f64,
    pub right: f64,
    pub count: usize,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub rows: Vec<HistogramRow>,
    /// Values outside the range that were counted in an end bin.
    pub clamped: usize,
}

/// Equal-width histogram over `[lo, hi]`; the last bin is closed.
pub fn histogram_values(values: &[f64], bins: usize, range: (f64, f64)) -> Result<Histogram> {
    let (lo, hi) = range;
    if bins == 0 {
        return Err(Error::InvalidInput("histogram needs at least one bin".into()));
    }
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!("empty histogram range [{lo}, {hi}]")));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    let mut clamped = 0;
    for &v in values {
        if v < lo || v > hi {
            clamped += 1;
        }
        let k = ((v - lo) / width).floor();
        let k = if k.is_nan() || k < 0.0 { 0 } else { (k as usize).min(bins - 1) };
        counts[k] += 1;
    }
    let n = values.len();
    let rows = counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramRow {
            left: lo + i as f64 * width,
            right: if i + 1 == bins { hi } else { lo + (i + 1) as f64 * width },
            count,
            density: if n == 0 { 0.0 } else { count as f64 / (n as f64 * width) },
        })
        .collect();
    Ok(Histogram { rows, clamped })
}

pub fn histogram(
    records: &[ScanRecord],
    statistic: Statistic,
    bins: usize,
    range: (f64, f64),
) -> Result<Histogram> {
    let values = records
        .iter()
        .map(|r| {
            r.value(statistic).ok_or(Error::GenusMismatch {
                expected: 2,
                found: r.genus(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    histogram_values(&values, bins, range)
}

pub const SCORE_EPSILON: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct Ranked {
    pub id: &'static str,
    pub genus: u8,
    pub score: f64,
}

/// Ranks the catalog groups of the table's genus by the sum of squared
/// standardized residuals over the tracked moments and point masses.
/// Standard errors are floored at [`SCORE_EPSILON`].
pub fn classify(table: &MomentTable, densities: &[DensityEstimate], catalog: &Catalog) -> Result<Vec<Ranked>> {
    let genus = table.genus;
    if genus == 1 {
        if let Some(d) = densities.iter().find(|d| d.statistic == Statistic::A2) {
            return Err(Error::InvalidInput(format!(
                "a2 point mass at {} supplied for a genus 1 table",
                d.value
            )));
        }
    }
    let moments = tracked_moments(genus)
        .into_iter()
        .map(|(d1, d2)| {
            table.get(d1, d2).copied().ok_or_else(|| {
                Error::InvalidInput(format!("moment table lacks M[{d1}][{d2}] needed for classification"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let z2 = |emp: f64, theo: f64, se: f64| ((emp - theo) / se.max(SCORE_EPSILON)).powi(2);

    let mut ranked = Vec::new();
    for entry in catalog.genus(genus) {
        let mut score = 0.0;
        for m in &moments {
            score += z2(m.value, to_f64(&entry.exact_moment(m.d1, m.d2)?), m.std_err);
        }
        for d in densities {
            let theo = entry.theoretical_density(d.statistic, &BigRational::from_integer(d.value.into()))?;
            score += z2(d.fraction, to_f64(&theo), d.std_err());
        }
        ranked.push(Ranked {
            id: entry.id,
            genus,
            score,
        });
    }
    if ranked.is_empty() {
        return Err(Error::GenusMismatch { expected: 2, found: genus });
    }
    ranked.sort_by(|a, b| {
        a.score
            .partial_cmp(&b.score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.id.cmp(b.id))
    });
    Ok(ranked)
}

/// Exact point masses of a catalog entry at the tracked values.
pub fn theoretical_densities(entry: &STGroupEntry) -> Result<Vec<DensityEstimate>> {
    tracked_masses(entry.genus)
        .into_iter()
        .map(|(statistic, value)| {
            let mass = entry.theoretical_density(statistic, &BigRational::from_integer(value.into()))?;
            Ok(DensityEstimate {
                statistic,
                value,
                fraction: to_f64(&mass),
                n: 0,
            })
        })
        .collect()
}
