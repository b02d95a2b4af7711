//! Sato-Tate groups: exact Haar moments by constant-term extraction,
//! rejection samplers on the maximal torus, point masses and the
//! component-group catalog for abelian surfaces.
//!
//! A connected group is described by its maximal torus (rank 1 or 2), the
//! eigenvalues of a torus element in the symplectic representation (a
//! multiset of monomials `z^v`) and its positive roots. Weyl integration turns
//! the Haar average of a class function into the constant term of
//! `class_function * D`, with the Laurent polynomial
//!
//! ```text
//! D = (1 / |W|) * prod_{alpha > 0} (1 - z^alpha)(1 - z^{-alpha})
//! ```
//!
//! Coefficient characters are the elementary symmetric functions of the
//! eigenvalues, so all moments are exact rationals (and in fact integers).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::Exec;
use crate::{Error, Result};

/// Exponent vector of a torus monomial `z1^e[0] z2^e[1]`; rank-1 tori use `e[1] = 0`.
pub type Exponent = [i32; 2];

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse Laurent polynomial in at most two variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigRational>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(e, c)| (e, c.to_string())))
            .finish()
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial([0, 0], BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial([0, 0], c)
    }

    pub fn monomial(e: Exponent, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff([0, 0])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term([a[0] + b[0], a[1] + b[1]], ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Constant term of `self * other`, without forming the product.
    pub fn pairing(&self, other: &Self) -> BigRational {
        self.terms
            .iter()
            .filter_map(|(e, c)| other.terms.get(&[-e[0], -e[1]]).map(|d| c * d))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// True iff the polynomial is invariant under `z -> z^{-1}`.
    pub fn is_self_inverse(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&[-e[0], -e[1]]) == Some(c))
    }

    /// Value at `z_j = exp(i theta_j)`, real part.
    pub fn eval_real(&self, theta: [f64; 2]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let phase = e[0] as f64 * theta[0] + e[1] as f64 * theta[1];
                c.to_f64().unwrap_or(f64::NAN) * phase.cos()
            })
            .sum()
    }
}

/// Normalized Weyl density `(1/|W|) prod_{alpha in roots} (1 - z^alpha)` over
/// positive roots and their negatives.
pub fn weyl_density_from_roots(positive_roots: &[Exponent], weyl_order: u32) -> LaurentPoly {
    let mut d = LaurentPoly::constant(ratio(1, weyl_order as i64));
    for &a in positive_roots {
        for sign in [1, -1] {
            let factor = LaurentPoly::one().add(&LaurentPoly::monomial(
                [sign * a[0], sign * a[1]],
                -BigRational::one(),
            ));
            d = d.mul(&factor);
        }
    }
    d
}

/// `e_k` of the eigenvalue multiset, as a Laurent polynomial.
pub fn elementary_symmetric(pattern: &[Exponent], k: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let n = pattern.len();
    match k {
        0 => return LaurentPoly::one(),
        1 => {
            for &v in pattern {
                out.add_term(v, BigRational::one());
            }
        }
        2 => {
            for i in 0..n {
                for j in i + 1..n {
                    out.add_term(
                        [pattern[i][0] + pattern[j][0], pattern[i][1] + pattern[j][1]],
                        BigRational::one(),
                    );
                }
            }
        }
        _ => unimplemented!("only e_1 and e_2 are used"),
    }
    out
}

/// Which statistic a point mass or density refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistic {
    A1,
    A2,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::A1 => "a1",
            Statistic::A2 => "a2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "a1" => Ok(Statistic::A1),
            "a2" => Ok(Statistic::A2),
            other => Err(Error::InvalidInput(format!("unknown statistic `{other}`"))),
        }
    }
}

/// Closed-form even moment sequences of genus 1 Sato-Tate measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `(2d)! / (d! (d+1)!)`
    Catalan,
    /// `(2d)! / (d!)^2`
    CentralBinomial,
    /// `(2d)! / (2 (d!)^2)` for `d >= 1`
    HalfCentralBinomial,
}

impl ClosedForm {
    /// Moment of order `n` (zero for odd `n`).
    pub fn moment(self, n: u32) -> BigRational {
        if n % 2 == 1 {
            return BigRational::zero();
        }
        let d = n / 2;
        let central = binomial(2 * d, d);
        let v = match self {
            ClosedForm::Catalan => BigRational::new(central, BigInt::from(d + 1)),
            ClosedForm::CentralBinomial => BigRational::from_integer(central),
            ClosedForm::HalfCentralBinomial if d == 0 => BigRational::one(),
            ClosedForm::HalfCentralBinomial => BigRational::new(central, BigInt::from(2)),
        };
        v
    }

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::Catalan => "catalan",
            ClosedForm::CentralBinomial => "central_binomial",
            ClosedForm::HalfCentralBinomial => "half_central_binomial",
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// One listing in the component-group table of a connected part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRow {
    pub label: &'static str,
    pub q_realizable: bool,
}

/// How an entry's Haar measure is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realization {
    /// The connected group itself.
    Connected,
    /// Normalizer of the torus in `SU(2)`: the torus plus a component on
    /// which the trace vanishes, each with weight 1/2.
    TorusNormalizer,
}

#[derive(Debug, Clone)]
pub struct PointMass {
    pub statistic: Statistic,
    pub value: i64,
    pub mass: BigRational,
}

/// A catalog entry.
#[derive(Debug, Clone)]
pub struct STGroupEntry {
    pub id: &'static str,
    /// Conventional name of the same group with `SO(2)` for the torus.
    pub classical_name: &'static str,
    pub genus: u8,
    pub torus_rank: u8,
    pub eigenvalue_pattern: Vec<Exponent>,
    pub positive_roots: Vec<Exponent>,
    pub weyl_order: u32,
    pub weyl_density: LaurentPoly,
    pub realization: Realization,
    /// Component-group listings; for genus 2 these are the rows of the
    /// classification table for this connected part.
    pub components: Vec<ComponentRow>,
    /// Absolute type letter and real endomorphism algebra (genus 2 only).
    pub absolute_type: Option<(char, &'static str)>,
    pub q_realizable: bool,
    pub closed_form_moments: Option<ClosedForm>,
    pub point_masses: Vec<PointMass>,
    /// Upper bound of the torus density, used as the rejection envelope.
    envelope: f64,
}

/// Component groups with multiplicity, in first-listed order.
pub fn component_multiplicities(rows: &[ComponentRow]) -> Vec<(&'static str, usize)> {
    let mut out: Vec<(&'static str, usize)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|(l, _)| *l == r.label) {
            Some((_, n)) => *n += 1,
            None => out.push((r.label, 1)),
        }
    }
    out
}

impl STGroupEntry {
    pub fn is_connected(&self) -> bool {
        self.realization == Realization::Connected
    }

    /// `k`-th elementary symmetric function of the eigenvalues.
    pub fn coeff_character(&self, k: usize) -> Result<LaurentPoly> {
        if k == 0 || k > self.genus as usize {
            return Err(Error::InvalidInput(format!(
                "coefficient a{k} is not defined for genus {}",
                self.genus
            )));
        }
        Ok(elementary_symmetric(&self.eigenvalue_pattern, k))
    }

    /// Haar average of `a1^d1 a2^d2` over the connected part (the identity component).
    pub fn identity_component_moment(&self, d1: u32, d2: u32) -> Result<BigRational> {
        if d2 > 0 && self.genus < 2 {
            return Err(Error::InvalidInput("a2 moments need genus 2".into()));
        }
        let left = self.coeff_character(1)?.pow(d1);
        let right = if d2 > 0 {
            self.coeff_character(2)?.pow(d2).mul(&self.weyl_density)
        } else {
            self.weyl_density.clone()
        };
        Ok(left.pairing(&right))
    }

    /// `E[a1^d1 a2^d2]` for Haar measure on the whole group.
    pub fn exact_moment(&self, d1: u32, d2: u32) -> Result<BigRational> {
        match self.realization {
            Realization::Connected => self.identity_component_moment(d1, d2),
            Realization::TorusNormalizer => {
                if d2 > 0 {
                    return Err(Error::InvalidInput("a2 moments need genus 2".into()));
                }
                self.component_moment(d1)
            }
        }
    }

    /// Average over components of the `a1` moment of order `d`.
    pub fn component_moment(&self, d: u32) -> Result<BigRational> {
        match self.realization {
            Realization::Connected => self.identity_component_moment(d, 0),
            Realization::TorusNormalizer => {
                let identity = self.identity_component_moment(d, 0)?;
                // trace vanishes identically on the other component
                let other = if d == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                Ok((identity + other) / BigRational::from_integer(BigInt::from(2)))
            }
        }
    }

    /// Point mass of `statistic` at `v`.
    pub fn theoretical_density(&self, statistic: Statistic, v: &BigRational) -> Result<BigRational> {
        if statistic == Statistic::A2 && self.genus < 2 {
            return Err(Error::InvalidInput("a2 is not defined in genus 1".into()));
        }
        Ok(self
            .point_masses
            .iter()
            .filter(|m| m.statistic == statistic && BigRational::from_integer(m.value.into()) == *v)
            .fold(BigRational::zero(), |acc, m| acc + &m.mass))
    }

    /// Torus density from the root product, `(1/|W|) prod |1 - e^{i<alpha, theta>}|^2`.
    pub fn density_at(&self, theta: [f64; 2]) -> f64 {
        let prod: f64 = self
            .positive_roots
            .iter()
            .map(|a| 2.0 - 2.0 * (a[0] as f64 * theta[0] + a[1] as f64 * theta[1]).cos())
            .product();
        prod / self.weyl_order as f64
    }

    pub fn envelope(&self) -> f64 {
        self.envelope
    }

    /// Coefficients `(a1, a2)` of a class with the given eigenangles, as
    /// elementary symmetric functions of the eigenvalues.
    pub fn class_coefficients(&self, class: &ClassSample) -> (f64, f64) {
        if class.component != 0 {
            return (0.0, 0.0);
        }
        let angle = |v: &Exponent| v[0] as f64 * class.angles[0] + v[1] as f64 * class.angles[1];
        let pat = &self.eigenvalue_pattern;
        let a1 = pat.iter().map(|v| angle(v).cos()).sum();
        let mut a2 = 0.0;
        for i in 0..pat.len() {
            for j in i + 1..pat.len() {
                a2 += (angle(&pat[i]) + angle(&pat[j])).cos();
            }
        }
        (a1, a2)
    }

    /// One Haar-random conjugacy class drawn from `rng`.
    pub fn sample_with<R: Rng>(&self, rng: &mut R) -> ClassSample {
        if self.realization == Realization::TorusNormalizer && rng.gen_bool(0.5) {
            return ClassSample {
                angles: [PI / 2.0, 0.0],
                component: 1,
            };
        }
        loop {
            let mut angles = [0.0, 0.0];
            for a in angles.iter_mut().take(self.torus_rank as usize) {
                *a = rng.gen::<f64>() * PI;
            }
            let u: f64 = rng.gen::<f64>() * self.envelope;
            if u < self.density_at(angles) {
                return ClassSample {
                    angles,
                    component: 0,
                };
            }
        }
    }
}

/// A sampled conjugacy class: torus eigenangles in `[0, pi]` and the
/// component index (0 for the identity component).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassSample {
    pub angles: [f64; 2],
    pub component: usize,
}

/// Eigenangles of one class drawn with a generator seeded by `seed`.
pub fn sample_class(entry: &STGroupEntry, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = entry.sample_with(&mut rng);
    s.angles[..entry.torus_rank as usize].to_vec()
}

const SAMPLE_CHUNK: usize = 1 << 14;

/// `n` classes; chunk `k` uses stream `k` of a ChaCha generator keyed by
/// `seed`, so the output does not depend on the execution policy.
pub fn sample_classes(entry: &STGroupEntry, seed: u64, n: usize, exec: Exec) -> Vec<ClassSample> {
    let chunks = n.div_ceil(SAMPLE_CHUNK);
    exec.map_range(chunks, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let len = SAMPLE_CHUNK.min(n - k * SAMPLE_CHUNK);
        (0..len).map(|_| entry.sample_with(&mut rng)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Monte Carlo estimate of one joint moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloMoment {
    pub d1: u32,
    pub d2: u32,
    pub mean: f64,
    pub std_err: f64,
    pub n: usize,
}

/// Estimates `E[a1^d1 a2^d2]` for every `(d1, d2)` with `d1 + 2 d2 <= max_weight`.
pub fn monte_carlo_moments(
    entry: &STGroupEntry,
    seed: u64,
    n: usize,
    max_weight: u32,
    exec: Exec,
) -> Vec<MonteCarloMoment> {
    let pairs: Vec<(u32, u32)> = weight_pairs(entry.genus, max_weight);
    let chunks = n.div_ceil(SAMPLE_CHUNK);
    let partial = exec.map_range(chunks, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let len = SAMPLE_CHUNK.min(n - k * SAMPLE_CHUNK);
        let mut sums = vec![(0.0f64, 0.0f64); pairs.len()];
        for _ in 0..len {
            let (a1, a2) = entry.class_coefficients(&entry.sample_with(&mut rng));
            for (slot, &(d1, d2)) in sums.iter_mut().zip(&pairs) {
                let x = a1.powi(d1 as i32) * a2.powi(d2 as i32);
                slot.0 += x;
                slot.1 += x * x;
            }
        }
        sums
    });
    let mut totals = vec![(0.0f64, 0.0f64); pairs.len()];
    for chunk in partial {
        for (t, c) in totals.iter_mut().zip(chunk) {
            t.0 += c.0;
            t.1 += c.1;
        }
    }
    let nf = n as f64;
    pairs
        .iter()
        .zip(totals)
        .map(|(&(d1, d2), (s, s2))| {
            let mean = s / nf;
            let var = ((s2 - nf * mean * mean) / (nf - 1.0)).max(0.0);
            MonteCarloMoment {
                d1,
                d2,
                mean,
                std_err: (var / nf).sqrt(),
                n,
            }
        })
        .collect()
}

/// All `(d1, d2)` with `d1 + 2 d2 <= max_weight` (`d2 = 0` in genus 1).
pub fn weight_pairs(genus: u8, max_weight: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d2 in 0..=if genus == 2 { max_weight / 2 } else { 0 } {
        for d1 in 0..=max_weight - 2 * d2 {
            out.push((d1, d2));
        }
    }
    out
}

/// Outcome of checking the Sato-Tate axioms against an entry's data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub id: &'static str,
    pub genus: u8,
    /// Eigenvalue multiset has `2g` members and is closed under inversion.
    pub st1: bool,
    /// Some cocharacter of the torus has eigenvalues `u, u^-1` (each `g` times).
    pub st2: bool,
    /// All Haar averages of `a1^d1 a2^d2` with `d1 + 2 d2 <= 12` over every
    /// component are integers.
    pub st3: bool,
    /// Axiom clauses that cannot be decided from catalog data.
    pub unverified: Vec<&'static str>,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.st1 && self.st2 && self.st3
    }
}

pub const ST3_MAX_WEIGHT: u32 = 12;

/// Whether the eigenvalue pattern is closed under `v -> -v` (with multiplicity).
pub fn pattern_is_symplectic(pattern: &[Exponent], genus: u8) -> bool {
    if pattern.len() != 2 * genus as usize {
        return false;
    }
    let mut fwd: Vec<Exponent> = pattern.to_vec();
    let mut inv: Vec<Exponent> = pattern.iter().map(|v| [-v[0], -v[1]]).collect();
    fwd.sort();
    inv.sort();
    fwd == inv
}

/// Searches cocharacters `lambda` in a small box for one whose pairings with
/// the pattern give `{1, -1}` each `genus` times.
pub fn pattern_has_st2_cocharacter(pattern: &[Exponent], rank: u8, genus: u8) -> bool {
    let mut target: Vec<i32> = std::iter::repeat([1, -1])
        .take(genus as usize)
        .flatten()
        .collect();
    target.sort();
    let range = -3..=3;
    for l0 in range.clone() {
        for l1 in if rank >= 2 { range.clone() } else { 0..=0 } {
            let mut got: Vec<i32> = pattern.iter().map(|v| v[0] * l0 + v[1] * l1).collect();
            got.sort();
            if got == target {
                return true;
            }
        }
    }
    false
}

pub fn st_axiom_check(entry: &STGroupEntry) -> AxiomReport {
    let mut violations = Vec::new();
    let st1 = pattern_is_symplectic(&entry.eigenvalue_pattern, entry.genus)
        && entry.weyl_density.constant_term() == BigRational::one();
    if !st1 {
        violations.push("ST1: eigenvalues are not a symplectic multiset or Haar measure is not normalized".into());
    }
    let st2 = pattern_has_st2_cocharacter(&entry.eigenvalue_pattern, entry.torus_rank, entry.genus);
    if !st2 {
        violations.push("ST2: no cocharacter with eigenvalues u, u^-1 of multiplicity g".into());
    }
    let mut st3 = true;
    for (d1, d2) in weight_pairs(entry.genus, ST3_MAX_WEIGHT) {
        let mut values = vec![entry.identity_component_moment(d1, d2)];
        if entry.realization == Realization::TorusNormalizer {
            // trace is identically zero on the non-identity component
            values.push(Ok(if d1 == 0 { BigRational::one() } else { BigRational::zero() }));
        }
        for v in values {
            match v {
                Ok(v) if v.is_integer() && !v.is_negative() => {}
                Ok(v) => {
                    st3 = false;
                    violations.push(format!("ST3: moment ({d1},{d2}) = {v} is not a nonnegative integer"));
                }
                Err(e) => {
                    st3 = false;
                    violations.push(format!("ST3: moment ({d1},{d2}) failed: {e}"));
                }
            }
        }
    }
    AxiomReport {
        id: entry.id,
        genus: entry.genus,
        st1,
        st2,
        st3,
        unverified: vec!["ST2: cocharacter does not factor through a proper normal subgroup"],
        violations,
    }
}

/// The catalog: three genus 1 groups and the six connected parts for abelian
/// surfaces, the latter with their component-group listings.
#[derive(Debug)]
pub struct Catalog {
    entries: Vec<STGroupEntry>,
}

impl Catalog {
    pub fn entries(&self) -> &[STGroupEntry] {
        &self.entries
    }

    pub fn genus(&self, genus: u8) -> impl Iterator<Item = &STGroupEntry> {
        self.entries.iter().filter(move |e| e.genus == genus)
    }

    pub fn get(&self, id: &str, genus: u8) -> Result<&STGroupEntry> {
        self.entries
            .iter()
            .find(|e| e.id == id && e.genus == genus)
            .ok_or_else(|| Error::UnknownGroup(format!("{id} (genus {genus})")))
    }

    /// Component-group listings over all genus 2 connected parts.
    pub fn genus2_component_rows(&self) -> impl Iterator<Item = (&STGroupEntry, &ComponentRow)> {
        self.genus(2)
            .flat_map(|e| e.components.iter().map(move |r| (e, r)))
    }
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

/// Shorthand for `catalog().get(id, genus)`.
pub fn lookup(id: &str, genus: u8) -> Result<&'static STGroupEntry> {
    catalog().get(id, genus)
}

pub fn weyl_density(id: &str, genus: u8) -> Result<LaurentPoly> {
    Ok(lookup(id, genus)?.weyl_density.clone())
}

pub fn coeff_character(id: &str, genus: u8, k: usize) -> Result<LaurentPoly> {
    lookup(id, genus)?.coeff_character(k)
}

pub fn exact_moment(id: &str, genus: u8, d1: u32, d2: u32) -> Result<BigRational> {
    lookup(id, genus)?.exact_moment(d1, d2)
}

pub fn component_moment(id: &str, genus: u8, d: u32) -> Result<BigRational> {
    lookup(id, genus)?.component_moment(d)
}

pub fn theoretical_density(id: &str, genus: u8, statistic: Statistic, v: &BigRational) -> Result<BigRational> {
    lookup(id, genus)?.theoretical_density(statistic, v)
}

fn rows(spec: &[(&'static str, bool)]) -> Vec<ComponentRow> {
    spec.iter()
        .map(|&(label, q_realizable)| ComponentRow { label, q_realizable })
        .collect()
}

struct EntrySpec {
    id: &'static str,
    classical_name: &'static str,
    genus: u8,
    torus_rank: u8,
    pattern: Vec<Exponent>,
    roots: Vec<Exponent>,
    weyl_order: u32,
    realization: Realization,
    components: Vec<ComponentRow>,
    absolute_type: Option<(char, &'static str)>,
    q_realizable: bool,
    closed_form: Option<ClosedForm>,
    point_masses: Vec<PointMass>,
    envelope: f64,
}

impl EntrySpec {
    fn build(self) -> STGroupEntry {
        STGroupEntry {
            id: self.id,
            classical_name: self.classical_name,
            genus: self.genus,
            torus_rank: self.torus_rank,
            weyl_density: weyl_density_from_roots(&self.roots, self.weyl_order),
            eigenvalue_pattern: self.pattern,
            positive_roots: self.roots,
            weyl_order: self.weyl_order,
            realization: self.realization,
            components: self.components,
            absolute_type: self.absolute_type,
            q_realizable: self.q_realizable,
            closed_form_moments: self.closed_form,
            point_masses: self.point_masses,
            envelope: self.envelope,
        }
    }
}

fn build_catalog() -> Catalog {
    const Z: Exponent = [1, 0];
    const ZI: Exponent = [-1, 0];
    const W: Exponent = [0, 1];
    const WI: Exponent = [0, -1];
    // SU(2)-type roots on each torus coordinate, and the long/short roots of USp(4).
    const R1: Exponent = [2, 0];
    const R2: Exponent = [0, 2];
    const SUM: Exponent = [1, 1];
    const DIFF: Exponent = [1, -1];

    // Component groups per connected part, in table order. Flags mark the
    // 34 groups realized by abelian surfaces over Q.
    let so2_rows = rows(&[
        ("C1", false),
        ("C2", true),
        ("C2", true),
        ("C2", false),
        ("C3", false),
        ("C4", false),
        ("C4", false),
        ("C6", false),
        ("C6", false),
        ("C6", false),
        ("D2", true),
        ("D2", true),
        ("D2", false),
        ("D3", true),
        ("D3", false),
        ("D4", true),
        ("D4", true),
        ("D4", false),
        ("D6", true),
        ("D6", true),
        ("D6", true),
        ("D6", false),
        ("A4", false),
        ("S4", true),
        ("S4", false),
        ("C4xC2", true),
        ("C6xC2", true),
        ("D2xC2", true),
        ("D4xC2", true),
        ("D6xC2", true),
        ("A4xC2", false),
        ("S4xC2", true),
    ]);
    let su2_rows = rows(&[
        ("C1", true),
        ("C2", true),
        ("C2", true),
        ("C3", true),
        ("C4", true),
        ("C6", true),
        ("D2", true),
        ("D3", true),
        ("D4", true),
        ("D6", true),
    ]);
    let so2xso2_rows = rows(&[
        ("C1", false),
        ("C2", false),
        ("C2", true),
        ("C4", true),
        ("D2", true),
    ]);
    let so2xsu2_rows = rows(&[("C1", false), ("C2", true)]);
    let su2xsu2_rows = rows(&[("C1", true), ("C2", true)]);
    let usp4_rows = rows(&[("C1", true)]);

    let half_at_zero = vec![PointMass {
        statistic: Statistic::A1,
        value: 0,
        mass: ratio(1, 2),
    }];

    let specs = vec![
        EntrySpec {
            id: "U(1)",
            classical_name: "SO(2)",
            genus: 1,
            torus_rank: 1,
            pattern: vec![Z, ZI],
            roots: vec![],
            weyl_order: 1,
            realization: Realization::Connected,
            components: rows(&[("C1", false)]),
            absolute_type: None,
            q_realizable: false,
            closed_form: Some(ClosedForm::CentralBinomial),
            point_masses: vec![],
            envelope: 1.0,
        },
        EntrySpec {
            id: "SU(2)",
            classical_name: "SU(2)",
            genus: 1,
            torus_rank: 1,
            pattern: vec![Z, ZI],
            roots: vec![R1],
            weyl_order: 2,
            realization: Realization::Connected,
            components: rows(&[("C1", true)]),
            absolute_type: None,
            q_realizable: true,
            closed_form: Some(ClosedForm::Catalan),
            point_masses: vec![],
            envelope: 2.0,
        },
        EntrySpec {
            id: "N(U(1))",
            classical_name: "N(SO(2))",
            genus: 1,
            torus_rank: 1,
            pattern: vec![Z, ZI],
            roots: vec![],
            weyl_order: 1,
            realization: Realization::TorusNormalizer,
            components: rows(&[("C2", true)]),
            absolute_type: None,
            q_realizable: true,
            closed_form: Some(ClosedForm::HalfCentralBinomial),
            point_masses: half_at_zero,
            envelope: 1.0,
        },
        EntrySpec {
            id: "U(1)",
            classical_name: "SO(2)",
            genus: 2,
            torus_rank: 1,
            pattern: vec![Z, Z, ZI, ZI],
            roots: vec![],
            weyl_order: 1,
            realization: Realization::Connected,
            components: so2_rows,
            absolute_type: Some(('F', "M₂(ℂ)")),
            q_realizable: true,
            closed_form: None,
            point_masses: vec![],
            envelope: 1.0,
        },
        EntrySpec {
            id: "SU(2)",
            classical_name: "SU(2)",
            genus: 2,
            torus_rank: 1,
            pattern: vec![Z, Z, ZI, ZI],
            roots: vec![R1],
            weyl_order: 2,
            realization: Realization::Connected,
            components: su2_rows,
            absolute_type: Some(('E', "M₂(ℝ)")),
            q_realizable: true,
            closed_form: None,
            point_masses: vec![],
            envelope: 2.0,
        },
        EntrySpec {
            id: "U(1)xU(1)",
            classical_name: "SO(2)xSO(2)",
            genus: 2,
            torus_rank: 2,
            pattern: vec![Z, ZI, W, WI],
            roots: vec![],
            weyl_order: 1,
            realization: Realization::Connected,
            components: so2xso2_rows,
            absolute_type: Some(('D', "ℂ×ℂ")),
            q_realizable: true,
            closed_form: None,
            point_masses: vec![],
            envelope: 1.0,
        },
        EntrySpec {
            id: "U(1)xSU(2)",
            classical_name: "SO(2)xSU(2)",
            genus: 2,
            torus_rank: 2,
            pattern: vec![Z, ZI, W, WI],
            roots: vec![R2],
            weyl_order: 2,
            realization: Realization::Connected,
            components: so2xsu2_rows,
            absolute_type: Some(('C', "ℝ×ℂ")),
            q_realizable: true,
            closed_form: None,
            point_masses: vec![],
            envelope: 2.0,
        },
        EntrySpec {
            id: "SU(2)xSU(2)",
            classical_name: "SU(2)xSU(2)",
            genus: 2,
            torus_rank: 2,
            pattern: vec![Z, ZI, W, WI],
            roots: vec![R1, R2],
            weyl_order: 4,
            realization: Realization::Connected,
            components: su2xsu2_rows,
            absolute_type: Some(('B', "ℝ×ℝ")),
            q_realizable: true,
            closed_form: None,
            point_masses: vec![],
            envelope: 4.0,
        },
        EntrySpec {
            id: "USp(4)",
            classical_name: "USp(4)",
            genus: 2,
            torus_rank: 2,
            pattern: vec![Z, ZI, W, WI],
            roots: vec![R1, R2, SUM, DIFF],
            weyl_order: 8,
            realization: Realization::Connected,
            components: usp4_rows,
            absolute_type: Some(('A', "ℝ")),
            q_realizable: true,
            closed_form: None,
            point_masses: vec![],
            // max of 8 (1-u^2)(1-v^2)(u-v)^2 on [-1,1]^2 is 128/27
            envelope: 4.8,
        },
    ];
    Catalog {
        entries: specs.into_iter().map(EntrySpec::build).collect(),
    }
}
