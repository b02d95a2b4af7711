//! Factorization shapes of an integer polynomial modulo primes against the
//! cycle types of a supplied permutation group.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{sieve_primes, PolyModP};
use crate::exec::Exec;
use crate::{Error, Result};

/// Multiset of positive integers, stored in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&k| k > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// Degrees of the irreducible factors of `f mod p` (ascending integer
/// coefficients), or `None` when `p` divides the leading coefficient or
/// `f mod p` is not squarefree.
pub fn factorization_shape(f: &[i64], p: u64) -> Option<Partition> {
    let poly = PolyModP::from_i64(p, f);
    let n = f.iter().rposition(|&c| c != 0)?;
    if poly.degree() != Some(n) {
        return None;
    }
    if n == 0 {
        return Some(Partition::new(vec![]));
    }
    if poly.gcd(&poly.derivative()).degree() != Some(0) {
        return None;
    }
    Some(distinct_degree_shape(poly.monic()))
}

/// Distinct-degree splitting of a squarefree monic polynomial: the factor of
/// `g` collecting degree-`i` irreducibles is `gcd(x^{p^i} - x, g)`.
fn distinct_degree_shape(mut g: PolyModP) -> Partition {
    let p = g.p();
    let x = PolyModP::x(p);
    let mut parts = Vec::new();
    let mut h = x.clone();
    let mut i = 1;
    while g.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(p, &g).expect("g has positive degree");
        let d = h.sub(&x).gcd(&g);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 {
            parts.extend(std::iter::repeat(i).take(dd / i));
            g = g.div_rem(&d).expect("d is nonzero").0;
            h = h.rem(&g).expect("g is nonzero");
        }
        i += 1;
    }
    if let Some(rest) = g.degree().filter(|&d| d > 0) {
        parts.push(rest);
    }
    Partition::new(parts)
}

/// A permutation of `0..n` as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `self` after `other`: `i -> self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            if len > 0 {
                parts.push(len);
            }
        }
        Partition::new(parts)
    }
}

/// Parses cycle notation on points `1..=n`, one generator per parenthesised
/// group separated by commas, e.g. `"(1 2),(1 2 3)"`. Adjacent groups with no
/// comma, as in `"(1 2)(3 4)"`, form a single product generator.
pub fn parse_generators(s: &str, n: usize) -> Result<Vec<Permutation>> {
    let mut gens = Vec::new();
    let mut depth = 0;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth -= 1;
                current.push(ch);
            }
            ',' if depth == 0 => {
                gens.push(parse_cycle_product(&current, n)?);
                current.clear();
            }
            _ => current.push(ch),
        }
        if depth < 0 || depth > 1 {
            return Err(Error::InvalidInput(format!("unbalanced parentheses in `{s}`")));
        }
    }
    if depth != 0 {
        return Err(Error::InvalidInput(format!("unbalanced parentheses in `{s}`")));
    }
    if !current.trim().is_empty() {
        gens.push(parse_cycle_product(&current, n)?);
    }
    Ok(gens)
}

fn parse_cycle_product(s: &str, n: usize) -> Result<Permutation> {
    let mut perm = Permutation::identity(n);
    let s = s.trim();
    if s.is_empty() {
        return Ok(perm);
    }
    for chunk in s.split(')') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let body = chunk
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidInput(format!("expected `(` in `{s}`")))?;
        let points = body
            .split(|c: char| c.is_whitespace() || c == ';')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let k: usize = t
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad point `{t}` in `{s}`")))?;
                if k == 0 || k > n {
                    return Err(Error::InvalidInput(format!("point {k} outside 1..={n}")));
                }
                Ok(k - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        let distinct: HashSet<usize> = points.iter().copied().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidInput(format!("repeated point in cycle `{chunk})`")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &pt) in points.iter().enumerate() {
            images[pt] = points[(i + 1) % points.len()];
        }
        let cycle = Permutation(images);
        // cycles act right to left, so the rightmost is applied first
        perm = perm.compose(&cycle);
    }
    Ok(perm)
}

pub const MAX_GROUP_ORDER: usize = 10_000;

/// Elements of the group generated by `gens` on `n` points.
pub fn group_closure(gens: &[Permutation], n: usize) -> Result<Vec<Permutation>> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::InvalidInput(format!(
            "generator on {} points, expected {n}",
            g.degree()
        )));
    }
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                if seen.len() > MAX_GROUP_ORDER {
                    return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
                }
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(order)
}

/// Probability that a uniformly random element has each cycle type.
pub fn cycle_type_distribution(gens: &[Permutation], n: usize) -> Result<BTreeMap<Partition, BigRational>> {
    let elements = group_closure(gens, n)?;
    let mut counts: BTreeMap<Partition, usize> = BTreeMap::new();
    for g in &elements {
        *counts.entry(g.cycle_type()).or_insert(0) += 1;
    }
    let order = BigInt::from(elements.len());
    Ok(counts
        .into_iter()
        .map(|(k, c)| (k, BigRational::new(BigInt::from(c), order.clone())))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionStats {
    /// Ascending integer coefficients.
    pub f: Vec<i64>,
    pub predicted: BTreeMap<Partition, BigRational>,
    pub observed: BTreeMap<Partition, u64>,
    pub primes_used: u64,
    pub skipped: Vec<u64>,
}

impl PartitionStats {
    pub fn frequency(&self, shape: &Partition) -> f64 {
        if self.primes_used == 0 {
            return 0.0;
        }
        self.observed.get(shape).copied().unwrap_or(0) as f64 / self.primes_used as f64
    }

    /// Observed shapes that the group cannot produce.
    pub fn impossible_shapes(&self) -> Vec<&Partition> {
        self.observed
            .keys()
            .filter(|k| self.predicted.get(*k).map_or(true, |q| q.is_zero()))
            .collect()
    }

    /// Every shape with positive probability or an observation.
    pub fn shapes(&self) -> Vec<&Partition> {
        let mut all: Vec<&Partition> = self.predicted.keys().chain(self.observed.keys()).collect();
        all.sort();
        all.dedup();
        all
    }
}

/// Factorization shapes of `f` over primes `p <= bound`, skipping primes
/// where `f` has bad reduction. The group is trusted to be the Galois group
/// of `f`; an observed shape outside its cycle types is reported as an error.
pub fn chebotarev_scan(f: &[i64], gens: &[Permutation], bound: u64, exec: Exec) -> Result<PartitionStats> {
    let n = f
        .iter()
        .rposition(|&c| c != 0)
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidInput("polynomial must have positive degree".into()))?;
    let predicted = cycle_type_distribution(gens, n)?;
    let primes = sieve_primes(bound);
    let shapes = exec.map(&primes, |&p| factorization_shape(f, p));
    let mut observed = BTreeMap::new();
    let mut skipped = Vec::new();
    let mut primes_used = 0;
    for (&p, shape) in primes.iter().zip(shapes) {
        match shape {
            Some(s) => {
                *observed.entry(s).or_insert(0) += 1;
                primes_used += 1;
            }
            None => skipped.push(p),
        }
    }
    let stats = PartitionStats {
        f: f.to_vec(),
        predicted,
        observed,
        primes_used,
        skipped,
    };
    if let Some(bad) = stats.impossible_shapes().first() {
        return Err(Error::InvalidInput(format!(
            "factorization shape {bad} is not a cycle type of the supplied group"
        )));
    }
    Ok(stats)
}
