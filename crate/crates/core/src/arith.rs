//! Primes, quadratic characters and univariate polynomials over `F_p`.
//!
//! `F_{p^2}` is modelled as `F_p[t]/(t^2 - d)` with `d` the least quadratic
//! nonresidue, so the norm of `a + b t` is `a^2 - d b^2` and squareness in
//! `F_{p^2}` reduces to the `F_p` character of the norm.

use crate::{Error, Result};

/// All primes `<= n`, ascending.
pub fn sieve_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    Ok(())
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `0..p`.
#[inline]
pub fn reduce_i64(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

/// Quadratic character of `F_p` as a lookup table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    p: u64,
    values: Vec<i8>,
    nonresidue: u64,
}

/// Builds the table of `chi_p(a)` for `a in 0..p` by marking squares.
pub fn character_table(p: u64) -> Result<CharacterTable> {
    require_odd_prime(p)?;
    let mut values = vec![-1i8; p as usize];
    values[0] = 0;
    for y in 1..=(p - 1) / 2 {
        values[mul_mod(y, y, p) as usize] = 1;
    }
    let nonresidue = (2..p)
        .find(|&a| values[a as usize] == -1)
        .expect("an odd prime has a nonresidue");
    Ok(CharacterTable {
        p,
        values,
        nonresidue,
    })
}

impl CharacterTable {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// `chi_p(a)` for `a` already reduced into `0..p`.
    #[inline]
    pub fn chi(&self, a: u64) -> i8 {
        self.values[a as usize]
    }

    /// `chi_p(a)` for any signed integer.
    #[inline]
    pub fn chi_i64(&self, a: i64) -> i8 {
        self.values[reduce_i64(a, self.p) as usize]
    }

    pub fn quadratic_ext(&self) -> Fp2 {
        Fp2 {
            p: self.p,
            d: self.nonresidue,
        }
    }

    /// Quadratic character of `F_{p^2}` through the norm map.
    pub fn chi_fp2(&self, y: Fp2Elem) -> i8 {
        self.chi(self.quadratic_ext().norm(y))
    }
}

/// Element `a + b t` of `F_{p^2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp2Elem {
    pub a: u64,
    pub b: u64,
}

/// The field `F_p[t]/(t^2 - d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2 {
    pub p: u64,
    pub d: u64,
}

impl Fp2 {
    pub fn elem(&self, a: u64, b: u64) -> Fp2Elem {
        Fp2Elem {
            a: a % self.p,
            b: b % self.p,
        }
    }

    pub fn from_i64(&self, a: i64) -> Fp2Elem {
        Fp2Elem {
            a: reduce_i64(a, self.p),
            b: 0,
        }
    }

    #[inline]
    pub fn add(&self, x: Fp2Elem, y: Fp2Elem) -> Fp2Elem {
        Fp2Elem {
            a: (x.a + y.a) % self.p,
            b: (x.b + y.b) % self.p,
        }
    }

    #[inline]
    pub fn mul(&self, x: Fp2Elem, y: Fp2Elem) -> Fp2Elem {
        let p = self.p;
        let bb = mul_mod(mul_mod(x.b, y.b, p), self.d, p);
        Fp2Elem {
            a: (mul_mod(x.a, y.a, p) + bb) % p,
            b: (mul_mod(x.a, y.b, p) + mul_mod(x.b, y.a, p)) % p,
        }
    }

    pub fn conj(&self, x: Fp2Elem) -> Fp2Elem {
        Fp2Elem {
            a: x.a,
            b: (self.p - x.b) % self.p,
        }
    }

    /// `a^2 - d b^2`.
    #[inline]
    pub fn norm(&self, x: Fp2Elem) -> u64 {
        let p = self.p;
        let t = mul_mod(mul_mod(x.b, x.b, p), self.d, p);
        (mul_mod(x.a, x.a, p) + p - t) % p
    }

    pub fn pow(&self, mut base: Fp2Elem, mut e: u128) -> Fp2Elem {
        let mut acc = Fp2Elem { a: 1 % self.p, b: 0 };
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation of an integer polynomial (ascending coefficients).
    pub fn eval_int_poly(&self, coeffs: &[i64], x: Fp2Elem) -> Fp2Elem {
        coeffs
            .iter()
            .rev()
            .fold(Fp2Elem::default(), |acc, &c| {
                self.add(self.mul(acc, x), self.from_i64(c))
            })
    }
}

/// Polynomial over `F_p`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = PolyModP {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Reduction of an integer polynomial (ascending coefficients).
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| reduce_i64(c, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) + other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0) + p
                    - other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        Self::new(p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(p, c)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&c| mul_mod(c, k % self.p, self.p)).collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        Self::new(p, c)
    }

    /// Quotient and remainder. Fails on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let p = self.p;
        let inv_lead = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let coef = mul_mod(rem[k], inv_lead, p);
            if coef == 0 {
                continue;
            }
            quot[k - dd] = coef;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = (rem[idx] + p - mul_mod(coef, dc, p)) % p;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    pub fn rem(&self, modulus: &Self) -> Result<Self> {
        self.div_rem(modulus).map(|(_, r)| r)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        if modulus.degree().map_or(true, |d| d == 0) {
            return Err(Error::InvalidInput(
                "modulus must have degree at least 1".into(),
            ));
        }
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(self.p).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `g(h(x)) mod modulus` with `self = g`, by Horner in the quotient ring.
    pub fn compose_mod(&self, inner: &Self, modulus: &Self) -> Result<Self> {
        let mut acc = Self::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::new(self.p, vec![c])).rem(modulus)?;
        }
        Ok(acc)
    }
}

/// `(base^e mod f, gcd(base^e - x, f))`. With `base = x` and `e = p^i` the
/// gcd collects the irreducible factors of `f` whose degree divides `i`.
pub fn polmod_powgcd(f: &PolyModP, base: &PolyModP, e: u64) -> Result<(PolyModP, PolyModP)> {
    let r = base.pow_mod(e, f)?;
    let g = r.sub(&PolyModP::x(f.p())).gcd(f);
    Ok((r, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(n: u64) -> Vec<u64> {
        (2..=n).filter(|&k| (2..k).all(|d| k % d != 0)).collect()
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_primes(10), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(1), Vec::<u64>::new());
        assert_eq!(sieve_primes(0), Vec::<u64>::new());
        assert_eq!(sieve_primes(30), trial_division_primes(30));
        assert_eq!(sieve_primes(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(sieve_primes(2000), trial_division_primes(2000));
    }

    #[test]
    fn character_table_examples() {
        let t5 = character_table(5).unwrap();
        assert_eq!(t5.chi(2), -1);
        assert_eq!(t5.chi(0), 0);
        assert_eq!(t5.nonresidue(), 2);
        let t7 = character_table(7).unwrap();
        assert_eq!(t7.chi(3), -1);
        assert_eq!(t7.nonresidue(), 3);
        assert_eq!(t7.chi_i64(-1), -1);
    }

    #[test]
    fn character_table_rejects_bad_moduli() {
        assert!(character_table(2).is_err());
        assert!(character_table(9).is_err());
        assert!(character_table(1).is_err());
    }

    #[test]
    fn character_tables_are_balanced_and_multiplicative() {
        for p in sieve_primes(100).into_iter().filter(|&p| p > 2) {
            let t = character_table(p).unwrap();
            assert_eq!(t.values()[0], 0);
            let plus = t.values().iter().filter(|&&v| v == 1).count() as u64;
            let minus = t.values().iter().filter(|&&v| v == -1).count() as u64;
            assert_eq!((plus, minus), ((p - 1) / 2, (p - 1) / 2));
            for a in 1..p {
                for b in 1..p {
                    assert_eq!(t.chi(mul_mod(a, b, p)), t.chi(a) * t.chi(b));
                }
            }
            assert!((2..t.nonresidue()).all(|a| t.chi(a) == 1));
        }
    }

    #[test]
    fn fp2_character_is_norm_character() {
        for p in sieve_primes(50).into_iter().filter(|&p| p > 2) {
            let t = character_table(p).unwrap();
            let k = t.quadratic_ext();
            let half = (p as u128 * p as u128 - 1) / 2;
            let one = Fp2Elem { a: 1, b: 0 };
            let minus_one = Fp2Elem { a: p - 1, b: 0 };
            for a in 0..p {
                for b in 0..p {
                    let y = k.elem(a, b);
                    if a == 0 && b == 0 {
                        assert_eq!(t.chi_fp2(y), 0);
                        continue;
                    }
                    let euler = k.pow(y, half);
                    let expected = if euler == one {
                        1
                    } else {
                        assert_eq!(euler, minus_one);
                        -1
                    };
                    assert_eq!(t.chi_fp2(y), expected, "p={p} y={a}+{b}t");
                }
            }
        }
    }

    #[test]
    fn powgcd_examples() {
        let f = PolyModP::from_i64(5, &[-2, 0, 0, 1]);
        let (r, _) = polmod_powgcd(&f, &PolyModP::x(5), 5).unwrap();
        assert_eq!(r, PolyModP::new(5, vec![0, 0, 2]));

        let base = PolyModP::new(5, vec![3, 4, 1]);
        assert_eq!(base.pow_mod(0, &f).unwrap(), PolyModP::one(5));

        let a = PolyModP::from_i64(5, &[-1, 0, 1]);
        let b = PolyModP::from_i64(5, &[-1, 1]);
        assert_eq!(a.gcd(&b), PolyModP::from_i64(5, &[-1, 1]));
    }

    #[test]
    fn zero_modulus_is_rejected() {
        let x = PolyModP::x(7);
        assert!(x.pow_mod(3, &PolyModP::zero(7)).is_err());
        assert!(x.pow_mod(3, &PolyModP::one(7)).is_err());
        assert!(x.div_rem(&PolyModP::zero(7)).is_err());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = PolyModP::from_i64(11, &[3, -4, 0, 7, 1, 9]);
        let b = PolyModP::from_i64(11, &[2, 0, 5]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
