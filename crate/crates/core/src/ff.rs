//! Arithmetic in the prime field F_p and binomial coefficients mod p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A prime modulus. Limited to primes below 2^32 so that products of two
/// reduced residues fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    /// Accepts only odd primes, as required by all of the V_3 constructions.
    pub fn new_odd(p: u64) -> Result<Self> {
        let prime = Self::new(p)?;
        prime.require_odd()?;
        Ok(prime)
    }

    pub fn require_odd(self) -> Result<()> {
        if self.0 == 2 {
            Err(Error::EvenPrime(2))
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    #[inline]
    pub fn reduce_signed(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn elem(self, v: u64) -> Fp {
        Fp {
            value: v % self.0,
            p: self,
        }
    }

    #[inline]
    pub fn elem_signed(self, v: i64) -> Fp {
        Fp {
            value: self.reduce_signed(v),
            p: self,
        }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a raw residue via Fermat's little theorem.
    pub fn inv(self, a: u64) -> Result<u64> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.0 - 2))
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of F_p, stored as its canonical representative in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: Prime,
}

impl Fp {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Fp> {
        fp_inv(self)
    }

    fn check(self, other: Fp) {
        assert_eq!(self.p, other.p, "mixing elements of different prime fields");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.p.add(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.p.sub(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.p.mul(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: self.p.neg(self.value),
            p: self.p,
        }
    }
}

pub fn fp_inv(a: Fp) -> Result<Fp> {
    Ok(Fp {
        value: a.p.inv(a.value)?,
        p: a.p,
    })
}

/// C(n, k) mod p by Lucas' theorem. `k > n` gives zero.
pub fn binom_mod_p(n: u64, k: u64, p: Prime) -> Fp {
    if k > n {
        return p.elem(0);
    }
    let q = p.get();
    let (mut n, mut k) = (n, k);
    let mut acc = 1 % q;
    while k > 0 {
        let (nd, kd) = (n % q, k % q);
        if kd > nd {
            return p.elem(0);
        }
        acc = p.mul(acc, small_binom(nd, kd, p));
        n /= q;
        k /= q;
    }
    p.elem(acc)
}

// C(n, k) mod p for 0 <= k <= n < p; every denominator factor is a unit.
fn small_binom(n: u64, k: u64, p: Prime) -> u64 {
    let k = k.min(n - k);
    let mut num = 1 % p.get();
    let mut den = 1 % p.get();
    for i in 0..k {
        num = p.mul(num, n - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den).expect("factorial below p is a unit"))
}

/// Rows of Pascal's triangle reduced mod p, for the small exponents that show
/// up when expanding substitutions.
#[derive(Debug, Clone)]
pub struct PascalTable {
    p: Prime,
    rows: Vec<Vec<u64>>,
}

impl PascalTable {
    pub fn new(p: Prime, max_row: usize) -> Self {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max_row + 1);
        rows.push(vec![1 % p.get()]);
        for n in 1..=max_row {
            let prev = &rows[n - 1];
            let mut row = vec![0; n + 1];
            row[0] = 1 % p.get();
            row[n] = 1 % p.get();
            for k in 1..n {
                row[k] = p.add(prev[k - 1], prev[k]);
            }
            rows.push(row);
        }
        PascalTable { p, rows }
    }

    #[inline]
    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            return 0;
        }
        match self.rows.get(n) {
            Some(row) => row[k],
            None => binom_mod_p(n as u64, k as u64, self.p).value(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(fp_inv(pr(5).elem(1)).unwrap().value(), 1);
        assert_eq!(fp_inv(pr(5).elem(2)).unwrap().value(), 3);
        assert_eq!(fp_inv(pr(7).elem(3)).unwrap().value(), 5);
        assert_eq!(fp_inv(pr(7).elem(0)), Err(Error::ZeroInverse));
    }

    #[test]
    fn inverse_matches_exhaustive_search() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let prime = pr(p);
            for a in 1..p {
                let found = (1..p).find(|b| a * b % p == 1).unwrap();
                assert_eq!(fp_inv(prime.elem(a)).unwrap().value(), found);
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binom_mod_p(4, 2, pr(5)).value(), 1);
        assert_eq!(binom_mod_p(5, 2, pr(5)).value(), 0);
        assert_eq!(binom_mod_p(3, 7, pr(5)).value(), 0);
        for n in [0u64, 1, 17, 1_000_000_000] {
            assert_eq!(binom_mod_p(n, n, pr(7)).value(), 1);
        }
    }

    #[test]
    fn binomial_agrees_with_pascal() {
        for p in [2u64, 3, 5, 7, 13] {
            let prime = pr(p);
            let table = PascalTable::new(prime, 200);
            for n in 0..=200u64 {
                for k in 0..=n {
                    assert_eq!(
                        binom_mod_p(n, k, prime).value(),
                        table.get(n as usize, k as usize),
                        "C({n},{k}) mod {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn binomial_large_arguments() {
        let v = 1_000_000_000u128 * 999_999_999 / 2;
        for p in [3u64, 7, 101, 1_000_000_007] {
            let prime = pr(p);
            assert_eq!(
                binom_mod_p(1_000_000_000, 2, prime).value() as u128,
                v % p as u128
            );
        }
    }

    #[test]
    fn wilson_type_identity() {
        for p in [3u64, 5, 7, 11] {
            let prime = pr(p);
            for k in 0..p {
                let expected = if k % 2 == 0 { 1 } else { p - 1 };
                assert_eq!(binom_mod_p(p - 1, k, prime).value(), expected);
            }
        }
    }

    #[test]
    fn rejects_composites() {
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::new_odd(2), Err(Error::EvenPrime(2)));
        assert!(Prime::new(2).is_ok());
    }
}
