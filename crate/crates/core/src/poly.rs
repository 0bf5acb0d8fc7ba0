//! Sparse multivariate polynomials over F_p in at most four variables.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded-lexicographic with `x1 > x2 > ... > xm`. Zero coefficients are never
//! stored, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ff::{Fp, Prime};

pub const MAX_VARS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from an exponent slice (exponent of `x_{i+1}` at index `i`).
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial { exps: e }
    }

    /// `x_j` with a 1-based index.
    pub fn var(j: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[j - 1] = 1;
        Monomial { exps: e }
    }

    pub fn exps(&self) -> &[u32; MAX_VARS] {
        &self.exps
    }

    /// Exponent of `x_j`, 1-based.
    pub fn exp(&self, j: usize) -> u32 {
        self.exps[j - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += b;
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = other.exps;
        for (a, b) in exps.iter_mut().zip(self.exps.iter()) {
            *a -= b;
        }
        Monomial { exps }
    }

    fn with_exp(&self, j: usize, e: u32) -> Monomial {
        let mut exps = self.exps;
        exps[j - 1] = e;
        Monomial { exps }
    }

    fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn write_vars(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            self.write_vars(f)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    p: Prime,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(nvars: usize, p: Prime) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&nvars),
            "1..={MAX_VARS} variables supported"
        );
        Polynomial {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: i64, nvars: usize, p: Prime) -> Self {
        Self::term(c, Monomial::one(), nvars, p)
    }

    pub fn one(nvars: usize, p: Prime) -> Self {
        Self::constant(1, nvars, p)
    }

    /// `x_j`, 1-based. Panics if `j` is outside `1..=nvars`.
    pub fn var(j: usize, nvars: usize, p: Prime) -> Self {
        assert!((1..=nvars).contains(&j), "variable x{j} out of range");
        Self::term(1, Monomial::var(j), nvars, p)
    }

    pub fn term(c: i64, mono: Monomial, nvars: usize, p: Prime) -> Self {
        let mut out = Self::zero(nvars, p);
        debug_assert!(mono.exps[nvars..].iter().all(|&e| e == 0));
        let c = p.reduce_signed(c);
        if c != 0 {
            out.terms.insert(mono, c);
        }
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(
        terms: I,
        nvars: usize,
        p: Prime,
    ) -> Self {
        let mut out = Self::zero(nvars, p);
        for (m, c) in terms {
            out.add_term(m, p.reduce_signed(c));
        }
        out
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, Fp)> + '_ {
        self.terms.iter().map(move |(m, &c)| (m, self.p.elem(c)))
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, u64> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Fp {
        self.p.elem(self.terms.get(m).copied().unwrap_or(0))
    }

    pub fn leading_term(&self) -> Option<(Monomial, Fp)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, &c)| (*m, self.p.elem(c)))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ambient(&self, other: &Polynomial) -> Result<()> {
        if self.p != other.p || self.nvars != other.nvars {
            return Err(Error::AmbientMismatch {
                lhs_vars: self.nvars,
                lhs_p: self.p.get(),
                rhs_vars: other.nvars,
                rhs_p: other.p.get(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(*m, self.p.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ambient(other)?;
        let p = self.p;
        let mut acc: HashMap<Monomial, u64> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = p.add(*e, p.mul(ca, cb));
            }
        }
        Ok(Polynomial {
            p,
            nvars: self.nvars,
            terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
        })
    }

    pub fn scale(&self, c: Fp) -> Polynomial {
        assert_eq!(c.prime(), self.p);
        self.scale_raw(c.value())
    }

    pub(crate) fn scale_raw(&self, c: u64) -> Polynomial {
        let p = self.p;
        if c.is_multiple_of(p.get()) {
            return Polynomial::zero(self.nvars, p);
        }
        Polynomial {
            p,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &v)| (*m, p.mul(v, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            p: self.p,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &v)| (m.mul(mono), v)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `x_j` (1-based).
    pub fn partial(&self, j: usize) -> Result<Polynomial> {
        if j == 0 || j > self.nvars {
            return Err(Error::VariableOutOfRange {
                index: j,
                vars: self.nvars,
            });
        }
        let p = self.p;
        let mut out = Polynomial::zero(self.nvars, p);
        for (m, &c) in &self.terms {
            let e = m.exp(j);
            if e == 0 {
                continue;
            }
            out.add_term(m.with_exp(j, e - 1), p.mul(c, p.reduce(e as u64)));
        }
        Ok(out)
    }

    /// Exact division: `Some(h)` with `self = g * h`, or `None` if `g` does
    /// not divide `self`. Long division by a single divisor leaves remainder
    /// zero exactly when the divisor divides, since `{g}` is a Gröbner basis
    /// of the principal ideal it generates.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        self.same_ambient(g)?;
        let (lm, lc) = g.leading_term().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars, self.p);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let q_mono = lm.quotient_of(&m);
            let q_coeff = (c * lc_inv).value();
            quot.add_term(q_mono, q_coeff);
            let sub = g.mul_monomial(&q_mono).scale_raw(self.p.neg(q_coeff));
            rem = rem.checked_add(&sub)?;
        }
        Ok(Some(quot))
    }

    pub fn is_divisible(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.div_exact(g)?.is_some())
    }

    /// `Some(λ)` with `λ ≠ 0` and `self = λ·other`; `None` if `other` is zero
    /// or the two are not proportional by a nonzero scalar.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Fp> {
        let (m, c) = other.leading_term()?;
        if self.p != other.p || self.nvars != other.nvars {
            return None;
        }
        let lambda = self.coeff(&m) * c.inv().ok()?;
        if lambda.is_zero() || *self != other.scale(lambda) {
            return None;
        }
        Some(lambda)
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Polynomial {
        Polynomial {
            p: self.p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, &c)| (*m, c))
                .collect(),
        }
    }

    /// Parses the text format produced by `Display`, e.g. `x1^3 + 2*x1*x2^2`.
    /// Whitespace is ignored; `-` separators and negative literals are
    /// accepted and normalised mod p.
    pub fn parse(s: &str, nvars: usize, p: Prime) -> Result<Polynomial> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Polynomial::zero(nvars, p);
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !first {
                return Err(Error::Parse(format!("expected '+' or '-' before '{rest}'")));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            let (mono, c) = parse_term(term, nvars)?;
            out.add_term(mono, p.reduce_signed(sign * c));
            rest = tail;
        }
        Ok(out)
    }
}

fn parse_term(term: &str, nvars: usize) -> Result<(Monomial, i64)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coeff: i64 = 1;
    let mut exps = [0u32; MAX_VARS];
    for factor in term.split('*') {
        if let Some(var) = factor.strip_prefix('x') {
            let (idx, exp) = match var.split_once('^') {
                Some((i, e)) => (
                    i,
                    e.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?,
                ),
                None => (var, 1),
            };
            let idx: usize = idx
                .trim_start_matches('_')
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable '{factor}'")))?;
            if idx == 0 || idx > nvars {
                return Err(Error::Parse(format!(
                    "variable x{idx} out of range 1..={nvars}"
                )));
            }
            exps[idx - 1] += exp;
        } else {
            let c: i64 = factor
                .parse()
                .map_err(|_| Error::Parse(format!("bad factor '{factor}'")))?;
            coeff = coeff
                .checked_mul(c)
                .ok_or_else(|| Error::Parse("coefficient overflow".into()))?;
        }
    }
    Ok((Monomial { exps }, coeff))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c == 1 {
                m.write_vars(f)?;
            } else {
                write!(f, "{c}*")?;
                m.write_vars(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[F_{}; {} vars]({})", self.p, self.nvars, self)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ambient mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ambient mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ambient mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale_raw(self.p.get() - 1)
    }
}

/// All monomials of a fixed total degree, in descending monomial order, with
/// a reverse index for building coordinate vectors.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    degree: u32,
    nvars: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous polynomial of this degree. Panics on a
    /// term of any other degree.
    pub fn coords(&self, f: &Polynomial) -> Vec<u64> {
        let mut v = vec![0; self.len()];
        for (m, &c) in f.raw_terms() {
            let i = self
                .index_of(m)
                .unwrap_or_else(|| panic!("monomial {m} not in degree-{} basis", self.degree));
            v[i] = c;
        }
        v
    }

    pub fn polynomial(&self, coords: &[u64], p: Prime) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars, p);
        for (m, &c) in self.monomials.iter().zip(coords) {
            out.add_term(*m, p.reduce(c));
        }
        out
    }
}

pub fn graded_basis(nvars: usize, degree: u32) -> GradedBasis {
    assert!(
        (1..=MAX_VARS).contains(&nvars),
        "1..={MAX_VARS} variables supported"
    );
    let mut monomials = Vec::new();
    let mut exps = [0u32; MAX_VARS];
    fill(&mut monomials, &mut exps, 0, nvars, degree);
    let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    GradedBasis {
        degree,
        nvars,
        monomials,
        index,
    }
}

// Lexicographically descending: larger exponents on earlier variables first.
fn fill(out: &mut Vec<Monomial>, exps: &mut [u32; MAX_VARS], pos: usize, nvars: usize, left: u32) {
    if pos == nvars - 1 {
        exps[pos] = left;
        out.push(Monomial { exps: *exps });
        exps[pos] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        fill(out, exps, pos + 1, nvars, left - e);
    }
    exps[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn parse(s: &str, m: usize, p: u64) -> Polynomial {
        Polynomial::parse(s, m, pr(p)).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let p = pr(3);
        let zero = Polynomial::zero(2, p);
        let g = parse("x1 + 2*x2", 2, 3);
        assert!((&zero * &g).is_zero());
        let x1 = Polynomial::var(1, 2, p);
        assert_eq!(&x1 * &g, parse("x1^2 + 2*x1*x2", 2, 3));
        let norm = &(&x1 * &parse("x1 + x2", 2, 3)) * &g;
        assert_eq!(norm, parse("x1^3 - x1*x2^2", 2, 3));
        assert_eq!(norm.to_string(), "x1^3 + 2*x1*x2^2");
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = Polynomial::var(1, 2, pr(3));
        let b = Polynomial::var(1, 3, pr(3));
        let c = Polynomial::var(1, 2, pr(5));
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::AmbientMismatch { .. })
        ));
        assert!(matches!(
            a.checked_add(&c),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn partial_examples() {
        assert_eq!(parse("x1^2", 1, 5).partial(1).unwrap(), parse("2*x1", 1, 5));
        assert!(parse("x1^5", 1, 5).partial(1).unwrap().is_zero());
        assert_eq!(
            parse("x1*x2 + x2^2", 2, 3).partial(2).unwrap(),
            parse("x1 + 2*x2", 2, 3)
        );
        assert!(matches!(
            parse("x1", 2, 3).partial(3),
            Err(Error::VariableOutOfRange { index: 3, vars: 2 })
        ));
    }

    #[test]
    fn divisibility_examples() {
        let x3sq = parse("x3^2", 3, 5);
        let f = &x3sq * &parse("x1^2 + 3*x2*x3 + 1", 3, 5);
        assert!(f.is_divisible(&x3sq).unwrap());
        assert!(!parse("x2^3 + x3^2", 3, 5)
            .is_divisible(&parse("x3", 3, 5))
            .unwrap());
        assert!(Polynomial::zero(3, pr(5)).is_divisible(&x3sq).unwrap());
        assert_eq!(
            f.is_divisible(&Polynomial::zero(3, pr(5))),
            Err(Error::DivisionByZero)
        );
        // non-monomial divisor
        let g = parse("x1 + x2", 2, 7);
        let h = parse("x1^2 + 3*x2 + 4", 2, 7);
        assert_eq!((&g * &h).div_exact(&g).unwrap(), Some(h));
        assert!(!parse("x1^2 + x2", 2, 7).is_divisible(&g).unwrap());
    }

    #[test]
    fn graded_basis_examples() {
        let b = graded_basis(2, 1);
        assert_eq!(b.monomials(), &[Monomial::var(1), Monomial::var(2)]);
        let b = graded_basis(3, 2);
        let shown: Vec<String> = b.monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x1*x3", "x2^2", "x2*x3", "x3^2"]);
        assert_eq!(graded_basis(3, 0).monomials(), &[Monomial::one()]);
    }

    #[test]
    fn graded_basis_sizes() {
        fn choose(n: u64, k: u64) -> u64 {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for m in 1..=4usize {
            for d in 0..=30u32 {
                let b = graded_basis(m, d);
                assert_eq!(
                    b.len() as u64,
                    choose(d as u64 + m as u64 - 1, m as u64 - 1)
                );
                assert!(b.monomials().windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn text_format() {
        let f = parse(" 2 * x1 * x2^2 +x1^3 ", 2, 3);
        assert_eq!(f.to_string(), "x1^3 + 2*x1*x2^2");
        assert_eq!(
            parse("x2^2 - 2*x1*x3 - x2*x3", 3, 5).to_string(),
            "3*x1*x3 + x2^2 + 4*x2*x3"
        );
        assert_eq!(parse("4", 3, 5).to_string(), "4");
        assert_eq!(parse("0", 3, 5).to_string(), "0");
        assert!(Polynomial::parse("x4", 3, pr(5)).is_err());
        assert!(Polynomial::parse("x1 ++ x2", 3, pr(5)).is_err());
    }

    fn arb_poly(m: usize, p: u64) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..4, m), 0i64..p as i64), 0..6).prop_map(
            move |ts| {
                Polynomial::from_terms(
                    ts.into_iter().map(|(e, c)| (Monomial::new(&e), c)),
                    m,
                    pr(p),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(3, 5), g in arb_poly(3, 5), h in arb_poly(3, 5)) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn partial_leibniz(f in arb_poly(3, 7), g in arb_poly(3, 7), j in 1usize..=3) {
            let lhs = (&f * &g).partial(j).unwrap();
            let rhs = &(&f * &g.partial(j).unwrap()) + &(&f.partial(j).unwrap() * &g);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn divisible_by_monomial_factor(f in arb_poly(3, 3), e in prop::collection::vec(0u32..4, 3), c in 1i64..3) {
            let g = Polynomial::term(c, Monomial::new(&e), 3, pr(3));
            prop_assert!((&f * &g).is_divisible(&g).unwrap());
        }

        #[test]
        fn text_round_trip(f in arb_poly(3, 7)) {
            prop_assert_eq!(Polynomial::parse(&f.to_string(), 3, pr(7)).unwrap(), f);
        }
    }
}
