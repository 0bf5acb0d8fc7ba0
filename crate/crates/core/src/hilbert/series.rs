use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational generating function `N(t) / ∏_j (1 − t^{a_j})` with integer
/// numerator. Equality is equality of rational functions, decided by cross
/// multiplication.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    denominator: Vec<u32>,
}

impl HilbertSeries {
    /// `numerator[i]` is the coefficient of `t^i`; `denominator` lists the
    /// exponents `a_j` of the factors `(1 − t^{a_j})`.
    pub fn new(numerator: Vec<i64>, mut denominator: Vec<u32>) -> Self {
        assert!(
            denominator.iter().all(|&a| a > 0),
            "denominator exponents must be positive"
        );
        denominator.sort_unstable();
        let mut s = HilbertSeries {
            numerator,
            denominator,
        };
        s.trim();
        s
    }

    pub fn zero() -> Self {
        Self::new(Vec::new(), Vec::new())
    }

    /// `t^k / ∏(1 − t^{a_j})`.
    pub fn monomial_over(k: usize, denominator: Vec<u32>) -> Self {
        let mut num = vec![0; k + 1];
        num[k] = 1;
        Self::new(num, denominator)
    }

    fn trim(&mut self) {
        while self.numerator.last() == Some(&0) {
            self.numerator.pop();
        }
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Power-series coefficients `c_0..=c_D`.
    pub fn expand(&self, cutoff: usize) -> Vec<i64> {
        let mut c = vec![0i64; cutoff + 1];
        for (i, &v) in self.numerator.iter().enumerate().take(cutoff + 1) {
            c[i] = v;
        }
        for &a in &self.denominator {
            let a = a as usize;
            for i in a..=cutoff {
                c[i] += c[i - a];
            }
        }
        c
    }

    pub fn coefficient(&self, d: usize) -> i64 {
        self.expand(d)[d]
    }

    /// Errors if any coefficient up to `cutoff` is negative, which no series
    /// of dimensions can have.
    pub fn check_dimensional(&self, cutoff: usize) -> Result<()> {
        match self.expand(cutoff).iter().position(|&c| c < 0) {
            None => Ok(()),
            Some(d) => Err(Error::Consistency(format!(
                "series {self} has a negative coefficient in degree {d}"
            ))),
        }
    }

    fn times_factors(num: &[i64], factors: &[u32]) -> Vec<i64> {
        let mut out = num.to_vec();
        for &a in factors {
            let a = a as usize;
            let mut next = vec![0i64; out.len() + a];
            for (i, &v) in out.iter().enumerate() {
                next[i] += v;
                next[i + a] -= v;
            }
            out = next;
        }
        out
    }

    // Multiset difference `a \ b` of sorted lists.
    fn missing(a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        let mut j = 0;
        for &x in a {
            while j < b.len() && b[j] < x {
                j += 1;
            }
            if j < b.len() && b[j] == x {
                j += 1;
            } else {
                out.push(x);
            }
        }
        out
    }

    fn common(&self, other: &HilbertSeries) -> (Vec<i64>, Vec<i64>, Vec<u32>) {
        let extra_for_self = Self::missing(&other.denominator, &self.denominator);
        let extra_for_other = Self::missing(&self.denominator, &other.denominator);
        let mut den = self.denominator.clone();
        den.extend(&extra_for_self);
        den.sort_unstable();
        (
            Self::times_factors(&self.numerator, &extra_for_self),
            Self::times_factors(&other.numerator, &extra_for_other),
            den,
        )
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        let (a, b, den) = self.common(other);
        let len = a.len().max(b.len());
        let num = (0..len)
            .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
            .collect();
        HilbertSeries::new(num, den)
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> HilbertSeries {
        HilbertSeries::new(
            self.numerator.iter().map(|v| v * c).collect(),
            self.denominator.clone(),
        )
    }

    pub fn negate(&self) -> HilbertSeries {
        self.scale(-1)
    }

    /// Multiplies the numerator by `t^k`.
    pub fn shift(&self, k: usize) -> HilbertSeries {
        let mut num = vec![0; k];
        num.extend(&self.numerator);
        HilbertSeries::new(num, self.denominator.clone())
    }

    /// Same rational function over a larger denominator (a superset of the
    /// current factors).
    pub fn over(&self, denominator: &[u32]) -> Option<HilbertSeries> {
        let mut den = denominator.to_vec();
        den.sort_unstable();
        if !Self::missing(&self.denominator, &den).is_empty() {
            return None;
        }
        let extra = Self::missing(&den, &self.denominator);
        Some(HilbertSeries::new(
            Self::times_factors(&self.numerator, &extra),
            den,
        ))
    }

    /// Parses `(c0 + c1*t + ...) / ((1-t^a1)(1-t^a2)...)`; the denominator
    /// part is optional.
    pub fn parse(s: &str) -> Result<HilbertSeries> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num_part, den_part) = match compact.find(")/(") {
            Some(i) => (&compact[..=i], Some(&compact[i + 2..])),
            None => (compact.as_str(), None),
        };
        let num_str = num_part
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(num_part);
        let numerator = parse_int_poly(num_str)?;
        let mut denominator = Vec::new();
        if let Some(den) = den_part {
            let inner = den
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("malformed denominator '{den}'")))?;
            for factor in inner.split(')').filter(|f| !f.is_empty()) {
                let body = factor
                    .strip_prefix("(1-t")
                    .ok_or_else(|| Error::Parse(format!("malformed factor '{factor})'")))?;
                let a = if body.is_empty() {
                    1
                } else {
                    body.strip_prefix('^')
                        .and_then(|e| e.parse::<u32>().ok())
                        .filter(|&a| a > 0)
                        .ok_or_else(|| Error::Parse(format!("malformed factor '{factor})'")))?
                };
                denominator.push(a);
            }
        }
        Ok(HilbertSeries::new(numerator, denominator))
    }

    pub fn numerator_string(&self) -> String {
        if self.numerator.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, &c) in self.numerator.iter().enumerate().filter(|(_, &c)| c != 0) {
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            match (i, mag) {
                (0, _) => out.push_str(&mag.to_string()),
                (_, 1) => {}
                _ => out.push_str(&format!("{mag}*")),
            }
            match i {
                0 => {}
                1 => out.push('t'),
                _ => out.push_str(&format!("t^{i}")),
            }
        }
        out
    }

    pub fn denominator_string(&self) -> String {
        self.denominator
            .iter()
            .map(|&a| {
                if a == 1 {
                    "(1-t)".to_string()
                } else {
                    format!("(1-t^{a})")
                }
            })
            .collect()
    }
}

fn parse_int_poly(s: &str) -> Result<Vec<i64>> {
    let mut coeffs: Vec<i64> = Vec::new();
    let mut rest = s;
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !first {
            return Err(Error::Parse(format!("expected sign before '{rest}'")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let (c, e) = match term.find('t') {
            None => (
                term.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad term '{term}'")))?,
                0usize,
            ),
            Some(pos) => {
                let c = match term[..pos].trim_end_matches('*') {
                    "" => 1,
                    c => c
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad term '{term}'")))?,
                };
                let e = match &term[pos + 1..] {
                    "" => 1,
                    e => e
                        .strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad term '{term}'")))?,
                };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] += sign * c;
    }
    Ok(coeffs)
}

impl PartialEq for HilbertSeries {
    fn eq(&self, other: &Self) -> bool {
        let lhs = Self::times_factors(&self.numerator, &other.denominator);
        let rhs = Self::times_factors(&other.numerator, &self.denominator);
        let len = lhs.len().max(rhs.len());
        (0..len).all(|i| lhs.get(i).copied().unwrap_or(0) == rhs.get(i).copied().unwrap_or(0))
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            write!(f, "({})", self.numerator_string())
        } else {
            write!(
                f,
                "({}) / ({})",
                self.numerator_string(),
                self.denominator_string()
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn expansion_examples() {
        let s = HilbertSeries::new(vec![1], vec![1, 3]);
        assert_eq!(s.expand(6), vec![1, 1, 1, 2, 2, 2, 3]);
        let s = HilbertSeries::new(vec![1, 1], vec![1, 3]);
        assert_eq!(s.expand(4), vec![1, 2, 2, 3, 4]);
        assert_eq!(
            HilbertSeries::new(vec![1], vec![]).expand(3),
            vec![1, 0, 0, 0]
        );
    }

    #[test]
    fn partitions_oracle() {
        // brute-force count of i + 3j = d
        let s = HilbertSeries::new(vec![1], vec![1, 3]);
        let c = s.expand(30);
        assert_eq!(c.len(), 31);
        for (d, &cd) in c.iter().enumerate() {
            let count = (0..=d).filter(|i| (d - i) % 3 == 0).count() as i64;
            assert_eq!(cd, count);
        }
    }

    #[test]
    fn rational_equality() {
        // (1+t)/((1-t)(1-t^2)) == 1/(1-t)^2
        let a = HilbertSeries::new(vec![1, 1], vec![1, 2]);
        let b = HilbertSeries::new(vec![1], vec![1, 1]);
        assert_eq!(a, b);
        assert_ne!(a, HilbertSeries::new(vec![1], vec![1, 2]));
        assert_eq!(a.sub(&b), HilbertSeries::zero());
    }

    #[test]
    fn text_format() {
        let s = HilbertSeries::new(vec![1, 2, 0, 0, 2, 1], vec![1, 2, 5]);
        assert_eq!(
            s.to_string(),
            "(1 + 2*t + 2*t^4 + t^5) / ((1-t)(1-t^2)(1-t^5))"
        );
        let back = HilbertSeries::parse(&s.to_string()).unwrap();
        assert_eq!(back.numerator(), s.numerator());
        assert_eq!(back.denominator(), s.denominator());
        let neg = HilbertSeries::new(vec![-1, 0, 0, 1], vec![]);
        assert_eq!(neg.numerator_string(), "-1 + t^3");
        assert_eq!(HilbertSeries::parse("1 - t").unwrap().numerator(), &[1, -1]);
    }

    #[test]
    fn dimensional_check() {
        assert!(HilbertSeries::new(vec![1], vec![1])
            .check_dimensional(10)
            .is_ok());
        assert!(HilbertSeries::new(vec![-1, 1], vec![1, 2])
            .check_dimensional(10)
            .is_err());
    }

    fn arb_series() -> impl Strategy<Value = HilbertSeries> {
        (
            prop::collection::vec(-3i64..4, 0..5),
            prop::collection::vec(1u32..5, 0..4),
        )
            .prop_map(|(n, d)| HilbertSeries::new(n, d))
    }

    proptest! {
        #[test]
        fn sum_expands_coefficientwise(a in arb_series(), b in arb_series()) {
            let s = a.add(&b).expand(25);
            let (ea, eb) = (a.expand(25), b.expand(25));
            for d in 0..=25 {
                prop_assert_eq!(s[d], ea[d] + eb[d]);
            }
        }

        #[test]
        fn equality_is_expansion_equality(a in arb_series(), extra in 1u32..5) {
            let mut den = a.denominator().to_vec();
            den.push(extra);
            let b = a.over(&den).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.expand(20), b.expand(20));
        }
    }
}
