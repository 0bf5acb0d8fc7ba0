//! The generator σ of Z/p acting on k[V_m] = F_p[x_1, ..., x_m] by
//! `x_i ↦ x_i + x_{i+1}` (and `x_m ↦ x_m`), the twisted derivation
//! Δ = σ − 1, weights, orbit products, and differential operators.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{PascalTable, Prime};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, MAX_VARS};

#[derive(Debug, Clone)]
pub struct ActionContext {
    p: Prime,
    m: usize,
    pascal: Arc<PascalTable>,
}

impl ActionContext {
    /// Requires `2 <= m <= p` so that V_m is an indecomposable F_p[Z/p]-module.
    pub fn new(p: Prime, m: usize) -> Result<Self> {
        if m > MAX_VARS {
            return Err(Error::UnsupportedVariables(m));
        }
        if m < 2 || m as u64 > p.get() {
            return Err(Error::NotIndecomposable { dim: m, p: p.get() });
        }
        let rows = (4 * p.get() as usize + 16).min(512);
        Ok(ActionContext {
            p,
            m,
            pascal: Arc::new(PascalTable::new(p, rows)),
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn var(&self, j: usize) -> Polynomial {
        Polynomial::var(j, self.m, self.p)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.m, self.p)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.m, self.p)
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        Polynomial::parse(s, self.m, self.p)
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.nvars() != self.m || f.prime() != self.p {
            return Err(Error::AmbientMismatch {
                lhs_vars: self.m,
                lhs_p: self.p.get(),
                rhs_vars: f.nvars(),
                rhs_p: f.prime().get(),
            });
        }
        Ok(())
    }

    /// Image of `f` under the algebra automorphism σ.
    pub fn sigma(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        Ok(self.sigma_unchecked(f))
    }

    // Substituting x_{m-1}, x_{m-2}, ..., x_1 in that order realises the
    // simultaneous substitution: each step introduces only variables that
    // have already been processed.
    fn sigma_unchecked(&self, f: &Polynomial) -> Polynomial {
        let p = self.p;
        let mut current: BTreeMap<Monomial, u64> = f.raw_terms().clone();
        for i in (1..self.m).rev() {
            let mut next: BTreeMap<Monomial, u64> = BTreeMap::new();
            for (mono, &c) in &current {
                let e = mono.exp(i) as usize;
                if e == 0 {
                    let slot = next.entry(*mono).or_insert(0);
                    *slot = p.add(*slot, c);
                    continue;
                }
                let mut exps = *mono.exps();
                let base_next = exps[i];
                for a in 0..=e {
                    let b = self.pascal.get(e, a);
                    if b == 0 {
                        continue;
                    }
                    exps[i - 1] = (e - a) as u32;
                    exps[i] = base_next + a as u32;
                    let slot = next.entry(Monomial::new(&exps)).or_insert(0);
                    *slot = p.add(*slot, p.mul(c, b));
                }
            }
            next.retain(|_, c| *c != 0);
            current = next;
        }
        let mut out = Polynomial::zero(self.m, p);
        for (mono, c) in current {
            out.add_term(mono, c);
        }
        out
    }

    pub fn sigma_power(&self, f: &Polynomial, k: usize) -> Result<Polynomial> {
        self.check(f)?;
        let mut g = f.clone();
        for _ in 0..k {
            g = self.sigma_unchecked(&g);
        }
        Ok(g)
    }

    /// Δ(f) = σ(f) − f.
    pub fn delta(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        Ok(&self.sigma_unchecked(f) - f)
    }

    pub fn delta_power(&self, f: &Polynomial, k: usize) -> Result<Polynomial> {
        self.check(f)?;
        let mut g = f.clone();
        for _ in 0..k {
            if g.is_zero() {
                break;
            }
            g = &self.sigma_unchecked(&g) - &g;
        }
        Ok(g)
    }

    /// The chain `f, Δf, Δ²f, ...` up to and excluding the first zero term.
    /// Its length is `weight(f)` for nonzero `f`.
    pub fn delta_chain(&self, f: &Polynomial) -> Result<Vec<Polynomial>> {
        self.check(f)?;
        let mut chain = Vec::new();
        let mut g = f.clone();
        while !g.is_zero() {
            let next = &self.sigma_unchecked(&g) - &g;
            chain.push(g);
            g = next;
            if chain.len() > self.p.get() as usize {
                return Err(Error::Consistency("Δ^p did not vanish".into()));
            }
        }
        Ok(chain)
    }

    /// Least `i > 0` with `Δ^i(f) = 0`; the zero polynomial has weight 1.
    pub fn weight(&self, f: &Polynomial) -> Result<usize> {
        Ok(self.delta_chain(f)?.len().max(1))
    }

    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.sigma(f)? == *f)
    }

    /// The orbit product `∏_{i=0}^{p-1} σ^i(x_j)`, a degree-p invariant.
    pub fn norm(&self, j: usize) -> Result<Polynomial> {
        if j == 0 || j > self.m {
            return Err(Error::VariableOutOfRange {
                index: j,
                vars: self.m,
            });
        }
        let mut factor = self.var(j);
        let mut acc = self.one();
        for _ in 0..self.p.get() {
            acc = &acc * &factor;
            factor = self.sigma_unchecked(&factor);
        }
        Ok(acc)
    }

    /// `∂_1^{e_1} ∂_2^{e_2} ... ∂_m^{e_m} f`.
    pub fn apply_diff_monomial(&self, f: &Polynomial, e: &[u32]) -> Result<Polynomial> {
        self.check(f)?;
        if e.len() != self.m {
            return Err(Error::InvalidArgument(format!(
                "exponent vector has length {}, expected {}",
                e.len(),
                self.m
            )));
        }
        let mut g = f.clone();
        for (j, &k) in e.iter().enumerate() {
            for _ in 0..k {
                if g.is_zero() {
                    return Ok(g);
                }
                g = g.partial(j + 1)?;
            }
        }
        Ok(g)
    }

    /// Predicted weight `d + 1` of `∂^e f` for an invariant `f` with
    /// `∂_1^{|e|} f ≠ 0`, where `d = Σ (i−1) e_i`. Each `∂_j` raises the weight
    /// by `j − 1` because `Δ^{j-1}` carries `∂_j` to `±∂_1` and kills it after.
    pub fn predicted_diff_weight(&self, e: &[u32]) -> Result<usize> {
        let d = diff_weight_exponent(e);
        if d as u64 >= self.p.get() {
            return Err(Error::OutOfLemmaRange { d, p: self.p.get() });
        }
        Ok(d + 1)
    }

    /// `Σ e_i (m − i)`: a monomial `x^e` with this value below p has weight
    /// one more than it.
    pub fn monomial_weight_exponent(&self, e: &[u32]) -> usize {
        e.iter()
            .enumerate()
            .map(|(i, &ei)| ei as usize * (self.m - 1 - i))
            .sum()
    }

    /// Matrix `A` with `σ x_i = Σ_j a_ij x_j`.
    pub fn substitution_matrix(&self) -> Matrix {
        let mut a = Matrix::identity(self.m, self.p);
        for i in 0..self.m - 1 {
            a.set(i, i + 1, 1);
        }
        a
    }

    /// Checks `σ(∂_i f) = Σ_j b_ji ∂_j(σ f)` for every `i`, where `B = A^{-1}`.
    pub fn verify_dual_action(&self, f: &Polynomial) -> Result<bool> {
        self.check(f)?;
        let b = self
            .substitution_matrix()
            .inverse()
            .ok_or_else(|| Error::Consistency("σ substitution matrix is singular".into()))?;
        let sf = self.sigma_unchecked(f);
        let dsf: Vec<Polynomial> = (1..=self.m).map(|j| sf.partial(j)).collect::<Result<_>>()?;
        for i in 1..=self.m {
            let lhs = self.sigma_unchecked(&f.partial(i)?);
            let mut rhs = self.zero();
            for j in 1..=self.m {
                rhs = &rhs + &dsf[j - 1].scale_raw(b.get(j - 1, i - 1));
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `d = Σ_i (i − 1) e_i` for the operator `∂_1^{e_1} ... ∂_m^{e_m}`.
pub fn diff_weight_exponent(e: &[u32]) -> usize {
    e.iter().enumerate().map(|(i, &ei)| i * ei as usize).sum()
}

/// `Σ_i i·e_i`, which overshoots the weight exponent by `Σ e_i`. Kept for
/// erratum reporting only.
pub fn printed_diff_weight_exponent(e: &[u32]) -> usize {
    e.iter()
        .enumerate()
        .map(|(i, &ei)| (i + 1) * ei as usize)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, m: usize) -> ActionContext {
        ActionContext::new(Prime::new(p).unwrap(), m).unwrap()
    }

    #[test]
    fn context_requires_indecomposable() {
        let p = Prime::new(3).unwrap();
        assert!(ActionContext::new(p, 3).is_ok());
        assert!(matches!(
            ActionContext::new(p, 4),
            Err(Error::NotIndecomposable { .. })
        ));
        assert!(matches!(
            ActionContext::new(p, 1),
            Err(Error::NotIndecomposable { .. })
        ));
        assert!(matches!(
            ActionContext::new(Prime::new(11).unwrap(), 5),
            Err(Error::UnsupportedVariables(5))
        ));
    }

    #[test]
    fn sigma_examples() {
        let c = ctx(5, 3);
        assert_eq!(c.sigma(&c.var(3)).unwrap(), c.var(3));
        let c2 = ctx(5, 2);
        assert_eq!(c2.sigma(&c2.var(1)).unwrap(), c2.parse("x1 + x2").unwrap());
        let c3 = ctx(3, 3);
        let a2 = c3.parse("x2^2 - 2*x1*x3 - x2*x3").unwrap();
        assert_eq!(c3.sigma(&a2).unwrap(), a2);
        let other = Polynomial::var(1, 2, Prime::new(5).unwrap());
        assert!(matches!(
            c.sigma(&other),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn delta_examples() {
        for m in 2..=3 {
            let c = ctx(5, m);
            assert_eq!(c.delta(&c.var(1)).unwrap(), c.var(2));
            assert!(c.delta_power(&c.var(1), m).unwrap().is_zero());
            assert_eq!(c.delta_power(&c.var(1), m - 1).unwrap(), c.var(m));
        }
        let c = ctx(3, 2);
        let x1sq = c.parse("x1^2").unwrap();
        assert_eq!(c.delta(&x1sq).unwrap(), c.parse("2*x1*x2 + x2^2").unwrap());
    }

    #[test]
    fn weight_examples() {
        let c = ctx(7, 3);
        assert_eq!(c.weight(&c.var(3)).unwrap(), 1);
        assert_eq!(c.weight(&c.zero()).unwrap(), 1);
        let c2 = ctx(7, 2);
        for k in 0..7u32 {
            assert_eq!(c2.weight(&c2.var(1).pow(k)).unwrap(), k as usize + 1);
        }
        let z = c.parse("x1*x2^2").unwrap();
        assert_eq!(c.monomial_weight_exponent(&[1, 2, 0]), 4);
        assert_eq!(c.weight(&z).unwrap(), 5);
    }

    #[test]
    fn norm_examples() {
        for p in [3u64, 5, 7] {
            let c = ctx(p, 2);
            let n1 = c.norm(1).unwrap();
            let expected = c.parse(&format!("x1^{p} - x1*x2^{}", p - 1)).unwrap();
            assert_eq!(n1, expected);
            assert_eq!(c.norm(2).unwrap(), c.var(2).pow(p as u32));
        }
        let c = ctx(3, 3);
        let n1 = c.norm(1).unwrap();
        assert_eq!(n1.degree(), Some(3));
        assert!(n1.is_homogeneous());
        assert!(c.is_invariant(&n1).unwrap());
        assert_eq!(n1.leading_term().unwrap().0, Monomial::new(&[3, 0, 0]));
    }

    #[test]
    fn diff_monomial_examples() {
        let c = ctx(5, 3);
        let n1 = c.norm(1).unwrap();
        assert_eq!(c.apply_diff_monomial(&n1, &[0, 0, 0]).unwrap(), n1);
        let d1 = c.apply_diff_monomial(&n1, &[1, 0, 0]).unwrap();
        assert_eq!(d1.degree(), Some(4));
        let a2 = c.parse("x2^2 - 2*x1*x3 - x2*x3").unwrap();
        let f = a2.pow(2);
        let direct = c.apply_diff_monomial(&f, &[0, 1, 2]).unwrap();
        let reordered = f
            .partial(3)
            .unwrap()
            .partial(2)
            .unwrap()
            .partial(3)
            .unwrap();
        assert_eq!(direct, reordered);
    }

    #[test]
    fn predicted_weights() {
        let c = ctx(11, 3);
        assert_eq!(c.predicted_diff_weight(&[4, 0, 0]).unwrap(), 1);
        for l in 1..=4u32 {
            assert_eq!(
                c.predicted_diff_weight(&[0, 1, l - 1]).unwrap(),
                2 * l as usize
            );
            assert_eq!(
                c.predicted_diff_weight(&[0, 0, l]).unwrap(),
                2 * l as usize + 1
            );
        }
        assert_eq!(
            c.predicted_diff_weight(&[0, 0, 6]),
            Err(Error::OutOfLemmaRange { d: 12, p: 11 })
        );
        assert_eq!(printed_diff_weight_exponent(&[0, 1, 1]), 5);
    }

    #[test]
    fn dual_action_examples() {
        let c = ctx(3, 2);
        assert!(c.verify_dual_action(&c.parse("2").unwrap()).unwrap());
        assert!(c.verify_dual_action(&c.parse("x1*x2").unwrap()).unwrap());
        let c3 = ctx(7, 3);
        assert!(c3
            .verify_dual_action(&c3.parse("x1^3*x2 + 5*x2*x3^4 + x1").unwrap())
            .unwrap());
    }
}
