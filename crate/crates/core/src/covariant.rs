//! Elements of k[V] ⊗ W for W = V_n, the diagonal σ-action on them, and the
//! bijection Θ between `ker Δ^n` and the module of covariants.

use std::fmt;

use crate::action::ActionContext;
use crate::error::{Error, Result};
use crate::ff::Prime;
use crate::poly::Polynomial;

/// An action context together with the dimension `n` of the target module.
#[derive(Debug, Clone)]
pub struct CovariantContext {
    action: ActionContext,
    n: usize,
}

impl CovariantContext {
    pub fn new(action: ActionContext, n: usize) -> Result<Self> {
        if n == 0 || n as u64 > action.prime().get() {
            return Err(Error::NotIndecomposable {
                dim: n,
                p: action.prime().get(),
            });
        }
        let cctx = CovariantContext { action, n };
        cctx.check_crucial_identity()?;
        Ok(cctx)
    }

    pub fn action(&self) -> &ActionContext {
        &self.action
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.action.prime()
    }

    /// Coefficients of `σ w_i = w_i − w_{i−1} + w_{i−2} − ... ± w_1`
    /// (1-based `i`), as a length-`n` vector indexed by `w_1..w_n`.
    pub fn sigma_w(&self, i: usize) -> Result<Vec<u64>> {
        if i == 0 || i > self.n {
            return Err(Error::VariableOutOfRange {
                index: i,
                vars: self.n,
            });
        }
        let p = self.prime();
        let mut v = vec![0; self.n];
        for j in 1..=i {
            v[j - 1] = if (i - j).is_multiple_of(2) {
                1
            } else {
                p.neg(1)
            };
        }
        Ok(v)
    }

    // Δ(w_{i+1}) + σ(w_i) = 0 for 1 <= i < n, and Δ(w_1) = 0.
    fn check_crucial_identity(&self) -> Result<()> {
        let p = self.prime();
        let w1 = self.sigma_w(1)?;
        if w1.iter().enumerate().any(|(j, &c)| c != u64::from(j == 0)) {
            return Err(Error::Consistency("Δ(w_1) ≠ 0".into()));
        }
        for i in 1..self.n {
            let next = self.sigma_w(i + 1)?;
            let cur = self.sigma_w(i)?;
            for j in 0..self.n {
                let delta_next = p.sub(next[j], u64::from(j == i));
                if p.add(delta_next, cur[j]) != 0 {
                    return Err(Error::Consistency(format!(
                        "Δ(w_{}) + σ(w_{}) ≠ 0",
                        i + 1,
                        i
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(&self) -> Covariant {
        Covariant {
            coeffs: vec![self.action.zero(); self.n],
        }
    }

    fn check(&self, phi: &Covariant) -> Result<()> {
        if phi.coeffs.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "covariant has {} components, expected {}",
                phi.coeffs.len(),
                self.n
            )));
        }
        for f in &phi.coeffs {
            if f.nvars() != self.action.nvars() || f.prime() != self.prime() {
                return Err(Error::AmbientMismatch {
                    lhs_vars: self.action.nvars(),
                    lhs_p: self.prime().get(),
                    rhs_vars: f.nvars(),
                    rhs_p: f.prime().get(),
                });
            }
        }
        Ok(())
    }

    /// Diagonal action: σ on every polynomial coefficient and on every w_i.
    pub fn apply_sigma(&self, phi: &Covariant) -> Result<Covariant> {
        self.check(phi)?;
        let mut out = self.zero();
        for (i, f) in phi.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let sf = self.action.sigma(f)?;
            for (j, &c) in self.sigma_w(i + 1)?.iter().enumerate() {
                if c != 0 {
                    out.coeffs[j] = &out.coeffs[j] + &sf.scale_raw(c);
                }
            }
        }
        Ok(out)
    }

    pub fn is_invariant(&self, phi: &Covariant) -> Result<bool> {
        Ok(self.apply_sigma(phi)? == *phi)
    }

    /// Θ(f) = Σ_i Δ^{i−1}(f) w_i. Rejects `f` with `Δ^n(f) ≠ 0`.
    pub fn theta(&self, f: &Polynomial) -> Result<Covariant> {
        let chain = self.action.delta_chain(f)?;
        if chain.len() > self.n {
            return Err(Error::NotInKernel {
                weight: chain.len(),
                n: self.n,
            });
        }
        let mut phi = self.zero();
        for (slot, g) in phi.coeffs.iter_mut().zip(chain) {
            *slot = g;
        }
        Ok(phi)
    }

    /// Inverse of Θ: returns `f_1` after certifying the chain
    /// `Δ f_i = f_{i+1}`, `Δ f_n = 0`.
    pub fn extract(&self, phi: &Covariant) -> Result<Polynomial> {
        if !self.is_invariant(phi)? {
            return Err(Error::NotInvariant);
        }
        for i in 0..self.n {
            let d = self.action.delta(&phi.coeffs[i])?;
            let next = phi
                .coeffs
                .get(i + 1)
                .cloned()
                .unwrap_or_else(|| self.action.zero());
            if d != next {
                return Err(Error::Consistency(format!("Δ(f_{}) ≠ f_{}", i + 1, i + 2)));
            }
        }
        Ok(phi.coeffs[0].clone())
    }

    /// Largest index with a nonzero coefficient; 0 for the zero covariant.
    pub fn support(&self, phi: &Covariant) -> usize {
        phi.support()
    }

    /// Parses `f1 | f2 | ... | fn`.
    pub fn parse(&self, s: &str) -> Result<Covariant> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != self.n {
            return Err(Error::Parse(format!(
                "expected {} components, found {}",
                self.n,
                parts.len()
            )));
        }
        let coeffs = parts
            .into_iter()
            .map(|t| self.action.parse(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Covariant { coeffs })
    }
}

/// `Σ f_i w_i`, stored as the coefficient vector `(f_1, ..., f_n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Covariant {
    coeffs: Vec<Polynomial>,
}

impl Covariant {
    pub fn from_coeffs(coeffs: Vec<Polynomial>) -> Self {
        Covariant { coeffs }
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn support(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|f| !f.is_zero())
            .map_or(0, |i| i + 1)
    }

    /// Common degree of the nonzero components, if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut deg = None;
        for f in self.coeffs.iter().filter(|f| !f.is_zero()) {
            if !f.is_homogeneous() {
                return None;
            }
            let d = f.degree();
            if deg.is_some() && deg != d {
                return None;
            }
            deg = d;
        }
        deg
    }

    pub fn scale_by(&self, b: &Polynomial) -> Covariant {
        Covariant {
            coeffs: self.coeffs.iter().map(|f| b * f).collect(),
        }
    }

    pub fn add(&self, other: &Covariant) -> Covariant {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        Covariant {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for Covariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cctx(p: u64, m: usize, n: usize) -> CovariantContext {
        let a = ActionContext::new(Prime::new(p).unwrap(), m).unwrap();
        CovariantContext::new(a, n).unwrap()
    }

    #[test]
    fn sigma_w_examples() {
        let c = cctx(5, 2, 4);
        assert_eq!(c.sigma_w(1).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(c.sigma_w(2).unwrap(), vec![4, 1, 0, 0]);
        assert_eq!(c.sigma_w(3).unwrap(), vec![1, 4, 1, 0]);
        assert!(c.sigma_w(5).is_err());
    }

    #[test]
    fn invariance_examples() {
        let c = cctx(3, 2, 2);
        let w1 = c.theta(&c.action().one()).unwrap();
        assert!(c.is_invariant(&w1).unwrap());
        let phi = c.parse("x1 | x2").unwrap();
        assert!(c.is_invariant(&phi).unwrap());
        let bad = c.parse("x1 | 0").unwrap();
        assert!(!c.is_invariant(&bad).unwrap());
        assert!(c.apply_sigma(&bad).unwrap().coeffs()[0]
            .to_string()
            .contains("x2"));
    }

    #[test]
    fn theta_examples() {
        let c = cctx(3, 2, 2);
        assert_eq!(c.theta(&c.action().one()).unwrap().to_string(), "1 | 0");
        assert_eq!(
            c.theta(&c.action().var(1)).unwrap(),
            c.parse("x1 | x2").unwrap()
        );
        let too_heavy = c.action().var(1).pow(2);
        assert_eq!(
            c.theta(&too_heavy),
            Err(Error::NotInKernel { weight: 3, n: 2 })
        );

        let c3 = cctx(7, 3, 5);
        let phi = c3.theta(&c3.action().var(1).pow(2)).unwrap();
        assert_eq!(phi.support(), 5);
        assert!(c3.is_invariant(&phi).unwrap());
    }

    #[test]
    fn extract_examples() {
        let c = cctx(3, 2, 2);
        assert_eq!(
            c.extract(&c.parse("1 | 0").unwrap()).unwrap(),
            c.action().one()
        );
        assert_eq!(
            c.extract(&c.parse("x1 | x2").unwrap()).unwrap(),
            c.action().var(1)
        );
        assert_eq!(
            c.extract(&c.parse("x1 | 0").unwrap()),
            Err(Error::NotInvariant)
        );
    }

    #[test]
    fn support_examples() {
        let c = cctx(5, 2, 5);
        assert_eq!(c.support(&c.zero()), 0);
        for k in 0..5u32 {
            let phi = c.theta(&c.action().var(1).pow(k)).unwrap();
            assert_eq!(c.support(&phi), k as usize + 1);
        }
        assert_eq!(c.theta(&c.action().var(2)).unwrap().support(), 1);
    }

    #[test]
    fn target_dimension_bounded_by_p() {
        let a = ActionContext::new(Prime::new(3).unwrap(), 2).unwrap();
        assert!(CovariantContext::new(a.clone(), 3).is_ok());
        assert!(CovariantContext::new(a, 4).is_err());
    }
}
