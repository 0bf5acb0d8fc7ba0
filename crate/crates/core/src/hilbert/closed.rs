//! Closed-form Hilbert series for k[V_2] and k[V_3] and the assemblies of
//! the kernel/image series from the multiplicity series `H_k`.

use serde::Serialize;

use super::series::HilbertSeries;
use crate::error::{Error, Result};
use crate::ff::Prime;

/// Which version of the odd-`k` multiplicity series for `V_3` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HkForm {
    /// `(t^l - t^{p-l-1}) / ((1-t^2)(1-t^p))`, which is
    /// `t^l (1 + t^2 + ... + t^{p-3-2l}) / (1-t^p)`.
    #[default]
    Corrected,
    /// `(t^{p-l} - t^{p-l-1} + t^{l+1} - t^l) / ((1-t)(1-t^2)(1-t^p))`. The
    /// numerator factors as `(t-1)(t^l + t^{p-l-1})`; the correct one is
    /// `(1-t)(t^l - t^{p-l-1})`, so the `t^{l+1} - t^l` pair has the wrong sign.
    AsPrinted,
}

fn check_m(m: usize, p: Prime) -> Result<()> {
    match m {
        2 => Ok(()),
        3 => p.require_odd(),
        _ => Err(Error::UnsupportedVariables(m)),
    }
}

fn check_n(n: usize, p: Prime) -> Result<()> {
    if n == 0 || n as u64 > p.get() {
        return Err(Error::NotIndecomposable { dim: n, p: p.get() });
    }
    Ok(())
}

fn check_k(k: usize, p: Prime) -> Result<()> {
    if k == 0 || k as u64 >= p.get() {
        return Err(Error::HpOutOfScope { k, p: p.get() });
    }
    Ok(())
}

/// Multiplicity series of `V_k` in k[V_2]: `t^{k-1} / (1 - t^p)`.
pub fn hk_v2(k: usize, p: Prime) -> Result<HilbertSeries> {
    check_k(k, p)?;
    Ok(HilbertSeries::monomial_over(k - 1, vec![p.get() as u32]))
}

/// Multiplicity series of `V_k` in k[V_3]: zero for even `k`, and for
/// `k = 2l + 1` the form selected by `form`.
pub fn hk_v3(k: usize, p: Prime, form: HkForm) -> Result<HilbertSeries> {
    p.require_odd()?;
    check_k(k, p)?;
    if k.is_multiple_of(2) {
        return Ok(HilbertSeries::zero());
    }
    let l = (k - 1) / 2;
    let q = p.get() as usize;
    Ok(match form {
        HkForm::Corrected => {
            let mut num = vec![0i64; q - l];
            num[l] += 1;
            num[q - l - 1] -= 1;
            HilbertSeries::new(num, vec![2, q as u32])
        }
        HkForm::AsPrinted => {
            let mut num = vec![0i64; q - l + 1];
            num[q - l] += 1;
            num[q - l - 1] -= 1;
            num[l + 1] += 1;
            num[l] -= 1;
            HilbertSeries::new(num, vec![1, 2, q as u32])
        }
    })
}

/// Multiplicity series for `m ∈ {2, 3}`, corrected form for `m = 3`.
pub fn hk(m: usize, k: usize, p: Prime) -> Result<HilbertSeries> {
    match m {
        2 => hk_v2(k, p),
        3 => hk_v3(k, p, HkForm::Corrected),
        _ => Err(Error::UnsupportedVariables(m)),
    }
}

/// Hilbert series of the invariant ring k[V_m]^G.
pub fn h_invariants(m: usize, p: Prime) -> Result<HilbertSeries> {
    check_m(m, p)?;
    let q = p.get() as u32;
    Ok(match m {
        2 => HilbertSeries::new(vec![1], vec![1, q]),
        _ => {
            let mut num = vec![0; q as usize + 1];
            num[0] = 1;
            num[q as usize] = 1;
            HilbertSeries::new(num, vec![1, 2, q])
        }
    })
}

/// A series obtained by two independent routes: a closed form (when one is
/// known) and an assembly from the multiplicity series.
#[derive(Debug, Clone, Serialize)]
pub struct RoutedSeries {
    pub closed: Option<HilbertSeries>,
    pub assembled: HilbertSeries,
}

impl RoutedSeries {
    /// True when there is no closed form or both routes agree exactly.
    pub fn routes_agree(&self) -> bool {
        self.closed.as_ref().is_none_or(|c| *c == self.assembled)
    }

    /// The closed form if present, else the assembly.
    pub fn series(&self) -> &HilbertSeries {
        self.closed.as_ref().unwrap_or(&self.assembled)
    }
}

/// `l = n/2` for even `n`, `(n-1)/2` for odd `n`.
pub fn half_index(n: usize) -> usize {
    n / 2
}

/// Closed form of the Hilbert series of the module of covariants
/// k[V_m]^G(V_n), equivalently of `K_n = ker Δ^n`.
pub fn h_kn_closed(m: usize, n: usize, p: Prime) -> Result<HilbertSeries> {
    check_m(m, p)?;
    check_n(n, p)?;
    let q = p.get() as usize;
    Ok(match m {
        2 => HilbertSeries::new(vec![1; n], vec![1, q as u32]),
        _ => {
            let l = half_index(n);
            let mut num = vec![0i64; q + 1];
            num[0] += 1;
            num[q] += 1;
            if n % 2 == 1 {
                num[1..=l].iter_mut().for_each(|c| *c += 2);
                num[q - l..q].iter_mut().for_each(|c| *c += 2);
            } else {
                num[1..l].iter_mut().for_each(|c| *c += 2);
                num[l] += 1;
                num[q - l] += 1;
                num[q - l + 1..q].iter_mut().for_each(|c| *c += 2);
            }
            HilbertSeries::new(num, vec![1, 2, q as u32])
        }
    })
}

/// `n·H(k[V]^G) − Σ_{k=1}^{n-1} (n − k) H_k`.
pub fn h_kn_assembled(m: usize, n: usize, p: Prime) -> Result<HilbertSeries> {
    check_m(m, p)?;
    check_n(n, p)?;
    let mut acc = h_invariants(m, p)?.scale(n as i64);
    for k in 1..n {
        acc = acc.sub(&hk(m, k, p)?.scale((n - k) as i64));
    }
    Ok(acc)
}

pub fn h_kn(m: usize, n: usize, p: Prime) -> Result<RoutedSeries> {
    Ok(RoutedSeries {
        closed: Some(h_kn_closed(m, n, p)?),
        assembled: h_kn_assembled(m, n, p)?,
    })
}

/// Hilbert series of `I^G_{n-1} = k[V]^G ∩ im Δ^{n-1}`, the invariants that
/// occur as last coefficients of covariants of support `n`.
///
/// The assembly is `H(k[V]^G) − Σ_{k=1}^{n-1} H_k`; for `m = 3` the closed
/// form `(t^l + t^{p-l}) / ((1-t)(1-t^2)(1-t^p))` is attached as well.
pub fn h_ig(m: usize, n: usize, p: Prime) -> Result<RoutedSeries> {
    check_m(m, p)?;
    check_n(n, p)?;
    let mut assembled = h_invariants(m, p)?;
    for k in 1..n {
        assembled = assembled.sub(&hk(m, k, p)?);
    }
    let closed = if m == 3 {
        let q = p.get() as usize;
        let l = half_index(n);
        let mut num = vec![0i64; q - l + 1];
        num[l] += 1;
        num[q - l] += 1;
        Some(HilbertSeries::new(num, vec![1, 2, q as u32]))
    } else {
        None
    };
    Ok(RoutedSeries { closed, assembled })
}

/// Default verification cutoff: `3p` for `m = 2` and `2p + 6` for `m = 3`.
pub fn default_cutoff(m: usize, p: Prime) -> u32 {
    let q = p.get() as u32;
    if m == 2 {
        3 * q
    } else {
        2 * q + 6
    }
}

/// Hard cap on degrees handled by the oracles and verifier: `3p + 6`.
pub fn degree_cap(p: Prime) -> u32 {
    3 * p.get() as u32 + 6
}

pub fn check_cutoff(cutoff: u32, cap: u32) -> Result<()> {
    if cutoff > cap {
        return Err(Error::CutoffExceeded {
            requested: cutoff,
            cap,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn hk_v2_examples() {
        assert_eq!(
            hk_v2(1, pr(5)).unwrap(),
            HilbertSeries::new(vec![1], vec![5])
        );
        assert_eq!(hk_v2(2, pr(3)).unwrap().coefficient(4), 1);
        assert_eq!(hk_v2(2, pr(3)).unwrap().coefficient(0), 0);
        assert_eq!(hk_v2(3, pr(3)), Err(Error::HpOutOfScope { k: 3, p: 3 }));
    }

    #[test]
    fn hk_v3_examples() {
        for p in [5u64, 7, 11] {
            for k in (2..p as usize).step_by(2) {
                assert!(hk_v3(k, pr(p), HkForm::Corrected).unwrap().is_zero());
            }
        }
        assert_eq!(
            hk_v3(1, pr(5), HkForm::Corrected).unwrap().expand(7),
            vec![1, 0, 1, 0, 0, 1, 0, 1]
        );
        assert_eq!(
            hk_v3(3, pr(7), HkForm::Corrected).unwrap().expand(8),
            vec![0, 1, 0, 1, 0, 0, 0, 0, 1]
        );
        assert_eq!(
            hk_v3(1, pr(3), HkForm::Corrected).unwrap(),
            HilbertSeries::new(vec![1], vec![3])
        );
        // the corrected form exceeds the printed one by 2t^l / ((1-t^2)(1-t^p)),
        // and starts at -1
        for p in [3u64, 5, 7] {
            for k in (1..p as usize).step_by(2) {
                let l = (k - 1) / 2;
                let c = hk_v3(k, pr(p), HkForm::Corrected).unwrap();
                let printed = hk_v3(k, pr(p), HkForm::AsPrinted).unwrap();
                let gap = HilbertSeries::monomial_over(l, vec![2, p as u32]).scale(2);
                assert_eq!(c.sub(&printed), gap);
                assert!(c.expand(3 * p as usize).iter().all(|&v| v >= 0));
            }
            let printed = hk_v3(1, pr(p), HkForm::AsPrinted).unwrap();
            assert_eq!(printed.coefficient(0), -1);
            // t^p - t^{p-1} + t - 1 = (t - 1)(t^{p-1} + 1)
            let q = p as usize;
            let mut factored = vec![0i64; q + 1];
            for (i, a) in [(0usize, -1i64), (1, 1)] {
                for (j, b) in [(0usize, 1i64), (q - 1, 1)] {
                    factored[i + j] += a * b;
                }
            }
            assert_eq!(printed.numerator(), factored.as_slice());
        }
    }

    #[test]
    fn invariant_series_examples() {
        assert_eq!(h_invariants(2, pr(3)).unwrap().expand(3), vec![1, 1, 1, 2]);
        assert_eq!(h_invariants(3, pr(3)).unwrap().coefficient(2), 2);
        for p in [3u64, 5, 7] {
            assert_eq!(h_invariants(3, pr(p)).unwrap().coefficient(0), 1);
        }
        assert!(h_invariants(3, pr(2)).is_err());
        assert!(h_invariants(4, pr(5)).is_err());
    }

    #[test]
    fn kernel_series_examples() {
        for p in [3u64, 5, 7] {
            assert_eq!(
                h_kn_closed(2, 1, pr(p)).unwrap(),
                h_invariants(2, pr(p)).unwrap()
            );
        }
        let s = h_kn_closed(3, 2, pr(5)).unwrap();
        assert_eq!(s.numerator(), &[1, 1, 0, 0, 1, 1]);
        assert_eq!(s.coefficient(1), 2);
        let s = h_kn_closed(3, 3, pr(5)).unwrap();
        assert_eq!(s.numerator(), &[1, 2, 0, 0, 2, 1]);
        assert_eq!(s.coefficient(1), 3);
        // n = p recovers the full polynomial ring
        for p in [3u64, 5, 7] {
            assert_eq!(
                h_kn_closed(3, p as usize, pr(p)).unwrap(),
                HilbertSeries::new(vec![1], vec![1, 1, 1])
            );
            assert_eq!(
                h_kn_closed(2, p as usize, pr(p)).unwrap(),
                HilbertSeries::new(vec![1], vec![1, 1])
            );
        }
    }

    #[test]
    fn kernel_series_routes_agree_v2() {
        for p in [3u64, 5, 7] {
            for n in 1..=p as usize {
                assert!(h_kn(2, n, pr(p)).unwrap().routes_agree(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn image_series_examples() {
        for p in [3u64, 5, 7] {
            let s = h_ig(3, 1, pr(p)).unwrap();
            assert_eq!(*s.series(), h_invariants(3, pr(p)).unwrap());
            assert!(s.routes_agree());
        }
        let s = h_ig(3, 2, pr(5)).unwrap();
        assert_eq!(s.series().coefficient(1), 1);
        let closed = s.closed.unwrap();
        let nonzero: Vec<usize> = closed
            .numerator()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(nonzero, vec![1, 4]);
    }

    #[test]
    fn cutoffs() {
        assert_eq!(default_cutoff(2, pr(5)), 15);
        assert_eq!(default_cutoff(3, pr(5)), 16);
        assert_eq!(degree_cap(pr(5)), 21);
        assert!(check_cutoff(22, 21).is_err());
    }
}
