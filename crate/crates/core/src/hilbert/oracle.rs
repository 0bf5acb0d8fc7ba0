//! Brute-force graded dimensions from exact ranks of Δ on each homogeneous
//! piece k[V]_d. These are the ground truth every closed form is checked
//! against.

use rayon::prelude::*;
use serde::Serialize;

use super::closed::{check_cutoff, degree_cap, h_ig, h_kn};
use crate::action::ActionContext;
use crate::error::Result;
use crate::ff::Prime;
use crate::linalg::{intersection_dim, rank_of_rows, Echelon, Matrix};
use crate::poly::graded_basis;

/// Matrix of Δ on the degree-`d` piece, in the basis of `graded_basis`;
/// column `j` holds the coordinates of Δ applied to the `j`-th monomial.
pub fn delta_matrix(ctx: &ActionContext, d: u32) -> Matrix {
    let basis = graded_basis(ctx.nvars(), d);
    let p = ctx.prime();
    let cols: Vec<Vec<u64>> = basis
        .monomials()
        .iter()
        .map(|mono| {
            let f = crate::poly::Polynomial::term(1, *mono, ctx.nvars(), p);
            basis.coords(&ctx.delta(&f).expect("ambient matches"))
        })
        .collect();
    Matrix::from_cols(&cols, basis.len(), p)
}

/// Δ restricted to one graded piece, with the images `im Δ^j` for every `j`.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: u32,
    dim: usize,
    /// `images[j]` is a basis of `im Δ^j`; the list ends with an empty basis.
    images: Vec<Vec<Vec<u64>>>,
    kernel: Vec<Vec<u64>>,
    p: Prime,
}

impl GradedPiece {
    pub fn new(ctx: &ActionContext, d: u32) -> Self {
        let p = ctx.prime();
        let delta = delta_matrix(ctx, d);
        let dim = delta.rows();
        let mut images = Vec::new();
        let mut current: Vec<Vec<u64>> = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect();
        loop {
            let done = current.is_empty();
            images.push(current.clone());
            if done || images.len() > p.get() as usize + 1 {
                break;
            }
            let mut ech = Echelon::new(dim, p);
            let mut next = Vec::new();
            for v in &current {
                let w = delta.mul_vec(v);
                if ech.insert(w.clone()) {
                    next.push(w);
                }
            }
            current = next;
        }
        let kernel = delta.nullspace();
        GradedPiece {
            degree: d,
            dim,
            images,
            kernel,
            p,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `rank Δ^j` on this piece.
    pub fn rank(&self, j: usize) -> usize {
        self.images.get(j).map_or(0, Vec::len)
    }

    /// `dim ker Δ^n`.
    pub fn kernel_dim(&self, n: usize) -> usize {
        self.dim - self.rank(n)
    }

    pub fn invariant_dim(&self) -> usize {
        self.kernel.len()
    }

    /// `dim(im Δ^j ∩ ker Δ)`, by an explicit subspace intersection.
    pub fn image_invariant_dim(&self, j: usize) -> usize {
        match self.images.get(j) {
            None => 0,
            Some(img) => intersection_dim(img, &self.kernel, self.dim, self.p),
        }
    }

    /// Jordan-block multiplicities `μ_k = r_{k-1} − 2 r_k + r_{k+1}`, k = 1..=p.
    pub fn multiplicities(&self) -> Vec<usize> {
        (1..=self.p.get() as usize)
            .map(|k| {
                let v = self.rank(k - 1) as i64 - 2 * self.rank(k) as i64 + self.rank(k + 1) as i64;
                assert!(v >= 0, "negative Jordan multiplicity");
                v as usize
            })
            .collect()
    }
}

/// Multiplicities of the indecomposables `V_1..V_p` in k[V_m]_d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicityTable {
    pub p: u64,
    pub m: usize,
    pub degree: u32,
    /// `mu[k - 1]` is the multiplicity of `V_k`.
    pub mu: Vec<usize>,
}

impl MultiplicityTable {
    pub fn mu(&self, k: usize) -> usize {
        self.mu[k - 1]
    }

    /// `Σ_k k·μ_k`, which must equal `dim k[V]_d`.
    pub fn weighted_total(&self) -> usize {
        self.mu.iter().enumerate().map(|(i, &v)| (i + 1) * v).sum()
    }

    /// Number of summands; each contributes one invariant line.
    pub fn summands(&self) -> usize {
        self.mu.iter().sum()
    }
}

pub fn brute_multiplicities(p: Prime, m: usize, d: u32) -> Result<MultiplicityTable> {
    check_cutoff(d, degree_cap(p))?;
    let ctx = ActionContext::new(p, m)?;
    let piece = GradedPiece::new(&ctx, d);
    Ok(MultiplicityTable {
        p: p.get(),
        m,
        degree: d,
        mu: piece.multiplicities(),
    })
}

/// `dim ker(Δ^n)` on k[V_m]_d.
pub fn brute_kernel_dim(p: Prime, m: usize, n: usize, d: u32) -> Result<usize> {
    check_cutoff(d, degree_cap(p))?;
    let ctx = ActionContext::new(p, m)?;
    Ok(GradedPiece::new(&ctx, d).kernel_dim(n))
}

/// `dim(I^G_j)_d = dim(im Δ^j ∩ ker Δ)` on k[V_m]_d.
pub fn brute_ig_dim(p: Prime, m: usize, j: usize, d: u32) -> Result<usize> {
    check_cutoff(d, degree_cap(p))?;
    let ctx = ActionContext::new(p, m)?;
    Ok(GradedPiece::new(&ctx, d).image_invariant_dim(j))
}

/// All graded pieces `0..=cutoff`, computed in parallel and indexed by degree.
#[derive(Debug, Clone)]
pub struct GradedOracle {
    p: Prime,
    m: usize,
    pieces: Vec<GradedPiece>,
}

impl GradedOracle {
    pub fn new(p: Prime, m: usize, cutoff: u32) -> Result<Self> {
        Self::with_cap(p, m, cutoff, degree_cap(p))
    }

    pub fn with_cap(p: Prime, m: usize, cutoff: u32, cap: u32) -> Result<Self> {
        check_cutoff(cutoff, cap)?;
        let ctx = ActionContext::new(p, m)?;
        let pieces = (0..=cutoff)
            .into_par_iter()
            .map(|d| GradedPiece::new(&ctx, d))
            .collect();
        Ok(GradedOracle { p, m, pieces })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.m
    }

    pub fn cutoff(&self) -> u32 {
        self.pieces.len() as u32 - 1
    }

    pub fn piece(&self, d: u32) -> &GradedPiece {
        &self.pieces[d as usize]
    }

    pub fn kernel_dims(&self, n: usize) -> Vec<usize> {
        self.pieces.iter().map(|pc| pc.kernel_dim(n)).collect()
    }

    pub fn image_invariant_dims(&self, j: usize) -> Vec<usize> {
        self.pieces
            .iter()
            .map(|pc| pc.image_invariant_dim(j))
            .collect()
    }

    pub fn invariant_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(GradedPiece::invariant_dim).collect()
    }

    pub fn multiplicities(&self, d: u32) -> MultiplicityTable {
        MultiplicityTable {
            p: self.p.get(),
            m: self.m,
            degree: d,
            mu: self.piece(d).multiplicities(),
        }
    }
}

/// Outcome of the identity `H(K_{n-1}) + H(I^G_{n-1}) = H(K_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreetestOutcome {
    pub oracle_holds: bool,
    pub closed_holds: bool,
    /// First degree where the oracle route fails, if any.
    pub first_failure: Option<u32>,
}

impl FreetestOutcome {
    pub fn holds(&self) -> bool {
        self.oracle_holds && self.closed_holds
    }
}

/// Checks the identity coefficientwise with oracle dimensions up to
/// `cutoff`, and exactly for the closed-form series.
pub fn check_freetest_with(oracle: &GradedOracle, n: usize) -> Result<FreetestOutcome> {
    let p = oracle.prime();
    let m = oracle.nvars();
    if n < 2 || n as u64 > p.get() {
        return Err(crate::error::Error::InvalidArgument(format!(
            "identity is stated for 2 <= n <= p, got n = {n}"
        )));
    }
    let prev = oracle.kernel_dims(n - 1);
    let img = oracle.image_invariant_dims(n - 1);
    let cur = oracle.kernel_dims(n);
    let first_failure = (0..prev.len())
        .find(|&d| prev[d] + img[d] != cur[d])
        .map(|d| d as u32);
    let closed_lhs = h_kn(m, n - 1, p)?.series().add(h_ig(m, n, p)?.series());
    let closed_holds = closed_lhs == *h_kn(m, n, p)?.series();
    Ok(FreetestOutcome {
        oracle_holds: first_failure.is_none(),
        closed_holds,
        first_failure,
    })
}

pub fn check_freetest(m: usize, n: usize, p: Prime, cutoff: u32) -> Result<bool> {
    let oracle = GradedOracle::new(p, m, cutoff)?;
    Ok(check_freetest_with(&oracle, n)?.holds())
}

/// Rank of the products of the given homogeneous polynomials; exposed for
/// independence checks of algebra generators.
pub fn span_rank(polys: &[crate::poly::Polynomial], m: usize, d: u32, p: Prime) -> usize {
    let basis = graded_basis(m, d);
    rank_of_rows(
        polys.iter().map(|f| basis.coords(f)).collect(),
        basis.len(),
        p,
    )
}
