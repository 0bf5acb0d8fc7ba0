//! Explicit generators: the free basis of k[V_2]^G(V_n) over k[V_2]^G, the
//! homogeneous system of parameters of k[V_3]^G, the nested set `S_n` and a
//! completed free basis of k[V_3]^G(V_n) over `A = k[a_1, a_2, a_3]`,
//! elements of `I^G_{n-1}`, and the expansion of `N_1` in powers of `x_3`.

use serde::{Deserialize, Serialize};

use crate::action::ActionContext;
use crate::covariant::{Covariant, CovariantContext};
use crate::error::{Error, Result};
use crate::ff::{binom_mod_p, Fp, Prime};
use crate::hilbert::{delta_matrix, half_index, span_rank};
use crate::linalg::{Echelon, Matrix};
use crate::poly::{graded_basis, Monomial, Polynomial};

/// Wire-format version tag for all JSON documents.
pub const SCHEMA: &str = "covariant-forge/1";

/// The polynomial algebra a generator set is free over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algebra {
    /// k[V_2]^G = k[x_2, N].
    V2Invariants,
    /// A = k[a_1, a_2, a_3] inside k[V_3]^G.
    V3Hsop,
}

impl Algebra {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            Algebra::V2Invariants => &["x2", "N"],
            Algebra::V3Hsop => &["a1", "a2", "a3"],
        }
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
        [Algebra::V2Invariants, Algebra::V3Hsop]
            .into_iter()
            .find(|a| a.names() == names.as_slice())
            .ok_or_else(|| Error::Parse(format!("unknown algebra {names:?}")))
    }

    pub fn nvars(self) -> usize {
        match self {
            Algebra::V2Invariants => 2,
            Algebra::V3Hsop => 3,
        }
    }

    /// The algebra generators as polynomials, in the order of `names`.
    pub fn generators(self, ctx: &ActionContext) -> Result<Vec<Polynomial>> {
        match self {
            Algebra::V2Invariants => Ok(vec![ctx.var(2), ctx.norm(1)?]),
            Algebra::V3Hsop => {
                let h = v3_hsop(ctx.prime())?;
                Ok(vec![h.a1, h.a2, h.a3])
            }
        }
    }

    pub fn degrees(self, p: Prime) -> Vec<u32> {
        let q = p.get() as u32;
        match self {
            Algebra::V2Invariants => vec![1, q],
            Algebra::V3Hsop => vec![1, 2, q],
        }
    }
}

/// Exponent vectors `e` with `Σ e_i · degrees[i] = d`, in lexicographically
/// descending order.
pub fn algebra_monomials(degrees: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn go(degrees: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match degrees.split_first() {
            None => {
                if left == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&g, rest)) => {
                for e in (0..=left / g).rev() {
                    prefix.push(e);
                    go(rest, left - e * g, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(degrees, d, &mut Vec::new(), &mut out);
    out
}

/// Evaluates the product `∏ gens[i]^{e_i}`.
pub fn algebra_element(gens: &[Polynomial], e: &[u32]) -> Polynomial {
    let first = &gens[0];
    let mut acc = Polynomial::one(first.nvars(), first.prime());
    for (g, &k) in gens.iter().zip(e) {
        if k > 0 {
            acc = &acc * &g.pow(k);
        }
    }
    acc
}

/// Checks that the monomials in `gens` are linearly independent in every
/// degree up to `cutoff`, i.e. that the generators are algebraically
/// independent in that range. Returns the first failing degree.
pub fn first_dependency(gens: &[Polynomial], degrees: &[u32], cutoff: u32) -> Option<u32> {
    let first = &gens[0];
    (0..=cutoff).find(|&d| {
        let monos = algebra_monomials(degrees, d);
        let polys: Vec<Polynomial> = monos.iter().map(|e| algebra_element(gens, e)).collect();
        span_rank(&polys, first.nvars(), d, first.prime()) != polys.len()
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub covariant: Covariant,
    pub degree: u32,
    pub support: usize,
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    cctx: CovariantContext,
    algebra: Algebra,
    generators: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(
        cctx: CovariantContext,
        algebra: Algebra,
        generators: Vec<Generator>,
    ) -> Result<Self> {
        if algebra.nvars() != cctx.action().nvars() {
            return Err(Error::InvalidArgument(format!(
                "algebra {:?} does not live in {} variables",
                algebra.names(),
                cctx.action().nvars()
            )));
        }
        let set = GeneratorSet {
            cctx,
            algebra,
            generators,
        };
        set.check_members()?;
        Ok(set)
    }

    pub fn context(&self) -> &CovariantContext {
        &self.cctx
    }

    pub fn prime(&self) -> Prime {
        self.cctx.prime()
    }

    pub fn m(&self) -> usize {
        self.cctx.action().nvars()
    }

    pub fn n(&self) -> usize {
        self.cctx.n()
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Degree multiset, sorted.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.generators.iter().map(|g| g.degree).collect();
        d.sort_unstable();
        d
    }

    /// A copy with the generator at `index` removed.
    pub fn without(&self, index: usize) -> GeneratorSet {
        let mut generators = self.generators.clone();
        generators.remove(index);
        GeneratorSet {
            cctx: self.cctx.clone(),
            algebra: self.algebra,
            generators,
        }
    }

    fn check_members(&self) -> Result<()> {
        for g in &self.generators {
            let fail = |reason: String| Error::Construction {
                label: g.label.clone(),
                reason,
            };
            if !self.cctx.is_invariant(&g.covariant)? {
                return Err(fail("not invariant".into()));
            }
            if g.covariant.is_zero() {
                return Err(fail("zero covariant".into()));
            }
            if g.covariant.degree() != Some(g.degree) {
                return Err(fail(format!(
                    "recorded degree {} but covariant has degree {:?}",
                    g.degree,
                    g.covariant.degree()
                )));
            }
            if g.covariant.support() != g.support {
                return Err(fail(format!(
                    "recorded support {} but covariant has support {}",
                    g.support,
                    g.covariant.support()
                )));
            }
        }
        Ok(())
    }

    pub fn to_document(&self) -> GeneratorSetDoc {
        GeneratorSetDoc {
            schema: SCHEMA.to_string(),
            p: self.prime().get(),
            m: self.m(),
            n: self.n(),
            algebra: self.algebra.names().iter().map(|s| s.to_string()).collect(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorDoc {
                    label: g.label.clone(),
                    degree: g.degree,
                    support: g.support,
                    coeffs: g.covariant.coeffs().iter().map(|f| f.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &GeneratorSetDoc) -> Result<Self> {
        if doc.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema '{}'", doc.schema)));
        }
        let p = Prime::new(doc.p)?;
        let algebra = Algebra::from_names(&doc.algebra)?;
        if algebra.nvars() != doc.m {
            return Err(Error::Parse(format!(
                "algebra {:?} does not match m = {}",
                doc.algebra, doc.m
            )));
        }
        let cctx = CovariantContext::new(ActionContext::new(p, doc.m)?, doc.n)?;
        let generators = doc
            .generators
            .iter()
            .map(|g| {
                if g.coeffs.len() != doc.n {
                    return Err(Error::Parse(format!(
                        "generator '{}' has {} coefficients",
                        g.label,
                        g.coeffs.len()
                    )));
                }
                let coeffs = g
                    .coeffs
                    .iter()
                    .map(|s| cctx.action().parse(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Generator {
                    label: g.label.clone(),
                    covariant: Covariant::from_coeffs(coeffs),
                    degree: g.degree,
                    support: g.support,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(cctx, algebra, generators)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GeneratorSetDoc =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSetDoc {
    pub schema: String,
    pub p: u64,
    pub m: usize,
    pub n: usize,
    pub algebra: Vec<String>,
    pub generators: Vec<GeneratorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub label: String,
    pub degree: u32,
    pub support: usize,
    pub coeffs: Vec<String>,
}

fn make_generator(
    cctx: &CovariantContext,
    label: String,
    f: &Polynomial,
    expected_weight: usize,
) -> Result<Generator> {
    let weight = cctx.action().weight(f)?;
    if weight != expected_weight {
        return Err(Error::Construction {
            label,
            reason: format!("weight {weight}, expected {expected_weight}"),
        });
    }
    let covariant = cctx.theta(f)?;
    let degree = f.degree().ok_or_else(|| Error::Construction {
        label: label.clone(),
        reason: "zero generating function".into(),
    })?;
    Ok(Generator {
        label,
        support: covariant.support(),
        covariant,
        degree,
    })
}

/// `{Θ(x_1^k) : k = 0..n-1}`, free over k[V_2]^G = k[x_2, N].
pub fn v2_generators(p: Prime, n: usize) -> Result<GeneratorSet> {
    let ctx = ActionContext::new(p, 2)?;
    let cctx = CovariantContext::new(ctx.clone(), n)?;
    let generators = (0..n as u32)
        .map(|k| {
            make_generator(
                &cctx,
                format!("theta(x1^{k})"),
                &ctx.var(1).pow(k),
                k as usize + 1,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorSet::new(cctx, Algebra::V2Invariants, generators)
}

/// The homogeneous system of parameters `a_1, a_2, a_3 = N_1` of k[V_3]^G
/// and the secondary invariant `N_2`.
#[derive(Debug, Clone)]
pub struct HsopV3 {
    pub a1: Polynomial,
    pub a2: Polynomial,
    pub a3: Polynomial,
    pub n2: Polynomial,
}

impl HsopV3 {
    pub fn primaries(&self) -> [&Polynomial; 3] {
        [&self.a1, &self.a2, &self.a3]
    }
}

pub fn v3_hsop(p: Prime) -> Result<HsopV3> {
    p.require_odd()?;
    let ctx = ActionContext::new(p, 3)?;
    let hsop = HsopV3 {
        a1: ctx.var(3),
        a2: ctx.parse("x2^2 - 2*x1*x3 - x2*x3")?,
        a3: ctx.norm(1)?,
        n2: ctx.norm(2)?,
    };
    let q = p.get() as u32;
    for (name, f, deg) in [
        ("a1", &hsop.a1, 1),
        ("a2", &hsop.a2, 2),
        ("a3", &hsop.a3, q),
        ("N2", &hsop.n2, q),
    ] {
        if !ctx.is_invariant(f)? || f.degree() != Some(deg) || !f.is_homogeneous() {
            return Err(Error::Construction {
                label: name.into(),
                reason: format!("expected a homogeneous invariant of degree {deg}"),
            });
        }
    }
    Ok(hsop)
}

/// The two covariants added at stage `s >= 2` of the recursion for `S_n`,
/// with labels and generating functions.
fn v3_stage(ctx: &ActionContext, n1: &Polynomial, s: usize) -> Result<[(String, Polynomial); 2]> {
    let l = half_index(s) as u32;
    Ok(if s % 2 == 1 {
        [
            (format!("theta(x1^{l}*x2^0)"), ctx.var(1).pow(l)),
            (
                format!("theta(d3^{l} N1)"),
                ctx.apply_diff_monomial(n1, &[0, 0, l])?,
            ),
        ]
    } else {
        [
            (
                format!("theta(x1^{}*x2^1)", l - 1),
                &ctx.var(1).pow(l - 1) * &ctx.var(2),
            ),
            (
                format!("theta(d3^{} d2 N1)", l - 1),
                ctx.apply_diff_monomial(n1, &[0, 1, l - 1])?,
            ),
        ]
    })
}

/// `S_n`, of size `2n`, built as `S_1 = {w_1, N_2 w_1}` plus two covariants of
/// support `s` at each stage `s = 2..=n`. Requires `p` odd and
/// `1 <= n <= p - 1`. Its degrees match the kernel series, but for `n >= 2`
/// it is not free over `A`: see [`v3_free_basis`].
pub fn v3_generators(p: Prime, n: usize) -> Result<GeneratorSet> {
    p.require_odd()?;
    if n == 0 || n as u64 >= p.get() {
        return Err(Error::InvalidArgument(format!(
            "S_n is constructed for 1 <= n <= p - 1 (got n = {n}, p = {p})"
        )));
    }
    let ctx = ActionContext::new(p, 3)?;
    let cctx = CovariantContext::new(ctx.clone(), n)?;
    let hsop = v3_hsop(p)?;
    let mut generators = vec![
        make_generator(&cctx, "theta(1)".into(), &ctx.one(), 1)?,
        make_generator(&cctx, "theta(N2)".into(), &hsop.n2, 1)?,
    ];
    for s in 2..=n {
        for (label, f) in v3_stage(&ctx, &hsop.a3, s)? {
            generators.push(make_generator(&cctx, label, &f, s)?);
        }
    }
    GeneratorSet::new(cctx, Algebra::V3Hsop, generators)
}

/// A free basis of k[V_3]^G(V_n) over `A`, built degree by degree as a
/// minimal generating set. Members of `S_n` are taken first whenever they
/// are independent of what is already spanned; the rest come from
/// `Θ(x_1^p − x_1 x_3^{p−1})` (whose `w_2` coefficient is `N_2`) and then from
/// an echelon basis of `ker Δ^n`. The kernel series has numerator degree `p`,
/// so the search stops there; the result is certified separately by
/// [`crate::verifier::verify_free_generation`].
pub fn v3_free_basis(p: Prime, n: usize) -> Result<GeneratorSet> {
    let nested = v3_generators(p, n)?;
    let cctx = nested.context().clone();
    let ctx = cctx.action().clone();
    let hsop = v3_hsop(p)?;
    let q = p.get() as u32;
    let alg = [hsop.a1.clone(), hsop.a2.clone(), hsop.a3.clone()];

    let frob = ctx.parse(&format!("x1^{q} - x1*x3^{}", q - 1))?;
    let mut chosen: Vec<(String, Polynomial)> = Vec::new();
    for d in 0..=q {
        let basis = graded_basis(3, d);
        let mut span = Echelon::new(basis.len(), p);
        for (_, f) in &chosen {
            let fd = f.degree().unwrap_or(0);
            if fd <= d {
                for e in algebra_monomials(&[1, 2, q], d - fd) {
                    span.insert(basis.coords(&(&algebra_element(&alg, &e) * f)));
                }
            }
        }
        let kernel_map = delta_power_matrix(&ctx, d, n);
        let target = basis.len() - kernel_map.rank();
        if span.rank() == target {
            continue;
        }
        let mut candidates: Vec<(String, Polynomial)> = nested
            .generators()
            .iter()
            .filter(|g| g.degree == d)
            .map(|g| (g.label.clone(), g.covariant.coeffs()[0].clone()))
            .collect();
        if d == q {
            candidates.push((format!("theta(x1^{q} - x1*x3^{})", q - 1), frob.clone()));
        }
        for (j, v) in kernel_map.nullspace().into_iter().enumerate() {
            candidates.push((format!("theta(ker[{d}].{j})"), basis.polynomial(&v, p)));
        }
        for (label, f) in candidates {
            if span.rank() == target {
                break;
            }
            if span.insert(basis.coords(&f)) {
                chosen.push((label, f));
            }
        }
    }
    if chosen.len() != 2 * n {
        return Err(Error::Construction {
            label: format!("free basis for n = {n}"),
            reason: format!("found {} generators, expected {}", chosen.len(), 2 * n),
        });
    }
    let generators = chosen
        .into_iter()
        .map(|(label, f)| {
            let w = ctx.weight(&f)?;
            make_generator(&cctx, label, &f, w)
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorSet::new(cctx, Algebra::V3Hsop, generators)
}

fn delta_power_matrix(ctx: &ActionContext, d: u32, n: usize) -> Matrix {
    let delta = delta_matrix(ctx, d);
    let mut acc = Matrix::identity(delta.rows(), ctx.prime());
    for _ in 0..n {
        acc = delta.mul(&acc);
    }
    acc
}

/// Witness that a polynomial lies in `I^G_{n-1}`: `Δ^{n-1}(preimage) = λ·target`.
#[derive(Debug, Clone)]
pub struct ImageWitness {
    pub preimage: Polynomial,
    pub target: Polynomial,
    pub scalar: Fp,
}

#[derive(Debug, Clone)]
pub struct IgGenerators {
    pub l: usize,
    /// `x_3^l`
    pub x3_power: Polynomial,
    /// `∂_1^l N_1`
    pub d1_norm: Polynomial,
    pub witnesses: [ImageWitness; 2],
    /// Coefficients of `∂_1^l N_1` on the monomials `a_1^i a_2^j` of degree
    /// `p - l`, listed as `((i, j), c)` with `c ≠ 0`.
    pub a1a2_expression: Vec<((u32, u32), Fp)>,
}

/// `x_3^l` and `∂_1^l N_1` in `I^G_{n-1}`, each certified by an explicit
/// preimage under `Δ^{n-1}`. Both lie in `A`, so they satisfy the relation
/// `∂_1^l N_1 · x_3^l − x_3^l · ∂_1^l N_1 = 0` and generate a submodule one
/// dimension short of `I^G_{n-1}` in degree `p`.
pub fn ing_generators(p: Prime, n: usize) -> Result<IgGenerators> {
    p.require_odd()?;
    if n < 2 || n as u64 >= p.get() {
        return Err(Error::InvalidArgument(format!(
            "I^G generators are constructed for 2 <= n <= p - 1 (got n = {n}, p = {p})"
        )));
    }
    let ctx = ActionContext::new(p, 3)?;
    let hsop = v3_hsop(p)?;
    let l = half_index(n);
    let x3_power = ctx.var(3).pow(l as u32);
    let d1_norm = ctx.apply_diff_monomial(&hsop.a3, &[l as u32, 0, 0])?;
    let [(_, pre_mono), (_, pre_diff)] = v3_stage(&ctx, &hsop.a3, n)?;
    let mut witnesses = Vec::with_capacity(2);
    for (pre, target) in [(pre_mono, &x3_power), (pre_diff, &d1_norm)] {
        let image = ctx.delta_power(&pre, n - 1)?;
        let scalar = image.ratio_to(target).ok_or_else(|| Error::Construction {
            label: format!("Δ^{}({pre})", n - 1),
            reason: format!("not a nonzero multiple of {target}"),
        })?;
        witnesses.push(ImageWitness {
            preimage: pre,
            target: target.clone(),
            scalar,
        });
    }
    let a1a2_expression = express_in_a1_a2(&hsop, &d1_norm)?;
    let witnesses: [ImageWitness; 2] = witnesses.try_into().expect("two witnesses");
    Ok(IgGenerators {
        l,
        x3_power,
        d1_norm,
        witnesses,
        a1a2_expression,
    })
}

// Solves f = Σ c_ij a_1^i a_2^j over the monomials of degree deg f.
fn express_in_a1_a2(hsop: &HsopV3, f: &Polynomial) -> Result<Vec<((u32, u32), Fp)>> {
    let p = f.prime();
    let d = f.degree().unwrap_or(0);
    let gens = [hsop.a1.clone(), hsop.a2.clone()];
    let monos = algebra_monomials(&[1, 2], d);
    let basis = graded_basis(3, d);
    let cols: Vec<Vec<u64>> = monos
        .iter()
        .map(|e| basis.coords(&algebra_element(&gens, e)))
        .collect();
    let system = Matrix::from_cols(&cols, basis.len(), p);
    let x = system
        .solve(&basis.coords(f))
        .ok_or_else(|| Error::Construction {
            label: f.to_string(),
            reason: "not in k[a1, a2]".into(),
        })?;
    Ok(monos
        .iter()
        .zip(x)
        .filter(|(_, c)| *c != 0)
        .map(|(e, c)| ((e[0], e[1]), p.elem(c)))
        .collect())
}

/// `ξ_{ik} = (−1)^i / (2^i (p − k)) · C(p − 2k + 1, i − k + 1) · C(p − k, k − 1)`.
pub fn sezer_shank_xi(p: Prime, i: u64, k: u64) -> Result<Fp> {
    let q = p.get();
    let sign = if i.is_multiple_of(2) {
        p.elem(1)
    } else {
        p.elem(q - 1)
    };
    let denom = p.elem(p.pow(2, i)) * p.elem(q - k);
    let top = binom_mod_p(q + 1 - 2 * k, i + 1 - k, p) * binom_mod_p(q - k, k - 1, p);
    Ok(sign * denom.inv()? * top)
}

/// Coefficients `A_0..=A_p` of `N_1 = Σ A_i x_3^i`, polynomials in `x_1, x_2`.
pub fn sezer_shank_expansion(p: Prime) -> Result<Vec<Polynomial>> {
    p.require_odd()?;
    let q = p.get();
    let zero = Polynomial::zero(3, p);
    let mut coeffs = vec![zero.clone(); q as usize + 1];
    coeffs[0] = Polynomial::parse(&format!("x1^{q} - x1*x2^{}", q - 1), 3, p)?;
    for i in 1..=q - 2 {
        let top_k = if i <= (q - 1) / 2 { i + 1 } else { q - i };
        let mut a = zero.clone();
        for k in 1..=top_k {
            let xi = sezer_shank_xi(p, i, k)?;
            let mono = Monomial::new(&[k as u32, (q - i - k) as u32, 0]);
            a = &a + &Polynomial::term(xi.value() as i64, mono, 3, p);
        }
        coeffs[i as usize] = a;
    }
    Ok(coeffs)
}

/// `Σ A_i x_3^i`.
pub fn sezer_shank_reconstruct(coeffs: &[Polynomial]) -> Polynomial {
    let first = &coeffs[0];
    let mut acc = Polynomial::zero(first.nvars(), first.prime());
    for (i, a) in coeffs.iter().enumerate() {
        acc = &acc + &a.mul_monomial(&Monomial::new(&[0, 0, i as u32]));
    }
    acc
}
