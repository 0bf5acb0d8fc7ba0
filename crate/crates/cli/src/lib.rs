//! Command-line front end. `run` parses arguments, dispatches to the library
//! and returns the process exit code: 0 on success, 1 when a verification
//! fails (the report is still written), 2 on invalid arguments.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use covariant_forge::generators::{sezer_shank_expansion, sezer_shank_reconstruct, SCHEMA};
use covariant_forge::hilbert::{
    check_cutoff, default_cutoff, degree_cap, h_ig, h_invariants, h_kn, hk_v2, hk_v3, GradedOracle,
    HkForm, RoutedSeries,
};
use covariant_forge::verifier::{
    verify_free_generation_with, verify_hilbert_consistency_with, verify_weight_lemmas_to,
};
use covariant_forge::{
    v2_generators, v3_free_basis, v3_generators, ActionContext, Error, GeneratorSet, HilbertSeries,
    Prime, VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "covariant-forge",
    version,
    about = "Covariants of Z/p on k[V_2] and k[V_3] over F_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a Hilbert series in closed form with its expansion.
    Hilbert(HilbertArgs),
    /// Jordan-block multiplicities of Δ on each homogeneous piece.
    Decompose(Common),
    /// Emit a generator set as JSON.
    Generators(GeneratorArgs),
    /// Run verifications; exit 0 iff every requested check passes.
    Verify(VerifyArgs),
    /// Rebuild N_1 from its expansion in powers of x_3 and compare.
    ExpandNorm(Common),
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Common {
    /// Prime characteristic; taken from the file when --generators is given.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Degree cutoff; defaults to 3p for m = 2 and 2p + 6 for m = 3.
    #[arg(long = "max-degree")]
    max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum SeriesKind {
    /// The module of covariants k[V]^G(V_n), i.e. ker Δ^n.
    Kernel,
    Invariants,
    /// I^G_{n-1}: invariants in the image of Δ^{n-1}.
    Image,
    /// Multiplicity of V_k; needs --k.
    Multiplicity,
}

#[derive(Debug, Args)]
struct HilbertArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = SeriesKind::Kernel)]
    series: SeriesKind,
    #[arg(long)]
    k: Option<usize>,
    /// Use the printed form of the odd-k multiplicity series for m = 3.
    #[arg(long = "as-printed")]
    as_printed: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum SetKind {
    /// {Θ(x_1^k)} for m = 2, the nested set S_n for m = 3.
    Nested,
    /// For m = 3, S_n completed to a free basis degree by degree.
    Completed,
}

#[derive(Debug, Args)]
struct GeneratorArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = SetKind::Nested)]
    set: SetKind,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Check {
    Free,
    Hilbert,
    Weights,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Check::Free)]
    check: Check,
    #[arg(long, value_enum, default_value_t = SetKind::Nested)]
    set: SetKind,
    /// Verify the generator set in this JSON file instead of a built-in one.
    #[arg(long)]
    generators: Option<PathBuf>,
    /// Random samples for the differential weight check.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

/// Anything that should end with exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Outcome {
    body: String,
    pass: bool,
}

/// Entry point used by the binary.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let (common, result) = match &cli.command {
        Command::Hilbert(a) => (&a.common, hilbert(a)),
        Command::Decompose(c) => (c, decompose(c)),
        Command::Generators(a) => (&a.common, generators(a)),
        Command::Verify(a) => (&a.common, verify(a)),
        Command::ExpandNorm(c) => (c, expand_norm(c)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let written = match &common.output {
        Some(path) => {
            std::fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => out
            .write_all(outcome.body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    if outcome.pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

struct Context {
    p: Prime,
    m: usize,
    n: usize,
    cutoff: u32,
}

fn require_p(c: &Common) -> Result<u64, Failure> {
    c.p.ok_or_else(|| Failure("--p is required".into()))
}

fn context(c: &Common) -> Result<Context, Failure> {
    let p = Prime::new(require_p(c)?)?;
    if !(2..=3).contains(&c.m) {
        return Err(Failure(format!("m must be 2 or 3, got {}", c.m)));
    }
    if c.m == 3 {
        p.require_odd()?;
    }
    if c.n == 0 || c.n as u64 > p.get() {
        return Err(Failure(format!("n must satisfy 1 <= n <= p, got {}", c.n)));
    }
    let cutoff = c.max_degree.unwrap_or_else(|| default_cutoff(c.m, p));
    check_cutoff(cutoff, degree_cap(p))?;
    Ok(Context {
        p,
        m: c.m,
        n: c.n,
        cutoff,
    })
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn series_value(s: &HilbertSeries, cutoff: u32) -> Value {
    json!({
        "numerator": s.numerator_string(),
        "denominator": s.denominator_string(),
        "expansion": s.expand(cutoff as usize),
    })
}

fn hilbert(a: &HilbertArgs) -> Result<Outcome, Failure> {
    let ctx = context(&a.common)?;
    let routed = |r: RoutedSeries| (r.series().clone(), Some(r.routes_agree()));
    let (series, agree, label) = match a.series {
        SeriesKind::Kernel => {
            let (s, ok) = routed(h_kn(ctx.m, ctx.n, ctx.p)?);
            (s, ok, "kernel")
        }
        SeriesKind::Image => {
            let (s, ok) = routed(h_ig(ctx.m, ctx.n, ctx.p)?);
            (s, ok, "image")
        }
        SeriesKind::Invariants => (h_invariants(ctx.m, ctx.p)?, None, "invariants"),
        SeriesKind::Multiplicity => {
            let k =
                a.k.ok_or_else(|| Failure("--series multiplicity needs --k".into()))?;
            let s = match ctx.m {
                2 => hk_v2(k, ctx.p)?,
                _ => {
                    let form = if a.as_printed {
                        HkForm::AsPrinted
                    } else {
                        HkForm::Corrected
                    };
                    hk_v3(k, ctx.p, form)?
                }
            };
            (s, None, "multiplicity")
        }
    };
    let body = match a.common.format {
        Format::Json => {
            let mut v = json!({
                "schema": SCHEMA,
                "series": label,
                "p": ctx.p.get(),
                "m": ctx.m,
                "cutoff": ctx.cutoff,
            });
            let obj = v.as_object_mut().expect("object");
            match a.series {
                SeriesKind::Multiplicity => {
                    obj.insert("k".into(), json!(a.k));
                    obj.insert("as_printed".into(), json!(a.as_printed));
                }
                SeriesKind::Invariants => {}
                _ => {
                    obj.insert("n".into(), json!(ctx.n));
                }
            }
            if let Some(ok) = agree {
                obj.insert("routes_agree".into(), json!(ok));
            }
            if let Value::Object(s) = series_value(&series, ctx.cutoff) {
                obj.extend(s);
            }
            render_json(&v)
        }
        Format::Text => {
            let exp: Vec<String> = series
                .expand(ctx.cutoff as usize)
                .iter()
                .map(|c| c.to_string())
                .collect();
            format!("H(t) = {series}\nexpansion: {}\n", exp.join(", "))
        }
    };
    Ok(Outcome { body, pass: true })
}

fn decompose(c: &Common) -> Result<Outcome, Failure> {
    let ctx = context(c)?;
    let oracle = GradedOracle::new(ctx.p, ctx.m, ctx.cutoff)?;
    let tables: Vec<_> = (0..=ctx.cutoff).map(|d| oracle.multiplicities(d)).collect();
    let body = match c.format {
        Format::Json => render_json(&json!({
            "schema": SCHEMA,
            "p": ctx.p.get(),
            "m": ctx.m,
            "cutoff": ctx.cutoff,
            "tables": tables.iter().map(|t| json!({"degree": t.degree, "mu": t.mu})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = format!("{:>4} |", "d");
            for k in 1..=ctx.p.get() {
                s += &format!(" {:>5}", format!("V_{k}"));
            }
            s.push('\n');
            for t in &tables {
                s += &format!("{:>4} |", t.degree);
                for v in &t.mu {
                    s += &format!(" {v:>5}");
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome { body, pass: true })
}

fn build_set(ctx: &Context, set: SetKind) -> Result<GeneratorSet, Failure> {
    Ok(match (ctx.m, set) {
        (2, _) => v2_generators(ctx.p, ctx.n)?,
        (_, SetKind::Nested) => v3_generators(ctx.p, ctx.n)?,
        (_, SetKind::Completed) => v3_free_basis(ctx.p, ctx.n)?,
    })
}

fn generators(a: &GeneratorArgs) -> Result<Outcome, Failure> {
    let ctx = context(&a.common)?;
    let set = build_set(&ctx, a.set)?;
    let body = match a.common.format {
        Format::Json => {
            let mut s = set.to_json();
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for g in set.generators() {
                s += &format!(
                    "{}  degree {}  support {}\n    {}\n",
                    g.label, g.degree, g.support, g.covariant
                );
            }
            s
        }
    };
    Ok(Outcome { body, pass: true })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let file_set = match &a.generators {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            Some(GeneratorSet::from_json(&text)?)
        }
        None => None,
    };
    // A generator file fixes p, m and n.
    let ctx = match &file_set {
        Some(set) => {
            let p = set.prime();
            let cutoff = a
                .common
                .max_degree
                .unwrap_or_else(|| default_cutoff(set.m(), p));
            check_cutoff(cutoff, degree_cap(p))?;
            Context {
                p,
                m: set.m(),
                n: set.n(),
                cutoff,
            }
        }
        None => context(&a.common)?,
    };
    let wants = |c: Check| a.check == c || a.check == Check::All;
    let needs_oracle = wants(Check::Free) || wants(Check::Hilbert);
    let oracle = if needs_oracle {
        Some(GradedOracle::new(ctx.p, ctx.m, ctx.cutoff)?)
    } else {
        None
    };
    let mut reports: Vec<(&str, VerificationReport)> = Vec::new();
    if wants(Check::Free) {
        let set = match file_set {
            Some(s) => s,
            None => build_set(&ctx, a.set)?,
        };
        let oracle = oracle.as_ref().expect("oracle");
        reports.push((
            "free",
            verify_free_generation_with(&set, oracle, ctx.cutoff)?,
        ));
    }
    if wants(Check::Hilbert) {
        reports.push((
            "hilbert",
            verify_hilbert_consistency_with(oracle.as_ref().expect("oracle"), ctx.n)?,
        ));
    }
    if wants(Check::Weights) {
        reports.push((
            "weights",
            verify_weight_lemmas_to(ctx.p, ctx.m, a.samples, ctx.cutoff, a.seed)?,
        ));
    }
    let pass = reports.iter().all(|(_, r)| r.pass);
    let body = match (a.common.format, reports.len()) {
        (Format::Json, 1) => {
            let mut s = reports[0].1.to_json_pretty();
            s.push('\n');
            s
        }
        (Format::Json, _) => {
            let mut map = serde_json::Map::new();
            for (name, r) in &reports {
                map.insert(
                    (*name).into(),
                    serde_json::to_value(r).expect("serialisable"),
                );
            }
            render_json(&json!({"schema": SCHEMA, "reports": map, "pass": pass}))
        }
        (Format::Text, _) => reports
            .iter()
            .map(|(name, r)| format!("== {name} ==\n{}", r.to_text()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Outcome { body, pass })
}

fn expand_norm(c: &Common) -> Result<Outcome, Failure> {
    let p = Prime::new_odd(require_p(c)?)?;
    let ctx = ActionContext::new(p, 3)?;
    let coeffs = sezer_shank_expansion(p)?;
    let norm = ctx.norm(1)?;
    let matches = sezer_shank_reconstruct(&coeffs) == norm;
    let x3 = ctx.var(3);
    let mut nondiv = Vec::new();
    for l in 1..=(p.get() as u32 - 1) / 2 {
        let d = ctx.apply_diff_monomial(&norm, &[l, 0, 0])?;
        nondiv.push(!d.is_divisible(&x3.pow(l))?);
    }
    let pass = matches && nondiv.iter().all(|&b| b);
    let body = match c.format {
        Format::Json => render_json(&json!({
            "schema": SCHEMA,
            "p": p.get(),
            "coefficients": coeffs.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "reconstruction_matches": matches,
            "d1_norm_not_divisible_by_x3_power": nondiv,
            "pass": pass,
        })),
        Format::Text => {
            let mut s = String::new();
            for (i, a) in coeffs.iter().enumerate() {
                s += &format!("A_{i} = {a}\n");
            }
            s += &format!("sum A_i x3^i == N1: {matches}\n");
            for (l, ok) in nondiv.iter().enumerate() {
                s += &format!("d1^{} N1 not divisible by x3^{}: {ok}\n", l + 1, l + 1);
            }
            s
        }
    };
    Ok(Outcome { body, pass })
}
