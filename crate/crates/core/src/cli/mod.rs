//! Command-line front end. [`run_command`] is the whole program minus process
//! plumbing, so it can be driven from tests.

pub mod cache;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fermat::{enumerate_type, hodge_type, rational_class, Character};
use crate::hodge::{ci_prim_hodge, euler_characteristic, hypersurface_prim_hodge, jacobian_vanishing_check, CIData};
use crate::jacobian::modp::DEFAULT_PRIME;
use crate::jacobian::{HomogeneousPolynomial, HypersurfaceRing};
use crate::kermu::{rank_one_generators, span_equals_kernel, Family, SpanMode};
use crate::nl::{self, EConvention};
use crate::scalar::Scalar;
use cache::Cache;
use report::{full_report, ReportOptions, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "grifcalc", version, about = "Exact Jacobian-ring and Hodge-theoretic computations")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Cache directory (else $GRIFCALC_CACHE, else .grifcalc-cache/).
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Don't read or write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Prime for modular rank computations.
    #[arg(long, global = true, value_name = "P")]
    modp: Option<u64>,
    /// Exact elimination over ℚ where a modular shortcut is the default.
    #[arg(long, global = true)]
    exact: bool,
    /// Seed for randomized specializations.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Include wall-clock timings in the output (breaks byte determinism).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graded pieces of Jacobian rings.
    Jring {
        #[command(subcommand)]
        cmd: JringCmd,
    },
    /// Primitive Hodge numbers.
    Hodge {
        #[command(subcommand)]
        cmd: HodgeCmd,
    },
    /// Characters and rational classes on Fermat hypersurfaces.
    Fermat {
        #[command(subcommand)]
        cmd: FermatCmd,
    },
    /// The sixfold pairing matrix, its determinant and the infinitesimal invariant.
    Nl {
        #[command(subcommand)]
        cmd: NlCmd,
    },
    /// Kernel of multiplication R^3 ⊗ R^3 → R^6 for Fermat cubics.
    Kermu {
        #[command(subcommand)]
        cmd: KermuCmd,
    },
    /// ℚ-linear independence of the values ab/(a+bh).
    Independence(PairsArgs),
    /// Run every check and print a report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct RingArgs {
    /// Degree of the Fermat polynomial (ignored with --poly).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    degree: Option<u32>,
    /// Number of variables.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=16))]
    vars: u64,
    /// A homogeneous polynomial in x0, x1, … instead of the Fermat one.
    #[arg(long)]
    poly: Option<String>,
}

impl RingArgs {
    fn ring(&self) -> Result<HypersurfaceRing> {
        let n = self.vars as usize;
        match (&self.poly, self.degree) {
            (Some(src), _) => HypersurfaceRing::new(HomogeneousPolynomial::parse(src, n)?),
            (None, Some(d)) => Ok(HypersurfaceRing::fermat(d, n)),
            (None, None) => Err(Error::Parse("one of --degree or --poly is required".into())),
        }
    }

    fn params(&self) -> Value {
        json!({ "degree": self.degree, "vars": self.vars, "poly": self.poly })
    }
}

#[derive(Debug, Subcommand)]
enum JringCmd {
    /// dim R^k for k = 0..=max-k (default: the socle degree).
    Dims {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        max_k: Option<u32>,
    },
    /// Monomial basis of R^k.
    Basis {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        k: u32,
    },
    /// Normal form of a polynomial in R.
    Reduce {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial to reduce.
        #[arg(long)]
        p: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HodgeMethod {
    Residue,
    ChiY,
}

#[derive(Debug, Subcommand)]
enum HodgeCmd {
    /// Smooth degree-d hypersurface of dimension m.
    Hypersurface {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        dim: u64,
        #[arg(long, value_enum, default_value = "residue")]
        method: HodgeMethod,
    },
    /// Smooth complete intersection.
    Ci {
        /// Comma-separated degrees, e.g. 3,5,5.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        dim: u64,
    },
    /// Whether H^(2k-1) vanishes.
    Vanishing {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
enum FermatCmd {
    /// Non-vanishing characters of a Hodge type.
    Classes {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
        degree: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=16))]
        vars: u64,
        /// Hodge type p,q.
        #[arg(long = "type", value_delimiter = ',', num_args = 1, required = true)]
        hodge: Vec<usize>,
        /// List Galois orbits and their rational classes instead.
        #[arg(long)]
        orbits: bool,
    },
    /// Hodge type and eigen-monomial of one character.
    Character {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        degree: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        entries: Vec<u32>,
    },
}

#[derive(Debug, Args)]
struct TripleArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Keep a and b symbolic.
    #[arg(long)]
    symbolic: bool,
    /// Denominator of the h-term of e.
    #[arg(long, value_enum, default_value = "over-b")]
    convention: Convention,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Convention {
    OverB,
    OverD,
}

impl TripleArgs {
    fn triple(&self) -> Result<nl::TripleData> {
        let pick = |v: &Option<String>, name: &str| -> Result<Scalar> {
            match v {
                Some(s) if !self.symbolic => s.parse(),
                _ => Ok(Scalar::sym(name)),
            }
        };
        let conv = match self.convention {
            Convention::OverB => EConvention::OverB,
            Convention::OverD => EConvention::OverD,
        };
        Ok(nl::triple_with(pick(&self.a, "a")?, pick(&self.b, "b")?, conv))
    }
}

#[derive(Debug, Subcommand)]
enum NlCmd {
    /// Pairing matrix of P·e on R^1 × R^1.
    Matrix(TripleArgs),
    /// Its determinant.
    Det(TripleArgs),
    /// δν on Q⊗R (or R⊗Q with --swap).
    Deltanu {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        swap: bool,
    },
    /// Injectivity of multiplication by e on R^1.
    Rho(TripleArgs),
    /// Same as the top-level `independence`.
    Independence(PairsArgs),
}

#[derive(Debug, Args)]
struct PairsArgs {
    /// Semicolon-separated a,b pairs, e.g. "1,1;2,1;3,1".
    #[arg(long, allow_hyphen_values = true)]
    pairs: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KermuMethod {
    Span,
    Standardize,
}

#[derive(Debug, Subcommand)]
enum KermuCmd {
    /// Check that rank-one tensors span ker μ.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..=9))]
        vars: u64,
        #[arg(long, value_enum, default_value = "span")]
        method: KermuMethod,
    },
    /// Rank-one generator counts (and the generators with --list).
    Generators {
        #[arg(long, value_parser = clap::value_parser!(u64).range(4..=9))]
        vars: u64,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Number of variables for the ker μ checks.
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(4..=9))]
    kermu_vars: u64,
    /// Comma-separated check ids or groups (e.g. kermu) to skip.
    #[arg(long, value_delimiter = ',')]
    skip: Vec<String>,
    /// Pairs for the independence check (default 1,1;…;8,1).
    #[arg(long, allow_hyphen_values = true)]
    pairs: Option<String>,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    json: Value,
    text: String,
    ok: bool,
    /// Wall-clock milliseconds; shown only with `--timings` or on stderr.
    elapsed_ms: Option<u128>,
}

impl Rendered {
    fn new(json: Value, text: String) -> Self {
        Rendered {
            json,
            text,
            ok: true,
            elapsed_ms: None,
        }
    }
}

/// Run the CLI on `args` (without the program name).
pub fn run_command<I, S>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let argv = std::iter::once("grifcalc".to_string()).chain(args.into_iter().map(|s| s.as_ref().to_string()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutput {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => CommandOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: e.render().to_string(),
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let mut stderr = String::new();
            let mut json = r.json;
            if let Some(ms) = r.elapsed_ms {
                if cli.timings {
                    if let Value::Object(m) = &mut json {
                        m.insert("elapsed_ms".into(), json!(ms as u64));
                    }
                } else {
                    stderr.push_str(&format!("elapsed: {ms} ms\n"));
                }
            }
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string(&json).expect("JSON values serialize"))
            } else {
                r.text
            };
            CommandOutput {
                code: if r.ok { 0 } else { 1 },
                stdout,
                stderr,
            }
        }
        Err(e) => CommandOutput {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Bad input is a usage error (2); everything else is a failed computation (1).
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::DegreeMismatch(_)
        | Error::OutOfRange(_)
        | Error::InvalidCharacter(_)
        | Error::NotReducedMonomial(_)
        | Error::DegenerateDenominator(_)
        | Error::ParameterInModP(_)
        | Error::BadReduction(_)
        | Error::UnboundParameter(_) => 2,
        _ => 1,
    }
}

fn cache_for(cli: &Cli) -> Option<Cache> {
    (!cli.no_cache).then(|| Cache::resolve(cli.cache.as_deref()))
}

fn with_cache(cli: &Cli, op: &str, params: &Value, compute: impl FnOnce() -> Result<Value>) -> Result<Value> {
    match cache_for(cli) {
        Some(c) => c.get_or_compute(op, params, compute),
        None => compute(),
    }
}

fn prime(cli: &Cli) -> Result<u64> {
    let p = cli.modp.unwrap_or(DEFAULT_PRIME);
    crate::jacobian::modp::check_prime(p)?;
    Ok(p)
}

fn parse_pairs(src: &str) -> Result<Vec<(i64, i64)>> {
    src.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected a,b in {p:?}")))?;
            let num = |s: &str| s.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn strings<T: ToString>(v: impl IntoIterator<Item = T>) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

fn dispatch(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Jring { cmd } => jring(cli, cmd),
        Command::Hodge { cmd } => hodge(cmd),
        Command::Fermat { cmd } => fermat(cmd),
        Command::Nl { cmd } => nl_cmd(cli, cmd),
        Command::Kermu { cmd } => kermu(cli, cmd),
        Command::Independence(p) => independence(&p.pairs),
        Command::Report(r) => run_report(cli, r),
    }
}

fn jring(cli: &Cli, cmd: &JringCmd) -> Result<Rendered> {
    match cmd {
        JringCmd::Dims { ring, max_k } => {
            let r = ring.ring()?;
            let top = max_k.unwrap_or(r.socle_degree().max(0) as u32);
            let dims = r.dims(top);
            let text = dims.iter().enumerate().map(|(k, d)| format!("R^{k}: {d}\n")).collect();
            Ok(Rendered::new(
                json!({ "dims": dims, "socle_degree": r.socle_degree(), "fermat": r.is_fermat() }),
                text,
            ))
        }
        JringCmd::Basis { ring, k } => {
            let mut params = ring.params();
            params["k"] = json!(k);
            let payload = with_cache(cli, "jring.basis", &params, || {
                let r = ring.ring()?;
                let b = r.quotient_basis(*k);
                Ok(json!({ "k": k, "dim": b.dim(), "monomials": strings(b.monomials()) }))
            })?;
            let text = payload["monomials"]
                .as_array()
                .map(|ms| ms.iter().filter_map(Value::as_str).map(|m| format!("{m}\n")).collect())
                .unwrap_or_default();
            Ok(Rendered::new(payload, text))
        }
        JringCmd::Reduce { ring, p } => {
            let r = ring.ring()?;
            let poly = HomogeneousPolynomial::parse(p, r.nvars())?;
            let nf = r.normal_form(&poly)?;
            Ok(Rendered::new(
                json!({ "normal_form": nf, "text": nf.to_string() }),
                format!("{nf}\n"),
            ))
        }
    }
}

fn hodge(cmd: &HodgeCmd) -> Result<Rendered> {
    let lines = |v: &[u64], m: usize| -> String {
        v.iter().enumerate().map(|(q, h)| format!("h^{},{}_prim = {h}\n", m - q, q)).collect()
    };
    match cmd {
        HodgeCmd::Hypersurface { degree, dim, method } => {
            let m = *dim as usize;
            let hv = match method {
                HodgeMethod::Residue => {
                    if *degree < 2 {
                        return Err(Error::OutOfRange("the residue method needs degree ≥ 2".into()));
                    }
                    hypersurface_prim_hodge(*degree, m)
                }
                HodgeMethod::ChiY => ci_prim_hodge(&CIData::new(vec![*degree], m)?),
            };
            Ok(Rendered::new(json!({ "prim": hv.values }), lines(&hv.values, m)))
        }
        HodgeCmd::Ci { degrees, dim } => {
            let ci = CIData::new(degrees.clone(), *dim as usize)?;
            let hv = ci_prim_hodge(&ci);
            let chi = euler_characteristic(&ci);
            let euler: Value = chi
                .to_string()
                .parse::<serde_json::Number>()
                .map(Value::Number)
                .unwrap_or_else(|_| Value::String(chi.to_string()));
            Ok(Rendered::new(
                json!({ "prim": hv.values, "euler": euler }),
                format!("{}euler = {chi}\n", lines(&hv.values, ci.m)),
            ))
        }
        HodgeCmd::Vanishing { degrees, dim, k } => {
            let ci = CIData::new(degrees.clone(), *dim)?;
            let v = jacobian_vanishing_check(&ci, *k)?;
            Ok(Rendered::new(
                json!({ "vanishes": v }),
                format!("H^{} {}\n", 2 * k - 1, if v { "vanishes" } else { "does not vanish" }),
            ))
        }
    }
}

fn fermat(cmd: &FermatCmd) -> Result<Rendered> {
    match cmd {
        FermatCmd::Classes {
            degree,
            vars,
            hodge,
            orbits,
        } => {
            let [p, q] = hodge[..] else {
                return Err(Error::Parse(format!("--type expects p,q, got {hodge:?}")));
            };
            let e = enumerate_type(*degree, *vars as usize, (p, q))?;
            if *orbits {
                let list: Vec<Value> = e
                    .orbits
                    .iter()
                    .map(|o| {
                        let class = rational_class(o)?;
                        Ok(json!({
                            "least": o.least().to_string(),
                            "members": strings(&o.members),
                            "class": class.to_polynomial().to_string(),
                        }))
                    })
                    .collect::<Result<_>>()?;
                let text = list
                    .iter()
                    .map(|v| format!("{}  {}\n", v["least"].as_str().unwrap_or(""), v["class"].as_str().unwrap_or("")))
                    .collect::<String>()
                    + &format!("{} orbits\n", list.len());
                Ok(Rendered::new(json!({ "count": list.len(), "orbits": list }), text))
            } else {
                let chars = strings(&e.characters);
                let text = chars.iter().map(|c| format!("{c}\n")).collect::<String>()
                    + &format!("{} characters\n", chars.len());
                Ok(Rendered::new(json!({ "count": chars.len(), "characters": chars }), text))
            }
        }
        FermatCmd::Character { degree, entries } => {
            let c = Character::new(*degree, entries.clone())?;
            let (p, q) = hodge_type(&c)?;
            let m = crate::fermat::character_monomial(&c)?;
            Ok(Rendered::new(
                json!({ "character": c.to_string(), "type": [p, q], "monomial": m.to_string() }),
                format!("{c}: type ({p},{q}), monomial {m}\n"),
            ))
        }
    }
}

fn nl_cmd(cli: &Cli, cmd: &NlCmd) -> Result<Rendered> {
    match cmd {
        NlCmd::Matrix(t) => {
            let m = nl::iso_det(&t.triple()?)?.matrix;
            let text = m
                .to_dense()
                .iter()
                .map(|row| strings(row).join("\t") + "\n")
                .collect();
            Ok(Rendered::new(serde_json::to_value(&m).expect("serializable"), text))
        }
        NlCmd::Det(t) => {
            let det = nl::iso_det(&t.triple()?)?.det;
            let factored = det.render_factored();
            Ok(Rendered::new(
                json!({ "det": det.to_string(), "factored": factored }),
                format!("{factored}\n"),
            ))
        }
        NlCmd::Deltanu { triple, swap } => {
            let w = if *swap { nl::q_tensor_r().swapped() } else { nl::q_tensor_r() };
            let v = nl::delta_nu(&triple.triple()?, &w)?;
            Ok(Rendered::new(json!({ "value": v.to_string() }), format!("{v}\n")))
        }
        NlCmd::Rho(t) => {
            let r = nl::rho_check(&t.triple()?, cli.seed)?;
            let mut out = Rendered::new(
                serde_json::to_value(&r).expect("serializable"),
                format!("injective: {} (rank {}, {})\n", r.injective, r.rank, r.method),
            );
            out.ok = r.injective;
            Ok(out)
        }
        NlCmd::Independence(p) => independence(&p.pairs),
    }
}

fn independence(src: &str) -> Result<Rendered> {
    let pairs = parse_pairs(src)?;
    let ind = nl::independence_rank(&pairs)?;
    let relations: Vec<Vec<String>> = ind.relations.iter().map(strings).collect();
    let values: Vec<String> = pairs
        .iter()
        .map(|&(a, b)| {
            let h = Scalar::sym("h");
            let (a, b) = (Scalar::from_int(a), Scalar::from_int(b));
            (&a * &b).checked_div(&(&a + &(&b * &h))).map(|v| v.to_string())
        })
        .collect::<Result<_>>()?;
    let mut text = format!("rank {} of {}\n", ind.rank, pairs.len());
    for r in &relations {
        text.push_str(&format!("relation ({})\n", r.join(", ")));
    }
    Ok(Rendered::new(
        json!({ "rank": ind.rank, "relations": relations, "values": values }),
        text,
    ))
}

fn kermu(cli: &Cli, cmd: &KermuCmd) -> Result<Rendered> {
    match cmd {
        KermuCmd::Verify { vars, method } => {
            let mode = match method {
                KermuMethod::Span => SpanMode::SpanRank {
                    exact: cli.exact,
                    prime: prime(cli)?,
                },
                KermuMethod::Standardize => SpanMode::Standardize,
            };
            let params = json!({ "nvars": vars, "mode": mode });
            let start = std::time::Instant::now();
            let payload = with_cache(cli, "kermu.verify", &params, || {
                Ok(serde_json::to_value(span_equals_kernel(*vars as usize, mode)?).expect("serializable"))
            })?;
            let verdict = payload["verdict"].as_bool().unwrap_or(false);
            let mut text = String::new();
            if let Value::Object(m) = &payload {
                for (k, v) in m {
                    if !v.is_null() {
                        text.push_str(&format!("{k}: {v}\n"));
                    }
                }
            }
            Ok(Rendered {
                json: payload,
                text,
                ok: verdict,
                elapsed_ms: Some(start.elapsed().as_millis()),
            })
        }
        KermuCmd::Generators { vars, list } => {
            let gens = rank_one_generators(*vars as usize)?;
            let pairs = gens.iter().filter(|g| g.family() == Family::MonomialPair).count();
            let mut json = json!({
                "nvars": vars,
                "monomial_pair": pairs,
                "swap_binomial": gens.len() - pairs,
            });
            let mut text = format!("monomial_pair: {pairs}\nswap_binomial: {}\n", gens.len() - pairs);
            if *list {
                json["generators"] = json!(strings(&gens));
                for g in &gens {
                    text.push_str(&format!("{g}\n"));
                }
            }
            Ok(Rendered::new(json, text))
        }
    }
}

fn run_report(cli: &Cli, args: &ReportArgs) -> Result<Rendered> {
    let mut opts = ReportOptions {
        kermu_vars: args.kermu_vars as usize,
        exact: cli.exact,
        prime: prime(cli)?,
        seed: cli.seed,
        skip: args.skip.clone(),
        cache: cache_for(cli),
        ..Default::default()
    };
    if let Some(p) = &args.pairs {
        opts.pairs = parse_pairs(p)?;
    }
    let doc = full_report(&opts);
    let total: u64 = doc.timings.values().sum();
    let shown = if cli.timings { doc.clone() } else { doc.without_timings() };
    Ok(Rendered {
        json: serde_json::to_value(&shown).expect("serializable"),
        text: doc.render_text(),
        ok: !doc.failed(),
        elapsed_ms: Some(total as u128),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_parse() {
        assert_eq!(parse_pairs("1,1; 2,1;3,-1").unwrap(), vec![(1, 1), (2, 1), (3, -1)]);
        assert!(parse_pairs("1;2").is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_command(["hodge", "hypersurface", "--degree", "0", "--dim", "3"]).code, 2);
        assert_eq!(run_command(["frobnicate"]).code, 2);
        assert_eq!(run_command(["--help"]).code, 0);
    }
}
