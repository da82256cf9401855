//! Command-line front end.

pub mod cache;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ncsym::{expand, star_k_product, Basis, NCSymElem};
use crate::oracle::Budget;
use crate::ring::{inner_product, restrict, sinf, star_k, superinduce_between, tensor, value_in, CharCombo};
use crate::setpart::{count_sn, parse_subset, LabeledSetPartition, PartitionIndex, TwoBlock};

use cache::Cache;
use verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(name = "superchar", version, about = "Exact supercharacter calculus for U_n(q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Field size; must be prime wherever labels are involved.
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest group order the oracle may enumerate.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    #[arg(long, global = true, env = "SUPERCHAR_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Recompute cached results and repair entries that disagree.
    #[arg(long, global = true)]
    pub verify_cache: bool,
    /// Seed for randomized verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisArg {
    M,
    P,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::M => Basis::M,
            BasisArg::P => Basis::P,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NcsymOp {
    /// Rewrite `--x` in the basis given by `--to`.
    Convert,
    /// `--x ∗_K --y` along `--blocks`.
    Star,
    /// Word expansion of `--x` over `--letters` letters.
    Expand,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CharArgs {
    #[arg(long)]
    pub n: u32,
    /// Labeled set partition: `1-5:1, 2-4:2`, or with a header such as `n=7; 1-5:1`.
    #[arg(long = "char")]
    pub chr: String,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Restriction of a supercharacter of U_n to U_K.
    Restrict {
        #[command(flatten)]
        c: CharArgs,
        /// `[j,k]`, `{2,3,5}` (one part plus singletons) or `{1,3|2,4}`.
        #[arg(long)]
        subgroup: String,
    },
    /// Tensor product of two supercharacters of U_K.
    Tensor {
        #[command(flatten)]
        c: CharArgs,
        #[arg(long)]
        with: String,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Superinduction from U_K to U_L (default U_n).
    Sind {
        #[command(flatten)]
        c: CharArgs,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        to: Option<String>,
    },
    /// Superinflation from U_K to U_L (default U_n).
    Sinf {
        #[command(flatten)]
        c: CharArgs,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        to: Option<String>,
    },
    /// The product χ^λ ∗_K χ^μ along a two-block K.
    Star {
        #[arg(long = "char")]
        chr: String,
        #[arg(long)]
        with: String,
        /// `{K1|K2}`, e.g. `{1,3|2}`.
        #[arg(long)]
        blocks: String,
    },
    /// Inner product of two supercharacters of U_K.
    Inner {
        #[command(flatten)]
        c: CharArgs,
        #[arg(long)]
        with: String,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Value of a supercharacter at the superclass of u_μ.
    Value {
        #[command(flatten)]
        c: CharArgs,
        #[arg(long)]
        at: String,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Number of F_q-labeled set partitions of {1..n}.
    Count {
        #[arg(long)]
        n: u32,
    },
    /// Run verification suites against the oracle.
    Verify {
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_n: u32,
    },
    /// Symmetric functions in non-commuting variables.
    Ncsym {
        #[arg(value_enum)]
        op: NcsymOp,
        /// e.g. `p{1|2} - 1/2 m{1,2}` (one basis per expression).
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: Option<String>,
        /// Degree of `--x`; inferred from `--blocks` for `star`.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        blocks: Option<String>,
        #[arg(long, value_enum)]
        to: Option<BasisArg>,
        #[arg(long)]
        letters: Option<u32>,
    },
}

/// Exit code plus what to print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Domain(_) => EXIT_PARSE,
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_VERIFY,
    }
}

fn lsp(s: &str, n: u32, p: u32) -> Result<LabeledSetPartition> {
    let t = s.trim();
    let full = if t.starts_with("n=") || t.starts_with("S=") {
        t.to_string()
    } else {
        format!("n={n}; {t}")
    };
    LabeledSetPartition::parse(&full, p).map_err(|e| match e {
        Error::Domain(m) => Error::Parse(m),
        e => e,
    })
}

/// `[2,5]` and `{2,3,5}` name one part plus singletons; anything with `|` is a full index.
pub fn subgroup_index(s: &str, n: u32) -> Result<PartitionIndex> {
    if s.contains('|') {
        PartitionIndex::parse_with_n(s, Some(n))
    } else {
        PartitionIndex::from_subset(&parse_subset(s)?, n).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn ambient(s: &Option<String>, n: u32) -> Result<PartitionIndex> {
    match s {
        Some(s) => subgroup_index(s, n),
        None => Ok(PartitionIndex::whole(n)),
    }
}

fn render_combo(x: &CharCombo, f: Format) -> String {
    match f {
        Format::Text => {
            let mut s = x.to_string();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Format::Json => pretty(&x.to_json()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json renders");
    s.push('\n');
    s
}

fn ncsym_elem(s: &str, degree: u32) -> Result<NCSymElem> {
    NCSymElem::parse(s, degree)
}

fn compute(cmd: &Command, q: u32, f: Format) -> Result<String> {
    match cmd {
        Command::Restrict { c, subgroup } => {
            let lam = lsp(&c.chr, c.n, q)?;
            let k = subgroup_index(subgroup, c.n)?;
            Ok(render_combo(&restrict(&lam, &k, q)?, f))
        }
        Command::Tensor { c, with, subgroup } => {
            let k = ambient(subgroup, c.n)?;
            let x = CharCombo::chi(lsp(&c.chr, c.n, q)?, k.clone(), q)?;
            let y = CharCombo::chi(lsp(with, c.n, q)?, k, q)?;
            Ok(render_combo(&tensor(&x, &y)?, f))
        }
        Command::Sind { c, subgroup, to } => {
            let k = subgroup_index(subgroup, c.n)?;
            let l = ambient(to, c.n)?;
            Ok(render_combo(&superinduce_between(&lsp(&c.chr, c.n, q)?, &k, &l, q)?, f))
        }
        Command::Sinf { c, subgroup, to } => {
            let k = subgroup_index(subgroup, c.n)?;
            let l = ambient(to, c.n)?;
            let lam = sinf(&lsp(&c.chr, c.n, q)?, &k, &l)?;
            Ok(render_combo(&CharCombo::chi(lam, l, q)?, f))
        }
        Command::Star { chr, with, blocks } => {
            let k = TwoBlock::parse(blocks)?;
            let x = lsp(chr, k.first().len() as u32, q)?;
            let y = lsp(with, k.second().len() as u32, q)?;
            Ok(render_combo(&star_k(&x, &y, &k, q)?, f))
        }
        Command::Inner { c, with, subgroup } => {
            let k = ambient(subgroup, c.n)?;
            let x = CharCombo::chi(lsp(&c.chr, c.n, q)?, k.clone(), q)?;
            let y = CharCombo::chi(lsp(with, c.n, q)?, k, q)?;
            let ip = inner_product(&x, &y)?;
            Ok(match f {
                Format::Text => format!("{ip}\n"),
                Format::Json => pretty(&json!({"inner": ip.to_string(), "at_q": ip.eval_at(q).to_string()})),
            })
        }
        Command::Value { c, at, subgroup } => {
            let k = ambient(subgroup, c.n)?;
            let v = value_in(&lsp(&c.chr, c.n, q)?, &lsp(at, c.n, q)?, &k, q)?;
            Ok(match f {
                Format::Text => format!("{v}\n"),
                Format::Json => pretty(&json!({"value": v.to_string()})),
            })
        }
        Command::Count { n } => {
            if q < 2 {
                return Err(Error::Parse(format!("field size {q} is below 2")));
            }
            let c = count_sn(*n, &q.into());
            Ok(match f {
                Format::Text => format!("{c}\n"),
                Format::Json => pretty(&json!({"n": n, "q": q, "count": c.to_string()})),
            })
        }
        Command::Ncsym {
            op,
            x,
            y,
            n,
            blocks,
            to,
            letters,
        } => ncsym(*op, x, y.as_deref(), *n, blocks.as_deref(), *to, *letters, f),
        Command::Verify { .. } => unreachable!("verify is not cached"),
    }
}

#[allow(clippy::too_many_arguments)]
fn ncsym(
    op: NcsymOp,
    x: &str,
    y: Option<&str>,
    n: Option<u32>,
    blocks: Option<&str>,
    to: Option<BasisArg>,
    letters: Option<u32>,
    f: Format,
) -> Result<String> {
    let need = |what: &str| Error::Parse(format!("ncsym needs --{what} here"));
    let elem = |e: &NCSymElem| match f {
        Format::Text => format!("{e}\n"),
        Format::Json => pretty(&e.to_json()),
    };
    match op {
        NcsymOp::Convert => {
            let a = ncsym_elem(x, n.ok_or_else(|| need("n"))?)?;
            Ok(elem(&a.to_basis(to.ok_or_else(|| need("to"))?.into())))
        }
        NcsymOp::Star => {
            let k = TwoBlock::parse(blocks.ok_or_else(|| need("blocks"))?)?;
            let a = ncsym_elem(x, k.first().len() as u32)?;
            let b = ncsym_elem(y.ok_or_else(|| need("y"))?, k.second().len() as u32)?;
            let mut out = star_k_product(&a, &b, &k)?;
            if let Some(t) = to {
                out = out.to_basis(t.into());
            }
            Ok(elem(&out))
        }
        NcsymOp::Expand => {
            let d = n.ok_or_else(|| need("n"))?;
            let a = ncsym_elem(x, d)?;
            let w = expand(&a, letters.unwrap_or(d.max(1)));
            let rows: Vec<(String, String)> = w
                .coeffs()
                .iter()
                .map(|(word, c)| (word.iter().map(u32::to_string).collect::<Vec<_>>().join("."), c.to_string()))
                .collect();
            Ok(match f {
                Format::Text => rows.iter().map(|(w, c)| format!("{c} x[{w}]\n")).collect(),
                Format::Json => pretty(&json!({
                    "alphabet": w.alphabet(),
                    "length": w.length(),
                    "words": rows.iter().map(|(w, c)| json!({"word": w, "coeff": c})).collect::<Vec<_>>(),
                })),
            })
        }
    }
}

fn budget_of(cli: &Cli) -> Budget {
    match cli.budget {
        Some(b) => Budget::with_group_order(b),
        None => Budget::default(),
    }
}

fn run_verify(cli: &Cli, suite: &str, max_n: u32) -> Result<Outcome> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let budget = budget_of(cli);
    let mut reports = Vec::new();
    for s in suites {
        log::info!("running suite {s}");
        reports.push(run_suite(s, max_n, cli.q, cli.seed, &budget)?);
    }
    let passed = reports.iter().all(|r| r.passed());
    let stdout = match cli.format {
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
        Format::Json => pretty(&serde_json::to_value(&reports).expect("reports serialize")),
    };
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
        stdout,
        stderr: if passed { String::new() } else { "verification failed\n".into() },
    })
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Verify { suite, max_n } => run_verify(cli, suite, *max_n),
        cmd => {
            let go = || compute(cmd, cli.q, cli.format);
            match &cli.cache_dir {
                Some(dir) => {
                    let request = json!({"q": cli.q, "format": cli.format, "op": cmd});
                    Cache::new(dir, cli.verify_cache)
                        .get_or_compute(&request, go)
                        .map(|(s, ev)| {
                            log::debug!("cache: {ev:?}");
                            Outcome::ok(s)
                        })
                }
                None => go().map(Outcome::ok),
            }
        }
    };
    result.unwrap_or_else(|e| {
        let code = exit_code(&e);
        let stderr = match &e {
            Error::Budget { what, required, limit } => {
                format!("error: {what} needs {required} elements, budget is {limit}; raise it with --budget\n")
            }
            e => format!("error: {e}\n"),
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    })
}

/// Parses arguments and runs; clap's own usage errors map to exit 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}
