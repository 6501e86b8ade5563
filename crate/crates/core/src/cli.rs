//! The `descartes` command line.
//!
//! Exit codes: 0 on success, 1 when a realization search runs out of budget,
//! 2 on invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::combinatorics::{enumerate_couples, enumerate_orbits, CompatibleCouple, SignPattern};
use crate::exactpoly::ModuliOrder;
use crate::multisym::{check_sign_claims, verify_identities};
use crate::quartic::{classify, discriminant_membership, slice_csv, slice_grid, QuarticPoint, SliceSpec};
use crate::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::realize::{
    catalog, pattern_only_candidates, realize, RealizationTarget, SearchBudget, SearchOutcome,
};
use crate::scp::{count_scps, enumerate_scps, Scp};

#[derive(Debug, Parser)]
#[command(name = "descartes", version, about = "Descartes' rule of signs realization toolkit")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// E_d(m,n) and F_d by the level recurrence.
    CountScps(DegreeArg),
    /// List couples, SCPs or couple orbits.
    Enumerate {
        #[arg(value_enum)]
        what: EnumerateWhat,
        #[command(flatten)]
        degree: DegreeArg,
    },
    /// Search for a polynomial realizing a target given as JSON.
    Realize {
        #[arg(value_enum)]
        kind: TargetKind,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Region label of a monic quartic given as b3,b2,b1,b0.
    ClassifyQuartic {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Labels on a 2-D grid of quartics, as CSV.
    SliceQuartic {
        /// Two fixed coefficients, e.g. `b3=-2,b0=4`.
        #[arg(long, allow_hyphen_values = true)]
        fix: String,
        /// Two varying coefficients, e.g. `b2=-5:-1:5,b1=2:6:5`.
        #[arg(long, allow_hyphen_values = true)]
        vary: String,
    },
    /// Non-realizable couples and SCPs for one degree.
    Catalog {
        #[command(flatten)]
        degree: DegreeArg,
        /// Also search every SCP whose pattern occurs in no catalogued couple.
        #[arg(long)]
        research: bool,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Exact check of the identities behind the degree-6 obstruction.
    VerifyIdentities,
    /// Sampled check of the sign claims behind the degree-6 obstruction.
    VerifyTheorem1 {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Consecutive ratios of F_d / 2.
    ReportRatios {
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

#[derive(Debug, Args)]
pub struct DegreeArg {
    #[arg(long, short)]
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateWhat {
    Couples,
    Scps,
    Orbits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetKind {
    Couple,
    Scp,
    Order,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Target JSON, e.g. `{"pattern":"+---+","pair":[2,2]}`.
    #[arg(long, conflicts_with = "target_file", allow_hyphen_values = true)]
    pub target: Option<String>,
    #[arg(long)]
    pub target_file: Option<PathBuf>,
    /// Iterations; defaults to 10^5, or 10^6 for SCPs of degree >= 6.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = SearchBudget::DEFAULT_EXPONENTS.0, allow_hyphen_values = true)]
    pub exp_lo: i32,
    #[arg(long, default_value_t = SearchBudget::DEFAULT_EXPONENTS.1, allow_hyphen_values = true)]
    pub exp_hi: i32,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok((text, code)) => match emit(&cli, &text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(invalid)?;
    s.push('\n');
    Ok(s)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn check_degree(d: usize) -> Result<usize, CliError> {
    if d == 0 {
        return Err(CliError::Invalid("degree must be at least 1".into()));
    }
    Ok(d)
}

/// Produces the output text and exit code without touching stdout.
pub fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    let out = match &cli.command {
        Command::CountScps(DegreeArg { degree }) => {
            let t = count_scps(check_degree(*degree)?);
            match cli.format {
                Format::Json => json(&t)?,
                Format::Csv => {
                    let mut s = String::from("m,n,count\n");
                    for (k, v) in &t.entries {
                        let _ = writeln!(s, "{},{},{v}", k.pos, k.neg);
                    }
                    s
                }
                Format::Table => {
                    let mut s = String::new();
                    for (k, v) in &t.entries {
                        let _ = writeln!(s, "E_{}({},{}) = {v}", t.degree, k.pos, k.neg);
                    }
                    let _ = writeln!(s, "F_{} = {}", t.degree, t.total());
                    s
                }
            }
        }
        Command::Enumerate { what, degree } => enumerate(*what, check_degree(degree.degree)?, cli.format)?,
        Command::Realize { kind, search } => return realize_cmd(*kind, search, cli.seed),
        Command::ClassifyQuartic { point } => {
            let q = parse_point(point)?;
            let label = classify(&q);
            match cli.format {
                Format::Json => json(&serde_json::json!({
                    "point": q,
                    "label": label,
                    "membership": discriminant_membership(&q),
                }))?,
                _ => format!("{}\n", label.name()),
            }
        }
        Command::SliceQuartic { fix, vary } => {
            let spec = SliceSpec::parse(fix, vary).map_err(invalid)?;
            let rows = slice_grid(&spec).map_err(invalid)?;
            match cli.format {
                Format::Json => json(&rows)?,
                _ => slice_csv(&rows),
            }
        }
        Command::Catalog {
            degree,
            research,
            budget,
        } => {
            let d = check_degree(degree.degree)?;
            let cat = catalog(d).map_err(invalid)?;
            if *research {
                let b = SearchBudget::new(*budget, cli.seed);
                let cands = pattern_only_candidates(d, &b).map_err(invalid)?;
                json(&serde_json::json!({ "catalog": cat, "research_candidates": cands }))?
            } else {
                json(&cat)?
            }
        }
        Command::VerifyIdentities => json(&verify_identities())?,
        Command::VerifyTheorem1 { samples } => json(&check_sign_claims(*samples, cli.seed))?,
        Command::ReportRatios { max_degree } => {
            let rows = ratio_rows(check_degree(*max_degree)?);
            match cli.format {
                Format::Json => json(&rows)?,
                Format::Csv => {
                    let mut s = String::from("d,half_count,ratio,decimal\n");
                    for r in &rows {
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            r.d,
                            r.half_count,
                            r.ratio.as_deref().unwrap_or(""),
                            r.decimal.as_deref().unwrap_or("")
                        );
                    }
                    s
                }
                Format::Table => {
                    let mut s = String::new();
                    for r in &rows {
                        let _ = writeln!(
                            s,
                            "d={} F/2={} ratio={} ({})",
                            r.d,
                            r.half_count,
                            r.ratio.as_deref().unwrap_or("-"),
                            r.decimal.as_deref().unwrap_or("-")
                        );
                    }
                    s
                }
            }
        }
    };
    Ok((out, 0))
}

fn enumerate(what: EnumerateWhat, d: usize, format: Format) -> Result<String, CliError> {
    Ok(match what {
        EnumerateWhat::Couples => {
            let cs = enumerate_couples(d);
            match format {
                Format::Json => json(&cs)?,
                Format::Csv => couple_lines(&cs, "pattern,pos,neg\n", |c| {
                    format!("{},{},{}", c.pattern(), c.pair().pos, c.pair().neg)
                }),
                Format::Table => couple_lines(&cs, "", |c| c.to_string()),
            }
        }
        EnumerateWhat::Scps => {
            let ss = enumerate_scps(d);
            match format {
                Format::Json => json(&ss)?,
                Format::Csv => {
                    let mut s = String::from("scp,pattern\n");
                    for x in &ss {
                        let _ = writeln!(s, "{},{}", csv_field(&x.to_string()), x.sign_pattern());
                    }
                    s
                }
                Format::Table => ss.iter().map(|x| format!("{x}\n")).collect(),
            }
        }
        EnumerateWhat::Orbits => {
            let os = enumerate_orbits(d);
            match format {
                Format::Json => json(&os)?,
                Format::Csv => {
                    let mut s = String::from("pattern,pos,neg,size\n");
                    for o in &os {
                        let r = o.representative();
                        let _ = writeln!(s, "{},{},{},{}", r.pattern(), r.pair().pos, r.pair().neg, o.len());
                    }
                    s
                }
                Format::Table => os
                    .iter()
                    .map(|o| {
                        let ms: Vec<String> = o.members().iter().map(|c| c.to_string()).collect();
                        format!("{}\n", ms.join(" ~ "))
                    })
                    .collect(),
            }
        }
    })
}

fn couple_lines(cs: &[CompatibleCouple], header: &str, f: impl Fn(&CompatibleCouple) -> String) -> String {
    let mut s = header.to_string();
    for c in cs {
        s.push_str(&f(c));
        s.push('\n');
    }
    s
}

fn parse_target(kind: TargetKind, raw: &str) -> Result<RealizationTarget, CliError> {
    let t = match kind {
        TargetKind::Couple => RealizationTarget::Couple(serde_json::from_str::<CompatibleCouple>(raw).map_err(invalid)?),
        TargetKind::Scp => {
            #[derive(serde::Deserialize)]
            #[serde(untagged)]
            enum ScpIn {
                Bare(Scp),
                Wrapped { scp: Scp },
            }
            let scp = match serde_json::from_str::<ScpIn>(raw).map_err(invalid)? {
                ScpIn::Bare(s) | ScpIn::Wrapped { scp: s } => s,
            };
            RealizationTarget::Scp { scp }
        }
        TargetKind::Order => {
            #[derive(serde::Deserialize)]
            struct OrderIn {
                pattern: SignPattern,
                order: ModuliOrder,
            }
            let o: OrderIn = serde_json::from_str(raw).map_err(invalid)?;
            RealizationTarget::order_couple(o.pattern, o.order).map_err(invalid)?
        }
    };
    Ok(t)
}

fn realize_cmd(kind: TargetKind, a: &SearchArgs, seed: u64) -> Result<(String, i32), CliError> {
    let raw = match (&a.target, &a.target_file) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => std::fs::read_to_string(p)?,
        (None, None) => return Err(CliError::Invalid("give --target or --target-file".into())),
    };
    let target = parse_target(kind, &raw)?;
    let mut budget = SearchBudget::default_for(&target, seed).with_exponents(a.exp_lo, a.exp_hi);
    if let Some(n) = a.budget {
        if n == 0 {
            return Err(CliError::Invalid("budget must be at least 1".into()));
        }
        budget.max_iterations = n;
    }
    let outcome = realize(&target, &budget).map_err(invalid)?;
    let code = match outcome {
        SearchOutcome::Found { .. } => 0,
        SearchOutcome::Exhausted { .. } => 1,
    };
    Ok((json(&outcome)?, code))
}

fn parse_point(s: &str) -> Result<QuarticPoint, CliError> {
    let vals: Vec<Rational> = s
        .split(',')
        .map(|x| parse_rational(x.trim()).map_err(invalid))
        .collect::<Result<_, _>>()?;
    let [b3, b2, b1, b0]: [Rational; 4] = vals
        .try_into()
        .map_err(|_| CliError::Invalid("expected four coefficients b3,b2,b1,b0".into()))?;
    Ok(QuarticPoint::new(b3, b2, b1, b0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub d: usize,
    pub half_count: String,
    /// `(F_d/2) / (F_{d-1}/2)`, exact; absent for `d = 1`.
    pub ratio: Option<String>,
    pub decimal: Option<String>,
}

pub fn ratio_rows(max_degree: usize) -> Vec<RatioRow> {
    let halves: Vec<BigInt> = (1..=max_degree)
        .map(|d| BigInt::from(count_scps(d).total()) / BigInt::from(2))
        .collect();
    halves
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let ratio = (i > 0).then(|| Rational::new(h.clone(), halves[i - 1].clone()));
            RatioRow {
                d: i + 1,
                half_count: h.to_string(),
                decimal: ratio.as_ref().map(|r| format!("{:.4}", to_f64(r))),
                ratio: ratio.as_ref().map(format_rational),
            }
        })
        .collect()
}
