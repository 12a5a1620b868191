//! The `diffpi` command line: algebra files, shipped generators, reports and
//! the acceptance battery.

mod file;
mod generate;
mod poly_parse;
mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use file::AlgebraFile;
pub use generate::{checksum, generate, recognize, GENERATORS};
pub use poly_parse::parse_polynomial;
pub use report::Report;

use crate::algebra::{lie_closure, LieAction};
use crate::battery::{one_based, run_criterion, suite, SUITES};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::exponent::{classify_growth, exp_differential, exp_ordinary, verify_gk};
use crate::linalg::Scalar;
use crate::pi::{codim, is_identity, RankMode};
use crate::structure::{radical, wedderburn_malcev};

pub const CONFIG_ENV: &str = "DIFFPI_CONFIG";

#[derive(Parser, Debug)]
#[command(
    name = "diffpi",
    version,
    about = "Differential identities, codimensions and PI-exponents of finite-dimensional algebras"
)]
struct Cli {
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Modular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a shipped algebra: ut2, ut2-eps, ut2-eta A B, utn N, matn N,
    /// grassmann-k K, dsum X [..] + Y [..].
    Gen {
        #[arg(short, long)]
        output: Option<PathBuf>,
        name: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Jacobson radical.
    Radical { file: PathBuf },
    /// Wedderburn-Malcev blocks and radical.
    Decompose { file: PathBuf },
    /// Envelope of the action (all file derivations when --action is omitted).
    Envelope {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        action: Vec<String>,
    },
    /// Codimension table for n = 1..max-n.
    Codim {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Modular)]
        mode: Mode,
        #[arg(long, value_delimiter = ',')]
        action: Vec<String>,
    },
    /// PI-exponent with a witness block sequence.
    Exponent {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        action: Vec<String>,
    },
    /// Polynomial or exponential growth, with exclusion evidence.
    Classify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        action: Vec<String>,
    },
    /// Compare the differential and ordinary exponents.
    VerifyGk {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        action: Vec<String>,
    },
    /// Evaluate a polynomial from a file on all basis tuples.
    CheckIdentity {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        action: Vec<String>,
        #[arg(long)]
        poly: PathBuf,
    },
    /// Run acceptance criteria.
    Battery {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// 0 success, 1 failed check, 2 bad input, 3 budget exceeded.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeCap { .. } | Error::WordCapExceeded { .. } => 3,
        Error::Parse { .. }
        | Error::NotAssociative { .. }
        | Error::NotAUnit { .. }
        | Error::NotADerivation { .. }
        | Error::NonSplitCenter { .. }
        | Error::NotMultilinear(_)
        | Error::AlphabetMismatch { .. }
        | Error::AmbientMismatch { .. }
        | Error::BadParams(_) => 2,
        Error::PrimeDisagreement { .. } | Error::PrimeSearchExhausted { .. } | Error::InternalVerificationFailed(_) => {
            1
        }
    }
}

fn load_config() -> Result<EngineConfig> {
    match std::env::var_os(CONFIG_ENV) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::parse(Path::new(&path).display().to_string(), e.to_string()))?;
            EngineConfig::from_toml(&text)
        }
        None => Ok(EngineConfig::default()),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn load(path: &Path) -> Result<AlgebraFile> {
    AlgebraFile::parse(&read(path)?).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

fn action_for(f: &AlgebraFile, names: &[String]) -> Result<LieAction> {
    let gens = names
        .iter()
        .map(|n| f.derivation(n).cloned())
        .collect::<Result<Vec<_>>>()?;
    lie_closure(&f.algebra, gens)
}

fn vector(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn action_label(names: &[String]) -> String {
    if names.is_empty() {
        "trivial".into()
    } else {
        names.join(",")
    }
}

/// Known closed forms for shipped generators, keyed by generator name,
/// parameters and the selected action.
/// A closed form and its value at `n`, when stated there.
type Formula = (&'static str, fn(usize) -> Option<i64>);

fn known_formula(f: &AlgebraFile, action: &[String]) -> Option<Formula> {
    let (name, params) = recognize(f)?;
    let ut2_formula: fn(usize) -> Option<i64> = |n| Some((1i64 << (n - 1)) * (n as i64 - 2) + 2);
    let minus: fn(usize) -> Option<i64> = |n| (n >= 2).then(|| (1i64 << (n - 1)) * n as i64 - 1);
    let plus: fn(usize) -> Option<i64> = |n| (n >= 2).then(|| (1i64 << (n - 1)) * n as i64 + 1);
    let eta_alpha_zero = || {
        params
            .first()
            .and_then(|a| crate::linalg::parse_scalar(a))
            .map(|a| a == Scalar::from_integer(0.into()))
    };
    match (name.as_str(), action) {
        ("ut2", []) | ("ut2-eps", []) | ("ut2-eta", []) => Some(("2^(n-1)(n-2)+2", ut2_formula)),
        ("ut2-eps", [a]) | ("ut2", [a]) if a == "eps" => Some(("2^(n-1)n-1 (stated for UT2^eps)", minus)),
        ("ut2-eta", [a]) if a == "eta" => match eta_alpha_zero() {
            Some(true) => Some(("2^(n-1)n+1 (stated for UT2^eta)", plus)),
            Some(false) => Some(("2^(n-1)n-1 (UT2^eta generates the variety of UT2^eps)", minus)),
            None => None,
        },
        _ => None,
    }
}

fn execute(cli: &Cli, command_line: &str, cfg: &EngineConfig) -> Result<(String, i32)> {
    let mut report = Report::new(command_line, cfg);
    let mut code = 0;
    match &cli.command {
        Command::Gen { output, name, params } => {
            let text = generate(name, params)?.serialize();
            return match output {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
                    report
                        .result("written", path.display())
                        .result("sha256", checksum(&text));
                    Ok((report.render(), 0))
                }
                None => Ok((text, 0)),
            };
        }
        Command::Radical { file } => {
            let f = load(file)?;
            let j = radical(&f.algebra)?;
            report
                .result("algebra", &f.name)
                .result("dim", f.algebra.dim())
                .result("radical_dim", j.dim());
            for (i, b) in j.basis().iter().enumerate() {
                report.result(format!("radical_basis_{}", i + 1), vector(b));
            }
        }
        Command::Decompose { file } => {
            let f = load(file)?;
            let wd = wedderburn_malcev(&f.algebra)?;
            let dims: Vec<usize> = wd.blocks.iter().map(|b| b.dim()).collect();
            report
                .result("algebra", &f.name)
                .result("dim", f.algebra.dim())
                .result("radical_dim", wd.radical.dim())
                .result("block_dims", format!("{dims:?}"));
            for (i, (b, u)) in wd.blocks.iter().zip(&wd.block_units).enumerate() {
                report.result(format!("block_{}_unit", i + 1), vector(u));
                for (k, v) in b.basis().iter().enumerate() {
                    report.result(format!("block_{}_basis_{}", i + 1, k + 1), vector(v));
                }
            }
            for (i, b) in wd.radical.basis().iter().enumerate() {
                report.result(format!("radical_basis_{}", i + 1), vector(b));
            }
        }
        Command::Envelope { file, action } => {
            let f = load(file)?;
            let names: Vec<String> = if action.is_empty() {
                f.derivations.iter().map(|d| d.name.clone()).collect()
            } else {
                action.clone()
            };
            let act = action_for(&f, &names)?;
            let env = act.envelope();
            let letters = act.closure_names();
            report
                .result("algebra", &f.name)
                .result("action", action_label(&names))
                .result("lie_closure_dim", act.closure_dim())
                .result("lie_closure_basis", format!("[{}]", letters.join("; ")))
                .result("solvable", act.is_solvable())
                .result("envelope_dim", env.dim())
                .result("stable_length", env.stable_length());
            let words: Vec<String> = env
                .word_reps()
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "id".to_string()
                    } else {
                        w.iter().map(|&l| letters[l].as_str()).collect::<Vec<_>>().join("*")
                    }
                })
                .collect();
            report.result("envelope_basis_words", format!("[{}]", words.join(", ")));
        }
        Command::Codim {
            file,
            max_n,
            mode,
            action,
        } => {
            let f = load(file)?;
            let act = action_for(&f, action)?;
            let rank_mode = match mode {
                Mode::Exact => RankMode::Exact,
                Mode::Modular => RankMode::Modular,
            };
            report
                .result("algebra", &f.name)
                .result("action", action_label(action))
                .result("kind", if action.is_empty() { "ordinary" } else { "differential" })
                .result("mode", format!("{mode:?}").to_lowercase())
                .result("envelope_dim", act.envelope().dim());
            let formula = known_formula(&f, action);
            for n in 1..=*max_n {
                let c = codim(&f.algebra, &act, n, rank_mode, cfg)?;
                report.result(format!("c_{n}"), c);
                if let Some((text, eval)) = formula {
                    match eval(n) {
                        Some(v) => {
                            let verdict = if v == c as i64 { "matches" } else { "differs" };
                            report.note(format!("n={n}: formula {text} gives {v}; computed {c} {verdict}"));
                        }
                        None => {
                            report.note(format!("n={n}: formula {text} is not stated here; computed {c}"));
                        }
                    }
                }
            }
            if formula.is_none() {
                report.note("no shipped formula applies to this input");
            }
        }
        Command::Exponent { file, action } => {
            let f = load(file)?;
            report.result("algebra", &f.name).result("action", action_label(action));
            let r = if action.is_empty() {
                exp_ordinary(&f.algebra)?
            } else {
                exp_differential(&f.algebra, &action_for(&f, action)?)?
            };
            report
                .result("kind", if action.is_empty() { "ordinary" } else { "differential" })
                .result("exponent", r.value)
                .result("witness_blocks", format!("{:?}", one_based(&r.witness_sequence)))
                .result("witness_dims", format!("{:?}", r.witness_dims))
                .result("sequences_visited", r.visited_count)
                .result("prefixes_pruned", r.pruned_count);
        }
        Command::Classify { file, action } => {
            let f = load(file)?;
            let act = action_for(&f, action)?;
            let r = classify_growth(&f.algebra, &act, cfg)?;
            report
                .result("algebra", &f.name)
                .result("action", action_label(action))
                .result("growth", r.growth)
                .result("differential_exponent", r.exponent.value)
                .result("solvable_closure", r.solvable);
            let names: Vec<String> = act.generators().iter().map(|d| d.name.clone()).collect();
            for e in &r.evidence {
                let text = match &e.certificate {
                    Some((n, c)) => format!("excluded at n={n} by identity {}", c.display(Some(&names))),
                    None => match e.budget_stop {
                        Some(n) => format!("not excluded; budget reached at n={n}"),
                        None => format!(
                            "not excluded up to n={}",
                            e.degrees_checked.last().copied().unwrap_or(0)
                        ),
                    },
                };
                report.result(format!("evidence[{}]", e.target), text);
            }
            if let Some(agrees) = r.evidence_agrees() {
                report.result("evidence_agrees", agrees);
            }
            report.note("exclusion results are degree-capped evidence, not proofs of variety membership");
        }
        Command::VerifyGk { file, action } => {
            let f = load(file)?;
            let g = verify_gk(&f.algebra, &action_for(&f, action)?)?;
            report
                .result("algebra", &f.name)
                .result("action", action_label(action))
                .result("exp", g.ordinary.value)
                .result("exp_L", g.differential.value)
                .result("verdict", if g.holds() { "PASS" } else { "FAIL" });
            if !g.holds() {
                code = 1;
            }
        }
        Command::CheckIdentity { file, action, poly } => {
            let f = load(file)?;
            let act = action_for(&f, action)?;
            let text = read(poly)?;
            let names: Vec<String> = act.generators().iter().map(|d| d.name.clone()).collect();
            let parsed = parse_polynomial(text.trim(), &names).map_err(|e| match e {
                Error::Parse { location, message } => Error::Parse {
                    location: format!("{}: {location}", poly.display()),
                    message,
                },
                other => other,
            })?;
            let images: Vec<Vec<Scalar>> = (0..names.len()).map(|g| act.generator_in_closure(g).to_vec()).collect();
            let check = is_identity(&parsed.map_letters(&images), &f.algebra, &act, cfg.word_cap)?;
            report
                .result("algebra", &f.name)
                .result("action", action_label(action))
                .result("polynomial", parsed.display(Some(&names)))
                .result("identity", check.holds);
            if let Some(w) = check.witness {
                let tuple: Vec<String> = w.iter().map(|b| format!("e{}", b + 1)).collect();
                report.result("witness", format!("({})", tuple.join(", ")));
            }
        }
        Command::Battery { suite: name } => {
            let ids = suite(name).ok_or_else(|| {
                let known: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
                Error::BadParams(format!("unknown suite `{name}` (known: {})", known.join(", ")))
            })?;
            report.result("suite", name);
            for &id in ids {
                let r = run_criterion(id, cfg);
                report.result(
                    format!("criterion_{id}"),
                    format!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.title),
                );
                for d in &r.details {
                    report.note(format!("[{id}] {d}"));
                }
                if !r.passed {
                    code = 1;
                }
            }
        }
    }
    Ok((report.render(), code))
}

/// Runs one invocation with the given arguments (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let command_line = std::iter::once("diffpi".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect::<Vec<_>>()
        .join(" ");
    let start = Instant::now();
    let result = load_config().and_then(|cfg| {
        execute(&cli, &command_line, &cfg).map(|(mut out, code)| {
            if cli.timing && !out.is_empty() && !matches!(cli.command, Command::Gen { output: None, .. }) {
                out.push_str(&format!("wall_clock_ms: {}\n", start.elapsed().as_millis()));
            }
            (out, code)
        })
    });
    match result {
        Ok((stdout, code)) => Outcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}
