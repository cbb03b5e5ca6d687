//! Argument parsing and subcommand dispatch for `hlocus`.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use super::figure::fig1;
use super::record::{compute_record, RunCache};
use super::verify::{run_suites, summary_table, Suite, LOCUS_TOL};
use super::{exit_code, OutputFormat, ToolConfig, EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED};
use crate::characters::{character_hooks, character_legs, character_theorem4, weights_from_character};
use crate::exact_poly::wronskian_for_partition;
use crate::locus::{negation_asymmetry, pole_structure, roots_from_csv, NumericsConfig};
use crate::moser::{hessian_spectrum_check, invert_wronskian_map, moser_spectrum_check, perelomov_residual};
use crate::wilson::{charpoly_constant, verify_relations, WilsonData};
use crate::{Error, Partition, Result};

#[derive(Debug, Parser)]
#[command(
    name = "hlocus",
    version,
    about = "Hermite Wronskians, Calogero–Moser equilibria and their spectra"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Root acceptance tolerance, relative to the Horner scale.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 200)]
    pub max_iter: usize,
    /// Decimal digits targeted by the double-double root polish (at most 32).
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: u32,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// JSONL file of run records, read and appended.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

impl GlobalArgs {
    pub fn tool_config(&self) -> ToolConfig {
        let jobs = self
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        ToolConfig {
            numerics: NumericsConfig {
                root_tol: self.tol,
                max_iter: self.max_iter,
                digits: self.digits,
                ..NumericsConfig::default()
            },
            format: self.format.unwrap_or_default(),
            cache: self.cache.clone(),
            jobs,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Hermite Wronskian W_λ.
    Wronskian {
        partition: String,
        /// Divide by the leading coefficient.
        #[arg(long)]
        monic: bool,
    },
    /// Roots of W_λ with multiplicities.
    Roots {
        partition: String,
        /// Use the doubled partition (each part repeated).
        #[arg(long)]
        double: bool,
    },
    /// Locus conditions and z -> -z symmetry of the roots.
    LocusCheck {
        partition: String,
        #[arg(long)]
        double: bool,
    },
    /// Recover λ from a CSV of roots (re,im[,multiplicity]; `-` reads stdin).
    Invert { file: PathBuf },
    /// Character of the tangent space in its three forms.
    Character { partition: String },
    /// Spectra of Moser's matrix and of the Hessian at the poles.
    Spectrum {
        partition: String,
        #[arg(long)]
        double: bool,
    },
    /// Exact Calogero–Moser relations for the fixed point of λ.
    WilsonVerify { partition: String },
    /// Run verification suites over all partitions up to a size.
    Verify {
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Suites to run; all when omitted.
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
    },
    /// Plot the zeros of W_λ.
    Fig1 {
        partition: String,
        #[arg(long)]
        double: bool,
        /// Write PREFIX.svg and PREFIX.csv instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn with_status(stdout: String, passed: bool) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: if passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let tool = cli.global.tool_config();
    let result = tool.validate().and_then(|_| dispatch(&cli.command, &cli.global, &tool));
    match result {
        Ok(o) => o,
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}

fn parse_partition(text: &str, double: bool) -> Result<Partition> {
    let p: Partition = text.parse()?;
    Ok(if double { p.doubled() } else { p })
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn unsupported(format: OutputFormat, what: &str) -> Error {
    Error::InvalidConfig(format!("--format {format:?} is not available for {what}").to_lowercase())
}

fn dispatch(cmd: &Command, global: &GlobalArgs, tool: &ToolConfig) -> Result<Outcome> {
    let cfg = &tool.numerics;
    let format = global.format.unwrap_or_default();
    match cmd {
        Command::Wronskian { partition, monic } => {
            let lambda = parse_partition(partition, false)?;
            let mut w = wronskian_for_partition(&lambda);
            if *monic {
                w = w.monic();
            }
            match format {
                OutputFormat::Json => Ok(Outcome::ok(pretty(&json!({
                    "partition": lambda,
                    "monic": monic,
                    "degree": w.degree(),
                    "coefficients": w.to_strings(),
                    "display": w.to_string(),
                })))),
                OutputFormat::Csv => {
                    let mut s = String::from("power,coefficient\n");
                    for (k, c) in w.to_strings().iter().enumerate() {
                        let _ = writeln!(s, "{k},{c}");
                    }
                    Ok(Outcome::ok(s))
                }
                OutputFormat::Svg => Err(unsupported(format, "wronskian")),
            }
        }
        Command::Roots { partition, double } => {
            let conf = pole_structure(&parse_partition(partition, *double)?, cfg)?;
            match format {
                OutputFormat::Json => Ok(Outcome::ok(conf.to_json() + "\n")),
                OutputFormat::Csv => Ok(Outcome::ok(conf.to_csv())),
                OutputFormat::Svg => Err(unsupported(format, "roots (use fig1)")),
            }
        }
        Command::LocusCheck { partition, double } => {
            let conf = pole_structure(&parse_partition(partition, *double)?, cfg)?;
            let asym = negation_asymmetry(&conf.expanded_roots());
            let perelomov = if conf.is_simple() {
                Some(perelomov_residual(&conf.roots)?)
            } else {
                None
            };
            let passed = asym <= 1e-10 && conf.locus_residual.is_none_or(|r| r <= LOCUS_TOL);
            let noncentral: Vec<_> = conf
                .noncentral_multiple_roots(cfg.cluster_tol)
                .iter()
                .map(|(z, nu)| json!({"re": z.re, "im": z.im, "multiplicity": nu}))
                .collect();
            let v = json!({
                "partition": conf.partition,
                "degree": conf.degree(),
                "simple": conf.is_simple(),
                "pole_orders": conf.pole_orders(),
                "locus_residual": conf.locus_residual,
                "perelomov_residual": perelomov,
                "negation_asymmetry": asym,
                "noncentral_multiple_roots": noncentral,
                "passed": passed,
            });
            match format {
                OutputFormat::Json => Ok(Outcome::with_status(pretty(&v), passed)),
                OutputFormat::Csv => {
                    let s = format!(
                        "partition,degree,locus_residual,negation_asymmetry,passed\n\"{}\",{},{},{:e},{}\n",
                        conf.partition,
                        conf.degree(),
                        conf.locus_residual.map_or(String::new(), |r| format!("{r:e}")),
                        asym,
                        passed
                    );
                    Ok(Outcome::with_status(s, passed))
                }
                OutputFormat::Svg => Err(unsupported(format, "locus-check")),
            }
        }
        Command::Invert { file } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
                s
            } else {
                std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?
            };
            let entries = roots_from_csv(&text)?;
            if entries.iter().any(|&(_, nu)| nu > 1) {
                return Err(Error::SimplicityGateFailed);
            }
            let roots: Vec<_> = entries.iter().map(|&(z, _)| z).collect();
            let (lambda, report) = invert_wronskian_map(&roots, cfg)?;
            match format {
                OutputFormat::Json => Ok(Outcome::ok(report.to_json() + "\n")),
                OutputFormat::Csv => Ok(Outcome::ok(format!(
                    "partition,residual\n\"{lambda}\",{:e}\n",
                    report.residual
                ))),
                OutputFormat::Svg => Err(unsupported(format, "invert")),
            }
        }
        Command::Character { partition } => {
            let lambda = parse_partition(partition, false)?;
            let chi = character_theorem4(&lambda);
            let legs = character_legs(&lambda);
            let hooks = character_hooks(&lambda);
            let identical = chi == legs && chi == hooks;
            let weights = weights_from_character(&chi).map(|w| w.to_sorted_vec()).ok();
            match format {
                OutputFormat::Json => Ok(Outcome::with_status(
                    pretty(&json!({
                        "partition": lambda,
                        "character": chi,
                        "display": chi.to_string(),
                        "legs": legs,
                        "hooks": hooks,
                        "identical": identical,
                        "weights": weights,
                    })),
                    identical,
                )),
                OutputFormat::Csv => {
                    let mut s = String::from("exponent,coefficient\n");
                    for (e, c) in chi.terms() {
                        let _ = writeln!(s, "{e},{c}");
                    }
                    Ok(Outcome::with_status(s, identical))
                }
                OutputFormat::Svg => Err(unsupported(format, "character")),
            }
        }
        Command::Spectrum { partition, double } => {
            let lambda = parse_partition(partition, *double)?;
            let m = moser_spectrum_check(&lambda, cfg)?;
            let k = hessian_spectrum_check(&lambda, cfg)?;
            if let Some(path) = &tool.cache {
                RunCache::new(path).append(&[compute_record(&lambda, cfg)?])?;
            }
            match format {
                OutputFormat::Json => Ok(Outcome::ok(pretty(
                    &json!({"partition": lambda, "moser": m, "hessian": k}),
                ))),
                OutputFormat::Csv => {
                    let mut s = String::from("matrix,re,im,rounded\n");
                    for (name, rep) in [("M", &m), ("K", &k)] {
                        for (z, r) in rep.raw.iter().zip(&rep.rounded) {
                            let _ = writeln!(s, "{name},{:?},{:?},{r}", z.re, z.im);
                        }
                    }
                    Ok(Outcome::ok(s))
                }
                OutputFormat::Svg => Err(unsupported(format, "spectrum")),
            }
        }
        Command::WilsonVerify { partition } => {
            let lambda = parse_partition(partition, false)?;
            let data = WilsonData::new(&lambda)?;
            let rel = verify_relations(&data);
            let constant = charpoly_constant(&lambda)?;
            let passed = rel.all_pass() && constant.is_some();
            match format {
                OutputFormat::Json => Ok(Outcome::with_status(
                    pretty(&json!({
                        "partition": lambda,
                        "relations": rel,
                        "charpoly_matches_wronskian": constant.is_some(),
                        "charpoly_constant": constant.map(|c| format!("{}/{}", c.numer(), c.denom())),
                        "data": data,
                    })),
                    passed,
                )),
                OutputFormat::Csv => {
                    let s = format!(
                        "relation,holds\nwilson,{}\nI,{}\nII,{}\nIII,{}\nIV,{}\nMX,{}\nMZ,{}\ncharpoly,{}\n",
                        rel.wilson,
                        rel.rel_i,
                        rel.rel_ii,
                        rel.rel_iii,
                        rel.rel_iv,
                        rel.m_x,
                        rel.m_z,
                        constant.is_some()
                    );
                    Ok(Outcome::with_status(s, passed))
                }
                OutputFormat::Svg => Err(unsupported(format, "wilson-verify")),
            }
        }
        Command::Verify { max_size, suites } => {
            if *max_size == 0 {
                return Err(Error::InvalidConfig("max-size must be at least 1".into()));
            }
            let results = run_suites(suites, *max_size, tool)?;
            let passed = results.iter().all(|r| r.ok());
            let out = match global.format {
                None => summary_table(&results),
                Some(OutputFormat::Json) => pretty(&serde_json::to_value(&results).expect("plain data serializes")),
                Some(OutputFormat::Csv) => {
                    let mut s = String::from("suite,max_size,checked,passed,failed\n");
                    for r in &results {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{}",
                            r.suite.name(),
                            r.max_size,
                            r.checked,
                            r.passed,
                            r.failures.len()
                        );
                    }
                    s
                }
                Some(f @ OutputFormat::Svg) => return Err(unsupported(f, "verify")),
            };
            Ok(Outcome::with_status(out, passed))
        }
        Command::Fig1 { partition, double, out } => {
            let lambda = parse_partition(partition, false)?;
            let rep = fig1(&lambda, *double, cfg)?;
            let summary = pretty(&serde_json::to_value(&rep).expect("plain data serializes"));
            let stdout = match (out, format) {
                (Some(prefix), _) => {
                    let write = |ext: &str, body: &str| {
                        let path = prefix.with_extension(ext);
                        std::fs::write(&path, body)
                            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
                    };
                    write("svg", &rep.svg)?;
                    write("csv", &rep.csv)?;
                    summary
                }
                (None, OutputFormat::Svg) => rep.svg.clone(),
                (None, OutputFormat::Csv) => rep.csv.clone(),
                (None, OutputFormat::Json) => summary,
            };
            let mut o = Outcome::with_status(stdout, rep.passed);
            if !rep.passed {
                o.stderr = format!("real root found for doubled partition {}\n", rep.partition);
            }
            Ok(o)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            }
        }
    }
}
