use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use padic_lf::config::{JobConfig, ALL_SUITES};
use padic_lf::emit::{dmatrix_table, factors_table, reducibility_latex, reducibility_table, TableKind};
use padic_lf::run_suite;
use padic_lf_core::cyclo::{rat, CycNum};
use padic_lf_core::dmatrix::DMethod;
use padic_lf_core::factors::{epsilon_factor, lfactor, meta_gamma, tate_gamma, theta, theta_tilde};
use padic_lf_core::plancherel::{plancherel_formula, plancherel_matrices};
use padic_lf_core::serialize::ratfun_to_json;
use padic_lf_core::{AddChar, FieldCtx, MultChar};

/// Exact local factors, coefficient matrices and Plancherel measures for
/// covers of SL2 over Q_p.
#[derive(Parser)]
#[command(name = "padic-lf", version, about)]
struct Cli {
    /// Output directory for JSON artifacts (default: env PADIC_LF_OUTDIR
    /// or the current directory)
    #[arg(long, global = true)]
    outdir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FactorKind {
    L,
    Epsilon,
    Gamma,
    GammaTilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixMethod {
    Closed,
    Integral,
    Theta,
}

impl From<MatrixMethod> for DMethod {
    fn from(m: MatrixMethod) -> DMethod {
        match m {
            MatrixMethod::Closed => DMethod::Closed,
            MatrixMethod::Integral => DMethod::Integral,
            MatrixMethod::Theta => DMethod::Theta,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Run identity suites and emit a machine-readable report
    Verify {
        #[arg(long, required = true)]
        suite: Vec<String>,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        conductor_bound: u32,
        #[arg(long, default_value_t = 10)]
        phi_count: u32,
        /// Write the JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include wall-clock timings (breaks byte determinism)
        #[arg(long)]
        timings: bool,
    },
    /// Print one local factor as JSON
    Factor {
        #[arg(long, value_enum)]
        kind: FactorKind,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Character spec: trivial | e=E,a=A,pi=VALUE with VALUE one of
        /// 1 | -1 | INT | N/D | zeta:K:J
        #[arg(long, default_value = "trivial")]
        chi: String,
        /// Additive character: unramified | twist:N/D
        #[arg(long, default_value = "unramified")]
        psi: String,
    },
    /// Print a functional-equation coefficient theta_m or theta~_m
    Theta {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "trivial")]
        chi: String,
        #[arg(long, default_value = "unramified")]
        psi: String,
        #[arg(long)]
        tilde: bool,
    },
    /// Print the d x d coefficient matrix
    Dmatrix {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "trivial")]
        chi: String,
        #[arg(long, value_enum, default_value_t = MatrixMethod::Closed)]
        method: MatrixMethod,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the inverse Plancherel measure
    Plancherel {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "trivial")]
        chi: String,
        #[arg(long, value_enum, default_value_t = PlMethod::Formula)]
        method: PlMethod,
    },
    /// Emit a table artifact
    Table {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        p: u64,
        /// For reducibility: sweep these n values
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value = "trivial")]
        chi: String,
        #[arg(long)]
        latex: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlMethod {
    Formula,
    Matrices,
}

fn parse_cyc(s: &str) -> Result<CycNum> {
    if let Some(rest) = s.strip_prefix("zeta:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            bail!("zeta value must be zeta:K:J");
        }
        return Ok(CycNum::root_of_unity(parts[0].parse()?, parts[1].parse()?));
    }
    if let Some((n, d)) = s.split_once('/') {
        return Ok(CycNum::from_rat(rat(n.parse()?, d.parse()?)));
    }
    Ok(CycNum::from_int(s.parse()?))
}

fn parse_chi(p: u64, s: &str) -> Result<MultChar> {
    if s == "trivial" {
        return Ok(MultChar::trivial(p));
    }
    let mut e = 0u32;
    let mut a = 0u64;
    let mut pi = CycNum::one();
    for part in s.split(',') {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("bad character component: {part}"))?;
        match key {
            "e" => e = val.parse()?,
            "a" => a = val.parse()?,
            "pi" => pi = parse_cyc(val)?,
            _ => bail!("unknown character key: {key}"),
        }
    }
    MultChar::new(p, e, a, pi).map_err(|e| anyhow!("{e}"))
}

fn parse_psi(ctx: &FieldCtx, s: &str) -> Result<AddChar> {
    let base = AddChar::unramified(ctx);
    if s == "unramified" {
        return Ok(base);
    }
    if let Some(rest) = s.strip_prefix("twist:") {
        let (n, d) = rest
            .split_once('/')
            .ok_or_else(|| anyhow!("twist must be twist:N/D"))?;
        let a = ctx
            .from_ratio(n.parse()?, d.parse()?)
            .map_err(|e| anyhow!("{e}"))?;
        return base.twisted(&a).map_err(|e| anyhow!("{e}"));
    }
    bail!("bad additive character spec: {s}")
}

fn write_or_print(outdir: &Option<PathBuf>, path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            let full = match (outdir, p.is_absolute()) {
                (Some(d), false) => d.join(p),
                _ => p.clone(),
            };
            if let Some(parent) = full.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)?;
                }
            }
            fs::write(&full, text).with_context(|| format!("writing {}", full.display()))?;
            eprintln!("wrote {}", full.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let outdir = cli
        .outdir
        .clone()
        .or_else(|| std::env::var_os("PADIC_LF_OUTDIR").map(PathBuf::from));
    match cli.cmd {
        Cmd::Verify {
            suite,
            p,
            n,
            seed,
            conductor_bound,
            phi_count,
            json,
            timings,
        } => {
            let suites = if suite.len() == 1 && suite[0] == "all" {
                ALL_SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                suite
            };
            let mut config = JobConfig::new(p, n, suites, seed);
            config.conductor_bound = conductor_bound;
            config.phi_count = phi_count;
            config.timings = timings;
            let report = run_suite(&config).map_err(|e| anyhow!("{e}"))?;
            for r in &report.records {
                if !r.pass {
                    eprintln!("FAIL {}", r.id);
                }
            }
            eprintln!(
                "{}/{} identities passed",
                report.total - report.failures,
                report.total
            );
            write_or_print(&outdir, &json, &report.to_json_string())?;
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Factor { kind, p, n, chi, psi } => {
            let ctx = FieldCtx::new(p, n).map_err(|e| anyhow!("{e}"))?;
            let chi = parse_chi(p, &chi)?;
            let psi = parse_psi(&ctx, &psi)?;
            let f = match kind {
                FactorKind::L => lfactor(p, &chi),
                FactorKind::Epsilon => epsilon_factor(&ctx, &chi, &psi).map_err(|e| anyhow!("{e}"))?,
                FactorKind::Gamma => tate_gamma(&ctx, &chi, &psi).map_err(|e| anyhow!("{e}"))?,
                FactorKind::GammaTilde => meta_gamma(&ctx, &chi, &psi).map_err(|e| anyhow!("{e}"))?,
            };
            println!("{}", serde_json::to_string_pretty(&ratfun_to_json(&f))?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Theta { m, p, n, chi, psi, tilde } => {
            let ctx = FieldCtx::new(p, n).map_err(|e| anyhow!("{e}"))?;
            let chi = parse_chi(p, &chi)?;
            let psi = parse_psi(&ctx, &psi)?;
            let f = if tilde {
                theta_tilde(&ctx, m, &chi, &psi, n).map_err(|e| anyhow!("{e}"))?
            } else {
                theta(&ctx, m, &chi, &psi, n).map_err(|e| anyhow!("{e}"))?
            };
            println!("{}", serde_json::to_string_pretty(&ratfun_to_json(&f))?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dmatrix { p, n, chi, method, json } => {
            let ctx = FieldCtx::new(p, n).map_err(|e| anyhow!("{e}"))?;
            let chi = parse_chi(p, &chi)?;
            let table = dmatrix_table(&ctx, &chi, method.into()).map_err(|e| anyhow!("{e}"))?;
            write_or_print(&outdir, &json, &serde_json::to_string_pretty(&table)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Plancherel { p, n, chi, method } => {
            let ctx = FieldCtx::new(p, n).map_err(|e| anyhow!("{e}"))?;
            let chi = parse_chi(p, &chi)?;
            let psi = AddChar::unramified(&ctx);
            let f = match method {
                PlMethod::Formula => plancherel_formula(&ctx, &chi, &psi).map_err(|e| anyhow!("{e}"))?,
                PlMethod::Matrices => {
                    let nctx = padic_lf_core::dmatrix::canonical_ctx(&ctx, &psi)
                        .map_err(|e| anyhow!("{e}"))?;
                    plancherel_matrices(&nctx, &chi, &psi, DMethod::Closed)
                        .map_err(|e| anyhow!("{e}"))?
                        .mu_inv
                }
            };
            println!("{}", serde_json::to_string_pretty(&ratfun_to_json(&f))?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Table {
            kind,
            p,
            n_list,
            n,
            chi,
            latex,
            json,
        } => {
            let kind = TableKind::parse(&kind).ok_or_else(|| anyhow!("unknown table kind"))?;
            let config = JobConfig::new(p, n.max(1), vec![], 0);
            match kind {
                TableKind::Reducibility => {
                    let list = if n_list.is_empty() { vec![1] } else { n_list };
                    if latex {
                        let tex = reducibility_latex(p, &list, &config).map_err(|e| anyhow!("{e}"))?;
                        write_or_print(&outdir, &json, &tex)?;
                    } else {
                        let t = reducibility_table(p, &list, &config).map_err(|e| anyhow!("{e}"))?;
                        write_or_print(&outdir, &json, &serde_json::to_string_pretty(&t)?)?;
                    }
                }
                TableKind::Dmatrix => {
                    let ctx = FieldCtx::new(p, n).map_err(|e| anyhow!("{e}"))?;
                    let chi = parse_chi(p, &chi)?;
                    let t = dmatrix_table(&ctx, &chi, DMethod::Closed).map_err(|e| anyhow!("{e}"))?;
                    write_or_print(&outdir, &json, &serde_json::to_string_pretty(&t)?)?;
                }
                TableKind::Factors => {
                    let t = factors_table(&config).map_err(|e| anyhow!("{e}"))?;
                    write_or_print(&outdir, &json, &serde_json::to_string_pretty(&t)?)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
