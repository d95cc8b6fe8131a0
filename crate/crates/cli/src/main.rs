//! `dedekind`: compute Apostol–Bernoulli / Frobenius–Euler polynomials and
//! Dedekind-type sums exactly, and run identity verification campaigns.
//!
//! Exit codes: 0 success, 1 identity failure, 2 usage or grid error,
//! 3 parameter collision, 4 bad sequence input.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use dedekind_core::appell::{apostol_bernoulli, frobenius_euler};
use dedekind_core::dedekind::{e_sum, ramanujan_sum, v_sum, ESumParams};
use dedekind_core::spectra::{dft_inverse, family, interp_poly, lagrange_oracle, Family, PeriodicSeq, SequenceFile};
use dedekind_core::verify::{run_grid, GridSpec, Identity};
use dedekind_core::{zeta_pow, CycloNum, Error, QPoly, Rational, Scalar};

use output::{emit_report, emit_value, Format};

/// Environment variable naming the default directory for `verify` reports.
const OUT_DIR_ENV: &str = "DEDEKIND_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "dedekind", version, about = "Exact Apostol-Bernoulli polynomials, Dedekind-type sums and identity checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for grid campaigns (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for random-sequence generation; overrides the grid's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apostol–Bernoulli polynomial B_m(q, λ).
    Poly {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<Rational>,
        /// Classical Bernoulli polynomial (λ = 1).
        #[arg(long)]
        classical: bool,
    },
    /// Generalized Frobenius–Euler polynomial H_m^(p)(q, λ, γ).
    Hpoly {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Rational,
        /// `a/b` for a rational γ, or `zeta:n:k` for ζ_n^k.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
    },
    /// Dedekind-type sum E_{m,n}^{r,p}(q, λ; C).
    Esum {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Rational,
        /// Family shorthand (`delta`, `ramanujan`, `fourier-dedekind:a=3`, ...) or a sequence JSON file.
        #[arg(long)]
        seq: String,
        /// Evaluate at q = q0 instead of printing the polynomial.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<Rational>,
    },
    /// Power sum V_n^(k)(λ) over the totatives of n.
    Vsum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Rational,
    },
    /// Ramanujan sum c_n(k).
    Ramanujan {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Interpolation polynomial C^(r)(q) of a sequence.
    Interp {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Use explicit Lagrange interpolation instead of the spectrum.
        #[arg(long)]
        lagrange: bool,
    },
    /// Run a verification campaign.
    Verify {
        #[arg(long)]
        identity: Identity,
        /// Grid JSON file; defaults to the built-in acceptance grid.
        #[arg(long)]
        grid: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ParameterCollision { .. } => 3,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

fn seq_error(e: impl std::fmt::Display) -> Failure {
    Failure::new(4, format!("sequence: {e}"))
}

/// Resolves a family shorthand or a sequence file.
fn resolve_seq(spec: &str, n: Option<u32>) -> Result<(PeriodicSeq, String), Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(seq_error)?;
        let seq = SequenceFile::parse(&text).map_err(seq_error)?;
        if let Some(n) = n.filter(|&n| n != seq.n()) {
            return Err(seq_error(format!("file has period {}, --n is {n}", seq.n())));
        }
        return Ok((seq, spec.to_string()));
    }
    let fam: Family = spec
        .parse()
        .map_err(|e| seq_error(format!("{spec:?} is neither a readable file nor a family ({e})")))?;
    let n = n.ok_or_else(|| Failure::new(2, "--n is required with a family shorthand"))?;
    let seq = family(&fam, n).map_err(seq_error)?;
    Ok((seq, fam.to_string()))
}

fn parse_gamma(s: &str) -> Result<CycloNum, Failure> {
    if let Some(rest) = s.strip_prefix("zeta:") {
        let bad = || Failure::new(2, format!("bad gamma {s:?}, expected zeta:n:k"));
        let (n, k) = rest.split_once(':').ok_or_else(bad)?;
        let n: u32 = n.parse().map_err(|_| bad())?;
        let k: i64 = k.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        return Ok(zeta_pow(n, k));
    }
    Ok(CycloNum::from_rational(&s.parse::<Rational>()?))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let fmt = cli.format;
    let out = cli.out.as_deref();
    match cli.cmd {
        Command::Poly { m, lambda, classical } => {
            let lambda = match (classical, lambda) {
                (true, Some(l)) if !l.is_one() => {
                    return Err(Failure::new(2, "--classical conflicts with a lambda other than 1"))
                }
                (true, _) => Rational::one(),
                (false, Some(l)) => l,
                (false, None) => return Err(Failure::new(2, "--lambda is required unless --classical is given")),
            };
            let poly = apostol_bernoulli(m, &lambda);
            emit_value(fmt, out, json!({"command": "poly", "m": m, "lambda": lambda.to_string()}), &poly)?;
        }
        Command::Hpoly { m, p, lambda, gamma } => {
            let g = parse_gamma(&gamma)?;
            let poly = frobenius_euler(m, p, &CycloNum::from_rational(&lambda), &g)?;
            let params = json!({"command": "hpoly", "m": m, "p": p, "lambda": lambda.to_string(), "gamma": gamma});
            emit_value(fmt, out, params, &poly)?;
        }
        Command::Esum { m, n, r, p, lambda, seq, at } => {
            let (c, label) = resolve_seq(&seq, n)?;
            let poly = e_sum(&ESumParams { m, r, p, lambda: CycloNum::from_rational(&lambda), seq: &c })?;
            let mut params = json!({"command": "esum", "m": m, "n": c.n(), "r": r, "p": p,
                                    "lambda": lambda.to_string(), "seq": label});
            match at {
                Some(q0) => {
                    params["at"] = json!(q0.to_string());
                    let v = poly.eval(&CycloNum::from_rational(&q0));
                    emit_value(fmt, out, params, &QPoly::constant(v))?;
                }
                None => emit_value(fmt, out, params, &poly)?,
            }
        }
        Command::Vsum { n, k, lambda } => {
            if n < 1 {
                return Err(Failure::new(2, "--n must be >= 1"));
            }
            let v = v_sum(n, k, &lambda);
            emit_value(fmt, out, json!({"command": "vsum", "n": n, "k": k, "lambda": lambda.to_string()}), &QPoly::constant(v))?;
        }
        Command::Ramanujan { n, k } => {
            if n < 1 {
                return Err(Failure::new(2, "--n must be >= 1"));
            }
            let v = ramanujan_sum(n, k);
            emit_value(fmt, out, json!({"command": "ramanujan", "n": n, "k": k}), &QPoly::constant(v))?;
        }
        Command::Interp { seq, n, r, lagrange } => {
            let (c, label) = resolve_seq(&seq, n)?;
            let poly = if lagrange { lagrange_oracle(&c, r) } else { interp_poly(&dft_inverse(&c), r) };
            let params = json!({"command": "interp", "n": c.n(), "r": r, "seq": label,
                                "method": if lagrange { "lagrange" } else { "spectrum" }});
            emit_value(fmt, out, params, &poly)?;
        }
        Command::Verify { identity, grid } => {
            let mut spec = match grid {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::new(2, format!("grid {}: {e}", path.display())))?;
                    GridSpec::from_json(&text)?
                }
                None => GridSpec::acceptance(identity),
            };
            if let Some(seed) = cli.seed {
                spec.seed = seed;
            }
            let report = run_grid(&spec, identity, cli.workers)?;
            let default_path;
            let target = match out {
                Some(p) => Some(p),
                None => match std::env::var_os(OUT_DIR_ENV) {
                    Some(dir) => {
                        default_path = Path::new(&dir).join(format!("{}.{}", report.campaign, fmt.extension()));
                        Some(default_path.as_path())
                    }
                    None => None,
                },
            };
            emit_report(fmt, target, &report)?;
            if report.summary.fail > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
