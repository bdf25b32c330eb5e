//! Command-line front end. Exit codes: 0 success, 2 usage or validation
//! error, 3 decoding failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bounds::{
    best_bound_search, certify, check_1rd, check_sigmat2dr, check_tnu, decoding_capacity,
    interleaved_advisory, SearchLimits,
};
use crate::code::{random_error, CodeSpec};
use crate::decoder::{decode_interleaved, decode_locator, decode_span, sfsr_synthesize, DecodeParams, Solver};
use crate::io::{matrix_to_json, outcome_to_json, read_code, read_pattern, read_vector, vector_to_json};
use crate::skew::{SkewPoly, Twist};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DECODE_FAILURE: i32 = 3;

/// Overrides `--seed` when set.
pub const SEED_ENV: &str = "RANKDEC_SEED";

#[derive(Parser, Debug)]
#[command(name = "rankdec", version, about = "Rank-metric codes C(σ, h, T): bounds, encoding and decoding")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PathArg {
    Span,
    Locator,
    Interleaved,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolverArg {
    Gabidulin,
    Linear,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print length, dimension, defining set and parity matrix shape.
    MakeCode {
        spec: PathBuf,
        /// Also print the parity matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Certify a pattern, or search for the best HT/Roos bound.
    Bounds {
        spec: PathBuf,
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Restrict the search to r <= this value.
        #[arg(long)]
        max_r: Option<usize>,
        /// Number of interleaved blocks for the advisory figure.
        #[arg(long, default_value_t = 1)]
        blocks: usize,
    },
    /// Multiply a message by the generator matrix.
    Encode {
        spec: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add a seeded random error of a given rank.
    Corrupt {
        spec: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the error vector.
        #[arg(long)]
        error_out: Option<PathBuf>,
    },
    /// Decode a received word.
    Decode {
        spec: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = PathArg::Span)]
        path: PathArg,
        #[arg(long, default_value_t = 1)]
        blocks: usize,
        #[arg(long, value_enum, default_value_t = SolverArg::Gabidulin)]
        solver: SolverArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print syndromes and synthesized shift registers of a word.
    Inspect {
        spec: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
}

/// Runs the CLI on `args` (program name first); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn seed_from_env(flag: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{SEED_ENV}={v} is not a 64-bit integer"))),
        Err(_) => Ok(flag),
    }
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match dest {
        Some(p) => fs::write(p, text + "\n")?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

/// "{0..4,8..12}".
pub fn format_set(set: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < set.len() {
        let mut j = i;
        while j + 1 < set.len() && set[j + 1] == set[j] + 1 {
            j += 1;
        }
        parts.push(if j > i { format!("{}..{}", set[i], set[j]) } else { set[i].to_string() });
        i = j + 1;
    }
    format!("{{{}}}", parts.join(","))
}

fn params(spec: CodeSpec, pattern: &Path) -> Result<DecodeParams> {
    DecodeParams::new(spec, read_pattern(pattern)?)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::MakeCode { spec, matrix } => {
            let spec = read_code(&spec)?;
            writeln!(
                out,
                "n={} |σ|={} k={} T={}",
                spec.n(),
                spec.order(),
                spec.dimension(),
                format_set(spec.t())
            )?;
            writeln!(out, "defining set {}", format_set(&spec.defining_set()))?;
            let h = spec.parity();
            writeln!(out, "parity matrix {}x{} rank {}", h.rows(), h.cols(), h.rank())?;
            if matrix {
                emit(out, None, &json!(matrix_to_json(h)))?;
            }
        }
        Command::Bounds { spec, pattern, max_r, blocks } => {
            let spec = read_code(&spec)?;
            let order = spec.order();
            let defining = spec.defining_set();
            match pattern {
                Some(p) => {
                    let p = read_pattern(&p)?;
                    let cert = certify(&p, order, &defining);
                    match &cert {
                        Some(c) => writeln!(
                            out,
                            "{:?} ≥ {}, τ={}, capacity={}",
                            c.kind,
                            c.value,
                            p.tau(),
                            decoding_capacity(&p, order)
                        )?,
                        None => writeln!(out, "not certified")?,
                    }
                    writeln!(
                        out,
                        "sigmat2dr={} tnu(τ)={} 1rd={} advisory({blocks} blocks)={}",
                        check_sigmat2dr(&p, order),
                        check_tnu(&p, p.tau(), order),
                        check_1rd(&p, order),
                        interleaved_advisory(&p, blocks),
                    )?;
                    emit(out, None, &json!(cert))?;
                }
                None => {
                    let cert = best_bound_search(&defining, order, SearchLimits { max_r })?;
                    match &cert {
                        Some(c) => writeln!(out, "≥ {} ({:?})", c.value, c.kind)?,
                        None => writeln!(out, "no bound found")?,
                    }
                    emit(out, None, &json!(cert))?;
                }
            }
        }
        Command::Encode { spec, msg, out: dest } => {
            let spec = read_code(&spec)?;
            let m = read_vector(spec.field(), &msg)?;
            let c = spec.encode(&m)?;
            emit(out, dest.as_deref(), &json!(vector_to_json(spec.field(), &c)))?;
        }
        Command::Corrupt { spec, input, rank, seed, out: dest, error_out } => {
            let spec = read_code(&spec)?;
            let f = spec.field().clone();
            let c = read_vector(&f, &input)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed_from_env(seed)?);
            let e = random_error(&f, spec.aut().fixed_degree(), c.len(), rank, &mut rng)?.e;
            let y: Vec<_> = c.iter().zip(&e).map(|(a, b)| a ^ b).collect();
            emit(out, dest.as_deref(), &json!(vector_to_json(&f, &y)))?;
            if let Some(p) = error_out {
                emit(out, Some(&p), &json!(vector_to_json(&f, &e)))?;
            }
        }
        Command::Decode { spec, pattern, input, path, blocks, solver, out: dest } => {
            let spec = read_code(&spec)?;
            let f = spec.field().clone();
            let params = params(spec, &pattern)?;
            let y = read_vector(&f, &input)?;
            let solver = match solver {
                SolverArg::Gabidulin => Solver::Gabidulin,
                SolverArg::Linear => Solver::Linear,
            };
            let outcome = match path {
                PathArg::Span => decode_span(&params, &y, solver)?,
                PathArg::Locator => decode_locator(&params, &y, solver)?,
                PathArg::Interleaved => decode_interleaved(&params, &y, blocks, solver)?,
            };
            emit(out, dest.as_deref(), &outcome_to_json(&f, &outcome))?;
            if !outcome.is_success() {
                return Ok(EXIT_DECODE_FAILURE);
            }
        }
        Command::Inspect { spec, pattern, input } => {
            let spec = read_code(&spec)?;
            let f = spec.field().clone();
            let aut = spec.aut().clone();
            let params = params(spec, &pattern)?;
            let y = read_vector(&f, &input)?;
            let table = params.syndrome_table(&y)?;
            let t1 = params.pattern().t1;
            let mut report = serde_json::Map::new();
            report.insert("s".into(), json!(table.s.iter().map(|r| vector_to_json(&f, r)).collect::<Vec<_>>()));
            report.insert("s_tilde".into(), json!(table.st.iter().map(|r| vector_to_json(&f, r)).collect::<Vec<_>>()));
            for (name, seqs, step) in [("span", &table.s, t1), ("locator", &table.st, -t1)] {
                let tw = Twist::new(aut.clone(), step);
                let sfsr = sfsr_synthesize(seqs, &tw)?;
                let kernel = SkewPoly::new(tw, sfsr.coeffs.clone()).kernel_basis();
                report.insert(
                    name.into(),
                    json!({
                        "length": sfsr.len,
                        "sfsr": vector_to_json(&f, &sfsr.coeffs),
                        "kernel": vector_to_json(&f, &kernel),
                    }),
                );
            }
            report.insert("capacity".into(), json!(params.capacity()));
            emit(out, None, &Value::Object(report))?;
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_formatting() {
        assert_eq!(format_set(&[0, 1, 2, 3, 4, 8, 9, 10, 11, 12]), "{0..4,8..12}");
        assert_eq!(format_set(&[]), "{}");
        assert_eq!(format_set(&[3, 5, 6]), "{3,5..6}");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["rankdec", "nonsense"], &mut o, &mut e), EXIT_USAGE);
        assert_eq!(run(["rankdec", "make-code", "/nonexistent.json"], &mut o, &mut e), EXIT_USAGE);
    }
}
