//! The `bqmat` command line: subcommand parsing, dispatch and exit codes.

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};

use crate::complex_linalg::{JordanFingerprint, JordanTol, DEFAULT_RANK_TOL};
use crate::det::{central_charpoly, central_det};
use crate::error::Error;
use crate::io::{parse_complex_matrix, parse_matrix, write_complex_matrix, write_matrix};
use crate::matrix::{reconstruct, BqMatrix};
use crate::scalar::format_complex;
use crate::spectral::{
    diagonalizability_report, eigen_from_regular, regular_right_eigen, right_eigen_complex,
    similar_to_complex_with_tol, similarity_report,
};
use crate::verify::verify_suite;

/// Environment variable overriding the relative rank tolerance.
pub const TOL_ENV: &str = "BQMAT_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DIMENSION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bqmat", version, about = "Biquaternion matrix toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Matrix document (JSON); `-` or omitted reads stdin.
    file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complex representation Ψ(A), or ψ(A) with --small.
    Repr {
        #[arg(long)]
        small: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Biquaternion matrix from a complex representation document.
    Unrepr {
        #[arg(long)]
        small: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Inverse.
    Inv(Input),
    /// Moore-Penrose inverse.
    Pinv(Input),
    /// Half-integer rank.
    Rank(Input),
    /// Central determinant det Ψ(A).
    Det(Input),
    /// Central characteristic polynomial, ascending coefficients.
    Charpoly(Input),
    /// Complex right eigenpairs.
    Eig(Input),
    /// A regular right eigenpair and the eigenvalues derived from it.
    RegularEig(Input),
    /// Canonical form of a 1x1 matrix.
    Canonical(Input),
    /// Whether two matrices are similar.
    Similar { a: String, b: String },
    /// Whether the matrix is similar to a diagonal matrix.
    Diagonalizable(Input),
    /// Whether the matrix is similar to a complex matrix.
    SimilarToComplex(Input),
    /// Randomized check of every law.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
}

/// Maps a library error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        e if e.is_dimension() => EXIT_DIMENSION,
        _ => EXIT_NUMERICAL,
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    tol: f64,
}

impl Ctx<'_> {
    fn text(&mut self, file: Option<&str>) -> Result<String, Error> {
        match file {
            None | Some("-") => {
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
                Ok(s)
            }
            Some(path) => {
                std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
            }
        }
    }

    fn matrix(&mut self, input: &Input) -> Result<BqMatrix, Error> {
        parse_matrix(&self.text(input.file.as_deref())?)
    }
}

fn tolerance_from_env() -> Result<f64, Error> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(DEFAULT_RANK_TOL),
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(Error::Parse(format!(
                "{TOL_ENV}={v} is not a positive number"
            ))),
        },
    }
}

fn fingerprint_text(out: &mut String, label: &str, fp: &JordanFingerprint) {
    let _ = writeln!(out, "{label}");
    for c in &fp.clusters {
        let sizes: Vec<String> = c.block_sizes().iter().map(|s| s.to_string()).collect();
        let _ = writeln!(
            out,
            "  {}  multiplicity {}  blocks [{}]",
            format_complex(c.eigenvalue),
            c.multiplicity,
            sizes.join(", ")
        );
    }
}

fn column_text(out: &mut String, x: &BqMatrix) {
    for i in 0..x.rows() {
        let _ = writeln!(out, "  x[{i}] = {}", x.get(i, 0));
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<(String, i32), Error> {
    let mut out = String::new();
    let jt = JordanTol::default();
    match cmd {
        Command::Repr { small, input } => {
            let a = ctx.matrix(input)?;
            let m = if *small { a.psi_small() } else { a.psi_big() };
            out = write_complex_matrix(&m);
            out.push('\n');
        }
        Command::Unrepr { small, input } => {
            let m = parse_complex_matrix(&ctx.text(input.file.as_deref())?)?;
            let a = if *small {
                BqMatrix::from_psi_small(&m)?
            } else {
                reconstruct(&m)?
            };
            out = write_matrix(&a);
            out.push('\n');
        }
        Command::Inv(input) => {
            let a = ctx.matrix(input)?;
            out = write_matrix(&a.inverse_with_tol(ctx.tol)?);
            out.push('\n');
        }
        Command::Pinv(input) => {
            let a = ctx.matrix(input)?;
            out = write_matrix(&a.pinv_with_tol(ctx.tol));
            out.push('\n');
        }
        Command::Rank(input) => {
            let _ = writeln!(out, "{}", ctx.matrix(input)?.rank_with_tol(ctx.tol));
        }
        Command::Det(input) => {
            let _ = writeln!(
                out,
                "{}",
                format_complex(central_det(&ctx.matrix(input)?)?.value())
            );
        }
        Command::Charpoly(input) => {
            let p = central_charpoly(&ctx.matrix(input)?)?;
            for (k, c) in p.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{k} {}", format_complex(*c));
            }
        }
        Command::Eig(input) => {
            let a = ctx.matrix(input)?;
            for (k, pair) in right_eigen_complex(&a)?.iter().enumerate() {
                let _ = writeln!(out, "pair {k}");
                let _ = writeln!(out, "  lambda = {}", format_complex(pair.value));
                let _ = writeln!(out, "  residual = {:.3e}", pair.residual);
                column_text(&mut out, &pair.vector);
            }
        }
        Command::RegularEig(input) => {
            let a = ctx.matrix(input)?;
            let pair = regular_right_eigen(&a)?;
            let _ = writeln!(out, "lambda = {}", pair.value);
            let _ = writeln!(out, "residual = {:.3e}", pair.residual);
            let _ = writeln!(out, "rank(x) = {}", pair.vector.rank());
            column_text(&mut out, &pair.vector);
            for v in eigen_from_regular(&a, &pair)? {
                let _ = writeln!(out, "eigenvalue {}", format_complex(v));
            }
        }
        Command::Canonical(input) => {
            let a = ctx.matrix(input)?;
            if a.shape() != (1, 1) {
                return Err(Error::dims("canonical", (1, 1), a.shape()));
            }
            let q = a.get(0, 0);
            let (form, case) = q.canonical_form();
            let _ = writeln!(out, "case = {case}");
            let _ = writeln!(out, "form = {form}");
            if case != crate::scalar::CanonicalCase::Complex {
                let _ = writeln!(out, "witness = {}", q.similarity_witness()?);
            }
        }
        Command::Similar { a, b } => {
            let a = parse_matrix(&ctx.text(Some(a))?)?;
            let b = parse_matrix(&ctx.text(Some(b))?)?;
            let r = similarity_report(&a, &b, &jt)?;
            let _ = writeln!(out, "{}", if r.similar { "similar" } else { "not similar" });
            fingerprint_text(&mut out, "A:", &r.left);
            fingerprint_text(&mut out, "B:", &r.right);
        }
        Command::Diagonalizable(input) => {
            let r = diagonalizability_report(&ctx.matrix(input)?, &jt)?;
            let _ = writeln!(out, "{}", r.diagonalizable);
            fingerprint_text(&mut out, "psi(A):", &r.fingerprint);
        }
        Command::SimilarToComplex(input) => {
            let (ok, j) = similar_to_complex_with_tol(&ctx.matrix(input)?, &jt)?;
            let _ = writeln!(out, "{ok}");
            if let Some(j) = j {
                out.push_str(&write_complex_matrix(&j));
                out.push('\n');
            }
        }
        Command::Verify { seed, trials, size } => {
            let report = verify_suite(*seed, *trials, *size);
            out = report.render();
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_NUMERICAL
            };
            return Ok((out, code));
        }
    }
    Ok((out, EXIT_OK))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Repr { .. } => "repr",
        Command::Unrepr { .. } => "unrepr",
        Command::Inv(_) => "inv",
        Command::Pinv(_) => "pinv",
        Command::Rank(_) => "rank",
        Command::Det(_) => "det",
        Command::Charpoly(_) => "charpoly",
        Command::Eig(_) => "eig",
        Command::RegularEig(_) => "regular-eig",
        Command::Canonical(_) => "canonical",
        Command::Similar { .. } => "similar",
        Command::Diagonalizable(_) => "diagonalizable",
        Command::SimilarToComplex(_) => "similar-to-complex",
        Command::Verify { .. } => "verify",
    }
}

/// Runs the CLI on explicit streams and returns the exit code.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let name = command_name(&cli.command);
    let result =
        tolerance_from_env().and_then(|tol| dispatch(&cli.command, &mut Ctx { stdin, tol }));
    match result {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "bqmat {name}: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary: process arguments and standard streams.
pub fn main_with_env() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
