//! The `acnet` command line.
//!
//! Exit codes: 0 success or admissible, 1 domain rejection (inadmissible
//! matrix, invalid network), 2 input or usage error, 3 internal verification
//! failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::characterize::{
    random_admissible, validate_response, ConditionCheck, ValidationVerdict,
};
use crate::error::Error;
use crate::io;
use crate::network::validate_network;
use crate::numerics::Tolerances;
use crate::response::{boundary_currents, response_matrix, solve_network};
use crate::synthesize::{realize, synthesize_network, verify_roundtrip, SynthesisOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "acnet",
    version,
    about = "Response maps of alternating-current networks"
)]
pub struct Cli {
    /// Relative tolerance for every admissibility check (round trip uses 10x).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a matrix is the response matrix of some network.
    Validate { matrix: PathBuf },
    /// Build a network realizing an admissible response matrix.
    Synthesize {
        matrix: PathBuf,
        #[arg(long)]
        minimize_interior: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Compute the response matrix of a network.
    Respond {
        network: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Solve a network for given boundary voltages.
    Solve {
        network: PathBuf,
        #[arg(long)]
        voltages: PathBuf,
    },
    /// Synthesize, recompute the response, and report the residual.
    Roundtrip {
        matrix: PathBuf,
        #[arg(long)]
        minimize_interior: bool,
    },
    /// Write a random admissible response matrix.
    Gen {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cnum(z: Complex64) -> String {
    format!("{} {}", num(z.re), num(z.im))
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } | Error::Parse { .. } | Error::Shape(_) | Error::NonFinite { .. } => {
            EXIT_INPUT
        }
        Error::InvalidNetwork(_)
        | Error::Inadmissible(_)
        | Error::NotLaplace(_)
        | Error::Disconnected { .. }
        | Error::NotSymmetric { .. }
        | Error::Generator(_) => EXIT_REJECTED,
        Error::VerificationFailed { .. }
        | Error::Consistency(_)
        | Error::NoConvergence { .. }
        | Error::Singular { .. }
        | Error::DegenerateInterior { .. } => EXIT_VERIFICATION,
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, e: &Error) -> i32 {
        let _ = writeln!(self.err, "error: {e}");
        exit_code(e)
    }

    /// Writes `text` to `path`, or to standard output without one.
    fn emit(&mut self, text: &str, path: Option<&Path>) -> Result<(), Error> {
        match path {
            Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
                path: p.to_path_buf(),
                source,
            }),
            None => {
                let _ = self.out.write_all(text.as_bytes());
                Ok(())
            }
        }
    }

    /// Summary lines go to stdout unless stdout carries the file payload.
    fn summary(&mut self, payload_on_stdout: bool) -> &mut dyn Write {
        if payload_on_stdout {
            self.err
        } else {
            self.out
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let tol = match cli.tol {
        None => Tolerances::default(),
        Some(t) if t.is_finite() && t > 0.0 => Tolerances::with_relative(t),
        Some(t) => {
            let _ = writeln!(io.err, "error: --tol must be positive, got {t}");
            return EXIT_INPUT;
        }
    };
    match cli.command {
        Command::Validate { matrix } => cmd_validate(&mut io, &matrix, &tol),
        Command::Synthesize {
            matrix,
            minimize_interior,
            output,
        } => cmd_synthesize(
            &mut io,
            &matrix,
            SynthesisOptions { minimize_interior },
            output.as_deref(),
            &tol,
        ),
        Command::Respond { network, output } => cmd_respond(&mut io, &network, output.as_deref()),
        Command::Solve { network, voltages } => cmd_solve(&mut io, &network, &voltages),
        Command::Roundtrip {
            matrix,
            minimize_interior,
        } => cmd_roundtrip(
            &mut io,
            &matrix,
            SynthesisOptions { minimize_interior },
            &tol,
        ),
        Command::Gen { size, seed, output } => cmd_gen(&mut io, size, seed, output.as_deref()),
    }
}

fn check_line(w: &mut dyn Write, name: &str, c: &ConditionCheck) {
    let _ = writeln!(
        w,
        "{name}: residual {} threshold {} {}",
        num(c.residual),
        num(c.threshold),
        if c.passed { "PASS" } else { "FAIL" }
    );
}

fn print_verdict(w: &mut dyn Write, v: &ValidationVerdict) {
    let _ = writeln!(w, "size: {}", v.size);
    check_line(w, "symmetry", &v.symmetry);
    check_line(w, "row sums", &v.row_sums);
    check_line(w, "positive semidefinite", &v.psd);
    let k = &v.kernel;
    let _ = writeln!(
        w,
        "kernel: dimension {} lambda1 {} lambda2 {} threshold {} ones residual {} {}",
        k.dimension,
        num(k.lambda1),
        num(k.lambda2),
        num(k.threshold),
        num(k.ones_residual),
        if k.passed { "PASS" } else { "FAIL" }
    );
    let ev: Vec<String> = v.eigenvalues.iter().map(|&x| num(x)).collect();
    let _ = writeln!(w, "eigenvalues: {}", ev.join(" "));
}

fn cmd_validate(io: &mut Io, path: &Path, tol: &Tolerances) -> i32 {
    let m = match io::read_matrix(path) {
        Ok(m) => m,
        Err(e) => return io.fail(&e),
    };
    match validate_response(&m, tol) {
        Ok(v) => {
            print_verdict(io.out, &v.verdict);
            if v.verdict.admissible {
                let _ = writeln!(io.out, "ADMISSIBLE");
                EXIT_OK
            } else {
                let _ = writeln!(
                    io.out,
                    "INADMISSIBLE ({})",
                    v.verdict.failed_conditions().join(", ")
                );
                EXIT_REJECTED
            }
        }
        Err(Error::Shape(msg)) => {
            let _ = writeln!(io.out, "INADMISSIBLE ({msg})");
            EXIT_REJECTED
        }
        Err(e) => io.fail(&e),
    }
}

fn load_admissible(
    io: &mut Io,
    path: &Path,
    tol: &Tolerances,
) -> Result<crate::characterize::ResponseMatrix, i32> {
    let m = io::read_matrix(path).map_err(|e| io.fail(&e))?;
    let v = match validate_response(&m, tol) {
        Ok(v) => v,
        Err(Error::Shape(msg)) => {
            let _ = writeln!(io.err, "INADMISSIBLE ({msg})");
            return Err(EXIT_REJECTED);
        }
        Err(e) => return Err(io.fail(&e)),
    };
    match v.response {
        Some(rm) => Ok(rm),
        None => {
            let _ = writeln!(
                io.err,
                "INADMISSIBLE ({})",
                v.verdict.failed_conditions().join(", ")
            );
            Err(EXIT_REJECTED)
        }
    }
}

fn cmd_synthesize(
    io: &mut Io,
    path: &Path,
    options: SynthesisOptions,
    output: Option<&Path>,
    tol: &Tolerances,
) -> i32 {
    let rm = match load_admissible(io, path, tol) {
        Ok(rm) => rm,
        Err(code) => return code,
    };
    let syn = match synthesize_network(&rm, options, tol) {
        Ok(s) => s,
        Err(e) => return io.fail(&e),
    };
    let text = match io::network_to_json(&syn.network) {
        Ok(t) => t,
        Err(e) => return io.fail(&e),
    };
    if let Err(e) = io.emit(&text, output) {
        return io.fail(&e);
    }
    let r = &syn.report;
    let w = io.summary(output.is_none());
    let _ = writeln!(
        w,
        "nodes: {} ({} boundary, {} interior)",
        r.node_count(),
        r.boundary_count,
        r.interior_count
    );
    let _ = writeln!(w, "edges: {}", r.edge_count);
    let _ = writeln!(w, "residual: {}", num(r.residual));
    let _ = writeln!(w, "relative residual: {}", num(r.relative_residual));
    EXIT_OK
}

fn cmd_respond(io: &mut Io, path: &Path, output: Option<&Path>) -> i32 {
    let net = match io::read_network(path) {
        Ok(n) => n,
        Err(e) => return io.fail(&e),
    };
    let report = validate_network(&net);
    if !report.is_valid() {
        let _ = writeln!(io.err, "invalid network: {report}");
        return EXIT_REJECTED;
    }
    let result = response_matrix(&net).and_then(|r| io::matrix_to_json(&r));
    match result.and_then(|text| io.emit(&text, output)) {
        Ok(()) => EXIT_OK,
        Err(e) => io.fail(&e),
    }
}

fn cmd_solve(io: &mut Io, network: &Path, voltages: &Path) -> i32 {
    let net = match io::read_network(network) {
        Ok(n) => n,
        Err(e) => return io.fail(&e),
    };
    let v = match io::read_vector(voltages) {
        Ok(v) => v,
        Err(e) => return io.fail(&e),
    };
    let report = validate_network(&net);
    if !report.is_valid() {
        let _ = writeln!(io.err, "invalid network: {report}");
        return EXIT_REJECTED;
    }
    let solved = solve_network(&net, &v).and_then(|full| {
        let currents = boundary_currents(&net, &full)?;
        Ok((full, currents))
    });
    let (full, currents) = match solved {
        Ok(x) => x,
        Err(e) => return io.fail(&e),
    };
    let _ = writeln!(io.out, "voltages:");
    for (i, &z) in full.iter().enumerate() {
        let _ = writeln!(io.out, "  {i} {}", cnum(z));
    }
    let _ = writeln!(io.out, "currents:");
    for (i, &z) in currents.iter().enumerate() {
        let _ = writeln!(io.out, "  {i} {}", cnum(z));
    }
    EXIT_OK
}

fn cmd_roundtrip(io: &mut Io, path: &Path, options: SynthesisOptions, tol: &Tolerances) -> i32 {
    let rm = match load_admissible(io, path, tol) {
        Ok(rm) => rm,
        Err(code) => return code,
    };
    let (net, _) = match realize(&rm, options, tol) {
        Ok(x) => x,
        Err(e) => return io.fail(&e),
    };
    let r = verify_roundtrip(&rm, &net);
    let _ = writeln!(
        io.out,
        "nodes: {} ({} boundary, {} interior)",
        r.node_count(),
        r.boundary_count,
        r.interior_count
    );
    let _ = writeln!(io.out, "edges: {}", r.edge_count);
    let _ = writeln!(
        io.out,
        "min conductance real part: {}",
        num(r.min_real_part)
    );
    let _ = writeln!(io.out, "residual: {}", num(r.residual));
    let _ = writeln!(io.out, "relative residual: {}", num(r.relative_residual));
    if r.passes(tol.roundtrip) {
        let _ = writeln!(io.out, "PASS");
        EXIT_OK
    } else {
        let _ = writeln!(io.out, "FAIL (threshold {})", num(tol.roundtrip));
        EXIT_VERIFICATION
    }
}

fn cmd_gen(io: &mut Io, size: usize, seed: u64, output: Option<&Path>) -> i32 {
    if size < 2 {
        let _ = writeln!(io.err, "error: --size must be at least 2");
        return EXIT_INPUT;
    }
    let result = random_admissible(size, seed).and_then(|rm| io::matrix_to_json(rm.matrix()));
    match result.and_then(|text| io.emit(&text, output)) {
        Ok(()) => EXIT_OK,
        Err(e) => io.fail(&e),
    }
}
