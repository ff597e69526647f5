//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on invalid input (including degenerate
//! assignments and malformed documents), 3 when a verification fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{parse_poly, parse_rat, Assignment, Rat, SampleOptions, Var};
use crate::doc::FamilyDocument;
use crate::example;
use crate::families::{construct, FamilyError, FamilyInputs, FamilyKind};
use crate::par::Exec;
use crate::verify::{certify_specialization, verify_family, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hypertwist",
    version,
    about = "Twisting parameters giving positive rank to several hyperelliptic curves at once"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Sampling {
    /// Seed for every sampled identity test.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random points per identity test.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Run checks on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Sampling {
    fn options(&self) -> SampleOptions {
        SampleOptions {
            samples: self.samples,
            seed: self.seed,
            exec: if self.sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            },
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family and print its JSON document.
    Construct {
        #[arg(long)]
        family: FamilyKind,
        /// Polynomial in x (families A, A3, B, B3).
        #[arg(long)]
        f: Option<String>,
        /// Odd exponents, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
        /// Nonzero rationals, comma separated. For A, A3 and C the first
        /// three are squared: `--consts 2` gives the constant 4.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        consts: Vec<String>,
        /// `u,y_u` with `y_u^2 = f(u)` (families B, B3).
        #[arg(long, allow_hyphen_values = true)]
        base_point: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Attach a verification report.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Reproduce the worked example and check it against its closed forms.
    Example {
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Run the symbolic checks on a stored document.
    Verify {
        path: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Evaluate a stored family at one assignment and certify the points.
    Certify {
        path: PathBuf,
        /// e.g. `u=1,v1=1,v2=1,v3=-2/3`
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.to_string(),
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        invalid(e)
    }
}

fn parse_list(s: &str) -> Result<Vec<Rat>, Failure> {
    s.split(',')
        .map(|t| parse_rat(t).map_err(|e| invalid(format!("`{t}`: {e}"))))
        .collect()
}

pub fn parse_assignment(s: &str) -> Result<Assignment, String> {
    let mut a = Assignment::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got `{part}`"))?;
        let var = Var::from_name(name.trim())
            .ok_or_else(|| format!("unknown variable `{}`", name.trim()))?;
        let value = parse_rat(value).map_err(|e| format!("`{value}`: {e}"))?;
        a.insert(var, value);
    }
    Ok(a)
}

fn read_doc(path: &PathBuf) -> Result<FamilyDocument, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    FamilyDocument::from_json(&text).map_err(invalid)
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let res = match out {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => writeln!(stdout, "{text}"),
    };
    res.map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })
}

fn report_code(r: &VerificationReport) -> i32 {
    if r.overall {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Construct {
            family,
            f,
            m,
            consts,
            base_point,
            out,
            verify,
            sampling,
        } => {
            let f = f
                .map(|s| parse_poly(&s).map_err(|e| invalid(format!("f: {e}"))))
                .transpose()?;
            let constants = parse_list(&consts.join(","))?;
            let mut inputs = FamilyInputs::new(family, f, m, constants);
            if let Some(bp) = base_point {
                match parse_list(&bp)?.as_slice() {
                    [u, y] => inputs = inputs.with_base_point(u.clone(), y.clone()),
                    _ => return Err(invalid("--base-point takes u,y_u")),
                }
            }
            let fam = construct(&inputs)?;
            let report = verify.then(|| verify_family(&fam, &sampling.options()));
            let code = report.as_ref().map_or(EXIT_OK, report_code);
            emit(
                &FamilyDocument::from_family(&fam, report).to_json(),
                out.as_ref(),
                stdout,
            )?;
            Ok(code)
        }
        Command::Example { out, sampling } => {
            let fam = example::build()?;
            let report = example::check(&fam, &sampling.options())?;
            let code = report_code(&report);
            if code != EXIT_OK {
                let diff: Vec<String> = report
                    .failures()
                    .map(|c| format!("{}: {}", c.name, c.detail))
                    .collect();
                return Err(Failure {
                    code,
                    message: format!("example mismatch\n{}", diff.join("\n")),
                });
            }
            emit(
                &FamilyDocument::from_family(&fam, Some(report)).to_json(),
                out.as_ref(),
                stdout,
            )?;
            Ok(code)
        }
        Command::Verify { path, sampling } => {
            let fam = read_doc(&path)?.to_family().map_err(invalid)?;
            let report = verify_family(&fam, &sampling.options());
            emit(
                &serde_json::to_string_pretty(&report).expect("serializable"),
                None,
                stdout,
            )?;
            Ok(report_code(&report))
        }
        Command::Certify { path, at, sampling } => {
            let fam = read_doc(&path)?.to_family().map_err(invalid)?;
            let a = parse_assignment(&at).map_err(invalid)?;
            let report = certify_specialization(&fam, &a, &sampling.options())?;
            emit(
                &serde_json::to_string_pretty(&report).expect("serializable"),
                None,
                stdout,
            )?;
            Ok(report_code(&report))
        }
    }
}

/// Run the command line `args` (program name first) and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("hypertwist").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn assignment_parsing() {
        let a = parse_assignment("u=1, v1=-2/3,v2=5").unwrap();
        assert_eq!(a.len(), 3);
        assert!(parse_assignment("w=1").is_err());
        assert!(parse_assignment("u").is_err());
    }

    #[test]
    fn construct_exit_codes() {
        let (code, _, err) = run_str(&[
            "construct",
            "--family",
            "A",
            "--f",
            "x^3-x^2",
            "--m",
            "3,3,3",
            "--consts",
            "1,1,1",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("f is not square-free"), "{err}");
        let (code, out, _) = run_str(&[
            "construct",
            "--family",
            "C",
            "--m",
            "3,3,3,3",
            "--consts",
            "1,1,1,1",
            "--verify",
            "--seed",
            "7",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("\"overall\": true"));
        let (code, _, _) = run_str(&["construct", "--family", "Q", "--m", "3"]);
        assert_eq!(code, 2);
        let (code, _, err) = run_str(&[
            "construct",
            "--family",
            "C",
            "--m",
            "3,3,3,3",
            "--consts",
            "1,-1,0,1",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("constants must be nonzero"));
    }
}
