//! The `nslen` command line: argument parsing, dispatch, JSON and text
//! reports. [`run`] does everything except touching the process, so tests
//! call it directly.

pub mod args;
pub mod commands;
pub mod report;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;
use nslen_core::Exec;
use serde_json::json;

use args::{Cli, Command, Global, VerifyArgs};
use report::{envelope, error_envelope, render_text, Failure, Report, EXIT_OK, EXIT_USAGE};

/// Exit code for `verify-paper` when some check failed.
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let name = command_name(&cli.command);
    let g = &cli.global;
    let exec = match Exec::with_threads(g.threads) {
        Ok(e) => e,
        Err(e) => return failure(name, g, e.into()),
    };
    let report = match &cli.command {
        Command::Group(a) => commands::group(a, g),
        Command::Fibers(a) => commands::fibers(a, g, &exec),
        Command::Identity(a) => commands::identity(a, g, &exec),
        Command::Coset(a) => commands::coset(a, g, &exec),
        Command::Wmb(a) => commands::wmb(a, g, &exec),
        Command::BadScan(a) => commands::bad_scan(a, g, &exec),
        Command::PermStats(a) => commands::perm_stats(a, g, &exec),
        Command::Lambda(a) => commands::lambda(a, g),
        Command::Radical(a) => commands::radical(a, g),
        Command::Socle(a) => commands::socle_cmd(a, g),
        Command::PermPart(a) => commands::perm_part(a, g),
        Command::VerifyPaper(a) => return verify_paper(a, g, exec),
    };
    match report {
        Ok(r) => success(name, g, &r, EXIT_OK),
        Err(f) => failure(name, g, f),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Group(_) => "group",
        Command::Fibers(_) => "fibers",
        Command::Identity(_) => "identity",
        Command::Coset(_) => "coset",
        Command::Wmb(_) => "wmb",
        Command::BadScan(_) => "bad-scan",
        Command::PermStats(_) => "perm-stats",
        Command::Lambda(_) => "lambda",
        Command::Radical(_) => "radical",
        Command::Socle(_) => "socle",
        Command::PermPart(_) => "perm-part",
        Command::VerifyPaper(_) => "verify-paper",
    }
}

fn success(name: &str, g: &Global, r: &Report, code: i32) -> Outcome {
    let stdout = if g.json {
        pretty(&envelope(name, g, r))
    } else {
        render_text(name, r)
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn failure(name: &str, g: &Global, f: Failure) -> Outcome {
    let stderr = format!("error: {}\n", f.message);
    let stdout = if g.json {
        pretty(&error_envelope(name, g, &f))
    } else {
        String::new()
    };
    Outcome {
        code: f.code,
        stdout,
        stderr,
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn verify_paper(a: &VerifyArgs, g: &Global, exec: Exec) -> Outcome {
    let selected = verify::select(a.filter.as_deref(), a.slow);
    let ctx = verify::Ctx { exec, seed: g.seed };
    let mut results = Vec::new();
    let mut lines = String::new();
    for c in &selected {
        let mut r = verify::run_check(c, &ctx);
        lines.push_str(&format!(
            "{} {} [{}]{}\n",
            if r.passed() { "PASS" } else { "FAIL" },
            r.id,
            r.anchor,
            if a.no_timing {
                String::new()
            } else {
                format!(" {:.2}s", r.runtime_s.unwrap_or(0.0))
            }
        ));
        if !r.passed() {
            lines.push_str(&format!(
                "    measured: {}\n    expected: {}\n",
                r.measured, r.expected
            ));
            if let Some(e) = &r.error {
                lines.push_str(&format!("    error: {e}\n"));
            }
        }
        if a.no_timing {
            r.runtime_s = None;
        }
        results.push(r);
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    lines.push_str(&format!(
        "{} checks run, {} failed\n",
        results.len(),
        failed
    ));
    let verdict = match (results.len(), failed) {
        (0, _) => "none_run",
        (_, 0) => "all_passed",
        _ => "failed",
    };
    let report = Report {
        input: json!({ "filter": a.filter, "slow": a.slow }),
        result: json!({ "run": results.len(), "failed": failed, "checks": results }),
        verdict: verdict.into(),
    };
    let code = if failed > 0 {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    if g.json {
        success("verify-paper", g, &report, code)
    } else {
        Outcome {
            code,
            stdout: lines,
            stderr: String::new(),
        }
    }
}
