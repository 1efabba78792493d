//! Command-line parsing and the subcommands.  Exit codes: 0 all checks pass,
//! 1 a check (or a type check) failed, 2 input could not be loaded or parsed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dsl::{self, parse_dsl};
use crate::eval::{self, evaluate_program, EvalError};
use crate::load::{env_tolerance, load_category};
use crate::verify::{self, Options, Suite};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "mtcperm", version, about = "Verify modular tensor category data and evaluate string diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn positive_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("`{s}` is not a positive tolerance")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites on one or more category files.
    Verify {
        /// Category JSON file, or the name of a bundled category.
        #[arg(long = "category", required = true)]
        categories: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Tolerance for every suite (default 1e-10 for consistency, 1e-9 otherwise; `MTCPERM_TOL` also works).
        #[arg(long, value_parser = positive_tol)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest rank allowed for `C^{⊠3}`.
        #[arg(long, default_value_t = mtcperm_core::catdata::DEFAULT_RANK_CAP)]
        rank_cap: usize,
        /// Seed for random basis changes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate a diagram file and print its blocks.
    Eval {
        #[arg(long)]
        category: String,
        file: PathBuf,
        /// Source word, e.g. `tau tau*` or `tau || ()`; overrides `@source`.
        #[arg(long)]
        source: Option<String>,
        /// Expected target word; overrides `@target`.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_parser = positive_tol)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Parse diagram files, print them canonically and check the round trip.
    Fmt {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

fn fail2(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(text: String, out: Option<&PathBuf>) -> Result<(), ExitCode> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| fail2(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(
    categories: &[String],
    suite: Suite,
    tol: Option<f64>,
    opts: Options,
    out: Option<&PathBuf>,
    format: Format,
) -> ExitCode {
    let tol = match tol.map(Ok).or_else(|| env_tolerance().transpose()) {
        Some(Ok(t)) => Some(t),
        Some(Err(e)) => return fail2(e),
        None => None,
    };
    let mut cats = Vec::new();
    for c in categories {
        match load_category(c, tol) {
            Ok(x) => cats.push(x),
            Err(e) => return fail2(e),
        }
    }
    let opts = Options { tol, ..opts };
    let summary = verify::run(&cats, &[suite], &opts);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n",
        Format::Text => verify::render_text(&summary),
    };
    if let Err(code) = emit(text, out) {
        return code;
    }
    if out.is_some() {
        println!("{}", if summary.pass { "PASS" } else { "FAIL" });
        if let Some(f) = summary.first_failure() {
            println!("first failure: {f}");
        }
    }
    if summary.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_eval(
    category: &str,
    file: &PathBuf,
    source: Option<&str>,
    target: Option<&str>,
    tol: Option<f64>,
    format: Format,
) -> ExitCode {
    let cat = match load_category(category, tol) {
        Ok(c) => c,
        Err(e) => return fail2(e),
    };
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return fail2(format!("{}: {e}", file.display())),
    };
    let prog = match parse_dsl(&text) {
        Ok(p) => p,
        Err(e) => return fail2(format!("{}:{e}", file.display())),
    };
    let word = |w: Option<&str>, what: &str| -> Result<Option<dsl::WordRef>, ExitCode> {
        w.map(|s| dsl::parse_word(s).map_err(|e| fail2(format!("--{what}: {e}")))).transpose()
    };
    let (src, tgt) = match (word(source, "source"), word(target, "target")) {
        (Ok(s), Ok(t)) => (s, t),
        (Err(c), _) | (_, Err(c)) => return c,
    };
    match evaluate_program(&cat, &prog, src.as_ref(), tgt.as_ref()) {
        Ok(e) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&e).expect("serializes")),
                Format::Text => print!("{}", eval::render_text(&e)),
            }
            ExitCode::SUCCESS
        }
        Err(EvalError::Dsl(e)) => fail2(format!("{}:{e}", file.display())),
        Err(e @ EvalError::Type { .. }) => {
            eprintln!("error: {}: {e}", file.display());
            ExitCode::from(1)
        }
        Err(EvalError::Core(e)) => {
            eprintln!("error: {}: {e}", file.display());
            ExitCode::from(1)
        }
    }
}

fn cmd_fmt(files: &[PathBuf]) -> ExitCode {
    let mut code = ExitCode::SUCCESS;
    for f in files {
        let text = match std::fs::read_to_string(f) {
            Ok(t) => t,
            Err(e) => return fail2(format!("{}: {e}", f.display())),
        };
        let p = match parse_dsl(&text) {
            Ok(p) => p,
            Err(e) => return fail2(format!("{}:{e}", f.display())),
        };
        let printed = p.to_string();
        let stable = parse_dsl(&printed).is_ok_and(|q| q.same_as(&p));
        print!("// {}\n{printed}", f.display());
        if !stable {
            eprintln!("error: {}: printed form does not parse back to the same program", f.display());
            code = ExitCode::from(1);
        }
    }
    code
}

pub fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Verify { categories, suite, tol, jobs, out, format, rank_cap, seed } => {
            let opts = Options { jobs: jobs as usize, rank_cap, seed, ..Options::default() };
            cmd_verify(&categories, suite, tol, opts, out.as_ref(), format)
        }
        Command::Eval { category, file, source, target, tol, format } => {
            cmd_eval(&category, &file, source.as_deref(), target.as_deref(), tol, format)
        }
        Command::Fmt { files } => cmd_fmt(&files),
    }
}

/// Entry point; clap's own usage errors also exit with 2.
pub fn main() -> ExitCode {
    run(Cli::parse())
}
