//! `leavitt-lab`: an exact calculator for the rank-2 Leavitt algebra,
//! its table unitaries, and the associated path dynamics.
//!
//! Exit codes: 0 on success, 1 if any line hit an evaluation error, 2 if
//! any line hit a syntax error (syntax wins when both occur).

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use leavitt_core::Ring;
use leavitt_lab::session::{Session, SessionError};

#[derive(Parser)]
#[command(name = "leavitt-lab", version, about = "Exact Leavitt-algebra calculator")]
struct Cli {
    /// Coefficient ring: `z`, `q`, or `z/<n>`.
    #[arg(long, global = true, default_value = "z")]
    ring: String,

    /// Print elements, tensors, and tables as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read lines interactively from standard input.
    Repl,
    /// Run a script, one line per command.
    Run { script: PathBuf },
    /// Evaluate a single line.
    Eval { line: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ring: Ring = match cli.ring.parse() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let mut session = Session::new(ring, cli.json);
    match cli.command {
        Command::Repl => repl(&mut session),
        Command::Run { script } => run_script(&mut session, &script),
        Command::Eval { line } => ExitCode::from(run_one(&mut session, &line)),
    }
}

fn error_code(e: &SessionError) -> u8 {
    match e {
        SessionError::Syntax(_) => 2,
        SessionError::Eval(_) => 1,
    }
}

fn run_one(session: &mut Session, line: &str) -> u8 {
    match session.run_line(line) {
        Ok(Some(text)) => {
            println!("{text}");
            0
        }
        Ok(None) => 0,
        Err(e) => {
            eprintln!("{e}");
            error_code(&e)
        }
    }
}

fn run_script(session: &mut Session, script: &Path) -> ExitCode {
    let text = match fs::read_to_string(script) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", script.display());
            return ExitCode::from(1);
        }
    };
    let mut worst = 0u8;
    for line in text.lines() {
        worst = worst.max(run_one(session, line));
    }
    ExitCode::from(worst)
}

fn repl(session: &mut Session) -> ExitCode {
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut err = io::stderr();
    loop {
        write!(err, "> ").ok();
        err.flush().ok();
        let mut line = String::new();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => break,
            Ok(_) => {}
        }
        let trimmed = line.trim();
        if trimmed == "quit" || trimmed == "exit" {
            break;
        }
        // The interactive loop reports errors and keeps going.
        run_one(session, &line);
    }
    ExitCode::SUCCESS
}
