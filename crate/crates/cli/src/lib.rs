//! Command-line front end, callable in-process through [`run`].

use std::io::Write;
use std::path::PathBuf;

use clap::{CommandFactory, FromArgMatches};

pub mod args;
mod commands;
mod config;
pub mod format;

pub use args::Cli;
pub use config::{parse_config_file, parse_config_text, Entry};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;

enum Failure {
    Clap(clap::Error),
    Invalid(String),
    Runtime(String),
}

impl From<clap::Error> for Failure {
    fn from(e: clap::Error) -> Self {
        Failure::Clap(e)
    }
}

impl From<stattrials_core::Error> for Failure {
    fn from(e: stattrials_core::Error) -> Self {
        if e.is_invalid_input() {
            Failure::Invalid(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

/// Runs one invocation. `argv[0]` is the program name. CSV goes to `stdout`
/// unless `--out` is given; diagnostics and the default manifest go to
/// `stderr`. Returns the process exit code.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    match execute(argv, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(Failure::Clap(e)) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            e.exit_code() as u8
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_RUNTIME
        }
    }
}

fn execute(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let root = Cli::command();
    let mut matches = root.clone().try_get_matches_from(argv)?;

    if let Some(path) = matches.get_one::<PathBuf>("config").cloned() {
        let entries = config::parse_config_file(&path).map_err(Failure::Invalid)?;
        let (name, sub) = matches.subcommand().expect("subcommand is required");
        let merged = config::merge_into_argv(argv, &entries, &root, name, sub, &path).map_err(Failure::Invalid)?;
        matches = root.clone().try_get_matches_from(&merged)?;
    }
    let cli = Cli::from_arg_matches(&matches)?;
    let (name, sub_matches) = matches.subcommand().expect("subcommand is required");

    let globals = commands::Globals {
        seed: cli.seed,
        bins: cli.bins,
    };
    let output = if cli.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
            .map_err(|e| Failure::Runtime(format!("cannot start thread pool: {e}")))?;
        pool.install(|| commands::run(&cli.command, &globals))?
    } else {
        commands::run(&cli.command, &globals)?
    };

    match &cli.out {
        Some(path) => std::fs::write(path, &output.csv)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?,
        None => stdout
            .write_all(output.csv.as_bytes())
            .and_then(|()| stdout.flush())
            .map_err(|e| Failure::Runtime(format!("cannot write output: {e}")))?,
    }

    let manifest_path = cli.manifest.clone().or_else(|| {
        cli.out.as_ref().map(|out| {
            let mut s = out.clone().into_os_string();
            s.push(".manifest");
            PathBuf::from(s)
        })
    });
    let mut comments = vec![
        ("subcommand".to_string(), name.to_string()),
        ("version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        (
            "output".to_string(),
            cli.out
                .as_ref()
                .map_or("stdout".to_string(), |p| p.display().to_string()),
        ),
    ];
    comments.extend(output.notes.into_iter().map(|(k, v)| (format!("result {k}"), v)));
    let text = config::manifest_text(&root, name, sub_matches, &comments);
    match manifest_path {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?,
        None => stderr
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Runtime(format!("cannot write manifest: {e}")))?,
    }
    Ok(())
}
