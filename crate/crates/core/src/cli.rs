//! Command-line front end.
//!
//! Exit codes: 0 success or homotopic, 1 distinct (or an atlas that does not
//! verify), 2 unknown within budget, 64 usage or parse error, 65 input that
//! parses but violates a precondition, 66 unreadable file.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alphabet::Sym;
use crate::classify::{atlas, classify_phrase, classify_word};
use crate::error::Error;
use crate::invariants::report;
use crate::phrase::{desingularize, EtalePhrase};
use crate::search::{contract_bounded, homotopic_bounded, SearchBudget, Verdict};
use crate::text::{
    parse_alphabet, parse_document, render_report, serialize_document, serialize_nanophrase,
    ReportFormat,
};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NOINPUT: i32 = 66;

#[derive(Parser, Debug)]
#[command(
    name = "nanophrase",
    version,
    about = "Homotopy of words and phrases over an alphabet with involution"
)]
struct Cli {
    /// Worker threads for search and atlas (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(Args, Debug, Clone, Copy)]
struct BudgetArgs {
    /// Largest letter count of intermediate nanophrases (default: entries/2 + 4).
    #[arg(long)]
    budget_letters: Option<usize>,
    #[arg(long, default_value_t = SearchBudget::DEFAULT_MAX_STATES)]
    budget_states: usize,
    #[arg(long, default_value_t = SearchBudget::DEFAULT_MAX_DEPTH)]
    budget_depth: usize,
}

impl BudgetArgs {
    fn budget(&self, a: &EtalePhrase, b: &EtalePhrase) -> SearchBudget {
        let mut budget = SearchBudget::for_phrases(a, b);
        if let Some(l) = self.budget_letters {
            budget.max_letters = l;
        }
        budget.max_states = self.budget_states;
        budget.max_depth = self.budget_depth;
        budget
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a phrase document and print it in canonical form.
    Parse { file: PathBuf },
    /// Print the desingularization as a document with its letter table.
    Desing { file: PathBuf },
    /// Invariants of the desingularization.
    Invariants {
        file: PathBuf,
        /// Restrict the U_L part to this set of orbit representatives (comma separated).
        #[arg(long = "L", value_delimiter = ',')]
        l: Option<Vec<String>>,
    },
    /// Decide homotopy of two phrases within the budget.
    Homotopic {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for a contraction to the empty phrase.
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Normal form of a phrase with at most three entries, and the word class of a short word.
    Classify { file: PathBuf },
    /// Classify every small phrase with k words over an alphabet file.
    Atlas {
        #[arg(long, default_value_t = 1)]
        k: usize,
        alphabet: PathBuf,
    },
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, Error),
    Data(Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Io(..) => EXIT_NOINPUT,
            Failure::Parse(..) => EXIT_USAGE,
            Failure::Data(_) => EXIT_DATA,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
            Failure::Parse(p, e) => format!("{}: {e}", p.display()),
            Failure::Data(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load(path: &Path) -> Result<EtalePhrase, Failure> {
    parse_document(&read(path)?).map_err(|e| Failure::Parse(path.to_path_buf(), e))
}

/// Output text and exit code of one command.
fn dispatch(command: &Command, format: ReportFormat) -> Result<(String, i32), Failure> {
    let verdict_out = |v: &Verdict, p: &EtalePhrase| {
        (
            render_report(&v.entries(p.alphabet()), format),
            v.exit_code(),
        )
    };
    match command {
        Command::Parse { file } => Ok((serialize_document(&load(file)?), 0)),
        Command::Desing { file } => Ok((serialize_nanophrase(&desingularize(&load(file)?)), 0)),
        Command::Invariants { file, l } => {
            let p = load(file)?;
            let only: Option<Vec<Sym>> = match l {
                Some(names) => Some(
                    names
                        .iter()
                        .map(|n| p.alphabet().lookup(n.trim()))
                        .collect::<Result<_, _>>()?,
                ),
                None => None,
            };
            let n = desingularize(&p);
            let mut entries = vec![("k".to_string(), p.len().to_string())];
            entries.extend(report(&n, only.as_deref())?);
            Ok((render_report(&entries, format), 0))
        }
        Command::Homotopic {
            first,
            second,
            budget,
        } => {
            let a = load(first)?;
            let b = load(second)?;
            let v = homotopic_bounded(&a, &b, &budget.budget(&a, &b))?;
            Ok(verdict_out(&v, &a))
        }
        Command::Reduce { file, budget } => {
            let p = load(file)?;
            let v = contract_bounded(&p, &budget.budget(&p, &p))?;
            Ok(verdict_out(&v, &p))
        }
        Command::Classify { file } => {
            let p = load(file)?;
            let mut entries = Vec::new();
            let form = classify_phrase(&p);
            if let Ok(nf) = &form {
                entries.push(("form".to_string(), nf.to_text(p.alphabet())));
            }
            if p.len() == 1 {
                if let Ok(w) = classify_word(&p) {
                    entries.push(("word".to_string(), w.to_text(p.alphabet())));
                }
            }
            if entries.is_empty() {
                return Err(Failure::Data(form.unwrap_err()));
            }
            Ok((render_report(&entries, format), 0))
        }
        Command::Atlas { k, alphabet } => {
            let text = read(alphabet)?;
            let alpha =
                Arc::new(parse_alphabet(&text).map_err(|e| Failure::Parse(alphabet.clone(), e))?);
            let at = atlas(*k, &alpha)?;
            let code = if at.is_verified() { 0 } else { 1 };
            Ok((render_report(&at.entries(), format), code))
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let format = match cli.format {
        FormatArg::Text => ReportFormat::Text,
        FormatArg::Structured => ReportFormat::Structured,
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, format)),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
        },
        None => dispatch(&cli.command, format),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
