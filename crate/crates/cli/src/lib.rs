//! The `specimen` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 type or validation error, 3 no reading,
//! 4 evaluation error. Results go to the output stream, diagnostics to the
//! error stream. Every input given both inline and as a file is taken
//! inline.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use specimen_core::calculus::{normalize, type_of, DEFAULT_FUEL};
use specimen_core::composer::{enumerate_readings, order_readings, parse_tree, ComposeError, ComposeOptions, Preference, Reading};
use specimen_core::lexicon::{load_lexicon, Lexicon};
use specimen_core::logic::{
    eval_term, extract_formula, format_decimal, judge_specimen, parse_model, parse_theta, EvalConfig, FiniteModel, LogicError, Rule,
};

#[derive(Debug, Parser)]
#[command(name = "specimen", version, about = "Typed composition and most-of evaluation")]
struct Cli {
    /// Reduction steps allowed per normalization.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL, value_parser = positive)]
    fuel: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the type of a term.
    Check {
        #[arg(long)]
        lexicon: PathBuf,
        #[command(flatten)]
        term: TermInput,
    },
    /// Print the β-normal form of a term.
    Normalize {
        #[arg(long)]
        lexicon: PathBuf,
        #[command(flatten)]
        term: TermInput,
    },
    /// Print every reading of a syntax tree.
    Compose {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        tree: Option<String>,
        #[arg(long)]
        tree_file: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_coercions: usize,
        #[arg(long, default_value_t = 64, value_parser = positive)]
        max_readings: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Put readings instantiating some binder at this type first.
        #[arg(long)]
        prefer_type: Option<String>,
        /// Put readings using this coercion first.
        #[arg(long, conflicts_with = "prefer_type")]
        prefer_coercion: Option<String>,
    },
    /// Evaluate a closed term of type `t` in a finite model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        formula_term: Option<String>,
        #[arg(long)]
        formula_term_file: Option<PathBuf>,
        #[arg(long, value_parser = theta, default_value = "3/4")]
        theta: EvalConfig,
    },
    /// Judge a predicate of the specimen of a class.
    Judge {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        pred: Option<String>,
        #[arg(long)]
        pred_file: Option<PathBuf>,
        #[arg(long, value_parser = theta, default_value = "3/4")]
        theta: EvalConfig,
    },
}

#[derive(Debug, Args)]
struct TermInput {
    #[arg(long)]
    term: Option<String>,
    #[arg(long)]
    term_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Sexpr,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn theta(s: &str) -> Result<EvalConfig, String> {
    parse_theta(s).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
    NoReading(String),
    Eval(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::NoReading(_) => 3,
            Failure::Eval(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) | Failure::NoReading(m) | Failure::Eval(m) => m,
        }
    }
}

fn invalid(e: impl Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn eval_failure(e: LogicError) -> Failure {
    match e {
        LogicError::IllTyped(_) | LogicError::Model(_) => Failure::Invalid(e.to_string()),
        _ => Failure::Eval(e.to_string()),
    }
}

/// Runs one command line and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn inline_or_file(inline: Option<String>, file: Option<PathBuf>, flag: &str) -> Result<String, Failure> {
    match (inline, file) {
        (Some(text), _) => Ok(text),
        (None, Some(path)) => read(&path),
        (None, None) => Err(Failure::Usage(format!("one of --{flag} or --{flag}-file is required"))),
    }
}

fn lexicon(path: &Path) -> Result<Lexicon, Failure> {
    load_lexicon(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn model(path: &Path, lex: &Lexicon) -> Result<FiniteModel, Failure> {
    let model = parse_model(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    model.validate(&lex.signature).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(model)
}

fn io(e: std::io::Error) -> Failure {
    Failure::Eval(format!("writing output: {e}"))
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let fuel = cli.fuel;
    match cli.command {
        Command::Check { lexicon: path, term } => {
            let lex = lexicon(&path)?;
            let sig = &lex.signature;
            let u = sig.parse_term(&inline_or_file(term.term, term.term_file, "term")?).map_err(invalid)?;
            let ty = type_of(&sig.typing_context(), &u).map_err(invalid)?;
            writeln!(out, "{ty}").map_err(io)
        }
        Command::Normalize { lexicon: path, term } => {
            let lex = lexicon(&path)?;
            let sig = &lex.signature;
            let u = sig.parse_term(&inline_or_file(term.term, term.term_file, "term")?).map_err(invalid)?;
            type_of(&sig.typing_context(), &u).map_err(invalid)?;
            let nf = normalize(&u, fuel).map_err(|e| Failure::Eval(e.to_string()))?;
            writeln!(out, "{nf}").map_err(io)
        }
        Command::Compose { lexicon: path, tree, tree_file, max_coercions, max_readings, format, prefer_type, prefer_coercion } => {
            let lex = lexicon(&path)?;
            let tree = parse_tree(&inline_or_file(tree, tree_file, "tree")?).map_err(invalid)?;
            let pref = match (prefer_type, prefer_coercion) {
                (Some(ty), _) => Preference::PreferType(lex.signature.parse_type(&ty).map_err(invalid)?),
                (None, Some(c)) => Preference::PreferCoercion(c),
                (None, None) => Preference::Cost,
            };
            let opts = ComposeOptions { max_coercions, max_readings: usize::MAX, fuel };
            let found = enumerate_readings(&tree, &lex, &opts).map_err(|e| match e {
                ComposeError::NoReading { .. } => Failure::NoReading(e.to_string()),
                ComposeError::LeafNotInLexicon(_) => Failure::Invalid(e.to_string()),
                ComposeError::Normalization(_) => Failure::Eval(e.to_string()),
            })?;
            let total = found.readings.len();
            let mut readings = order_readings(found.readings, &pref);
            readings.truncate(max_readings);
            if total > readings.len() {
                let _ = writeln!(err, "warning: showing {} of {total} readings", readings.len());
            }
            for (i, r) in readings.iter().enumerate() {
                let text = render(&lex, r, i + 1, format);
                write!(out, "{text}").map_err(io)?;
            }
            Ok(())
        }
        Command::Eval { model: mpath, lexicon: lpath, formula_term, formula_term_file, theta } => {
            let lex = lexicon(&lpath)?;
            let model = model(&mpath, &lex)?;
            let sig = &lex.signature;
            let u = sig.parse_term(&inline_or_file(formula_term, formula_term_file, "formula-term")?).map_err(invalid)?;
            let value = eval_term(&model, &u, sig, &theta, fuel).map_err(eval_failure)?;
            writeln!(out, "{value}").map_err(io)
        }
        Command::Judge { model: mpath, lexicon: lpath, class, pred, pred_file, theta } => {
            let lex = lexicon(&lpath)?;
            let model = model(&mpath, &lex)?;
            let sig = &lex.signature;
            let class = sig.parse_type(&class).map_err(invalid)?;
            let pred = sig.parse_term(&inline_or_file(pred, pred_file, "pred")?).map_err(invalid)?;
            let j = judge_specimen(&model, &class, &pred, sig, &theta, fuel).map_err(eval_failure)?;
            writeln!(out, "status: {:?}", j.status).map_err(io)?;
            writeln!(out, "ratio: {}", format_decimal(&j.ratio)).map_err(io)?;
            let rules: Vec<String> = j
                .rules
                .iter()
                .map(|r| match r {
                    Rule::Disjoint(q) => format!("Disjoint({q})"),
                    other => format!("{other:?}"),
                })
                .collect();
            writeln!(out, "rules: {}", if rules.is_empty() { "-".into() } else { rules.join(", ") }).map_err(io)?;
            for (rel, ratio) in &j.disjoint_ratios {
                writeln!(out, "disjoint: {rel} {}", format_decimal(ratio)).map_err(io)?;
            }
            Ok(())
        }
    }
}

fn render(lex: &Lexicon, r: &Reading, rank: usize, format: Format) -> String {
    let formula = extract_formula(&r.term, &lex.signature);
    let coercions: Vec<String> = r.coercions_used.iter().map(|(w, c)| format!("{w}:{c}")).collect();
    let insts: Vec<String> = r.instantiations.iter().map(|i| format!("{}.{} := {}", i.head, i.binder, i.ty)).collect();
    match format {
        Format::Text => {
            let list = |v: &[String]| if v.is_empty() { "-".to_string() } else { v.join(", ") };
            let formula = formula.map(|f| f.to_string()).unwrap_or_else(|e| format!("({e})"));
            format!(
                "#{rank} cost {}\n  coercions: {}\n  instantiations: {}\n  term: {}\n  formula: {formula}\n",
                r.cost,
                list(&coercions),
                list(&insts),
                r.term
            )
        }
        Format::Sexpr => {
            let coercions: Vec<String> = r.coercions_used.iter().map(|(w, c)| format!("({w} {c})")).collect();
            let insts: Vec<String> =
                r.instantiations.iter().map(|i| format!("({} {} {})", i.head, i.binder, i.ty)).collect();
            let formula = formula.map(|f| f.to_sexpr()).unwrap_or_else(|_| "nil".into());
            format!(
                "(reading {rank} (cost {}) (coercions{}) (instantiations{}) (formula {formula}))\n",
                r.cost,
                coercions.iter().map(|c| format!(" {c}")).collect::<String>(),
                insts.iter().map(|c| format!(" {c}")).collect::<String>(),
            )
        }
    }
}
