//! `regeq`: regular expressions under derivative semantics.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use regeq::automaton::{explore, export_dot, Dfa, ExploreError};
use regeq::bisim::{bisimilar_k, decide_equiv_with_cap, EquivError, EquivResult, DEFAULT_PAIR_CAP};
use regeq::language::{enumerate, member};
use regeq::semantics::{delta_word, denotational, operational};
use regeq::syntax::{normalize, parse, print, AlphabetError, ParseError};
use regeq::{Alphabet, Exp, Word};
use thiserror::Error;

const DEFAULT_ALPHABET: &str = "ab";

#[derive(Parser)]
#[command(
    name = "regeq",
    version,
    about = "Regular expressions under Brzozowski derivative semantics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the syntax tree of an expression
    Parse { expr: String },
    /// Decide membership of a word under both semantics
    Match {
        expr: String,
        /// Word of single-character symbols; "" or ε is the empty word
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Derivative of an expression along a word
    Derive {
        expr: String,
        word: String,
        /// Only the unsimplified derivative
        #[arg(long, conflicts_with = "norm")]
        raw: bool,
        /// Only the normalized derivative
        #[arg(long)]
        norm: bool,
    },
    /// List member words up to a length, shortest first
    Enum {
        expr: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Decide language equivalence of two expressions
    Equiv {
        e1: String,
        e2: String,
        /// Depth of the bisimilarity cross-check on the verdict
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Maximum number of state pairs to relate
        #[arg(long, default_value_t = DEFAULT_PAIR_CAP)]
        cap: usize,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
    /// Build the derivative automaton
    Dfa {
        expr: String,
        /// Maximum number of states
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        /// Emit Graphviz DOT instead of a transition table
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        alphabet: AlphabetArg,
    },
}

#[derive(Args)]
struct AlphabetArg {
    /// Symbols, in order [default: "ab" plus any other symbol of the input]
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("in {0:?}: {1}")]
    Parse(String, ParseError),
    #[error("alphabet: {0}")]
    Alphabet(#[from] AlphabetError),
    #[error("symbol {symbol:?} of {word:?} is not in the alphabet {alphabet:?}")]
    Foreign {
        symbol: char,
        word: String,
        alphabet: String,
    },
    #[error("--cap must be at least 1")]
    ZeroCap,
    #[error(transparent)]
    Explore(#[from] ExploreError),
    #[error(transparent)]
    Budget(#[from] EquivError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(..)
            | CliError::Alphabet(_)
            | CliError::Foreign { .. }
            | CliError::ZeroCap => 2,
            CliError::Explore(_) | CliError::Budget(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

/// Standard output plus the verdict: `true` exits 0, `false` exits 1.
struct Outcome {
    text: String,
    positive: bool,
}

impl Outcome {
    fn success(text: String) -> Self {
        Outcome {
            text,
            positive: true,
        }
    }
}

fn expression(text: &str) -> Result<Exp<char>, CliError> {
    parse(text).map_err(|err| CliError::Parse(text.to_string(), err))
}

/// The explicit alphabet, or `"ab"` followed by any other symbol that
/// occurs in `exprs` or `words`, in order of appearance.
fn alphabet(
    arg: &AlphabetArg,
    exprs: &[&Exp<char>],
    words: &[&str],
) -> Result<Alphabet<char>, CliError> {
    let alphabet = match &arg.alphabet {
        Some(text) => Alphabet::from_text(text)?,
        None => {
            let mut symbols: Vec<char> = DEFAULT_ALPHABET.chars().collect();
            let used = exprs
                .iter()
                .flat_map(|e| e.symbols())
                .chain(words.iter().flat_map(|w| Word::from_text(w).into_vec()));
            for a in used {
                if !symbols.contains(&a) {
                    symbols.push(a);
                }
            }
            Alphabet::new(symbols)?
        }
    };
    for word in words {
        if let Some(&symbol) = Word::from_text(word).iter().find(|a| !alphabet.contains(a)) {
            return Err(CliError::Foreign {
                symbol,
                word: word.to_string(),
                alphabet: alphabet.iter().collect(),
            });
        }
    }
    Ok(alphabet)
}

fn tree(e: &Exp<char>) -> String {
    fn go(e: &Exp<char>, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        // writing into a String cannot fail
        let _ = match e {
            Exp::Zero => writeln!(out, "{pad}Zero"),
            Exp::One => writeln!(out, "{pad}One"),
            Exp::Char(a) => writeln!(out, "{pad}Char {a}"),
            Exp::Plus(..) => writeln!(out, "{pad}Plus"),
            Exp::Comp(..) => writeln!(out, "{pad}Comp"),
            Exp::Star(_) => writeln!(out, "{pad}Star"),
        };
        match e {
            Exp::Zero | Exp::One | Exp::Char(_) => {}
            Exp::Plus(l, r) | Exp::Comp(l, r) => {
                go(l, indent + 1, out);
                go(r, indent + 1, out);
            }
            Exp::Star(inner) => go(inner, indent + 1, out),
        }
    }
    let mut out = String::new();
    go(e, 0, &mut out);
    out
}

fn verdict(accepted: bool) -> &'static str {
    if accepted {
        "accept"
    } else {
        "reject"
    }
}

fn table(dfa: &Dfa<char>) -> String {
    let mut out = String::new();
    for (i, state) in dfa.states().iter().enumerate() {
        let marker = if dfa.is_accepting(i) { "*" } else { " " };
        let _ = write!(out, "{marker}s{i}");
        for (index, a) in dfa.alphabet().iter().enumerate() {
            let _ = write!(out, " {a}->s{}", dfa.next_by_index(i, index));
        }
        let _ = writeln!(out, "  {}", print(state));
    }
    out
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Parse { expr } => Ok(Outcome::success(tree(&expression(&expr)?))),
        Command::Match {
            expr,
            word,
            alphabet: arg,
        } => {
            let e = expression(&expr)?;
            alphabet(&arg, &[&e], &[&word])?;
            let w = Word::from_text(&word);
            let den = member(&denotational(&e), &w);
            let op = member(&operational(&e), &w);
            if den != op {
                return Err(CliError::Internal(format!(
                    "semantics disagree on {w}: denotational={}, operational={}",
                    verdict(den),
                    verdict(op)
                )));
            }
            Ok(Outcome {
                text: format!(
                    "{} (denotational={}, operational={})\n",
                    verdict(den),
                    verdict(den),
                    verdict(op)
                ),
                positive: den,
            })
        }
        Command::Derive {
            expr,
            word,
            raw,
            norm,
        } => {
            let e = expression(&expr)?;
            let d = delta_word(&e, &Word::from_text(&word));
            let text = match (raw, norm) {
                (true, _) => format!("{d}\n"),
                (_, true) => format!("{}\n", normalize(&d)),
                _ => format!("raw:  {d}\nnorm: {}\n", normalize(&d)),
            };
            Ok(Outcome::success(text))
        }
        Command::Enum {
            expr,
            max_len,
            alphabet: arg,
        } => {
            let e = expression(&expr)?;
            let sigma = alphabet(&arg, &[&e], &[])?;
            let mut text = String::new();
            for w in enumerate(&denotational(&e), &sigma, max_len) {
                let _ = writeln!(text, "{w}");
            }
            Ok(Outcome::success(text))
        }
        Command::Equiv {
            e1,
            e2,
            depth,
            cap,
            alphabet: arg,
        } => {
            let (x, y) = (expression(&e1)?, expression(&e2)?);
            let sigma = alphabet(&arg, &[&x, &y], &[])?;
            let result = decide_equiv_with_cap(&x, &y, &sigma, cap)?;
            // a verdict must be consistent with the bounded unrolling
            let expected = match &result {
                EquivResult::Equivalent => true,
                EquivResult::Distinguished { witness } => witness.len() >= depth,
            };
            if bisimilar_k(depth, &denotational(&x), &denotational(&y), &sigma) != expected {
                return Err(CliError::Internal(format!(
                    "verdict {result:?} contradicts depth-{depth} bisimilarity"
                )));
            }
            Ok(match result {
                EquivResult::Equivalent => Outcome::success("EQUIVALENT\n".into()),
                EquivResult::Distinguished { witness } => Outcome {
                    text: format!("NOT EQUIVALENT; witness: {witness}\n"),
                    positive: false,
                },
            })
        }
        Command::Dfa {
            expr,
            cap,
            dot,
            alphabet: arg,
        } => {
            if cap == 0 {
                return Err(CliError::ZeroCap);
            }
            let e = expression(&expr)?;
            let sigma = alphabet(&arg, &[&e], &[])?;
            let dfa = explore(&e, &sigma, cap)?;
            let text = if dot {
                export_dot(&dfa, &print(&e))
            } else {
                table(&dfa)
            };
            Ok(Outcome::success(text))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(if outcome.positive { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("regeq: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
