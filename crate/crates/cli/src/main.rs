use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser as ClapParser, Subcommand, ValueEnum};
use thiserror::Error;

use thfsg::{
    format_tokens, limits_from_env, parse_equations, parse_grammar, parse_limits, parse_tokens, parse_transducer,
    write_cstructure, write_fs, write_grammar, write_transducer, LimitsError, SyntaxError,
};
use thfsg_core::algebra::{self, AlgebraError};
use thfsg_core::fs::describe;
use thfsg_core::grammar::{is_normal_form, normalize, validate, Grammar, Violation};
use thfsg_core::parser::{ParseError, Parser, Recognition, SearchLimits};

const ACCEPT: u8 = 0;
const REJECT: u8 = 1;
const INVALID: u8 = 2;
const BAD_INPUT: u8 = 3;
const LIMIT: u8 = 4;

/// Tree homomorphic feature structure grammars: validation, parsing,
/// enumeration and closure constructions.
#[derive(ClapParser)]
#[command(name = "thfsg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a grammar file for structural violations.
    Validate { grammar: PathBuf },
    /// Decide whether a token string is in the language of a grammar.
    Parse {
        grammar: PathBuf,
        /// Whitespace-separated tokens; quote multiword tokens with '...'.
        #[arg(long)]
        input: String,
        /// Print the c-structure of each parse.
        #[arg(long)]
        dump_tree: bool,
        /// Print the feature structure of each parse.
        #[arg(long)]
        dump_fs: bool,
        /// Search limits as chain=K,nodes=N,parses=P.
        #[arg(long)]
        limits: Option<String>,
    },
    /// List every string of the language up to a length, sorted.
    Enumerate {
        grammar: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        limits: Option<String>,
    },
    /// Build the grammar for the union, concatenation or Kleene closure.
    Combine {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(required = true)]
        grammars: Vec<PathBuf>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Finite transducers: run, invert, or map a grammar's language.
    Nft {
        #[command(subcommand)]
        action: NftAction,
    },
    /// Rewrite a grammar into normal form.
    Normalize {
        grammar: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Print the least feature structure satisfying an equation file.
    Describe { equations: PathBuf },
}

#[derive(Subcommand)]
enum NftAction {
    /// Print every output for a token string.
    Apply {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        input: String,
        /// Longest output explored.
        #[arg(long, default_value_t = 64)]
        max_out: usize,
    },
    /// Write the transducer for the inverse relation.
    Invert {
        #[arg(long)]
        machine: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Write a grammar for the image of a grammar's language.
    Image {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        grammar: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Union,
    Concat,
    Star,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Syntax { path: PathBuf, source: SyntaxError },
    #[error("--input: {0}")]
    Tokens(SyntaxError),
    #[error(transparent)]
    Limits(#[from] LimitsError),
    #[error("{}: invalid grammar:{}", path.display(), listing(.violations))]
    Invalid { path: PathBuf, violations: Vec<Violation> },
    #[error("{0}")]
    Algebra(AlgebraError),
    #[error("star takes exactly one grammar")]
    StarArity,
    #[error("limit_exceeded")]
    LimitExceeded,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid { .. } | Failure::Algebra(_) => INVALID,
            Failure::LimitExceeded => LIMIT,
            _ => BAD_INPUT,
        }
    }
}

fn listing(violations: &[Violation]) -> String {
    violations.iter().map(|v| format!("\n  {v}")).collect()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|source| Failure::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_grammar(path: &Path) -> Result<Grammar, Failure> {
    parse_grammar(&read(path)?).map_err(|source| Failure::Syntax {
        path: path.to_path_buf(),
        source,
    })
}

fn load_valid_grammar(path: &Path) -> Result<Grammar, Failure> {
    let g = load_grammar(path)?;
    let violations = validate(&g);
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(Failure::Invalid {
            path: path.to_path_buf(),
            violations,
        })
    }
}

fn load_transducer(path: &Path) -> Result<algebra::Transducer, Failure> {
    parse_transducer(&read(path)?).map_err(|source| Failure::Syntax {
        path: path.to_path_buf(),
        source,
    })
}

fn limits(flag: &Option<String>) -> Result<SearchLimits, Failure> {
    let base = limits_from_env()?;
    Ok(match flag {
        Some(text) => parse_limits(text, base)?,
        None => base,
    })
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Failure::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_failure(e: ParseError, path: &Path) -> Failure {
    match e {
        ParseError::InvalidGrammar(violations) => Failure::Invalid {
            path: path.to_path_buf(),
            violations,
        },
        _ => Failure::LimitExceeded,
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Validate { grammar } => {
            let g = load_grammar(&grammar)?;
            let violations = validate(&g);
            for v in &violations {
                eprintln!("{v}");
            }
            Ok(if violations.is_empty() { ACCEPT } else { INVALID })
        }
        Command::Parse {
            grammar,
            input,
            dump_tree,
            dump_fs,
            limits: flag,
        } => {
            let limits = limits(&flag)?;
            let g = load_valid_grammar(&grammar)?;
            let tokens = parse_tokens(&input).map_err(Failure::Tokens)?;
            let parser = Parser::new(&g).map_err(|e| parse_failure(e, &grammar))?;
            let first = match parser.recognize(&tokens, &limits) {
                Ok(Recognition::Accept(p)) => p,
                Ok(Recognition::Reject(clash)) => {
                    eprintln!("reject");
                    if let Some(clash) = clash {
                        eprintln!("clash: {}", clash.inconsistency);
                        eprint!("{}", write_cstructure(&clash.tree));
                    }
                    return Ok(REJECT);
                }
                Err(ParseError::UnknownToken(t)) => {
                    eprintln!("reject: unknown token {}", format_tokens(&[t]));
                    return Ok(REJECT);
                }
                Err(e) => return Err(parse_failure(e, &grammar)),
            };
            let parses = if limits.max_parses > 1 {
                parser.parse_all(&tokens, &limits).map_err(|e| parse_failure(e, &grammar))?
            } else {
                vec![first]
            };
            println!("accept");
            for p in &parses {
                if dump_tree {
                    print!("\n{}", write_cstructure(&p.tree));
                }
                if dump_fs {
                    print!("\n{}", write_fs(&p.fs));
                }
            }
            Ok(ACCEPT)
        }
        Command::Enumerate {
            grammar,
            max_len,
            limits: flag,
        } => {
            let limits = limits(&flag)?;
            let g = load_valid_grammar(&grammar)?;
            let strings = Parser::new(&g)
                .and_then(|p| p.enumerate(max_len, &limits))
                .map_err(|e| parse_failure(e, &grammar))?;
            for w in strings {
                println!("{}", format_tokens(&w));
            }
            Ok(ACCEPT)
        }
        Command::Combine { op, grammars, o } => {
            let gs = grammars
                .iter()
                .map(|p| load_valid_grammar(p))
                .collect::<Result<Vec<_>, _>>()?;
            let out = match op {
                Op::Star if gs.len() == 1 => algebra::star(&gs[0]),
                Op::Star => return Err(Failure::StarArity),
                Op::Union => gs[1..].iter().fold(gs[0].clone(), |acc, g| algebra::union(&acc, g)),
                Op::Concat => gs[1..].iter().fold(gs[0].clone(), |acc, g| algebra::concat(&acc, g)),
            };
            emit(&write_grammar(&out), &o)?;
            Ok(ACCEPT)
        }
        Command::Nft { action } => match action {
            NftAction::Apply { machine, input, max_out } => {
                let m = load_transducer(&machine)?;
                let tokens = parse_tokens(&input).map_err(Failure::Tokens)?;
                let outputs = algebra::nft_outputs(&m, &tokens, max_out);
                for x in &outputs.strings {
                    println!("{}", format_tokens(x));
                }
                if outputs.truncated {
                    eprintln!("outputs longer than {max_out} symbols were dropped");
                }
                Ok(ACCEPT)
            }
            NftAction::Invert { machine, o } => {
                let m = load_transducer(&machine)?;
                emit(&write_transducer(&algebra::nft_invert(&m)), &o)?;
                Ok(ACCEPT)
            }
            NftAction::Image { machine, grammar, o } => {
                let m = load_transducer(&machine)?;
                let g = load_valid_grammar(&grammar)?;
                let g = if is_normal_form(&g) { g } else { normalize(&g).expect("validated") };
                let image = algebra::nft_image_grammar(&g, &m).map_err(Failure::Algebra)?;
                emit(&write_grammar(&image), &o)?;
                Ok(ACCEPT)
            }
        },
        Command::Normalize { grammar, o } => {
            let g = load_valid_grammar(&grammar)?;
            emit(&write_grammar(&normalize(&g).expect("validated")), &o)?;
            Ok(ACCEPT)
        }
        Command::Describe { equations } => {
            let eqs = parse_equations(&read(&equations)?).map_err(|source| Failure::Syntax {
                path: equations.clone(),
                source,
            })?;
            match describe(&eqs) {
                Ok(fs) => {
                    print!("{}", write_fs(&fs));
                    Ok(ACCEPT)
                }
                Err(e) => {
                    eprintln!("inconsistent: {e}");
                    Ok(REJECT)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { BAD_INPUT } else { ACCEPT });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
