//! Text formats for grammars, equation sets and transducers, dumps of
//! parse results, and the plumbing behind the `thfsg` command.

pub mod dump;
pub mod equations;
pub mod grammar_file;
pub mod limits;
mod scan;
pub mod tokens;
pub mod transducer_file;

pub use dump::{write_cstructure, write_fs};
pub use equations::{parse_equations, write_equations};
pub use grammar_file::{parse_grammar, write_grammar};
pub use limits::{limits_from_env, parse_limits, LimitsError, LIMITS_VAR};
pub use scan::{quote, SyntaxError};
pub use tokens::{format_tokens, parse_tokens};
pub use transducer_file::{parse_transducer, write_transducer};
