//! Equation files: one `name p1 … = name q1 …` or `name p1 … = #v` per line.

use thfsg_core::fs::{Equation, Term};
use thfsg_core::Symbol;

use crate::scan::{lines, Line, SyntaxError};

const STOPS: &[char] = &['='];

pub fn parse_equations(text: &str) -> Result<Vec<Equation<Symbol>>, SyntaxError> {
    let mut out = Vec::new();
    for mut line in lines(text) {
        let lhs = term(&mut line)?;
        line.expect("=")?;
        let eq = if line.eat("#") {
            Equation::value(lhs, Symbol::new(line.word("value", STOPS)?))
        } else {
            Equation::path(lhs, term(&mut line)?)
        };
        line.finish()?;
        out.push(eq);
    }
    Ok(out)
}

fn term(line: &mut Line<'_>) -> Result<Term<Symbol>, SyntaxError> {
    let name = Symbol::new(line.word("name", STOPS)?);
    let mut path = Vec::new();
    while !line.at_end() && line.peek() != Some('=') {
        path.push(Symbol::new(line.word("attribute", STOPS)?));
    }
    Ok(Term::new(name, path))
}

/// One equation per line, in the order given.
pub fn write_equations(eqs: &[Equation<Symbol>]) -> String {
    eqs.iter().map(|e| format!("{e}\n")).collect()
}
