use alloc::vec::Vec;
use core::fmt;

use super::model::{Grammar, Schema};
use crate::Symbol;

/// Where a violation was found.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleRef {
    Grammar,
    Production(usize),
    Lexicon(usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Constraint {
    StartNotACategory(Symbol),
    CategoryIsTerminal(Symbol),
    UndeclaredCategory(Symbol),
    UndeclaredTerminal(Symbol),
    EmptyRightHandSide,
    /// A production daughter needs exactly one `↑ … = ↓` schema.
    ArrowCount { daughter: usize, found: usize },
    /// Lexicon annotation sets hold value schemata only.
    ArrowInLexicon,
    /// `↑ = v` needs at least one attribute.
    EmptyValuePath { daughter: Option<usize> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub rule: RuleRef,
    pub constraint: Constraint,
}

impl fmt::Display for RuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleRef::Grammar => f.write_str("grammar"),
            RuleRef::Production(i) => write!(f, "production {}", i + 1),
            RuleRef::Lexicon(i) => write!(f, "lexicon rule {}", i + 1),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.rule)?;
        match &self.constraint {
            Constraint::StartNotACategory(s) => write!(f, "start symbol {s} is not a declared category"),
            Constraint::CategoryIsTerminal(s) => write!(f, "{s} is declared both as category and terminal"),
            Constraint::UndeclaredCategory(s) => write!(f, "category {s} is not declared"),
            Constraint::UndeclaredTerminal(s) => write!(f, "terminal {s:?} is not declared"),
            Constraint::EmptyRightHandSide => f.write_str("production has no daughters"),
            Constraint::ArrowCount { daughter, found } => write!(
                f,
                "daughter {} has {found} schemata of the form ^ ... = _ (exactly one required)",
                daughter + 1
            ),
            Constraint::ArrowInLexicon => f.write_str("lexicon annotations may not contain ^ ... = _"),
            Constraint::EmptyValuePath { daughter: Some(d) } => {
                write!(f, "daughter {} has a value schema with an empty path", d + 1)
            }
            Constraint::EmptyValuePath { daughter: None } => f.write_str("value schema with an empty path"),
        }
    }
}

/// Checks every structural constraint of the formalism; an empty result
/// means the grammar is well formed.
pub fn validate(g: &Grammar) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |rule, constraint| out.push(Violation { rule, constraint });

    if !g.categories.contains(&g.start) {
        push(RuleRef::Grammar, Constraint::StartNotACategory(g.start.clone()));
    }
    for c in g.categories.intersection(&g.terminals) {
        push(RuleRef::Grammar, Constraint::CategoryIsTerminal(c.clone()));
    }

    for (i, p) in g.productions.iter().enumerate() {
        let rule = RuleRef::Production(i);
        if !g.categories.contains(&p.lhs) {
            push(rule, Constraint::UndeclaredCategory(p.lhs.clone()));
        }
        if p.rhs.is_empty() {
            push(rule, Constraint::EmptyRightHandSide);
        }
        for (d, daughter) in p.rhs.iter().enumerate() {
            if !g.categories.contains(&daughter.category) {
                push(rule, Constraint::UndeclaredCategory(daughter.category.clone()));
            }
            let found = daughter.annotations.arrows().count();
            if found != 1 {
                push(rule, Constraint::ArrowCount { daughter: d, found });
            }
            if daughter
                .annotations
                .iter()
                .any(|s| matches!(s, Schema::Value(path, _) if path.is_empty()))
            {
                push(rule, Constraint::EmptyValuePath { daughter: Some(d) });
            }
        }
    }

    for (i, l) in g.lexicon.iter().enumerate() {
        let rule = RuleRef::Lexicon(i);
        if !g.categories.contains(&l.lhs) {
            push(rule, Constraint::UndeclaredCategory(l.lhs.clone()));
        }
        if let Some(t) = &l.terminal {
            if !g.terminals.contains(t) {
                push(rule, Constraint::UndeclaredTerminal(t.clone()));
            }
        }
        if l.annotations.arrows().next().is_some() {
            push(rule, Constraint::ArrowInLexicon);
        }
        if l.annotations.iter().any(|s| matches!(s, Schema::Value(path, _) if path.is_empty())) {
            push(rule, Constraint::EmptyValuePath { daughter: None });
        }
    }
    out
}
