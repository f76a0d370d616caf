//! Recognition, parse enumeration and the bounded language enumerator.
//!
//! Membership is only semi-decidable in general: empty-yield subtrees and
//! same-span unary chains can grow without bound. The search therefore
//! caps same-position chains at [`SearchLimits::max_chain`] and the chart
//! size at [`SearchLimits::max_nodes`], and reports a cut-off search as
//! [`ParseError::LimitExceeded`] rather than as a rejection. Acceptance is
//! complete up to those bounds.
//!
//! The grammar is normalised internally; every witness is translated back
//! to the input grammar's rules and re-checked with
//! [`CStructure::generated_fs`].

mod chart;
mod derivation;
mod enumerate;

use alloc::collections::BTreeSet;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt;

use chart::{Chart, Position, Rules};
use derivation::{k_best, select, to_cstructure};

use crate::cstructure::{CStructure, TreeAddress};
use crate::fs::{FeatureStructure, Inconsistency};
use crate::grammar::{normalize_with_origin, Grammar, Violation};
use crate::Symbol;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchLimits {
    /// Longest chain of same-position derivation steps; `None` means twice
    /// the number of categories of the normalised grammar.
    pub max_chain: Option<usize>,
    pub max_parses: usize,
    /// Most chart items one search may create.
    pub max_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_chain: None,
            max_parses: 1,
            max_nodes: 2_000_000,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct LimitExceeded;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseError {
    InvalidGrammar(Vec<Violation>),
    UnknownToken(Symbol),
    /// The search was cut off by a limit before it could decide.
    LimitExceeded,
}

impl From<LimitExceeded> for ParseError {
    fn from(_: LimitExceeded) -> Self {
        ParseError::LimitExceeded
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::InvalidGrammar(v) => write!(f, "invalid grammar ({} violations)", v.len()),
            ParseError::UnknownToken(t) => write!(f, "token {t:?} is not a terminal of the grammar"),
            ParseError::LimitExceeded => f.write_str("limit_exceeded"),
        }
    }
}

/// A consistent constituent structure and the feature structure it
/// generates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Parse {
    pub tree: CStructure,
    pub fs: FeatureStructure<TreeAddress>,
}

/// Why a context-free analysis of a rejected string fails.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clash {
    pub tree: CStructure,
    pub inconsistency: Inconsistency<TreeAddress>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Recognition {
    Accept(Parse),
    /// No consistent c-structure exists. Carries the smallest
    /// c-structure for the string, ignoring the schemata, with its
    /// inconsistency; `None` when the string has no c-structure at all.
    Reject(Option<Clash>),
}

impl Recognition {
    pub fn is_accept(&self) -> bool {
        matches!(self, Recognition::Accept(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Span {
    Empty,
    Range(usize, usize),
}

impl Position for Span {
    fn empty() -> Self {
        Span::Empty
    }

    fn is_empty(&self) -> bool {
        *self == Span::Empty
    }
}

/// A grammar prepared for repeated parsing.
#[derive(Clone, Debug)]
pub struct Parser {
    grammar: Grammar,
    rules: Rules,
}

impl Parser {
    pub fn new(g: &Grammar) -> Result<Self, ParseError> {
        let normalized = normalize_with_origin(g).map_err(ParseError::InvalidGrammar)?;
        Ok(Parser {
            grammar: g.clone(),
            rules: Rules::new(normalized),
        })
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    /// The normalised grammar the chart runs on.
    pub fn normalized(&self) -> &Grammar {
        &self.rules.normalized.grammar
    }

    fn max_chain(&self, limits: &SearchLimits) -> usize {
        limits.max_chain.unwrap_or_else(|| self.rules.default_chain())
    }

    fn chart(&self, tokens: &[Symbol], limits: &SearchLimits, ignore_schemata: bool) -> Result<Chart<'_, Span>, ParseError> {
        if let Some(t) = tokens.iter().find(|t| !self.grammar.terminals.contains(*t)) {
            return Err(ParseError::UnknownToken(t.clone()));
        }
        let mut chart = Chart::new(&self.rules, self.max_chain(limits), limits.max_nodes, true, ignore_schemata);
        chart.close_empty()?;
        let n = tokens.len();
        for len in 1..=n {
            for i in 0..=n - len {
                let j = i + len;
                let pos = Span::Range(i, j);
                let mut created = Vec::new();
                if len == 1 {
                    chart.lexical_items(Some(&tokens[i]), &pos, &mut created)?;
                }
                for k in i + 1..j {
                    let left = chart.items_at(&Span::Range(i, k)).to_vec();
                    let right = chart.items_at(&Span::Range(k, j)).to_vec();
                    for &a in &left {
                        for &b in &right {
                            chart.combine(a, b, &pos, 0, &mut created)?;
                        }
                    }
                }
                chart.close_with_empties(created)?;
            }
        }
        Ok(chart)
    }

    fn whole(tokens: &[Symbol]) -> Span {
        if tokens.is_empty() {
            Span::Empty
        } else {
            Span::Range(0, tokens.len())
        }
    }

    fn best(&self, chart: &Chart<'_, Span>, pos: &Span, k: usize) -> Vec<CStructure> {
        let goals = chart.goals(pos);
        if goals.is_empty() {
            return Vec::new();
        }
        let best = k_best(chart, k);
        let all: Vec<Rc<_>> = goals.iter().flat_map(|&g| best[g].iter().cloned()).collect();
        select(all, k)
            .iter()
            .map(|t| to_cstructure(&self.rules, &self.grammar, t))
            .collect()
    }

    /// Up to `limits.max_parses` consistent c-structures for `tokens`,
    /// smallest first, then by rule choices.
    pub fn parse_all(&self, tokens: &[Symbol], limits: &SearchLimits) -> Result<Vec<Parse>, ParseError> {
        let chart = self.chart(tokens, limits, false)?;
        let trees = self.best(&chart, &Self::whole(tokens), limits.max_parses.max(1));
        let mut parses = Vec::new();
        let mut seen = BTreeSet::new();
        for tree in trees {
            if !seen.insert(tree.iter().map(|(a, n)| (a.clone(), n.clone().label)).collect::<Vec<_>>()) {
                continue;
            }
            match tree.generated_fs() {
                Ok(fs) => parses.push(Parse { tree, fs }),
                Err(e) => unreachable!("chart item is inconsistent: {e}"),
            }
        }
        if parses.is_empty() && chart.overflow {
            return Err(ParseError::LimitExceeded);
        }
        Ok(parses)
    }

    pub fn recognize(&self, tokens: &[Symbol], limits: &SearchLimits) -> Result<Recognition, ParseError> {
        let one = SearchLimits { max_parses: 1, ..*limits };
        if let Some(parse) = self.parse_all(tokens, &one)?.into_iter().next() {
            return Ok(Recognition::Accept(parse));
        }
        let backbone = self.chart(tokens, limits, true)?;
        let clash = self
            .best(&backbone, &Self::whole(tokens), 1)
            .into_iter()
            .next()
            .and_then(|tree| tree.generated_fs().err().map(|inconsistency| Clash { tree, inconsistency }));
        Ok(Recognition::Reject(clash))
    }

    /// Every string of at most `max_len` tokens with a consistent
    /// c-structure within the chain limit, found by closing over
    /// (category, yield, feature tree) triples bottom-up.
    pub fn enumerate(&self, max_len: usize, limits: &SearchLimits) -> Result<BTreeSet<Vec<Symbol>>, ParseError> {
        enumerate::strings(&self.rules, max_len, self.max_chain(limits), limits.max_nodes)
    }
}

pub fn recognize(g: &Grammar, tokens: &[Symbol], limits: &SearchLimits) -> Result<Recognition, ParseError> {
    Parser::new(g)?.recognize(tokens, limits)
}

pub fn parse_all(g: &Grammar, tokens: &[Symbol], limits: &SearchLimits) -> Result<Vec<Parse>, ParseError> {
    Parser::new(g)?.parse_all(tokens, limits)
}

pub fn enumerate(g: &Grammar, max_len: usize, limits: &SearchLimits) -> Result<BTreeSet<Vec<Symbol>>, ParseError> {
    Parser::new(g)?.enumerate(max_len, limits)
}
