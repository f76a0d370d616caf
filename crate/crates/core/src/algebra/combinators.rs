use alloc::collections::BTreeSet;
use alloc::format;

use crate::grammar::{Daughter, FreshNames, Grammar, Schema};
use crate::Symbol;

/// A grammar for `L(g1) ∪ L(g2)`.
///
/// The second grammar's categories are prefixed `k!` when they meet the
/// first's symbols; the new start `S0!k` has one `↑ = ↓` rule per operand.
pub fn union(g1: &Grammar, g2: &Grammar) -> Grammar {
    let (g1, g2) = disjoint(g1, g2);
    let mut names = FreshNames::new(g1.symbols().into_iter().chain(g2.symbols()));
    let start = names.fresh("S0");
    let mut out = merge(&start, &g1, &g2);
    for s in [&g1.start, &g2.start] {
        out = out.production(start.clone(), [Daughter::new(s.clone(), [Schema::arrow::<_, &str>([])])]);
    }
    out
}

/// A grammar for `L(g1) L(g2)`: `S0 → S1 S2` with `↑ first = ↓` and
/// `↑ next = ↓`, the two attributes renamed when either operand uses them.
pub fn concat(g1: &Grammar, g2: &Grammar) -> Grammar {
    let (g1, g2) = disjoint(g1, g2);
    let mut names = FreshNames::new(g1.symbols().into_iter().chain(g2.symbols()));
    let start = names.fresh("S0");
    let (first, next) = link_attributes(&[&g1, &g2]);
    let out = merge(&start, &g1, &g2);
    out.production(
        start.clone(),
        [
            Daughter::new(g1.start.clone(), [Schema::arrow([first])]),
            Daughter::new(g2.start.clone(), [Schema::arrow([next])]),
        ],
    )
}

/// A grammar for `L(g)*`: `S0 → S S0` linked through `first`/`next`, and
/// `S0 → ε`.
pub fn star(g: &Grammar) -> Grammar {
    let mut names = FreshNames::new(g.symbols());
    let start = names.fresh("S0");
    let (first, next) = link_attributes(&[g]);
    let mut out = g.clone();
    out.start = start.clone();
    out.categories.insert(start.clone());
    out.production(
        start.clone(),
        [
            Daughter::new(g.start.clone(), [Schema::arrow([first])]),
            Daughter::new(start.clone(), [Schema::arrow([next])]),
        ],
    )
    .lexical(start, None, [])
}

/// `first` and `next`, or `first!k`/`next!k` when some grammar already
/// uses the plain spelling as an attribute.
fn link_attributes(grammars: &[&Grammar]) -> (Symbol, Symbol) {
    let used: BTreeSet<Symbol> = grammars.iter().flat_map(|g| g.attributes()).collect();
    let mut names = FreshNames::new(used);
    let first = names.fresh_or("first");
    let next = names.fresh_or("next");
    (first, next)
}

fn merge(start: &Symbol, g1: &Grammar, g2: &Grammar) -> Grammar {
    let mut out = Grammar::new(start.clone());
    out.categories.extend(g1.categories.iter().cloned());
    out.categories.extend(g2.categories.iter().cloned());
    out.terminals.extend(g1.terminals.iter().cloned());
    out.terminals.extend(g2.terminals.iter().cloned());
    out.productions.extend(g1.productions.iter().cloned());
    out.productions.extend(g2.productions.iter().cloned());
    out.lexicon.extend(g1.lexicon.iter().cloned());
    out.lexicon.extend(g2.lexicon.iter().cloned());
    out
}

/// Renames categories so that neither grammar's categories meet the other's
/// categories or terminals.
fn disjoint(g1: &Grammar, g2: &Grammar) -> (Grammar, Grammar) {
    let mut g1 = g1.clone();
    let mut g2 = g2.clone();
    let meets = |a: &Grammar, b: &Grammar| {
        a.categories
            .iter()
            .any(|c| b.categories.contains(c) || b.terminals.contains(c))
    };
    if meets(&g2, &g1) {
        let k = free_prefix(2, &g1, &g2);
        g2 = rename_categories(&g2, |c| Symbol::from(format!("{k}!{c}")));
    }
    if meets(&g1, &g2) {
        let k = free_prefix(1, &g1, &g2);
        g1 = rename_categories(&g1, |c| Symbol::from(format!("{k}!{c}")));
    }
    (g1, g2)
}

fn free_prefix(from: usize, g1: &Grammar, g2: &Grammar) -> usize {
    let used: BTreeSet<Symbol> = g1.symbols().into_iter().chain(g2.symbols()).collect();
    let candidates = g1.categories.iter().chain(&g2.categories);
    (from..)
        .find(|k| {
            candidates
                .clone()
                .all(|c| !used.contains(format!("{k}!{c}").as_str()))
        })
        .expect("unbounded counter")
}

pub(crate) fn rename_categories(g: &Grammar, f: impl Fn(&Symbol) -> Symbol) -> Grammar {
    let mut out = g.clone();
    out.start = f(&g.start);
    out.categories = g.categories.iter().map(&f).collect();
    for p in &mut out.productions {
        p.lhs = f(&p.lhs);
        for d in &mut p.rhs {
            d.category = f(&d.category);
        }
    }
    for l in &mut out.lexicon {
        l.lhs = f(&l.lhs);
    }
    out
}
