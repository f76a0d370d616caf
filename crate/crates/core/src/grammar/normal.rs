//! Normal form: binary productions whose arrow schemata carry at most one
//! attribute.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::fresh::FreshNames;
use super::model::{AnnotationSet, Daughter, Grammar, LexiconRule, Production, Schema};
use super::validate::{validate, Violation};
use crate::Symbol;

/// True when every production has exactly two daughters and every arrow
/// schema has a path of length at most one.
pub fn is_normal_form(g: &Grammar) -> bool {
    g.productions.iter().all(|p| {
        p.rhs.len() == 2 && p.rhs.iter().all(|d| d.annotations.arrows().all(|path| path.len() <= 1))
    })
}

/// Role of a category introduced by [`normalize`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum FreshRole {
    /// `K'ᵢ,ⱼ` of an arrow-path chain.
    PathLink,
    /// `K'ᵢ` of a right-binarised production.
    Binarized,
    /// The empty-string category padding unary productions.
    EmptyPad,
}

/// The normalised grammar together with how it maps back onto the input.
#[derive(Clone, Debug)]
pub(crate) struct Normalized {
    pub grammar: Grammar,
    /// For each output production: the input production it starts, when it
    /// is the topmost rule of that production's rewrite.
    pub production_origin: Vec<Option<usize>>,
    /// For each output lexicon rule: the input lexicon rule, `None` for the pad.
    pub lexicon_origin: Vec<Option<usize>>,
    pub roles: BTreeMap<Symbol, FreshRole>,
}

/// An equivalent grammar in normal form.
///
/// Applies, in order: (i) each arrow schema `↑ a1 … an = ↓` with `n > 1` is
/// cut to `↑ a1 = ↓` on a new category heading a chain of unary rules
/// carrying `↑ aj = ↓`; (ii) productions with more than two daughters are
/// right-binarised through new categories annotated `↑ = ↓`; (iii) every
/// unary production gets a new empty daughter annotated `↑ = ↓`, with the
/// lexicon rule rewriting it to the empty string. A grammar already in
/// normal form comes back unchanged.
pub fn normalize(g: &Grammar) -> Result<Grammar, Vec<Violation>> {
    normalize_with_origin(g).map(|n| n.grammar)
}

pub(crate) fn normalize_with_origin(g: &Grammar) -> Result<Normalized, Vec<Violation>> {
    let violations = validate(g);
    if !violations.is_empty() {
        return Err(violations);
    }
    let mut names = FreshNames::new(g.symbols());
    let mut roles = BTreeMap::new();
    let mut categories = g.categories.clone();

    // (i) arrow paths longer than one attribute
    let mut stage: Vec<(Production, Option<usize>)> = Vec::new();
    for (index, p) in g.productions.iter().enumerate() {
        let mut head = p.clone();
        let mut links = Vec::new();
        for daughter in head.rhs.iter_mut() {
            let path = daughter.annotations.arrow_path().expect("validated").to_vec();
            if path.len() <= 1 {
                continue;
            }
            let target = daughter.category.clone();
            let chain: Vec<Symbol> = (1..path.len()).map(|_| names.fresh(&target)).collect();
            for c in &chain {
                roles.insert(c.clone(), FreshRole::PathLink);
                categories.insert(c.clone());
            }
            daughter.annotations.remove(&Schema::Arrow(path.clone()));
            daughter.annotations.insert(Schema::Arrow(vec![path[0].clone()]));
            daughter.category = chain[0].clone();
            for j in 1..path.len() {
                let next = chain.get(j).cloned().unwrap_or_else(|| target.clone());
                links.push(Production {
                    lhs: chain[j - 1].clone(),
                    rhs: vec![Daughter {
                        category: next,
                        annotations: AnnotationSet::from_iter([Schema::Arrow(vec![path[j].clone()])]),
                    }],
                });
            }
        }
        stage.push((head, Some(index)));
        stage.extend(links.into_iter().map(|l| (l, None)));
    }

    // (ii) right-binarisation
    let mut binary: Vec<(Production, Option<usize>)> = Vec::new();
    for (p, origin) in stage {
        let m = p.rhs.len();
        if m <= 2 {
            binary.push((p, origin));
            continue;
        }
        let fresh: Vec<Symbol> = (2..m).map(|_| names.fresh(&p.lhs)).collect();
        for c in &fresh {
            roles.insert(c.clone(), FreshRole::Binarized);
            categories.insert(c.clone());
        }
        let pass = |category: &Symbol| Daughter {
            category: category.clone(),
            annotations: AnnotationSet::identity(),
        };
        let mut rhs = p.rhs.into_iter();
        let first = rhs.next().expect("m > 2");
        binary.push((
            Production {
                lhs: p.lhs.clone(),
                rhs: vec![first, pass(&fresh[0])],
            },
            origin,
        ));
        for (i, daughter) in rhs.by_ref().take(m - 3).enumerate() {
            binary.push((
                Production {
                    lhs: fresh[i].clone(),
                    rhs: vec![daughter, pass(&fresh[i + 1])],
                },
                None,
            ));
        }
        let tail: Vec<Daughter> = rhs.collect();
        binary.push((
            Production {
                lhs: fresh[m - 3].clone(),
                rhs: tail,
            },
            None,
        ));
    }

    // (iii) pad unary productions with the empty category
    let mut pad: Option<Symbol> = None;
    let mut productions = Vec::with_capacity(binary.len());
    let mut production_origin = Vec::with_capacity(binary.len());
    for (mut p, origin) in binary {
        if p.rhs.len() == 1 {
            let empty = pad
                .get_or_insert_with(|| {
                    let s = names.fresh("eps");
                    roles.insert(s.clone(), FreshRole::EmptyPad);
                    categories.insert(s.clone());
                    s
                })
                .clone();
            p.rhs.push(Daughter {
                category: empty,
                annotations: AnnotationSet::identity(),
            });
        }
        productions.push(p);
        production_origin.push(origin);
    }

    let mut lexicon = g.lexicon.clone();
    let mut lexicon_origin: Vec<Option<usize>> = (0..lexicon.len()).map(Some).collect();
    if let Some(empty) = pad {
        lexicon.push(LexiconRule {
            lhs: empty,
            terminal: None,
            annotations: AnnotationSet::new(),
        });
        lexicon_origin.push(None);
    }

    Ok(Normalized {
        grammar: Grammar {
            categories,
            start: g.start.clone(),
            terminals: g.terminals.clone(),
            productions,
            lexicon,
        },
        production_origin,
        lexicon_origin,
        roles,
    })
}
