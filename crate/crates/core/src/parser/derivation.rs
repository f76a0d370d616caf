//! Ranked derivations from the packed chart and their translation back to
//! constituent structures over the input grammar.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use super::chart::{Cat, Chart, Deriv, Position, Rules};
use crate::cstructure::{Constituent, CStructure};
use crate::grammar::{AnnotationSet, Grammar};

/// One derivation tree over the normalised grammar.
#[derive(Debug)]
pub(crate) struct Tree {
    cat: Cat,
    deriv: Rule,
    kids: Vec<Rc<Tree>>,
    /// Nodes of the corresponding tree over the input grammar.
    cost: usize,
    /// Rule choices in preorder; the tie-breaker after `cost`.
    key: Vec<u32>,
}

#[derive(Clone, Copy, Debug)]
enum Rule {
    Lex(usize),
    Bin(usize),
}

fn rank(t: &Rc<Tree>) -> (usize, &[u32]) {
    (t.cost, &t.key)
}

/// The `k` best derivations of every item, by a fixpoint over the packed
/// forest (derivations may be cyclic through empty-yield items; every
/// cycle passes an input-grammar node, so costs are strictly increasing
/// around it and the iteration settles).
pub(crate) fn k_best<P: Position>(chart: &Chart<'_, P>, k: usize) -> Vec<Vec<Rc<Tree>>> {
    let rules = chart.rules;
    let mut best: Vec<Vec<Rc<Tree>>> = vec![Vec::new(); chart.items.len()];
    loop {
        let mut changed = false;
        for (ix, item) in chart.items.iter().enumerate() {
            let own = u32::from(rules.original[item.cat as usize]) as usize;
            let mut candidates: Vec<Rc<Tree>> = best[ix].clone();
            for d in &item.derivs {
                match *d {
                    Deriv::Lex(r) => candidates.push(Rc::new(Tree {
                        cat: item.cat,
                        deriv: Rule::Lex(r),
                        kids: Vec::new(),
                        cost: 2 * own,
                        key: vec![2 * r as u32],
                    })),
                    Deriv::Bin(r, a, b) => {
                        for x in &best[a] {
                            for y in &best[b] {
                                let mut key = Vec::with_capacity(1 + x.key.len() + y.key.len());
                                key.push(2 * r as u32 + 1);
                                key.extend_from_slice(&x.key);
                                key.extend_from_slice(&y.key);
                                candidates.push(Rc::new(Tree {
                                    cat: item.cat,
                                    deriv: Rule::Bin(r),
                                    kids: vec![x.clone(), y.clone()],
                                    cost: own + x.cost + y.cost,
                                    key,
                                }));
                            }
                        }
                    }
                }
            }
            let ranked = select(candidates, k);
            let same = ranked.len() == best[ix].len()
                && ranked.iter().zip(&best[ix]).all(|(x, y)| rank(x) == rank(y));
            if !same {
                best[ix] = ranked;
                changed = true;
            }
        }
        if !changed {
            return best;
        }
    }
}

/// The `k` smallest by `(cost, key)`, without repeated keys.
pub(crate) fn select(mut candidates: Vec<Rc<Tree>>, k: usize) -> Vec<Rc<Tree>> {
    candidates.sort_by(|x, y| rank(x).cmp(&rank(y)));
    candidates.dedup_by(|x, y| x.key == y.key);
    candidates.truncate(k);
    candidates
}

/// The constituent structure over `g` that a derivation over the
/// normalised grammar stands for: padding leaves disappear, binarised and
/// path-link nodes are spliced out.
pub(crate) fn to_cstructure(rules: &Rules, g: &Grammar, t: &Tree) -> CStructure {
    CStructure::from_root(&constituent(rules, g, t, AnnotationSet::new()))
}

fn constituent(rules: &Rules, g: &Grammar, t: &Tree, annotations: AnnotationSet) -> Constituent {
    let n = &rules.normalized;
    let category = rules.cats[t.cat as usize].clone();
    match t.deriv {
        Rule::Lex(r) => {
            let origin = n.lexicon_origin[r].expect("input-grammar lexicon rule");
            let l = &g.lexicon[origin];
            Constituent::node(category, annotations, vec![Constituent::leaf(l.terminal.clone(), l.annotations.clone())])
        }
        Rule::Bin(r) => {
            let origin = n.production_origin[r].expect("input-grammar production");
            let p = &g.productions[origin];
            let mut daughters = Vec::new();
            for kid in &t.kids {
                splice(rules, kid, &mut daughters);
            }
            assert_eq!(daughters.len(), p.rhs.len(), "normalised derivation does not match its production");
            let children = daughters
                .into_iter()
                .zip(&p.rhs)
                .map(|(d, spec)| constituent(rules, g, d, spec.annotations.clone()))
                .collect();
            Constituent::node(category, annotations, children)
        }
    }
}

fn splice<'t>(rules: &Rules, t: &'t Tree, out: &mut Vec<&'t Tree>) {
    if rules.original[t.cat as usize] {
        out.push(t);
    } else {
        for kid in &t.kids {
            splice(rules, kid, out);
        }
    }
}
