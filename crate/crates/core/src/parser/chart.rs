//! Bottom-up chart over the normalised grammar.
//!
//! An item is a category, a position (an input span, or a yield when
//! enumerating) and the feature tree hanging from the item's root node.
//! Items with the empty yield are shared by every position. Derivations
//! that only add empty-yield material on top of an item at the same
//! position form chains; their length is capped by the chain limit.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::LimitExceeded;
use crate::fs::{TreeId, TreeStore};
use crate::grammar::{AnnotationSet, Normalized};
use crate::Symbol;

pub(crate) type Cat = u32;

#[derive(Clone, Debug)]
pub(crate) struct Binary {
    pub lhs: Cat,
    pub left: Cat,
    pub right: Cat,
}

#[derive(Clone, Debug)]
pub(crate) struct Lexical {
    pub lhs: Cat,
    pub terminal: Option<Symbol>,
}

/// The normalised grammar indexed for the chart.
#[derive(Clone, Debug)]
pub(crate) struct Rules {
    pub normalized: Normalized,
    pub cats: Vec<Symbol>,
    pub start: Cat,
    pub binary: Vec<Binary>,
    pub lexical: Vec<Lexical>,
    /// `true` for categories of the input grammar, `false` for the ones
    /// normalisation introduced.
    pub original: Vec<bool>,
    by_pair: BTreeMap<(Cat, Cat), Vec<usize>>,
    by_left: BTreeMap<Cat, Vec<usize>>,
    by_right: BTreeMap<Cat, Vec<usize>>,
    by_terminal: BTreeMap<Option<Symbol>, Vec<usize>>,
}

impl Rules {
    pub fn new(normalized: Normalized) -> Self {
        let g = &normalized.grammar;
        let cats: Vec<Symbol> = g.categories.iter().cloned().collect();
        let id = |s: &Symbol| cats.binary_search(s).expect("declared category") as Cat;
        let binary: Vec<Binary> = g
            .productions
            .iter()
            .map(|p| Binary {
                lhs: id(&p.lhs),
                left: id(&p.rhs[0].category),
                right: id(&p.rhs[1].category),
            })
            .collect();
        let lexical: Vec<Lexical> = g
            .lexicon
            .iter()
            .map(|l| Lexical {
                lhs: id(&l.lhs),
                terminal: l.terminal.clone(),
            })
            .collect();
        let mut by_pair: BTreeMap<(Cat, Cat), Vec<usize>> = BTreeMap::new();
        let mut by_left: BTreeMap<Cat, Vec<usize>> = BTreeMap::new();
        let mut by_right: BTreeMap<Cat, Vec<usize>> = BTreeMap::new();
        for (i, b) in binary.iter().enumerate() {
            by_pair.entry((b.left, b.right)).or_default().push(i);
            by_left.entry(b.left).or_default().push(i);
            by_right.entry(b.right).or_default().push(i);
        }
        let mut by_terminal: BTreeMap<Option<Symbol>, Vec<usize>> = BTreeMap::new();
        for (i, l) in lexical.iter().enumerate() {
            by_terminal.entry(l.terminal.clone()).or_default().push(i);
        }
        let original = cats.iter().map(|c| !normalized.roles.contains_key(c)).collect();
        let start = id(&g.start);
        Rules {
            cats,
            start,
            binary,
            lexical,
            original,
            by_pair,
            by_left,
            by_right,
            by_terminal,
            normalized,
        }
    }

    pub fn default_chain(&self) -> usize {
        2 * self.cats.len()
    }

    pub fn pair(&self, left: Cat, right: Cat) -> &[usize] {
        self.by_pair.get(&(left, right)).map_or(&[], Vec::as_slice)
    }

    pub fn lexical_for(&self, terminal: Option<&Symbol>) -> &[usize] {
        self.by_terminal.get(&terminal.cloned()).map_or(&[], Vec::as_slice)
    }
}

/// How an item was built: a lexicon rule, or a binary rule over two items.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Deriv {
    Lex(usize),
    Bin(usize, usize, usize),
}

#[derive(Clone, Debug)]
pub(crate) struct Item<P> {
    pub cat: Cat,
    pub pos: P,
    pub tree: TreeId,
    pub chain: usize,
    pub derivs: Vec<Deriv>,
}

/// A position: an input span or a yield, with a distinguished empty one.
pub(crate) trait Position: Ord + Clone {
    fn empty() -> Self;
    fn is_empty(&self) -> bool;
}

/// Feature-tree builders for one annotation set: the embedding path of the
/// arrow schema and the tree of the value schemata (`None` when the value
/// schemata clash among themselves).
#[derive(Clone, Debug)]
struct Attach {
    arrow: Vec<Symbol>,
    values: Option<TreeId>,
}

pub(crate) struct Chart<'r, P> {
    pub rules: &'r Rules,
    pub store: TreeStore,
    pub items: Vec<Item<P>>,
    index: BTreeMap<(Cat, P, TreeId), usize>,
    pub at: BTreeMap<P, Vec<usize>>,
    pub empties: Vec<usize>,
    pub overflow: bool,
    max_chain: usize,
    max_items: usize,
    keep_derivs: bool,
    ignore_schemata: bool,
    daughters: Vec<[Attach; 2]>,
    lexical_trees: Vec<Option<TreeId>>,
}

impl<'r, P: Position> Chart<'r, P> {
    pub fn new(rules: &'r Rules, max_chain: usize, max_items: usize, keep_derivs: bool, ignore_schemata: bool) -> Self {
        let mut store = TreeStore::new();
        let g = &rules.normalized.grammar;
        let attach = |store: &mut TreeStore, annotations: &AnnotationSet| {
            let arrow = annotations.arrow_path().map(<[Symbol]>::to_vec).unwrap_or_default();
            let mut values = Some(store.empty());
            if !ignore_schemata {
                for (path, v) in annotations.values() {
                    let atom = store.atom(v.clone());
                    let piece = store.embed(path, atom);
                    values = values.and_then(|t| store.unify(t, piece));
                }
            }
            Attach { arrow, values }
        };
        let daughters = g
            .productions
            .iter()
            .map(|p| [attach(&mut store, &p.rhs[0].annotations), attach(&mut store, &p.rhs[1].annotations)])
            .collect();
        let lexical_trees = g.lexicon.iter().map(|l| attach(&mut store, &l.annotations).values).collect();
        Chart {
            rules,
            store,
            items: Vec::new(),
            index: BTreeMap::new(),
            at: BTreeMap::new(),
            empties: Vec::new(),
            overflow: false,
            max_chain,
            max_items,
            keep_derivs,
            ignore_schemata,
            daughters,
            lexical_trees,
        }
    }

    /// Records an item or, when it exists, another derivation of it.
    /// Returns the index of a newly created item.
    pub fn add(&mut self, cat: Cat, pos: P, tree: TreeId, chain: usize, deriv: Deriv) -> Result<Option<usize>, LimitExceeded> {
        if chain > self.max_chain {
            if !self.index.contains_key(&(cat, pos, tree)) {
                self.overflow = true;
            }
            return Ok(None);
        }
        if let Some(&ix) = self.index.get(&(cat, pos.clone(), tree)) {
            if self.keep_derivs {
                self.items[ix].derivs.push(deriv);
            }
            return Ok(None);
        }
        if self.items.len() >= self.max_items {
            return Err(LimitExceeded);
        }
        let ix = self.items.len();
        self.index.insert((cat, pos.clone(), tree), ix);
        if pos.is_empty() {
            self.empties.push(ix);
        }
        self.at.entry(pos.clone()).or_default().push(ix);
        self.items.push(Item {
            cat,
            pos,
            tree,
            chain,
            derivs: if self.keep_derivs { alloc::vec![deriv] } else { Vec::new() },
        });
        Ok(Some(ix))
    }

    /// The tree of a lexicon rule's mother, `None` if its schemata clash.
    pub fn lexical_tree(&self, rule: usize) -> Option<TreeId> {
        self.lexical_trees[rule]
    }

    /// The tree of a binary rule's mother over two daughter trees.
    pub fn binary_tree(&mut self, rule: usize, left: TreeId, right: TreeId) -> Option<TreeId> {
        if self.ignore_schemata {
            return Some(self.store.empty());
        }
        let [l, r] = &self.daughters[rule];
        let (l, r) = (l.clone(), r.clone());
        let lt = self.store.embed(&l.arrow, left);
        let lt = self.store.unify(lt, l.values?)?;
        let rt = self.store.embed(&r.arrow, right);
        let rt = self.store.unify(rt, r.values?)?;
        self.store.unify(lt, rt)
    }

    /// Combines two existing items under every matching rule, placing the
    /// result at `pos`.
    pub fn combine(&mut self, a: usize, b: usize, pos: &P, chain: usize, created: &mut Vec<usize>) -> Result<(), LimitExceeded> {
        let (ca, cb) = (self.items[a].cat, self.items[b].cat);
        let (ta, tb) = (self.items[a].tree, self.items[b].tree);
        for &rule in self.rules.pair(ca, cb) {
            let Some(tree) = self.binary_tree(rule, ta, tb) else {
                continue;
            };
            let lhs = self.rules.binary[rule].lhs;
            if let Some(ix) = self.add(lhs, pos.clone(), tree, chain, Deriv::Bin(rule, a, b))? {
                created.push(ix);
            }
        }
        Ok(())
    }

    /// Lexicon items for `terminal` (ε when `None`) at `pos`.
    pub fn lexical_items(&mut self, terminal: Option<&Symbol>, pos: &P, created: &mut Vec<usize>) -> Result<(), LimitExceeded> {
        for &rule in self.rules.lexical_for(terminal) {
            let Some(tree) = self.lexical_tree(rule) else {
                continue;
            };
            let lhs = self.rules.lexical[rule].lhs;
            if let Some(ix) = self.add(lhs, pos.clone(), tree, 0, Deriv::Lex(rule))? {
                created.push(ix);
            }
        }
        Ok(())
    }

    /// All items with the empty yield, by rounds of increasing chain length.
    pub fn close_empty(&mut self) -> Result<(), LimitExceeded> {
        let empty = P::empty();
        let mut frontier = Vec::new();
        self.lexical_items(None, &empty, &mut frontier)?;
        let mut round = 0;
        while !frontier.is_empty() {
            round += 1;
            let mut created = Vec::new();
            let known = self.empties.clone();
            let fresh: alloc::collections::BTreeSet<usize> = frontier.iter().copied().collect();
            for &a in &known {
                for &b in &known {
                    if fresh.contains(&a) || fresh.contains(&b) {
                        self.combine(a, b, &empty, round, &mut created)?;
                    }
                }
            }
            frontier = created;
        }
        Ok(())
    }

    /// Extends the items in `frontier` (all at non-empty positions) by
    /// empty-yield sisters, round by round.
    pub fn close_with_empties(&mut self, mut frontier: Vec<usize>) -> Result<(), LimitExceeded> {
        while !frontier.is_empty() {
            let mut created = Vec::new();
            for &x in &frontier {
                let pos = self.items[x].pos.clone();
                let chain = self.items[x].chain + 1;
                let cat = self.items[x].cat;
                let empties = self.empties.clone();
                if self.rules.by_left.contains_key(&cat) {
                    for &e in &empties {
                        self.combine(x, e, &pos, chain, &mut created)?;
                    }
                }
                if self.rules.by_right.contains_key(&cat) {
                    for &e in &empties {
                        self.combine(e, x, &pos, chain, &mut created)?;
                    }
                }
            }
            frontier = created;
        }
        Ok(())
    }

    pub fn items_at(&self, pos: &P) -> &[usize] {
        self.at.get(pos).map_or(&[], Vec::as_slice)
    }

    pub fn goals(&self, pos: &P) -> Vec<usize> {
        self.items_at(pos)
            .iter()
            .copied()
            .filter(|&ix| self.items[ix].cat == self.rules.start)
            .collect()
    }
}
