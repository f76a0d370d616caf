//! Least-model construction by congruence closure.
//!
//! Every prefix `x w` of a term occurring in the equation set becomes a
//! node of a term trie. Path equations merge classes; merging two classes
//! merges their same-attribute successors (functional congruence). Value
//! equations pin a value on a class. The classes of the closed relation are
//! the nodes of the described structure.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::equation::{Equation, Term};
use super::structure::{FeatureStructure, NodeId};
use crate::Symbol;

/// Why an equation set describes no well-formed structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Inconsistency<N> {
    /// Two different values end up on one node.
    ValueClash {
        first: Equation<N>,
        second: Equation<N>,
    },
    /// A valued node also has an outgoing edge, reached by `extension`.
    Atomicity {
        valued: Equation<N>,
        extension: Term<N>,
    },
    /// Following `cycle` from the node of `at` returns to it.
    Acyclicity { at: Term<N>, cycle: Vec<Symbol> },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InconsistencyKind {
    Atomicity,
    Acyclicity,
    ValueClash,
}

impl fmt::Display for InconsistencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InconsistencyKind::Atomicity => "atomicity",
            InconsistencyKind::Acyclicity => "acyclicity",
            InconsistencyKind::ValueClash => "value_clash",
        })
    }
}

impl<N> Inconsistency<N> {
    pub fn kind(&self) -> InconsistencyKind {
        match self {
            Inconsistency::ValueClash { .. } => InconsistencyKind::ValueClash,
            Inconsistency::Atomicity { .. } => InconsistencyKind::Atomicity,
            Inconsistency::Acyclicity { .. } => InconsistencyKind::Acyclicity,
        }
    }

    pub fn map_names<M>(self, mut f: impl FnMut(N) -> M) -> Inconsistency<M> {
        let term = |t: Term<N>, f: &mut dyn FnMut(N) -> M| Term::new(f(t.name), t.path);
        match self {
            Inconsistency::ValueClash { first, second } => Inconsistency::ValueClash {
                first: first.map_names(&mut f),
                second: second.map_names(&mut f),
            },
            Inconsistency::Atomicity { valued, extension } => Inconsistency::Atomicity {
                valued: valued.map_names(&mut f),
                extension: term(extension, &mut f),
            },
            Inconsistency::Acyclicity { at, cycle } => Inconsistency::Acyclicity {
                at: term(at, &mut f),
                cycle,
            },
        }
    }
}

impl<N: fmt::Display> fmt::Display for Inconsistency<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inconsistency::ValueClash { first, second } => {
                write!(f, "value_clash: `{first}` conflicts with `{second}`")
            }
            Inconsistency::Atomicity { valued, extension } => {
                write!(f, "atomicity: `{valued}` makes a leaf that `{extension}` extends")
            }
            Inconsistency::Acyclicity { at, cycle } => {
                write!(f, "acyclicity: `{at}` returns to itself along")?;
                for attr in cycle {
                    write!(f, " {attr}")?;
                }
                Ok(())
            }
        }
    }
}

struct TermNode<N> {
    name: N,
    parent: Option<(usize, Symbol)>,
}

struct Closure<'e, N> {
    equations: &'e [Equation<N>],
    terms: Vec<TermNode<N>>,
    roots: BTreeMap<N, usize>,
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<BTreeMap<Symbol, usize>>,
    // value and the index of the equation that put it there
    values: Vec<Option<(Symbol, usize)>>,
}

impl<'e, N: Ord + Clone> Closure<'e, N> {
    fn new(equations: &'e [Equation<N>]) -> Self {
        Closure {
            equations,
            terms: Vec::new(),
            roots: BTreeMap::new(),
            parent: Vec::new(),
            size: Vec::new(),
            edges: Vec::new(),
            values: Vec::new(),
        }
    }

    fn fresh(&mut self, name: N, parent: Option<(usize, Symbol)>) -> usize {
        let id = self.terms.len();
        self.terms.push(TermNode { name, parent });
        self.parent.push(id);
        self.size.push(1);
        self.edges.push(BTreeMap::new());
        self.values.push(None);
        id
    }

    /// Interns every prefix of `term`; only valid before any merge.
    fn intern(&mut self, term: &Term<N>) -> usize {
        let mut node = match self.roots.get(&term.name) {
            Some(&id) => id,
            None => {
                let id = self.fresh(term.name.clone(), None);
                self.roots.insert(term.name.clone(), id);
                id
            }
        };
        for attr in &term.path {
            node = match self.edges[node].get(attr) {
                Some(&child) => child,
                None => {
                    let child = self.fresh(term.name.clone(), Some((node, attr.clone())));
                    self.edges[node].insert(attr.clone(), child);
                    child
                }
            };
        }
        node
    }

    fn term_of(&self, mut id: usize) -> Term<N> {
        let mut path = Vec::new();
        while let Some((up, attr)) = &self.terms[id].parent {
            path.push(attr.clone());
            id = *up;
        }
        path.reverse();
        Term::new(self.terms[id].name.clone(), path)
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn clash(&self, a: usize, b: usize) -> Inconsistency<N> {
        let (first, second) = if a <= b { (a, b) } else { (b, a) };
        Inconsistency::ValueClash {
            first: self.equations[first].clone(),
            second: self.equations[second].clone(),
        }
    }

    fn merge(&mut self, a: usize, b: usize) -> Result<(), Inconsistency<N>> {
        let mut pending = vec![(a, b)];
        while let Some((a, b)) = pending.pop() {
            let (mut keep, mut absorb) = (self.find(a), self.find(b));
            if keep == absorb {
                continue;
            }
            if self.size[keep] < self.size[absorb] {
                core::mem::swap(&mut keep, &mut absorb);
            }
            self.parent[absorb] = keep;
            self.size[keep] += self.size[absorb];

            let moved = core::mem::take(&mut self.edges[absorb]);
            for (attr, child) in moved {
                match self.edges[keep].get(&attr) {
                    Some(&existing) => pending.push((existing, child)),
                    None => {
                        self.edges[keep].insert(attr, child);
                    }
                }
            }
            match (self.values[keep].clone(), self.values[absorb].take()) {
                (Some((v, i)), Some((w, j))) if v != w => return Err(self.clash(i, j)),
                (None, Some(entry)) => self.values[keep] = Some(entry),
                _ => {}
            }
        }
        Ok(())
    }

    fn assign(&mut self, term: usize, value: &Symbol, origin: usize) -> Result<(), Inconsistency<N>> {
        let class = self.find(term);
        match &self.values[class] {
            Some((v, i)) if v != value => Err(self.clash(*i, origin)),
            Some(_) => Ok(()),
            None => {
                self.values[class] = Some((value.clone(), origin));
                Ok(())
            }
        }
    }

    fn run(mut self) -> Result<FeatureStructure<N>, Inconsistency<N>> {
        let equations = self.equations;
        let mut sides = Vec::with_capacity(equations.len());
        for eq in equations {
            sides.push(match eq {
                Equation::Path { lhs, rhs } => (self.intern(lhs), Some(self.intern(rhs))),
                Equation::Value { term, .. } => (self.intern(term), None),
            });
        }
        for (i, (eq, (left, right))) in equations.iter().zip(sides).enumerate() {
            match (eq, right) {
                (Equation::Value { value, .. }, _) => self.assign(left, value, i)?,
                (_, Some(right)) => self.merge(left, right)?,
                (_, None) => unreachable!("path equations intern two sides"),
            }
        }

        // Classes become nodes, numbered by their smallest term.
        let mut node_of_class: Vec<Option<NodeId>> = vec![None; self.terms.len()];
        let mut classes = Vec::new();
        for t in 0..self.terms.len() {
            let c = self.find(t);
            if node_of_class[c].is_none() {
                node_of_class[c] = Some(NodeId(classes.len()));
                classes.push(c);
            }
        }
        let mut edges = Vec::with_capacity(classes.len());
        for &c in &classes {
            let out: Vec<(Symbol, usize)> = self.edges[c].iter().map(|(a, t)| (a.clone(), *t)).collect();
            let mut map = BTreeMap::new();
            for (attr, t) in out {
                let target = self.find(t);
                map.insert(attr, node_of_class[target].expect("class numbered"));
            }
            edges.push(map);
        }

        for &c in &classes {
            if let (Some((_, origin)), Some((_, child))) = (&self.values[c], self.edges[c].iter().next()) {
                return Err(Inconsistency::Atomicity {
                    valued: equations[*origin].clone(),
                    extension: self.term_of(*child),
                });
            }
        }

        if let Some((start, cycle)) = find_cycle(&edges) {
            let class = classes[start.0];
            let members: Vec<usize> = (0..self.terms.len()).filter(|&t| self.find(t) == class).collect();
            let shortest = members
                .into_iter()
                .min_by_key(|&t| (self.term_of(t).path.len(), t))
                .expect("class has a term");
            return Err(Inconsistency::Acyclicity {
                at: self.term_of(shortest),
                cycle,
            });
        }

        let names = self
            .roots
            .iter()
            .map(|(name, &t)| (name.clone(), t))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|(name, t)| {
                let c = self.find(t);
                (name, node_of_class[c].expect("class numbered"))
            })
            .collect();
        let values = classes.iter().map(|&c| self.values[c].as_ref().map(|(v, _)| v.clone())).collect();
        Ok(FeatureStructure { names, edges, values }.canonical_form())
    }
}

/// First cycle met by a depth-first search, as (start node, attribute path).
fn find_cycle(edges: &[BTreeMap<Symbol, NodeId>]) -> Option<(NodeId, Vec<Symbol>)> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut marks = vec![Mark::New; edges.len()];
    for root in 0..edges.len() {
        if marks[root] != Mark::New {
            continue;
        }
        // (node, attribute used to enter it, iterator position)
        let mut stack: Vec<(usize, Option<Symbol>, usize)> = vec![(root, None, 0)];
        marks[root] = Mark::Active;
        while let Some(top) = stack.last_mut() {
            let (node, _, pos) = top;
            let node = *node;
            match edges[node].iter().nth(*pos) {
                Some((attr, next)) => {
                    *pos += 1;
                    match marks[next.0] {
                        Mark::New => {
                            marks[next.0] = Mark::Active;
                            stack.push((next.0, Some(attr.clone()), 0));
                        }
                        Mark::Active => {
                            let start = stack.iter().position(|(q, _, _)| *q == next.0)?;
                            let mut cycle: Vec<Symbol> =
                                stack[start + 1..].iter().filter_map(|(_, a, _)| a.clone()).collect();
                            cycle.push(attr.clone());
                            return Some((*next, cycle));
                        }
                        Mark::Done => {}
                    }
                }
                None => {
                    marks[node] = Mark::Done;
                    stack.pop();
                }
            }
        }
    }
    None
}

/// The least structure supporting `equations` (`E ≫ M`), or the reason no
/// well-formed structure supports them. The names of the result are exactly
/// the names occurring in `equations`.
pub fn describe<N: Ord + Clone>(equations: &[Equation<N>]) -> Result<FeatureStructure<N>, Inconsistency<N>> {
    Closure::new(equations).run()
}
