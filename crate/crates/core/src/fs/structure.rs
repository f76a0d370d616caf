use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::equation::{Equation, Term};
use crate::Symbol;

/// Index of a node inside one feature structure.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A well-formed feature structure: nodes `0..len`, a name map, a partial
/// transition function and a partial atomic value function.
///
/// Every value of this type is atomic (valued nodes have no out-edges),
/// acyclic and describable (every node is reachable from a named node).
/// Structures only come out of [`describe`](super::describe),
/// [`unify`](super::unify), [`canonical_form`](super::canonical_form) and the
/// checked [`FeatureStructure::from_raw`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FeatureStructure<N> {
    pub(crate) names: BTreeMap<N, NodeId>,
    pub(crate) edges: Vec<BTreeMap<Symbol, NodeId>>,
    pub(crate) values: Vec<Option<Symbol>>,
}

impl<N: Ord + Clone> FeatureStructure<N> {
    /// The structure with no nodes and no names; it describes `∅`.
    pub fn empty() -> Self {
        FeatureStructure {
            names: BTreeMap::new(),
            edges: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.edges.len()).map(NodeId)
    }

    pub fn names(&self) -> impl Iterator<Item = (&N, NodeId)> {
        self.names.iter().map(|(n, q)| (n, *q))
    }

    pub fn node_of(&self, name: &N) -> Option<NodeId> {
        self.names.get(name).copied()
    }

    pub fn edges_from(&self, node: NodeId) -> impl Iterator<Item = (&Symbol, NodeId)> {
        self.edges[node.0].iter().map(|(a, q)| (a, *q))
    }

    pub fn value(&self, node: NodeId) -> Option<&Symbol> {
        self.values[node.0].as_ref()
    }

    pub fn step(&self, node: NodeId, attr: &Symbol) -> Option<NodeId> {
        self.edges[node.0].get(attr).copied()
    }

    /// The extended transition `δ(start, path)`; `None` when some step is
    /// undefined.
    pub fn transit(&self, start: NodeId, path: &[Symbol]) -> Option<NodeId> {
        path.iter()
            .try_fold(start, |node, attr| self.step(node, attr))
    }

    /// `δ(f(name), path)`.
    pub fn resolve(&self, term: &Term<N>) -> Option<NodeId> {
        self.transit(self.node_of(&term.name)?, &term.path)
    }

    pub fn satisfies(&self, eq: &Equation<N>) -> bool {
        match eq {
            Equation::Path { lhs, rhs } => match (self.resolve(lhs), self.resolve(rhs)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
            Equation::Value { term, value } => self
                .resolve(term)
                .and_then(|q| self.value(q))
                .is_some_and(|v| v == value),
        }
    }

    /// `M ⊨ E`.
    pub fn supports<'a>(&self, eqs: impl IntoIterator<Item = &'a Equation<N>>) -> bool
    where
        N: 'a,
    {
        eqs.into_iter().all(|eq| self.satisfies(eq))
    }

    /// Number of edges entering each node.
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0; self.len()];
        for map in &self.edges {
            for q in map.values() {
                degrees[q.0] += 1;
            }
        }
        degrees
    }

    /// True when `to` is reachable from `from` by some attribute path
    /// (including the empty path).
    pub fn dominates(&self, from: NodeId, to: NodeId) -> bool {
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        while let Some(q) = stack.pop() {
            if q == to {
                return true;
            }
            if seen.insert(q) {
                stack.extend(self.edges[q.0].values().copied());
            }
        }
        false
    }

    /// Checks a raw structure and converts it when it is well formed.
    pub fn from_raw(raw: RawFeatureStructure<N>) -> Result<Self, WellFormedness> {
        let diagnostics = raw.check_well_formed();
        if !diagnostics.is_empty() {
            return Err(diagnostics);
        }
        Ok(FeatureStructure {
            names: raw.names,
            edges: raw.edges,
            values: raw.values,
        })
    }

    pub fn to_raw(&self) -> RawFeatureStructure<N> {
        RawFeatureStructure {
            names: self.names.clone(),
            edges: self.edges.clone(),
            values: self.values.clone(),
        }
    }

    /// Deterministic renumbering: breadth first from the names in sorted
    /// order, following edges in sorted attribute order. Isomorphic
    /// structures with equal name sets become identical.
    pub fn canonical_form(&self) -> Self {
        let mut order: Vec<NodeId> = Vec::with_capacity(self.len());
        let mut renumber: Vec<Option<NodeId>> = vec![None; self.len()];
        let mut queue = VecDeque::new();
        let mut visit = |q: NodeId, queue: &mut VecDeque<NodeId>, order: &mut Vec<NodeId>| {
            if renumber[q.0].is_none() {
                renumber[q.0] = Some(NodeId(order.len()));
                order.push(q);
                queue.push_back(q);
            }
        };
        for &q in self.names.values() {
            visit(q, &mut queue, &mut order);
            while let Some(p) = queue.pop_front() {
                for &r in self.edges[p.0].values() {
                    visit(r, &mut queue, &mut order);
                }
            }
        }
        debug_assert_eq!(order.len(), self.len(), "describable structures reach every node");
        let map = |q: NodeId| renumber[q.0].expect("reachable node");
        FeatureStructure {
            names: self.names.iter().map(|(n, q)| (n.clone(), map(*q))).collect(),
            edges: order
                .iter()
                .map(|q| self.edges[q.0].iter().map(|(a, r)| (a.clone(), map(*r))).collect())
                .collect(),
            values: order.iter().map(|q| self.values[q.0].clone()).collect(),
        }
    }
}

/// An unchecked structure, used to build arbitrary graphs for the
/// well-formedness checker and for tests.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RawFeatureStructure<N> {
    pub(crate) names: BTreeMap<N, NodeId>,
    pub(crate) edges: Vec<BTreeMap<Symbol, NodeId>>,
    pub(crate) values: Vec<Option<Symbol>>,
}

impl<N: Ord + Clone> RawFeatureStructure<N> {
    pub fn with_nodes(count: usize) -> Self {
        RawFeatureStructure {
            names: BTreeMap::new(),
            edges: vec![BTreeMap::new(); count],
            values: vec![None; count],
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn add_node(&mut self) -> NodeId {
        self.edges.push(BTreeMap::new());
        self.values.push(None);
        NodeId(self.edges.len() - 1)
    }

    /// # Panics
    ///
    /// If `node` is out of range.
    pub fn set_name(&mut self, name: N, node: NodeId) {
        assert!(node.0 < self.len(), "node {node} out of range");
        self.names.insert(name, node);
    }

    /// # Panics
    ///
    /// If either endpoint is out of range.
    pub fn set_edge(&mut self, from: NodeId, attr: Symbol, to: NodeId) {
        assert!(from.0 < self.len() && to.0 < self.len(), "edge endpoint out of range");
        self.edges[from.0].insert(attr, to);
    }

    /// # Panics
    ///
    /// If `node` is out of range.
    pub fn set_value(&mut self, node: NodeId, value: Symbol) {
        assert!(node.0 < self.len(), "node {node} out of range");
        self.values[node.0] = Some(value);
    }

    /// Reports every violation of atomicity, acyclicity and describability.
    pub fn check_well_formed(&self) -> WellFormedness {
        let atomic_violations = (0..self.len())
            .filter(|&q| self.values[q].is_some() && !self.edges[q].is_empty())
            .map(NodeId)
            .collect();

        let mut reached = vec![false; self.len()];
        let mut stack: Vec<NodeId> = self.names.values().copied().collect();
        while let Some(q) = stack.pop() {
            if !core::mem::replace(&mut reached[q.0], true) {
                stack.extend(self.edges[q.0].values().copied());
            }
        }
        let unreachable_nodes = (0..self.len()).filter(|&q| !reached[q]).map(NodeId).collect();

        WellFormedness {
            atomic_violations,
            cycles: self.cycles(),
            unreachable_nodes,
        }
    }

    /// One node sequence per back edge found by a depth-first search.
    fn cycles(&self) -> Vec<Vec<NodeId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let mut marks = vec![Mark::New; self.len()];
        let mut cycles = Vec::new();
        for root in 0..self.len() {
            if marks[root] != Mark::New {
                continue;
            }
            // (node, successors still to visit); the stack doubles as the current path.
            let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
            marks[root] = Mark::Active;
            stack.push((root, self.edges[root].values().rev().map(|q| q.0).collect()));
            while let Some((node, pending)) = stack.last_mut() {
                let node = *node;
                match pending.pop() {
                    Some(next) => match marks[next] {
                        Mark::New => {
                            marks[next] = Mark::Active;
                            let succ = self.edges[next].values().rev().map(|q| q.0).collect();
                            stack.push((next, succ));
                        }
                        Mark::Active => {
                            let start = stack.iter().position(|(q, _)| *q == next).unwrap_or(0);
                            cycles.push(stack[start..].iter().map(|(q, _)| NodeId(*q)).collect());
                        }
                        Mark::Done => {}
                    },
                    None => {
                        marks[node] = Mark::Done;
                        stack.pop();
                    }
                }
            }
        }
        cycles
    }
}

/// Well-formedness diagnostics; empty exactly when the structure is
/// atomic, acyclic and describable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WellFormedness {
    pub atomic_violations: Vec<NodeId>,
    pub cycles: Vec<Vec<NodeId>>,
    pub unreachable_nodes: Vec<NodeId>,
}

impl WellFormedness {
    pub fn is_empty(&self) -> bool {
        self.atomic_violations.is_empty() && self.cycles.is_empty() && self.unreachable_nodes.is_empty()
    }
}

impl fmt::Display for WellFormedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in &self.atomic_violations {
            writeln!(f, "node {q} has a value and outgoing edges")?;
        }
        for cycle in &self.cycles {
            write!(f, "cycle through")?;
            for q in cycle {
                write!(f, " {q}")?;
            }
            writeln!(f)?;
        }
        for q in &self.unreachable_nodes {
            writeln!(f, "node {q} is not reachable from any name")?;
        }
        Ok(())
    }
}
