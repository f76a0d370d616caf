//! Hash-consed rooted feature trees.
//!
//! Under the grammar's equation restrictions, everything a constituent
//! subtree contributes is a tree hanging from the node its root is named
//! by. The parser summarises subtrees by these trees and combines them by
//! unification, so a store that interns them (making equality a handle
//! comparison) and memoises unification is the workhorse of the chart.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::structure::{FeatureStructure, NodeId};
use crate::Symbol;

/// Handle to a tree interned in a [`TreeStore`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TreeId(u32);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Shape {
    Atom(Symbol),
    // sorted by attribute
    Node(Vec<(Symbol, TreeId)>),
}

#[derive(Default, Debug)]
pub struct TreeStore {
    shapes: Vec<Shape>,
    index: BTreeMap<Shape, TreeId>,
    unified: BTreeMap<(TreeId, TreeId), Option<TreeId>>,
}

impl TreeStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct trees interned so far.
    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    fn intern(&mut self, shape: Shape) -> TreeId {
        if let Some(&id) = self.index.get(&shape) {
            return id;
        }
        let id = TreeId(u32::try_from(self.shapes.len()).expect("tree store overflow"));
        self.shapes.push(shape.clone());
        self.index.insert(shape, id);
        id
    }

    /// The tree with a root and nothing else.
    pub fn empty(&mut self) -> TreeId {
        self.intern(Shape::Node(Vec::new()))
    }

    pub fn atom(&mut self, value: Symbol) -> TreeId {
        self.intern(Shape::Atom(value))
    }

    /// The tree whose root reaches `tree` along `path`.
    pub fn embed(&mut self, path: &[Symbol], tree: TreeId) -> TreeId {
        path.iter()
            .rev()
            .fold(tree, |inner, attr| self.intern(Shape::Node(alloc::vec![(attr.clone(), inner)])))
    }

    /// Unification of two rooted trees; `None` on a value clash or when a
    /// value meets a non-empty node.
    pub fn unify(&mut self, a: TreeId, b: TreeId) -> Option<TreeId> {
        if a == b {
            return Some(a);
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if let Some(&done) = self.unified.get(&key) {
            return done;
        }
        let result = match (self.shapes[a.0 as usize].clone(), self.shapes[b.0 as usize].clone()) {
            (Shape::Atom(_), Shape::Atom(_)) => None,
            (Shape::Atom(_), Shape::Node(kids)) if kids.is_empty() => Some(a),
            (Shape::Node(kids), Shape::Atom(_)) if kids.is_empty() => Some(b),
            (Shape::Atom(_), Shape::Node(_)) | (Shape::Node(_), Shape::Atom(_)) => None,
            (Shape::Node(left), Shape::Node(right)) => self.merge(&left, &right),
        };
        self.unified.insert(key, result);
        result
    }

    fn merge(&mut self, left: &[(Symbol, TreeId)], right: &[(Symbol, TreeId)]) -> Option<TreeId> {
        let mut out = Vec::with_capacity(left.len() + right.len());
        let (mut i, mut j) = (0, 0);
        while i < left.len() && j < right.len() {
            match left[i].0.cmp(&right[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(left[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(right[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let child = self.unify(left[i].1, right[j].1)?;
                    out.push((left[i].0.clone(), child));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&left[i..]);
        out.extend_from_slice(&right[j..]);
        Some(self.intern(Shape::Node(out)))
    }

    pub fn value(&self, tree: TreeId) -> Option<&Symbol> {
        match &self.shapes[tree.0 as usize] {
            Shape::Atom(v) => Some(v),
            Shape::Node(_) => None,
        }
    }

    pub fn children(&self, tree: TreeId) -> &[(Symbol, TreeId)] {
        match &self.shapes[tree.0 as usize] {
            Shape::Atom(_) => &[],
            Shape::Node(kids) => kids,
        }
    }

    /// Unfolds the tree into a feature structure whose only name is `name`.
    pub fn to_structure<N: Ord + Clone>(&self, tree: TreeId, name: N) -> FeatureStructure<N> {
        let mut edges: Vec<BTreeMap<Symbol, NodeId>> = Vec::new();
        let mut values = Vec::new();
        let mut stack = alloc::vec![(tree, None::<(NodeId, Symbol)>)];
        while let Some((t, parent)) = stack.pop() {
            let id = NodeId(edges.len());
            edges.push(BTreeMap::new());
            values.push(self.value(t).cloned());
            if let Some((p, attr)) = parent {
                edges[p.0].insert(attr, id);
            }
            for (attr, child) in self.children(t).iter().rev() {
                stack.push((*child, Some((id, attr.clone()))));
            }
        }
        let mut names = BTreeMap::new();
        names.insert(name, NodeId(0));
        FeatureStructure { names, edges, values }.canonical_form()
    }
}
