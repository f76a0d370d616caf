use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::describe::{describe, Inconsistency};
use super::equation::{Equation, Term};
use super::structure::{FeatureStructure, NodeId};

/// `m1 ⊑ m2`, decided structurally: there is a map from the nodes of `m1`
/// to those of `m2` that agrees on names, commutes with every defined
/// transition of `m1` and preserves defined values.
///
/// Since `m1` is describable the map is forced by the names, so it is built
/// by propagation and fails on the first disagreement.
pub fn subsumes<N: Ord + Clone>(m1: &FeatureStructure<N>, m2: &FeatureStructure<N>) -> bool {
    let mut image: Vec<Option<NodeId>> = vec![None; m1.len()];
    let mut queue = VecDeque::new();
    fn bind(image: &mut [Option<NodeId>], q: NodeId, target: NodeId, queue: &mut VecDeque<NodeId>) -> bool {
        match image[q.0] {
            Some(existing) => existing == target,
            None => {
                image[q.0] = Some(target);
                queue.push_back(q);
                true
            }
        }
    }
    for (name, q) in m1.names() {
        let Some(target) = m2.node_of(name) else {
            return false;
        };
        if !bind(&mut image, q, target, &mut queue) {
            return false;
        }
    }
    while let Some(q) = queue.pop_front() {
        let h = image[q.0].expect("queued nodes are bound");
        if let Some(v) = m1.value(q) {
            if m2.value(h) != Some(v) {
                return false;
            }
        }
        for (attr, r) in m1.edges_from(q) {
            match m2.step(h, attr) {
                Some(target) if bind(&mut image, r, target, &mut queue) => {}
                _ => return false,
            }
        }
    }
    true
}

/// Mutual subsumption.
pub fn equivalent<N: Ord + Clone>(m1: &FeatureStructure<N>, m2: &FeatureStructure<N>) -> bool {
    subsumes(m1, m2) && subsumes(m2, m1)
}

/// An equation set that describes `fs`: one reflexive equation per name
/// and per spanning-tree edge, one path equation per extra name or extra
/// edge into an already reached node, and one value equation per valued node.
pub fn canonical_equations<N: Ord + Clone>(fs: &FeatureStructure<N>) -> Vec<Equation<N>> {
    let mut access: Vec<Option<Term<N>>> = vec![None; fs.len()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for (name, q) in fs.names() {
        let here = Term::bare(name.clone());
        match &access[q.0] {
            Some(first) => out.push(Equation::path(here, first.clone())),
            None => {
                out.push(Equation::path(here.clone(), here.clone()));
                access[q.0] = Some(here);
                queue.push_back(q);
            }
        }
        while let Some(p) = queue.pop_front() {
            let base = access[p.0].clone().expect("reached");
            if let Some(v) = fs.value(p) {
                out.push(Equation::value(base.clone(), v.clone()));
            }
            for (attr, r) in fs.edges_from(p) {
                let mut path = base.path.clone();
                path.push(attr.clone());
                let via = Term::new(base.name.clone(), path);
                match &access[r.0] {
                    Some(first) => out.push(Equation::path(via, first.clone())),
                    None => {
                        out.push(Equation::path(via.clone(), via.clone()));
                        access[r.0] = Some(via);
                        queue.push_back(r);
                    }
                }
            }
        }
    }
    out
}

/// `m1 ⊔ m2`: the least structure subsumed by both operands, computed
/// as the description of the union of their canonical equation sets.
pub fn unify<N: Ord + Clone>(
    m1: &FeatureStructure<N>,
    m2: &FeatureStructure<N>,
) -> Result<FeatureStructure<N>, Inconsistency<N>> {
    let mut eqs = canonical_equations(m1);
    eqs.extend(canonical_equations(m2));
    describe(&eqs)
}
