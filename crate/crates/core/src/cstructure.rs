//! Tree domains and constituent structures.
//!
//! Tree addresses name the nodes of a constituent structure; instantiating
//! the schemata replaces `↑` by the mother's address and `↓` by the node's
//! own, so the same addresses serve as feature-structure names.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::fs::{describe, Equation, FeatureStructure, Inconsistency, Term};
use crate::grammar::{AnnotationSet, Grammar, Schema};
use crate::Symbol;

/// A node of a tree domain: a string of positive integers, `ε` for the root.
///
/// The derived order is the lexicographic order of the domain: a prefix
/// precedes its extensions, otherwise the first differing position decides.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct TreeAddress(Vec<u32>);

impl TreeAddress {
    pub fn root() -> Self {
        TreeAddress(Vec::new())
    }

    pub fn from_digits(digits: impl IntoIterator<Item = u32>) -> Self {
        TreeAddress(digits.into_iter().collect())
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// The `i`-th daughter, counting from 1.
    pub fn child(&self, i: u32) -> Self {
        let mut digits = self.0.clone();
        digits.push(i);
        TreeAddress(digits)
    }

    pub fn mother(&self) -> Option<Self> {
        let (_, init) = self.0.split_last()?;
        Some(TreeAddress(init.to_vec()))
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn is_prefix_of(&self, other: &TreeAddress) -> bool {
        other.0.starts_with(&self.0)
    }
}

/// The lexicographic order `≺` of tree addresses.
pub fn lex_compare(a: &TreeAddress, b: &TreeAddress) -> Ordering {
    a.cmp(b)
}

/// Digit strings such as `121`; `ε` for the root; dot-separated when some
/// component exceeds 9 (`1.12.3`).
impl fmt::Display for TreeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let dotted = self.0.iter().any(|&d| d > 9);
        for (i, d) in self.0.iter().enumerate() {
            if dotted && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Category(Symbol),
    Terminal(Symbol),
    Empty,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Category(c) => write!(f, "{c}"),
            Label::Terminal(t) => write!(f, "{t:?}"),
            Label::Empty => f.write_str("\"\""),
        }
    }
}

/// A subtree used to assemble constituent structures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constituent {
    pub label: Label,
    pub annotations: AnnotationSet,
    pub children: Vec<Constituent>,
}

impl Constituent {
    pub fn node(category: impl Into<Symbol>, annotations: AnnotationSet, children: Vec<Constituent>) -> Self {
        Constituent {
            label: Label::Category(category.into()),
            annotations,
            children,
        }
    }

    pub fn leaf(terminal: Option<Symbol>, annotations: AnnotationSet) -> Self {
        Constituent {
            label: terminal.map_or(Label::Empty, Label::Terminal),
            annotations,
            children: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Constituent::size).sum::<usize>()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CNode {
    pub label: Label,
    /// `None` exactly at the root.
    pub annotations: Option<AnnotationSet>,
}

/// A constituent structure `⟨D, K, E⟩`, stored in lexicographic address order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CStructure {
    nodes: BTreeMap<TreeAddress, CNode>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TreeViolation {
    EmptyDomain,
    MissingMother(TreeAddress),
    MissingLeftSister(TreeAddress),
    ZeroDigit(TreeAddress),
    RootNotStart(TreeAddress),
    RootAnnotated,
    MissingAnnotations(TreeAddress),
    CategoryAtLeaf(TreeAddress),
    TerminalInside(TreeAddress),
    UnknownTerminal(TreeAddress),
    NoMatchingRule(TreeAddress),
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::EmptyDomain => f.write_str("empty tree domain"),
            TreeViolation::MissingMother(x) => write!(f, "{x}: mother is not in the domain"),
            TreeViolation::MissingLeftSister(x) => write!(f, "{x}: left sister is not in the domain"),
            TreeViolation::ZeroDigit(x) => write!(f, "{x}: address components must be positive"),
            TreeViolation::RootNotStart(x) => write!(f, "{x}: root must be start symbol"),
            TreeViolation::RootAnnotated => f.write_str("root carries an annotation set"),
            TreeViolation::MissingAnnotations(x) => write!(f, "{x}: non-root node without annotation set"),
            TreeViolation::CategoryAtLeaf(x) => write!(f, "{x}: leaf labelled with a category"),
            TreeViolation::TerminalInside(x) => write!(f, "{x}: internal node labelled with a terminal"),
            TreeViolation::UnknownTerminal(x) => write!(f, "{x}: terminal not in the grammar"),
            TreeViolation::NoMatchingRule(x) => write!(f, "{x}: node and daughters match no rule"),
        }
    }
}

impl CStructure {
    /// Builds the structure with `root` at `ε`; the root's annotation set is
    /// ignored.
    pub fn from_root(root: &Constituent) -> Self {
        let mut cs = CStructure::default();
        let mut stack = alloc::vec![(TreeAddress::root(), root)];
        while let Some((address, node)) = stack.pop() {
            for (i, child) in node.children.iter().enumerate() {
                stack.push((address.child(i as u32 + 1), child));
            }
            let annotations = (!address.is_root()).then(|| node.annotations.clone());
            cs.nodes.insert(
                address,
                CNode {
                    label: node.label.clone(),
                    annotations,
                },
            );
        }
        cs
    }

    /// Inserts or replaces one node; no closure checks are made here.
    pub fn insert(&mut self, address: TreeAddress, label: Label, annotations: Option<AnnotationSet>) {
        self.nodes.insert(address, CNode { label, annotations });
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&TreeAddress, &CNode)> {
        self.nodes.iter()
    }

    pub fn get(&self, address: &TreeAddress) -> Option<&CNode> {
        self.nodes.get(address)
    }

    /// Out-degree `d(x)`.
    pub fn out_degree(&self, address: &TreeAddress) -> u32 {
        (1..).take_while(|&i| self.nodes.contains_key(&address.child(i))).count() as u32
    }

    pub fn is_terminal_node(&self, address: &TreeAddress) -> bool {
        !self.nodes.contains_key(&address.child(1))
    }

    /// Addresses with at least one daughter: the names of the generated
    /// feature structure.
    pub fn internal_addresses(&self) -> impl Iterator<Item = &TreeAddress> {
        self.nodes.keys().filter(|x| !self.is_terminal_node(x))
    }

    /// The labels of the leaves in lexicographic order, empty leaves omitted.
    pub fn terminal_string(&self) -> Vec<Symbol> {
        self.nodes
            .iter()
            .filter(|(x, _)| self.is_terminal_node(x))
            .filter_map(|(_, n)| match &n.label {
                Label::Terminal(t) => Some(t.clone()),
                _ => None,
            })
            .collect()
    }

    /// Checks domain closure, label typing, the root label and that every
    /// internal node with its daughters is a rule of `g`.
    pub fn validate(&self, g: &Grammar) -> Vec<TreeViolation> {
        let mut out = Vec::new();
        if self.nodes.is_empty() {
            out.push(TreeViolation::EmptyDomain);
            return out;
        }
        for (x, node) in &self.nodes {
            if x.digits().contains(&0) {
                out.push(TreeViolation::ZeroDigit(x.clone()));
            }
            if let Some(m) = x.mother() {
                if !self.nodes.contains_key(&m) {
                    out.push(TreeViolation::MissingMother(x.clone()));
                }
                let i = x.last().expect("non-root");
                if i > 1 && !self.nodes.contains_key(&m.child(i - 1)) {
                    out.push(TreeViolation::MissingLeftSister(x.clone()));
                }
                if node.annotations.is_none() {
                    out.push(TreeViolation::MissingAnnotations(x.clone()));
                }
            } else {
                if node.label != Label::Category(g.start.clone()) {
                    out.push(TreeViolation::RootNotStart(x.clone()));
                }
                if node.annotations.is_some() {
                    out.push(TreeViolation::RootAnnotated);
                }
            }
            let leaf = self.is_terminal_node(x);
            match (&node.label, leaf) {
                (Label::Category(_), true) => out.push(TreeViolation::CategoryAtLeaf(x.clone())),
                (Label::Terminal(_) | Label::Empty, false) => out.push(TreeViolation::TerminalInside(x.clone())),
                (Label::Terminal(t), true) if !g.terminals.contains(t) => {
                    out.push(TreeViolation::UnknownTerminal(x.clone()))
                }
                _ => {}
            }
            if let (Label::Category(k), false) = (&node.label, leaf) {
                if !self.matches_rule(g, x, k) {
                    out.push(TreeViolation::NoMatchingRule(x.clone()));
                }
            }
        }
        out
    }

    fn matches_rule(&self, g: &Grammar, x: &TreeAddress, category: &Symbol) -> bool {
        let daughters: Vec<&CNode> = (1..=self.out_degree(x))
            .filter_map(|i| self.nodes.get(&x.child(i)))
            .collect();
        let no_annotation = AnnotationSet::new();
        let annotation = |n: &CNode| n.annotations.as_ref().unwrap_or(&no_annotation).clone();
        if let [only] = daughters.as_slice() {
            let terminal = match &only.label {
                Label::Terminal(t) => Some(Some(t)),
                Label::Empty => Some(None),
                Label::Category(_) => None,
            };
            if let Some(terminal) = terminal {
                return g.lexicon.iter().any(|l| {
                    &l.lhs == category && l.terminal.as_ref() == terminal && l.annotations == annotation(only)
                });
            }
        }
        g.productions.iter().any(|p| {
            &p.lhs == category
                && p.rhs.len() == daughters.len()
                && p.rhs.iter().zip(&daughters).all(|(d, n)| {
                    n.label == Label::Category(d.category.clone()) && d.annotations == annotation(n)
                })
        })
    }

    /// `⋃ E′(x)` over the non-root addresses: `↑` becomes the mother's
    /// address and `↓` the node's own.
    pub fn instantiate(&self) -> Vec<Equation<TreeAddress>> {
        let mut out = Vec::new();
        for (x, node) in &self.nodes {
            let (Some(mother), Some(annotations)) = (x.mother(), &node.annotations) else {
                continue;
            };
            for schema in annotations {
                out.push(match schema {
                    Schema::Arrow(path) => {
                        Equation::path(Term::new(mother.clone(), path.clone()), Term::bare(x.clone()))
                    }
                    Schema::Value(path, v) => Equation::value(Term::new(mother.clone(), path.clone()), v.clone()),
                });
            }
        }
        out
    }

    /// The structure described by the instantiated equations, named by every
    /// internal address; an inconsistency means the tree is not consistent.
    pub fn generated_fs(&self) -> Result<FeatureStructure<TreeAddress>, Inconsistency<TreeAddress>> {
        let mut equations = self.instantiate();
        equations.extend(
            self.internal_addresses()
                .map(|x| Equation::path(Term::bare(x.clone()), Term::bare(x.clone()))),
        );
        describe(&equations)
    }
}

/// Checks that `fs` (generated by `cs`) is a tree and that the name map
/// preserves domination: `x′ ≤ x` in the tree implies `f(x′)` reaches
/// `f(x)`. Returns a description of each failure.
pub fn homomorphism_violations(cs: &CStructure, fs: &FeatureStructure<TreeAddress>) -> Vec<alloc::string::String> {
    use alloc::format;
    let mut out = Vec::new();
    for (q, d) in fs.in_degrees().into_iter().enumerate() {
        if d > 1 {
            out.push(format!("node {q} has in-degree {d}"));
        }
    }
    let internal: Vec<&TreeAddress> = cs.internal_addresses().collect();
    for x in &internal {
        let Some(fx) = fs.node_of(x) else {
            out.push(format!("{x} has no node"));
            continue;
        };
        let mut up = x.mother();
        while let Some(y) = up {
            match fs.node_of(&y) {
                Some(fy) if fs.dominates(fy, fx) => {}
                _ => out.push(format!("f({y}) does not dominate f({x})")),
            }
            up = y.mother();
        }
    }
    out
}
