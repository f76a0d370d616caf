use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::Symbol;

/// An equation schema over the metavariables `↑` (mother) and `↓` (self).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Schema {
    /// `↑ a1 … an = ↓`, `n ≥ 0`.
    Arrow(Vec<Symbol>),
    /// `↑ a1 … an = v`, `n ≥ 1`.
    Value(Vec<Symbol>, Symbol),
}

impl Schema {
    pub fn arrow<I, S>(path: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        Schema::Arrow(path.into_iter().map(Into::into).collect())
    }

    pub fn value<I, S>(path: I, value: impl Into<Symbol>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        Schema::Value(path.into_iter().map(Into::into).collect(), value.into())
    }

    pub fn path(&self) -> &[Symbol] {
        match self {
            Schema::Arrow(p) | Schema::Value(p, _) => p,
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("^")?;
        for attr in self.path() {
            write!(f, " {attr}")?;
        }
        match self {
            Schema::Arrow(_) => f.write_str(" = _"),
            Schema::Value(_, v) => write!(f, " = #{v}"),
        }
    }
}

/// A finite set of schemata annotating one right-hand-side element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct AnnotationSet(BTreeSet<Schema>);

impl AnnotationSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{↑ = ↓}`.
    pub fn identity() -> Self {
        Self::from_iter([Schema::Arrow(Vec::new())])
    }

    pub fn insert(&mut self, schema: Schema) -> bool {
        self.0.insert(schema)
    }

    pub fn remove(&mut self, schema: &Schema) -> bool {
        self.0.remove(schema)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Schema> {
        self.0.iter()
    }

    pub fn arrows(&self) -> impl Iterator<Item = &[Symbol]> {
        self.0.iter().filter_map(|s| match s {
            Schema::Arrow(p) => Some(p.as_slice()),
            Schema::Value(..) => None,
        })
    }

    /// The path of the arrow schema, when there is exactly one.
    pub fn arrow_path(&self) -> Option<&[Symbol]> {
        let mut arrows = self.arrows();
        match (arrows.next(), arrows.next()) {
            (Some(p), None) => Some(p),
            _ => None,
        }
    }

    pub fn values(&self) -> impl Iterator<Item = (&[Symbol], &Symbol)> {
        self.0.iter().filter_map(|s| match s {
            Schema::Value(p, v) => Some((p.as_slice(), v)),
            Schema::Arrow(_) => None,
        })
    }
}

impl FromIterator<Schema> for AnnotationSet {
    fn from_iter<T: IntoIterator<Item = Schema>>(iter: T) -> Self {
        AnnotationSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a AnnotationSet {
    type Item = &'a Schema;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Schema>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for AnnotationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Daughter {
    pub category: Symbol,
    pub annotations: AnnotationSet,
}

impl Daughter {
    pub fn new(category: impl Into<Symbol>, annotations: impl IntoIterator<Item = Schema>) -> Self {
        Daughter {
            category: category.into(),
            annotations: annotations.into_iter().collect(),
        }
    }
}

/// `K0 → K1 … Km`, each daughter annotated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Production {
    pub lhs: Symbol,
    pub rhs: Vec<Daughter>,
}

/// `K → t` with `t` a terminal or the empty string (`None`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LexiconRule {
    pub lhs: Symbol,
    pub terminal: Option<Symbol>,
    pub annotations: AnnotationSet,
}

/// A grammar `⟨K, S, Σ, P, L⟩`. Values of this type may violate the
/// formalism's constraints; [`validate`](super::validate) reports them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grammar {
    pub categories: BTreeSet<Symbol>,
    pub start: Symbol,
    pub terminals: BTreeSet<Symbol>,
    pub productions: Vec<Production>,
    pub lexicon: Vec<LexiconRule>,
}

impl Grammar {
    /// An empty grammar with only the start category declared.
    pub fn new(start: impl Into<Symbol>) -> Self {
        let start = start.into();
        Grammar {
            categories: BTreeSet::from([start.clone()]),
            start,
            terminals: BTreeSet::new(),
            productions: Vec::new(),
            lexicon: Vec::new(),
        }
    }

    /// Adds a production and declares its categories.
    pub fn production(mut self, lhs: impl Into<Symbol>, rhs: impl IntoIterator<Item = Daughter>) -> Self {
        let rule = Production {
            lhs: lhs.into(),
            rhs: rhs.into_iter().collect(),
        };
        self.categories.insert(rule.lhs.clone());
        self.categories.extend(rule.rhs.iter().map(|d| d.category.clone()));
        self.productions.push(rule);
        self
    }

    /// Adds a lexicon rule and declares its category and terminal.
    pub fn lexical(
        mut self,
        lhs: impl Into<Symbol>,
        terminal: Option<&str>,
        annotations: impl IntoIterator<Item = Schema>,
    ) -> Self {
        let rule = LexiconRule {
            lhs: lhs.into(),
            terminal: terminal.map(Symbol::new),
            annotations: annotations.into_iter().collect(),
        };
        self.categories.insert(rule.lhs.clone());
        self.terminals.extend(rule.terminal.clone());
        self.lexicon.push(rule);
        self
    }

    pub fn attributes(&self) -> BTreeSet<Symbol> {
        self.schemata().flat_map(|s| s.path().iter().cloned()).collect()
    }

    pub fn value_symbols(&self) -> BTreeSet<Symbol> {
        self.schemata()
            .filter_map(|s| match s {
                Schema::Value(_, v) => Some(v.clone()),
                Schema::Arrow(_) => None,
            })
            .collect()
    }

    /// Every spelling in use: categories, terminals, attributes and values.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut all = self.categories.clone();
        all.extend(self.terminals.iter().cloned());
        all.extend(self.attributes());
        all.extend(self.value_symbols());
        all
    }

    fn schemata(&self) -> impl Iterator<Item = &Schema> {
        self.productions
            .iter()
            .flat_map(|p| p.rhs.iter().flat_map(|d| d.annotations.iter()))
            .chain(self.lexicon.iter().flat_map(|l| l.annotations.iter()))
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.lhs)?;
        for d in &self.rhs {
            write!(f, " {}:{}", d.category, d.annotations)?;
        }
        Ok(())
    }
}

impl fmt::Display for LexiconRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.terminal.as_ref().map_or("", |t| t.as_str());
        write!(f, "{} => {:?} {}", self.lhs, t, self.annotations)
    }
}
