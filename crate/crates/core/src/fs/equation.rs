use alloc::vec::Vec;
use core::fmt;

use crate::Symbol;

/// A name followed by an attribute path, `x a1 … an`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Term<N> {
    pub name: N,
    pub path: Vec<Symbol>,
}

impl<N> Term<N> {
    pub fn new(name: N, path: Vec<Symbol>) -> Self {
        Term { name, path }
    }

    pub fn bare(name: N) -> Self {
        Term { name, path: Vec::new() }
    }
}

/// The two equation shapes: `x1 w1 = x2 w2` and `x w = v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Equation<N> {
    Path { lhs: Term<N>, rhs: Term<N> },
    Value { term: Term<N>, value: Symbol },
}

impl<N> Equation<N> {
    pub fn path(lhs: Term<N>, rhs: Term<N>) -> Self {
        Equation::Path { lhs, rhs }
    }

    pub fn value(term: Term<N>, value: Symbol) -> Self {
        Equation::Value { term, value }
    }

    /// Names mentioned by the equation, left to right.
    pub fn names(&self) -> impl Iterator<Item = &N> {
        let (first, second) = match self {
            Equation::Path { lhs, rhs } => (&lhs.name, Some(&rhs.name)),
            Equation::Value { term, .. } => (&term.name, None),
        };
        core::iter::once(first).chain(second)
    }

    /// Attribute symbols mentioned by the equation.
    pub fn attributes(&self) -> impl Iterator<Item = &Symbol> {
        let (first, second): (&[Symbol], &[Symbol]) = match self {
            Equation::Path { lhs, rhs } => (&lhs.path, &rhs.path),
            Equation::Value { term, .. } => (&term.path, &[]),
        };
        first.iter().chain(second.iter())
    }

    pub fn map_names<M>(self, mut f: impl FnMut(N) -> M) -> Equation<M> {
        match self {
            Equation::Path { lhs, rhs } => Equation::Path {
                lhs: Term::new(f(lhs.name), lhs.path),
                rhs: Term::new(f(rhs.name), rhs.path),
            },
            Equation::Value { term, value } => Equation::Value {
                term: Term::new(f(term.name), term.path),
                value,
            },
        }
    }
}

impl<N: fmt::Display> fmt::Display for Term<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for attr in &self.path {
            write!(f, " {attr}")?;
        }
        Ok(())
    }
}

impl<N: fmt::Display> fmt::Display for Equation<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equation::Path { lhs, rhs } => write!(f, "{lhs} = {rhs}"),
            Equation::Value { term, value } => write!(f, "{term} = #{value}"),
        }
    }
}
