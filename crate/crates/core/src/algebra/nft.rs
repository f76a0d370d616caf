use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::AlgebraError;
use crate::grammar::FreshNames;
use crate::Symbol;

/// One entry of `δ0`: reading `input` (`None` for ε) in `from` may move to
/// `to` writing `output`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Transition {
    pub from: Symbol,
    pub input: Option<Symbol>,
    pub to: Symbol,
    pub output: Vec<Symbol>,
}

/// A nondeterministic finite transducer `⟨Q, Δ, Σ, δ0, q0, F⟩`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transducer {
    pub states: BTreeSet<Symbol>,
    pub input: BTreeSet<Symbol>,
    pub output: BTreeSet<Symbol>,
    pub transitions: BTreeSet<Transition>,
    pub initial: Symbol,
    pub finals: BTreeSet<Symbol>,
}

impl Transducer {
    pub fn new(
        initial: impl Into<Symbol>,
        input: impl IntoIterator<Item = Symbol>,
        output: impl IntoIterator<Item = Symbol>,
    ) -> Self {
        let initial = initial.into();
        Transducer {
            states: BTreeSet::from([initial.clone()]),
            input: input.into_iter().collect(),
            output: output.into_iter().collect(),
            transitions: BTreeSet::new(),
            initial,
            finals: BTreeSet::new(),
        }
    }

    pub fn add_state(&mut self, q: impl Into<Symbol>) {
        self.states.insert(q.into());
    }

    pub fn add_final(&mut self, q: impl Into<Symbol>) {
        let q = q.into();
        self.states.insert(q.clone());
        self.finals.insert(q);
    }

    /// Adds a transition, declaring its states and symbols.
    pub fn add_transition(
        &mut self,
        from: impl Into<Symbol>,
        input: Option<&str>,
        to: impl Into<Symbol>,
        output: Vec<Symbol>,
    ) {
        let t = Transition {
            from: from.into(),
            input: input.map(Symbol::new),
            to: to.into(),
            output,
        };
        self.states.insert(t.from.clone());
        self.states.insert(t.to.clone());
        self.input.extend(t.input.clone());
        self.output.extend(t.output.iter().cloned());
        self.transitions.insert(t);
    }

    /// `δ0(q, b)`.
    pub fn step<'a>(&'a self, q: &'a Symbol, b: Option<&'a Symbol>) -> impl Iterator<Item = &'a Transition> {
        self.transitions
            .iter()
            .filter(move |t| &t.from == q && t.input.as_ref() == b)
    }

    /// Problems that make the tuple ill-formed: undeclared states or symbols.
    pub fn check(&self) -> Vec<AlgebraError> {
        let mut out = Vec::new();
        for t in &self.transitions {
            if let Some(a) = &t.input {
                if !self.input.contains(a) {
                    out.push(AlgebraError::TerminalNotInInput(a.clone()));
                }
            }
            for b in &t.output {
                if !self.output.contains(b) {
                    out.push(AlgebraError::NotInOutput(b.clone()));
                }
            }
        }
        out
    }
}

/// The bounded part of `M(w)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Outputs {
    pub strings: BTreeSet<Vec<Symbol>>,
    /// Some run was cut off because its output outgrew the bound.
    pub truncated: bool,
}

/// Every `x ∈ M(w)` with `|x| ≤ max_out`.
///
/// Explores configurations (state, input position, output written) breadth
/// first; a run whose output would exceed `max_out` is dropped and sets the
/// truncation flag, which also covers output-writing ε-cycles.
pub fn nft_outputs(m: &Transducer, w: &[Symbol], max_out: usize) -> Outputs {
    let mut result = Outputs::default();
    let start = (m.initial.clone(), 0usize, Vec::new());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((q, i, x)) = queue.pop_front() {
        if i == w.len() && m.finals.contains(&q) {
            result.strings.insert(x.clone());
        }
        let moves = m
            .step(&q, None)
            .map(|t| (t, i))
            .chain(w.get(i).into_iter().flat_map(|a| m.step(&q, Some(a)).map(move |t| (t, i + 1))));
        for (t, j) in moves {
            if x.len() + t.output.len() > max_out {
                result.truncated = true;
                continue;
            }
            let mut y = x.clone();
            y.extend(t.output.iter().cloned());
            let next = (t.to.clone(), j, y);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    result
}

/// The one-state transducer `δ0(q0, a) = {(q0, h(a))}` for a string
/// homomorphism `h` total on `input`.
pub fn from_homomorphism(
    h: &BTreeMap<Symbol, Vec<Symbol>>,
    input: Vec<Symbol>,
    output: Vec<Symbol>,
) -> Result<Transducer, AlgebraError> {
    let mut m = Transducer::new("q0", input.clone(), output);
    m.add_final("q0");
    for a in &input {
        let image = h.get(a).ok_or_else(|| AlgebraError::NotTotal(a.clone()))?;
        if let Some(b) = image.iter().find(|b| !m.output.contains(*b)) {
            return Err(AlgebraError::NotInOutput(b.clone()));
        }
        m.add_transition("q0", Some(a.as_str()), "q0", image.clone());
    }
    Ok(m)
}

/// A transducer for `M⁻¹`: each transition reading `a` and writing
/// `b1 … bn` becomes a chain through new states reading `b1, …, bn`, the
/// last step writing `a`; with `n = 0` it is a single ε-input step writing `a`.
pub fn nft_invert(m: &Transducer) -> Transducer {
    let mut names = FreshNames::new(m.states.iter().cloned());
    let mut inv = Transducer::new(m.initial.clone(), m.output.iter().cloned(), m.input.iter().cloned());
    inv.states.extend(m.states.iter().cloned());
    inv.finals = m.finals.clone();
    for t in &m.transitions {
        let written: Vec<Symbol> = t.input.iter().cloned().collect();
        if t.output.is_empty() {
            inv.transitions.insert(Transition {
                from: t.from.clone(),
                input: None,
                to: t.to.clone(),
                output: written,
            });
            continue;
        }
        let mut from = t.from.clone();
        for (k, b) in t.output.iter().enumerate() {
            let last = k + 1 == t.output.len();
            let to = if last { t.to.clone() } else { names.fresh(&t.from) };
            inv.states.insert(to.clone());
            inv.transitions.insert(Transition {
                from: from.clone(),
                input: Some(b.clone()),
                to: to.clone(),
                output: if last { written.clone() } else { vec![] },
            });
            from = to;
        }
    }
    inv
}
