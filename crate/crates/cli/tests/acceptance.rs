//! The acceptance suite. Each criterion is checked against an oracle built
//! here from first principles and prints one PASS or FAIL line.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use thfsg::{parse_grammar, parse_transducer};
use thfsg_core::algebra::{concat, nft_image_grammar, nft_outputs, star, union, Transducer};
use thfsg_core::cstructure::{CStructure, TreeAddress};
use thfsg_core::fixtures;
use thfsg_core::fs::{
    describe, equivalent, subsumes, unify, Equation, FeatureStructure, InconsistencyKind, NodeId, RawFeatureStructure,
    Term,
};
use thfsg_core::grammar::{is_normal_form, normalize, Grammar};
use thfsg_core::parser::{Parser, Recognition, SearchLimits};
use thfsg_core::Symbol;

type Strings = BTreeSet<Vec<Symbol>>;

/// Grammars and strings accepted along the way, reparsed by the
/// homomorphism criterion.
#[derive(Default)]
struct Witnesses(Vec<(String, Grammar, Vec<Vec<Symbol>>)>);

impl Witnesses {
    fn add(&mut self, label: &str, g: &Grammar, strings: &Strings) {
        self.0.push((label.to_string(), g.clone(), strings.iter().cloned().collect()));
    }
}

fn fixture_grammar(name: &str) -> Grammar {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    parse_grammar(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn fixture_machine(name: &str) -> Transducer {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    parse_transducer(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn syms(tokens: &[&str]) -> Vec<Symbol> {
    tokens.iter().map(|t| Symbol::new(t)).collect()
}

fn enumerate(g: &Grammar, max_len: usize) -> Strings {
    Parser::new(g).unwrap().enumerate(max_len, &SearchLimits::default()).unwrap()
}

/// `{ w c^(2^n) w : w ∈ {a,b}^n }` up to `max_len` tokens.
fn counting_language(max_len: usize) -> Strings {
    let mut out = BTreeSet::new();
    let mut n = 1;
    while 2 * n + (1 << n) <= max_len {
        for bits in 0..1u32 << n {
            let w: Vec<Symbol> = (0..n)
                .map(|i| Symbol::new(if bits >> (n - 1 - i) & 1 == 0 { "a" } else { "b" }))
                .collect();
            let mut s = w.clone();
            s.extend(std::iter::repeat_n(Symbol::new("c"), 1 << n));
            s.extend(w);
            out.insert(s);
        }
        n += 1;
    }
    out
}

const NOUNS: [&str; 3] = ["em Hans", "es Hans", "d'chind"];
const VERBS: [&str; 2] = ["hälfe", "laa"];

fn agrees(noun: &str, verb: &str) -> bool {
    (noun == "em Hans") == (verb == "hälfe")
}

fn clause(nouns: &[&str], verbs: &[&str]) -> Vec<Symbol> {
    let mut s = vec![Symbol::new("x")];
    s.extend(nouns.iter().map(|n| Symbol::new(n)));
    s.push(Symbol::new("y"));
    s.extend(verbs.iter().map(|v| Symbol::new(v)));
    s.push(Symbol::new("z"));
    s
}

/// Every choice of `n` items from `pool`, in odometer order.
fn sequences<'a>(pool: &[&'a str], n: usize) -> Vec<Vec<&'a str>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(*x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Case-matched clauses with `1 ≤ n` and at most `max_len` tokens.
fn swiss_language(max_len: usize) -> Strings {
    let mut out = BTreeSet::new();
    let mut n = 1;
    while 2 * n + 3 <= max_len {
        for nouns in sequences(&NOUNS, n) {
            let verbs: Vec<&str> = nouns.iter().map(|&m| if m == "em Hans" { "hälfe" } else { "laa" }).collect();
            out.insert(clause(&nouns, &verbs));
        }
        n += 1;
    }
    out
}

fn concat_sets(l1: &Strings, l2: &Strings, max_len: usize) -> Strings {
    let mut out = BTreeSet::new();
    for u in l1 {
        for v in l2 {
            if u.len() + v.len() <= max_len {
                out.insert(u.iter().chain(v).cloned().collect());
            }
        }
    }
    out
}

fn kleene(l: &Strings, max_len: usize) -> Strings {
    let mut out: Strings = BTreeSet::from([vec![]]);
    loop {
        let next: Strings = out.union(&concat_sets(&out, l, max_len)).cloned().collect();
        if next == out {
            return out;
        }
        out = next;
    }
}

fn criterion_1(w: &mut Witnesses) {
    let g1 = fixture_grammar("g1.thfsg");
    let got = enumerate(&g1, 10);
    let expected = counting_language(10);
    assert_eq!(expected.len(), 6);
    assert_eq!(got, expected);
    w.add("g1", &g1, &got);
}

fn criterion_2(w: &mut Witnesses) {
    let swiss = fixture_grammar("swiss.thfsg");
    let parser = Parser::new(&swiss).unwrap();
    let limits = SearchLimits::default();
    let mut accepted = BTreeSet::new();
    for n in 1..=3 {
        let noun_seqs = sequences(&NOUNS, n);
        let verb_seqs = sequences(&VERBS, n);
        let mut mismatched = Vec::new();
        for nouns in &noun_seqs {
            for verbs in &verb_seqs {
                let s = clause(nouns, verbs);
                if nouns.iter().zip(verbs).all(|(a, b)| agrees(a, b)) {
                    let r = parser.recognize(&s, &limits).unwrap();
                    assert!(r.is_accept(), "matched skeleton rejected: {s:?}");
                    accepted.insert(s);
                } else {
                    mismatched.push(s);
                }
            }
        }
        assert_eq!(mismatched.len(), 6usize.pow(n as u32) - 3usize.pow(n as u32));
        let checked: Vec<&Vec<Symbol>> = if n <= 2 {
            mismatched.iter().collect()
        } else {
            mismatched.iter().step_by(3).collect()
        };
        assert!(n <= 2 || checked.len() >= 50);
        for s in checked {
            match parser.recognize(s, &limits).unwrap() {
                Recognition::Reject(Some(clash)) => {
                    assert_eq!(clash.inconsistency.kind(), InconsistencyKind::ValueClash, "{s:?}")
                }
                other => panic!("mismatched skeleton {s:?} gave {other:?}"),
            }
        }
    }
    assert_eq!(accepted.len(), 3 + 9 + 27);

    let crossed = syms(&["x", "d'chind", "em Hans", "y", "laa", "hälfe", "z"]);
    assert!(parser.recognize(&crossed, &limits).unwrap().is_accept());
    let grammatical = syms(&["x", "em Hans", "d'chind", "y", "hälfe", "laa", "z"]);
    assert!(parser.recognize(&grammatical, &limits).unwrap().is_accept());
    let bad = syms(&["x", "es Hans", "d'chind", "y", "hälfe", "laa", "z"]);
    let Recognition::Reject(Some(clash)) = parser.recognize(&bad, &limits).unwrap() else {
        panic!("mismatch string not rejected with a clash");
    };
    assert_eq!(clash.inconsistency.kind(), InconsistencyKind::ValueClash);
    let text = clash.inconsistency.to_string();
    assert!(text.contains("#DAT") && text.contains("#ACC"), "{text}");
    w.add("swiss", &swiss, &accepted);
}

fn criterion_3(w: &mut Witnesses) {
    for (name, oracle) in [("g1.thfsg", counting_language(8)), ("swiss.thfsg", swiss_language(8))] {
        let g = fixture_grammar(name);
        let n = normalize(&g).unwrap();
        assert!(is_normal_form(&n), "{name}");
        let before = enumerate(&g, 8);
        let after = enumerate(&n, 8);
        assert_eq!(before, oracle, "{name}");
        assert_eq!(after, before, "{name}");
        w.add(&format!("normalized {name}"), &n, &after);
    }
}

fn criterion_4(w: &mut Witnesses) {
    const L: usize = 8;
    let operands = [
        ("g1", fixture_grammar("g1.thfsg")),
        ("swiss", fixture_grammar("swiss.thfsg")),
        ("d", fixtures::singleton("D", "d")),
        ("eps", fixtures::empty_string("E")),
        ("none", fixtures::empty_language("S")),
    ];
    let lang: BTreeMap<&str, Strings> = operands.iter().map(|(k, g)| (*k, enumerate(g, L))).collect();
    let g = |k: &str| &operands.iter().find(|(n, _)| *n == k).unwrap().1;

    for (a, b) in [("g1", "swiss"), ("g1", "d"), ("g1", "g1"), ("swiss", "eps"), ("d", "none")] {
        let u = union(g(a), g(b));
        let got = enumerate(&u, L);
        let expected: Strings = lang[a].union(&lang[b]).cloned().collect();
        assert_eq!(got, expected, "union({a}, {b})");
        w.add(&format!("union({a}, {b})"), &u, &got);
    }
    for (a, b) in [("g1", "g1"), ("g1", "d"), ("d", "swiss"), ("eps", "g1"), ("g1", "none")] {
        let c = concat(g(a), g(b));
        let got = enumerate(&c, L);
        assert_eq!(got, concat_sets(&lang[a], &lang[b], L), "concat({a}, {b})");
        w.add(&format!("concat({a}, {b})"), &c, &got);
    }
    for a in ["g1", "d", "swiss", "eps", "none"] {
        let s = star(g(a));
        let got = enumerate(&s, L);
        assert_eq!(got, kleene(&lang[a], L), "star({a})");
        w.add(&format!("star({a})"), &s, &got);
    }
}

fn criterion_5(w: &mut Witnesses) {
    const L: usize = 10;
    let g1 = fixture_grammar("g1.thfsg");
    let normal = normalize(&g1).unwrap();
    let words = enumerate(&g1, L);
    for name in ["echo_aca.nft", "merge_ab.nft"] {
        let m = fixture_machine(name);
        let image = nft_image_grammar(&normal, &m).unwrap();
        let got = enumerate(&image, L);
        let brute: Strings = words.iter().flat_map(|x| nft_outputs(&m, x, L).strings).collect();
        assert_eq!(got, brute, "{name}");
        if name == "echo_aca.nft" {
            let expected: Strings = [syms(&["a", "c", "c", "a"]), syms(&["a", "a", "c", "c", "c", "c", "a", "a"])].into();
            assert_eq!(got, expected);
        }
        w.add(&format!("image of g1 under {name}"), &image, &got);
    }
}

/// Nodes reachable from `from`, itself included, computed from the edges.
fn reachable(fs: &FeatureStructure<TreeAddress>, from: NodeId) -> BTreeSet<NodeId> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![from];
    while let Some(q) = stack.pop() {
        if seen.insert(q) {
            stack.extend(fs.edges_from(q).map(|(_, r)| r));
        }
    }
    seen
}

fn homomorphism_counterexample(tree: &CStructure, fs: &FeatureStructure<TreeAddress>) -> Option<String> {
    let mut incoming = vec![0usize; fs.len()];
    for q in fs.nodes() {
        for (_, r) in fs.edges_from(q) {
            incoming[r.0] += 1;
        }
    }
    if let Some(q) = incoming.iter().position(|&d| d > 1) {
        return Some(format!("node {q} has in-degree {}", incoming[q]));
    }
    let named: Vec<(&TreeAddress, NodeId)> = fs.names().collect();
    for &(x, p) in &named {
        if tree.get(x).is_none() {
            return Some(format!("{x} is not an address of the tree"));
        }
        let below = reachable(fs, p);
        for &(y, q) in &named {
            if x.digits().len() < y.digits().len() && y.digits().starts_with(x.digits()) && !below.contains(&q) {
                return Some(format!("{x} is a prefix of {y} but its node does not dominate"));
            }
        }
    }
    None
}

fn criterion_6(w: &mut Witnesses) {
    let limits = SearchLimits {
        max_parses: 3,
        ..SearchLimits::default()
    };
    let mut parses = 0;
    for (label, g, strings) in &w.0 {
        let parser = Parser::new(g).unwrap();
        for s in strings {
            let found = parser.parse_all(s, &limits).unwrap();
            assert!(!found.is_empty(), "{label}: {s:?} has no witness");
            for p in found {
                assert!(p.tree.validate(g).is_empty(), "{label}: {s:?}");
                assert_eq!(&p.tree.terminal_string(), s);
                assert!(p.fs.supports(&p.tree.instantiate()), "{label}: {s:?}");
                if let Some(problem) = homomorphism_counterexample(&p.tree, &p.fs) {
                    panic!("{label}: {s:?}: {problem}");
                }
                parses += 1;
            }
        }
    }
    assert!(parses > 100, "only {parses} witnesses");
}

type Fs = FeatureStructure<Symbol>;

const NAMES: [&str; 3] = ["x", "y", "z"];
const ATTRS: [&str; 3] = ["a", "b", "c"];
const VALUES: [&str; 2] = ["u", "v"];
const MAX_NODES: usize = 5;

fn equation() -> impl Strategy<Value = Equation<Symbol>> {
    let term = || {
        (
            prop::sample::select(&NAMES[..]),
            prop::collection::vec(prop::sample::select(&ATTRS[..]), 0..=2),
        )
            .prop_map(|(n, p)| Term::new(Symbol::new(n), p.into_iter().map(Symbol::new).collect()))
    };
    prop_oneof![
        (term(), term()).prop_map(|(l, r)| Equation::path(l, r)),
        (term(), prop::sample::select(&VALUES[..])).prop_map(|(t, v)| Equation::value(t, Symbol::new(v))),
    ]
}

/// Every term defined in `m`, with its node.
fn defined_terms(m: &Fs) -> Vec<(Term<Symbol>, NodeId)> {
    let mut out = Vec::new();
    for (name, q) in m.names() {
        let mut stack = vec![(Vec::new(), q)];
        while let Some((path, p)) = stack.pop() {
            for (attr, r) in m.edges_from(p) {
                let mut longer = path.clone();
                longer.push(attr.clone());
                stack.push((longer, r));
            }
            out.push((Term::new(name.clone(), path), p));
        }
    }
    out
}

/// `m1 ⊑ m2` from the definition: every equation `m1` supports holds in
/// `m2`. Those equations relate defined terms of `m1`, so comparing the
/// defined terms, their sharing and their values decides it.
fn semantically_subsumes(m1: &Fs, m2: &Fs) -> bool {
    let terms = defined_terms(m1);
    for (i, (t, q)) in terms.iter().enumerate() {
        if let Some(v) = m1.value(*q) {
            if !m2.satisfies(&Equation::value(t.clone(), v.clone())) {
                return false;
            }
        }
        for (u, r) in &terms[i..] {
            if q == r && !m2.satisfies(&Equation::path(t.clone(), u.clone())) {
                return false;
            }
        }
    }
    true
}

/// All terms and their prefixes occurring in `eqs`, shortest first.
fn prefix_terms(eqs: &[Equation<Symbol>]) -> Vec<Term<Symbol>> {
    let mut set = BTreeSet::new();
    for eq in eqs {
        let terms = match eq {
            Equation::Path { lhs, rhs } => vec![lhs, rhs],
            Equation::Value { term, .. } => vec![term],
        };
        for t in terms {
            for k in 0..=t.path.len() {
                set.insert((k, t.name.clone(), t.path[..k].to_vec()));
            }
        }
    }
    set.into_iter().map(|(_, n, p)| Term::new(n, p)).collect()
}

/// Every well-formed structure with at most [`MAX_NODES`] nodes whose nodes
/// are the values of the terms of `eqs` and which supports `eqs`, up to
/// renaming of nodes.
///
/// Any structure supporting `eqs` contains one of these as the part reached
/// by the terms of `eqs`; further nodes, edges and values only add
/// information, so these are the structures a least model must subsume.
fn supporting_structures(eqs: &[Equation<Symbol>]) -> Vec<Fs> {
    struct Search<'a> {
        eqs: &'a [Equation<Symbol>],
        terms: Vec<Term<Symbol>>,
        block: BTreeMap<Term<Symbol>, usize>,
        edges: BTreeMap<(usize, Symbol), usize>,
        blocks: usize,
        out: Vec<Fs>,
    }

    impl Search<'_> {
        fn reaches(&self, from: usize, to: usize) -> bool {
            let mut stack = vec![from];
            let mut seen = BTreeSet::new();
            while let Some(q) = stack.pop() {
                if q == to {
                    return true;
                }
                if seen.insert(q) {
                    stack.extend(self.edges.iter().filter(|((p, _), _)| *p == q).map(|(_, r)| *r));
                }
            }
            false
        }

        fn consistent(&self) -> bool {
            let mut values: BTreeMap<usize, &Symbol> = BTreeMap::new();
            for eq in self.eqs {
                match eq {
                    Equation::Path { lhs, rhs } => {
                        if let (Some(p), Some(q)) = (self.block.get(lhs), self.block.get(rhs)) {
                            if p != q {
                                return false;
                            }
                        }
                    }
                    Equation::Value { term, value } => {
                        if let Some(&p) = self.block.get(term) {
                            if *values.entry(p).or_insert(value) != value {
                                return false;
                            }
                            if self.edges.keys().any(|(q, _)| *q == p) {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        }

        fn run(&mut self, i: usize) {
            if i == self.terms.len() {
                self.emit();
                return;
            }
            let t = self.terms[i].clone();
            let Some((attr, parent)) = t.path.split_last().map(|(a, rest)| (a.clone(), Term::new(t.name.clone(), rest.to_vec())))
            else {
                for b in 0..=self.blocks.min(MAX_NODES - 1) {
                    self.assign(i, &t, b, None);
                }
                return;
            };
            let p = self.block[&parent];
            if let Some(&q) = self.edges.get(&(p, attr.clone())) {
                self.assign(i, &t, q, None);
                return;
            }
            for q in 0..=self.blocks.min(MAX_NODES - 1) {
                if q < self.blocks && self.reaches(q, p) {
                    continue;
                }
                if q == self.blocks && q == p {
                    continue;
                }
                self.assign(i, &t, q, Some((p, attr.clone())));
            }
        }

        fn assign(&mut self, i: usize, t: &Term<Symbol>, b: usize, edge: Option<(usize, Symbol)>) {
            let grew = b == self.blocks;
            if grew {
                self.blocks += 1;
            }
            if let Some(e) = &edge {
                self.edges.insert(e.clone(), b);
            }
            self.block.insert(t.clone(), b);
            if self.consistent() {
                self.run(i + 1);
            }
            self.block.remove(t);
            if let Some(e) = &edge {
                self.edges.remove(e);
            }
            if grew {
                self.blocks -= 1;
            }
        }

        fn emit(&mut self) {
            let mut raw = RawFeatureStructure::with_nodes(self.blocks);
            for (t, &b) in &self.block {
                if t.path.is_empty() {
                    raw.set_name(t.name.clone(), NodeId(b));
                }
            }
            for ((p, a), q) in &self.edges {
                raw.set_edge(NodeId(*p), a.clone(), NodeId(*q));
            }
            for eq in self.eqs {
                if let Equation::Value { term, value } = eq {
                    raw.set_value(NodeId(self.block[term]), value.clone());
                }
            }
            let m = FeatureStructure::from_raw(raw).expect("search keeps structures well formed");
            assert!(m.supports(self.eqs), "search produced a non-model");
            self.out.push(m);
        }
    }

    let mut search = Search {
        eqs,
        terms: prefix_terms(eqs),
        block: BTreeMap::new(),
        edges: BTreeMap::new(),
        blocks: 0,
        out: Vec::new(),
    };
    search.run(0);
    search.out
}

fn check_equation_set(eqs: &[Equation<Symbol>]) -> Result<(), TestCaseError> {
    let described = describe(eqs);
    let models = supporting_structures(eqs);

    match &described {
        Ok(d) => {
            prop_assert!(d.supports(eqs));
            let names: BTreeSet<&Symbol> = eqs.iter().flat_map(|e| e.names()).collect();
            let bound: BTreeSet<&Symbol> = d.names().map(|(n, _)| n).collect();
            prop_assert_eq!(bound, names);
            for m in &models {
                prop_assert!(subsumes(d, m), "describe output does not subsume a model");
                prop_assert!(semantically_subsumes(d, m));
            }
            if d.len() <= MAX_NODES {
                prop_assert!(models.iter().any(|m| equivalent(m, d)), "least model missing from the search");
            }
        }
        Err(_) => prop_assert!(models.is_empty(), "inconsistent set has a model"),
    }

    for k in 0..=eqs.len() {
        let (e1, e2) = eqs.split_at(k);
        let joined = match (describe(e1), describe(e2)) {
            (Ok(m1), Ok(m2)) => {
                for (a, b) in [(&m1, &m2), (&m2, &m1)] {
                    prop_assert_eq!(subsumes(a, b), semantically_subsumes(a, b));
                }
                unify(&m1, &m2).ok()
            }
            _ => None,
        };
        match (&described, joined) {
            (Ok(d), Some(j)) => prop_assert!(equivalent(d, &j) && semantically_subsumes(d, &j) && semantically_subsumes(&j, d)),
            (Err(_), None) => {}
            _ => return Err(TestCaseError::fail(format!("split at {k}: consistency differs"))),
        }
    }

    for a in models.iter().take(8) {
        for b in models.iter().rev().take(8) {
            prop_assert_eq!(subsumes(a, b), semantically_subsumes(a, b));
        }
        if let Ok(d) = &described {
            prop_assert_eq!(subsumes(a, d), semantically_subsumes(a, d));
        }
    }
    Ok(())
}

fn criterion_7(_: &mut Witnesses) {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = prop::collection::vec(equation(), 0..=6);
    if let Err(e) = runner.run(&strategy, |eqs| check_equation_set(&eqs)) {
        panic!("{e}");
    }
}

/// Title, time limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn(&mut Witnesses));

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("counting language up to length 10", Some(10), criterion_1),
        ("cross-serial clauses for n = 1, 2, 3", Some(60), criterion_2),
        ("normal form preserves the fixture languages", None, criterion_3),
        ("union, concatenation and star up to length 8", None, criterion_4),
        ("transducer images of the counting language", Some(60), criterion_5),
        ("tree homomorphism of every witness", None, criterion_6),
        ("random equation sets: support, least model, unification, subsumption", Some(120), criterion_7),
    ];
    let mut witnesses = Witnesses::default();
    let mut failed = 0;
    for (i, (title, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut witnesses)));
        let elapsed = start.elapsed();
        let late = limit.is_some_and(|l| elapsed > Duration::from_secs(l));
        let pass = outcome.is_ok() && !late;
        let budget = match limit {
            Some(l) if late => format!(", over the {l} s limit"),
            Some(l) => format!(", limit {l} s"),
            None => String::new(),
        };
        println!(
            "criterion {} {}: {title} ({:.2} s{budget})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
