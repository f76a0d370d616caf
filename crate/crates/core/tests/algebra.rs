use std::collections::BTreeSet;

use thfsg_core::algebra::{concat, nft_image_grammar, nft_invert, nft_outputs, star, union, Transducer};
use thfsg_core::fixtures;
use thfsg_core::grammar::{normalize, validate, Grammar};
use thfsg_core::parser::{enumerate, SearchLimits};
use thfsg_core::Symbol;

type Lang = BTreeSet<Vec<Symbol>>;

fn lang(g: &Grammar, max_len: usize) -> Lang {
    assert!(validate(g).is_empty(), "{:?}", validate(g));
    enumerate(g, max_len, &SearchLimits::default()).unwrap()
}

fn toks(s: &str) -> Vec<Symbol> {
    s.split_whitespace().map(Symbol::new).collect()
}

fn words(items: &[&str]) -> Lang {
    items.iter().map(|s| toks(s)).collect()
}

fn product(a: &Lang, b: &Lang, max_len: usize) -> Lang {
    let mut out = Lang::new();
    for x in a {
        for y in b {
            if x.len() + y.len() <= max_len {
                out.insert([x.clone(), y.clone()].concat());
            }
        }
    }
    out
}

/// `L*` restricted to `max_len`, from the nonempty members of `L`.
fn kleene(l: &Lang, max_len: usize) -> Lang {
    let mut out = Lang::from([vec![]]);
    loop {
        let next: Lang = out.union(&product(&out, l, max_len)).cloned().collect();
        if next == out {
            return out;
        }
        out = next;
    }
}

fn operands() -> Vec<Grammar> {
    vec![
        fixtures::g1(),
        fixtures::singleton("S", "d"),
        fixtures::empty_string("S"),
        fixtures::empty_language("S"),
        fixtures::swiss(),
    ]
}

#[test]
fn union_matches_set_union() {
    for g in operands() {
        for h in operands() {
            let expected: Lang = lang(&g, 8).union(&lang(&h, 8)).cloned().collect();
            assert_eq!(lang(&union(&g, &h), 8), expected);
        }
    }
}

#[test]
fn union_examples() {
    let g1 = fixtures::g1();
    assert_eq!(lang(&union(&g1, &g1), 8), lang(&g1, 8));
    let u = union(&g1, &fixtures::singleton("S", "d"));
    assert_eq!(lang(&u, 4), words(&["d", "a c c a", "b c c b"]));
    assert!(!g1.categories.contains(&u.start));
    let starts: Vec<_> = u.productions.iter().filter(|p| p.lhs == u.start).collect();
    assert_eq!(starts.len(), 2);
    for p in starts {
        assert_eq!(p.rhs.len(), 1);
        assert_eq!(p.rhs[0].annotations.to_string(), "{^ = _}");
    }
}

#[test]
fn concat_matches_language_product() {
    for g in operands() {
        for h in operands() {
            let expected = product(&lang(&g, 8), &lang(&h, 8), 8);
            assert_eq!(lang(&concat(&g, &h), 8), expected);
        }
    }
    let c = concat(&fixtures::g1(), &fixtures::singleton("S", "d"));
    assert_eq!(lang(&c, 5), words(&["a c c a d", "b c c b d"]));
}

#[test]
fn concat_renames_link_attributes_in_use() {
    // g1 uses `next`
    let c = concat(&fixtures::g1(), &fixtures::g1());
    let top = c.productions.iter().find(|p| p.lhs == c.start).unwrap();
    assert_eq!(top.rhs[0].annotations.to_string(), "{^ first = _}");
    assert_eq!(top.rhs[1].annotations.to_string(), "{^ next!1 = _}");
    assert_eq!(lang(&c, 8), words(&["a c c a a c c a", "a c c a b c c b", "b c c b a c c a", "b c c b b c c b"]));
}

#[test]
fn star_matches_kleene_closure() {
    for g in operands() {
        let expected = kleene(&lang(&g, 8), 8);
        assert_eq!(lang(&star(&g), 8), expected);
    }
    let s = star(&fixtures::g1());
    assert_eq!(lang(&s, 0), Lang::from([vec![]]));
    assert_eq!(
        lang(&s, 8),
        words(&[
            "",
            "a c c a",
            "b c c b",
            "a c c a a c c a",
            "a c c a b c c b",
            "b c c b a c c a",
            "b c c b b c c b",
            "a a c c c c a a",
            "a b c c c c a b",
            "b a c c c c b a",
            "b b c c c c b b",
        ])
    );
    assert_eq!(lang(&star(&s), 8), lang(&s, 8));
}

#[test]
fn identity_elements() {
    let g1 = fixtures::g1();
    let eps = fixtures::empty_string("S");
    assert_eq!(lang(&concat(&eps, &g1), 10), lang(&g1, 10));
    assert_eq!(lang(&concat(&g1, &eps), 10), lang(&g1, 10));
    assert!(lang(&concat(&g1, &fixtures::empty_language("S")), 10).is_empty());
}

#[test]
fn combinator_outputs_keep_input_categories_apart() {
    let g = fixtures::g1();
    let u = union(&g, &g);
    // the second copy is renamed, the first kept
    assert!(u.categories.contains("S") && u.categories.contains("2!S"));
    assert!(u.categories.is_disjoint(&u.terminals));
}

/// `{ w c^(2^n) w : w ∈ {a,b}^n, 1 ≤ n ≤ max_n }` from the closed form.
fn counting_language(max_n: usize) -> Lang {
    let mut out = Lang::new();
    for n in 1..=max_n {
        for bits in 0..(1u32 << n) {
            let w: Vec<Symbol> = (0..n)
                .map(|i| Symbol::new(if bits >> i & 1 == 1 { "b" } else { "a" }))
                .collect();
            let c = vec![Symbol::new("c"); 1 << n];
            out.insert([w.clone(), c, w].concat());
        }
    }
    out
}

fn image(g: &Grammar, m: &Transducer, max_len: usize) -> Lang {
    let mut out = Lang::new();
    for w in lang(g, max_len) {
        out.extend(nft_outputs(m, &w, max_len).strings);
    }
    out
}

#[test]
fn image_under_echo_machine_is_intersection() {
    let g1 = fixtures::g1();
    let m = fixtures::echo_aca();
    let gm = nft_image_grammar(&normalize(&g1).unwrap(), &m).unwrap();
    assert!(validate(&gm).is_empty());
    let got = lang(&gm, 10);
    assert_eq!(got, words(&["a c c a", "a a c c c c a a"]));
    assert_eq!(got, image(&g1, &m, 10));
}

#[test]
fn image_under_homomorphism() {
    let g1 = fixtures::g1();
    let m = fixtures::merge_ab();
    let gm = nft_image_grammar(&normalize(&g1).unwrap(), &m).unwrap();
    let got = lang(&gm, 10);
    assert_eq!(got, words(&["a c c a", "a a c c c c a a"]));
    assert_eq!(got, image(&g1, &m, 10));
}

#[test]
fn image_under_writing_and_erasing_machines() {
    // doubling on a grammar over {a}
    let g = union(&fixtures::singleton("S", "a"), &concat(&fixtures::singleton("S", "a"), &fixtures::singleton("S", "a")));
    let g = normalize(&g).unwrap();
    let m = fixtures::doubling();
    let gm = nft_image_grammar(&g, &m).unwrap();
    assert_eq!(lang(&gm, 6), image(&g, &m, 6));
    assert_eq!(lang(&gm, 6), words(&["a a", "a a a a"]));

    // erase c, and write a marker on an ε-step before the final state
    let mut e = Transducer::new("q0", toks("a b c"), toks("a b x"));
    e.add_final("q1");
    for a in ["a", "b"] {
        e.add_transition("q0", Some(a), "q0", toks(a));
    }
    e.add_transition("q0", Some("c"), "q0", vec![]);
    e.add_transition("q0", None, "q1", toks("x"));
    // erased c's let inputs up to w c^16 w reach outputs of length 9
    let mut expected = Lang::new();
    for w in counting_language(4) {
        expected.extend(nft_outputs(&e, &w, 9).strings);
    }
    let g1 = fixtures::g1();
    let gm = nft_image_grammar(&normalize(&g1).unwrap(), &e).unwrap();
    assert_eq!(lang(&gm, 9), expected);
    assert!(expected.contains(&toks("a b a b x")));
}

#[test]
fn inverse_machines_agree_with_the_inverse_relation() {
    let alphabet = toks("a b c");
    let mut inputs = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &layer {
            for t in &alphabet {
                let mut v: Vec<Symbol> = w.clone();
                v.push(t.clone());
                next.push(v);
            }
        }
        inputs.extend(next.iter().cloned());
        layer = next;
    }
    for m in [fixtures::echo_aca(), fixtures::merge_ab(), fixtures::doubling()] {
        let inv = nft_invert(&m);
        let back = nft_invert(&inv);
        let read: Vec<&Vec<Symbol>> = inputs.iter().filter(|w| w.iter().all(|s| m.input.contains(s))).collect();
        for w in &read {
            let forward = nft_outputs(&m, w, 8).strings;
            for x in &forward {
                assert!(nft_outputs(&inv, x, 8).strings.contains(*w), "{w:?} -> {x:?}");
            }
            assert_eq!(nft_outputs(&back, w, 8).strings, forward);
        }
        // nothing spurious: every inverse output maps forward to the input
        for x in inputs.iter().filter(|x| x.iter().all(|s| m.output.contains(s))) {
            for w in nft_outputs(&inv, x, 6).strings {
                assert!(nft_outputs(&m, &w, 8).strings.contains(x));
            }
        }
    }
    let echo = fixtures::echo_aca();
    let inv = nft_invert(&echo);
    for w in &inputs {
        assert_eq!(nft_outputs(&inv, w, 8).strings, nft_outputs(&echo, w, 8).strings);
    }
}
