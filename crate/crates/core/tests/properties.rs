//! Randomized properties across module boundaries.

use num_bigint::BigUint;
use proptest::prelude::*;

use comproc::automata::{are_equivalent, complement, determinize, minimize, product, Nfa, ProductMode};
use comproc::ca::{orbit, step, Configuration, LocalRule};
use comproc::logic::{model_check, parse_formula, Formula};
use comproc::machines::{pair, unpair, Program};
use comproc::process::ca_to_process;

/// A quiescent rule: alphabet 2..=3, width 1..=3, anchor -2..=2.
fn rule() -> impl Strategy<Value = LocalRule> {
    (2u8..=3, 1usize..=3, -2i64..=2).prop_flat_map(|(n, w, o)| {
        let size = (n as usize).pow(w as u32);
        prop::collection::vec(0..n, size - 1).prop_map(move |rest| {
            let table = std::iter::once(0).chain(rest).collect();
            LocalRule::new(n, w, o, table).expect("quiescent by construction")
        })
    })
}

fn configuration(n: u8) -> impl Strategy<Value = Configuration> {
    (prop::collection::vec(0..n, 0..12), -8i64..8).prop_map(|(c, o)| Configuration::new(c, o))
}

fn rule_and_config() -> impl Strategy<Value = (LocalRule, Configuration)> {
    rule().prop_flat_map(|r| {
        let n = r.alphabet_size();
        (Just(r), configuration(n))
    })
}

fn nfa(alphabet: usize) -> impl Strategy<Value = Nfa> {
    (1usize..=5).prop_flat_map(move |n| {
        (
            prop::collection::vec((0..n, 0..alphabet, 0..n), 0..3 * n * alphabet),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(edges, accepting)| {
                let mut a = Nfa::new(alphabet, n).unwrap();
                for (p, s, q) in edges {
                    a.add_transition(p, s, q).unwrap();
                }
                for (q, &f) in accepting.iter().enumerate() {
                    a.set_accepting(q, f).unwrap();
                }
                a.set_initial(0).unwrap();
                a
            })
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    let var = prop::sample::select(vec!["x", "y", "z"]);
    let atom = (var.clone(), var.clone(), any::<bool>())
        .prop_map(|(x, y, s)| if s { Formula::step(x, y) } else { Formula::eq(x, y) });
    atom.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::and(f, g)),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| Formula::or(f, g)),
            (var.clone(), inner.clone()).prop_map(|(x, f)| Formula::exists(x, f)),
            (var.clone(), inner).prop_map(|(x, f)| Formula::forall(x, f)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn global_map_commutes_with_shifts((r, x) in rule_and_config(), k in -20i64..20) {
        prop_assert_eq!(step(&r, &x.translate(k)), step(&r, &x).translate(k));
    }

    #[test]
    fn transducer_route_matches_global_map((r, x) in rule_and_config()) {
        prop_assert_eq!(ca_to_process(&r, &x).orbit(12), orbit(&r, &x, 12).configurations);
    }

    #[test]
    fn global_map_is_a_function_in_logic(r in rule()) {
        let f = parse_formula("A x . E y . (x -> y & A z . (!x -> z | z = y))").unwrap();
        prop_assert!(model_check(&r, &f).unwrap());
    }

    #[test]
    fn pairing_is_a_bijection(a in 0u64..1 << 28, b in 0u64..1 << 28, z in 0u64..1 << 50) {
        prop_assert_eq!(unpair(pair(a, b).unwrap()), (a, b));
        let (p, q) = unpair(z);
        prop_assert_eq!(pair(p, q), Some(z));
    }

    #[test]
    fn program_numbering_round_trips(e in 0u64..1 << 40) {
        let p = Program::decode_u64(e);
        prop_assert_eq!(p.encode(), BigUint::from(e));
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Program>().unwrap(), p);
    }

    #[test]
    fn boolean_algebra(a in nfa(2), b in nfa(2)) {
        let d = determinize(&a);
        prop_assert!(are_equivalent(&a, &minimize(&d).to_nfa()).unwrap());
        prop_assert!(are_equivalent(&a, &complement(&complement(&d)).to_nfa()).unwrap());
        // De Morgan through the product construction
        let nb = complement(&determinize(&b)).to_nfa();
        let na = complement(&d).to_nfa();
        let lhs = complement(&determinize(&product(&a, &b, ProductMode::Union).unwrap())).to_nfa();
        prop_assert!(are_equivalent(&lhs, &product(&na, &nb, ProductMode::Intersect).unwrap()).unwrap());
    }

    #[test]
    fn formula_display_round_trips(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }
}
