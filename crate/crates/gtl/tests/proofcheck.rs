mod common;

use gtl::parse;
use gtl::proofcheck::{check_proof, ipc_tautology, Proof};
use gtl::Formula;
use proptest::prelude::*;

#[test]
fn corpus_checks_and_proves_the_lemma() {
    for ((name, proof), (item, text)) in common::proof_corpus().iter().zip(common::LEMMA_ITEMS) {
        assert_eq!(*name, format!("lemma_{item}"));
        assert_eq!(check_proof(proof), Ok(()), "{name}");
        assert_eq!(proof.conclusion(), Some(&parse(text).unwrap()), "{name}");
    }
}

#[test]
fn json_round_trip() {
    for (name, proof) in common::proof_corpus() {
        let back = Proof::from_json_str(&proof.to_json_string()).unwrap();
        assert_eq!(back, proof, "{name}");
    }
}

#[test]
fn fifty_mutations_rejected() {
    let ms = common::proof_mutations();
    assert_eq!(ms.len(), 50);
    for (what, p) in ms {
        assert!(check_proof(&p).is_err(), "accepted mutation {what}");
    }
}

#[test]
fn malformed_json() {
    assert!(Proof::from_json_str("{\"steps\": [").is_err());
    assert!(Proof::from_json_str(r#"{"steps":[{"formula":"p","by":{"kind":"mp","premises":[0]}}]}"#).is_err());
    assert!(Proof::from_json_str(r#"{"steps":[{"formula":"p","by":{"kind":"magic"}}]}"#).is_err());
}

// Heyting evaluation on the chain 0 < 1 < ... < n-1.
fn chain_value(f: &Formula, n: u8, val: &dyn Fn(&str) -> u8) -> Option<u8> {
    use Formula::*;
    let top = n - 1;
    Some(match f {
        Var(v) => val(v),
        Top => top,
        Bot => 0,
        And(a, b) => chain_value(a, n, val)?.min(chain_value(b, n, val)?),
        Or(a, b) => chain_value(a, n, val)?.max(chain_value(b, n, val)?),
        Imp(a, b) => {
            let (x, y) = (chain_value(a, n, val)?, chain_value(b, n, val)?);
            if x <= y {
                top
            } else {
                y
            }
        }
        _ => return None,
    })
}

fn chain_valid(f: &Formula, n: u8) -> bool {
    let vars = f.vars();
    let total = (n as usize).pow(vars.len() as u32);
    (0..total).all(|mut code| {
        let mut asg = vec![];
        for _ in &vars {
            asg.push((code % n as usize) as u8);
            code /= n as usize;
        }
        let val = |v: &str| asg[vars.iter().position(|w| w == v).unwrap()];
        chain_value(f, n, &val) == Some(n - 1)
    })
}

fn prop_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::var("p")),
        Just(Formula::var("q")),
        Just(Formula::var("r")),
        Just(Formula::Top),
        Just(Formula::Bot),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    // Tautologies hold on every finite Goedel chain; chain refutation
    // therefore rules a formula out.
    #[test]
    fn ipc_sound_on_chains(f in prop_formula()) {
        if ipc_tautology(&f) {
            for n in 2..=4 {
                prop_assert!(chain_valid(&f, n), "{} fails on the {}-chain", f, n);
            }
        }
    }

    // On the two-element chain, tautologies coincide with classical ones, so
    // the double negation of anything classically valid is intuitionistic.
    #[test]
    fn glivenko(f in prop_formula()) {
        let nn = Formula::not(Formula::not(f.clone()));
        prop_assert_eq!(chain_valid(&f, 2), ipc_tautology(&nn));
    }
}

#[test]
fn ipc_known_cases() {
    let no = ["p | ~p", "((p -> q) -> p) -> p", "(p -> q) | (q -> p)", "~~p -> p", "(~p -> ~q) -> (q -> p)"];
    for s in no {
        assert!(!ipc_tautology(&parse(s).unwrap()), "{s}");
    }
    let yes = [
        "~~(p | ~p)",
        "(p -> q) -> (~q -> ~p)",
        "((p | q) -> r) <-> ((p -> r) & (q -> r))",
        "~(p | q) <-> ~p & ~q",
        "(p -> q -> r) -> (p -> q) -> p -> r",
        "~~(((p -> q) -> p) -> p)",
    ];
    for s in yes {
        assert!(ipc_tautology(&parse(s).unwrap()), "{s}");
    }
}
