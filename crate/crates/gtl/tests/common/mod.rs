#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gtl::proofcheck::{Justification, Proof, CORPUS};
use gtl::semantics::{LtlModel, PeriodicRealModel};
use gtl::Formula;
use rand::{Rng, SeedableRng};

const UNARY: [fn(Formula) -> Formula; 4] = [Formula::next, Formula::yesterday, Formula::hence, Formula::hist];

fn binary() -> [fn(Formula, Formula) -> Formula; 6] {
    [Formula::and, Formula::or, Formula::imp, Formula::coimp, Formula::until, Formula::since]
}

fn leaves(vars: &[&str]) -> Vec<Formula> {
    let mut v: Vec<Formula> = vars.iter().map(|s| Formula::var(s)).collect();
    v.push(Formula::Top);
    v.push(Formula::Bot);
    v
}

/// Every formula of exactly `size` nodes.
pub fn all_of_size(size: usize, vars: &[&str]) -> Vec<Formula> {
    let mut by: Vec<Vec<Formula>> = vec![vec![], leaves(vars)];
    for n in 2..=size {
        let mut out = vec![];
        for f in &by[n - 1] {
            for u in UNARY {
                out.push(u(f.clone()));
            }
        }
        for l in 1..n - 1 {
            let r = n - 1 - l;
            for a in &by[l] {
                for b in &by[r] {
                    for op in binary() {
                        out.push(op(a.clone(), b.clone()));
                    }
                }
            }
        }
        by.push(out);
    }
    by.swap_remove(size)
}

pub fn all_up_to(size: usize, vars: &[&str]) -> Vec<Formula> {
    (1..=size).flat_map(|n| all_of_size(n, vars)).collect()
}

/// A random formula with at most `size` nodes.
pub fn random(rng: &mut impl Rng, size: usize, vars: &[&str], classical: bool) -> Formula {
    let lv = leaves(vars);
    if size <= 1 || rng.gen_bool(0.15) {
        return lv[rng.gen_range(0..lv.len())].clone();
    }
    let ops = binary();
    let nb = if classical { 5 } else { 6 };
    if size == 2 || rng.gen_bool(0.35) {
        let f = random(rng, size - 1, vars, classical);
        return UNARY[rng.gen_range(0..UNARY.len())](f);
    }
    let l = rng.gen_range(1..size - 1);
    let a = random(rng, l, vars, classical);
    let b = random(rng, size - 1 - l, vars, classical);
    // index 3 is co-implication, skipped for classical formulas
    let mut k = rng.gen_range(0..nb);
    if classical && k >= 3 {
        k += 1;
    }
    ops[k](a, b)
}

/// The twelve derived formulas, with Γ = {p, q} and φ, ψ as p, q.
pub const LEMMA_ITEMS: [(&str, &str); 12] = [
    ("a", "X (p | q) <-> X p | X q"),
    ("b", "X (p & q) <-> X p & X q"),
    ("c", "p U q -> F q"),
    ("d", "p U q -> q | p & X (p U q)"),
    ("e", "p & X G p -> G p"),
    ("f", "(p -< p) -> q"),
    ("g", "Y (p | q) <-> Y p | Y q"),
    ("h", "Y (p & q) <-> Y p & Y q"),
    ("i", "p S q -> P q"),
    ("j", "p S q -> q | p & Y (p S q)"),
    ("k", "p & Y H p -> H p"),
    ("l", "(p -< q) -> p"),
];

/// Representative group I instances over p, q, r, some with temporal atoms.
pub const IPC_REPRESENTATIVES: [&str; 10] = [
    "p -> q -> p",
    "(p -> q -> r) -> (p -> q) -> p -> r",
    "p & q -> p",
    "p -> p | q",
    "(p -> r) -> (q -> r) -> p | q -> r",
    "false -> p",
    "(p -> q) -> (~q -> ~p)",
    "~~(p | ~p)",
    "X p & G q -> G q & X p",
    "(p U q -> r) -> (r -> false) -> ~(p U q)",
];

/// Every catalogued schema with φ, ψ, θ instantiated as p, q, r.
pub fn axiom_instances() -> Vec<(String, gtl::Formula)> {
    use gtl::proofcheck::{catalogue, Subst};
    let mut s = Subst::new();
    for (m, v) in [("phi", "p"), ("psi", "q"), ("theta", "r")] {
        s.insert(m.to_string(), Formula::var(v));
    }
    catalogue().iter().map(|sc| (sc.id.to_string(), sc.instantiate(&s))).collect()
}

/// Hand-picked classical formulas, past and future, each of size at most 8.
pub const LTL_CURATED: [&str; 40] = [
    "G p -> p",
    "p -> G p",
    "G p -> X p",
    "G p -> X G p",
    "X G p -> G p",
    "G (p & q) -> G p",
    "G p & G q -> G q",
    "G p -> F p",
    "p U q -> F q",
    "F (p -> X p)",
    "p -> X Y p",
    "X Y p -> p",
    "p -> Y X p",
    "Y X p -> p",
    "X false -> p",
    "X (p & q) -> X q",
    "H p -> p",
    "H p -> Y H p",
    "p S q -> P q",
    "P (p -> Y p)",
    "q -> p U q",
    "p U q -> p | q",
    "G p | F ~p",
    "F p | G ~p",
    "H p | P ~p",
    "~~p -> p",
    "p | ~p",
    "(p -> q) | (q -> p)",
    "X (p | q) -> X p",
    "Y p & Y q -> Y q",
    "F p -> G p",
    "G p -> G F p",
    "G F p -> G p",
    "P H p -> H p",
    "X p -> Y p",
    "G X p -> X G p",
    "p S q -> q",
    "F P p",
    "P F p -> p",
    "G (p -> X p) -> G p",
];

/// A random bi-relational model: each variable holds from a random world
/// downwards at each time, so extensions are downward closed.
pub fn random_bi_model(
    rng: &mut impl Rng,
    worlds: usize,
    period: usize,
    vars: &[&str],
) -> gtl::semantics::PeriodicBiModel {
    let mut membership = std::collections::BTreeMap::new();
    for v in vars {
        let mut set = std::collections::BTreeSet::new();
        for t in 0..period {
            let from = rng.gen_range(0..=worlds);
            for w in from..worlds {
                set.insert((w, t));
            }
        }
        membership.insert(v.to_string(), set);
    }
    gtl::semantics::PeriodicBiModel::new(worlds, period, membership).unwrap()
}

pub const FIG1_SYSTEM: &str = include_str!("../../data/fig1_system.json");

pub const LTL_MAX_SIZE: usize = 8;

/// The curated half plus random classical formulas over {p, q} drawn from a
/// fixed seed.
pub fn ltl_corpus() -> Vec<Formula> {
    let mut fs: Vec<Formula> = LTL_CURATED.iter().map(|s| gtl::parse(s).unwrap()).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    while fs.len() < 100 {
        let f = random(&mut rng, LTL_MAX_SIZE, &["p", "q"], true);
        if !fs.contains(&f) {
            fs.push(f);
        }
    }
    fs
}

pub fn proof_corpus() -> Vec<(&'static str, Proof)> {
    CORPUS.iter().map(|(n, s)| (*n, Proof::from_json_str(s).unwrap())).collect()
}

/// Deterministic single-step mutations; each must break the proof.
pub fn proof_mutations() -> Vec<(String, Proof)> {
    let proofs = proof_corpus();
    let mut out = vec![];
    for m in 0..50 {
        let (name, base) = &proofs[m % proofs.len()];
        let k = (m * 7 + m / 6) % base.steps.len();
        let mut p = base.clone();
        let step = &mut p.steps[k];
        let desc = match m % 3 {
            0 => {
                step.formula = Formula::next(step.formula.clone());
                "wrap in X"
            }
            1 => {
                step.formula = gtl::parse("p").unwrap();
                "replace by p"
            }
            _ => {
                step.by = match step.by.clone() {
                    Justification::Axiom { .. } => Justification::Ipc,
                    Justification::Ipc => Justification::Axiom { schema: "IV.a".into(), subst: None },
                    Justification::Mp(i, j) => Justification::Mp(j, i),
                    Justification::NecX(i) => Justification::NecG(i),
                    Justification::NecY(i) => Justification::NecH(i),
                    Justification::NecG(i) => Justification::NecX(i),
                    Justification::NecH(i) => Justification::NecY(i),
                    Justification::DimpMon(i) => Justification::DimpDis(i),
                    Justification::DimpDis(i) => Justification::DimpMon(i),
                };
                "change justification"
            }
        };
        out.push((format!("{name} step {k}: {desc}"), p));
    }
    out
}

pub const SEM_VARS: [&str; 3] = ["p", "q", "r"];

/// Up to three variables, as a prefix of `SEM_VARS`.
pub fn some_vars(rng: &mut impl Rng) -> &'static [&'static str] {
    &SEM_VARS[..rng.gen_range(1..=3)]
}

pub fn random_real(rng: &mut impl Rng, k: usize, vars: &[&str]) -> PeriodicRealModel {
    let valuation = vars
        .iter()
        .map(|v| {
            let vs = (0..k)
                .map(|_| {
                    let d = rng.gen_range(1..=6);
                    num_rational::Rational64::new(rng.gen_range(0..=d), d)
                })
                .collect();
            (v.to_string(), vs)
        })
        .collect();
    PeriodicRealModel::new(k, valuation).unwrap()
}

pub fn random_crisp(rng: &mut impl Rng, k: usize, vars: &[&str]) -> LtlModel {
    let truth: BTreeMap<String, BTreeSet<usize>> =
        vars.iter().map(|v| (v.to_string(), (0..k).filter(|_| rng.gen_bool(0.5)).collect())).collect();
    LtlModel::new(k, truth).unwrap()
}
