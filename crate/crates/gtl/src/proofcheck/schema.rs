use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::formula::{parse, Formula};

/// Metavariable assignment. Pattern variables are the metavariables.
pub type Subst = BTreeMap<String, Formula>;

#[derive(Clone, Debug)]
pub struct Schema {
    pub id: &'static str,
    pub pattern: Formula,
}

const CATALOGUE: &[(&str, &str)] = &[
    ("II.a", "phi -> psi | (phi -< psi)"),
    ("III.a", "(phi -> psi) | (psi -> phi)"),
    ("III.b", "~((phi -< psi) & (psi -< phi))"),
    ("IV.a", "~X false"),
    ("IV.b", "X (phi | psi) -> X phi | X psi"),
    ("IV.c", "X phi & X psi -> X (phi & psi)"),
    ("IV.d", "X (phi -> psi) <-> (X phi -> X psi)"),
    ("IV.e", "G (phi -> psi) -> (G phi -> G psi)"),
    ("IV.f", "G (phi -> psi) -> (theta U phi -> theta U psi)"),
    ("IV.g", "G (phi -> psi) -> (phi U theta -> psi U theta)"),
    ("IV.h", "G phi -> phi & X G phi"),
    ("IV.i", "psi | phi & X (phi U psi) -> phi U psi"),
    ("IV.j", "G (phi -> X phi) -> (phi -> G phi)"),
    ("IV.k", "G (psi & X phi -> phi) -> (psi U phi -> phi)"),
    ("IV.a'", "~Y false"),
    ("IV.b'", "Y (phi | psi) -> Y phi | Y psi"),
    ("IV.c'", "Y phi & Y psi -> Y (phi & psi)"),
    ("IV.d'", "Y (phi -> psi) <-> (Y phi -> Y psi)"),
    ("IV.e'", "H (phi -> psi) -> (H phi -> H psi)"),
    ("IV.f'", "H (phi -> psi) -> (theta S phi -> theta S psi)"),
    ("IV.g'", "H (phi -> psi) -> (phi S theta -> psi S theta)"),
    ("IV.h'", "H phi -> phi & Y H phi"),
    ("IV.i'", "psi | phi & Y (phi S psi) -> phi S psi"),
    ("IV.j'", "H (phi -> Y phi) -> (phi -> H phi)"),
    ("IV.k'", "H (psi & Y phi -> phi) -> (psi S phi -> phi)"),
    ("V.a", "phi <-> X Y phi"),
    ("V.a'", "phi <-> Y X phi"),
];

/// The axiom schemata in matching order.
pub fn catalogue() -> &'static [Schema] {
    static CAT: OnceLock<Vec<Schema>> = OnceLock::new();
    CAT.get_or_init(|| {
        CATALOGUE
            .iter()
            .map(|&(id, src)| Schema { id, pattern: parse(src).expect("catalogue patterns parse") })
            .collect()
    })
}

pub fn schema(id: &str) -> Option<&'static Schema> {
    catalogue().iter().find(|s| s.id == id)
}

impl Schema {
    /// One-way matching of the pattern against `f`.
    pub fn matches(&self, f: &Formula) -> Option<Subst> {
        let mut s = Subst::new();
        unify(&self.pattern, f, &mut s).then_some(s)
    }

    /// The pattern with metavariables replaced; unassigned ones stay put.
    pub fn instantiate(&self, s: &Subst) -> Formula {
        self.pattern.map_vars(&|v| s.get(v).cloned().unwrap_or_else(|| Formula::var(v)))
    }
}

fn unify(pat: &Formula, f: &Formula, s: &mut Subst) -> bool {
    use Formula::*;
    match (pat, f) {
        (Var(v), _) => match s.get(v) {
            Some(bound) => bound == f,
            None => {
                s.insert(v.clone(), f.clone());
                true
            }
        },
        (Top, Top) | (Bot, Bot) => true,
        (And(a, b), And(c, d))
        | (Or(a, b), Or(c, d))
        | (Imp(a, b), Imp(c, d))
        | (CoImp(a, b), CoImp(c, d))
        | (Until(a, b), Until(c, d))
        | (Since(a, b), Since(c, d)) => unify(a, c, s) && unify(b, d, s),
        (Next(a), Next(c)) | (Yesterday(a), Yesterday(c)) | (Hence(a), Hence(c)) | (Hist(a), Hist(c)) => unify(a, c, s),
        _ => false,
    }
}

/// First schema in catalogue order matching `f`.
pub fn match_axiom(f: &Formula) -> Option<(&'static str, Subst)> {
    catalogue().iter().find_map(|sc| sc.matches(f).map(|s| (sc.id, s)))
}
