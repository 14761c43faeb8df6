//! Intuitionistic propositional validity via a contraction-free sequent
//! calculus (Dyckhoff's G4ip). Proof search terminates without loop checks
//! because every rule shrinks a multiset ordering on the sequent.

use std::collections::HashMap;

use crate::formula::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Prop {
    Atom(u32),
    Top,
    Bot,
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Imp(Box<Prop>, Box<Prop>),
}

use Prop::*;

fn imp(a: Prop, b: Prop) -> Prop {
    Imp(Box::new(a), Box::new(b))
}

/// Propositional abstraction: variables and every maximal subformula headed
/// by a non-propositional connective become atoms, equal subformulas getting
/// equal atoms.
pub(crate) fn abstraction(f: &Formula) -> Prop {
    fn go(f: &Formula, atoms: &mut HashMap<Formula, u32>) -> Prop {
        match f {
            Formula::Top => Top,
            Formula::Bot => Bot,
            Formula::And(a, b) => And(Box::new(go(a, atoms)), Box::new(go(b, atoms))),
            Formula::Or(a, b) => Or(Box::new(go(a, atoms)), Box::new(go(b, atoms))),
            Formula::Imp(a, b) => Imp(Box::new(go(a, atoms)), Box::new(go(b, atoms))),
            other => {
                let n = atoms.len() as u32;
                Atom(*atoms.entry(other.clone()).or_insert(n))
            }
        }
    }
    go(f, &mut HashMap::new())
}

/// Is `f` a substitution instance of an intuitionistic tautology?
pub fn ipc_tautology(f: &Formula) -> bool {
    prove(Vec::new(), &abstraction(f))
}

fn prove(mut gamma: Vec<Prop>, goal: &Prop) -> bool {
    // Invertible left rules first, to saturation.
    let mut i = 0;
    while i < gamma.len() {
        let replaced: Option<Vec<Prop>> = match &gamma[i] {
            Bot => return true,
            Top => Some(vec![]),
            And(a, b) => Some(vec![(**a).clone(), (**b).clone()]),
            Or(a, b) => {
                let (a, b) = ((**a).clone(), (**b).clone());
                gamma.swap_remove(i);
                let mut g2 = gamma.clone();
                gamma.push(a);
                g2.push(b);
                return prove(gamma, goal) && prove(g2, goal);
            }
            Imp(a, b) => match &**a {
                Top => Some(vec![(**b).clone()]),
                Bot => Some(vec![]),
                Atom(p) if gamma.contains(&Atom(*p)) => Some(vec![(**b).clone()]),
                And(c, d) => Some(vec![imp((**c).clone(), imp((**d).clone(), (**b).clone()))]),
                Or(c, d) => Some(vec![imp((**c).clone(), (**b).clone()), imp((**d).clone(), (**b).clone())]),
                _ => None,
            },
            Atom(_) => None,
        };
        match replaced {
            Some(new) => {
                gamma.swap_remove(i);
                gamma.extend(new);
                // a fresh atom may unlock `p -> b` entries already scanned
                i = 0;
            }
            None => i += 1,
        }
    }

    match goal {
        Top => return true,
        Atom(_) if gamma.contains(goal) => return true,
        And(a, b) => return prove(gamma.clone(), a) && prove(gamma, b),
        Imp(a, b) => {
            gamma.push((**a).clone());
            return prove(gamma, b);
        }
        _ => {}
    }

    if let Or(a, b) = goal {
        if prove(gamma.clone(), a) || prove(gamma.clone(), b) {
            return true;
        }
    }
    // Non-invertible: ((c -> d) -> b) on the left.
    for (k, h) in gamma.iter().enumerate() {
        if let Imp(cd, b) = h {
            if let Imp(c, d) = &**cd {
                let mut rest = gamma.clone();
                rest.swap_remove(k);
                let mut left = rest.clone();
                left.push(imp((**d).clone(), (**b).clone()));
                left.push((**c).clone());
                if prove(left, d) {
                    rest.push((**b).clone());
                    if prove(rest, goal) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn t(s: &str) -> bool {
        ipc_tautology(&parse(s).unwrap())
    }

    #[test]
    fn examples() {
        assert!(t("p -> p"));
        assert!(!t("p | ~p"));
        assert!(!t("((p -> q) -> p) -> p"));
        assert!(t("~~(p | ~p)"));
        assert!(!t("(p -> q) | (q -> p)"));
        assert!(t("((p -> q) -> r) -> (p -> (q -> r))"));
        assert!(t("(p & q -> r) -> (p -> q -> r)"));
        assert!(t("X p & G q -> X p"));
        assert!(!t("X p -> p"));
        assert!(!t("(p -< q) -> p"));
        assert!(t("~~~p -> ~p"));
        assert!(!t("~~p -> p"));
    }
}
