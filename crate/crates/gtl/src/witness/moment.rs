use crate::formula::{Node, SigmaSet};
use crate::typespace::{type_violations, SigmaType, Violation};

/// A strictly decreasing chain of types. Position 0 is the bottom of the
/// chain, where the most formulas hold.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Moment(pub Vec<SigmaType>);

impl Moment {
    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn types(&self) -> &[SigmaType] {
        &self.0
    }
}

/// Check the moment clauses: (1) every entry is a type, (2) strict decrease,
/// (3) implications missing at a position are refuted at or below it,
/// (4) co-implications present at a position are witnessed at or above it.
pub fn is_moment(chain: &[SigmaType], sigma: &SigmaSet) -> (bool, Vec<Violation>) {
    let mut out = Vec::new();
    if chain.is_empty() {
        out.push(Violation { clause: "(1)", formula: "empty chain".into() });
        return (false, out);
    }
    for t in chain {
        for mut v in type_violations(*t, sigma) {
            v.formula = format!("{} (type clause {})", v.formula, v.clause);
            v.clause = "(1)";
            out.push(v);
        }
    }
    for w in chain.windows(2) {
        if !(w[1].is_subset(w[0]) && w[1] != w[0]) {
            out.push(Violation { clause: "(2)", formula: format!("{:?} then {:?}", w[0].indices(), w[1].indices()) });
        }
    }
    for (k, n) in sigma.nodes().iter().enumerate() {
        match *n {
            Node::Imp(a, b) => {
                for i in 0..chain.len() {
                    if !chain[i].has(k) && !(0..=i).any(|j| chain[j].has(a) && !chain[j].has(b)) {
                        out.push(Violation { clause: "(3)", formula: format!("{} at position {i}", sigma.formula(k)) });
                    }
                }
            }
            Node::CoImp(a, b) => {
                for i in 0..chain.len() {
                    if chain[i].has(k) && !(i..chain.len()).any(|j| chain[j].has(a) && !chain[j].has(b)) {
                        out.push(Violation { clause: "(4)", formula: format!("{} at position {i}", sigma.formula(k)) });
                    }
                }
            }
            _ => {}
        }
    }
    (out.is_empty(), out)
}

/// Incremental form of clause (3) used while building chains bottom-up:
/// every implication missing from the newest entry is refuted somewhere in
/// the chain so far.
pub(crate) fn imp_ok_at_top(chain: &[SigmaType], imps: &[(usize, usize, usize)]) -> bool {
    let top = *chain.last().expect("nonempty");
    imps.iter().all(|&(k, a, b)| top.has(k) || chain.iter().any(|t| t.has(a) && !t.has(b)))
}

/// Clause (4) over a finished chain.
pub(crate) fn coimp_ok(chain: &[SigmaType], coimps: &[(usize, usize, usize)]) -> bool {
    coimps.iter().all(|&(k, a, b)| {
        (0..chain.len()).all(|i| !chain[i].has(k) || chain[i..].iter().any(|t| t.has(a) && !t.has(b)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn sigma(s: &str) -> SigmaSet {
        SigmaSet::closure(&parse(s).unwrap())
    }

    #[test]
    fn examples() {
        let s = sigma("p");
        assert!(is_moment(&[SigmaType(1)], &s).0);
        assert!(is_moment(&[SigmaType(1), SigmaType(0)], &s).0);
        let (ok, v) = is_moment(&[SigmaType(0), SigmaType(1)], &s);
        assert!(!ok && v[0].clause == "(2)");

        // p -> q missing at a single position with p false has no witness.
        let s = sigma("p -> q");
        let (ok, v) = is_moment(&[SigmaType(0)], &s);
        assert!(!ok);
        assert_eq!(v[0].clause, "(3)");

        let s = sigma("F (p -> X p)");
        let chain = [SigmaType(0b11111), SigmaType(0b00011), SigmaType(0b00001)];
        assert!(is_moment(&chain, &s).0, "{:?}", is_moment(&chain, &s).1);
    }
}
