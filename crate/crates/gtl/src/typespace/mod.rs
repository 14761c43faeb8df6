//! Sigma-types, sensible pairs, labelled systems and the relation battery.

mod relation;
mod system;

pub use relation::{check_relation, is_quasimodel, QuasimodelReport, RelationReport};
pub use system::{Id, LabelledSystem, SpaceReport, SystemJson};

use crate::formula::{closure::children, Node, SigmaSet};
use crate::{Error, Result};

/// Largest Sigma a bitset type can index.
pub const MAX_SIGMA: usize = 64;
/// Default cap for explicit enumeration of all types.
pub const DEFAULT_TYPE_CAP: usize = 24;

/// A subset of Sigma, bit `i` standing for the formula with index `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaType(pub u64);

impl SigmaType {
    pub const EMPTY: SigmaType = SigmaType(0);

    pub fn has(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    pub fn with(self, i: usize) -> SigmaType {
        SigmaType(self.0 | 1 << i)
    }
    pub fn without(self, i: usize) -> SigmaType {
        SigmaType(self.0 & !(1 << i))
    }
    pub fn is_subset(self, other: SigmaType) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.has(i)).collect()
    }

    /// Build from explicit indices, checking them against `sigma`.
    pub fn from_indices(indices: &[usize], sigma: &SigmaSet) -> Result<SigmaType> {
        check_width(sigma)?;
        let mut t = SigmaType::EMPTY;
        for &i in indices {
            if i >= sigma.len() {
                return Err(Error::IndexOutOfRange { index: i, size: sigma.len() });
            }
            t = t.with(i);
        }
        Ok(t)
    }
}

pub(crate) fn check_width(sigma: &SigmaSet) -> Result<()> {
    if sigma.len() > MAX_SIGMA {
        Err(Error::SigmaTooLarge { size: sigma.len(), cap: MAX_SIGMA })
    } else {
        Ok(())
    }
}

/// A failed clause of one of the local checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: &'static str,
    pub formula: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "clause {} at {}", self.clause, self.formula)
    }
}

/// Check the type conditions on one subset. Returns every violated clause.
pub fn is_sigma_type(bits: SigmaType, sigma: &SigmaSet) -> Result<(bool, Vec<Violation>)> {
    check_width(sigma)?;
    if sigma.len() < 64 && bits.0 >> sigma.len() != 0 {
        return Err(Error::IndexOutOfRange { index: 63 - bits.0.leading_zeros() as usize, size: sigma.len() });
    }
    let v = type_violations(bits, sigma);
    Ok((v.is_empty(), v))
}

pub(crate) fn type_violations(t: SigmaType, sigma: &SigmaSet) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |clause, i: usize| out.push(Violation { clause, formula: sigma.formula(i).to_string() });
    for (i, n) in sigma.nodes().iter().enumerate() {
        let m = t.has(i);
        match *n {
            Node::Top if !m => bad("(top)", i),
            Node::Bot if m => bad("(bot)", i),
            Node::And(a, b) if m != (t.has(a) && t.has(b)) => bad("(1)", i),
            Node::Or(a, b) if m != (t.has(a) || t.has(b)) => bad("(2)", i),
            Node::Imp(a, b) => {
                if m && t.has(a) && !t.has(b) {
                    bad("(3a)", i)
                }
                if t.has(b) && !m {
                    bad("(3b)", i)
                }
            }
            Node::CoImp(a, b) => {
                if m && !t.has(a) {
                    bad("(4a)", i)
                }
                if t.has(a) && !t.has(b) && !m {
                    bad("(4b)", i)
                }
            }
            _ => {}
        }
    }
    out
}

/// A processing order in which children come before parents.
pub(crate) fn topo_order(sigma: &SigmaSet) -> Vec<usize> {
    if sigma.is_topologically_ordered() {
        return (0..sigma.len()).collect();
    }
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::with_capacity(sigma.len());
    fn visit(i: usize, sigma: &SigmaSet, seen: &mut [bool], out: &mut Vec<usize>) {
        if seen[i] {
            return;
        }
        seen[i] = true;
        for c in children(sigma.node(i)) {
            visit(c, sigma, seen, out);
        }
        out.push(i);
    }
    for i in 0..sigma.len() {
        visit(i, sigma, &mut seen, &mut out);
    }
    out
}

/// All Sigma-types in ascending numeric order, with the default cap.
pub fn enumerate_types(sigma: &SigmaSet) -> Result<Vec<SigmaType>> {
    enumerate_types_capped(sigma, DEFAULT_TYPE_CAP)
}

/// All Sigma-types in ascending numeric order. Membership of connectives is
/// forced by the children except where the clauses leave a choice, so the
/// search only branches at atoms and at free implications.
pub fn enumerate_types_capped(sigma: &SigmaSet, cap: usize) -> Result<Vec<SigmaType>> {
    if sigma.len() > cap.min(MAX_SIGMA) {
        return Err(Error::SigmaTooLarge { size: sigma.len(), cap: cap.min(MAX_SIGMA) });
    }
    let order = topo_order(sigma);
    let mut out = Vec::new();
    fn go(k: usize, t: SigmaType, order: &[usize], sigma: &SigmaSet, out: &mut Vec<SigmaType>) {
        let Some(&i) = order.get(k) else {
            out.push(t);
            return;
        };
        let choices: &[bool] = match *sigma.node(i) {
            Node::Top => &[true],
            Node::Bot => &[false],
            Node::And(a, b) => {
                if t.has(a) && t.has(b) {
                    &[true]
                } else {
                    &[false]
                }
            }
            Node::Or(a, b) => {
                if t.has(a) || t.has(b) {
                    &[true]
                } else {
                    &[false]
                }
            }
            Node::Imp(a, b) => match (t.has(a), t.has(b)) {
                (_, true) => &[true],
                (true, false) => &[false],
                (false, false) => &[false, true],
            },
            Node::CoImp(a, b) => match (t.has(a), t.has(b)) {
                (false, _) => &[false],
                (true, false) => &[true],
                (true, true) => &[false, true],
            },
            _ => &[false, true],
        };
        for &c in choices {
            go(k + 1, if c { t.with(i) } else { t }, order, sigma, out);
        }
    }
    go(0, SigmaType::EMPTY, &order, sigma, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Check the six one-step clauses for the pair `(a, b)`, `b` being the
/// successor of `a`.
pub fn is_sensible_pair(a: SigmaType, b: SigmaType, sigma: &SigmaSet) -> (bool, Vec<Violation>) {
    let mut out = Vec::new();
    for (i, n) in sigma.nodes().iter().enumerate() {
        let clause = match *n {
            Node::Next(f) if a.has(i) != b.has(f) => "(1)",
            Node::Yesterday(f) if b.has(i) != a.has(f) => "(2)",
            Node::Hence(f) if a.has(i) != (a.has(f) && b.has(i)) => "(3)",
            Node::Hist(f) if b.has(i) != (b.has(f) && a.has(i)) => "(4)",
            Node::Until(f, g) if a.has(i) != (a.has(g) || (a.has(f) && b.has(i))) => "(5)",
            Node::Since(f, g) if b.has(i) != (b.has(g) || (b.has(f) && a.has(i))) => "(6)",
            _ => continue,
        };
        out.push(Violation { clause, formula: sigma.formula(i).to_string() });
    }
    (out.is_empty(), out)
}

/// Precompiled version of [`is_sensible_pair`] for hot loops.
#[derive(Clone, Debug)]
pub(crate) struct SensibleRules {
    next: Vec<(usize, usize)>,
    yest: Vec<(usize, usize)>,
    hence: Vec<(usize, usize)>,
    hist: Vec<(usize, usize)>,
    until: Vec<(usize, usize, usize)>,
    since: Vec<(usize, usize, usize)>,
}

impl SensibleRules {
    pub fn new(sigma: &SigmaSet) -> SensibleRules {
        let mut r =
            SensibleRules { next: vec![], yest: vec![], hence: vec![], hist: vec![], until: vec![], since: vec![] };
        for (i, n) in sigma.nodes().iter().enumerate() {
            match *n {
                Node::Next(f) => r.next.push((i, f)),
                Node::Yesterday(f) => r.yest.push((i, f)),
                Node::Hence(f) => r.hence.push((i, f)),
                Node::Hist(f) => r.hist.push((i, f)),
                Node::Until(f, g) => r.until.push((i, f, g)),
                Node::Since(f, g) => r.since.push((i, f, g)),
                _ => {}
            }
        }
        r
    }

    pub fn ok(&self, a: SigmaType, b: SigmaType) -> bool {
        self.next.iter().all(|&(i, f)| a.has(i) == b.has(f))
            && self.yest.iter().all(|&(i, f)| b.has(i) == a.has(f))
            && self.hence.iter().all(|&(i, f)| a.has(i) == (a.has(f) && b.has(i)))
            && self.hist.iter().all(|&(i, f)| b.has(i) == (b.has(f) && a.has(i)))
            && self.until.iter().all(|&(i, f, g)| a.has(i) == (a.has(g) || (a.has(f) && b.has(i))))
            && self.since.iter().all(|&(i, f, g)| b.has(i) == (b.has(g) || (b.has(f) && a.has(i))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn sigma(s: &str) -> SigmaSet {
        SigmaSet::closure(&parse(s).unwrap())
    }

    fn ty(sigma: &SigmaSet, fs: &[&str]) -> SigmaType {
        let idx: Vec<usize> = fs.iter().map(|f| sigma.index_of(&parse(f).unwrap()).unwrap()).collect();
        SigmaType::from_indices(&idx, sigma).unwrap()
    }

    #[test]
    fn type_clauses() {
        let s = sigma("p & q");
        assert!(is_sigma_type(ty(&s, &["p", "q", "p & q"]), &s).unwrap().0);
        let (ok, v) = is_sigma_type(ty(&s, &["p", "q"]), &s).unwrap();
        assert!(!ok);
        assert_eq!(v, vec![Violation { clause: "(1)", formula: "p & q".into() }]);
        let s = sigma("p -< q");
        let (ok, v) = is_sigma_type(ty(&s, &["p"]), &s).unwrap();
        assert!(!ok);
        assert_eq!(v[0].clause, "(4b)");
        assert!(matches!(is_sigma_type(SigmaType(1 << 5), &s), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_types(&sigma("p")).unwrap(), vec![SigmaType(0), SigmaType(1)]);
        let s = sigma("p -> q");
        let brute: Vec<_> = (0..8u64).map(SigmaType).filter(|&t| is_sigma_type(t, &s).unwrap().0).collect();
        assert_eq!(enumerate_types(&s).unwrap(), brute);
        assert_eq!(brute.len(), 5);
        let s = sigma("F (p -> X p)");
        let ts = enumerate_types(&s).unwrap();
        let full = ty(&s, &["true", "p", "X p", "p -> X p", "true U (p -> X p)"]);
        assert!(ts.contains(&full));
        assert!(ts.contains(&ty(&s, &["true", "p"])));
        assert!(ts.contains(&ty(&s, &["true"])));
    }

    #[test]
    fn cap_is_enforced() {
        let s = sigma("p1 & p2 & p3 & p4 & p5 & p6 & p7 & p8 & p9 & p10 & p11 & p12 & p13");
        assert!(matches!(enumerate_types(&s), Err(Error::SigmaTooLarge { .. })));
        assert!(enumerate_types_capped(&s, 30).is_ok());
    }

    #[test]
    fn sensible_examples() {
        let s = sigma("X p");
        assert!(is_sensible_pair(ty(&s, &["X p"]), ty(&s, &["p"]), &s).0);
        assert!(!is_sensible_pair(ty(&s, &["X p"]), ty(&s, &[]), &s).0);
        let s = sigma("G p");
        let (ok, v) = is_sensible_pair(ty(&s, &["p", "G p"]), ty(&s, &["p"]), &s);
        assert!(!ok);
        assert_eq!(v[0].clause, "(3)");
        let rules = SensibleRules::new(&s);
        for a in 0..4 {
            for b in 0..4 {
                let (a, b) = (SigmaType(a), SigmaType(b));
                assert_eq!(rules.ok(a, b), is_sensible_pair(a, b, &s).0);
            }
        }
    }
}
