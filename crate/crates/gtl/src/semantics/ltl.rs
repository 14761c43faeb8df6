//! Classical LTL with past: evaluation on crisp cyclic models and a validity
//! check by fair-SCC search over complete classical states. Nothing here
//! goes through the Goedel machinery.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{shift, EvalOptions, PeriodicBiModel, PeriodicRealModel, Value};
use crate::formula::Formula;
use crate::{Error, Result};

/// A classical model on the `period`-cycle: a bi-relational model with one
/// world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtlModel {
    pub model: PeriodicBiModel,
}

impl LtlModel {
    /// `truth[p]` lists the times at which `p` holds.
    pub fn new(period: usize, truth: BTreeMap<String, BTreeSet<usize>>) -> Result<Self> {
        let membership = truth.into_iter().map(|(p, ts)| (p, ts.into_iter().map(|t| (0, t)).collect())).collect();
        Ok(LtlModel { model: PeriodicBiModel::new(1, period, membership)? })
    }

    pub fn from_bi(model: PeriodicBiModel) -> Result<Self> {
        if model.worlds != 1 {
            return Err(Error::Model(format!("a classical model has one world, not {}", model.worlds)));
        }
        Ok(LtlModel { model })
    }

    pub fn period(&self) -> usize {
        self.model.period
    }

    pub fn holds(&self, p: &str, t: usize) -> bool {
        self.model.membership.get(p).is_some_and(|s| s.contains(&(0, t)))
    }
}

fn classical_fragment(f: &Formula) -> Result<()> {
    if f.contains_coimp() {
        Err(Error::NotClassical(f.to_string()))
    } else {
        Ok(())
    }
}

fn truth(m: &LtlModel, f: &Formula) -> Vec<bool> {
    use Formula::*;
    let k = m.period();
    let horizon = EvalOptions::default().horizon * k;
    let all = |v: &[bool]| v.iter().all(|&x| x);
    let until = |a: &[bool], b: &[bool], dir: i64| -> Vec<bool> {
        (0..k)
            .map(|t| {
                (0..horizon)
                    .map(|n| shift(t, dir * n as i64, k))
                    .position(|u| b[u] || !a[u])
                    .is_some_and(|n| b[shift(t, dir * n as i64, k)])
            })
            .collect()
    };
    match f {
        Var(p) => (0..k).map(|t| m.holds(p, t)).collect(),
        Top => vec![true; k],
        Bot => vec![false; k],
        And(a, b) => truth(m, a).iter().zip(truth(m, b)).map(|(x, y)| *x && y).collect(),
        Or(a, b) => truth(m, a).iter().zip(truth(m, b)).map(|(x, y)| *x || y).collect(),
        Imp(a, b) => truth(m, a).iter().zip(truth(m, b)).map(|(x, y)| !*x || y).collect(),
        CoImp(..) => unreachable!("checked by the caller"),
        Next(a) => {
            let v = truth(m, a);
            (0..k).map(|t| v[shift(t, 1, k)]).collect()
        }
        Yesterday(a) => {
            let v = truth(m, a);
            (0..k).map(|t| v[shift(t, -1, k)]).collect()
        }
        Hence(a) | Hist(a) => vec![all(&truth(m, a)); k],
        Until(a, b) => until(&truth(m, a), &truth(m, b), 1),
        Since(a, b) => until(&truth(m, a), &truth(m, b), -1),
    }
}

/// Classical truth of `f` at time `t`.
pub fn ltl_eval(m: &LtlModel, f: &Formula, t: usize) -> Result<bool> {
    classical_fragment(f)?;
    if t >= m.period() {
        return Err(Error::Precondition(format!("time {t} outside the period {}", m.period())));
    }
    Ok(truth(m, f)[t])
}

/// The 0/1 real model of a classical one.
pub fn crispify(m: &LtlModel) -> PeriodicRealModel {
    let k = m.period();
    let valuation = m
        .model
        .membership
        .keys()
        .map(|p| {
            let vs = (0..k).map(|t| if m.holds(p, t) { Value::one() } else { Value::zero() }).collect();
            (p.clone(), vs)
        })
        .collect();
    PeriodicRealModel { period: k, valuation }
}

/// The classical model reading `p` as true where `~~p` is 1, that is where
/// `p` is positive.
pub fn crisp_shadow(m: &PeriodicRealModel) -> LtlModel {
    let truth = m
        .valuation
        .iter()
        .map(|(p, vs)| (p.clone(), (0..m.period).filter(|&t| vs[t] > Value::zero()).collect()))
        .collect();
    LtlModel::new(m.period, truth).expect("times are in range")
}

/// Subformulas whose truth is not fixed by the Boolean structure.
fn elementary(f: &Formula, out: &mut Vec<Formula>) {
    for c in f.children() {
        elementary(c, out);
    }
    let atomic = !matches!(f, Formula::Top | Formula::Bot | Formula::And(..) | Formula::Or(..) | Formula::Imp(..));
    if atomic && !out.contains(f) {
        out.push(f.clone());
    }
}

struct Tableau {
    elems: Vec<Formula>,
}

impl Tableau {
    fn val(&self, s: u32, f: &Formula) -> bool {
        use Formula::*;
        match f {
            Top => true,
            Bot => false,
            And(a, b) => self.val(s, a) && self.val(s, b),
            Or(a, b) => self.val(s, a) || self.val(s, b),
            Imp(a, b) => !self.val(s, a) || self.val(s, b),
            e => {
                let i = self.elems.iter().position(|x| x == e).expect("elementary");
                s >> i & 1 == 1
            }
        }
    }

    fn step(&self, a: u32, b: u32) -> bool {
        use Formula::*;
        self.elems.iter().enumerate().all(|(i, e)| {
            let (ea, eb) = (a >> i & 1 == 1, b >> i & 1 == 1);
            match e {
                Next(x) => ea == self.val(b, x),
                Yesterday(x) => eb == self.val(a, x),
                Hence(x) => ea == (self.val(a, x) && eb),
                Hist(x) => eb == (self.val(b, x) && ea),
                Until(x, y) => ea == (self.val(a, y) || (self.val(a, x) && eb)),
                Since(x, y) => eb == (self.val(b, y) || (self.val(b, x) && ea)),
                _ => true,
            }
        })
    }

    /// Obligations of `s` for the given direction, as (wanted formula,
    /// wanted truth): pending U/S need their right side, failing G/H need
    /// a refutation.
    fn obligations(&self, s: u32, future: bool) -> Vec<(&Formula, bool)> {
        use Formula::*;
        let mut out = vec![];
        for (i, e) in self.elems.iter().enumerate() {
            let on = s >> i & 1 == 1;
            match (e, future) {
                (Until(_, y), true) | (Since(_, y), false) if on => out.push((&**y, true)),
                (Hence(x), true) | (Hist(x), false) if !on => out.push((&**x, false)),
                _ => {}
            }
        }
        out
    }

    /// States from which some fair loop is reachable along `succ`.
    fn fair_region(&self, states: &[u32], succ: &[Vec<usize>], future: bool) -> HashSet<usize> {
        let mut fair = HashSet::new();
        let all: Vec<usize> = (0..states.len()).collect();
        self.fair_loops(states, succ, &all, future, &mut fair);
        // backward closure: anything with a path into a fair loop
        let mut region = fair.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..states.len() {
                if !region.contains(&v) && succ[v].iter().any(|w| region.contains(w)) {
                    region.insert(v);
                    changed = true;
                }
            }
        }
        region
    }

    fn fair_loops(
        &self,
        states: &[u32],
        succ: &[Vec<usize>],
        nodes: &[usize],
        future: bool,
        fair: &mut HashSet<usize>,
    ) {
        let mut g = DiGraph::<usize, ()>::new();
        let idx: Vec<NodeIndex> = nodes.iter().map(|&v| g.add_node(v)).collect();
        let pos: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for (i, &v) in nodes.iter().enumerate() {
            for w in &succ[v] {
                if let Some(&j) = pos.get(w) {
                    g.add_edge(idx[i], idx[j], ());
                }
            }
        }
        for scc in tarjan_scc(&g) {
            let comp: Vec<usize> = scc.iter().map(|&n| g[n]).collect();
            let looped = comp.len() > 1 || succ[comp[0]].contains(&comp[0]);
            if !looped {
                continue;
            }
            let met = |f: &Formula, want: bool| comp.iter().any(|&c| self.val(states[c], f) == want);
            let keep: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&c| self.obligations(states[c], future).iter().all(|&(f, w)| met(f, w)))
                .collect();
            if keep.len() == comp.len() {
                fair.extend(comp);
            } else if !keep.is_empty() {
                self.fair_loops(states, succ, &keep, future, fair);
            }
        }
    }
}

/// Classical validity over all flows, decided by looking for a two-sided
/// ultimately periodic countermodel.
pub fn ltl_valid(f: &Formula) -> Result<bool> {
    classical_fragment(f)?;
    let mut elems = vec![];
    elementary(f, &mut elems);
    if elems.len() > 20 {
        return Err(Error::Precondition(format!("{} elementary subformulas is too many", elems.len())));
    }
    let tab = Tableau { elems };
    let states: Vec<u32> = (0..1u32 << tab.elems.len()).collect();
    let n = states.len();
    let mut fwd = vec![vec![]; n];
    let mut bwd = vec![vec![]; n];
    for a in 0..n {
        for b in 0..n {
            if tab.step(states[a], states[b]) {
                fwd[a].push(b);
                bwd[b].push(a);
            }
        }
    }
    let future = tab.fair_region(&states, &fwd, true);
    let past = tab.fair_region(&states, &bwd, false);
    let refuted = (0..n).any(|s| !tab.val(states[s], f) && future.contains(&s) && past.contains(&s));
    Ok(!refuted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn validity_examples() {
        let v = |s: &str| ltl_valid(&parse(s).unwrap()).unwrap();
        assert!(v("G p -> p"));
        assert!(!v("p -> G p"));
        assert!(v("p | ~p"));
        assert!(v("F (p -> X p)"));
        assert!(v("p -> X Y p"));
        assert!(v("G F p -> F G F p"));
        assert!(!v("F G p"));
        assert!(!v("P p -> p"));
        assert!(v("H p -> p & Y H p"));
        // a change point: false forever before, true now
        assert!(!v("~(Y H ~p & p)"));
        assert!(ltl_valid(&parse("p -< q").unwrap()).is_err());
    }

    #[test]
    fn eval_and_crisp() {
        let m = LtlModel::new(2, BTreeMap::from([("p".to_string(), BTreeSet::from([0]))])).unwrap();
        let e = |s: &str, t| ltl_eval(&m, &parse(s).unwrap(), t).unwrap();
        assert!(e("p", 0) && !e("p", 1));
        assert!(e("X ~p", 0) && e("F p", 1) && !e("G p", 0) && e("q U p", 0) && !e("q U p", 1));
        let c = crispify(&m);
        assert_eq!(c.valuation["p"], vec![Value::one(), Value::zero()]);
        assert_eq!(crisp_shadow(&c), m);
        let empty = LtlModel::new(3, BTreeMap::new()).unwrap();
        assert!(crispify(&empty).valuation.is_empty());
    }
}
