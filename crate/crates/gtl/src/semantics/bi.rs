use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{shift, EvalOptions};
use crate::formula::{Formula, Node, SigmaSet};
use crate::{Error, Result};

/// A bi-relational model on the chain of `worlds` by the `period`-cycle.
/// World 0 is the top of the chain: `v <= w` iff `v >= w` as indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicBiModel {
    pub worlds: usize,
    pub period: usize,
    pub membership: BTreeMap<String, BTreeSet<(usize, usize)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiModelJson {
    pub worlds: usize,
    pub period: usize,
    pub membership: BTreeMap<String, Vec<(usize, usize)>>,
}

impl PeriodicBiModel {
    /// Checks ranges and that every extension is closed downwards.
    pub fn new(worlds: usize, period: usize, membership: BTreeMap<String, BTreeSet<(usize, usize)>>) -> Result<Self> {
        if worlds == 0 || period == 0 {
            return Err(Error::Model("a model needs at least one world and one time".into()));
        }
        for (p, set) in &membership {
            for &(w, t) in set {
                if w >= worlds || t >= period {
                    return Err(Error::Model(format!("{p} holds at ({w}, {t}), outside the frame")));
                }
                if w + 1 < worlds && !set.contains(&(w + 1, t)) {
                    return Err(Error::Model(format!("{p} holds at ({w}, {t}) but not at the lower ({}, {t})", w + 1)));
                }
            }
        }
        Ok(PeriodicBiModel { worlds, period, membership })
    }

    pub fn from_json(j: &BiModelJson) -> Result<Self> {
        let m = j.membership.iter().map(|(p, v)| (p.clone(), v.iter().copied().collect())).collect();
        Self::new(j.worlds, j.period, m)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: BiModelJson = serde_json::from_str(s).map_err(|e| Error::Model(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> BiModelJson {
        BiModelJson {
            worlds: self.worlds,
            period: self.period,
            membership: self.membership.iter().map(|(p, s)| (p.clone(), s.iter().copied().collect())).collect(),
        }
    }

    /// Extensions of every closure member: `table[i][w][t]`.
    pub(crate) fn table(&self, sigma: &SigmaSet, opts: &EvalOptions) -> Result<Vec<Vec<Vec<bool>>>> {
        let (nw, k) = (self.worlds, self.period);
        let horizon = opts.horizon.max(1) * k;
        let mut tab: Vec<Vec<Vec<bool>>> = Vec::with_capacity(sigma.len());
        let grid = |f: &dyn Fn(usize, usize) -> bool| -> Vec<Vec<bool>> {
            (0..nw).map(|w| (0..k).map(|t| f(w, t)).collect()).collect()
        };
        for n in sigma.nodes() {
            let row = match n {
                Node::Var(p) => match self.membership.get(p) {
                    Some(set) => grid(&|w, t| set.contains(&(w, t))),
                    None if opts.strict => return Err(Error::Model(format!("variable {p} has no extension"))),
                    None => grid(&|_, _| false),
                },
                Node::Top => grid(&|_, _| true),
                Node::Bot => grid(&|_, _| false),
                &Node::And(a, b) => grid(&|w, t| tab[a][w][t] && tab[b][w][t]),
                &Node::Or(a, b) => grid(&|w, t| tab[a][w][t] || tab[b][w][t]),
                // every v <= w, i.e. every index from w down the chain
                &Node::Imp(a, b) => grid(&|w, t| (w..nw).all(|v| !tab[a][v][t] || tab[b][v][t])),
                // some v >= w
                &Node::CoImp(a, b) => grid(&|w, t| (0..=w).any(|v| tab[a][v][t] && !tab[b][v][t])),
                &Node::Next(a) => grid(&|w, t| tab[a][w][shift(t, 1, k)]),
                &Node::Yesterday(a) => grid(&|w, t| tab[a][w][shift(t, -1, k)]),
                &Node::Hence(a) | &Node::Hist(a) => grid(&|w, _| tab[a][w].iter().all(|&x| x)),
                &Node::Until(a, b) => grid(&|w, t| reach(&tab[a][w], &tab[b][w], t, 1, horizon)),
                &Node::Since(a, b) => grid(&|w, t| reach(&tab[a][w], &tab[b][w], t, -1, horizon)),
            };
            tab.push(row);
        }
        Ok(tab)
    }
}

fn reach(a: &[bool], b: &[bool], t: usize, dir: i64, horizon: usize) -> bool {
    let k = a.len();
    for n in 0..horizon {
        let u = shift(t, dir * n as i64, k);
        if b[u] {
            return true;
        }
        if !a[u] {
            return false;
        }
    }
    false
}

/// Membership of `(w, t)` in the extension of `f`.
pub fn eval_bi(m: &PeriodicBiModel, f: &Formula, w: usize, t: usize) -> Result<bool> {
    eval_bi_with(m, f, w, t, &EvalOptions::default())
}

pub fn eval_bi_with(m: &PeriodicBiModel, f: &Formula, w: usize, t: usize, opts: &EvalOptions) -> Result<bool> {
    if w >= m.worlds || t >= m.period {
        return Err(Error::Precondition(format!("({w}, {t}) is outside the frame")));
    }
    let sigma = SigmaSet::closure(f);
    let tab = m.table(&sigma, opts)?;
    Ok(tab[sigma.len() - 1][w][t])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn examples() {
        let m = PeriodicBiModel::from_json_str(r#"{"worlds": 2, "period": 1, "membership": {"p": [[1, 0]]}}"#).unwrap();
        let e = |s: &str, w| eval_bi(&m, &parse(s).unwrap(), w, 0).unwrap();
        assert!(e("true", 0) && !e("false", 0));
        assert!(!e("p -> false", 0));
        assert!(!e("p -> false", 0) && e("p", 1) && !e("p", 0));
        assert!(e("true -< p", 1));
        assert!(!e("p -< true", 0));
    }

    #[test]
    fn downward_closure_enforced() {
        let r = PeriodicBiModel::from_json_str(r#"{"worlds": 2, "period": 1, "membership": {"p": [[0, 0]]}}"#);
        assert!(matches!(r, Err(Error::Model(_))));
        let r = PeriodicBiModel::from_json_str(r#"{"worlds": 1, "period": 1, "membership": {"p": [[0, 3]]}}"#);
        assert!(r.is_err());
    }
}
