use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{shift, EvalOptions, Value};
use crate::formula::{Formula, Node, SigmaSet};
use crate::{Error, Result};

/// A real valuation on the `period`-cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicRealModel {
    pub period: usize,
    pub valuation: BTreeMap<String, Vec<Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealModelJson {
    pub period: usize,
    pub valuation: BTreeMap<String, Vec<String>>,
}

fn parse_value(s: &str) -> Result<Value> {
    let bad = || Error::Model(format!("{s:?} is not a rational"));
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
            if d == 0 {
                return Err(bad());
            }
            Rational64::new(n, d)
        }
        None => Rational64::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(r)
}

impl PeriodicRealModel {
    pub fn new(period: usize, valuation: BTreeMap<String, Vec<Value>>) -> Result<Self> {
        if period == 0 {
            return Err(Error::Model("period must be positive".into()));
        }
        for (p, vs) in &valuation {
            if vs.len() != period {
                return Err(Error::Model(format!("{p} has {} values for period {period}", vs.len())));
            }
            if let Some(v) = vs.iter().find(|v| **v < Value::zero() || **v > Value::one()) {
                return Err(Error::Model(format!("{p} takes {v}, outside [0, 1]")));
            }
        }
        Ok(PeriodicRealModel { period, valuation })
    }

    pub fn from_json(j: &RealModelJson) -> Result<Self> {
        let valuation = j
            .valuation
            .iter()
            .map(|(p, vs)| Ok((p.clone(), vs.iter().map(|s| parse_value(s)).collect::<Result<Vec<_>>>()?)))
            .collect::<Result<_>>()?;
        Self::new(j.period, valuation)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: RealModelJson = serde_json::from_str(s).map_err(|e| Error::Model(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> RealModelJson {
        RealModelJson {
            period: self.period,
            valuation: self
                .valuation
                .iter()
                .map(|(p, vs)| (p.clone(), vs.iter().map(|v| format!("{}/{}", v.numer(), v.denom())).collect()))
                .collect(),
        }
    }

    /// Values of every closure member at every time: `table[i][t]`.
    pub(crate) fn table(&self, sigma: &SigmaSet, opts: &EvalOptions) -> Result<Vec<Vec<Value>>> {
        let k = self.period;
        let horizon = opts.horizon.max(1) * k;
        let mut tab: Vec<Vec<Value>> = Vec::with_capacity(sigma.len());
        let (zero, one) = (Value::zero(), Value::one());
        for n in sigma.nodes() {
            let row: Vec<Value> = match n {
                Node::Var(p) => match self.valuation.get(p) {
                    Some(vs) => vs.clone(),
                    None if opts.strict => return Err(Error::Model(format!("variable {p} has no valuation"))),
                    None => vec![zero; k],
                },
                Node::Top => vec![one; k],
                Node::Bot => vec![zero; k],
                &Node::And(a, b) => (0..k).map(|t| tab[a][t].min(tab[b][t])).collect(),
                &Node::Or(a, b) => (0..k).map(|t| tab[a][t].max(tab[b][t])).collect(),
                &Node::Imp(a, b) => (0..k).map(|t| if tab[a][t] <= tab[b][t] { one } else { tab[b][t] }).collect(),
                &Node::CoImp(a, b) => (0..k).map(|t| if tab[a][t] <= tab[b][t] { zero } else { tab[a][t] }).collect(),
                &Node::Next(a) => (0..k).map(|t| tab[a][shift(t, 1, k)]).collect(),
                &Node::Yesterday(a) => (0..k).map(|t| tab[a][shift(t, -1, k)]).collect(),
                &Node::Hence(a) | &Node::Hist(a) => {
                    let m = *tab[a].iter().min().expect("period is positive");
                    vec![m; k]
                }
                &Node::Until(a, b) => (0..k).map(|t| until(&tab[a], &tab[b], t, 1, horizon)).collect(),
                &Node::Since(a, b) => (0..k).map(|t| until(&tab[a], &tab[b], t, -1, horizon)).collect(),
            };
            tab.push(row);
        }
        Ok(tab)
    }
}

/// max over n < horizon of min(a(t), ..., a(t + (n-1)dir), b(t + n dir)).
fn until(a: &[Value], b: &[Value], t: usize, dir: i64, horizon: usize) -> Value {
    let k = a.len();
    let mut prefix = Value::one();
    let mut best = Value::zero();
    for n in 0..horizon {
        let u = shift(t, dir * n as i64, k);
        best = best.max(prefix.min(b[u]));
        prefix = prefix.min(a[u]);
        if prefix <= best {
            break;
        }
    }
    best
}

/// Truth degree of `f` at time `t`; absent variables read as 0.
pub fn eval_real(m: &PeriodicRealModel, f: &Formula, t: usize) -> Result<Value> {
    eval_real_with(m, f, t, &EvalOptions::default())
}

pub fn eval_real_with(m: &PeriodicRealModel, f: &Formula, t: usize, opts: &EvalOptions) -> Result<Value> {
    if t >= m.period {
        return Err(Error::Precondition(format!("time {t} outside the period {}", m.period)));
    }
    let sigma = SigmaSet::closure(f);
    let tab = m.table(&sigma, opts)?;
    Ok(tab[sigma.len() - 1][t])
}
