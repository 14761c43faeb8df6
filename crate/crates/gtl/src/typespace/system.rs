use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{check_width, type_violations, SigmaType};
use crate::formula::{parse, Node, SigmaSet};
use crate::{Error, Result};

/// A finite poset of worlds with a type labelling and a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledSystem {
    pub sigma: SigmaSet,
    pub worlds: Vec<String>,
    /// Generating pairs `(lo, hi)` of the order; closed reflexively and
    /// transitively on use.
    pub order: Vec<(usize, usize)>,
    pub labels: Vec<SigmaType>,
    pub rel: Vec<(usize, usize)>,
}

/// Labelled-space conditions, each with its counterexamples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpaceReport {
    pub partial_order: bool,
    pub locally_linear: bool,
    pub labels_are_types: bool,
    pub inversely_monotone: bool,
    pub imp_witnessed: bool,
    pub coimp_witnessed: bool,
    pub violations: Vec<String>,
}

impl SpaceReport {
    pub fn ok(&self) -> bool {
        self.partial_order
            && self.locally_linear
            && self.labels_are_types
            && self.inversely_monotone
            && self.imp_witnessed
            && self.coimp_witnessed
    }
}

impl LabelledSystem {
    pub fn new(
        sigma: SigmaSet,
        worlds: Vec<String>,
        order: Vec<(usize, usize)>,
        labels: Vec<SigmaType>,
        rel: Vec<(usize, usize)>,
    ) -> Result<LabelledSystem> {
        check_width(&sigma)?;
        let n = worlds.len();
        if labels.len() != n {
            return Err(Error::System(format!("{} labels for {n} worlds", labels.len())));
        }
        let mut seen = HashMap::new();
        for (i, w) in worlds.iter().enumerate() {
            if seen.insert(w.clone(), i).is_some() {
                return Err(Error::System(format!("duplicate world {w:?}")));
            }
        }
        for &(a, b) in order.iter().chain(&rel) {
            if a >= n || b >= n {
                return Err(Error::System(format!("pair ({a}, {b}) out of range")));
            }
        }
        for (w, l) in labels.iter().enumerate() {
            if sigma.len() < 64 && l.0 >> sigma.len() != 0 {
                return Err(Error::System(format!("label of {:?} indexes outside sigma", worlds[w])));
            }
        }
        let mut rel = rel;
        rel.sort_unstable();
        rel.dedup();
        let mut order = order;
        order.sort_unstable();
        order.dedup();
        Ok(LabelledSystem { sigma, worlds, order, labels, rel })
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn world_index(&self, id: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == id)
    }

    /// Reflexive-transitive closure of the order pairs.
    pub fn leq(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut m = vec![vec![false; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &self.order {
            m[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        m
    }

    /// Comparability components, each listed bottom-up by the number of
    /// elements below.
    pub fn components(&self, leq: &[Vec<bool>]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(x) = stack.pop() {
                members.push(x);
                for y in 0..n {
                    if comp[y] == usize::MAX && (leq[x][y] || leq[y][x]) {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_by_key(|&x| ((0..n).filter(|&y| leq[y][x]).count(), x));
            out.push(members);
        }
        out
    }

    /// Longest chain; components are chains in a labelled space.
    pub fn height(&self) -> usize {
        let leq = self.leq();
        self.components(&leq).iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Check the labelled-space conditions.
    pub fn check_space(&self) -> SpaceReport {
        let leq = self.leq();
        let n = self.len();
        let mut r = SpaceReport {
            partial_order: true,
            locally_linear: true,
            labels_are_types: true,
            inversely_monotone: true,
            imp_witnessed: true,
            coimp_witnessed: true,
            violations: vec![],
        };
        let w = |i: usize| &self.worlds[i];
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    r.partial_order = false;
                    r.violations.push(format!("order is not antisymmetric on {:?}, {:?}", w(i), w(j)));
                }
            }
        }
        for c in self.components(&leq) {
            for (a, &x) in c.iter().enumerate() {
                for &y in &c[a + 1..] {
                    if !leq[x][y] && !leq[y][x] {
                        r.locally_linear = false;
                        r.violations.push(format!("{:?} and {:?} share a component but are incomparable", w(x), w(y)));
                    }
                }
            }
        }
        for i in 0..n {
            for v in type_violations(self.labels[i], &self.sigma) {
                r.labels_are_types = false;
                r.violations.push(format!("label of {:?}: {v}", w(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && !self.labels[j].is_subset(self.labels[i]) {
                    r.inversely_monotone = false;
                    r.violations.push(format!(
                        "{:?} <= {:?} but the upper label is not contained in the lower",
                        w(i),
                        w(j)
                    ));
                }
            }
        }
        for (k, node) in self.sigma.nodes().iter().enumerate() {
            match *node {
                Node::Imp(a, b) => {
                    for i in 0..n {
                        if !self.labels[i].has(k)
                            && !(0..n).any(|v| leq[v][i] && self.labels[v].has(a) && !self.labels[v].has(b))
                        {
                            r.imp_witnessed = false;
                            r.violations.push(format!(
                                "{} is missing at {:?} without a witness below",
                                self.sigma.formula(k),
                                w(i)
                            ));
                        }
                    }
                }
                Node::CoImp(a, b) => {
                    for i in 0..n {
                        if self.labels[i].has(k)
                            && !(0..n).any(|v| leq[i][v] && self.labels[v].has(a) && !self.labels[v].has(b))
                        {
                            r.coimp_witnessed = false;
                            r.violations.push(format!(
                                "{} holds at {:?} without a witness above",
                                self.sigma.formula(k),
                                w(i)
                            ));
                        }
                    }
                }
                _ => {}
            }
        }
        r
    }

    pub fn to_json(&self) -> SystemJson {
        let id = |i: usize| Id::Str(self.worlds[i].clone());
        SystemJson {
            sigma: self.sigma.formulas().iter().map(|f| f.to_string()).collect(),
            worlds: (0..self.len()).map(id).collect(),
            order: self.order.iter().map(|&(a, b)| (id(a), id(b))).collect(),
            labels: (0..self.len()).map(|i| (self.worlds[i].clone(), self.labels[i].indices())).collect(),
            rel: self.rel.iter().map(|&(a, b)| (id(a), id(b))).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("system serializes")
    }

    pub fn from_json(j: &SystemJson) -> Result<LabelledSystem> {
        let fs = j.sigma.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
        let sigma = SigmaSet::from_list(fs)?;
        let worlds: Vec<String> = j.worlds.iter().map(Id::key).collect();
        let look = |id: &Id| {
            let k = id.key();
            worlds.iter().position(|w| *w == k).ok_or(Error::UnknownWorld(k))
        };
        let order = j.order.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
        let rel = j.rel.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
        for k in j.labels.keys() {
            if !worlds.contains(k) {
                return Err(Error::UnknownWorld(k.clone()));
            }
        }
        let labels = worlds
            .iter()
            .map(|w| {
                let idx = j.labels.get(w).ok_or_else(|| Error::System(format!("world {w:?} has no label")))?;
                SigmaType::from_indices(idx, &sigma)
            })
            .collect::<Result<Vec<_>>>()?;
        LabelledSystem::new(sigma, worlds, order, labels, rel)
    }

    pub fn from_json_str(s: &str) -> Result<LabelledSystem> {
        let j: SystemJson = serde_json::from_str(s)?;
        Self::from_json(&j)
    }
}

/// World identifiers may be written as strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Str(String),
    Num(i64),
}

impl Id {
    fn key(&self) -> String {
        match self {
            Id::Str(s) => s.clone(),
            Id::Num(n) => n.to_string(),
        }
    }
}

/// Serialized form of a [`LabelledSystem`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    pub sigma: Vec<String>,
    pub worlds: Vec<Id>,
    #[serde(default)]
    pub order: Vec<(Id, Id)>,
    pub labels: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub rel: Vec<(Id, Id)>,
}
