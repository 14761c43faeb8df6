//! Moments, temporal successors and small falsifiability witnesses.

mod certify;
mod moment;
mod successor;

pub use certify::{certify_witness, CertifyReport};
pub(crate) use moment::{coimp_ok, imp_ok_at_top};
pub use moment::{is_moment, Moment};
pub(crate) use successor::{maximal, staircases};
pub use successor::{maximal_relations, successor_relations, temporal_successor, Relation};

use serde::{Deserialize, Serialize};

use crate::formula::{parse, Formula, SigmaSet};
use crate::typespace::{LabelledSystem, SigmaType};
use crate::{Error, Result};

/// A double lasso of moments. `moments[0]` repeats `moments[past]` and the
/// last moment repeats `moments[future]`; `rels[k]` relates `moments[k]` to
/// `moments[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub formula: Formula,
    pub moments: Vec<Moment>,
    pub past: usize,
    pub future: usize,
    /// Index of the moment at time zero, where the formula fails.
    pub origin: usize,
    pub rels: Vec<Relation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Anchors {
    pub past: usize,
    pub future: usize,
}

/// Serialized form of a [`Witness`]. `origin` is optional on input; when
/// absent any index between the anchors may serve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessJson {
    pub formula: String,
    pub moments: Vec<Vec<Vec<usize>>>,
    pub anchors: Anchors,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<usize>,
    pub rels: Vec<Vec<(usize, usize)>>,
}

impl Witness {
    pub fn sigma(&self) -> SigmaSet {
        SigmaSet::closure(&self.formula)
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            formula: self.formula.to_string(),
            moments: self.moments.iter().map(|m| m.0.iter().map(|t| t.indices()).collect()).collect(),
            anchors: Anchors { past: self.past, future: self.future },
            origin: Some(self.origin),
            rels: self.rels.clone(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("witness serializes")
    }

    /// Parse the JSON form. A missing origin is resolved to the first index
    /// between the anchors whose moment refutes the formula.
    pub fn from_json(j: &WitnessJson) -> Result<Witness> {
        let formula = parse(&j.formula)?;
        let sigma = SigmaSet::closure(&formula);
        let mut moments = Vec::new();
        for m in &j.moments {
            let types = m.iter().map(|t| SigmaType::from_indices(t, &sigma)).collect::<Result<Vec<_>>>()?;
            moments.push(Moment(types));
        }
        let root = sigma.len() - 1;
        let origin = match j.origin {
            Some(o) => o,
            None => (j.anchors.past..=j.anchors.future)
                .find(|&k| moments.get(k).is_some_and(|m| m.0.iter().any(|t| !t.has(root))))
                .unwrap_or(j.anchors.past),
        };
        let rels = j
            .rels
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort_unstable();
                r.dedup();
                r
            })
            .collect();
        Ok(Witness { formula, moments, past: j.anchors.past, future: j.anchors.future, origin, rels })
    }

    pub fn from_json_str(s: &str) -> Result<Witness> {
        let j: WitnessJson = serde_json::from_str(s)?;
        Self::from_json(&j)
    }

    /// Unfold into a finite labelled system with one chain per time between
    /// the two loop ends, sending the last step back to the future anchor and
    /// the first step out of the past anchor.
    pub fn flatten(&self) -> Result<LabelledSystem> {
        let len = self.moments.len();
        if len < 3 || self.rels.len() + 1 != len || self.past == 0 || self.future + 1 >= len {
            return Err(Error::Witness("witness shape cannot be flattened".into()));
        }
        let slot = |k: usize| {
            if k == 0 {
                self.past
            } else if k == len - 1 {
                self.future
            } else {
                k
            }
        };
        let mut worlds = Vec::new();
        let mut labels = Vec::new();
        let mut base = vec![0; len];
        for (k, m) in self.moments.iter().enumerate().take(len - 1).skip(1) {
            base[k] = worlds.len();
            let time = k as i64 - self.origin as i64;
            for (p, t) in m.0.iter().enumerate() {
                worlds.push(format!("t{time}.{p}"));
                labels.push(*t);
            }
        }
        let mut order = Vec::new();
        for k in 1..len - 1 {
            for p in 1..self.moments[k].height() {
                order.push((base[k] + p - 1, base[k] + p));
            }
        }
        let mut rel = Vec::new();
        for (k, r) in self.rels.iter().enumerate() {
            let (s, t) = (slot(k), slot(k + 1));
            for &(x, y) in r {
                rel.push((base[s] + x, base[t] + y));
            }
        }
        LabelledSystem::new(self.sigma(), worlds, order, labels, rel)
    }
}
