//! Checking Hilbert-style derivations.

mod ipc;
mod schema;

pub use ipc::ipc_tautology;
pub use schema::{catalogue, match_axiom, schema, Schema, Subst};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::{parse, Formula};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Instance of a catalogued schema. Without a substitution the most
    /// general matcher is used.
    Axiom {
        schema: String,
        subst: Option<Subst>,
    },
    Ipc,
    /// `Mp(i, j)`: step `i` is φ and step `j` is φ → ψ.
    Mp(usize, usize),
    NecX(usize),
    NecY(usize),
    NecG(usize),
    NecH(usize),
    /// φ → ψ gives (φ -< θ) → (ψ -< θ).
    DimpMon(usize),
    /// φ → ψ ∨ γ gives (φ -< ψ) → γ.
    DimpDis(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub formula: Formula,
    pub by: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFailure {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

fn check_step(steps: &[ProofStep], k: usize) -> std::result::Result<(), String> {
    use Formula::*;
    let f = &steps[k].formula;
    let earlier = |i: usize| -> std::result::Result<&Formula, String> {
        if i < k {
            Ok(&steps[i].formula)
        } else {
            Err(format!("premise {i} does not precede the step"))
        }
    };
    let nec = |i: usize, wrap: fn(Formula) -> Formula, name: &str| -> std::result::Result<(), String> {
        let p = earlier(i)?;
        if *f == wrap(p.clone()) {
            Ok(())
        } else {
            Err(format!("{name} of step {i} yields {}, not {f}", wrap(p.clone())))
        }
    };
    match &steps[k].by {
        Justification::Axiom { schema: id, subst } => {
            let sc = schema(id).ok_or_else(|| format!("unknown schema {id}"))?;
            match subst {
                Some(s) if sc.instantiate(s) == *f => Ok(()),
                Some(s) => Err(format!("{id} under the given substitution is {}, not {f}", sc.instantiate(s))),
                None if sc.matches(f).is_some() => Ok(()),
                None => Err(format!("{f} is not an instance of {id} ({})", sc.pattern)),
            }
        }
        Justification::Ipc => {
            if f.contains_coimp() {
                Err(format!("{f} contains co-implication, outside group I"))
            } else if ipc_tautology(f) {
                Ok(())
            } else {
                Err(format!("{f} is not an intuitionistic tautology instance"))
            }
        }
        Justification::Mp(i, j) => {
            let (a, b) = (earlier(*i)?, earlier(*j)?);
            match b {
                Imp(x, y) if **x == *a && **y == *f => Ok(()),
                Imp(x, _) if **x == *a => {
                    Err(format!("modus ponens on steps {i}, {j} yields {}, not {f}", b.children()[1]))
                }
                _ => Err(format!("step {j} is not an implication from step {i}")),
            }
        }
        Justification::NecX(i) => nec(*i, Formula::next, "X-necessitation"),
        Justification::NecY(i) => nec(*i, Formula::yesterday, "Y-necessitation"),
        Justification::NecG(i) => nec(*i, Formula::hence, "G-necessitation"),
        Justification::NecH(i) => nec(*i, Formula::hist, "H-necessitation"),
        Justification::DimpMon(i) => {
            let p = earlier(*i)?;
            match (p, f) {
                (Imp(a, b), Imp(l, r)) => match (&**l, &**r) {
                    (CoImp(a2, t1), CoImp(b2, t2)) if a2 == a && b2 == b && t1 == t2 => Ok(()),
                    _ => Err(format!("{f} does not follow from step {i} by co-implication monotonicity")),
                },
                _ => Err(format!("co-implication monotonicity needs implications, got {p} and {f}")),
            }
        }
        Justification::DimpDis(i) => {
            let p = earlier(*i)?;
            let shaped = match (p, f) {
                (Imp(a, bg), Imp(l, g2)) => match (&**bg, &**l) {
                    (Or(b, g), CoImp(a2, b2)) => a2 == a && b2 == b && g2 == g,
                    _ => false,
                },
                _ => false,
            };
            if shaped {
                Ok(())
            } else {
                Err(format!("{f} does not follow from step {i} by the co-implication rule"))
            }
        }
    }
}

/// Validate every step; report the first failure.
pub fn check_proof(p: &Proof) -> std::result::Result<(), StepFailure> {
    if p.steps.is_empty() {
        return Err(StepFailure { step: 0, reason: "empty proof".into() });
    }
    for k in 0..p.steps.len() {
        check_step(&p.steps, k).map_err(|reason| StepFailure { step: k, reason })?;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ByJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subst: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub premises: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepJson {
    pub formula: String,
    pub by: ByJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProofJson {
    pub steps: Vec<StepJson>,
}

impl Proof {
    pub fn from_json(j: &ProofJson) -> Result<Proof> {
        let mut steps = Vec::new();
        for (k, s) in j.steps.iter().enumerate() {
            let bad = |m: String| Error::Proof(format!("step {k}: {m}"));
            let formula = parse(&s.formula).map_err(|e| bad(e.to_string()))?;
            let prem = s.by.premises.clone().unwrap_or_default();
            let one = || match prem.as_slice() {
                [i] => Ok(*i),
                _ => Err(bad(format!("{} takes one premise", s.by.kind))),
            };
            let by = match s.by.kind.as_str() {
                "axiom" => {
                    let schema = s.by.schema.clone().ok_or_else(|| bad("axiom step without schema".into()))?;
                    let subst = match &s.by.subst {
                        None => None,
                        Some(m) => Some(
                            m.iter()
                                .map(|(v, t)| Ok((v.clone(), parse(t).map_err(|e| bad(e.to_string()))?)))
                                .collect::<Result<Subst>>()?,
                        ),
                    };
                    Justification::Axiom { schema, subst }
                }
                "ipc" => Justification::Ipc,
                "mp" => match prem.as_slice() {
                    [i, j] => Justification::Mp(*i, *j),
                    _ => return Err(bad("mp takes two premises".into())),
                },
                "necX" => Justification::NecX(one()?),
                "necY" => Justification::NecY(one()?),
                "necG" => Justification::NecG(one()?),
                "necH" => Justification::NecH(one()?),
                "dimpMon" => Justification::DimpMon(one()?),
                "dimpDis" => Justification::DimpDis(one()?),
                other => return Err(bad(format!("unknown rule kind {other:?}"))),
            };
            steps.push(ProofStep { formula, by });
        }
        Ok(Proof { steps })
    }

    pub fn from_json_str(s: &str) -> Result<Proof> {
        let j: ProofJson = serde_json::from_str(s).map_err(|e| Error::Proof(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> ProofJson {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let (kind, schema, subst, premises) = match &s.by {
                    Justification::Axiom { schema, subst } => (
                        "axiom",
                        Some(schema.clone()),
                        subst.as_ref().map(|m| m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()),
                        None,
                    ),
                    Justification::Ipc => ("ipc", None, None, None),
                    Justification::Mp(i, j) => ("mp", None, None, Some(vec![*i, *j])),
                    Justification::NecX(i) => ("necX", None, None, Some(vec![*i])),
                    Justification::NecY(i) => ("necY", None, None, Some(vec![*i])),
                    Justification::NecG(i) => ("necG", None, None, Some(vec![*i])),
                    Justification::NecH(i) => ("necH", None, None, Some(vec![*i])),
                    Justification::DimpMon(i) => ("dimpMon", None, None, Some(vec![*i])),
                    Justification::DimpDis(i) => ("dimpDis", None, None, Some(vec![*i])),
                };
                StepJson { formula: s.formula.to_string(), by: ByJson { kind: kind.into(), schema, subst, premises } }
            })
            .collect();
        ProofJson { steps }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("proof serializes")
    }
}

/// The shipped derivations, by name.
pub const CORPUS: &[(&str, &str)] = &[
    ("lemma_a", include_str!("../../data/proofs/lemma_a.json")),
    ("lemma_b", include_str!("../../data/proofs/lemma_b.json")),
    ("lemma_c", include_str!("../../data/proofs/lemma_c.json")),
    ("lemma_d", include_str!("../../data/proofs/lemma_d.json")),
    ("lemma_e", include_str!("../../data/proofs/lemma_e.json")),
    ("lemma_f", include_str!("../../data/proofs/lemma_f.json")),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn step(f: &str, by: Justification) -> ProofStep {
        ProofStep { formula: parse(f).unwrap(), by }
    }

    #[test]
    fn examples() {
        let p = Proof { steps: vec![step("p -> p", Justification::Ipc), step("G (p -> p)", Justification::NecG(0))] };
        assert_eq!(check_proof(&p), Ok(()));
        let ax = Proof {
            steps: vec![step("~X false", Justification::Axiom { schema: "IV.a".into(), subst: Some(Subst::new()) })],
        };
        assert_eq!(check_proof(&ax), Ok(()));
        let bad = Proof { steps: vec![step("p", Justification::Ipc)] };
        assert_eq!(check_proof(&bad).unwrap_err().step, 0);
    }

    #[test]
    fn matching() {
        let (id, s) = match_axiom(&parse("G p -> p & X G p").unwrap()).unwrap();
        assert_eq!(id, "IV.h");
        assert_eq!(s["phi"], parse("p").unwrap());
        let (id, s) = match_axiom(&parse("q <-> X Y q").unwrap()).unwrap();
        assert_eq!(id, "V.a");
        assert_eq!(s["phi"], parse("q").unwrap());
        assert!(match_axiom(&parse("p -> q").unwrap()).is_none());
    }

    #[test]
    fn co_implication_rules() {
        let p = Proof {
            steps: vec![
                step("p -> p | q", Justification::Ipc),
                step("(p -< p) -> q", Justification::DimpDis(0)),
                step("p & q -> p", Justification::Ipc),
                step("(p & q -< r) -> (p -< r)", Justification::DimpMon(2)),
            ],
        };
        assert_eq!(check_proof(&p), Ok(()));
    }
}
