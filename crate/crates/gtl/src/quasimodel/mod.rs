//! Quotients of labelled systems, the model-to-system bridge and bounded
//! unwinding of a quasimodel into a finite grid of paths.

mod unwind;

pub use unwind::{bounded_unwind, Defect, DefectKind, FiniteGrid, GridJson};

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::SigmaSet;
use crate::semantics::{EvalOptions, PeriodicBiModel};
use crate::typespace::{check_relation, LabelledSystem, SigmaType};
use crate::{Error, Result};

/// An equivalence class of worlds: the label together with the family of
/// labels on the world's comparability component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientClass {
    pub ell: SigmaType,
    /// Sorted bottom-up, i.e. by decreasing label.
    pub big_l: Vec<SigmaType>,
}

/// The quotient system together with the class of every input world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub system: LabelledSystem,
    pub classes: Vec<QuotientClass>,
    pub class_of: Vec<usize>,
}

/// `(|sigma| + 1) * 2^(|sigma| (|sigma| + 1) + 1)`, or `None` when it does
/// not fit in 128 bits.
pub fn world_bound(sigma_len: usize) -> Option<u128> {
    let e = sigma_len.checked_mul(sigma_len + 1)?.checked_add(1)?;
    if e >= 120 {
        return None;
    }
    Some((sigma_len as u128 + 1) << e)
}

/// Quotient with the convexified relation.
pub fn quotient(sys: &LabelledSystem) -> Result<LabelledSystem> {
    Ok(quotient_classes(sys)?.system)
}

pub fn quotient_classes(sys: &LabelledSystem) -> Result<Quotient> {
    let space = sys.check_space();
    if !space.ok() {
        let why = space.violations.first().cloned().unwrap_or_default();
        return Err(Error::Precondition(format!("not a labelled space: {why}")));
    }
    let rep = check_relation(sys);
    let confluence: Vec<String> = [&rep.forth_down_cex, &rep.forth_up_cex, &rep.back_down_cex, &rep.back_up_cex]
        .into_iter()
        .flatten()
        .cloned()
        .collect();
    for (name, ok, cex) in [
        ("sensible", rep.sensible, &rep.sensible_cex),
        ("fully confluent", rep.fully_confluent, &confluence),
        ("bi-serial", rep.bi_serial, &rep.bi_serial_cex),
        ("convex", rep.convex, &rep.convex_cex),
    ] {
        if !ok {
            let detail = cex.first().map(String::as_str).unwrap_or("");
            return Err(Error::Precondition(format!("relation is not {name}: {detail}")));
        }
    }

    let leq = sys.leq();
    let mut fam = vec![vec![]; sys.len()];
    for comp in sys.components(&leq) {
        let mut ls: Vec<SigmaType> = comp.iter().map(|&w| sys.labels[w]).collect::<BTreeSet<_>>().into_iter().collect();
        ls.sort_by_key(|l| (std::cmp::Reverse(l.len()), l.0));
        for &w in &comp {
            fam[w] = ls.clone();
        }
    }
    let keyed: Vec<QuotientClass> =
        (0..sys.len()).map(|w| QuotientClass { ell: sys.labels[w], big_l: fam[w].clone() }).collect();
    // top of each chain first, chains in order of their label families; the
    // unwinder breaks ties by least index, so this keeps top paths in place
    let mut classes: Vec<QuotientClass> = keyed.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    classes.sort_by(|a, b| (&a.big_l, a.ell.len(), a.ell).cmp(&(&b.big_l, b.ell.len(), b.ell)));
    let index: BTreeMap<&QuotientClass, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let class_of: Vec<usize> = keyed.iter().map(|c| index[c]).collect();

    let n = classes.len();
    let le = |a: usize, b: usize| classes[a].big_l == classes[b].big_l && classes[b].ell.is_subset(classes[a].ell);
    let mut rq = vec![vec![false; n]; n];
    for &(a, b) in &sys.rel {
        rq[class_of[a]][class_of[b]] = true;
    }
    // X R+ Y iff some X2 >= X reaches some Y1 <= Y and some X1 <= X reaches
    // some Y2 >= Y
    let mut rel = vec![];
    for x in 0..n {
        for y in 0..n {
            let up_down = (0..n).any(|x2| le(x, x2) && (0..n).any(|y1| le(y1, y) && rq[x2][y1]));
            let down_up = (0..n).any(|x1| le(x1, x) && (0..n).any(|y2| le(y, y2) && rq[x1][y2]));
            if up_down && down_up {
                rel.push((x, y));
            }
        }
    }
    let order: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b && le(a, b)).collect();
    let worlds = (0..n).map(|i| format!("q{i}")).collect();
    let labels = classes.iter().map(|c| c.ell).collect();
    let system = LabelledSystem::new(sys.sigma.clone(), worlds, order, labels, rel)?;

    let s = sys.sigma.len();
    assert!(system.height() <= s + 1, "quotient height above |sigma| + 1");
    if let Some(b) = world_bound(s) {
        assert!((n as u128) <= b, "quotient larger than the class bound");
    }
    Ok(Quotient { system, classes, class_of })
}

/// The system of a bi-relational model: worlds are the pairs `(w, t)`,
/// labelled with the closure members holding there, related by the time
/// step.
pub fn model_to_system(model: &PeriodicBiModel, sigma: &SigmaSet) -> Result<LabelledSystem> {
    let (nw, k) = (model.worlds, model.period);
    let tab = model.table(sigma, &EvalOptions::default())?;
    let at = |w: usize, t: usize| w * k + t;
    let mut worlds = Vec::with_capacity(nw * k);
    let mut labels = Vec::with_capacity(nw * k);
    let mut order = vec![];
    let mut rel = vec![];
    for w in 0..nw {
        for t in 0..k {
            worlds.push(format!("{w}:{t}"));
            let mut l = SigmaType::EMPTY;
            for (i, row) in tab.iter().enumerate() {
                if row[w][t] {
                    l = l.with(i);
                }
            }
            labels.push(l);
            rel.push((at(w, t), at(w, (t + 1) % k)));
            // index 0 is the top world
            if w + 1 < nw {
                order.push((at(w + 1, t), at(w, t)));
            }
        }
    }
    LabelledSystem::new(sigma.clone(), worlds, order, labels, rel)
}
