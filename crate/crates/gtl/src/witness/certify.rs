use super::{is_moment, Moment, Relation, Witness};
use crate::formula::{Node, SigmaSet};
use crate::typespace::{check_relation, LabelledSystem};

/// Outcome of certification: each violation carries its clause tag.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertifyReport {
    pub violations: Vec<(String, String)>,
}

impl CertifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, clause: &str, msg: String) {
        self.violations.push((clause.to_string(), msg));
    }

    /// The first failure as `clause (X): message`.
    pub fn first(&self) -> Option<String> {
        self.violations.first().map(|(c, m)| format!("clause {c}: {m}"))
    }
}

/// Check one step relation with the generic relation battery on the
/// parallel sum of the two chains.
fn check_step(m: &Moment, n: &Moment, r: &Relation, sigma: &SigmaSet) -> Vec<String> {
    let (a, b) = (m.height(), n.height());
    if r.is_empty() {
        return vec!["relation is empty".into()];
    }
    if let Some(&(x, y)) = r.iter().find(|&&(x, y)| x >= a || y >= b) {
        return vec![format!("pair ({x}, {y}) is out of range")];
    }
    let worlds: Vec<String> = (0..a).map(|i| format!("m{i}")).chain((0..b).map(|j| format!("n{j}"))).collect();
    let mut order = vec![];
    for i in 1..a {
        order.push((i - 1, i));
    }
    for j in 1..b {
        order.push((a + j - 1, a + j));
    }
    let labels = m.0.iter().chain(&n.0).copied().collect();
    let rel = r.iter().map(|&(x, y)| (x, a + y)).collect();
    let sys = match LabelledSystem::new(sigma.clone(), worlds, order, labels, rel) {
        Ok(s) => s,
        Err(e) => return vec![e.to_string()],
    };
    let rep = check_relation(&sys);
    let mut out = vec![];
    for (name, cex) in rep.failures() {
        if matches!(name, "sensible" | "convex" | "forth-down" | "forth-up" | "back-down" | "back-up") {
            out.push(format!("not {name}: {}", cex[0]));
        }
    }
    out
}

/// Layered search used by clauses (D) to (G). Starting from `start` at
/// `moments[idx(0)]`, walk `len` layers; `step(k)` gives the pairs leading
/// from layer `k` to layer `k + 1` as (from, to) positions. `keep` must hold
/// at every layer before the goal, `goal` at the last one.
fn realized(
    start: usize,
    len: usize,
    step: &dyn Fn(usize) -> Vec<(usize, usize)>,
    at: &dyn Fn(usize, usize) -> (bool, bool),
) -> bool {
    let mut frontier = vec![start];
    for k in 0..len {
        let mut next = vec![];
        for &j in &frontier {
            let (keep, goal) = at(k, j);
            if goal {
                return true;
            }
            if keep && k + 1 < len {
                for (x, y) in step(k) {
                    if x == j && !next.contains(&y) {
                        next.push(y);
                    }
                }
            }
        }
        next.sort_unstable();
        frontier = next;
    }
    false
}

/// Verify clauses (A) to (G) of the witness definition.
pub fn certify_witness(w: &Witness) -> CertifyReport {
    let mut rep = CertifyReport::default();
    let sigma = w.sigma();
    let len = w.moments.len();
    if len < 3 || w.rels.len() + 1 != len {
        rep.push("(B)", format!("{len} moments with {} relations is not a double lasso", w.rels.len()));
        return rep;
    }
    if !(1 <= w.past && w.past <= w.origin && w.origin <= w.future && w.future + 1 < len) {
        rep.push(
            "(B)",
            format!(
                "anchors past={} origin={} future={} do not bracket a nonempty loop on each side",
                w.past, w.origin, w.future
            ),
        );
        return rep;
    }
    for (k, m) in w.moments.iter().enumerate() {
        let (ok, v) = is_moment(&m.0, &sigma);
        if !ok {
            rep.push("moment", format!("entry {k} is not a moment: {}", v[0]));
        }
    }
    if !rep.ok() {
        return rep;
    }

    let root = sigma.len() - 1;
    if w.moments[w.origin].0.iter().all(|t| t.has(root)) {
        rep.push("(A)", format!("no type of the origin moment omits {}", w.formula));
    }
    if w.moments[0] != w.moments[w.past] {
        rep.push("(B)", "the past loop does not close".into());
    }
    if w.moments[len - 1] != w.moments[w.future] {
        rep.push("(B)", "the future loop does not close".into());
    }
    for (k, r) in w.rels.iter().enumerate() {
        for msg in check_step(&w.moments[k], &w.moments[k + 1], r, &sigma) {
            rep.push("(C)", format!("step {k}: {msg}"));
        }
    }
    if !rep.ok() {
        return rep;
    }

    let (i, l) = (w.future, len - 1 - w.future);
    let (ip, lp) = (w.past, w.past);
    let has = |k: usize, j: usize, f: usize| w.moments[k].0[j].has(f);
    let fwd = |k: usize| w.rels[i + k].clone();
    let bwd = |k: usize| w.rels[ip - k - 1].iter().map(|&(x, y)| (y, x)).collect::<Vec<_>>();
    for (k, n) in sigma.nodes().iter().enumerate() {
        let f = sigma.formula(k);
        match *n {
            Node::Until(a, b) => {
                for j in 0..w.moments[i].height() {
                    if has(i, j, k) && !realized(j, l, &fwd, &|r, p| (has(i + r, p, a), has(i + r, p, b))) {
                        rep.push("(D)", format!("{f} at future anchor position {j} is not realized in the loop"));
                    }
                }
            }
            Node::Hence(a) => {
                for j in 0..w.moments[i].height() {
                    if !has(i, j, k) && !realized(j, l, &fwd, &|r, p| (true, !has(i + r, p, a))) {
                        rep.push(
                            "(E)",
                            format!("{f} fails at future anchor position {j} but is never refuted in the loop"),
                        );
                    }
                }
            }
            Node::Since(a, b) => {
                for j in 0..w.moments[ip].height() {
                    if has(ip, j, k) && !realized(j, lp, &bwd, &|r, p| (has(ip - r, p, a), has(ip - r, p, b))) {
                        rep.push("(F)", format!("{f} at past anchor position {j} is not realized in the loop"));
                    }
                }
            }
            Node::Hist(a) => {
                for j in 0..w.moments[ip].height() {
                    if !has(ip, j, k) && !realized(j, lp, &bwd, &|r, p| (true, !has(ip - r, p, a))) {
                        rep.push(
                            "(G)",
                            format!("{f} fails at past anchor position {j} but is never refuted in the loop"),
                        );
                    }
                }
            }
            _ => {}
        }
    }
    rep
}
