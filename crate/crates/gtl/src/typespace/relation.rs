use super::{is_sensible_pair, LabelledSystem, SpaceReport};
use crate::formula::Node;

/// Outcome of the relation battery. Every flag is false exactly when its
/// counterexample list is nonempty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub sensible: bool,
    pub convex: bool,
    pub fully_confluent: bool,
    pub forth_down: bool,
    pub forth_up: bool,
    pub back_down: bool,
    pub back_up: bool,
    pub bi_serial: bool,
    pub omega_sensible: bool,
    pub sensible_cex: Vec<String>,
    pub convex_cex: Vec<String>,
    pub forth_down_cex: Vec<String>,
    pub forth_up_cex: Vec<String>,
    pub back_down_cex: Vec<String>,
    pub back_up_cex: Vec<String>,
    pub bi_serial_cex: Vec<String>,
    pub omega_sensible_cex: Vec<String>,
}

impl RelationReport {
    pub fn all(&self) -> bool {
        self.sensible && self.convex && self.fully_confluent && self.bi_serial && self.omega_sensible
    }

    /// Names and counterexamples of the failed flags.
    pub fn failures(&self) -> Vec<(&'static str, &[String])> {
        let mut out: Vec<(&'static str, &[String])> = vec![];
        for (name, list) in [
            ("sensible", &self.sensible_cex),
            ("convex", &self.convex_cex),
            ("forth-down", &self.forth_down_cex),
            ("forth-up", &self.forth_up_cex),
            ("back-down", &self.back_down_cex),
            ("back-up", &self.back_up_cex),
            ("bi-serial", &self.bi_serial_cex),
            ("omega-sensible", &self.omega_sensible_cex),
        ] {
            if !list.is_empty() {
                out.push((name, list.as_slice()));
            }
        }
        out
    }
}

/// Reflexive-transitive closure of a relation given as an adjacency matrix.
pub(crate) fn reach(adj: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut m = adj.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        let row_k = m[k].clone();
        for row in m.iter_mut() {
            if row[k] {
                for (j, &b) in row_k.iter().enumerate() {
                    row[j] |= b;
                }
            }
        }
    }
    m
}

/// Run every relation check on the system, exhaustively.
pub fn check_relation(sys: &LabelledSystem) -> RelationReport {
    let n = sys.len();
    let leq = sys.leq();
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in &sys.rel {
        r[a][b] = true;
    }
    let w = |i: usize| &sys.worlds[i];
    let mut rep = RelationReport::default();

    for &(a, b) in &sys.rel {
        let (ok, v) = is_sensible_pair(sys.labels[a], sys.labels[b], &sys.sigma);
        if !ok {
            for v in v {
                rep.sensible_cex.push(format!("({:?}, {:?}): {v}", w(a), w(b)));
            }
        }
    }

    for x in 0..n {
        for y1 in 0..n {
            for y2 in 0..n {
                if r[x][y1] && r[x][y2] && leq[y1][y2] {
                    for z in 0..n {
                        if leq[y1][z] && leq[z][y2] && !r[x][z] {
                            rep.convex_cex.push(format!(
                                "image of {:?} contains {:?} and {:?} but not {:?}",
                                w(x),
                                w(y1),
                                w(y2),
                                w(z)
                            ));
                        }
                    }
                }
                if r[y1][x] && r[y2][x] && leq[y1][y2] {
                    for z in 0..n {
                        if leq[y1][z] && leq[z][y2] && !r[z][x] {
                            rep.convex_cex.push(format!(
                                "preimage of {:?} contains {:?} and {:?} but not {:?}",
                                w(x),
                                w(y1),
                                w(y2),
                                w(z)
                            ));
                        }
                    }
                }
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            if !leq[a][b] {
                continue;
            }
            // a <= b among sources, a <= b among targets.
            for t in 0..n {
                // forth-down: a <= b R t  gives  a R y <= t
                if r[b][t] && !(0..n).any(|y| r[a][y] && leq[y][t]) {
                    rep.forth_down_cex.push(format!("{:?} <= {:?} R {:?}", w(a), w(b), w(t)));
                }
                // forth-up: b >= a R t  gives  b R y >= t
                if r[a][t] && !(0..n).any(|y| r[b][y] && leq[t][y]) {
                    rep.forth_up_cex.push(format!("{:?} >= {:?} R {:?}", w(b), w(a), w(t)));
                }
                // back-down: t R b >= a  gives  t >= x R a
                if r[t][b] && !(0..n).any(|x| leq[x][t] && r[x][a]) {
                    rep.back_down_cex.push(format!("{:?} R {:?} >= {:?}", w(t), w(b), w(a)));
                }
                // back-up: t R a <= b  gives  t <= x R b
                if r[t][a] && !(0..n).any(|x| leq[t][x] && r[x][b]) {
                    rep.back_up_cex.push(format!("{:?} R {:?} <= {:?}", w(t), w(a), w(b)));
                }
            }
        }
    }

    for x in 0..n {
        if !(0..n).any(|y| r[x][y]) {
            rep.bi_serial_cex.push(format!("{:?} has no successor", w(x)));
        }
        if !(0..n).any(|y| r[y][x]) {
            rep.bi_serial_cex.push(format!("{:?} has no predecessor", w(x)));
        }
    }

    let fwd = reach(&r);
    let back: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| fwd[j][i]).collect()).collect();
    for (k, node) in sys.sigma.nodes().iter().enumerate() {
        let f = sys.sigma.formula(k);
        for x in 0..n {
            let l = sys.labels[x];
            let (need, reachable, label): (Option<Box<dyn Fn(usize) -> bool>>, &Vec<bool>, &str) = match *node {
                Node::Hence(a) if !l.has(k) => (Some(Box::new(move |v| !sys.labels[v].has(a))), &fwd[x], "G"),
                Node::Hist(a) if !l.has(k) => (Some(Box::new(move |v| !sys.labels[v].has(a))), &back[x], "H"),
                Node::Until(_, b) if l.has(k) => (Some(Box::new(move |v| sys.labels[v].has(b))), &fwd[x], "U"),
                Node::Since(_, b) if l.has(k) => (Some(Box::new(move |v| sys.labels[v].has(b))), &back[x], "S"),
                _ => (None, &fwd[x], ""),
            };
            if let Some(need) = need {
                if !(0..n).any(|v| reachable[v] && need(v)) {
                    rep.omega_sensible_cex.push(format!("{label}: {f} at {:?} is never realized", w(x)));
                }
            }
        }
    }

    rep.sensible = rep.sensible_cex.is_empty();
    rep.convex = rep.convex_cex.is_empty();
    rep.forth_down = rep.forth_down_cex.is_empty();
    rep.forth_up = rep.forth_up_cex.is_empty();
    rep.back_down = rep.back_down_cex.is_empty();
    rep.back_up = rep.back_up_cex.is_empty();
    rep.fully_confluent = rep.forth_down && rep.forth_up && rep.back_down && rep.back_up;
    rep.bi_serial = rep.bi_serial_cex.is_empty();
    rep.omega_sensible = rep.omega_sensible_cex.is_empty();
    rep
}

/// Both halves of the quasimodel check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasimodelReport {
    pub space: SpaceReport,
    pub relation: RelationReport,
}

impl QuasimodelReport {
    pub fn ok(&self) -> bool {
        self.space.ok() && self.relation.all()
    }
}

pub fn is_quasimodel(sys: &LabelledSystem) -> (bool, QuasimodelReport) {
    let rep = QuasimodelReport { space: sys.check_space(), relation: check_relation(sys) };
    (rep.ok(), rep)
}
