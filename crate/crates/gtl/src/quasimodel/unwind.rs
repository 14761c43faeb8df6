use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::formula::Node;
use crate::typespace::{is_quasimodel, LabelledSystem};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DefectKind {
    G,
    H,
    U,
    S,
    /// At the given time index.
    Imp(i64),
    CoImp(i64),
    SerialFwd,
    SerialBwd,
}

/// A defect of one path. `path` is a stable path id, not its position in
/// the grid; `formula` is a closure index (unused for seriality).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Defect {
    pub path: usize,
    pub kind: DefectKind,
    pub formula: usize,
}

/// Paths `paths[i][n]` sit at time `l + 1 + n`, strictly between the bounds.
/// Paths are sorted upwards: `paths[i] <= paths[i + 1]` pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGrid {
    pub l: i64,
    pub k: i64,
    pub paths: Vec<Vec<usize>>,
    /// Stable id per path; the initial path has id 0.
    pub ids: Vec<usize>,
    pub residual: Vec<Defect>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridJson {
    pub bounds: (i64, i64),
    pub paths: Vec<Vec<String>>,
}

impl FiniteGrid {
    pub fn to_json(&self, q: &LabelledSystem) -> GridJson {
        GridJson {
            bounds: (self.l, self.k),
            paths: self.paths.iter().map(|p| p.iter().map(|&w| q.worlds[w].clone()).collect()).collect(),
        }
    }

    /// The paths cut down to times strictly between `l` and `k`.
    pub fn restrict(&self, l: i64, k: i64) -> Vec<Vec<usize>> {
        let lo = (l - self.l) as usize;
        let hi = (k - self.l - 1) as usize;
        self.paths.iter().map(|p| p[lo..hi].to_vec()).collect()
    }

    /// Whether `self` extends `older` in the sense of finite grids.
    pub fn extends(&self, older: &FiniteGrid) -> bool {
        if self.l > older.l || self.k < older.k {
            return false;
        }
        let cut = self.restrict(older.l, older.k);
        older.paths.iter().all(|p| cut.contains(p))
    }

    /// The path through the start world.
    pub fn origin(&self) -> &[usize] {
        let i = self.ids.iter().position(|&id| id == 0).expect("the initial path is never removed");
        &self.paths[i]
    }
}

struct Unwinder<'a> {
    q: &'a LabelledSystem,
    leq: Vec<Vec<bool>>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    grid: FiniteGrid,
    next_id: usize,
}

impl<'a> Unwinder<'a> {
    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    fn has(&self, w: usize, f: usize) -> bool {
        self.q.labels[w].has(f)
    }

    fn pos(&self, id: usize) -> usize {
        self.grid.ids.iter().position(|&x| x == id).expect("live path")
    }

    fn at(&self, path: usize, time: i64) -> usize {
        self.grid.paths[path][(time - self.grid.l - 1) as usize]
    }

    fn defects(&self) -> Vec<Defect> {
        let g = &self.grid;
        let mut out = vec![];
        for (i, p) in g.paths.iter().enumerate() {
            let id = g.ids[i];
            let (first, last) = (p[0], p[p.len() - 1]);
            for (f, node) in self.q.sigma.nodes().iter().enumerate() {
                let kind = match *node {
                    Node::Hence(a) if !self.has(last, f) && self.has(last, a) => Some(DefectKind::G),
                    Node::Hist(a) if !self.has(first, f) && self.has(first, a) => Some(DefectKind::H),
                    Node::Until(_, b) if self.has(last, f) && !self.has(last, b) => Some(DefectKind::U),
                    Node::Since(_, b) if self.has(first, f) && !self.has(first, b) => Some(DefectKind::S),
                    _ => None,
                };
                if let Some(kind) = kind {
                    out.push(Defect { path: id, kind, formula: f });
                }
                for (n, &w) in p.iter().enumerate() {
                    let j = g.l + 1 + n as i64;
                    let bad = |v: usize, a: usize, b: usize| self.has(v, a) && !self.has(v, b);
                    match *node {
                        Node::Imp(a, b) if !self.has(w, f) && !(0..=i).any(|r| bad(g.paths[r][n], a, b)) => {
                            out.push(Defect { path: id, kind: DefectKind::Imp(j), formula: f })
                        }
                        Node::CoImp(a, b)
                            if self.has(w, f) && !(i..g.paths.len()).any(|r| bad(g.paths[r][n], a, b)) =>
                        {
                            out.push(Defect { path: id, kind: DefectKind::CoImp(j), formula: f })
                        }
                        _ => {}
                    }
                }
            }
            out.push(Defect { path: id, kind: DefectKind::SerialFwd, formula: 0 });
            out.push(Defect { path: id, kind: DefectKind::SerialBwd, formula: 0 });
        }
        out
    }

    /// Shortest walk of at least one step from `w` to a world satisfying
    /// `goal`, excluding `w` itself at the start; least world ids first.
    fn walk(&self, w: usize, fwd: bool, goal: impl Fn(usize) -> bool) -> Result<Vec<usize>> {
        let step = if fwd { &self.succ } else { &self.pred };
        let n = self.q.len();
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &v in &step[w] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            if goal(v) {
                let mut out = vec![v];
                let mut cur = v;
                while parent[cur] != usize::MAX {
                    cur = parent[cur];
                    out.push(cur);
                }
                out.reverse();
                return Ok(out);
            }
            for &u in &step[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        Err(Error::Precondition(format!(
            "no cure reachable from {:?}; the system is not omega-sensible",
            self.q.worlds[w]
        )))
    }

    /// Least world related to `from` in the direction with
    /// `lo <= w <= hi` for the given bounds.
    fn pick(&self, from: usize, fwd: bool, lo: Option<usize>, hi: Option<usize>) -> Result<usize> {
        let step = if fwd { &self.succ } else { &self.pred };
        step[from]
            .iter()
            .copied()
            .find(|&v| lo.is_none_or(|l| self.le(l, v)) && hi.is_none_or(|h| self.le(v, h)))
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "confluence fails at {:?}; the system is not a quasimodel",
                    self.q.worlds[from]
                ))
            })
    }

    /// Lengthen path `i` by `seg` in the direction, then every other path
    /// by confluence, moving outwards from `i` so the order is kept.
    fn lengthen(&mut self, i: usize, seg: &[usize], fwd: bool) -> Result<()> {
        let m = seg.len();
        let mut ext: Vec<Option<Vec<usize>>> = vec![None; self.grid.paths.len()];
        ext[i] = Some(seg.to_vec());
        let end = |p: &Vec<usize>| if fwd { p[p.len() - 1] } else { p[0] };
        for r in i + 1..self.grid.paths.len() {
            let below = ext[r - 1].clone().expect("filled in order");
            let mut cur = end(&self.grid.paths[r]);
            let mut s = vec![];
            for &b in &below {
                cur = self.pick(cur, fwd, Some(b), None)?;
                s.push(cur);
            }
            ext[r] = Some(s);
        }
        for r in (0..i).rev() {
            let above = ext[r + 1].clone().expect("filled in order");
            let mut cur = end(&self.grid.paths[r]);
            let mut s = vec![];
            for &a in &above {
                cur = self.pick(cur, fwd, None, Some(a))?;
                s.push(cur);
            }
            ext[r] = Some(s);
        }
        for (p, e) in self.grid.paths.iter_mut().zip(ext) {
            let e = e.expect("every path extended");
            if fwd {
                p.extend(e);
            } else {
                // the segment runs backwards in time
                let mut pre: Vec<usize> = e.into_iter().rev().collect();
                pre.extend(p.iter().copied());
                *p = pre;
            }
        }
        if fwd {
            self.grid.k += m as i64;
        } else {
            self.grid.l -= m as i64;
        }
        Ok(())
    }

    /// A new path through `v` at time `j`, squeezed between the paths at
    /// positions `below` and `below + 1`.
    fn insert(&mut self, below: Option<usize>, v: usize, j: i64) -> Result<()> {
        let above = match below {
            Some(b) => b + 1,
            None => 0,
        };
        let above = (above < self.grid.paths.len()).then_some(above);
        let width = self.grid.paths[0].len();
        let n0 = (j - self.grid.l - 1) as usize;
        let mut path = vec![usize::MAX; width];
        path[n0] = v;
        for n in n0 + 1..width {
            let lo = below.map(|b| self.grid.paths[b][n]);
            let hi = above.map(|a| self.grid.paths[a][n]);
            path[n] = self.pick(path[n - 1], true, lo, hi)?;
        }
        for n in (0..n0).rev() {
            let lo = below.map(|b| self.grid.paths[b][n]);
            let hi = above.map(|a| self.grid.paths[a][n]);
            path[n] = self.pick(path[n + 1], false, lo, hi)?;
        }
        let at = above.unwrap_or(self.grid.paths.len());
        self.grid.paths.insert(at, path);
        self.grid.ids.insert(at, self.next_id);
        self.next_id += 1;
        Ok(())
    }

    fn cure(&mut self, d: Defect) -> Result<()> {
        let i = self.pos(d.path);
        let p = self.grid.paths[i].clone();
        let (first, last) = (p[0], p[p.len() - 1]);
        let node = self.q.sigma.node(d.formula).clone();
        match (d.kind, node) {
            (DefectKind::U, Node::Until(_, b)) => {
                let seg = self.walk(last, true, |v| self.has(v, b))?;
                self.lengthen(i, &seg, true)
            }
            (DefectKind::G, Node::Hence(a)) => {
                let seg = self.walk(last, true, |v| !self.has(v, a))?;
                self.lengthen(i, &seg, true)
            }
            (DefectKind::S, Node::Since(_, b)) => {
                let seg = self.walk(first, false, |v| self.has(v, b))?;
                self.lengthen(i, &seg, false)
            }
            (DefectKind::H, Node::Hist(a)) => {
                let seg = self.walk(first, false, |v| !self.has(v, a))?;
                self.lengthen(i, &seg, false)
            }
            (DefectKind::SerialFwd, _) => {
                let v = self.pick(last, true, None, None)?;
                self.lengthen(i, &[v], true)
            }
            (DefectKind::SerialBwd, _) => {
                let v = self.pick(first, false, None, None)?;
                self.lengthen(i, &[v], false)
            }
            (DefectKind::Imp(j) | DefectKind::CoImp(j), Node::Imp(a, b) | Node::CoImp(a, b)) => {
                let imp = matches!(d.kind, DefectKind::Imp(_));
                let w = self.at(i, j);
                let v = (0..self.q.len())
                    .find(|&v| {
                        v != w && (if imp { self.le(v, w) } else { self.le(w, v) }) && self.has(v, a) && !self.has(v, b)
                    })
                    .ok_or_else(|| {
                        Error::Precondition(format!(
                            "no witness for {} at {:?}",
                            self.q.sigma.formula(d.formula),
                            self.q.worlds[w]
                        ))
                    })?;
                // paths at time j increase along the grid
                let below = (0..self.grid.paths.len()).rev().find(|&r| {
                    let x = self.at(r, j);
                    x != v && self.le(x, v)
                });
                self.insert(below, v, j)
            }
            _ => unreachable!("defect kinds match their formulas"),
        }
    }
}

/// Unwind the quasimodel from `w0` for `steps` queue pops.
pub fn bounded_unwind(q: &LabelledSystem, w0: &str, steps: usize) -> Result<FiniteGrid> {
    let (ok, rep) = is_quasimodel(q);
    if !ok {
        let why = rep
            .space
            .violations
            .first()
            .cloned()
            .or_else(|| rep.relation.failures().first().map(|(n, c)| format!("{n}: {}", c[0])))
            .unwrap_or_default();
        return Err(Error::Precondition(format!("not a quasimodel: {why}")));
    }
    let start = q.world_index(w0).ok_or_else(|| Error::UnknownWorld(w0.to_string()))?;
    let n = q.len();
    let mut succ = vec![vec![]; n];
    let mut pred = vec![vec![]; n];
    for &(a, b) in &q.rel {
        succ[a].push(b);
        pred[b].push(a);
    }
    for v in succ.iter_mut().chain(pred.iter_mut()) {
        v.sort_unstable();
    }
    let mut u = Unwinder {
        q,
        leq: q.leq(),
        succ,
        pred,
        grid: FiniteGrid { l: -1, k: 1, paths: vec![vec![start]], ids: vec![0], residual: vec![] },
        next_id: 1,
    };
    let mut queue: VecDeque<Defect> = u.defects().into();
    for _ in 0..steps {
        let Some(head) = queue.pop_front() else { break };
        u.cure(head)?;
        let now = u.defects();
        let live: HashSet<Defect> = now.iter().copied().collect();
        queue.retain(|d| live.contains(d));
        let queued: HashSet<Defect> = queue.iter().copied().collect();
        queue.extend(now.into_iter().filter(|d| !queued.contains(d)));
    }
    u.grid.residual = queue.into();
    Ok(u.grid)
}
