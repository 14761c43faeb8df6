//! Exhaustive witness enumeration within fixed lengths. Written separately
//! from the main search so the two can be compared.

use std::collections::HashMap;

use super::Verdict;
use crate::formula::{Formula, Node, SigmaSet};
use crate::typespace::{enumerate_types, is_sensible_pair, SigmaType};
use crate::witness::{certify_witness, is_moment, Moment, Relation, Witness};
use crate::{Error, Result};

/// Size caps for [`brute_force_falsifiable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteBounds {
    pub max_sigma: usize,
    /// Steps between time zero and either anchor.
    pub max_prefix: usize,
    /// Length of each loop.
    pub max_loop: usize,
    /// Candidate relations per pair of moments before checking.
    pub max_candidates: usize,
}

impl Default for BruteBounds {
    fn default() -> Self {
        BruteBounds { max_sigma: 8, max_prefix: 2, max_loop: 3, max_candidates: 200_000 }
    }
}

struct Oracle {
    sigma: SigmaSet,
    moments: Vec<Moment>,
    /// Maximal valid relations from moment i to moment j.
    rels: HashMap<(usize, usize), Vec<Relation>>,
    loops: HashMap<(usize, bool, usize), Option<(Vec<usize>, Vec<Relation>)>>,
    rows: HashMap<(usize, bool), std::rc::Rc<Vec<usize>>>,
    buckets: HashMap<(SigmaType, SigmaType), Vec<usize>>,
    sensible: HashMap<(SigmaType, SigmaType), bool>,
}

/// One half of a witness, as seen walking away from time zero: the visited
/// moments and the relation used for each step, oriented forwards in time.
type Half = (Vec<usize>, Vec<Relation>, usize);

impl Oracle {
    fn relations(&mut self, i: usize, j: usize, cap: usize) -> Result<Vec<Relation>> {
        if let Some(r) = self.rels.get(&(i, j)) {
            return Ok(r.clone());
        }
        let (m, n) = (&self.moments[i], &self.moments[j]);
        let (a, b) = (m.height(), n.height());
        // every position has to be related to something
        let sens = |x: usize, y: usize| self.sensible[&(m.0[x], n.0[y])];
        if (0..a).any(|x| (0..b).all(|y| !sens(x, y))) || (0..b).any(|y| (0..a).all(|x| !sens(x, y))) {
            return Ok(vec![]);
        }
        // per source position, the target intervals whose cells are all
        // sensible pairs; checking the rest is pointless
        let cell: Vec<Vec<bool>> = (0..a).map(|x| (0..b).map(|y| self.sensible[&(m.0[x], n.0[y])]).collect()).collect();

        let options: Vec<Vec<(usize, usize)>> = (0..a)
            .map(|x| {
                (0..b).flat_map(|l| (l..b).map(move |h| (l, h))).filter(|&(l, h)| (l..=h).all(|y| cell[x][y])).collect()
            })
            .collect();
        let total: f64 = options.iter().map(|o| o.len() as f64).product();
        if total > cap as f64 {
            return Err(Error::Precondition(format!("{total} candidate relations exceed the bound {cap}")));
        }
        let mut ok = vec![];
        if total > 0.0 {
            let mut choice = vec![0usize; a];
            'all: loop {
                let iv: Vec<(usize, usize)> = choice.iter().enumerate().map(|(x, &c)| options[x][c]).collect();
                // the shape every valid step has between two chains; the
                // full check below still decides
                let shaped = iv[0].0 == 0
                    && iv[a - 1].1 == b - 1
                    && iv.windows(2).all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1 && w[1].0 <= w[0].1 + 1);
                let rel: Relation = choice
                    .iter()
                    .enumerate()
                    .flat_map(|(x, &c)| {
                        let (l, h) = options[x][c];
                        (l..=h).map(move |y| (x, y))
                    })
                    .collect();
                if shaped && self.valid_step(m, n, &rel)? {
                    ok.push(rel);
                }
                for (x, c) in choice.iter_mut().enumerate() {
                    *c += 1;
                    if *c < options[x].len() {
                        continue 'all;
                    }
                    *c = 0;
                }
                break;
            }
        }
        let keep: Vec<Relation> = ok
            .iter()
            .filter(|r| !ok.iter().any(|s| s.len() > r.len() && r.iter().all(|p| s.contains(p))))
            .cloned()
            .collect();
        if !keep.is_empty() {
            self.rels.insert((i, j), keep.clone());
        }
        Ok(keep)
    }

    /// Sensible, convex and fully confluent, checked directly on the grid.
    fn valid_step(&self, m: &Moment, n: &Moment, rel: &Relation) -> Result<bool> {
        let (a, b) = (m.height(), n.height());
        let mut g = vec![vec![false; b]; a];
        for &(x, y) in rel {
            if !self.sensible[&(m.0[x], n.0[y])] {
                return Ok(false);
            }
            g[x][y] = true;
        }
        let interval = |cells: &mut dyn Iterator<Item = bool>| {
            let v: Vec<bool> = cells.collect();
            let first = v.iter().position(|&c| c);
            let last = v.iter().rposition(|&c| c);
            match (first, last) {
                (Some(f), Some(l)) => v[f..=l].iter().all(|&c| c),
                _ => true,
            }
        };
        if !(0..a).all(|x| interval(&mut (0..b).map(|y| g[x][y])))
            || !(0..b).all(|y| interval(&mut (0..a).map(|x| g[x][y])))
        {
            return Ok(false);
        }
        for &(x, y) in rel {
            let forth_down = (0..x).all(|x2| (0..=y).any(|y2| g[x2][y2]));
            let forth_up = (x + 1..a).all(|x2| (y..b).any(|y2| g[x2][y2]));
            let back_down = (0..y).all(|y2| (0..=x).any(|x2| g[x2][y2]));
            let back_up = (y + 1..b).all(|y2| (x..a).any(|x2| g[x2][y2]));
            if !(forth_down && forth_up && back_down && back_up) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every eventuality of the anchor `seq[0]` is met inside the
    /// loop `seq[0..=l]`, following `rel[k]` from `seq[k]` to `seq[k + 1]`.
    /// The relations are given in the walking direction.
    fn loop_ok(&self, seq: &[usize], rel: &[Relation], future: bool) -> bool {
        let l = rel.len();
        let anchor = &self.moments[seq[0]];
        for (k, node) in self.sigma.nodes().iter().enumerate() {
            let (hold, goal, want): (Option<usize>, usize, bool) = match (node, future) {
                (&Node::Until(a, b), true) | (&Node::Since(a, b), false) => (Some(a), b, true),
                (&Node::Hence(a), true) | (&Node::Hist(a), false) => (None, a, false),
                _ => continue,
            };
            for j in 0..anchor.height() {
                let pending = anchor.0[j].has(k) == want;
                if !pending {
                    continue;
                }
                // depth-first over paths of length < l
                let mut stack = vec![(0usize, j)];
                let mut met = false;
                while let Some((r, p)) = stack.pop() {
                    let t = self.moments[seq[r]].0[p];
                    if t.has(goal) == want {
                        met = true;
                        break;
                    }
                    if hold.is_some_and(|h| !t.has(h)) || r + 1 >= l {
                        continue;
                    }
                    for &(x, y) in &rel[r] {
                        if x == p {
                            stack.push((r + 1, y));
                        }
                    }
                }
                if !met {
                    return false;
                }
            }
        }
        true
    }

    /// The first half starting at `m0`: up to `max_prefix` steps to an
    /// anchor, then a loop of 1 to `max_loop` steps back to it.
    fn half(&mut self, m0: usize, future: bool, b: &BruteBounds) -> Result<Option<Half>> {
        // short loops first: they need far fewer moments expanded
        for lmax in 1..=b.max_loop {
            let mut frontier: Vec<(Vec<usize>, Vec<Relation>)> = vec![(vec![m0], vec![])];
            for depth in 0..=b.max_prefix {
                for (s, r) in &frontier {
                    if let Some((ls, lr)) = self.anchor_loop(*s.last().unwrap(), future, lmax, b)? {
                        let mut all = s.clone();
                        all.extend(&ls[1..]);
                        let mut rels = r.clone();
                        rels.extend(lr);
                        return Ok(Some((all, rels, s.len() - 1)));
                    }
                }
                if depth == b.max_prefix {
                    break;
                }
                let mut next = vec![];
                for (s, r) in &frontier {
                    let v = *s.last().unwrap();
                    for &t in self.row(v, future, b)?.iter() {
                        for rel in self.step(v, t, future, b)? {
                            let (mut s2, mut r2) = (s.clone(), r.clone());
                            s2.push(t);
                            r2.push(rel);
                            next.push((s2, r2));
                        }
                    }
                }
                frontier = next;
            }
        }
        Ok(None)
    }

    /// The first loop of at most `lmax` steps from `anchor` back to
    /// itself that meets all its eventualities.
    fn anchor_loop(
        &mut self,
        anchor: usize,
        future: bool,
        lmax: usize,
        b: &BruteBounds,
    ) -> Result<Option<(Vec<usize>, Vec<Relation>)>> {
        if let Some(r) = self.loops.get(&(anchor, future, lmax)) {
            return Ok(r.clone());
        }
        // moments within reach of the anchor, and how many steps each needs
        // to get back to it; walks that cannot return in time are skipped
        let mut near = vec![anchor];
        let mut layer = vec![anchor];
        for _ in 1..lmax {
            let mut next = vec![];
            for &v in &layer {
                for &t in self.row(v, future, b)?.iter() {
                    if !near.contains(&t) {
                        near.push(t);
                        next.push(t);
                    }
                }
            }
            layer = next;
        }
        let mut back: HashMap<usize, usize> = HashMap::from([(anchor, 0)]);
        for d in 1..=lmax {
            for &v in &near {
                if !back.contains_key(&v) && self.row(v, future, b)?.iter().any(|t| back.get(t) == Some(&(d - 1))) {
                    back.insert(v, d);
                }
            }
        }
        let mut found = None;
        let mut loops: Vec<(Vec<usize>, Vec<Relation>)> = vec![(vec![anchor], vec![])];
        'len: for len in 0..lmax {
            let mut next = vec![];
            for (ls, lr) in &loops {
                let v = *ls.last().unwrap();
                for &t in self.row(v, future, b)?.iter() {
                    if back.get(&t).is_none_or(|&k| k + len + 1 > lmax) {
                        continue;
                    }
                    for rel in self.step(v, t, future, b)? {
                        let (mut s2, mut r2) = (ls.clone(), lr.clone());
                        s2.push(t);
                        r2.push(rel);
                        if t == anchor {
                            let walk: Vec<Relation> = if future {
                                r2.clone()
                            } else {
                                r2.iter().map(|r| r.iter().map(|&(x, y)| (y, x)).collect()).collect()
                            };
                            if self.loop_ok(&s2, &walk, future) {
                                found = Some((s2, r2));
                                break 'len;
                            }
                        }
                        next.push((s2, r2));
                    }
                }
            }
            loops = next;
        }
        self.loops.insert((anchor, future, lmax), found.clone());
        Ok(found)
    }

    /// The moments one step away from `v`.
    fn row(&mut self, v: usize, future: bool, b: &BruteBounds) -> Result<std::rc::Rc<Vec<usize>>> {
        if let Some(r) = self.rows.get(&(v, future)) {
            return Ok(r.clone());
        }
        if self.buckets.is_empty() {
            for (t, m) in self.moments.iter().enumerate() {
                self.buckets.entry(ends(m)).or_default().push(t);
            }
        }
        // a step relation always links the two bottoms and the two tops, so
        // only moments whose ends pair up sensibly are worth checking
        let (lo, hi) = ends(&self.moments[v]);
        let mut cands = vec![];
        for (&(c0, c1), ts) in &self.buckets {
            let fits = if future {
                self.sensible[&(lo, c0)] && self.sensible[&(hi, c1)]
            } else {
                self.sensible[&(c0, lo)] && self.sensible[&(c1, hi)]
            };
            if fits {
                cands.extend(ts.iter().copied());
            }
        }
        cands.sort_unstable();
        let mut row = vec![];
        for t in cands {
            if !self.step(v, t, future, b)?.is_empty() {
                row.push(t);
            }
        }
        let row = std::rc::Rc::new(row);
        self.rows.insert((v, future), row.clone());
        Ok(row)
    }

    /// Relations for one step away from time zero, oriented forwards.
    fn step(&mut self, from: usize, to: usize, future: bool, b: &BruteBounds) -> Result<Vec<Relation>> {
        if future {
            self.relations(from, to, b.max_candidates)
        } else {
            self.relations(to, from, b.max_candidates)
        }
    }
}

fn ends(m: &Moment) -> (SigmaType, SigmaType) {
    (m.0[0], *m.0.last().unwrap())
}

fn chains(types: &[SigmaType], sigma: &SigmaSet) -> Vec<Moment> {
    let mut out = vec![];
    let mut cur = vec![];
    fn go(types: &[SigmaType], sigma: &SigmaSet, cur: &mut Vec<SigmaType>, out: &mut Vec<Moment>) {
        for &t in types {
            if cur.last().is_some_and(|&p| !(t.is_subset(p) && t != p)) {
                continue;
            }
            cur.push(t);
            if is_moment(cur, sigma).0 {
                out.push(Moment(cur.clone()));
            }
            go(types, sigma, cur, out);
            cur.pop();
        }
    }
    go(types, sigma, &mut cur, &mut out);
    out
}

/// Enumerate witnesses up to the given lengths and return the first one
/// `certify_witness` accepts. `Valid` here only means none exists within
/// the bounds.
pub fn brute_force_falsifiable(f: &Formula, bounds: BruteBounds) -> Result<Verdict> {
    let sigma = SigmaSet::closure(f);
    if sigma.len() > bounds.max_sigma {
        return Err(Error::SigmaTooLarge { size: sigma.len(), cap: bounds.max_sigma });
    }
    let types = enumerate_types(&sigma)?;
    let moments = chains(&types, &sigma);
    let root = sigma.len() - 1;
    let mut o = Oracle {
        moments,
        rels: HashMap::new(),
        loops: HashMap::new(),
        rows: HashMap::new(),
        buckets: HashMap::new(),
        sensible: types
            .iter()
            .flat_map(|&a| types.iter().map(move |&b| (a, b)))
            .map(|(a, b)| ((a, b), is_sensible_pair(a, b, &sigma).0))
            .collect(),
        sigma,
    };
    for m0 in 0..o.moments.len() {
        if o.moments[m0].0.iter().all(|t| t.has(root)) {
            continue;
        }
        let Some((fs, fr, fpre)) = o.half(m0, true, &bounds)? else {
            continue;
        };
        let Some((ps, pr, ppre)) = o.half(m0, false, &bounds)? else {
            continue;
        };
        let mut moments: Vec<Moment> = ps.iter().rev().map(|&i| o.moments[i].clone()).collect();
        let mut rels: Vec<Relation> = pr.into_iter().rev().collect();
        moments.extend(fs[1..].iter().map(|&i| o.moments[i].clone()));
        rels.extend(fr);
        let past = ps.len() - 1 - ppre;
        let w = Witness { formula: f.clone(), moments, past, origin: ps.len() - 1, future: ps.len() - 1 + fpre, rels };
        let rep = certify_witness(&w);
        if !rep.ok() {
            return Err(Error::Witness(format!("brute-force witness rejected: {}", rep.first().unwrap_or_default())));
        }
        return Ok(Verdict::Falsifiable(Box::new(w)));
    }
    Ok(Verdict::Valid)
}
