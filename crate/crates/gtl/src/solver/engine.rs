//! Lazily built moment graph and the anchor/loop searches over it.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::SearchLimits;
use crate::formula::{Formula, Node, SigmaSet};
use crate::typespace::{enumerate_types_capped, SensibleRules, SigmaType};
use crate::witness::{coimp_ok, imp_ok_at_top, maximal, staircases, Moment, Relation, Witness};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Dir {
    Fwd = 0,
    Bwd = 1,
}

/// Data shared by all workers for one formula.
pub(crate) struct Ctx {
    pub formula: Formula,
    pub root: usize,
    pub types: Vec<SigmaType>,
    rules: SensibleRules,
    words: usize,
    fwd: Vec<OnceLock<Vec<u64>>>,
    bwd: Vec<OnceLock<Vec<u64>>>,
    imps: Vec<(usize, usize, usize)>,
    coimps: Vec<(usize, usize, usize)>,
    /// (formula, wanted subformula, wanted presence) per eventuality kind
    futures: Vec<(usize, usize, bool)>,
    pasts: Vec<(usize, usize, bool)>,
}

fn bit(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

impl Ctx {
    pub fn new(f: &Formula, cap: usize) -> Result<Ctx> {
        let sigma = SigmaSet::closure(f);
        let types = enumerate_types_capped(&sigma, cap)?;
        let (mut imps, mut coimps, mut futures, mut pasts) = (vec![], vec![], vec![], vec![]);
        for (k, n) in sigma.nodes().iter().enumerate() {
            match *n {
                Node::Imp(a, b) => imps.push((k, a, b)),
                Node::CoImp(a, b) => coimps.push((k, a, b)),
                Node::Until(_, b) => futures.push((k, b, true)),
                Node::Hence(a) => futures.push((k, a, false)),
                Node::Since(_, b) => pasts.push((k, b, true)),
                Node::Hist(a) => pasts.push((k, a, false)),
                _ => {}
            }
        }
        let n = types.len();
        Ok(Ctx {
            formula: f.clone(),
            root: sigma.len() - 1,
            rules: SensibleRules::new(&sigma),
            words: n.div_ceil(64),
            fwd: (0..n).map(|_| OnceLock::new()).collect(),
            bwd: (0..n).map(|_| OnceLock::new()).collect(),
            types,
            imps,
            coimps,
            futures,
            pasts,
        })
    }

    /// Types that may follow (Fwd) or precede (Bwd) type `t` in one step.
    fn row(&self, t: u32, d: Dir) -> &[u64] {
        let cell = match d {
            Dir::Fwd => &self.fwd[t as usize],
            Dir::Bwd => &self.bwd[t as usize],
        };
        cell.get_or_init(|| {
            let a = self.types[t as usize];
            let mut row = vec![0u64; self.words];
            for (u, &b) in self.types.iter().enumerate() {
                let ok = match d {
                    Dir::Fwd => self.rules.ok(a, b),
                    Dir::Bwd => self.rules.ok(b, a),
                };
                if ok {
                    row[u / 64] |= 1 << (u % 64);
                }
            }
            row
        })
    }

    fn chain(&self, ids: &[u32]) -> Vec<SigmaType> {
        ids.iter().map(|&i| self.types[i as usize]).collect()
    }

    /// Every moment over Sigma, lexicographic in the type sequence.
    pub fn all_moments(&self) -> Vec<Vec<u32>> {
        let mut out = vec![];
        let mut chain = vec![];
        self.all_from(&mut chain, &mut out);
        out
    }

    fn all_from(&self, chain: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for (u, &t) in self.types.iter().enumerate() {
            if let Some(&p) = chain.last() {
                let p = self.types[p as usize];
                if !(t.is_subset(p) && t != p) {
                    continue;
                }
            }
            chain.push(u as u32);
            let types = self.chain(chain);
            if imp_ok_at_top(&types, &self.imps) {
                if coimp_ok(&types, &self.coimps) {
                    out.push(chain.clone());
                }
                self.all_from(chain, out);
            }
            chain.pop();
        }
    }

    pub fn refutes_root(&self, m: &[u32]) -> bool {
        m.iter().any(|&t| !self.types[t as usize].has(self.root))
    }

    /// Every moment reachable from `m` in one step in direction `d`, each
    /// with its inclusion-maximal step relations oriented forwards in time.
    fn neighbours(&self, m: &[u32], d: Dir) -> Vec<(Vec<u32>, Vec<Relation>)> {
        let rows: Vec<&[u64]> = m.iter().map(|&t| self.row(t, d)).collect();
        let mut any = vec![0u64; self.words];
        for r in &rows {
            for (w, x) in any.iter_mut().zip(r.iter()) {
                *w |= x;
            }
        }
        let mut out = vec![];
        let mut st = Grow { rows: &rows, any: &any, ids: vec![], chain: vec![] };
        self.grow(m, d, &mut st, &[], &mut out);
        out
    }

    fn grow(
        &self,
        m: &[u32],
        d: Dir,
        st: &mut Grow,
        frontier: &[(usize, usize)],
        out: &mut Vec<(Vec<u32>, Vec<Relation>)>,
    ) {
        let a = m.len();
        let first = st.chain.is_empty();
        let prev = st.chain.last().copied();
        for u in 0..self.types.len() {
            if !bit(st.any, u) {
                continue;
            }
            let tu = self.types[u];
            if let Some(p) = prev {
                if !(tu.is_subset(p) && tu != p) {
                    continue;
                }
            }
            let okx: Vec<bool> = st.rows.iter().map(|r| bit(r, u)).collect();
            let mut next: Vec<(usize, usize)> = vec![];
            let extend = |l2: usize, h0: usize, next: &mut Vec<(usize, usize)>| {
                if !(l2..=h0).all(|x| okx[x]) {
                    return;
                }
                for h2 in h0..a {
                    if !okx[h2] {
                        break;
                    }
                    next.push((l2, h2));
                }
            };
            if first {
                extend(0, 0, &mut next);
            } else {
                for &(l, h) in frontier {
                    for l2 in l..=(h + 1).min(a - 1) {
                        extend(l2, h.max(l2), &mut next);
                    }
                }
                next.sort_unstable();
                next.dedup();
            }
            if next.is_empty() {
                continue;
            }
            st.chain.push(tu);
            st.ids.push(u as u32);
            if imp_ok_at_top(&st.chain, &self.imps) {
                if next.iter().any(|&(_, h)| h == a - 1) && coimp_ok(&st.chain, &self.coimps) {
                    let rels = self.relations(m, &st.ids, d);
                    if !rels.is_empty() {
                        out.push((st.ids.clone(), rels));
                    }
                }
                self.grow(m, d, st, &next, out);
            }
            st.chain.pop();
            st.ids.pop();
        }
    }

    fn relations(&self, m: &[u32], n: &[u32], d: Dir) -> Vec<Relation> {
        let mm = Moment(self.chain(m));
        let nm = Moment(self.chain(n));
        match d {
            Dir::Fwd => maximal(staircases(&mm, &nm, &|x, y| bit(self.row(m[x], d), n[y] as usize))),
            Dir::Bwd => maximal(staircases(&nm, &mm, &|y, x| bit(self.row(m[x], d), n[y] as usize))),
        }
    }
}

struct Grow<'r> {
    rows: &'r [&'r [u64]],
    any: &'r [u64],
    ids: Vec<u32>,
    chain: Vec<SigmaType>,
}

/// One edge of the moment graph. `rows[x]` is the set of positions of `to`
/// related to position `x` of the source, whatever the time direction.
pub(crate) struct Edge {
    pub to: u32,
    pub rel: Relation,
    rows: Vec<u64>,
}

/// A walk through the graph: (moment, relation oriented forwards in time).
type Walk = Vec<(u32, Relation)>;

#[derive(Debug)]
pub(crate) struct Exhausted(pub String);

type Res<T> = std::result::Result<T, Exhausted>;

/// Per-worker search state with its own interning table and memo caches.
pub(crate) struct Engine<'c> {
    ctx: &'c Ctx,
    limits: SearchLimits,
    moments: Vec<Vec<u32>>,
    ids: HashMap<Vec<u32>, u32>,
    adj: [Vec<Option<Arc<[Edge]>>>; 2],
    good: [HashMap<u32, Option<Walk>>; 2],
    dead: [HashSet<u32>; 2],
    /// Anchors already found: path from the key to the anchor, and its loop.
    found: [HashMap<u32, (Walk, Walk)>; 2],
    states: usize,
}

impl<'c> Engine<'c> {
    pub fn new(ctx: &'c Ctx, limits: SearchLimits) -> Self {
        Engine {
            ctx,
            limits,
            moments: vec![],
            ids: HashMap::new(),
            adj: [vec![], vec![]],
            good: [HashMap::new(), HashMap::new()],
            dead: [HashSet::new(), HashSet::new()],
            found: [HashMap::new(), HashMap::new()],
            states: 0,
        }
    }

    fn intern(&mut self, m: &[u32]) -> u32 {
        if let Some(&i) = self.ids.get(m) {
            return i;
        }
        let i = self.moments.len() as u32;
        self.moments.push(m.to_vec());
        self.ids.insert(m.to_vec(), i);
        self.adj[0].push(None);
        self.adj[1].push(None);
        i
    }

    fn tick(&mut self) -> Res<()> {
        self.states += 1;
        if self.states > self.limits.max_states {
            return Err(Exhausted(format!("more than {} search states", self.limits.max_states)));
        }
        Ok(())
    }

    fn edges(&mut self, m: u32, d: Dir) -> Res<Arc<[Edge]>> {
        if let Some(e) = &self.adj[d as usize][m as usize] {
            return Ok(e.clone());
        }
        let src = self.moments[m as usize].clone();
        let mut out = vec![];
        for (n, rels) in self.ctx.neighbours(&src, d) {
            let to = self.intern(&n);
            for rel in rels {
                let mut rows = vec![0u64; src.len()];
                for &(x, y) in &rel {
                    match d {
                        Dir::Fwd => rows[x] |= 1 << y,
                        Dir::Bwd => rows[y] |= 1 << x,
                    }
                }
                out.push(Edge { to, rel, rows });
            }
            self.tick()?;
        }
        let arc: Arc<[Edge]> = out.into();
        self.adj[d as usize][m as usize] = Some(arc.clone());
        Ok(arc)
    }

    /// Try one initial moment; `None` when it cannot sit at time zero.
    pub fn attempt(&mut self, m0: &[u32]) -> Res<Option<Witness>> {
        let m0 = self.intern(m0);
        if self.dead[0].contains(&m0) || self.dead[1].contains(&m0) {
            return Ok(None);
        }
        let Some((fpath, floop)) = self.anchor(m0, Dir::Fwd)? else {
            return Ok(None);
        };
        let Some((ppath, ploop)) = self.anchor(m0, Dir::Bwd)? else {
            return Ok(None);
        };
        Ok(Some(self.assemble(m0, ppath, ploop, fpath, floop)))
    }

    fn assemble(&self, m0: u32, ppath: Walk, ploop: Walk, fpath: Walk, floop: Walk) -> Witness {
        let mom = |i: u32| Moment(self.ctx.chain(&self.moments[i as usize]));
        let past_steps: Vec<&(u32, Relation)> = ppath.iter().chain(ploop.iter()).collect();
        let mut moments: Vec<Moment> = past_steps.iter().rev().map(|s| mom(s.0)).collect();
        let mut rels: Vec<Relation> = past_steps.iter().rev().map(|s| s.1.clone()).collect();
        moments.push(mom(m0));
        for (to, rel) in fpath.iter().chain(floop.iter()) {
            moments.push(mom(*to));
            rels.push(rel.clone());
        }
        let past = ploop.len();
        let origin = past + ppath.len();
        Witness { formula: self.ctx.formula.clone(), moments, past, future: origin + fpath.len(), origin, rels }
    }

    /// Find an anchor reachable from `m0` in direction `d` that closes a
    /// loop curing its eventualities. Returns the path to it and the loop.
    fn anchor(&mut self, m0: u32, d: Dir) -> Res<Option<(Walk, Walk)>> {
        let hit = self.search_anchor(m0, d)?;
        if let Some((path, lp)) = &hit {
            let di = d as usize;
            self.found[di].entry(m0).or_insert_with(|| (path.clone(), lp.clone()));
            for i in 0..path.len() {
                self.found[di].entry(path[i].0).or_insert_with(|| (path[i + 1..].to_vec(), lp.clone()));
            }
        }
        Ok(hit)
    }

    fn search_anchor(&mut self, m0: u32, d: Dir) -> Res<Option<(Walk, Walk)>> {
        let di = d as usize;
        if self.dead[di].contains(&m0) {
            return Ok(None);
        }
        let mut parent: HashMap<u32, (u32, usize)> = HashMap::new();
        let mut depth: HashMap<u32, usize> = HashMap::from([(m0, 0)]);
        let mut order = vec![m0];
        let mut queue = VecDeque::from([m0]);
        let mut truncated = false;
        while let Some(v) = queue.pop_front() {
            if depth[&v] >= self.limits.max_segment_length {
                truncated = true;
                continue;
            }
            if let Some((rest, lp)) = self.found[di].get(&v).cloned() {
                let mut path = self.path_to(v, &parent, d)?;
                path.extend(rest);
                return Ok(Some((path, lp)));
            }
            let es = self.edges(v, d)?;
            // cheap first try: a one-step loop needs every eventuality of the
            // anchor met on the spot
            if self.cured_in_place(v, d) {
                if let Some(e) = es.iter().find(|e| e.to == v) {
                    let lp = vec![(v, e.rel.clone())];
                    return Ok(Some((self.path_to(v, &parent, d)?, lp)));
                }
            }
            for (k, e) in es.iter().enumerate() {
                if self.dead[di].contains(&e.to) || depth.contains_key(&e.to) {
                    continue;
                }
                depth.insert(e.to, depth[&v] + 1);
                parent.insert(e.to, (v, k));
                order.push(e.to);
                queue.push_back(e.to);
            }
        }

        let comps = self.components(&order, d)?;
        let mut curable: HashMap<*const HashSet<u32>, Vec<bool>> = HashMap::new();
        for &v in &order {
            let Some(comp) = comps.get(&v) else { continue };
            let comp = comp.clone();
            let avail = curable.entry(Arc::as_ptr(&comp)).or_insert_with(|| self.cures_available(&comp, d));
            if !self.may_cure(v, d, avail) {
                continue;
            }
            if let Some(lp) = self.good_loop(v, d, &comp)? {
                return Ok(Some((self.path_to(v, &parent, d)?, lp)));
            }
        }
        if !truncated && self.limits.max_loop_length == usize::MAX {
            self.dead[di].extend(order);
        }
        Ok(None)
    }

    fn path_to(&mut self, v: u32, parent: &HashMap<u32, (u32, usize)>, d: Dir) -> Res<Walk> {
        let mut path = vec![];
        let mut cur = v;
        while let Some(&(p, k)) = parent.get(&cur) {
            let es = self.edges(p, d)?;
            path.push((cur, es[k].rel.clone()));
            cur = p;
        }
        path.reverse();
        Ok(path)
    }

    /// Per eventuality kind: does any type in the component meet it?
    fn cures_available(&self, comp: &HashSet<u32>, d: Dir) -> Vec<bool> {
        let kinds = self.kinds(d);
        kinds
            .iter()
            .map(|&(_, want, present)| {
                comp.iter()
                    .any(|&m| self.moments[m as usize].iter().any(|&t| self.ctx.types[t as usize].has(want) == present))
            })
            .collect()
    }

    /// Necessary condition for a good loop at `v`: every pending eventuality
    /// has at least a candidate cure somewhere in the component.
    fn may_cure(&self, v: u32, d: Dir, avail: &[bool]) -> bool {
        let kinds = self.kinds(d);
        self.moments[v as usize].iter().all(|&t| {
            let t = self.ctx.types[t as usize];
            kinds.iter().zip(avail).all(|(&(k, _, present), &ok)| ok || t.has(k) != present)
        })
    }

    fn kinds(&self, d: Dir) -> &'c [(usize, usize, bool)] {
        match d {
            Dir::Fwd => &self.ctx.futures,
            Dir::Bwd => &self.ctx.pasts,
        }
    }

    fn cured_in_place(&self, v: u32, d: Dir) -> bool {
        let kinds = match d {
            Dir::Fwd => &self.ctx.futures,
            Dir::Bwd => &self.ctx.pasts,
        };
        self.moments[v as usize].iter().all(|&t| {
            let t = self.ctx.types[t as usize];
            kinds.iter().all(|&(k, want, present)| t.has(k) != present || t.has(want) == present)
        })
    }

    /// Nontrivial strongly connected components of the explored subgraph,
    /// keyed by member.
    fn components(&mut self, nodes: &[u32], d: Dir) -> Res<HashMap<u32, Arc<HashSet<u32>>>> {
        let index: HashMap<u32, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = DiGraph::<u32, ()>::new();
        for &v in nodes {
            g.add_node(v);
        }
        let mut selfloop = HashSet::new();
        for &v in nodes {
            for e in self.edges(v, d)?.iter() {
                if let Some(&j) = index.get(&e.to) {
                    g.add_edge((index[&v] as u32).into(), (j as u32).into(), ());
                    if e.to == v {
                        selfloop.insert(v);
                    }
                }
            }
        }
        let mut out = HashMap::new();
        for scc in tarjan_scc(&g) {
            let members: HashSet<u32> = scc.iter().map(|&n| g[n]).collect();
            if members.len() > 1 || members.iter().any(|v| selfloop.contains(v)) {
                let members = Arc::new(members);
                for &v in members.iter() {
                    out.insert(v, members.clone());
                }
            }
        }
        Ok(out)
    }

    /// Search for a loop from `f` back to itself inside `comp` curing every
    /// eventuality of `f`: a breadth-first search over (moment, reachability
    /// from the anchor positions, cured set).
    fn good_loop(&mut self, f: u32, d: Dir, comp: &HashSet<u32>) -> Res<Option<Walk>> {
        if let Some(r) = self.good[d as usize].get(&f) {
            return Ok(r.clone());
        }
        let anchor = self.moments[f as usize].clone();
        let h = anchor.len();
        let ctx = self.ctx;
        let kinds = match d {
            Dir::Fwd => &ctx.futures,
            Dir::Bwd => &ctx.pasts,
        };
        let mut defects = vec![];
        for (j, &t) in anchor.iter().enumerate() {
            let t = self.ctx.types[t as usize];
            for &(k, want, present) in kinds {
                // U/S: pending when present; G/H: pending when absent
                if t.has(k) == present {
                    defects.push((j, want, present));
                }
            }
        }
        let nd = defects.len();
        let dw = nd.div_ceil(64);
        let cures = |ctx: &Ctx, m: &[u32], reach: &[u64], cured: &mut [u64]| {
            for (i, &(j, want, present)) in defects.iter().enumerate() {
                if cured[i / 64] >> (i % 64) & 1 == 1 {
                    continue;
                }
                let mut z = reach[j];
                while z != 0 {
                    let p = z.trailing_zeros() as usize;
                    z &= z - 1;
                    if ctx.types[m[p] as usize].has(want) == present {
                        cured[i / 64] |= 1 << (i % 64);
                        break;
                    }
                }
            }
        };
        let full = |cured: &[u64]| (0..nd).all(|i| cured[i / 64] >> (i % 64) & 1 == 1);

        // state layout: h reachability rows followed by dw cured words
        let mut start = vec![0u64; h + dw];
        for (j, row) in start.iter_mut().take(h).enumerate() {
            *row = 1 << j;
        }
        {
            let (reach, cured) = start.split_at_mut(h);
            cures(self.ctx, &anchor, reach, cured);
        }
        struct Node {
            moment: u32,
            state: Box<[u64]>,
            parent: usize,
            edge: usize,
            depth: usize,
        }
        let mut nodes = vec![Node { moment: f, state: start.clone().into(), parent: usize::MAX, edge: 0, depth: 0 }];
        let mut seen: HashSet<(u32, Box<[u64]>)> = HashSet::from([(f, start.into())]);
        let mut queue = VecDeque::from([0usize]);
        let mut found = None;
        'bfs: while let Some(ci) = queue.pop_front() {
            if nodes[ci].depth >= self.limits.max_loop_length {
                continue;
            }
            let cm = nodes[ci].moment;
            let es = self.edges(cm, d)?;
            let done = full(&nodes[ci].state[h..]);
            for (k, e) in es.iter().enumerate() {
                if !comp.contains(&e.to) {
                    continue;
                }
                if e.to == f && done {
                    found = Some((ci, k));
                    break 'bfs;
                }
                let target = &self.moments[e.to as usize];
                let mut st = vec![0u64; h + dw];
                for j in 0..h {
                    let mut z = nodes[ci].state[j];
                    let mut acc = 0;
                    while z != 0 {
                        let p = z.trailing_zeros() as usize;
                        z &= z - 1;
                        acc |= e.rows[p];
                    }
                    st[j] = acc;
                }
                st[h..].copy_from_slice(&nodes[ci].state[h..]);
                {
                    let (reach, cured) = st.split_at_mut(h);
                    cures(self.ctx, target, reach, cured);
                }
                let key: Box<[u64]> = st.into();
                if seen.insert((e.to, key.clone())) {
                    self.tick()?;
                    nodes.push(Node { moment: e.to, state: key, parent: ci, edge: k, depth: nodes[ci].depth + 1 });
                    queue.push_back(nodes.len() - 1);
                }
            }
        }
        let result = match found {
            None => None,
            Some((ci, k)) => {
                let mut walk = vec![];
                let es = self.edges(nodes[ci].moment, d)?;
                walk.push((f, es[k].rel.clone()));
                let mut c = ci;
                while nodes[c].parent != usize::MAX {
                    let p = nodes[c].parent;
                    let es = self.edges(nodes[p].moment, d)?;
                    walk.push((nodes[c].moment, es[nodes[c].edge].rel.clone()));
                    c = p;
                }
                walk.reverse();
                Some(walk)
            }
        };
        // a truncated search is not a proof of absence, so only memoize
        // when the limits did not bite
        if result.is_some() || self.limits.max_loop_length == usize::MAX {
            self.good[d as usize].insert(f, result.clone());
        }
        Ok(result)
    }
}
