use std::collections::HashMap;

use super::Formula;
use crate::{Error, Result};

/// One element of a [`SigmaSet`] with its children replaced by indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Var(String),
    Top,
    Bot,
    And(usize, usize),
    Or(usize, usize),
    Imp(usize, usize),
    CoImp(usize, usize),
    Next(usize),
    Yesterday(usize),
    Hence(usize),
    Hist(usize),
    Until(usize, usize),
    Since(usize, usize),
}

impl Node {
    /// True for nodes whose membership in a type is not fixed by the
    /// membership of their children (variables and temporal formulas).
    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Node::Var(_)
                | Node::Next(_)
                | Node::Yesterday(_)
                | Node::Hence(_)
                | Node::Hist(_)
                | Node::Until(..)
                | Node::Since(..)
        )
    }
}

/// A subformula-closed set with a fixed indexing in which every formula comes
/// after its subformulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSet {
    formulas: Vec<Formula>,
    nodes: Vec<Node>,
    index: HashMap<Formula, usize>,
}

impl SigmaSet {
    /// Subformula closure of `f`, indexed in deduplicated post-order.
    pub fn closure(f: &Formula) -> SigmaSet {
        Self::closure_of(std::slice::from_ref(f))
    }

    /// Closure of several formulas, visited in order.
    pub fn closure_of(fs: &[Formula]) -> SigmaSet {
        let mut s = SigmaSet { formulas: Vec::new(), nodes: Vec::new(), index: HashMap::new() };
        for f in fs {
            s.insert(f);
        }
        s
    }

    fn insert(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.index.get(f) {
            return i;
        }
        use Formula as F;
        let node = match f {
            F::Var(v) => Node::Var(v.clone()),
            F::Top => Node::Top,
            F::Bot => Node::Bot,
            F::And(a, b) => Node::And(self.insert(a), self.insert(b)),
            F::Or(a, b) => Node::Or(self.insert(a), self.insert(b)),
            F::Imp(a, b) => Node::Imp(self.insert(a), self.insert(b)),
            F::CoImp(a, b) => Node::CoImp(self.insert(a), self.insert(b)),
            F::Next(a) => Node::Next(self.insert(a)),
            F::Yesterday(a) => Node::Yesterday(self.insert(a)),
            F::Hence(a) => Node::Hence(self.insert(a)),
            F::Hist(a) => Node::Hist(self.insert(a)),
            F::Until(a, b) => Node::Until(self.insert(a), self.insert(b)),
            F::Since(a, b) => Node::Since(self.insert(a), self.insert(b)),
        };
        let i = self.formulas.len();
        self.formulas.push(f.clone());
        self.nodes.push(node);
        self.index.insert(f.clone(), i);
        i
    }

    /// Build from an explicit list, which must be closed under subformulas
    /// and free of duplicates. The given order becomes the indexing.
    pub fn from_list(fs: Vec<Formula>) -> Result<SigmaSet> {
        let mut index = HashMap::new();
        for (i, f) in fs.iter().enumerate() {
            if index.insert(f.clone(), i).is_some() {
                return Err(Error::System(format!("duplicate sigma entry {f}")));
            }
        }
        let look = |g: &Formula| {
            index.get(g).copied().ok_or_else(|| Error::System(format!("sigma is not closed: {g} is missing")))
        };
        let mut nodes = Vec::with_capacity(fs.len());
        for f in &fs {
            use Formula as F;
            nodes.push(match f {
                F::Var(v) => Node::Var(v.clone()),
                F::Top => Node::Top,
                F::Bot => Node::Bot,
                F::And(a, b) => Node::And(look(a)?, look(b)?),
                F::Or(a, b) => Node::Or(look(a)?, look(b)?),
                F::Imp(a, b) => Node::Imp(look(a)?, look(b)?),
                F::CoImp(a, b) => Node::CoImp(look(a)?, look(b)?),
                F::Next(a) => Node::Next(look(a)?),
                F::Yesterday(a) => Node::Yesterday(look(a)?),
                F::Hence(a) => Node::Hence(look(a)?),
                F::Hist(a) => Node::Hist(look(a)?),
                F::Until(a, b) => Node::Until(look(a)?, look(b)?),
                F::Since(a, b) => Node::Since(look(a)?, look(b)?),
            });
        }
        Ok(SigmaSet { formulas: fs, nodes, index })
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.formulas[i]
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn index_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    /// True when every child index is smaller than its parent's.
    pub fn is_topologically_ordered(&self) -> bool {
        self.nodes.iter().enumerate().all(|(i, n)| children(n).iter().all(|&c| c < i))
    }
}

/// Child indices of a node.
pub fn children(n: &Node) -> Vec<usize> {
    match *n {
        Node::Var(_) | Node::Top | Node::Bot => vec![],
        Node::Next(a) | Node::Yesterday(a) | Node::Hence(a) | Node::Hist(a) => vec![a],
        Node::And(a, b)
        | Node::Or(a, b)
        | Node::Imp(a, b)
        | Node::CoImp(a, b)
        | Node::Until(a, b)
        | Node::Since(a, b) => vec![a, b],
    }
}
