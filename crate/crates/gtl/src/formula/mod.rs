//! Syntax of the Goedel temporal language.

mod chi;
pub(crate) mod closure;
mod parse;
mod print;
mod translate;

pub use chi::{characteristic_formulas, Characteristic};
pub use closure::{Node, SigmaSet};
pub use parse::parse;
pub use print::{print, print_unicode};
pub use translate::{is_classical, negative_translation};

use std::fmt;

/// Abstract syntax. `Top` and `Bot` are primitive; `~`, `<->`, `F`, `P` are
/// expanded by the parser.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    CoImp(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Yesterday(Box<Formula>),
    Hence(Box<Formula>),
    Hist(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Since(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn coimp(a: Formula, b: Formula) -> Formula {
        Formula::CoImp(Box::new(a), Box::new(b))
    }
    pub fn next(a: Formula) -> Formula {
        Formula::Next(Box::new(a))
    }
    pub fn yesterday(a: Formula) -> Formula {
        Formula::Yesterday(Box::new(a))
    }
    pub fn hence(a: Formula) -> Formula {
        Formula::Hence(Box::new(a))
    }
    pub fn hist(a: Formula) -> Formula {
        Formula::Hist(Box::new(a))
    }
    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }
    pub fn since(a: Formula, b: Formula) -> Formula {
        Formula::Since(Box::new(a), Box::new(b))
    }
    /// `~a`, i.e. `a -> false`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }
    /// `a <-> b` as a conjunction of the two implications.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }
    pub fn eventually(a: Formula) -> Formula {
        Formula::until(Formula::Top, a)
    }
    pub fn once(a: Formula) -> Formula {
        Formula::since(Formula::Top, a)
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Var(_) | Top | Bot => vec![],
            Next(a) | Yesterday(a) | Hence(a) | Hist(a) => vec![a],
            And(a, b) | Or(a, b) | Imp(a, b) | CoImp(a, b) | Until(a, b) | Since(a, b) => {
                vec![a, b]
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn contains_coimp(&self) -> bool {
        matches!(self, Formula::CoImp(..)) || self.children().into_iter().any(|c| c.contains_coimp())
    }

    /// Variable names in first-occurrence order.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        if let Formula::Var(v) = self {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    /// Simultaneously replace variables according to `f`.
    pub fn map_vars(&self, f: &impl Fn(&str) -> Formula) -> Formula {
        use Formula::*;
        let m = |a: &Formula| Box::new(a.map_vars(f));
        match self {
            Var(v) => f(v),
            Top => Top,
            Bot => Bot,
            And(a, b) => And(m(a), m(b)),
            Or(a, b) => Or(m(a), m(b)),
            Imp(a, b) => Imp(m(a), m(b)),
            CoImp(a, b) => CoImp(m(a), m(b)),
            Next(a) => Next(m(a)),
            Yesterday(a) => Yesterday(m(a)),
            Hence(a) => Hence(m(a)),
            Hist(a) => Hist(m(a)),
            Until(a, b) => Until(m(a), m(b)),
            Since(a, b) => Since(m(a), m(b)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Formula> {
        parse(s)
    }
}

/// Keywords that cannot be used as variable names.
pub const KEYWORDS: &[&str] = &["true", "false", "X", "Y", "G", "H", "F", "P", "U", "S"];

/// Conjunction of a list; the empty conjunction is `true`.
pub fn big_and(items: impl IntoIterator<Item = Formula>) -> Formula {
    let mut it = items.into_iter();
    match it.next() {
        None => Formula::Top,
        Some(first) => it.fold(first, Formula::and),
    }
}

/// Disjunction of a list; the empty disjunction is `false`.
pub fn big_or(items: impl IntoIterator<Item = Formula>) -> Formula {
    let mut it = items.into_iter();
    match it.next() {
        None => Formula::Bot,
        Some(first) => it.fold(first, Formula::or),
    }
}
