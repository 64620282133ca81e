//! A small language for describing spaces.
//!
//! ```text
//! expr     := prod ('+' prod)*
//! prod     := term ('x' term)*
//! term     := 'pt'
//!           | 'L' '(' expr ')'
//!           | 'B' ('^' nat)? '(' groupref ')'
//!           | 'Discrete' '(' nat ')'
//!           | 'stable' '(' expr ')'
//!           | '(' expr ')'
//!           | name
//! groupref := gatom ('x' gatom)*
//! gatom    := name | '@' '\'' json '\'' | '(' groupref ')'
//! ```
//!
//! `x` is the product and binds tighter than `+`, the disjoint union. A bare
//! group name as a term stands for its classifying space. `B^d(G)` with
//! `d ≥ 2` needs an abelian `G`; `B^0(G)` is the discrete group `G`.

mod eval;
mod parser;

use std::fmt;
use std::sync::Arc;

use crate::group::FiniteGroup;

pub use eval::{evaluate, EvalError, SpaceValue};
pub use parser::{parse, parse_with, ParseError};

/// How a group was written in the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    /// Canonical catalog name.
    Name(String),
    /// Inline JSON description.
    Inline(String),
    Product(Box<GroupSource>, Box<GroupSource>),
}

/// A group reference, resolved at parse time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRef {
    pub source: GroupSource,
    pub group: Arc<FiniteGroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceExpr {
    Point,
    Discrete(u64),
    B(GroupRef),
    /// `B^d` of an abelian group (any group when `d = 0`).
    EM { d: u32, group: GroupRef },
    Loop(Box<SpaceExpr>),
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    DisjointUnion(Box<SpaceExpr>, Box<SpaceExpr>),
    /// A bare catalog name, read as its classifying space.
    Named(GroupRef),
    Stable(Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn loop_of(self) -> SpaceExpr {
        SpaceExpr::Loop(Box::new(self))
    }

    pub fn times(self, rhs: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Product(Box::new(self), Box::new(rhs))
    }

    pub fn plus(self, rhs: SpaceExpr) -> SpaceExpr {
        SpaceExpr::DisjointUnion(Box::new(self), Box::new(rhs))
    }
}

impl fmt::Display for GroupSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSource::Name(n) => write!(f, "{n}"),
            GroupSource::Inline(json) => write!(f, "@'{json}'"),
            GroupSource::Product(a, b) => {
                write!(f, "{a} x ")?;
                match **b {
                    GroupSource::Product(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

impl fmt::Display for GroupRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.source.fmt(f)
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Point => write!(f, "pt"),
            SpaceExpr::Discrete(m) => write!(f, "Discrete({m})"),
            SpaceExpr::B(g) => write!(f, "B({g})"),
            SpaceExpr::EM { d, group } => write!(f, "B^{d}({group})"),
            SpaceExpr::Loop(e) => write!(f, "L({e})"),
            SpaceExpr::Stable(e) => write!(f, "stable({e})"),
            SpaceExpr::Named(g) => write!(f, "{g}"),
            SpaceExpr::Product(a, b) => {
                // left-associative; unions bind looser
                match **a {
                    SpaceExpr::DisjointUnion(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " x ")?;
                match **b {
                    SpaceExpr::DisjointUnion(..) | SpaceExpr::Product(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            SpaceExpr::DisjointUnion(a, b) => {
                write!(f, "{a} + ")?;
                match **b {
                    SpaceExpr::DisjointUnion(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}
