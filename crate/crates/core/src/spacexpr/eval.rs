use num_bigint::BigUint;
use num_traits::One;

use super::SpaceExpr;
use crate::groupoid::{FiniteGroupoid, GroupoidError};
use crate::invariants::Space;
use crate::limits::Limits;
use crate::stable::PostnikovOrders;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("cannot combine a groupoid with a loop space: {0}")]
    MixedRepresentation(String),
    #[error("cannot convert to a loop space: {0}")]
    CoercionRefused(String),
    #[error("result is not known to be a loop space: {0}")]
    NotALoopSpace(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// An evaluated space, with the routing rules that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceValue {
    pub space: Space,
    pub provenance: Vec<String>,
}

/// Evaluates an expression into one of the two representations.
///
/// `B(G)` and bare names are groupoids; `pt`, `Discrete(m)` and `B^d` nodes
/// are loop spaces. A discrete loop space meeting a groupoid is read as a
/// groupoid with trivial automorphism groups; `stable(...)` converts a
/// connected abelian (or discrete) groupoid into a loop space. Every other
/// mix is refused.
pub fn evaluate(expr: &SpaceExpr, limits: &Limits) -> Result<SpaceValue, EvalError> {
    let mut provenance = Vec::new();
    let space = eval(expr, limits, &mut provenance)?;
    Ok(SpaceValue { space, provenance })
}

fn lift_discrete(orders: &PostnikovOrders) -> Option<FiniteGroupoid> {
    orders.is_discrete().then(|| FiniteGroupoid::discrete(orders.pi0()))
}

fn eval(expr: &SpaceExpr, limits: &Limits, prov: &mut Vec<String>) -> Result<Space, EvalError> {
    Ok(match expr {
        SpaceExpr::Point => Space::Stable(PostnikovOrders::point()),
        SpaceExpr::Discrete(m) => Space::Stable(PostnikovOrders::em_space(0, *m)),
        SpaceExpr::B(g) | SpaceExpr::Named(g) => Space::Groupoid(FiniteGroupoid::classifying((*g.group).clone())),
        SpaceExpr::EM { d, group } => {
            prov.push(format!("B^{d}({group}) as loop space"));
            Space::Stable(PostnikovOrders::em_space(*d as usize, group.group.order() as u64))
        }
        SpaceExpr::Loop(inner) => match eval(inner, limits, prov)? {
            Space::Groupoid(g) => {
                prov.push("L on groupoid: centralizers of class representatives".into());
                Space::Groupoid(g.iterated_loop_groupoid(1, limits)?)
            }
            Space::Stable(s) => {
                prov.push("L on loop space: LA = A x ΩA".into());
                Space::Stable(s.stable_loop())
            }
        },
        SpaceExpr::Product(a, b) => {
            let (a, b) = (eval(a, limits, prov)?, eval(b, limits, prov)?);
            match (a, b) {
                (Space::Groupoid(x), Space::Groupoid(y)) => Space::Groupoid(x.product(&y, limits)?),
                (Space::Stable(x), Space::Stable(y)) => Space::Stable(x.product(&y)),
                (Space::Groupoid(x), Space::Stable(y)) => {
                    let y = lift_discrete(&y).ok_or_else(|| mixed("product", &y))?;
                    prov.push("discrete factor read as groupoid".into());
                    Space::Groupoid(x.product(&y, limits)?)
                }
                (Space::Stable(x), Space::Groupoid(y)) => {
                    let x = lift_discrete(&x).ok_or_else(|| mixed("product", &x))?;
                    prov.push("discrete factor read as groupoid".into());
                    Space::Groupoid(x.product(&y, limits)?)
                }
            }
        }
        SpaceExpr::DisjointUnion(a, b) => {
            let (a, b) = (eval(a, limits, prov)?, eval(b, limits, prov)?);
            match (a, b) {
                (Space::Groupoid(x), Space::Groupoid(y)) => Space::Groupoid(x.disjoint_union(&y)),
                (Space::Stable(x), Space::Stable(y)) => Space::Stable(stable_union(&x, &y)?),
                (Space::Groupoid(x), Space::Stable(y)) => {
                    let y = lift_discrete(&y).ok_or_else(|| mixed("disjoint union", &y))?;
                    prov.push("discrete summand read as groupoid".into());
                    Space::Groupoid(x.disjoint_union(&y))
                }
                (Space::Stable(x), Space::Groupoid(y)) => {
                    let x = lift_discrete(&x).ok_or_else(|| mixed("disjoint union", &x))?;
                    prov.push("discrete summand read as groupoid".into());
                    Space::Groupoid(x.disjoint_union(&y))
                }
            }
        }
        SpaceExpr::Stable(inner) => match eval(inner, limits, prov)? {
            s @ Space::Stable(_) => s,
            Space::Groupoid(g) => {
                let s = coerce_to_stable(&g)?;
                prov.push(format!("stable: groupoid read as loop space {s}"));
                Space::Stable(s)
            }
        },
    })
}

fn mixed(what: &str, orders: &PostnikovOrders) -> EvalError {
    EvalError::MixedRepresentation(format!(
        "{what} of a groupoid with the non-discrete loop space {orders}"
    ))
}

/// Summands whose higher homotopy orders agree; `π_0` orders add.
fn stable_union(x: &PostnikovOrders, y: &PostnikovOrders) -> Result<PostnikovOrders, EvalError> {
    if x.orders().get(1..).unwrap_or(&[]) != y.orders().get(1..).unwrap_or(&[]) {
        return Err(EvalError::NotALoopSpace(format!(
            "disjoint union of {x} and {y} has components with different homotopy orders"
        )));
    }
    let mut orders = x.orders().to_vec();
    if orders.is_empty() {
        orders.push(BigUint::one());
    }
    orders[0] = x.pi0() + y.pi0();
    Ok(PostnikovOrders::new(orders).expect("orders are positive"))
}

fn coerce_to_stable(g: &FiniteGroupoid) -> Result<PostnikovOrders, EvalError> {
    if g.runs().iter().all(|r| r.group.order() == 1) {
        return Ok(PostnikovOrders::new(vec![g.pi0_count()]).expect("positive"));
    }
    match g.runs() {
        [run] if run.multiplicity.is_one() => {
            if run.group.is_abelian() {
                Ok(PostnikovOrders::em_space(1, run.group.order() as u64))
            } else {
                Err(EvalError::CoercionRefused(format!(
                    "B({}) has a nonabelian fundamental group",
                    run.group
                )))
            }
        }
        _ => Err(EvalError::CoercionRefused(format!(
            "groupoid [{g}] is disconnected"
        ))),
    }
}
