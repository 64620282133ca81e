//! Skeletal finite groupoids: one automorphism group per isomorphism class
//! of objects. These model π-finite 1-types exactly.
//!
//! The component list is stored run-length encoded: components with
//! identical multiplication tables are kept as a single [`ComponentRun`]
//! (consecutive ones on construction, all of them in loop groupoids). Iterated free loop spaces of abelian groups produce
//! `|G|^n` identical components, so without this the component count is the
//! bottleneck long before the group arithmetic is.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{CatalogError, GroupDescription};
use crate::group::{FiniteGroup, GroupError, Prime};
use crate::limits::Limits;
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupoidError {
    #[error("component budget of {budget} exceeded")]
    ComponentBudgetExceeded { budget: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// `multiplicity` consecutive components, all with automorphism group `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRun {
    pub group: Arc<FiniteGroup>,
    pub multiplicity: BigUint,
}

/// A finite groupoid up to equivalence: an ordered list of component groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteGroupoid {
    runs: Vec<ComponentRun>,
}

/// Components of `L(BG)` as (centralizer, count) pairs.
type LoopRuns = Arc<[(Arc<FiniteGroup>, u64)]>;

/// Memo of the loop functor on single components, keyed by table.
///
/// Also interns centralizer tables so that equal groups share storage.
#[derive(Default)]
pub struct LoopCache {
    loops: HashMap<Arc<FiniteGroup>, LoopRuns>,
    interned: HashSet<Arc<FiniteGroup>>,
}

impl LoopCache {
    pub fn new() -> LoopCache {
        LoopCache::default()
    }

    fn intern(&mut self, group: FiniteGroup) -> Arc<FiniteGroup> {
        if let Some(g) = self.interned.get(&group) {
            return g.clone();
        }
        let g = Arc::new(group);
        self.interned.insert(g.clone());
        g
    }

    /// Components of `L(BG)` as runs: one centralizer per conjugacy class,
    /// in class-representative order.
    fn loop_of(&mut self, group: &Arc<FiniteGroup>) -> LoopRuns {
        if let Some(hit) = self.loops.get(group) {
            return hit.clone();
        }
        let result: LoopRuns = if group.is_abelian() {
            // every centralizer is the whole group with the same table
            Arc::from(vec![(group.clone(), group.order() as u64)])
        } else {
            let classes = group.conjugacy_classes();
            let mut runs: Vec<(Arc<FiniteGroup>, u64)> = Vec::new();
            for &rep in &classes.representatives {
                let c = group.centralizer_of(rep).group;
                let c = if c == **group { group.clone() } else { self.intern(c) };
                match runs.last_mut() {
                    Some((last, k)) if *last == c => *k += 1,
                    _ => runs.push((c, 1)),
                }
            }
            Arc::from(runs)
        };
        self.loops.insert(group.clone(), result.clone());
        result
    }
}

impl FiniteGroupoid {
    /// The empty groupoid.
    pub fn empty() -> FiniteGroupoid {
        FiniteGroupoid::default()
    }

    /// A single object with trivial automorphisms.
    pub fn point() -> FiniteGroupoid {
        FiniteGroupoid::classifying(FiniteGroup::trivial())
    }

    /// `m` objects with trivial automorphisms.
    pub fn discrete(m: impl Into<BigUint>) -> FiniteGroupoid {
        let mut g = FiniteGroupoid::empty();
        g.push(Arc::new(FiniteGroup::trivial()), m.into());
        g
    }

    /// `BG`: one object with automorphism group `G`.
    pub fn classifying(group: FiniteGroup) -> FiniteGroupoid {
        FiniteGroupoid::from_components([group])
    }

    pub fn from_components(groups: impl IntoIterator<Item = FiniteGroup>) -> FiniteGroupoid {
        let mut g = FiniteGroupoid::empty();
        for group in groups {
            g.push(Arc::new(group), BigUint::one());
        }
        g
    }

    pub fn from_runs(runs: impl IntoIterator<Item = ComponentRun>) -> FiniteGroupoid {
        let mut g = FiniteGroupoid::empty();
        for run in runs {
            g.push(run.group, run.multiplicity);
        }
        g
    }

    fn push(&mut self, group: Arc<FiniteGroup>, multiplicity: BigUint) {
        if multiplicity.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some(last) if Arc::ptr_eq(&last.group, &group) || last.group == group => {
                last.multiplicity += multiplicity
            }
            _ => self.runs.push(ComponentRun {
                group,
                multiplicity,
            }),
        }
    }

    pub fn runs(&self) -> &[ComponentRun] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Iterates the component groups one by one (expanding runs).
    pub fn components(&self) -> impl Iterator<Item = &FiniteGroup> + '_ {
        self.runs.iter().flat_map(|run| {
            let k = u64::try_from(&run.multiplicity).unwrap_or(u64::MAX);
            std::iter::repeat_n(&*run.group, k as usize)
        })
    }

    /// `|π_0|`
    pub fn pi0_count(&self) -> BigUint {
        self.runs.iter().map(|r| &r.multiplicity).sum()
    }

    /// `Σ 1/|Aut(x)|` over components.
    pub fn homotopy_cardinality(&self) -> ExactRational {
        self.runs
            .iter()
            .map(|r| ExactRational::new(r.multiplicity.clone(), r.group.order()))
            .sum()
    }

    /// Number of components per automorphism group order.
    pub fn order_multiset(&self) -> BTreeMap<usize, BigUint> {
        let mut out: BTreeMap<usize, BigUint> = BTreeMap::new();
        for r in &self.runs {
            *out.entry(r.group.order()).or_default() += &r.multiplicity;
        }
        out
    }

    /// The first component whose group is not a `p`-group.
    pub fn non_p_witness(&self, p: Prime) -> Option<&FiniteGroup> {
        self.runs.iter().map(|r| &*r.group).find(|g| !g.is_p_group(p))
    }

    /// Orders of all component groups.
    pub fn group_orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.runs.iter().map(|r| r.group.order())
    }

    /// The free loop groupoid `LA`.
    pub fn loop_groupoid(&self) -> FiniteGroupoid {
        self.loop_groupoid_with(&mut LoopCache::new(), &Limits {
            component_budget: usize::MAX,
            ..Limits::default()
        })
        .expect("unbounded budget")
    }

    /// `LA`, with a shared memo: for each component `H` and each conjugacy
    /// class `[h]` of `H` (by representative) one component `C_H(h)`.
    pub fn loop_groupoid_with(&self, cache: &mut LoopCache, limits: &Limits) -> Result<FiniteGroupoid, GroupoidError> {
        let mut out = FiniteGroupoid::empty();
        let mut slot: HashMap<Arc<FiniteGroup>, usize> = HashMap::new();
        for run in &self.runs {
            for (c, k) in cache.loop_of(&run.group).iter() {
                let m = &run.multiplicity * *k;
                if let Some(&i) = slot.get(c) {
                    out.runs[i].multiplicity += m;
                    continue;
                }
                slot.insert(c.clone(), out.runs.len());
                out.runs.push(ComponentRun {
                    group: c.clone(),
                    multiplicity: m,
                });
                if out.runs.len() > limits.component_budget {
                    return Err(GroupoidError::ComponentBudgetExceeded {
                        budget: limits.component_budget,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `L^n A`.
    pub fn iterated_loop_groupoid(&self, n: u32, limits: &Limits) -> Result<FiniteGroupoid, GroupoidError> {
        let mut cache = LoopCache::new();
        let mut current = self.clone();
        for _ in 0..n {
            current = current.loop_groupoid_with(&mut cache, limits)?;
        }
        Ok(current)
    }

    /// `A × B`: all pairs of components, lexicographically.
    pub fn product(&self, other: &FiniteGroupoid, limits: &Limits) -> Result<FiniteGroupoid, GroupoidError> {
        let mut out = FiniteGroupoid::empty();
        for a in &self.runs {
            for b in &other.runs {
                let group = a.group.direct_product(&b.group, limits)?;
                out.push(Arc::new(group), &a.multiplicity * &b.multiplicity);
                if out.runs.len() > limits.component_budget {
                    return Err(GroupoidError::ComponentBudgetExceeded {
                        budget: limits.component_budget,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `A ⊔ B`: concatenated component lists.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> FiniteGroupoid {
        let mut out = self.clone();
        for r in &other.runs {
            out.push(r.group.clone(), r.multiplicity.clone());
        }
        out
    }

    /// The JSON form, listing components one by one.
    pub fn to_description(&self) -> GroupoidDescription {
        GroupoidDescription {
            components: self.components().map(GroupDescription::of).collect(),
        }
    }

    pub fn from_description(desc: &GroupoidDescription, limits: &Limits) -> Result<FiniteGroupoid, GroupoidError> {
        let groups = desc
            .components
            .iter()
            .map(|d| d.resolve(limits))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroupoid::from_components(groups))
    }
}

impl fmt::Display for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "empty");
        }
        for (i, run) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if !run.multiplicity.is_one() {
                write!(f, "{} x ", run.multiplicity)?;
            }
            match run.group.label() {
                Some(l) => write!(f, "B({l})")?,
                None => write!(f, "B(|G|={})", run.group.order())?,
            }
        }
        Ok(())
    }
}

/// `{"components": [<group description or catalog name>, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDescription {
    pub components: Vec<GroupDescription>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::resolve_name;

    fn g(name: &str) -> FiniteGroup {
        resolve_name(name, &Limits::default()).unwrap()
    }

    fn orders(a: &FiniteGroupoid) -> Vec<usize> {
        a.components().map(FiniteGroup::order).collect()
    }

    #[test]
    fn classifying_groupoids() {
        let pt = FiniteGroupoid::classifying(FiniteGroup::trivial());
        assert_eq!(pt, FiniteGroupoid::point());
        assert_eq!(orders(&FiniteGroupoid::classifying(g("C5"))), vec![5]);
        assert_eq!(orders(&FiniteGroupoid::classifying(g("S3"))), vec![6]);
    }

    #[test]
    fn loops() {
        assert_eq!(FiniteGroupoid::point().loop_groupoid(), FiniteGroupoid::point());
        let lc3 = FiniteGroupoid::classifying(g("C3")).loop_groupoid();
        assert_eq!(orders(&lc3), vec![3, 3, 3]);
        assert!(lc3.components().all(|c| *c == g("C3")));
        let ls3 = FiniteGroupoid::classifying(g("S3")).loop_groupoid();
        let mut o = orders(&ls3);
        assert_eq!(o[0], 6);
        o.sort();
        assert_eq!(o, vec![2, 3, 6]);
    }

    #[test]
    fn iterated_loops() {
        let l = Limits::default();
        let a = FiniteGroupoid::classifying(g("S3"));
        assert_eq!(a.iterated_loop_groupoid(0, &l).unwrap(), a);
        let c2 = FiniteGroupoid::classifying(g("C2")).iterated_loop_groupoid(2, &l).unwrap();
        assert_eq!(orders(&c2), vec![2, 2, 2, 2]);
        let s3 = a.iterated_loop_groupoid(2, &l).unwrap();
        assert_eq!(s3.pi0_count(), BigUint::from(8u32));
        // L(B S3) = {S3, C2, C3}; then 3 + 2 + 3 components
        let mut expect = vec![6, 2, 3, 2, 2, 3, 3, 3];
        let mut got = orders(&s3);
        expect.sort();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Limits {
            component_budget: 2,
            ..Limits::default()
        };
        let a = FiniteGroupoid::classifying(g("S3"));
        assert_eq!(
            a.iterated_loop_groupoid(2, &tight),
            Err(GroupoidError::ComponentBudgetExceeded { budget: 2 })
        );
    }

    #[test]
    fn pi0_and_hcard() {
        assert_eq!(FiniteGroupoid::point().pi0_count(), BigUint::one());
        assert_eq!(FiniteGroupoid::empty().pi0_count(), BigUint::zero());
        let ls3 = FiniteGroupoid::classifying(g("S3")).loop_groupoid();
        assert_eq!(ls3.pi0_count(), BigUint::from(3u32));
        assert_eq!(ls3.homotopy_cardinality(), ExactRational::one());
        assert_eq!(
            FiniteGroupoid::classifying(g("S3")).homotopy_cardinality(),
            ExactRational::new(1, 6)
        );
        let two = FiniteGroupoid::from_components([g("C2"), g("C3")]);
        assert_eq!(two.homotopy_cardinality(), ExactRational::new(5, 6));
        assert_eq!(FiniteGroupoid::empty().homotopy_cardinality(), ExactRational::zero());
    }

    #[test]
    fn products_and_unions() {
        let l = Limits::default();
        let a = FiniteGroupoid::from_components([g("C2"), g("C3")]);
        assert_eq!(orders(&a.product(&FiniteGroupoid::point(), &l).unwrap()), vec![2, 3]);
        let b = FiniteGroupoid::classifying(g("C2"))
            .product(&FiniteGroupoid::classifying(g("C3")), &l)
            .unwrap();
        assert_eq!(orders(&b), vec![6]);
        let c = a.product(&FiniteGroupoid::classifying(g("C2")), &l).unwrap();
        assert_eq!(orders(&c), vec![4, 6]);
        let pp = FiniteGroupoid::point().disjoint_union(&FiniteGroupoid::point());
        assert_eq!(pp.pi0_count(), BigUint::from(2u32));
        assert_eq!(a.disjoint_union(&FiniteGroupoid::empty()), a);
        let u = FiniteGroupoid::classifying(g("C2")).disjoint_union(&FiniteGroupoid::classifying(g("S3")));
        assert_eq!(orders(&u), vec![2, 6]);
    }

    #[test]
    fn json_round_trip() {
        let desc: GroupoidDescription =
            serde_json::from_str(r#"{"components": ["S3", {"table": [[0,1],[1,0]]}]}"#).unwrap();
        let a = FiniteGroupoid::from_description(&desc, &Limits::default()).unwrap();
        assert_eq!(orders(&a), vec![6, 2]);
        let back = FiniteGroupoid::from_description(&a.to_description(), &Limits::default()).unwrap();
        assert_eq!(back.order_multiset(), a.order_multiset());
    }

    #[test]
    fn runs_merge_equal_neighbours() {
        let lc4 = FiniteGroupoid::classifying(g("C4")).iterated_loop_groupoid(5, &Limits::default()).unwrap();
        assert_eq!(lc4.runs().len(), 1);
        assert_eq!(lc4.pi0_count(), BigUint::from(1024u32));
    }
}
