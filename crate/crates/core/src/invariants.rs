//! Lubin–Tate cardinalities, Morava–Euler characteristics and the
//! commuting-tuple counts behind them.
//!
//! For a π-finite `p`-space `A` and `n ≥ 1`:
//!
//! * `|A|_{E_n}` is the homotopy cardinality of the `n`-fold free loop space
//!   `L^n A`, and also `|π_0 L^{n-1} A|`;
//! * `|A|_{E_{n+1}} = |LA|_{E_n}`, and the value is a natural number;
//! * `χ_n(A) = |π_0 L^n A|`, which for `A = BG` is the number of commuting
//!   `n`-tuples in `G` up to simultaneous conjugation.
//!
//! At `n = 0` the cardinality is the homotopy cardinality of `A` itself.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::group::{prime_divisors, FiniteGroup, Prime};
use crate::groupoid::{FiniteGroupoid, GroupoidError};
use crate::limits::Limits;
use crate::rational::ExactRational;
use crate::stable::PostnikovOrders;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("not a {p}-space: {witness}")]
    NotAPSpace { p: u64, witness: String },
    #[error("internal error: cardinality {value} at height {n} is not a natural number")]
    IntegralityViolation { n: u32, value: ExactRational },
    #[error("height must be at least 1 for this quantity")]
    HeightZero,
    #[error("brute-force work cap of {cap} tuple checks exceeded")]
    WorkCapExceeded { cap: u64 },
    #[error("internal error: orbit partition found {orbits} classes but Burnside's lemma gives {burnside}")]
    BurnsideMismatch { orbits: u64, burnside: String },
    #[error("component budget of {budget} exceeded")]
    ComponentBudgetExceeded { budget: usize },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// A π-finite space in one of its two representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// A 1-type.
    Groupoid(FiniteGroupoid),
    /// A loop space, known by its homotopy group orders.
    Stable(PostnikovOrders),
}

/// Which primes divide the homotopy group orders of a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeSupport {
    /// Every homotopy group is trivial: a `p`-space for every `p`.
    Trivial,
    Single(u64),
    Mixed,
}

impl Space {
    /// The representation-appropriate free loop space.
    pub fn loop_space(&self, limits: &Limits) -> Result<Space, InvariantError> {
        Ok(match self {
            Space::Groupoid(g) => Space::Groupoid(g.iterated_loop_groupoid(1, limits)?),
            Space::Stable(s) => Space::Stable(s.stable_loop()),
        })
    }

    pub fn iterated_loop_space(&self, n: u32, limits: &Limits) -> Result<Space, InvariantError> {
        Ok(match self {
            Space::Groupoid(g) => Space::Groupoid(g.iterated_loop_groupoid(n, limits)?),
            Space::Stable(s) => Space::Stable(s.iterated_loop(n)),
        })
    }

    pub fn homotopy_cardinality(&self) -> ExactRational {
        match self {
            Space::Groupoid(g) => g.homotopy_cardinality(),
            Space::Stable(s) => s.stable_hcard(),
        }
    }

    pub fn pi0_count(&self) -> BigUint {
        match self {
            Space::Groupoid(g) => g.pi0_count(),
            Space::Stable(s) => s.pi0(),
        }
    }

    /// Fails with the first homotopy group that is not a `p`-group.
    pub fn check_p_space(&self, p: Prime) -> Result<(), InvariantError> {
        let witness = match self {
            Space::Groupoid(g) => g
                .non_p_witness(p)
                .map(|grp| format!("component group {grp} has order {}", grp.order())),
            Space::Stable(s) => s
                .non_p_witness(p)
                .map(|k| format!("|pi_{k}| = {}", s.order(k))),
        };
        match witness {
            Some(witness) => Err(InvariantError::NotAPSpace { p: p.get(), witness }),
            None => Ok(()),
        }
    }

    pub fn prime_support(&self) -> PrimeSupport {
        let mut primes: Vec<u64> = match self {
            Space::Groupoid(g) => g.group_orders().flat_map(|o| prime_divisors(o as u64)).collect(),
            Space::Stable(s) => s
                .orders()
                .iter()
                .flat_map(|o| match u64::try_from(o) {
                    Ok(o) => prime_divisors(o),
                    // too large to factor here; treat as mixed
                    Err(_) => vec![0, 1],
                })
                .collect(),
        };
        primes.sort_unstable();
        primes.dedup();
        match primes.as_slice() {
            [] => PrimeSupport::Trivial,
            [p] => PrimeSupport::Single(*p),
            _ => PrimeSupport::Mixed,
        }
    }

    /// Whether this is a `p`-space for some prime `p`.
    pub fn is_p_space(&self) -> bool {
        self.prime_support() != PrimeSupport::Mixed
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Groupoid(g) => write!(f, "groupoid [{g}]"),
            Space::Stable(s) => write!(f, "loop space with orders {s}"),
        }
    }
}

/// `|A|_{E_n}` for a `p`-space `A`.
///
/// Groupoids go through the homotopy cardinality of `L^n A`; loop spaces
/// through the product formula `∏_k |π_k|^binom(n-1, k)`. For `n ≥ 1` the
/// result is checked to be a natural number before it is returned.
pub fn en_cardinality(space: &Space, n: u32, p: Prime, limits: &Limits) -> Result<ExactRational, InvariantError> {
    space.check_p_space(p)?;
    let value = match space {
        Space::Groupoid(g) => g.iterated_loop_groupoid(n, limits)?.homotopy_cardinality(),
        Space::Stable(s) => s.loop_formula_cardinality(n),
    };
    if n >= 1 && value.to_natural().is_none() {
        return Err(InvariantError::IntegralityViolation { n, value });
    }
    Ok(value)
}

/// `|A|_{E_n}` computed as `|π_0 L^{n-1} A|`.
pub fn en_cardinality_pi0_path(space: &Space, n: u32, limits: &Limits) -> Result<BigUint, InvariantError> {
    if n == 0 {
        return Err(InvariantError::HeightZero);
    }
    Ok(space.iterated_loop_space(n - 1, limits)?.pi0_count())
}

/// `χ_n(A) = |π_0 L^n A|`.
///
/// Defined for every finite groupoid and loop space; the identity with the
/// Morava K-theory Euler characteristic holds for `p`-spaces.
pub fn morava_euler(space: &Space, n: u32, limits: &Limits) -> Result<BigUint, InvariantError> {
    Ok(space.iterated_loop_space(n, limits)?.pi0_count())
}

/// Whether `|A|_{E_{n+1}} = |LA|_{E_n}` holds, each side computed on its own.
pub fn one_step_reduction_check(space: &Space, n: u32, p: Prime, limits: &Limits) -> Result<bool, InvariantError> {
    let lhs = en_cardinality(space, n + 1, p, limits)?;
    let looped = space.loop_space(limits)?;
    let rhs = en_cardinality(&looped, n, p, limits)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Recursion,
    BruteForce,
}

/// Commuting `n`-tuples of a group up to simultaneous conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutingTupleClassCount {
    pub group_label: String,
    pub n: u32,
    #[serde(with = "crate::rational::natural_json")]
    pub count: BigUint,
    pub method: CountMethod,
}

fn label_of(group: &FiniteGroup) -> String {
    group.label().map(str::to_owned).unwrap_or_else(|| format!("<order {}>", group.order()))
}

/// Brute-force oracle: enumerates every pairwise-commuting `n`-tuple and
/// partitions them into simultaneous-conjugation orbits with a union-find.
///
/// Only the multiplication table is used. Burnside's lemma
/// (`Σ_t |C_G(t)| = |G| · #orbits`) is checked as a second count.
pub fn commuting_classes_bruteforce(
    group: &FiniteGroup,
    n: u32,
    limits: &Limits,
) -> Result<CommutingTupleClassCount, InvariantError> {
    let order = group.order() as u64;
    let work = (order as u128).pow(n);
    if work > u128::from(limits.work_cap) {
        return Err(InvariantError::WorkCapExceeded { cap: limits.work_cap });
    }
    let n_us = n as usize;

    let mut tuples: Vec<Vec<u32>> = Vec::new();
    let mut current: Vec<u32> = Vec::with_capacity(n_us);
    enumerate_commuting(group, n_us, &mut current, &mut tuples);

    let code = |t: &[u32]| t.iter().fold(0u64, |acc, &x| acc * order + u64::from(x));
    let index: HashMap<u64, usize> = tuples.iter().enumerate().map(|(i, t)| (code(t), i)).collect();

    let mut uf = UnionFind::new(tuples.len());
    let gens = group.generating_set();
    let mut image = vec![0u32; n_us];
    for (i, t) in tuples.iter().enumerate() {
        for &s in &gens {
            for (slot, &x) in image.iter_mut().zip(t) {
                *slot = group.conjugate(s, x as usize) as u32;
            }
            let j = index[&code(&image)];
            uf.union(i, j);
        }
    }
    let orbits = uf.count_roots() as u64;

    // Burnside: Σ over tuples of the size of their joint centralizer
    let fixed: u64 = tuples
        .iter()
        .map(|t| {
            (0..group.order())
                .filter(|&g| t.iter().all(|&x| group.commute(g, x as usize)))
                .count() as u64
        })
        .sum();
    if fixed != orbits * order {
        return Err(InvariantError::BurnsideMismatch {
            orbits,
            burnside: ExactRational::new(fixed, order).to_string(),
        });
    }

    Ok(CommutingTupleClassCount {
        group_label: label_of(group),
        n,
        count: BigUint::from(orbits),
        method: CountMethod::BruteForce,
    })
}

fn enumerate_commuting(group: &FiniteGroup, n: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for x in 0..group.order() {
        if current.iter().all(|&y| group.commute(x, y as usize)) {
            current.push(x as u32);
            enumerate_commuting(group, n, current, out);
            current.pop();
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller index wins so the partition is deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn count_roots(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Memoized centralizer recursion `k_n(G) = Σ_{[g]} k_{n-1}(C_G(g))`,
/// `k_0 = 1`, `k_n(A) = |A|^n` for abelian `A`.
///
/// The memo is keyed by the multiplication table of the centralizer, so a
/// subgroup that recurs as the centralizer of many elements is expanded once.
pub fn commuting_classes_recursive(
    group: &FiniteGroup,
    n: u32,
    limits: &Limits,
) -> Result<CommutingTupleClassCount, InvariantError> {
    let mut counter = CommutingClassCounter::new(limits.component_budget);
    let count = counter.count(&Arc::new(group.clone()), n)?;
    Ok(CommutingTupleClassCount {
        group_label: label_of(group),
        n,
        count,
        method: CountMethod::Recursion,
    })
}

struct CommutingClassCounter {
    memo: HashMap<(Arc<FiniteGroup>, u32), BigUint>,
    centralizers: HashMap<Arc<FiniteGroup>, Vec<Arc<FiniteGroup>>>,
    budget: usize,
}

impl CommutingClassCounter {
    fn new(budget: usize) -> Self {
        CommutingClassCounter {
            memo: HashMap::new(),
            centralizers: HashMap::new(),
            budget,
        }
    }

    fn count(&mut self, group: &Arc<FiniteGroup>, n: u32) -> Result<BigUint, InvariantError> {
        if n == 0 {
            return Ok(BigUint::one());
        }
        if group.is_abelian() {
            return Ok(Pow::pow(BigUint::from(group.order()), n));
        }
        let key = (group.clone(), n);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let subs = match self.centralizers.get(group) {
            Some(subs) => subs.clone(),
            None => {
                let classes = group.conjugacy_classes();
                let subs: Vec<Arc<FiniteGroup>> = classes
                    .representatives
                    .iter()
                    .map(|&r| Arc::new(group.centralizer_of(r).group))
                    .collect();
                self.centralizers.insert(group.clone(), subs.clone());
                subs
            }
        };
        let mut total = BigUint::from(0u32);
        for sub in &subs {
            total += self.count(sub, n - 1)?;
        }
        if self.memo.len() + self.centralizers.len() >= self.budget {
            return Err(InvariantError::ComponentBudgetExceeded { budget: self.budget });
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::resolve_name;

    fn g(name: &str) -> FiniteGroup {
        resolve_name(name, &Limits::default()).unwrap()
    }

    fn bg(name: &str) -> Space {
        Space::Groupoid(FiniteGroupoid::classifying(g(name)))
    }

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    fn nat(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn en_cardinality_of_bcp() {
        let l = Limits::default();
        for (name, q) in [("C2", 2u64), ("C3", 3), ("C5", 5)] {
            for n in 1..=5 {
                assert_eq!(
                    en_cardinality(&bg(name), n, p(q), &l).unwrap(),
                    ExactRational::from(q.pow(n - 1))
                );
            }
            assert_eq!(en_cardinality(&bg(name), 0, p(q), &l).unwrap(), ExactRational::new(1, q));
        }
    }

    #[test]
    fn en_cardinality_of_b2c3() {
        let a = Space::Stable(PostnikovOrders::em_space(2, 3));
        assert_eq!(en_cardinality(&a, 3, p(3), &Limits::default()).unwrap(), ExactRational::from(3));
    }

    #[test]
    fn connected_p_groups_at_height_one() {
        for name in ["C4", "D8", "Q8", "C9", "D16"] {
            let q = if name == "C9" { 3 } else { 2 };
            assert_eq!(
                en_cardinality(&bg(name), 1, p(q), &Limits::default()).unwrap(),
                ExactRational::one()
            );
        }
    }

    #[test]
    fn not_a_p_space() {
        let err = en_cardinality(&bg("S3"), 2, p(2), &Limits::default()).unwrap_err();
        assert!(matches!(err, InvariantError::NotAPSpace { p: 2, .. }));
        let a = Space::Stable(PostnikovOrders::from_u64s(&[1, 2, 3]).unwrap());
        let err = en_cardinality(&a, 2, p(2), &Limits::default()).unwrap_err();
        assert_eq!(
            err,
            InvariantError::NotAPSpace {
                p: 2,
                witness: "|pi_2| = 3".into()
            }
        );
    }

    #[test]
    fn pi0_path() {
        let l = Limits::default();
        assert_eq!(en_cardinality_pi0_path(&bg("C2"), 2, &l).unwrap(), nat(2));
        assert_eq!(en_cardinality_pi0_path(&bg("S3"), 2, &l).unwrap(), nat(3));
        let pt = Space::Groupoid(FiniteGroupoid::point());
        for n in 1..5 {
            assert_eq!(en_cardinality_pi0_path(&pt, n, &l).unwrap(), nat(1));
        }
        assert_eq!(en_cardinality_pi0_path(&pt, 0, &l), Err(InvariantError::HeightZero));
    }

    #[test]
    fn morava_euler_values() {
        let l = Limits::default();
        assert_eq!(morava_euler(&bg("S3"), 1, &l).unwrap(), nat(3));
        assert_eq!(morava_euler(&bg("S3"), 2, &l).unwrap(), nat(8));
        for n in 0..5 {
            assert_eq!(morava_euler(&bg("C5"), n, &l).unwrap(), nat(5u64.pow(n)));
            let stable = Space::Stable(PostnikovOrders::em_space(1, 5));
            assert_eq!(morava_euler(&stable, n, &l).unwrap(), nat(5u64.pow(n)));
        }
    }

    #[test]
    fn reduction_examples() {
        let l = Limits::default();
        assert!(one_step_reduction_check(&bg("C2"), 1, p(2), &l).unwrap());
        let b2c3 = Space::Stable(PostnikovOrders::em_space(2, 3));
        assert!(one_step_reduction_check(&b2c3, 2, p(3), &l).unwrap());
        let pt = Space::Groupoid(FiniteGroupoid::point());
        for n in 0..4 {
            assert!(one_step_reduction_check(&pt, n, p(5), &l).unwrap());
        }
    }

    #[test]
    fn commuting_counts() {
        let l = Limits::default();
        for name in ["C1", "S3", "Q8", "A4"] {
            let grp = g(name);
            assert_eq!(commuting_classes_bruteforce(&grp, 0, &l).unwrap().count, nat(1));
            assert_eq!(commuting_classes_recursive(&grp, 0, &l).unwrap().count, nat(1));
        }
        assert_eq!(commuting_classes_bruteforce(&g("S3"), 1, &l).unwrap().count, nat(3));
        assert_eq!(commuting_classes_recursive(&g("S3"), 2, &l).unwrap().count, nat(8));
        for n in 0..5 {
            assert_eq!(commuting_classes_recursive(&g("C7"), n, &l).unwrap().count, nat(7u64.pow(n)));
            assert_eq!(commuting_classes_recursive(&g("C1"), n, &l).unwrap().count, nat(1));
        }
    }

    #[test]
    fn q8_pairs_regression() {
        // frozen from the brute-force oracle
        let c = commuting_classes_bruteforce(&g("Q8"), 2, &Limits::default()).unwrap();
        assert_eq!(c.count, nat(Q8_COMMUTING_PAIR_CLASSES));
        assert_eq!(c.method, CountMethod::BruteForce);
        assert_eq!(c.group_label, "Q8");
    }

    const Q8_COMMUTING_PAIR_CLASSES: u64 = 22;

    #[test]
    fn work_cap() {
        let tight = Limits {
            work_cap: 100,
            ..Limits::default()
        };
        assert_eq!(
            commuting_classes_bruteforce(&g("S3"), 3, &tight),
            Err(InvariantError::WorkCapExceeded { cap: 100 })
        );
    }

    #[test]
    fn prime_support() {
        assert_eq!(bg("C8").prime_support(), PrimeSupport::Single(2));
        assert_eq!(bg("S3").prime_support(), PrimeSupport::Mixed);
        assert_eq!(bg("C1").prime_support(), PrimeSupport::Trivial);
        assert!(Space::Stable(PostnikovOrders::from_u64s(&[9, 3]).unwrap()).is_p_space());
    }
}
