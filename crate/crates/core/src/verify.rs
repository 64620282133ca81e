//! Self-check suites behind `loopcard verify`.
//!
//! Each suite sweeps one identity over a fixed desk-scale range and reports
//! how many checks ran and the first counterexample, if any.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::catalog::catalog_groups_up_to;
use crate::group::{FiniteGroup, Prime};
use crate::groupoid::FiniteGroupoid;
use crate::invariants::{
    commuting_classes_bruteforce, commuting_classes_recursive, en_cardinality, en_cardinality_pi0_path,
    one_step_reduction_check, Space,
};
use crate::limits::Limits;
use crate::rational::ExactRational;
use crate::stable::{binomial, PostnikovOrders};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// `|B^d C_p|_{E_n} = p^binom(n-1, d)`.
    Em,
    /// `|A|_{E_{n+1}} = |LA|_{E_n}`.
    LoopReduction,
    /// Centralizer recursion against brute-force tuple enumeration.
    Oracle,
    /// `hcard(LA) = |π_0 A|` and the two routes to `|A|_{E_n}`.
    Remark,
    /// Product formula against iterated loops of order lists.
    Stable,
    /// Groupoid and loop-space routes on abelian `p`-groups.
    CrossRepresentation,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Em,
        Suite::LoopReduction,
        Suite::Oracle,
        Suite::Remark,
        Suite::Stable,
        Suite::CrossRepresentation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Em => "em",
            Suite::LoopReduction => "loopred",
            Suite::Oracle => "oracle",
            Suite::Remark => "remark",
            Suite::Stable => "stable",
            Suite::CrossRepresentation => "crossrep",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn run(self) -> SuiteResult {
        let mut r = SuiteResult::new(self);
        match self {
            Suite::Em => em(&mut r),
            Suite::LoopReduction => loop_reduction(&mut r),
            Suite::Oracle => oracle(&mut r),
            Suite::Remark => remark(&mut r),
            Suite::Stable => stable(&mut r),
            Suite::CrossRepresentation => cross_representation(&mut r),
        }
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checks: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl SuiteResult {
    fn new(suite: Suite) -> Self {
        SuiteResult {
            suite,
            checks: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }

    fn check_eq<T: PartialEq + fmt::Display, E: fmt::Display>(
        &mut self,
        got: Result<T, E>,
        want: &T,
        what: impl FnOnce() -> String,
    ) {
        match got {
            Ok(v) => {
                let ok = v == *want;
                self.check(ok, || format!("{}: got {v}, expected {want}", what()));
            }
            Err(e) => self.check(false, || format!("{}: error: {e}", what())),
        }
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<9} {} checks, {} failures",
            self.suite.name(),
            self.checks,
            self.failures
        )?;
        if let Some(c) = &self.first_counterexample {
            write!(f, "\n  first counterexample: {c}")?;
        }
        Ok(())
    }
}

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("suite primes are prime")
}

fn em(r: &mut SuiteResult) {
    let limits = Limits::default();
    for p in [2u64, 3, 5] {
        for d in 0..=4usize {
            for n in 1..=6u32 {
                let want = ExactRational::from_natural(Pow::pow(BigUint::from(p), binomial(u64::from(n - 1), d as u64)));
                let space = Space::Stable(PostnikovOrders::em_space(d, p));
                r.check_eq(en_cardinality(&space, n, prime(p), &limits), &want, || {
                    format!("|B^{d}C_{p}|_E{n} (loop space)")
                });
                if d == 1 {
                    let space = Space::Groupoid(FiniteGroupoid::classifying(FiniteGroup::cyclic(p as usize)));
                    r.check_eq(en_cardinality(&space, n, prime(p), &limits), &want, || {
                        format!("|BC_{p}|_E{n} (groupoid)")
                    });
                }
            }
        }
    }
}

fn p_groups_up_to(max_order: usize) -> Vec<(String, FiniteGroup, u64)> {
    catalog_groups_up_to(max_order)
        .into_iter()
        .filter_map(|(name, g)| {
            [2u64, 3]
                .into_iter()
                .find(|&p| g.is_p_group(prime(p)))
                .map(|p| (name, g, p))
        })
        .collect()
}

fn loop_reduction(r: &mut SuiteResult) {
    let limits = Limits::default();
    for (name, g, p) in p_groups_up_to(81) {
        let space = Space::Groupoid(FiniteGroupoid::classifying(g));
        for n in 0..=5 {
            match one_step_reduction_check(&space, n, prime(p), &limits) {
                Ok(ok) => r.check(ok, || format!("|B{name}|_E{} != |L B{name}|_E{n}", n + 1)),
                Err(e) => r.check(false, || format!("B{name}, n = {n}: {e}")),
            }
        }
    }
    for p in [2u64, 3] {
        let powers: Vec<u64> = (0..).map(|e| p.pow(e)).take_while(|&q| q <= 27).collect();
        for a in &powers {
            for b in &powers {
                for c in &powers {
                    let orders = PostnikovOrders::from_u64s(&[*a, *b, 1, *c]).expect("positive");
                    let space = Space::Stable(orders.clone());
                    for n in 0..=5 {
                        match one_step_reduction_check(&space, n, prime(p), &limits) {
                            Ok(ok) => r.check(ok, || format!("orders {orders}, n = {n}")),
                            Err(e) => r.check(false, || format!("orders {orders}, n = {n}: {e}")),
                        }
                    }
                }
            }
        }
    }
}

fn oracle(r: &mut SuiteResult) {
    let limits = Limits::default();
    for (name, g) in catalog_groups_up_to(60) {
        for n in 0..=3 {
            let fast = commuting_classes_recursive(&g, n, &limits).map(|c| c.count);
            match commuting_classes_bruteforce(&g, n, &limits) {
                Ok(slow) => r.check_eq(fast, &slow.count, || format!("{name}, n = {n}")),
                Err(e) => r.check(false, || format!("{name}, n = {n}: oracle failed: {e}")),
            }
        }
    }
}

fn remark(r: &mut SuiteResult) {
    let limits = Limits::default();
    let groups = catalog_groups_up_to(24);
    for window in groups.windows(3) {
        let a = FiniteGroupoid::from_components(window.iter().map(|(_, g)| g.clone()));
        let want = ExactRational::from_natural(a.pi0_count());
        r.check(a.loop_groupoid().homotopy_cardinality() == want, || {
            format!("hcard(L [{a}]) != {want}")
        });
    }
    for (name, g, p) in p_groups_up_to(64) {
        let space = Space::Groupoid(FiniteGroupoid::classifying(g));
        for n in 1..=5 {
            let via_pi0 = en_cardinality_pi0_path(&space, n, &limits).map(ExactRational::from_natural);
            match en_cardinality(&space, n, prime(p), &limits) {
                Ok(v) => r.check_eq(via_pi0, &v, || format!("B{name}, n = {n}")),
                Err(e) => r.check(false, || format!("B{name}, n = {n}: {e}")),
            }
        }
    }
}

fn stable(r: &mut SuiteResult) {
    for a in 1..=4u64 {
        for b in 1..=4u64 {
            for c in 1..=4u64 {
                for d in 1..=4u64 {
                    let orders = PostnikovOrders::from_u64s(&[a, b, c, d]).expect("positive");
                    for n in 0..=8 {
                        let got = orders.loop_formula_cardinality(n);
                        let want = orders.iterated_loop(n).stable_hcard();
                        r.check(got == want, || format!("orders {orders}, n = {n}: {got} != {want}"));
                    }
                }
            }
        }
    }
}

fn cross_representation(r: &mut SuiteResult) {
    let limits = Limits::default();
    for (name, g, p) in p_groups_up_to(64) {
        if !g.is_abelian() {
            continue;
        }
        let order = g.order() as u64;
        let groupoid = Space::Groupoid(FiniteGroupoid::classifying(g));
        let stable = Space::Stable(PostnikovOrders::em_space(1, order));
        for n in 0..=6 {
            let lhs = en_cardinality(&groupoid, n, prime(p), &limits);
            match en_cardinality(&stable, n, prime(p), &limits) {
                Ok(want) => r.check_eq(lhs, &want, || format!("B{name}, n = {n}")),
                Err(e) => r.check(false, || format!("B{name}, n = {n}: {e}")),
            }
        }
    }
}
