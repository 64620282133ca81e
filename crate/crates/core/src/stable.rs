//! Loop spaces recorded only by the orders of their homotopy groups.
//!
//! For a π-finite loop space every component is equivalent to every other,
//! and the free loop space splits as `LA ≃ A × ΩA`. Both facts mean that
//! everything computed here depends on the list `|π_0|, |π_1|, ...` alone.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::group::Prime;
use crate::rational::{ExactRational, Natural};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StableError {
    #[error("homotopy group order at degree {degree} is zero")]
    ZeroOrder { degree: usize },
}

/// Orders `o_0, o_1, ..., o_d` of `π_k`, trailing ones trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "OrdersJson", into = "OrdersJson")]
pub struct PostnikovOrders {
    orders: Vec<BigUint>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrdersJson {
    orders: Vec<Natural>,
}

impl TryFrom<OrdersJson> for PostnikovOrders {
    type Error = StableError;
    fn try_from(value: OrdersJson) -> Result<Self, Self::Error> {
        PostnikovOrders::new(value.orders.into_iter().map(|n| n.0).collect())
    }
}

impl From<PostnikovOrders> for OrdersJson {
    fn from(value: PostnikovOrders) -> Self {
        OrdersJson {
            orders: value.orders.into_iter().map(Natural).collect(),
        }
    }
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl PostnikovOrders {
    pub fn new(orders: Vec<BigUint>) -> Result<PostnikovOrders, StableError> {
        if let Some(degree) = orders.iter().position(Zero::is_zero) {
            return Err(StableError::ZeroOrder { degree });
        }
        let mut out = PostnikovOrders { orders };
        out.trim();
        Ok(out)
    }

    pub fn from_u64s(orders: &[u64]) -> Result<PostnikovOrders, StableError> {
        PostnikovOrders::new(orders.iter().map(|&o| BigUint::from(o)).collect())
    }

    fn trim(&mut self) {
        while self.orders.last().is_some_and(One::is_one) {
            self.orders.pop();
        }
    }

    /// The contractible space.
    pub fn point() -> PostnikovOrders {
        PostnikovOrders::default()
    }

    /// `B^d C_m`; for `d = 0` the discrete group `C_m`.
    pub fn em_space(d: usize, m: u64) -> PostnikovOrders {
        assert!(m >= 1, "group order must be positive");
        let mut orders = vec![BigUint::one(); d + 1];
        orders[d] = BigUint::from(m);
        let mut out = PostnikovOrders { orders };
        out.trim();
        out
    }

    pub fn orders(&self) -> &[BigUint] {
        &self.orders
    }

    /// `|π_k|`, one past the top.
    pub fn order(&self, k: usize) -> BigUint {
        self.orders.get(k).cloned().unwrap_or_else(BigUint::one)
    }

    /// `|π_0|`
    pub fn pi0(&self) -> BigUint {
        self.order(0)
    }

    /// Only `π_0` is non-trivial.
    pub fn is_discrete(&self) -> bool {
        self.orders.len() <= 1
    }

    /// The first degree whose order is not a power of `p`.
    pub fn non_p_witness(&self, p: Prime) -> Option<usize> {
        let p = BigUint::from(p.get());
        self.orders.iter().position(|o| {
            let mut o = o.clone();
            while (&o % &p).is_zero() {
                o /= &p;
            }
            !o.is_one()
        })
    }

    /// `LA ≃ A × ΩA`: entry `k` becomes `o_k · o_{k+1}`.
    pub fn stable_loop(&self) -> PostnikovOrders {
        let orders = (0..self.orders.len())
            .map(|k| &self.orders[k] * self.order(k + 1))
            .collect();
        let mut out = PostnikovOrders { orders };
        out.trim();
        out
    }

    pub fn iterated_loop(&self, n: u32) -> PostnikovOrders {
        (0..n).fold(self.clone(), |a, _| a.stable_loop())
    }

    /// `o_0 · o_2 · o_4 ⋯ / (o_1 · o_3 ⋯)`
    pub fn stable_hcard(&self) -> ExactRational {
        let mut numer = BigUint::one();
        let mut denom = BigUint::one();
        for (k, o) in self.orders.iter().enumerate() {
            if k % 2 == 0 {
                numer *= o;
            } else {
                denom *= o;
            }
        }
        ExactRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// Entrywise product, i.e. the orders of `A × B`.
    pub fn product(&self, other: &PostnikovOrders) -> PostnikovOrders {
        let len = self.orders.len().max(other.orders.len());
        let orders = (0..len).map(|k| self.order(k) * other.order(k)).collect();
        let mut out = PostnikovOrders { orders };
        out.trim();
        out
    }

    /// `∏_k |π_k|^binom(n-1, k)` for `n ≥ 1`; homotopy cardinality at `n = 0`.
    pub fn loop_formula_cardinality(&self, n: u32) -> ExactRational {
        if n == 0 {
            return self.stable_hcard();
        }
        let top = u64::from(n) - 1;
        let value: BigUint = self
            .orders
            .iter()
            .enumerate()
            .map(|(k, o)| Pow::pow(o, &binomial(top, k as u64)))
            .product();
        ExactRational::from_natural(value)
    }
}

impl fmt::Display for PostnikovOrders {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, o) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ord(v: &[u64]) -> PostnikovOrders {
        PostnikovOrders::from_u64s(v).unwrap()
    }

    #[test]
    fn em_spaces() {
        assert_eq!(PostnikovOrders::em_space(1, 2), ord(&[1, 2]));
        assert_eq!(PostnikovOrders::em_space(2, 3), ord(&[1, 1, 3]));
        assert_eq!(PostnikovOrders::em_space(0, 5), ord(&[5]));
        assert_eq!(PostnikovOrders::em_space(3, 1), PostnikovOrders::point());
    }

    #[test]
    fn canonical_form_trims() {
        assert_eq!(ord(&[2, 1, 1]).orders().len(), 1);
        assert_eq!(ord(&[1]), PostnikovOrders::point());
        assert_eq!(
            PostnikovOrders::from_u64s(&[1, 0]),
            Err(StableError::ZeroOrder { degree: 1 })
        );
    }

    #[test]
    fn loops() {
        assert_eq!(ord(&[1, 2, 4]).stable_loop(), ord(&[2, 8, 4]));
        assert_eq!(PostnikovOrders::point().stable_loop(), PostnikovOrders::point());
        assert_eq!(ord(&[1, 1, 3]).stable_loop(), ord(&[1, 3, 3]));
    }

    #[test]
    fn hcard() {
        assert_eq!(ord(&[1, 5]).stable_hcard(), ExactRational::new(1, 5));
        assert_eq!(ord(&[1, 1, 7]).stable_hcard(), ExactRational::from(7));
        assert_eq!(ord(&[4, 2]).stable_hcard(), ExactRational::from(2));
    }

    #[test]
    fn products() {
        let a = ord(&[1, 2]);
        assert_eq!(a.product(&PostnikovOrders::point()), a);
        assert_eq!(a.product(&ord(&[1, 1, 3])), ord(&[1, 2, 3]));
        assert_eq!(ord(&[2]).product(&ord(&[2])), ord(&[4]));
    }

    #[test]
    fn binomials() {
        let row: Vec<u64> = (0..=6).map(|k| u64::try_from(binomial(6, k)).unwrap()).collect();
        assert_eq!(row, vec![1, 6, 15, 20, 15, 6, 1]);
        assert!(binomial(3, 4).is_zero());
        assert!(binomial(0, 0).is_one());
    }

    #[test]
    fn eilenberg_maclane_formula() {
        // p^binom(n-1, d)
        assert_eq!(PostnikovOrders::em_space(2, 3).loop_formula_cardinality(4), ExactRational::from(27));
        assert_eq!(PostnikovOrders::em_space(1, 2).loop_formula_cardinality(3), ExactRational::from(4));
        assert_eq!(PostnikovOrders::em_space(3, 2).loop_formula_cardinality(3), ExactRational::from(1));
        // C_p x BC_p
        for n in 1..6 {
            assert_eq!(
                ord(&[5, 5]).loop_formula_cardinality(n),
                ExactRational::from(5u64.pow(n))
            );
        }
        assert_eq!(ord(&[1, 3]).loop_formula_cardinality(0), ExactRational::new(1, 3));
    }

    #[test]
    fn json_shape() {
        let a = ord(&[1, 2, 4]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"orders":[1,2,4]}"#);
        let back: PostnikovOrders = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PostnikovOrders>(r#"{"orders":[0]}"#).is_err());
    }

    fn orders_strategy() -> impl Strategy<Value = PostnikovOrders> {
        prop::collection::vec(1u64..=16, 0..=6).prop_map(|v| ord(&v))
    }

    proptest! {
        #[test]
        fn hcard_of_loop_is_pi0(a in orders_strategy()) {
            prop_assert_eq!(a.stable_loop().stable_hcard(), ExactRational::from_natural(a.pi0()));
        }

        #[test]
        fn loop_commutes_with_products(a in orders_strategy(), b in orders_strategy()) {
            prop_assert_eq!(a.product(&b).stable_loop(), a.stable_loop().product(&b.stable_loop()));
        }

        #[test]
        fn formula_is_hcard_of_iterated_loop(a in orders_strategy(), n in 0u32..=8) {
            prop_assert_eq!(a.loop_formula_cardinality(n), a.iterated_loop(n).stable_hcard());
        }

        #[test]
        fn p_spaces_have_integral_cardinality(
            exps in prop::collection::vec(0u32..=3, 0..=5),
            p in prop::sample::select(vec![2u64, 3, 5]),
            n in 1u32..=6,
        ) {
            let a = PostnikovOrders::new(exps.iter().map(|&e| BigUint::from(p.pow(e))).collect()).unwrap();
            let v = a.loop_formula_cardinality(n);
            prop_assert!(v.is_integer());
            prop_assert!(v > ExactRational::zero());
        }
    }
}
