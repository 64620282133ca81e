//! Finite groups stored as dense multiplication tables.
//!
//! Element `0` is always the identity. Every constructor validates the group
//! axioms (or builds the table from a structure that satisfies them), so a
//! [`FiniteGroup`] in hand is always a group.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::limits::Limits;

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_BOUND: usize = 256;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("malformed multiplication table at row {row}: {detail}")]
    MalformedTable { row: usize, detail: String },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {generator} is not a permutation of 0..{degree}: {detail}")]
    NotAPermutation {
        generator: usize,
        degree: usize,
        detail: String,
    },
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
}

/// A prime number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime, GroupError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(GroupError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Whether `n` is `p^k` for some `k >= 0`.
    pub fn divides_as_power(self, mut n: u64) -> bool {
        if n == 0 {
            return false;
        }
        while n.is_multiple_of(self.0) {
            n /= self.0;
        }
        n == 1
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A finite group with an explicit multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    label: Option<String>,
    fingerprint: u64,
}

impl PartialEq for FiniteGroup {
    /// Equal as labeled tables; the display label is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint && self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl Hash for FiniteGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint.hash(state);
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("label", &self.label)
            .field("fingerprint", &format_args!("{:016x}", self.fingerprint))
            .finish()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(label) => write!(f, "{label}"),
            None => write!(f, "<group of order {}>", self.order),
        }
    }
}

/// An element of a particular group.
#[derive(Clone, Copy)]
pub struct GroupElement<'g> {
    group: &'g FiniteGroup,
    index: usize,
}

impl<'g> GroupElement<'g> {
    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn inverse(&self) -> GroupElement<'g> {
        GroupElement {
            group: self.group,
            index: self.group.inv(self.index),
        }
    }

    pub fn order(&self) -> usize {
        self.group.element_order(self.index)
    }
}

impl PartialEq for GroupElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.index == other.index
    }
}

impl Eq for GroupElement<'_> {}

impl fmt::Debug for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({} in {})", self.index, self.group)
    }
}

impl<'g> std::ops::Mul for GroupElement<'g> {
    type Output = GroupElement<'g>;

    fn mul(self, rhs: Self) -> Self {
        assert!(std::ptr::eq(self.group, rhs.group), "elements of different groups");
        GroupElement {
            group: self.group,
            index: self.group.mul(self.index, rhs.index),
        }
    }
}

/// Partition of a group into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassTable {
    /// Each class sorted ascending; classes sorted by their minimal element.
    pub classes: Vec<Vec<usize>>,
    /// The minimal element index of each class.
    pub representatives: Vec<usize>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A centralizer as a standalone group together with its embedding.
#[derive(Clone, Debug)]
pub struct Centralizer {
    pub group: FiniteGroup,
    /// `embedding[i]` is the index in the ambient group of element `i`.
    pub embedding: Vec<usize>,
}

fn fingerprint(order: usize, mul: &[u32]) -> u64 {
    let mut h = DefaultHasher::new();
    order.hash(&mut h);
    mul.hash(&mut h);
    h.finish()
}

impl FiniteGroup {
    /// Builds a group from a table already known to satisfy the axioms with
    /// identity 0.
    fn from_trusted(order: usize, mul: Vec<u32>, label: Option<String>) -> FiniteGroup {
        debug_assert_eq!(mul.len(), order * order);
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let row = &mul[g * order..(g + 1) * order];
            let h = row.iter().position(|&x| x == 0).expect("inverse exists");
            inv[g] = h as u32;
        }
        let fingerprint = fingerprint(order, &mul);
        FiniteGroup {
            order,
            mul,
            inv,
            label,
            fingerprint,
        }
    }

    /// The trivial group.
    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_trusted(1, vec![0], Some("C1".into()))
    }

    /// Validates a multiplication table.
    ///
    /// The identity is located by search and relabeled to index 0 (by
    /// swapping it with element 0); all other indices are kept. Error
    /// witnesses refer to the indices of the input table.
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::MalformedTable {
                row: 0,
                detail: "table is empty".into(),
            });
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::MalformedTable {
                    row: r,
                    detail: format!("expected {order} entries, found {}", row.len()),
                });
            }
            if let Some(c) = row.iter().position(|&x| x >= order) {
                return Err(GroupError::MalformedTable {
                    row: r,
                    detail: format!("entry {} at column {c} is out of range", row[c]),
                });
            }
        }
        let m = |a: usize, b: usize| table[a][b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;

        if order <= EXHAUSTIVE_ASSOCIATIVITY_BOUND {
            for a in 0..order {
                for b in 0..order {
                    let ab = m(a, b);
                    for c in 0..order {
                        if m(ab, c) != m(a, m(b, c)) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ab1e);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                    rng.random_range(0..order),
                );
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }

        for g in 0..order {
            if !(0..order).any(|h| m(g, h) == identity && m(h, g) == identity) {
                return Err(GroupError::NoInverse { element: g });
            }
        }

        // swap labels 0 <-> identity
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                mul[relabel(a) * order + relabel(b)] = relabel(m(a, b)) as u32;
            }
        }
        Ok(FiniteGroup::from_trusted(order, mul, None))
    }

    /// Closes a set of permutations of `0..degree` under composition.
    ///
    /// Elements are numbered in breadth-first discovery order starting from
    /// the identity at index 0. The product `a * b` is the composite
    /// "apply `b`, then `a`".
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        limits: &Limits,
    ) -> Result<FiniteGroup, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            let bad = |detail: String| GroupError::NotAPermutation {
                generator: i,
                degree,
                detail,
            };
            if g.len() != degree {
                return Err(bad(format!("has length {}", g.len())));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree {
                    return Err(bad(format!("image {x} out of range")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(bad(format!("image {x} repeated")));
                }
            }
        }
        let gens: Vec<Vec<u32>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| x as u32).collect())
            .collect();
        let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { b.iter().map(|&x| a[x as usize]).collect() };

        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(identity, 0)]);
        // parent[j] = (i, s) with element j = element i * gen s
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for (s, gen) in gens.iter().enumerate() {
                let prod = compose(&elements[i], gen);
                let j = match index.get(&prod) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len();
                        if j >= limits.order_cap {
                            return Err(GroupError::OrderCapExceeded {
                                cap: limits.order_cap,
                            });
                        }
                        index.insert(prod.clone(), j as u32);
                        elements.push(prod);
                        parent.push((i as u32, s as u32));
                        queue.push_back(j);
                        j as u32
                    }
                };
                row.push(j);
            }
            right.push(row);
        }

        let order = elements.len();
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            mul[a * order] = a as u32;
            // discovery order guarantees parents precede children
            for j in 1..order {
                let (pj, s) = parent[j];
                let prev = mul[a * order + pj as usize];
                mul[a * order + j] = right[prev as usize][s as usize];
            }
        }
        Ok(FiniteGroup::from_trusted(order, mul, None))
    }

    /// Cyclic group of order `m`, element `k` being the residue `k`.
    pub fn cyclic(m: usize) -> FiniteGroup {
        assert!(m >= 1, "cyclic group needs positive order");
        let mut mul = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                mul[a * m + b] = ((a + b) % m) as u32;
            }
        }
        FiniteGroup::from_trusted(m, mul, Some(format!("C{m}")))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FiniteGroup {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g * x * g^-1`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element(&self, index: usize) -> Result<GroupElement<'_>, GroupError> {
        if index < self.order {
            Ok(GroupElement { group: self, index })
        } else {
            Err(GroupError::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement<'_>> {
        (0..self.order).map(move |index| GroupElement { group: self, index })
    }

    /// The table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul
            .chunks(self.order)
            .map(|row| row.iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    /// Whether the order is a power of `p`.
    pub fn is_p_group(&self, p: Prime) -> bool {
        p.divides_as_power(self.order as u64)
    }

    /// Orbits of the conjugation action, with minimal representatives.
    pub fn conjugacy_classes(&self) -> ConjugacyClassTable {
        const UNSEEN: usize = usize::MAX;
        let n = self.order;
        let mut class_of = vec![UNSEEN; n];
        let mut classes = Vec::new();
        let mut representatives = Vec::new();
        for x in 0..n {
            if class_of[x] != UNSEEN {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for g in 0..n {
                let y = self.conjugate(g, x);
                if class_of[y] == UNSEEN {
                    class_of[y] = id;
                    class.push(y);
                }
            }
            class.sort_unstable();
            representatives.push(x);
            classes.push(class);
        }
        ConjugacyClassTable {
            classes,
            representatives,
            class_of,
        }
    }

    /// The centralizer of `g`, elements ordered by ascending index here.
    pub fn centralizer(&self, g: GroupElement<'_>) -> Centralizer {
        assert!(std::ptr::eq(g.group, self), "element of a different group");
        self.centralizer_of(g.index)
    }

    pub(crate) fn centralizer_of(&self, g: usize) -> Centralizer {
        let embedding: Vec<usize> = (0..self.order).filter(|&h| self.commute(g, h)).collect();
        let sub = self.subgroup_on(&embedding);
        Centralizer {
            group: sub,
            embedding,
        }
    }

    /// Restricts the table to a sorted list of elements forming a subgroup
    /// that contains the identity at position 0.
    fn subgroup_on(&self, elements: &[usize]) -> FiniteGroup {
        let k = elements.len();
        let mut local = vec![u32::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            local[e] = i as u32;
        }
        let mut mul = Vec::with_capacity(k * k);
        for &a in elements {
            for &b in elements {
                let c = local[self.mul(a, b)];
                debug_assert_ne!(c, u32::MAX, "not closed under multiplication");
                mul.push(c);
            }
        }
        FiniteGroup::from_trusted(k, mul, None)
    }

    /// Direct product, pair `(g, h)` at index `g * |H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup, GroupError> {
        let (m, n) = (self.order, other.order);
        let order = m
            .checked_mul(n)
            .filter(|&o| o <= limits.order_cap)
            .ok_or(GroupError::OrderCapExceeded {
                cap: limits.order_cap,
            })?;
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            let (a1, a2) = (a / n, a % n);
            for b in 0..order {
                let (b1, b2) = (b / n, b % n);
                mul.push((self.mul(a1, b1) * n + other.mul(a2, b2)) as u32);
            }
        }
        let label = match (&self.label, &other.label) {
            (Some(l), Some(r)) => Some(format!("{l} x {r}")),
            _ => None,
        };
        Ok(FiniteGroup::from_trusted(order, mul, label))
    }

    /// Sorted multiset of element orders.
    pub fn element_order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|g| self.element_order(g)).collect();
        v.sort_unstable();
        v
    }

    /// A generating set found greedily: each chosen element lies outside the
    /// subgroup generated by the previous ones.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        for g in 1..self.order {
            if inside[g] {
                continue;
            }
            gens.push(g);
            // re-close: multiply everything by all generators until stable
            let mut frontier = members.clone();
            while let Some(x) = frontier.pop() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}
