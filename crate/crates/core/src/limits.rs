/// Resource caps shared by every operation that can blow up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order a closure or product may produce.
    pub order_cap: usize,
    /// Largest number of stored component runs in a groupoid or memo table.
    pub component_budget: usize,
    /// Largest number of candidate tuples the brute-force oracle may visit.
    pub work_cap: u64,
}

impl Limits {
    pub const DEFAULT_ORDER_CAP: usize = 100_000;
    pub const DEFAULT_COMPONENT_BUDGET: usize = 10_000_000;
    pub const DEFAULT_WORK_CAP: u64 = 100_000_000;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            order_cap: Self::DEFAULT_ORDER_CAP,
            component_budget: Self::DEFAULT_COMPONENT_BUDGET,
            work_cap: Self::DEFAULT_WORK_CAP,
        }
    }
}
