//! Fixed workloads shared by the benchmarks.

use loopcard::catalog::resolve_name;
use loopcard::{FiniteGroup, Limits};

/// Groups the counting benchmarks sweep, smallest first.
pub const COUNTING_GROUPS: [&str; 5] = ["S3", "D8", "Q8", "A4", "S4"];

/// Expressions for the parser benchmark.
pub const EXPRESSIONS: [&str; 4] = [
    "B(C3)",
    "L(B^2(C_3) x B(S3))",
    "L(L(B(D8) + B(Q8))) x Discrete(4)",
    r#"B(@'{"perm": {"degree": 4, "generators": [[1,2,3,0],[1,0,2,3]]}}')"#,
];

pub fn group(name: &str) -> FiniteGroup {
    resolve_name(name, &Limits::default()).expect("catalog group")
}
