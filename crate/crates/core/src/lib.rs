//! Exact `E_n` cardinalities of π-finite `p`-spaces, computed through
//! iterated free loop spaces.
//!
//! `|A|_{E_n}` is the homotopy cardinality of the `n`-fold free loop space
//! `L^n A`. Spaces come in two representations:
//!
//! * [`FiniteGroupoid`] for 1-types, with the free loop space computed from
//!   conjugacy classes and centralizers;
//! * [`PostnikovOrders`] for loop spaces, where only the orders of the
//!   homotopy groups matter and `LA ≃ A × ΩA`.
//!
//! Expressions such as `L(B^2(C3) x B(S3))` are parsed by [`spacexpr`].

pub mod catalog;
pub mod group;
pub mod groupoid;
pub mod invariants;
pub mod limits;
pub mod rational;
pub mod report;
pub mod spacexpr;
pub mod stable;
pub mod verify;

pub use catalog::{resolve_name, GroupDescription};
pub use group::{ConjugacyClassTable, FiniteGroup, GroupElement, GroupError, Prime};
pub use groupoid::{FiniteGroupoid, GroupoidError};
pub use invariants::{
    commuting_classes_bruteforce, commuting_classes_recursive, en_cardinality, en_cardinality_pi0_path,
    morava_euler, one_step_reduction_check, CommutingTupleClassCount, InvariantError, Space,
};
pub use limits::Limits;
pub use rational::ExactRational;
pub use spacexpr::{evaluate, parse, SpaceExpr, SpaceValue};
pub use stable::PostnikovOrders;
