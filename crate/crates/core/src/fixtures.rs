//! The small categories every exhaustive sweep runs over.

use std::sync::Arc;

use crate::fincat::{FinCategory, RawCategory, RawMorphism};

fn build(objects: &[&str], morphisms: &[(&str, &str, &str)], compose: &[[&str; 3]]) -> Arc<FinCategory> {
    FinCategory::assemble(&RawCategory {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms: morphisms.iter().map(|&(n, s, t)| RawMorphism::new(n, s, t)).collect(),
        compose: compose.iter().map(|t| t.map(String::from)).collect(),
    })
}

/// The terminal category: one object `*`.
pub fn one() -> Arc<FinCategory> {
    build(&["*"], &[], &[])
}

/// The interval: `u: 0 -> 1`.
pub fn two() -> Arc<FinCategory> {
    build(&["0", "1"], &[("u", "0", "1")], &[])
}

/// One object with an idempotent endomorphism `e . e = e`.
pub fn idempotent() -> Arc<FinCategory> {
    build(&["*"], &[("e", "*", "*")], &[["e", "e", "e"]])
}

/// Two objects, identities only.
pub fn discrete_two() -> Arc<FinCategory> {
    build(&["0", "1"], &[], &[])
}

/// `f, g: 0 -> 1`.
pub fn parallel_pair() -> Arc<FinCategory> {
    build(&["0", "1"], &[("f", "0", "1"), ("g", "0", "1")], &[])
}

/// `f: 0 -> 1`, `g: 1 -> 2` and their composite `gf`.
pub fn composable_pair() -> Arc<FinCategory> {
    build(&["0", "1", "2"], &[("f", "0", "1"), ("g", "1", "2"), ("gf", "0", "2")], &[["f", "g", "gf"]])
}

pub const NAMES: [&str; 6] = ["one", "two", "loop", "discrete-2", "parallel-pair", "composable-pair"];

pub fn by_name(name: &str) -> Option<Arc<FinCategory>> {
    Some(match name {
        "one" => one(),
        "two" => two(),
        "loop" => idempotent(),
        "discrete-2" => discrete_two(),
        "parallel-pair" => parallel_pair(),
        "composable-pair" => composable_pair(),
        _ => return None,
    })
}

/// Every fixture, in a fixed order.
pub fn all() -> Vec<(&'static str, Arc<FinCategory>)> {
    NAMES.iter().map(|&n| (n, by_name(n).expect("known fixture"))).collect()
}
