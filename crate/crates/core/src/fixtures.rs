//! The published sequences, embedded from `fixtures/*.csv`.

use crate::assignment::RepeatedAssignment;
use crate::io;

const FILES: &[(&str, &str)] = &[
    ("n3_balanced", include_str!("../../../fixtures/n3_balanced.csv")),
    ("n4_balanced", include_str!("../../../fixtures/n4_balanced.csv")),
    ("n5_balanced", include_str!("../../../fixtures/n5_balanced.csv")),
    ("n6_balanced", include_str!("../../../fixtures/n6_balanced.csv")),
    ("n10_balanced", include_str!("../../../fixtures/n10_balanced.csv")),
    ("n11_balanced", include_str!("../../../fixtures/n11_balanced.csv")),
    ("n12_weak", include_str!("../../../fixtures/n12_weak.csv")),
    ("n6_cyclic", include_str!("../../../fixtures/n6_cyclic.csv")),
    ("n8_table1", include_str!("../../../fixtures/n8_table1.csv")),
];

pub fn raw_csv(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn get(name: &str) -> Option<RepeatedAssignment> {
    raw_csv(name).map(|text| io::parse_csv(text).expect("embedded fixture parses"))
}

/// Every fixture as `(name, sequence)`.
pub fn all() -> Vec<(&'static str, RepeatedAssignment)> {
    FILES
        .iter()
        .map(|(name, text)| (*name, io::parse_csv(text).expect("embedded fixture parses")))
        .collect()
}

/// Balanced tables for n = 3, 4, 5, 6.
pub fn small_balanced() -> Vec<RepeatedAssignment> {
    ["n3_balanced", "n4_balanced", "n5_balanced", "n6_balanced"]
        .iter()
        .map(|name| get(name).unwrap())
        .collect()
}

pub fn n10_balanced() -> RepeatedAssignment {
    get("n10_balanced").unwrap()
}

pub fn n11_balanced() -> RepeatedAssignment {
    get("n11_balanced").unwrap()
}

pub fn n12_weak() -> RepeatedAssignment {
    get("n12_weak").unwrap()
}

/// The cyclic-shift Latin square for n = 6.
pub fn n6_cyclic() -> RepeatedAssignment {
    get("n6_cyclic").unwrap()
}

/// The n = 8 Latin square shown next to the cyclic one.
pub fn n8_table1() -> RepeatedAssignment {
    get("n8_table1").unwrap()
}
