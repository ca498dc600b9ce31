//! Closed-form non-existence results for balanced and weakly-balanced
//! sequences, by residue of `n` modulo 6 and parity of `k = n div 6`.
//!
//! A `false` verdict means "not ruled out", never "exists".

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::assignment::RepeatedAssignment;
use crate::conditions::ceil_div;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// One counting case for `n = 6k + j`: the argument produces a player
/// needing `(k + offset) / 2` more top items than the `slack` available,
/// so the case closes once `k > 2 * slack - offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCase {
    pub residue: usize,
    pub parity: Parity,
    pub offset: i64,
    pub slack: i64,
}

impl ParityCase {
    /// Smallest `k` of this parity for which the case rules out `n`.
    pub fn min_k(&self) -> usize {
        let strict = 2 * self.slack - self.offset;
        let mut k = (strict + 1).max(0) as usize;
        if Parity::of(k) != self.parity {
            k += 1;
        }
        k
    }

    pub fn applies(&self, k: usize) -> bool {
        Parity::of(k) == self.parity && k >= self.min_k()
    }
}

pub const PARITY_CASES: [ParityCase; 10] = [
    ParityCase { residue: 1, parity: Parity::Even, offset: -6, slack: 2 },
    ParityCase { residue: 1, parity: Parity::Odd, offset: -5, slack: 2 },
    ParityCase { residue: 2, parity: Parity::Even, offset: -2, slack: 0 },
    ParityCase { residue: 2, parity: Parity::Odd, offset: -1, slack: 0 },
    ParityCase { residue: 3, parity: Parity::Even, offset: -2, slack: 2 },
    ParityCase { residue: 3, parity: Parity::Odd, offset: -3, slack: 2 },
    ParityCase { residue: 4, parity: Parity::Even, offset: -2, slack: 0 },
    ParityCase { residue: 4, parity: Parity::Odd, offset: -3, slack: 0 },
    ParityCase { residue: 5, parity: Parity::Even, offset: -4, slack: 2 },
    ParityCase { residue: 5, parity: Parity::Odd, offset: -3, slack: 2 },
];

/// Multiples of six need `k >= 2`.
pub const MULTIPLE_OF_SIX_MIN_K: usize = 2;

/// Weakly-balanced sequences fail for `n = 6k`, `k >= 19`.
pub const WEAK_MIN_K: usize = 19;

/// The tabulated combined threshold on `k` per residue.
pub fn table3_threshold(j: usize) -> usize {
    [2, 11, 3, 8, 4, 9][j]
}

/// Why a verdict came out as it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Reason {
    /// `n = 6k` with `k` at or above `min_k`.
    MultipleOfSix { k: usize, min_k: usize },
    /// `n = 6k + j` closed by the case for this parity of `k`.
    Residue { j: usize, k: usize, parity: Parity, min_k: usize },
    /// Not covered by any encoded argument.
    Unknown { j: usize, k: usize },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let residue = |j: usize| if j == 0 { "6k".to_string() } else { format!("6k+{j}") };
        match self {
            Reason::MultipleOfSix { k, .. } => write!(f, "6k, k={k}"),
            Reason::Residue { j, k, parity, .. } => {
                let p = if *parity == Parity::Even { "even" } else { "odd" };
                write!(f, "{}, k={k} {p}", residue(*j))
            }
            Reason::Unknown { j, k } => write!(f, "{}, k={k}", residue(*j)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub n: usize,
    pub balanced_impossible: bool,
    pub weak_impossible: bool,
    pub balanced_reason: Reason,
    pub weak_reason: Reason,
}

fn balanced_reason(n: usize) -> (bool, Reason) {
    let (k, j) = (n / 6, n % 6);
    if j == 0 {
        return if k >= MULTIPLE_OF_SIX_MIN_K {
            (true, Reason::MultipleOfSix { k, min_k: MULTIPLE_OF_SIX_MIN_K })
        } else {
            (false, Reason::Unknown { j, k })
        };
    }
    let case = PARITY_CASES
        .iter()
        .find(|c| c.residue == j && c.parity == Parity::of(k))
        .expect("every residue has both parities");
    if case.applies(k) {
        (true, Reason::Residue { j, k, parity: case.parity, min_k: case.min_k() })
    } else {
        (false, Reason::Unknown { j, k })
    }
}

fn weak_reason(n: usize) -> (bool, Reason) {
    let (k, j) = (n / 6, n % 6);
    if j == 0 && k >= WEAK_MIN_K {
        (true, Reason::MultipleOfSix { k, min_k: WEAK_MIN_K })
    } else {
        (false, Reason::Unknown { j, k })
    }
}

/// Both verdicts for `n`.
pub fn verdict(n: usize) -> BoundVerdict {
    let (balanced_impossible, balanced_reason) = balanced_reason(n);
    let (weak_impossible, weak_reason) = weak_reason(n);
    BoundVerdict {
        n,
        balanced_impossible,
        weak_impossible,
        balanced_reason,
        weak_reason,
    }
}

pub fn balanced_impossible(n: usize) -> BoundVerdict {
    verdict(n)
}

pub fn weak_balanced_impossible(n: usize) -> BoundVerdict {
    verdict(n)
}

/// An `n` on which the per-parity cases and the combined table disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub n: usize,
    pub from_cases: bool,
    pub from_table: bool,
}

/// Compares the per-parity cases with [`table3_threshold`] on `1..=max_n`.
pub fn reconcile(max_n: usize) -> Vec<Discrepancy> {
    (1..=max_n)
        .filter_map(|n| {
            let from_cases = verdict(n).balanced_impossible;
            let from_table = n / 6 >= table3_threshold(n % 6);
            (from_cases != from_table).then_some(Discrepancy { n, from_cases, from_table })
        })
        .collect()
}

/// Players holding items `lo..=hi` on `day`.
pub fn holders(seq: &RepeatedAssignment, day: usize, lo: usize, hi: usize) -> BTreeSet<usize> {
    (lo..=hi.min(seq.n())).map(|x| seq.holder(x, day)).collect()
}

/// Outcome of one positional step on a concrete sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub step: usize,
    pub applicable: bool,
    pub holds: bool,
}

/// The first steps of the multiple-of-six argument, read as set relations
/// between holders of item ranges on days 1 to 3 (`A`, `B`, `C`) and
/// checked on `seq`:
///
/// 1. holders of the bottom half on day 1 hold the top `ceil(n/2)` on day 2;
/// 2. for even `n`, holders of the top half on day 1 are exactly the
///    holders of the bottom half on day 2;
/// 3. players without an item `<= ceil(n/3)` after two days hold top items
///    on day 3; for `n = 6k` they are exactly those holding `2k+1..3k` on
///    day 1 or day 2, and they fill all `2k` top slots.
pub fn prop2_steps(seq: &RepeatedAssignment) -> Vec<StepCheck> {
    let n = seq.n();
    let days = seq.len();
    let h = ceil_div(n, 2);
    let mut out = Vec::new();

    let applicable = days >= 2 && n >= 2;
    let holds = applicable && holders(seq, 1, h + 1, n).is_subset(&holders(seq, 2, 1, h));
    out.push(StepCheck { step: 1, applicable, holds });

    let applicable = days >= 2 && n >= 2 && n.is_multiple_of(2);
    let holds = applicable && holders(seq, 1, 1, h) == holders(seq, 2, h + 1, n);
    out.push(StepCheck { step: 2, applicable, holds });

    let applicable = days >= 3 && n >= 3;
    let holds = applicable && {
        let q = ceil_div(n, 3);
        let lacking: BTreeSet<usize> = (1..=n)
            .filter(|&p| seq.item(p, 1) > q && seq.item(p, 2) > q)
            .collect();
        let top = holders(seq, 3, 1, q);
        let mut ok = lacking.is_subset(&top);
        if n.is_multiple_of(6) {
            let k = n / 6;
            let middle: BTreeSet<usize> = holders(seq, 1, 2 * k + 1, 3 * k)
                .union(&holders(seq, 2, 2 * k + 1, 3 * k))
                .copied()
                .collect();
            ok &= lacking == middle && lacking == top;
        }
        ok
    };
    out.push(StepCheck { step: 3, applicable, holds });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn published_examples() {
        assert!(balanced_impossible(12).balanced_impossible);
        assert_eq!(
            balanced_impossible(12).balanced_reason,
            Reason::MultipleOfSix { k: 2, min_k: 2 }
        );
        assert!(!balanced_impossible(11).balanced_impossible);
        assert!(!balanced_impossible(61).balanced_impossible);
        assert!((62..=120).all(|n| balanced_impossible(n).balanced_impossible));
        let v20 = balanced_impossible(20);
        assert!(v20.balanced_impossible);
        assert_eq!(
            v20.balanced_reason,
            Reason::Residue { j: 2, k: 3, parity: Parity::Odd, min_k: 3 }
        );
        assert!(weak_balanced_impossible(114).weak_impossible);
        assert!(!weak_balanced_impossible(12).weak_impossible);
        assert!(!weak_balanced_impossible(113).weak_impossible);
        assert!(!weak_balanced_impossible(108).weak_impossible);
    }

    #[test]
    fn per_parity_thresholds() {
        let min = |j, p| {
            PARITY_CASES
                .iter()
                .find(|c| c.residue == j && c.parity == p)
                .unwrap()
                .min_k()
        };
        assert_eq!(min(1, Parity::Even), 12);
        assert_eq!(min(1, Parity::Odd), 11);
        assert_eq!(min(2, Parity::Odd), 3);
        assert_eq!(min(2, Parity::Even), 4);
        assert_eq!(min(3, Parity::Even), 8);
        assert_eq!(min(3, Parity::Odd), 9);
        assert_eq!(min(4, Parity::Even), 4);
        assert_eq!(min(4, Parity::Odd), 5);
        assert_eq!(min(5, Parity::Even), 10);
        assert_eq!(min(5, Parity::Odd), 9);
    }

    #[test]
    fn cases_reproduce_table() {
        assert_eq!(reconcile(10_000), vec![]);
        let unknown: Vec<usize> = (1..=10_000).filter(|&n| !verdict(n).balanced_impossible).collect();
        assert_eq!(unknown.last(), Some(&61));
        assert!(unknown.contains(&13));
        assert!(!unknown.contains(&20));
    }

    #[test]
    fn reason_text() {
        assert_eq!(verdict(12).balanced_reason.to_string(), "6k, k=2");
        assert_eq!(verdict(20).balanced_reason.to_string(), "6k+2, k=3 odd");
        assert_eq!(verdict(5).balanced_reason.to_string(), "6k+5, k=0");
        assert_eq!(verdict(6).weak_reason.to_string(), "6k, k=1");
    }

    #[test]
    fn positional_steps_on_fixtures() {
        for name in ["n6_balanced", "n10_balanced", "n11_balanced"] {
            let seq = fixtures::get(name).unwrap();
            for step in prop2_steps(&seq) {
                assert!(!step.applicable || step.holds, "{name} step {}", step.step);
            }
        }
        let n6 = prop2_steps(&fixtures::get("n6_balanced").unwrap());
        assert!(n6.iter().all(|s| s.applicable));
        let n11 = prop2_steps(&fixtures::n11_balanced());
        assert!(!n11[1].applicable);
    }

    #[test]
    fn positional_steps_catch_unbalanced_input() {
        let steps = prop2_steps(&fixtures::n6_cyclic());
        assert!(steps.iter().any(|s| s.applicable && !s.holds));
    }
}
