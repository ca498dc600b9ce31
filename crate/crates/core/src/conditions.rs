//! Per-prefix balance conditions.
//!
//! Every condition has the shape `Z_i^t[j] <= bound(n, t, j)` for `j` in an
//! index range `J(t)`, evaluated after every prefix day `t`. Bounds are
//! computed in integer arithmetic and capped at `n`; a capped bound is
//! vacuous and never produces a violation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::assignment::{RankCountIndex, RepeatedAssignment, Violation};
use crate::error::Error;

/// `ceil(a / b)` for `b > 0`.
#[inline]
pub fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// `floor(a / b + 1)` for `b > 0`.
#[inline]
pub fn floor_div_plus_one(a: usize, b: usize) -> usize {
    a / b + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionKind {
    /// `Z_i^t[1] <= ceil(n/t)`.
    TopBalanced,
    /// `Z_i^t[j] <= ceil(j n / t)` for all `j <= t`.
    Balanced,
    /// `Z_i^t[j] <= floor(j n / t + 1)`.
    WeakBalanced,
    /// `Z_i^t[j] <= ceil((j + 1) n / t)`.
    Prop2Strong,
    /// `Z_i^t[j] <= floor((j + 1) n / t + 1)`.
    Prop2Weak,
    /// Top-balance on every window of consecutive days, not only prefixes.
    WindowedTop,
}

impl ConditionKind {
    pub const ALL: [ConditionKind; 6] = [
        ConditionKind::TopBalanced,
        ConditionKind::Balanced,
        ConditionKind::WeakBalanced,
        ConditionKind::Prop2Strong,
        ConditionKind::Prop2Weak,
        ConditionKind::WindowedTop,
    ];

    /// Kinds whose verdict depends only on the prefix bundles.
    pub fn is_prefix_condition(self) -> bool {
        self != ConditionKind::WindowedTop
    }

    pub fn name(self) -> &'static str {
        match self {
            ConditionKind::TopBalanced => "top-balanced",
            ConditionKind::Balanced => "balanced",
            ConditionKind::WeakBalanced => "weak-balanced",
            ConditionKind::Prop2Strong => "prop2-strong",
            ConditionKind::Prop2Weak => "prop2-weak",
            ConditionKind::WindowedTop => "windowed-top",
        }
    }

    /// Largest index `j` constrained after `t` days.
    pub fn max_index(self, t: usize) -> usize {
        match self {
            ConditionKind::TopBalanced | ConditionKind::WindowedTop => 1,
            _ => t,
        }
    }

    /// The bound on `Z^t[j]`, capped at `n`. For windowed top-balance `t` is
    /// the window length.
    pub fn bound(self, n: usize, t: usize, j: usize) -> usize {
        debug_assert!(t >= 1 && j >= 1);
        let raw = match self {
            ConditionKind::TopBalanced | ConditionKind::WindowedTop => ceil_div(n, t),
            ConditionKind::Balanced => ceil_div(j * n, t),
            ConditionKind::WeakBalanced => floor_div_plus_one(j * n, t),
            ConditionKind::Prop2Strong => ceil_div((j + 1) * n, t),
            ConditionKind::Prop2Weak => floor_div_plus_one((j + 1) * n, t),
        };
        raw.min(n)
    }

    /// Non-vacuous `(j, bound)` pairs after `t` days.
    pub fn active_bounds(self, n: usize, t: usize) -> impl Iterator<Item = (usize, usize)> {
        (1..=self.max_index(t))
            .map(move |j| (j, self.bound(n, t, j)))
            .filter(move |&(_, b)| b < n)
    }

    /// `need[b]` for `b in 0..=n`: the number of items of rank `<= b` a
    /// player must hold after `t` days. Equivalent to the bounds through
    /// `Z[j] <= b <=> count(b) >= j`.
    pub fn need_row(self, n: usize, t: usize) -> Vec<usize> {
        let mut need = vec![0; n + 1];
        for (j, b) in self.active_bounds(n, t) {
            need[b] = need[b].max(j);
        }
        for b in 1..=n {
            need[b] = need[b].max(need[b - 1]);
        }
        need
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ConditionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown condition kind {s:?}")))
    }
}

/// Result of [`check`]: empty when the sequence satisfies the condition.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Evaluates `kind` on every prefix (or window) of `seq` and lists all
/// violations in `(day, first_day, agent, j)` order.
pub fn check(seq: &RepeatedAssignment, kind: ConditionKind) -> Verdict {
    let mut violations = Vec::new();
    scan(seq, kind, |v| {
        violations.push(v);
        true
    });
    violations.sort_unstable();
    Verdict { violations }
}

/// The first violation in the order used by [`check`], stopping early.
pub fn first_violation(seq: &RepeatedAssignment, kind: ConditionKind) -> Option<Violation> {
    if kind.is_prefix_condition() {
        let mut first = None;
        scan(seq, kind, |v| {
            first = Some(v);
            false
        });
        first
    } else {
        check(seq, kind).violations.into_iter().next()
    }
}

pub fn is_valid(seq: &RepeatedAssignment, kind: ConditionKind) -> bool {
    first_violation(seq, kind).is_none()
}

/// Visits violations; prefix kinds are visited in sorted order. Stops when
/// `visit` returns false.
fn scan(seq: &RepeatedAssignment, kind: ConditionKind, mut visit: impl FnMut(Violation) -> bool) {
    let n = seq.n();
    if kind == ConditionKind::WindowedTop {
        for end in 2..=seq.len() {
            for start in 1..end {
                let bound = kind.bound(n, end - start + 1, 1);
                if bound >= n {
                    continue;
                }
                for agent in 1..=n {
                    let best = (start..=end).map(|t| seq.item(agent, t)).min().unwrap();
                    if best > bound {
                        let v = Violation {
                            day: end,
                            first_day: start,
                            agent,
                            j: 1,
                            bound,
                            actual: best,
                        };
                        if !visit(v) {
                            return;
                        }
                    }
                }
            }
        }
        return;
    }
    let mut index = RankCountIndex::new(n);
    for t in 1..=seq.len() {
        index.append_day(seq.day(t));
        let bounds: Vec<(usize, usize)> = kind.active_bounds(n, t).collect();
        for agent in 1..=n {
            for &(j, bound) in &bounds {
                if index.count(agent, bound) < j {
                    let v = Violation {
                        day: t,
                        first_day: 1,
                        agent,
                        j,
                        bound,
                        actual: index.kth_best(agent, j).expect("t items held"),
                    };
                    if !visit(v) {
                        return;
                    }
                }
            }
        }
    }
}

/// Minimal pruning rule: would giving `item` to `player` on day `t` break
/// a bound of day `t` for that player? `index` holds days `1..t` plus the
/// items already placed on day `t`, not including `player`'s.
///
/// Windowed top-balance is screened by its prefix windows only.
pub fn check_incremental(
    index: &RankCountIndex,
    kind: ConditionKind,
    n: usize,
    t: usize,
    player: usize,
    item: usize,
) -> bool {
    kind.active_bounds(n, t)
        .all(|(j, bound)| index.count(player, bound) + usize::from(item <= bound) >= j)
}
