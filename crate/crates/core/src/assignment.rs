//! Repeated assignments, bundles and prefix rank statistics.
//!
//! Players and items are 1-based in every public signature; item 1 is the
//! best item. A [`RepeatedAssignment`] is stored day-major: `days[t][i]` is
//! the item player `i + 1` receives on day `t + 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sequence of `T <= n` daily bijections between `n` players and `n` items.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAssignment", into = "RawAssignment")]
pub struct RepeatedAssignment {
    n: usize,
    days: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawAssignment {
    n: usize,
    days: Vec<Vec<usize>>,
}

impl TryFrom<RawAssignment> for RepeatedAssignment {
    type Error = Error;

    fn try_from(raw: RawAssignment) -> Result<Self> {
        RepeatedAssignment::new(raw.n, raw.days)
    }
}

impl From<RepeatedAssignment> for RawAssignment {
    fn from(seq: RepeatedAssignment) -> Self {
        RawAssignment {
            n: seq.n,
            days: seq.days,
        }
    }
}

impl RepeatedAssignment {
    /// Builds an assignment from day-major data, validating every invariant.
    pub fn new(n: usize, days: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAssignment("n must be positive".into()));
        }
        if days.is_empty() {
            return Err(Error::InvalidAssignment("at least one day is required".into()));
        }
        if days.len() > n {
            return Err(Error::InvalidAssignment(format!(
                "{} days exceeds n = {n}",
                days.len()
            )));
        }
        for (t, day) in days.iter().enumerate() {
            if day.len() != n {
                return Err(Error::InvalidAssignment(format!(
                    "day {} has {} entries, expected {n}",
                    t + 1,
                    day.len()
                )));
            }
            let mut seen = vec![false; n + 1];
            for (i, &item) in day.iter().enumerate() {
                if item == 0 || item > n {
                    return Err(Error::InvalidAssignment(format!(
                        "day {}, player {}: item {item} outside [1, {n}]",
                        t + 1,
                        i + 1
                    )));
                }
                if seen[item] {
                    return Err(Error::InvalidAssignment(format!(
                        "day {}: item {item} assigned twice",
                        t + 1
                    )));
                }
                seen[item] = true;
            }
        }
        Ok(RepeatedAssignment { n, days })
    }

    /// Builds an assignment from player-major rows (the orientation of the
    /// printed tables): `rows[i][t]` is the item of player `i + 1` on day `t + 1`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidAssignment("empty table".into()));
        }
        let width = rows[0].len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != width) {
            return Err(Error::InvalidAssignment(format!(
                "row {} has {} entries, expected {width}",
                i + 1,
                row.len()
            )));
        }
        let days = (0..width)
            .map(|t| rows.iter().map(|row| row[t]).collect())
            .collect();
        RepeatedAssignment::new(n, days)
    }

    /// The identity assignment on day 1 only.
    pub fn identity(n: usize) -> Result<Self> {
        RepeatedAssignment::new(n, vec![(1..=n).collect()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of days `T`.
    pub fn len(&self) -> usize {
        self.days.len()
    }

    pub fn is_empty(&self) -> bool {
        self.days.is_empty()
    }

    pub fn days(&self) -> &[Vec<usize>] {
        &self.days
    }

    /// Day `t` (1-based) as a slice indexed by player - 1.
    pub fn day(&self, t: usize) -> &[usize] {
        &self.days[t - 1]
    }

    /// Item held by `player` on day `t` (both 1-based).
    pub fn item(&self, player: usize, t: usize) -> usize {
        self.days[t - 1][player - 1]
    }

    /// Player-major rows, the transpose of [`days`](Self::days).
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|i| self.days.iter().map(|day| day[i]).collect())
            .collect()
    }

    /// The first `t` days.
    pub fn prefix(&self, t: usize) -> Result<Self> {
        if t == 0 || t > self.len() {
            return Err(Error::Usage(format!(
                "prefix length {t} outside [1, {}]",
                self.len()
            )));
        }
        Ok(RepeatedAssignment {
            n: self.n,
            days: self.days[..t].to_vec(),
        })
    }

    /// The bundle `Z_i^t` of `player` after day `t`.
    pub fn bundle(&self, player: usize, t: usize) -> Result<Bundle> {
        self.check_player_day(player, t)?;
        let items = self.days[..t].iter().map(|day| day[player - 1]).collect();
        Ok(Bundle::from_items(player, t, items))
    }

    /// `Z_i^t[j]`: the `j`-th best item player `i` holds after day `t`.
    pub fn kth_best(&self, player: usize, t: usize, j: usize) -> Result<usize> {
        self.bundle(player, t)?.kth_best(j)
    }

    /// True iff the table is a complete `n x n` Latin square: `T = n` and
    /// every player receives every item exactly once.
    pub fn is_latin_square(&self) -> bool {
        if self.len() != self.n {
            return false;
        }
        (0..self.n).all(|i| {
            let mut seen = vec![false; self.n + 1];
            self.days.iter().all(|day| !std::mem::replace(&mut seen[day[i]], true))
        })
    }

    /// The player holding `item` on day `t` (the positional views `A_i`,
    /// `B_i`, ... of the impossibility arguments).
    pub fn holder(&self, item: usize, t: usize) -> usize {
        self.days[t - 1]
            .iter()
            .position(|&x| x == item)
            .map(|p| p + 1)
            .expect("each day is a permutation")
    }

    fn check_player_day(&self, player: usize, t: usize) -> Result<()> {
        if player == 0 || player > self.n {
            return Err(Error::Usage(format!("player {player} outside [1, {}]", self.n)));
        }
        if t == 0 || t > self.len() {
            return Err(Error::Usage(format!("day {t} outside [1, {}]", self.len())));
        }
        Ok(())
    }
}

/// The multiset of items a player holds after some day, kept sorted best-first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bundle {
    pub owner: usize,
    pub day: usize,
    items: Vec<usize>,
}

impl Bundle {
    pub fn from_items(owner: usize, day: usize, mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        Bundle { owner, day, items }
    }

    /// A bundle with no owner or day attached (owner 0, day = number of items).
    pub fn anonymous(items: Vec<usize>) -> Self {
        let day = items.len();
        Bundle::from_items(0, day, items)
    }

    /// Items sorted best (smallest rank) first.
    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `Z[j]`, 1-based.
    pub fn kth_best(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.items.len() {
            return Err(Error::Usage(format!(
                "index {j} outside [1, {}]",
                self.items.len()
            )));
        }
        Ok(self.items[j - 1])
    }

    /// Number of items with rank `<= k`.
    pub fn count_at_most(&self, k: usize) -> usize {
        self.items.partition_point(|&x| x <= k)
    }
}

/// Per-player counts `counts[i][k] = |{x in Z_i : x <= k}|`, updated one item
/// at a time.
///
/// `Z_i[j] <= b` holds exactly when `count(i, b) >= j`, which turns every
/// bound check into a table lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCountIndex {
    n: usize,
    stride: usize,
    counts: Vec<u16>,
}

impl RankCountIndex {
    pub fn new(n: usize) -> Self {
        RankCountIndex {
            n,
            stride: n + 1,
            counts: vec![0; n * (n + 1)],
        }
    }

    /// Index over the first `t` days of `seq`.
    pub fn from_prefix(seq: &RepeatedAssignment, t: usize) -> Self {
        let mut index = RankCountIndex::new(seq.n());
        for day in &seq.days()[..t] {
            index.append_day(day);
        }
        index
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `item` to the bundle of `player` (1-based).
    #[inline]
    pub fn add(&mut self, player: usize, item: usize) {
        let base = (player - 1) * self.stride;
        for c in &mut self.counts[base + item..base + self.stride] {
            *c += 1;
        }
    }

    /// Inverse of [`add`](Self::add).
    #[inline]
    pub fn remove(&mut self, player: usize, item: usize) {
        let base = (player - 1) * self.stride;
        for c in &mut self.counts[base + item..base + self.stride] {
            debug_assert!(*c > 0);
            *c -= 1;
        }
    }

    /// Appends a full day; `day[i]` is the item of player `i + 1`.
    pub fn append_day(&mut self, day: &[usize]) {
        for (i, &item) in day.iter().enumerate() {
            self.add(i + 1, item);
        }
    }

    pub fn retract_day(&mut self, day: &[usize]) {
        for (i, &item) in day.iter().enumerate() {
            self.remove(i + 1, item);
        }
    }

    /// `|{x in Z_player : x <= k}|`; `k = 0` yields 0.
    #[inline]
    pub fn count(&self, player: usize, k: usize) -> usize {
        self.counts[(player - 1) * self.stride + k] as usize
    }

    /// Count vector `[count(player, 0), ..., count(player, n)]`.
    #[inline]
    pub fn row(&self, player: usize) -> &[u16] {
        let base = (player - 1) * self.stride;
        &self.counts[base..base + self.stride]
    }

    /// Number of items `player` holds.
    pub fn held(&self, player: usize) -> usize {
        self.count(player, self.n)
    }

    /// `Z_player[j]` recovered from the counts, or `None` if fewer than `j`
    /// items are held.
    pub fn kth_best(&self, player: usize, j: usize) -> Option<usize> {
        if j == 0 {
            return None;
        }
        let row = self.row(player);
        let pos = row.partition_point(|&c| (c as usize) < j);
        (pos <= self.n).then_some(pos)
    }
}

/// A failed bound: `Z_agent[j]` after `day` is `actual`, above `bound`.
///
/// For windowed top-balance the bundle is the window of days
/// `first_day..=day`; for prefix conditions `first_day` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub day: usize,
    pub first_day: usize,
    pub agent: usize,
    pub j: usize,
    pub bound: usize,
    pub actual: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kth_best_on_fixtures() {
        let n10 = fixtures::n10_balanced();
        assert_eq!(n10.kth_best(1, 3, 2).unwrap(), 7);
        let cyclic = fixtures::n6_cyclic();
        assert_eq!(cyclic.kth_best(5, 2, 1).unwrap(), 5);
        assert_eq!(cyclic.bundle(5, 2).unwrap().items(), &[5, 6]);
        for i in 1..=6 {
            assert_eq!(cyclic.kth_best(i, 1, 1).unwrap(), cyclic.item(i, 1));
        }
    }

    #[test]
    fn kth_best_rejects_out_of_range() {
        let seq = fixtures::n6_cyclic();
        assert!(matches!(seq.kth_best(0, 1, 1), Err(Error::Usage(_))));
        assert!(matches!(seq.kth_best(7, 1, 1), Err(Error::Usage(_))));
        assert!(matches!(seq.kth_best(1, 7, 1), Err(Error::Usage(_))));
        assert!(matches!(seq.kth_best(1, 2, 3), Err(Error::Usage(_))));
        assert!(matches!(seq.kth_best(1, 2, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn latin_square_detection() {
        assert!(fixtures::n6_cyclic().is_latin_square());
        assert!(fixtures::n11_balanced().is_latin_square());
        assert!(!fixtures::n6_cyclic().prefix(5).unwrap().is_latin_square());
        // columns are permutations but player 1 gets item 1 twice
        let seq = RepeatedAssignment::new(2, vec![vec![1, 2], vec![1, 2]]).unwrap();
        assert!(!seq.is_latin_square());
    }

    #[test]
    fn construction_validates() {
        assert!(RepeatedAssignment::new(0, vec![]).is_err());
        assert!(RepeatedAssignment::new(2, vec![]).is_err());
        assert!(RepeatedAssignment::new(2, vec![vec![1, 1]]).is_err());
        assert!(RepeatedAssignment::new(2, vec![vec![1, 3]]).is_err());
        assert!(RepeatedAssignment::new(2, vec![vec![1]]).is_err());
        assert!(RepeatedAssignment::new(1, vec![vec![1], vec![1]]).is_err());
        let rows = fixtures::n8_table1().to_rows();
        assert_eq!(RepeatedAssignment::from_rows(&rows).unwrap(), fixtures::n8_table1());
    }

    #[test]
    fn serde_rejects_invalid_days() {
        let ok: RepeatedAssignment = serde_json::from_str(r#"{"n":2,"days":[[2,1]]}"#).unwrap();
        assert_eq!(ok.item(1, 1), 2);
        assert!(serde_json::from_str::<RepeatedAssignment>(r#"{"n":2,"days":[[2,2]]}"#).is_err());
    }

    fn random_day(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut day: Vec<usize> = (1..=n).collect();
        day.shuffle(rng);
        day
    }

    #[test]
    fn append_retract_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut rounds = 0;
        while rounds < 100_000 {
            let n = rng.random_range(1..=9);
            let mut index = RankCountIndex::new(n);
            let mut stack = Vec::new();
            for _ in 0..n {
                let snapshot = index.clone();
                let day = random_day(n, &mut rng);
                index.append_day(&day);
                stack.push((snapshot, day));
            }
            while let Some((snapshot, day)) = stack.pop() {
                index.retract_day(&day);
                assert_eq!(index, snapshot);
                rounds += 1;
            }
        }
    }

    #[test]
    fn counts_match_kth_best() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.random_range(1..=10);
            let t = rng.random_range(1..=n);
            let days = (0..t).map(|_| random_day(n, &mut rng)).collect();
            let seq = RepeatedAssignment::new(n, days).unwrap();
            let index = RankCountIndex::from_prefix(&seq, t);
            for i in 1..=n {
                let row = index.row(i);
                assert!(row.windows(2).all(|w| w[0] <= w[1]));
                assert_eq!(index.held(i), t);
                for j in 1..=t {
                    let z = seq.kth_best(i, t, j).unwrap();
                    assert_eq!(index.kth_best(i, j), Some(z));
                    for b in 1..=n {
                        assert_eq!(z <= b, index.count(i, b) >= j);
                    }
                }
            }
        }
    }
}
