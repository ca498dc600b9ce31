//! Pruned depth-first search for sequences satisfying a condition.
//!
//! Cells are filled day by day; within a day items are placed in ascending
//! rank, each one given to some player not yet served that day. After each
//! placement the engine checks, for every deadline day `T'` between the
//! current day and the horizon and every threshold `b`, that the items of
//! rank `<= b` still to be handed out can cover what the players are owed:
//!
//! * `R_i(T', b)` is the number of items of rank `<= b` player `i` must
//!   still receive by day `T'`;
//! * each player can receive at most one item per remaining day, and on the
//!   current day only an item ranked after the last one placed;
//! * `sum_i R_i(T', b)` cannot exceed the remaining supply of such items.
//!
//! With the deadline equal to the current day this is an earliest-deadline
//! feasibility test for the day being filled; with the deadline at day `n`
//! for the balanced condition it forbids duplicate items in a row, since a
//! balanced full table must be a Latin square.
//!
//! Symmetry: every prefix condition depends only on the multiset of bundles,
//! so two players holding equal bundles are interchangeable. With symmetry
//! breaking on, only the lowest-indexed of such players is tried for an item
//! (on day 1 this fixes the identity assignment), and fully explored
//! day-boundary states are cached by their sorted bundle multiset.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::assignment::{RankCountIndex, RepeatedAssignment};
use crate::conditions::{self, ConditionKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub kind: ConditionKind,
    /// Depth limit in days; conditions are checked on days `1..=max_days`.
    pub max_days: usize,
    #[serde(with = "opt_secs")]
    pub timeout: Option<Duration>,
    pub node_limit: Option<u64>,
    pub symmetry_breaking: bool,
    /// Report the first witness in serial search order even when running
    /// several workers.
    pub deterministic: bool,
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(n: usize, kind: ConditionKind) -> Self {
        SearchConfig {
            n,
            kind,
            max_days: n,
            timeout: None,
            node_limit: None,
            symmetry_breaking: true,
            deterministic: true,
            workers: 1,
        }
    }

    pub fn with_max_days(mut self, days: usize) -> Self {
        self.max_days = days;
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_symmetry_breaking(mut self, on: bool) -> Self {
        self.symmetry_breaking = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Usage("n must be positive".into()));
        }
        if self.n > 255 {
            return Err(Error::Usage("search supports n <= 255".into()));
        }
        if self.max_days == 0 || self.max_days > self.n {
            return Err(Error::Usage(format!(
                "max_days {} outside [1, {}]",
                self.max_days, self.n
            )));
        }
        if self.workers == 0 {
            return Err(Error::Usage("workers must be positive".into()));
        }
        Ok(())
    }
}

mod opt_secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(d) => s.serialize_some(&d.as_secs_f64()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.map(Duration::from_secs_f64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum SearchStatus {
    Sat(RepeatedAssignment),
    Unsat,
    Timeout,
}

impl SearchStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SearchStatus::Sat(_) => "sat",
            SearchStatus::Unsat => "unsat",
            SearchStatus::Timeout => "timeout",
        }
    }

    pub fn witness(&self) -> Option<&RepeatedAssignment> {
        match self {
            SearchStatus::Sat(seq) => Some(seq),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub nodes_expanded: u64,
    /// Largest number of completed days on any explored branch.
    pub max_depth_reached: usize,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, SearchStatus::Sat(_))
    }
}

/// Periodic search progress.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Progress {
    pub nodes: u64,
    pub day: usize,
    pub max_depth: usize,
    pub elapsed_secs: f64,
}

/// Re-checks a Sat witness with the full checker.
pub fn verify_witness(outcome: &SearchOutcome, kind: ConditionKind) -> bool {
    match &outcome.status {
        SearchStatus::Sat(seq) => conditions::is_valid(seq, kind),
        _ => false,
    }
}

/// [`verify_witness`] plus the witness shape the configuration asks for.
fn witness_matches(outcome: &SearchOutcome, cfg: &SearchConfig) -> bool {
    outcome
        .status
        .witness()
        .is_some_and(|seq| seq.n() == cfg.n && seq.len() == cfg.max_days)
        && verify_witness(outcome, cfg.kind)
}

pub fn search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    search_with_progress(cfg, None)
}

const PROGRESS_INTERVAL: u64 = 1 << 22;
const CLOCK_INTERVAL: u64 = 1 << 10;
const NOGOOD_BUDGET_BYTES: usize = 1 << 29;

pub fn search_with_progress(
    cfg: &SearchConfig,
    progress: Option<&(dyn Fn(Progress) + Sync)>,
) -> Result<SearchOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let shared = Shared {
        start,
        deadline: cfg.timeout.map(|t| start + t),
        node_limit: cfg.node_limit,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        best_branch: AtomicUsize::new(usize::MAX),
        progress,
        next_progress: AtomicU64::new(PROGRESS_INTERVAL),
        max_depth: AtomicUsize::new(0),
    };

    let mut root = Engine::new(cfg, &shared, NOGOOD_BUDGET_BYTES / cfg.workers);
    let status = match root.split() {
        Split::Done(flow) => root.finish(flow),
        Split::Branches { prefix, branches } => {
            if cfg.workers == 1 {
                let mut flow = Flow::Exhausted;
                for &player in &branches {
                    root.place(player);
                    if root.feasible() {
                        flow = root.dfs();
                    }
                    root.unplace();
                    if flow != Flow::Exhausted {
                        break;
                    }
                }
                root.finish(flow)
            } else {
                run_parallel(cfg, &shared, &prefix, &branches)
            }
        }
    };
    let outcome = SearchOutcome {
        status,
        nodes_expanded: shared.nodes.load(Ordering::Relaxed) + root.local_nodes,
        max_depth_reached: shared.max_depth.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    };
    if outcome.is_sat() && !witness_matches(&outcome, cfg) {
        return Err(Error::Internal(format!(
            "search produced a witness failing {}: {:?}",
            cfg.kind,
            outcome.status.witness()
        )));
    }
    Ok(outcome)
}

fn run_parallel(
    cfg: &SearchConfig,
    shared: &Shared<'_>,
    prefix: &[usize],
    branches: &[usize],
) -> SearchStatus {
    let next = AtomicUsize::new(0);
    let found: Mutex<Option<(usize, RepeatedAssignment)>> = Mutex::new(None);
    let aborted = AtomicBool::new(false);
    std::thread::scope(|scope| {
        for _ in 0..cfg.workers {
            scope.spawn(|| {
                let mut engine = Engine::new(cfg, shared, NOGOOD_BUDGET_BYTES / cfg.workers);
                for &p in prefix {
                    if engine.placed == engine.n {
                        engine.next_day();
                    }
                    engine.place(p);
                }
                if engine.placed == engine.n {
                    engine.next_day();
                }
                loop {
                    let idx = next.fetch_add(1, Ordering::Relaxed);
                    if idx >= branches.len() || shared.stop.load(Ordering::Relaxed) {
                        break;
                    }
                    if idx > shared.best_branch.load(Ordering::Relaxed) {
                        break;
                    }
                    engine.branch = idx;
                    engine.place(branches[idx]);
                    let flow = if engine.feasible() { engine.dfs() } else { Flow::Exhausted };
                    match flow {
                        Flow::Found => {
                            let witness = engine.solution.take().expect("witness recorded");
                            let mut slot = found.lock().unwrap();
                            if slot.as_ref().is_none_or(|(b, _)| idx < *b) {
                                *slot = Some((idx, witness));
                            }
                            shared.best_branch.fetch_min(idx, Ordering::Relaxed);
                            if !cfg.deterministic {
                                shared.stop.store(true, Ordering::Relaxed);
                            }
                        }
                        Flow::Abort => {
                            // superseded branches are not timeouts
                            if idx < shared.best_branch.load(Ordering::Relaxed) {
                                aborted.store(true, Ordering::Relaxed);
                            }
                        }
                        Flow::Exhausted => {}
                    }
                    engine.unplace();
                }
                shared.nodes.fetch_add(engine.local_nodes, Ordering::Relaxed);
            });
        }
    });
    match found.into_inner().unwrap() {
        Some((_, seq)) => SearchStatus::Sat(seq),
        None if aborted.load(Ordering::Relaxed) => SearchStatus::Timeout,
        None => SearchStatus::Unsat,
    }
}

struct Shared<'a> {
    start: Instant,
    deadline: Option<Instant>,
    node_limit: Option<u64>,
    nodes: AtomicU64,
    stop: AtomicBool,
    best_branch: AtomicUsize,
    progress: Option<&'a (dyn Fn(Progress) + Sync)>,
    next_progress: AtomicU64,
    max_depth: AtomicUsize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Found,
    Exhausted,
    Abort,
}

enum Split {
    Done(Flow),
    /// Forced placements leading to the first cell with several candidates.
    Branches { prefix: Vec<usize>, branches: Vec<usize> },
}

struct Engine<'s, 'p> {
    n: usize,
    horizon: usize,
    stride: usize,
    symmetry: bool,
    fix_first_day: bool,
    windowed: bool,
    need: Vec<u16>,
    index: RankCountIndex,
    /// `R_i(T', b)` at `[(i - 1) * horizon * stride + (T' - 1) * stride + b]`.
    owed: Vec<u16>,
    /// `sum_i R_i(T', b)` at `[(T' - 1) * stride + b]`.
    owed_sum: Vec<u32>,
    bundle_hash: Vec<u64>,
    item_keys: Vec<u64>,
    /// Current day (1-based) and items already placed on it.
    day: usize,
    placed: usize,
    served: Vec<bool>,
    /// Player receiving each placed cell, in placement order.
    trail: Vec<usize>,
    /// `item_of[(t - 1) * n + p - 1]`: item of player `p` on day `t`.
    item_of: Vec<usize>,
    /// Windowed top-balance only: one deadline per player for each started
    /// day; the player's item that day must rank at or above it.
    window_deadlines: Vec<Vec<usize>>,
    nogoods: Option<HashSet<Box<[u8]>>>,
    nogood_bytes: usize,
    nogood_budget: usize,
    solution: Option<RepeatedAssignment>,
    local_nodes: u64,
    since_clock: u64,
    branch: usize,
    shared: &'s Shared<'p>,
}

impl<'s, 'p> Engine<'s, 'p> {
    fn new(cfg: &SearchConfig, shared: &'s Shared<'p>, nogood_budget: usize) -> Self {
        let n = cfg.n;
        let horizon = cfg.max_days;
        let stride = n + 1;
        let mut need = vec![0u16; horizon * stride];
        for t in 1..=horizon {
            for (b, v) in cfg.kind.need_row(n, t).into_iter().enumerate() {
                need[(t - 1) * stride + b] = v as u16;
            }
        }
        let symmetry = cfg.symmetry_breaking && cfg.kind.is_prefix_condition();
        let windowed = cfg.kind == ConditionKind::WindowedTop;
        // splitmix64 keys for the multiset hash of a bundle
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let item_keys = (0..=n)
            .map(|_| {
                state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
                z ^ (z >> 31)
            })
            .collect();
        let mut engine = Engine {
            n,
            horizon,
            stride,
            symmetry,
            fix_first_day: cfg.symmetry_breaking,
            windowed,
            need,
            index: RankCountIndex::new(n),
            owed: vec![0; n * horizon * stride],
            owed_sum: vec![0; horizon * stride],
            bundle_hash: vec![0; n + 1],
            item_keys,
            day: 1,
            placed: 0,
            served: vec![false; n + 1],
            trail: Vec::with_capacity(n * horizon),
            item_of: vec![0; n * horizon],
            window_deadlines: vec![vec![n; n + 1]],
            nogoods: symmetry.then(HashSet::new),
            nogood_bytes: 0,
            nogood_budget,
            solution: None,
            local_nodes: 0,
            since_clock: 0,
            branch: 0,
            shared,
        };
        for p in 1..=n {
            engine.refresh_owed(p);
        }
        engine
    }

    #[inline]
    fn owed_at(&self, player: usize, deadline: usize, b: usize) -> u16 {
        self.owed[(player - 1) * self.horizon * self.stride + (deadline - 1) * self.stride + b]
    }

    /// Recomputes `R_player(T', .)` for deadlines from the current day on.
    fn refresh_owed(&mut self, player: usize) {
        let n = self.n;
        let stride = self.stride;
        let base = (player - 1) * self.horizon * stride;
        let counts = self.index.row(player);
        for deadline in self.day..=self.horizon {
            let need = &self.need[(deadline - 1) * stride..deadline * stride];
            let row = base + (deadline - 1) * stride;
            let sums = &mut self.owed_sum[(deadline - 1) * stride..deadline * stride];
            let mut running = 0u16;
            for b in 1..n {
                running = running.max(need[b].saturating_sub(counts[b]));
                let old = self.owed[row + b];
                if old != running {
                    sums[b] = sums[b] + running as u32 - old as u32;
                    self.owed[row + b] = running;
                }
            }
        }
    }

    fn place(&mut self, player: usize) {
        let item = self.placed + 1;
        self.index.add(player, item);
        self.bundle_hash[player] = self.bundle_hash[player].wrapping_add(self.item_keys[item]);
        self.served[player] = true;
        self.placed = item;
        self.trail.push(player);
        self.item_of[(self.day - 1) * self.n + player - 1] = item;
        self.refresh_owed(player);
        if self.placed == self.n {
            self.shared.max_depth.fetch_max(self.day, Ordering::Relaxed);
        }
    }

    fn unplace(&mut self) {
        let player = self.trail.pop().expect("placement to undo");
        let item = self.placed;
        self.index.remove(player, item);
        self.bundle_hash[player] = self.bundle_hash[player].wrapping_sub(self.item_keys[item]);
        self.served[player] = false;
        self.placed -= 1;
        self.refresh_owed(player);
    }

    /// Advances to the next day after a completed one.
    fn next_day(&mut self) {
        debug_assert_eq!(self.placed, self.n);
        self.day += 1;
        self.placed = 0;
        self.served.iter_mut().for_each(|s| *s = false);
        if self.windowed {
            let deadlines = self.window_deadlines_for_day();
            self.window_deadlines.push(deadlines);
        }
    }

    /// For each player, the tightest window ending today that its earlier
    /// items in the window leave unsatisfied.
    fn window_deadlines_for_day(&self) -> Vec<usize> {
        let n = self.n;
        let t = self.day;
        let mut out = vec![n; n + 1];
        for (p, slot) in out.iter_mut().enumerate().skip(1) {
            let mut best = usize::MAX;
            for start in (1..t).rev() {
                best = best.min(self.item_of[(start - 1) * n + p - 1]);
                let bound = n.div_ceil(t - start + 1);
                if best > bound {
                    *slot = (*slot).min(bound);
                }
            }
        }
        out
    }

    fn window_feasible(&self) -> bool {
        let r = self.placed;
        let deadlines = self.window_deadlines.last().expect("deadlines for the current day");
        if r > 0 && r > deadlines[*self.trail.last().unwrap()] {
            return false;
        }
        let mut due = vec![0usize; self.n + 1];
        for p in 1..=self.n {
            if !self.served[p] {
                if deadlines[p] <= r {
                    return false;
                }
                due[deadlines[p]] += 1;
            }
        }
        let mut pending = 0;
        for (b, &count) in due.iter().enumerate().skip(r + 1) {
            pending += count;
            if pending > b - r {
                return false;
            }
        }
        true
    }

    fn prev_day(&mut self) {
        // the owed rows of the previous day were all zero when it completed
        if self.windowed {
            self.window_deadlines.pop();
        }
        self.day -= 1;
        self.placed = self.n;
        let start = self.trail.len() - self.n;
        for &p in &self.trail[start..] {
            self.served[p] = true;
        }
    }

    /// Supply and per-player capacity test after the latest placement.
    fn feasible(&self) -> bool {
        let n = self.n;
        let r = self.placed;
        if self.windowed && !self.window_feasible() {
            return false;
        }
        for deadline in self.day..=self.horizon {
            let days_left = (deadline - self.day) as u32;
            let sums = &self.owed_sum[(deadline - 1) * self.stride..deadline * self.stride];
            for (b, &owed) in sums.iter().enumerate().take(n).skip(1) {
                let supply = b.saturating_sub(r) as u32 + days_left * b as u32;
                if owed > supply {
                    return false;
                }
            }
            for p in 1..=n {
                let limit = if self.served[p] { days_left } else { days_left + 1 };
                if n > 1 && self.owed_at(p, deadline, n - 1) as u32 > limit {
                    return false;
                }
                if !self.served[p] && r >= 1 && r < n && self.owed_at(p, deadline, r) as u32 > days_left {
                    return false;
                }
            }
        }
        true
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        self.since_clock += 1;
        if self.since_clock < CLOCK_INTERVAL {
            return true;
        }
        let batch = self.since_clock;
        self.since_clock = 0;
        let shared = self.shared;
        let total = shared.nodes.fetch_add(batch, Ordering::Relaxed) + batch;
        self.local_nodes -= batch;
        if shared.stop.load(Ordering::Relaxed) || self.branch > shared.best_branch.load(Ordering::Relaxed) {
            return false;
        }
        if shared.node_limit.is_some_and(|limit| total >= limit) {
            return false;
        }
        if shared.deadline.is_some_and(|d| Instant::now() >= d) {
            return false;
        }
        if let Some(report) = shared.progress {
            let due = shared.next_progress.load(Ordering::Relaxed);
            if total >= due
                && shared
                    .next_progress
                    .compare_exchange(due, total + PROGRESS_INTERVAL, Ordering::Relaxed, Ordering::Relaxed)
                    .is_ok()
            {
                report(Progress {
                    nodes: total,
                    day: self.day,
                    max_depth: shared.max_depth.load(Ordering::Relaxed),
                    elapsed_secs: shared.start.elapsed().as_secs_f64(),
                });
            }
        }
        true
    }

    /// Players eligible for the next item, most constrained first.
    fn candidates(&self) -> Vec<usize> {
        let n = self.n;
        let item = self.placed + 1;
        if self.fix_first_day && self.day == 1 {
            return (1..=n).find(|&p| !self.served[p]).into_iter().collect();
        }
        let mut out: Vec<(u32, usize)> = Vec::with_capacity(n);
        'players: for p in 1..=n {
            if self.served[p] {
                continue;
            }
            if self.symmetry {
                for q in 1..p {
                    if !self.served[q]
                        && self.bundle_hash[q] == self.bundle_hash[p]
                        && self.index.row(q) == self.index.row(p)
                    {
                        continue 'players;
                    }
                }
            }
            out.push((self.urgency(p, item), p));
        }
        out.sort_unstable();
        out.into_iter().map(|(_, p)| p).collect()
    }

    /// Smaller is more urgent: the slack, in days, of the tightest pending
    /// requirement that `item` would serve, then its threshold.
    fn urgency(&self, player: usize, item: usize) -> u32 {
        let mut best = u32::MAX;
        for deadline in self.day..=self.horizon {
            let days = (deadline - self.day + 1) as u32;
            for b in item..self.n {
                let owed = self.owed_at(player, deadline, b) as u32;
                if owed > 0 {
                    let key = (days - owed) * 1024 + b as u32;
                    best = best.min(key);
                    break;
                }
            }
        }
        best
    }

    fn state_key(&self) -> Box<[u8]> {
        let n = self.n;
        let mut bundles: Vec<Vec<u8>> = (1..=n)
            .map(|p| {
                let row = self.index.row(p);
                let mut items = Vec::with_capacity(self.day);
                for x in 1..=n {
                    for _ in row[x - 1]..row[x] {
                        items.push(x as u8);
                    }
                }
                items
            })
            .collect();
        bundles.sort_unstable();
        bundles.concat().into_boxed_slice()
    }

    fn dfs(&mut self) -> Flow {
        if !self.tick() {
            return Flow::Abort;
        }
        if self.placed == self.n {
            if self.day == self.horizon {
                self.solution = Some(self.witness());
                return Flow::Found;
            }
            let key = self.nogoods.as_ref().map(|_| self.state_key());
            if let (Some(set), Some(key)) = (&self.nogoods, &key) {
                if set.contains(key) {
                    return Flow::Exhausted;
                }
            }
            self.next_day();
            let flow = self.dfs();
            self.prev_day();
            if flow == Flow::Exhausted {
                if let Some(key) = key {
                    self.remember(key);
                }
            }
            return flow;
        }
        for player in self.candidates() {
            self.place(player);
            let flow = if self.feasible() { self.dfs() } else { Flow::Exhausted };
            self.unplace();
            if flow != Flow::Exhausted {
                return flow;
            }
        }
        Flow::Exhausted
    }

    fn remember(&mut self, key: Box<[u8]>) {
        let Some(set) = self.nogoods.as_mut() else { return };
        let cost = key.len() + 32;
        if self.nogood_bytes + cost <= self.nogood_budget {
            self.nogood_bytes += cost;
            set.insert(key);
        }
    }

    /// Follows forced cells to the first choice point.
    fn split(&mut self) -> Split {
        if !self.feasible() {
            return Split::Done(Flow::Exhausted);
        }
        let mut prefix = Vec::new();
        loop {
            if self.placed == self.n {
                if self.day == self.horizon {
                    self.solution = Some(self.witness());
                    return Split::Done(Flow::Found);
                }
                self.next_day();
            }
            let feasible: Vec<usize> = self
                .candidates()
                .into_iter()
                .filter(|&p| {
                    self.place(p);
                    let ok = self.feasible();
                    self.unplace();
                    ok
                })
                .collect();
            match feasible.len() {
                0 => return Split::Done(Flow::Exhausted),
                1 => {
                    self.place(feasible[0]);
                    prefix.push(feasible[0]);
                }
                _ => {
                    return Split::Branches {
                        prefix,
                        branches: feasible,
                    }
                }
            }
        }
    }

    fn finish(&self, flow: Flow) -> SearchStatus {
        match flow {
            Flow::Found => SearchStatus::Sat(self.solution.clone().expect("witness recorded")),
            Flow::Exhausted => SearchStatus::Unsat,
            Flow::Abort => SearchStatus::Timeout,
        }
    }

    fn witness(&self) -> RepeatedAssignment {
        let days = self
            .trail
            .chunks(self.n)
            .map(|chunk| {
                let mut day = vec![0; self.n];
                for (slot, &player) in chunk.iter().enumerate() {
                    day[player - 1] = slot + 1;
                }
                day
            })
            .collect();
        RepeatedAssignment::new(self.n, days).expect("complete days are permutations")
    }
}
