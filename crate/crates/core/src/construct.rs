//! Direct constructions: a top-balanced sequence for every `n`, and a
//! round-robin on cumulative value for one known valuation.

use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::assignment::RepeatedAssignment;
use crate::conditions::ceil_div;
use crate::error::{Error, Result};
use crate::proportionality::Valuation;

/// Builds `n` days in which every player's best item after day `t` is at
/// most `ceil(n / t)`. With a seed, the items outside the priority block
/// are dealt in a shuffled order; the result is top-balanced either way.
pub fn build_top_balanced(n: usize, seed: Option<u64>) -> Result<RepeatedAssignment> {
    if n == 0 || n > u16::MAX as usize {
        return Err(Error::Usage(format!("n = {n} outside [1, 65535]")));
    }
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut days: Vec<Vec<usize>> = vec![(1..=n).collect()];
    let mut best: Vec<usize> = (1..=n).collect();

    for t in 1..n {
        let q = ceil_div(n, t + 1);
        let lacking: Vec<usize> = (0..n).filter(|&p| best[p] > q).collect();
        let borderline: Vec<usize> = (0..n).filter(|&p| best[p] == q).collect();
        assert!(
            lacking.len() <= q,
            "{} players lack an item <= {q} before day {}",
            lacking.len(),
            t + 1
        );
        let priority = (q - 1).max(lacking.len());

        let mut day = vec![0usize; n];
        let mut item = 1;
        for &p in lacking.iter().chain(&borderline) {
            if item > priority {
                break;
            }
            day[p] = item;
            item += 1;
        }
        let mut rest_items: Vec<usize> = (item..=n).collect();
        let mut rest_players: Vec<usize> = (0..n).filter(|&p| day[p] == 0).collect();
        if let Some(rng) = rng.as_mut() {
            rest_items.shuffle(rng);
            rest_players.shuffle(rng);
        }
        for (&p, &x) in rest_players.iter().zip(&rest_items) {
            day[p] = x;
        }
        for p in 0..n {
            best[p] = best[p].min(day[p]);
        }
        debug_assert!(best.iter().all(|&b| b <= q));
        days.push(day);
    }

    let seq = RepeatedAssignment::new(n, days)?;
    for t in 1..=n {
        let (reach, disjoint) = top_balance_claims(&seq, t);
        assert!(reach && disjoint, "construction invariant broken after day {t}");
    }
    Ok(seq)
}

/// The two invariants of the construction after day `t`: every player has
/// received an item `<= ceil(n / t)`, and no player has received two items
/// `< ceil(n / t)`.
pub fn top_balance_claims(seq: &RepeatedAssignment, t: usize) -> (bool, bool) {
    let n = seq.n();
    let q = ceil_div(n, t);
    let mut reach = true;
    let mut disjoint = true;
    for p in 1..=n {
        let items: Vec<usize> = (1..=t).map(|d| seq.item(p, d)).collect();
        reach &= items.iter().any(|&x| x <= q);
        disjoint &= items.iter().filter(|&&x| x < q).count() <= 1;
    }
    (reach, disjoint)
}

/// Players whose best item over days `1..t` exceeds `ceil(n / t)`, i.e.
/// those who must be served on day `t`.
pub fn lacking_players(seq: &RepeatedAssignment, t: usize) -> Vec<usize> {
    let q = ceil_div(seq.n(), t);
    (1..=seq.n())
        .filter(|&p| (1..t).map(|d| seq.item(p, d)).min().unwrap_or(usize::MAX) > q)
        .collect()
}

/// Day 1 is the identity; on each later day the player with the lowest
/// cumulative value gets item 1, the next lowest item 2, and so on, ties
/// broken by player index.
pub fn build_value_greedy(n: usize, days: usize, v: &Valuation) -> Result<RepeatedAssignment> {
    if v.n() != n {
        return Err(Error::Usage(format!("valuation has {} items, expected {n}", v.n())));
    }
    if days == 0 || days > n {
        return Err(Error::Usage(format!("days = {days} outside [1, {n}]")));
    }
    let mut totals = vec![BigRational::zero(); n];
    let mut out = Vec::with_capacity(days);
    for d in 0..days {
        let order: Vec<usize> = if d == 0 {
            (0..n).collect()
        } else {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| totals[a].cmp(&totals[b]).then(a.cmp(&b)));
            order
        };
        let mut day = vec![0usize; n];
        for (rank, &p) in order.iter().enumerate() {
            day[p] = rank + 1;
            totals[p] += v.value(rank + 1);
        }
        out.push(day);
    }
    RepeatedAssignment::new(n, out)
}

/// Envy-freeness up to one item after day `t` under `v`: for all `i != j`,
/// `v(Z_i) >= v(Z_j) - max_{x in Z_j} v_x`.
pub fn is_ef1(seq: &RepeatedAssignment, t: usize, v: &Valuation) -> bool {
    let n = seq.n();
    let bundles: Vec<Vec<usize>> = (1..=n)
        .map(|p| (1..=t).map(|d| seq.item(p, d)).collect())
        .collect();
    let totals: Vec<BigRational> = bundles.iter().map(|b| v.total(b)).collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            if i == j {
                return true;
            }
            let best = bundles[j].iter().min().map(|&x| v.value(x).clone()).unwrap_or_default();
            totals[i] >= &totals[j] - best
        })
    })
}
