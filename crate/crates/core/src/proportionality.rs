//! Ordinal proportionality up to `c` items.
//!
//! A bundle `Z` of `t` items is ordinally PROP-c when, for every strictly
//! decreasing valuation `v`, replacing its `c` worst items by copies of
//! item 1 yields a bundle `C` with `n * v(C) >= v(Z_N^t)`, where `Z_N^t`
//! holds `t` copies of every item. The inequality is linear in `v` and
//! unchanged by adding a constant to all values, so it holds on the whole
//! cone of decreasing valuations exactly when it holds for the top-`k`
//! indicators `u_k`, `k < n`. That gives the integer test
//! `|{x in C : x <= k}| >= ceil(t k / n)` used by [`is_ordinal_prop_c`].
//! [`prop_c_oracle`] evaluates the definition directly on concrete
//! rational valuations instead.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::{Bundle, RepeatedAssignment};
use crate::conditions::{ceil_div, ConditionKind};
use crate::error::{Error, Result};

/// Item values `v_1 > v_2 > ... > v_n`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    values: Vec<BigRational>,
}

impl Valuation {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Usage("valuation needs at least one item".into()));
        }
        if let Some(pos) = values.windows(2).position(|w| w[0] <= w[1]) {
            return Err(Error::Usage(format!(
                "valuation must be strictly decreasing: v_{} = {} <= v_{} = {}",
                pos + 1,
                values[pos],
                pos + 2,
                values[pos + 1]
            )));
        }
        Ok(Valuation { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Valuation::new(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    /// Parses a JSON array of numbers or `"p/q"` strings.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::Parse {
            position: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let values = raw
            .iter()
            .enumerate()
            .map(|(i, v)| parse_rational(v).ok_or_else(|| Error::Parse {
                position: format!("element {}", i + 1),
                message: format!("not an exact rational: {v}"),
            }))
            .collect::<Result<Vec<_>>>()?;
        Valuation::new(values)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `v_item`, 1-based.
    pub fn value(&self, item: usize) -> &BigRational {
        &self.values[item - 1]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `v(Z)` for a multiset of items.
    pub fn total<'a>(&self, items: impl IntoIterator<Item = &'a usize>) -> BigRational {
        items
            .into_iter()
            .fold(BigRational::zero(), |acc, &x| acc + self.value(x))
    }
}

fn parse_rational(v: &serde_json::Value) -> Option<BigRational> {
    match v {
        serde_json::Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                return Some(BigRational::from_integer(i.into()));
            }
            // decimal literals are read digit by digit, never through f64
            parse_decimal(&num.to_string())
        }
        serde_json::Value::String(s) => match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                (!q.is_zero()).then(|| BigRational::new(p, q))
            }
            None => parse_decimal(s.trim()),
        },
        _ => None,
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    if s.contains(['e', 'E']) {
        return None;
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    Some(BigRational::new(digits, scale))
}

/// Outcome of the ordinal PROP-c test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum PropVerdict {
    Satisfied,
    /// The top-`threshold` indicator valuation (smallest failing one)
    /// violates proportionality.
    Violated { threshold: usize },
}

impl PropVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PropVerdict::Satisfied)
    }
}

/// The bundle with its `min(c, t)` worst items swapped for copies of item 1.
pub fn adjusted_bundle(bundle: &Bundle, c: usize) -> Vec<usize> {
    let t = bundle.len();
    let keep = t - c.min(t);
    let mut out = vec![1; t - keep];
    out.extend_from_slice(&bundle.items()[..keep]);
    out.sort_unstable();
    out
}

fn check_shape(bundle: &Bundle, n: usize, t: usize) -> Result<()> {
    if n == 0 || t == 0 || t > n {
        return Err(Error::Usage(format!("need 1 <= t <= n, got t = {t}, n = {n}")));
    }
    if bundle.len() != t {
        return Err(Error::Usage(format!(
            "bundle has {} items, expected t = {t}",
            bundle.len()
        )));
    }
    if let Some(&x) = bundle.items().iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::Usage(format!("item {x} outside [1, {n}]")));
    }
    Ok(())
}

/// Decides ordinal PROP-c for a bundle of `t` items out of `n`.
pub fn is_ordinal_prop_c(bundle: &Bundle, n: usize, t: usize, c: usize) -> Result<PropVerdict> {
    check_shape(bundle, n, t)?;
    let adjusted = adjusted_bundle(bundle, c);
    for k in 1..n {
        let held = adjusted.partition_point(|&x| x <= k);
        if held < ceil_div(t * k, n) {
            return Ok(PropVerdict::Violated { threshold: k });
        }
    }
    Ok(PropVerdict::Satisfied)
}

/// How the `c` extra items enter the bundle in the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleSemantics {
    /// Replace the `c` worst items by item 1; any strictly decreasing `v`.
    Swap,
    /// Add `c` copies of item 1 to the `t` items; non-negative `v` only.
    AddBest,
}

/// Evaluates `n * v(C) >= t * sum(v)` on concrete valuations: the `n - 1`
/// threshold valuations made strictly decreasing by a small exact
/// perturbation, then `samples` random positive decreasing valuations.
/// Returns false iff some tested valuation violates the inequality.
pub fn prop_c_oracle(
    bundle: &Bundle,
    n: usize,
    t: usize,
    c: usize,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    prop_c_oracle_with(bundle, n, t, c, samples, seed, OracleSemantics::Swap)
}

pub fn prop_c_oracle_with(
    bundle: &Bundle,
    n: usize,
    t: usize,
    c: usize,
    samples: usize,
    seed: u64,
    semantics: OracleSemantics,
) -> Result<bool> {
    check_shape(bundle, n, t)?;
    let (mine, multiplicity): (Vec<usize>, usize) = match semantics {
        OracleSemantics::Swap => (adjusted_bundle(bundle, c), t),
        OracleSemantics::AddBest => {
            let mut items = bundle.items().to_vec();
            items.extend(std::iter::repeat_n(1, c));
            (items, t)
        }
    };
    let nn = BigRational::from_integer(n.into());
    let tt = BigRational::from_integer(multiplicity.into());
    let proportional = |v: &Valuation| -> bool {
        let total: BigRational = v.values().iter().sum();
        &nn * v.total(&mine) >= &tt * total
    };

    // Any integer-valued violation is at least 1 in size; the perturbation
    // moves either side by at most n^2 (t + c) eps.
    let eps = BigRational::new(
        BigInt::one(),
        BigInt::from(4 * n * n * (t + c + 1)),
    );
    for k in 1..n {
        let values = (1..=n)
            .map(|x| {
                let top = if x <= k { BigRational::one() } else { BigRational::zero() };
                match semantics {
                    OracleSemantics::Swap => top - &eps * BigInt::from(x - 1),
                    OracleSemantics::AddBest => top + &eps * BigInt::from(n - x),
                }
            })
            .collect();
        if !proportional(&Valuation::new(values)?) {
            return Ok(false);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v = random_valuation(n, &mut rng);
        debug_assert!(v.values().iter().all(|x| x.is_positive()));
        if !proportional(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random strictly decreasing valuation with positive rational entries.
pub fn random_valuation(n: usize, rng: &mut impl Rng) -> Valuation {
    let mut values = Vec::with_capacity(n);
    let mut current = BigRational::new(rng.random_range(1..=20).into(), rng.random_range(1..=12).into());
    values.push(current.clone());
    for _ in 1..n {
        // gaps are occasionally huge, to reach valuations near the extreme rays
        let scale: i64 = if rng.random_bool(0.2) { 1000 } else { 1 };
        let gap = BigRational::new(
            (rng.random_range(1..=30) * scale).into(),
            rng.random_range(1..=12).into(),
        );
        current += gap;
        values.push(current.clone());
    }
    values.reverse();
    Valuation::new(values).expect("strictly decreasing by construction")
}

/// First `(agent, day)` at which the cumulative bundle is not ordinally PROP-c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropFailure {
    pub agent: usize,
    pub day: usize,
    pub threshold: usize,
}

/// Checks ordinal PROP-c for every player after every day, in day-major
/// order, returning the first failure.
pub fn is_perpetually_prop_c(seq: &RepeatedAssignment, c: usize) -> Option<PropFailure> {
    let n = seq.n();
    for day in 1..=seq.len() {
        for agent in 1..=n {
            let bundle = seq.bundle(agent, day).expect("indices in range");
            if let PropVerdict::Violated { threshold } =
                is_ordinal_prop_c(&bundle, n, day, c).expect("well-formed bundle")
            {
                return Some(PropFailure { agent, day, threshold });
            }
        }
    }
    None
}

/// A dominance bijection certifying ordinal PROP1 for one bundle.
///
/// `source` lays out `D_i` (n clones of each item of the adjusted bundle
/// `C_i`) and `image` lays out `Z_N^t` (t clones of each item), both sorted
/// best-first in `n` rows of `t` cells. The bijection maps each source cell
/// to the image cell at the same position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropCertificate {
    pub n: usize,
    pub t: usize,
    pub agent: usize,
    /// The condition whose bounds the bundle meets.
    pub basis: ConditionKind,
    /// Worst items swapped for item 1 to form `adjusted` (0 or 1).
    pub replaced: usize,
    pub adjusted: Vec<usize>,
    pub source: Vec<Vec<usize>>,
    pub image: Vec<Vec<usize>>,
}

impl PropCertificate {
    /// Image of the source clone at `(row, col)`.
    pub fn map(&self, row: usize, col: usize) -> (usize, usize) {
        (row, col)
    }

    /// Checks both multisets and dominance `source <= image` cell by cell.
    pub fn verify(&self) -> bool {
        let (n, t) = (self.n, self.t);
        if self.source.len() != n || self.image.len() != n {
            return false;
        }
        if self.source.iter().chain(&self.image).any(|row| row.len() != t) {
            return false;
        }
        let mut image_counts = vec![0usize; n + 1];
        let mut source_counts = vec![0usize; n + 1];
        for row in 0..n {
            for col in 0..t {
                let (r, c) = self.map(row, col);
                let (x, y) = (self.source[row][col], self.image[r][c]);
                if x == 0 || x > n || y == 0 || y > n || x > y {
                    return false;
                }
                source_counts[x] += 1;
                image_counts[y] += 1;
            }
        }
        let mut expected_source = vec![0usize; n + 1];
        for &x in &self.adjusted {
            expected_source[x] += n;
        }
        image_counts[1..].iter().all(|&k| k == t) && source_counts == expected_source
    }

    /// Rows of `image` then `source` side by side, `2t` fields per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (image, source) in self.image.iter().zip(&self.source) {
            let cells: Vec<String> = image.iter().chain(source).map(|x| x.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Builds the dominance bijection for `agent` after `day`.
pub fn build_prop1_certificate(seq: &RepeatedAssignment, agent: usize, day: usize) -> Result<PropCertificate> {
    let bundle = seq.bundle(agent, day)?;
    prop1_certificate_for_bundle(&bundle, seq.n())
}

/// Certificate for a bundle of `t = |bundle|` items out of `n`. Requires the
/// weakly-balanced bounds `Z[j] <= floor(j n / t + 1)`; the error names the
/// first failing index.
pub fn prop1_certificate_for_bundle(bundle: &Bundle, n: usize) -> Result<PropCertificate> {
    let t = bundle.len();
    check_shape(bundle, n, t)?;
    let items = bundle.items();
    for j in 1..=t {
        let bound = ConditionKind::WeakBalanced.bound(n, t, j);
        if items[j - 1] > bound {
            return Err(Error::Precondition {
                j,
                bound,
                actual: items[j - 1],
            });
        }
    }
    let basis = if (1..=t).all(|j| items[j - 1] <= ConditionKind::Balanced.bound(n, t, j)) {
        ConditionKind::Balanced
    } else {
        ConditionKind::WeakBalanced
    };
    // the bundle itself is used when it already dominates, which happens
    // once every item has been received
    let image: Vec<Vec<usize>> = (1..=n).map(|x| vec![x; t]).collect();
    let mut last = None;
    for replaced in 0..=1 {
        let adjusted = adjusted_bundle(bundle, replaced);
        let flat_source: Vec<usize> = adjusted
            .iter()
            .flat_map(|&x| std::iter::repeat_n(x, n))
            .collect();
        let cert = PropCertificate {
            n,
            t,
            agent: bundle.owner,
            basis,
            replaced,
            adjusted,
            source: flat_source.chunks(t).map(<[usize]>::to_vec).collect(),
            image: image.clone(),
        };
        if cert.verify() {
            return Ok(cert);
        }
        last = Some(cert);
    }
    Err(Error::Internal(format!(
        "dominance fails for bundle {:?} with n = {n}: {:?}",
        bundle.items(),
        last.map(|c| c.source)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn bundle(items: &[usize]) -> Bundle {
        Bundle::anonymous(items.to_vec())
    }

    #[test]
    fn published_counterexample() {
        let v = is_ordinal_prop_c(&bundle(&[5, 6]), 6, 2, 1).unwrap();
        assert_eq!(v, PropVerdict::Violated { threshold: 4 });
        assert!(!prop_c_oracle(&bundle(&[5, 6]), 6, 2, 1, 20, 0).unwrap());
        // v5 = v6 = 0 and v1..v4 = 1 is the tight threshold valuation
        let nn = BigRational::from_integer(6.into());
        let c = [1usize, 5];
        let u4 = [1, 1, 1, 1, 0, 0].map(|x: i64| BigRational::from_integer(x.into()));
        let mine: BigRational = c.iter().map(|&x| u4[x - 1].clone()).sum();
        let total: BigRational = u4.iter().sum::<BigRational>() * BigRational::from_integer(2.into());
        assert!(nn * mine < total);
    }

    #[test]
    fn trivial_verdicts() {
        for n in 1..=8 {
            assert!(is_ordinal_prop_c(&bundle(&[1]), n, 1, 0).unwrap().holds());
        }
        assert!(is_ordinal_prop_c(&bundle(&[1, 10, 7]), 10, 3, 1).unwrap().holds());
        assert!(is_ordinal_prop_c(&bundle(&[6, 6, 5]), 6, 3, 3).unwrap().holds());
        assert!(is_ordinal_prop_c(&bundle(&[6, 6, 5]), 6, 3, 7).unwrap().holds());
        assert!(prop_c_oracle(&bundle(&[2]), 2, 1, 1, 10, 1).unwrap());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(is_ordinal_prop_c(&bundle(&[1, 2]), 6, 3, 1), Err(Error::Usage(_))));
        assert!(matches!(is_ordinal_prop_c(&bundle(&[1, 9]), 6, 2, 1), Err(Error::Usage(_))));
        assert!(matches!(prop_c_oracle(&bundle(&[1]), 6, 2, 1, 1, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn valuation_must_decrease() {
        assert!(Valuation::from_integers(&[3, 2, 1]).is_ok());
        assert!(matches!(Valuation::from_integers(&[3, 3, 1]), Err(Error::Usage(_))));
        assert!(matches!(Valuation::from_integers(&[1, 2]), Err(Error::Usage(_))));
        let v = Valuation::from_json(r#"[3, "5/2", 1.25, "-1/3"]"#).unwrap();
        assert_eq!(v.value(2), &BigRational::new(5.into(), 2.into()));
        assert_eq!(v.value(3), &BigRational::new(5.into(), 4.into()));
        assert!(Valuation::from_json(r#"[1, true]"#).is_err());
    }

    #[test]
    fn perpetual_checks_on_fixtures() {
        assert_eq!(
            is_perpetually_prop_c(&fixtures::n6_cyclic(), 1),
            Some(PropFailure { agent: 5, day: 2, threshold: 4 })
        );
        assert_eq!(is_perpetually_prop_c(&fixtures::n12_weak(), 1), None);
        assert_eq!(is_perpetually_prop_c(&fixtures::n11_balanced(), 1), None);
        assert_eq!(is_perpetually_prop_c(&fixtures::n10_balanced(), 1), None);
    }

    #[test]
    fn swap_and_add_agree_for_nonnegative_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let n = rng.random_range(1..=8);
            let t = rng.random_range(1..=n);
            let items: Vec<usize> = (0..t).map(|_| rng.random_range(1..=n)).collect();
            let c = rng.random_range(0..=3);
            let b = bundle(&items);
            let exact = is_ordinal_prop_c(&b, n, t, c).unwrap().holds();
            let add = prop_c_oracle_with(&b, n, t, c, 5, 3, OracleSemantics::AddBest).unwrap();
            assert_eq!(exact, add, "{items:?} n={n} c={c}");
        }
    }

    /// The worst balanced bundle for n = 10, t = 6 and its weak variant
    /// reproduce the printed source grids row by row.
    #[test]
    fn certificate_grids_match_printed_tables() {
        let balanced = prop1_certificate_for_bundle(&bundle(&[2, 4, 5, 7, 9, 10]), 10).unwrap();
        let expected: Vec<Vec<usize>> = [
            [1, 1, 1, 1, 1, 1],
            [1, 1, 1, 1, 2, 2],
            [2, 2, 2, 2, 2, 2],
            [2, 2, 4, 4, 4, 4],
            [4, 4, 4, 4, 4, 4],
            [5, 5, 5, 5, 5, 5],
            [5, 5, 5, 5, 7, 7],
            [7, 7, 7, 7, 7, 7],
            [7, 7, 9, 9, 9, 9],
            [9, 9, 9, 9, 9, 9],
        ]
        .iter()
        .map(|r| r.to_vec())
        .collect();
        assert_eq!(balanced.source, expected);
        assert_eq!(balanced.basis, ConditionKind::Balanced);
        assert_eq!(balanced.image[9], vec![10; 6]);

        let weak = prop1_certificate_for_bundle(&bundle(&[2, 4, 6, 7, 9, 10]), 10).unwrap();
        let mut expected_weak = expected.clone();
        expected_weak[5] = vec![6; 6];
        expected_weak[6] = vec![6, 6, 6, 6, 7, 7];
        assert_eq!(weak.source, expected_weak);
        assert_eq!(weak.basis, ConditionKind::WeakBalanced);
    }

    #[test]
    fn certificate_on_fixture_dominates_reference() {
        let cert = build_prop1_certificate(&fixtures::n10_balanced(), 1, 6).unwrap();
        let reference = prop1_certificate_for_bundle(&bundle(&[2, 4, 5, 7, 9, 10]), 10).unwrap();
        assert!(cert.verify());
        for (mine, theirs) in cert.source.iter().zip(&reference.source) {
            assert!(mine.iter().zip(theirs).all(|(a, b)| a <= b));
        }
        assert_eq!(cert.agent, 1);
        assert_eq!(cert.to_csv().lines().count(), 10);
        assert!(cert.to_csv().lines().all(|l| l.split(',').count() == 12));
    }

    #[test]
    fn certificate_at_full_length_is_identity_blocks() {
        let seq = fixtures::n11_balanced();
        for agent in 1..=11 {
            let cert = build_prop1_certificate(&seq, agent, 11).unwrap();
            assert_eq!(cert.replaced, 0);
            assert_eq!(cert.source, cert.image);
        }
    }

    #[test]
    fn certificate_rejects_unbalanced_bundle() {
        let err = build_prop1_certificate(&fixtures::n6_cyclic(), 5, 2).unwrap_err();
        assert_eq!(err, Error::Precondition { j: 1, bound: 4, actual: 5 });
    }
}
