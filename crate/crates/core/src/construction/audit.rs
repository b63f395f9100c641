//! Sampled audits of local splitting and of dense subsets.

use rand::seq::IteratorRandom;
use rand::Rng;
use serde::Serialize;

use super::{stream_rng, streams};
use crate::bitset::VertexSet;
use crate::embed::find_induced_within;
use crate::error::Result;
use crate::graph::Graph;
use crate::oracles::{exists_partition, is_split, ClassRule, FPartition, DEFAULT_WORK_BUDGET};

fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Visits every `k`-subset of `0..n` when there are at most `limit`,
/// returning `false` without visiting otherwise.
fn for_each_subset(n: usize, k: usize, limit: usize, mut visit: impl FnMut(&[usize])) -> bool {
    if binomial_f64(n, k) > limit as f64 {
        return false;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        visit(&c);
        if !next_combination(&mut c, n) {
            return true;
        }
    }
}

fn uniform_subset<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut s = (0..n).choose_multiple(rng, k);
    s.sort_unstable();
    s
}

/// Grows a set from a random vertex through random neighbours, jumping to a
/// random outside vertex when the frontier is empty.
fn grown_subset<R: Rng>(g: &Graph, k: usize, rng: &mut R) -> Vec<usize> {
    let n = g.order();
    let mut set = VertexSet::new(n);
    let mut frontier = VertexSet::new(n);
    while set.len() < k {
        let pool = if frontier.is_empty() {
            VertexSet::full(n).difference(&set)
        } else {
            frontier.clone()
        };
        let v = pool.iter().choose(rng).expect("set smaller than n");
        set.insert(v);
        frontier.union_with(g.neighbors(v));
        frontier.difference_with(&set);
    }
    set.to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalSplitReport {
    pub r: usize,
    pub subset_size: usize,
    pub checked: usize,
    /// Every subset of `subset_size` vertices was checked.
    pub exhaustive: bool,
    pub counterexamples: usize,
    /// Lexicographically first non-split subset seen.
    pub first_counterexample: Option<Vec<usize>>,
}

/// Checks that `G|S` is `{L, M}`-split for subsets `S` of `min(r, n)`
/// vertices: all of them when there are at most `samples`, otherwise
/// `samples` seeded subsets, alternating uniform and neighbourhood-grown.
/// Splitting is hereditary, so smaller subsets need no separate check.
pub fn audit_local_split(
    g: &Graph,
    l: &Graph,
    m: &Graph,
    r: usize,
    samples: usize,
    seed: u64,
) -> Result<LocalSplitReport> {
    let n = g.order();
    let size = r.min(n);
    let mut report = LocalSplitReport {
        r,
        subset_size: size,
        checked: 0,
        exhaustive: false,
        counterexamples: 0,
        first_counterexample: None,
    };
    let mut outcome: Result<()> = Ok(());
    let mut check = |s: &[usize], report: &mut LocalSplitReport| {
        if outcome.is_err() {
            return;
        }
        report.checked += 1;
        match is_split(&g.induced_on(s), l, m) {
            Ok(Some(_)) => {}
            Ok(None) => {
                report.counterexamples += 1;
                if report.first_counterexample.as_deref().is_none_or(|f| s < f) {
                    report.first_counterexample = Some(s.to_vec());
                }
            }
            Err(e) => outcome = Err(e),
        }
    };
    report.exhaustive = for_each_subset(n, size, samples.max(1), |s| check(s, &mut report));
    if !report.exhaustive {
        let mut rng = stream_rng(seed, streams::LOCAL_AUDIT);
        for i in 0..samples {
            let s = if i % 2 == 0 {
                uniform_subset(n, size, &mut rng)
            } else {
                grown_subset(g, size, &mut rng)
            };
            check(&s, &mut report);
        }
    }
    outcome?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub k: usize,
    /// `ceil(n / 2k)`.
    pub subset_size: usize,
    pub checked: usize,
    pub exhaustive: bool,
    /// Subsets inducing no `L` or no `M`.
    pub failures: usize,
    pub failure_rate: f64,
    pub first_failure: Option<Vec<usize>>,
}

/// Checks that sets of `ceil(n / 2k)` vertices induce both `L` and `M`.
pub fn audit_density(g: &Graph, l: &Graph, m: &Graph, k: usize, samples: usize, seed: u64) -> Result<DensityReport> {
    let n = g.order();
    let size = n.div_ceil(2 * k.max(1)).min(n);
    let mut report = DensityReport {
        k,
        subset_size: size,
        checked: 0,
        exhaustive: false,
        failures: 0,
        failure_rate: 0.0,
        first_failure: None,
    };
    let check = |s: &[usize], report: &mut DensityReport| {
        report.checked += 1;
        let set = VertexSet::from_vertices(n, s.iter().copied());
        if find_induced_within(g, &set, l).is_none() || find_induced_within(g, &set, m).is_none() {
            report.failures += 1;
            if report.first_failure.as_deref().is_none_or(|f| s < f) {
                report.first_failure = Some(s.to_vec());
            }
        }
    };
    report.exhaustive = for_each_subset(n, size, samples.max(1), |s| check(s, &mut report));
    if !report.exhaustive {
        let mut rng = stream_rng(seed, streams::DENSITY_AUDIT);
        for _ in 0..samples {
            let s = uniform_subset(n, size, &mut rng);
            check(&s, &mut report);
        }
    }
    if report.checked > 0 {
        report.failure_rate = report.failures as f64 / report.checked as f64;
    }
    Ok(report)
}

/// Exact answer to "does `G` have an `({L, M}, k)`-partition" on tiny
/// graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactCheck {
    pub k: usize,
    pub partition_exists: bool,
    pub partition: Option<FPartition>,
    /// A partition forces some class of at least `n / k` vertices that
    /// misses `L` or `M`, so an exhaustive density audit with no failures
    /// rules one out. `false` flags a contradiction between the two.
    pub consistent_with_density: bool,
}

/// Largest graph handed to the exact oracle.
pub const EXACT_MAX_ORDER: usize = 12;
/// Largest `k` handed to the exact oracle.
pub const EXACT_MAX_K: usize = 3;

/// Runs the exact partition oracle when `|V(G)| <= 12` and `k <= 3`.
pub fn exact_partition_check(
    g: &Graph,
    l: &Graph,
    m: &Graph,
    k: usize,
    density: &DensityReport,
) -> Result<Option<ExactCheck>> {
    if g.order() > EXACT_MAX_ORDER || k == 0 || k > EXACT_MAX_K {
        return Ok(None);
    }
    let found = exists_partition(g, &[l.clone(), m.clone()], k, ClassRule::Free, DEFAULT_WORK_BUDGET)?;
    let exists = found.is_some();
    Ok(Some(ExactCheck {
        k,
        partition_exists: exists,
        consistent_with_density: !(exists && density.exhaustive && density.failures == 0),
        partition: found,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn combinations_are_enumerated() {
        let mut count = 0;
        assert!(for_each_subset(5, 2, 100, |_| count += 1));
        assert_eq!(count, 10);
        assert!(!for_each_subset(50, 5, 100, |_| {}));
        let mut seen = Vec::new();
        for_each_subset(3, 3, 10, |s| seen.push(s.to_vec()));
        assert_eq!(seen, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn triangle_is_not_locally_split() {
        let r = audit_local_split(&complete(3), &complete(2), &complete(2), 3, 10, 0).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.counterexamples, 1);
        assert_eq!(r.first_counterexample, Some(vec![0, 1, 2]));
    }

    #[test]
    fn radius_one_is_always_split() {
        let r = audit_local_split(&complete(6), &complete(2), &complete(2), 1, 100, 0).unwrap();
        assert_eq!(r.counterexamples, 0);
    }

    #[test]
    fn sampled_local_audit_on_a_cycle() {
        let r = audit_local_split(&cycle(40), &complete(2), &complete(2), 6, 200, 5).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.checked, 200);
        assert_eq!(r.counterexamples, 0);
    }

    #[test]
    fn density_on_edgeless_graph_always_fails() {
        let r = audit_density(&stable(10), &complete(2), &complete(2), 2, 30, 0).unwrap();
        assert_eq!(r.failure_rate, 1.0);
        let whole = audit_density(&complete(4), &complete(2), &complete(2), 1, 30, 0).unwrap();
        assert_eq!(whole.subset_size, 2);
        assert_eq!(whole.failures, 0);
    }

    #[test]
    fn exact_check_cross_references_density() {
        let g = complete(5);
        let d = audit_density(&g, &complete(2), &complete(2), 2, 100, 0).unwrap();
        let e = exact_partition_check(&g, &complete(2), &complete(2), 2, &d)
            .unwrap()
            .unwrap();
        assert!(!e.partition_exists);
        assert!(e.consistent_with_density);
        let g = stable(4);
        let d = audit_density(&g, &complete(2), &complete(2), 2, 100, 0).unwrap();
        let e = exact_partition_check(&g, &complete(2), &complete(2), 2, &d)
            .unwrap()
            .unwrap();
        assert!(e.partition_exists && e.consistent_with_density);
        assert!(exact_partition_check(&cycle(13), &complete(2), &complete(2), 2, &d)
            .unwrap()
            .is_none());
    }
}
