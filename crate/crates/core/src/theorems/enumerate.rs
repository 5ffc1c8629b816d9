//! Drivers running a per-map check over every map, every permutation, or a
//! seeded sample of maps on `n` points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functigraph::VertexMap;

/// Largest `n` for [`MapFamily::All`] (`7^7 = 823543` maps).
pub const ALL_MAPS_MAX_N: usize = 7;
/// Largest `n` for [`MapFamily::Permutations`] (`9! = 362880` maps).
pub const PERMUTATIONS_MAX_N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum MapFamily {
    /// All `n^n` maps, index order with `f(u1)` most significant.
    All,
    /// All `n!` permutations in lexicographic order.
    Permutations,
    /// `count` uniform maps drawn from a ChaCha8 stream seeded with `seed`.
    Sample { seed: u64, count: u64 },
}

impl MapFamily {
    pub fn size(&self, n: usize) -> Result<u64> {
        match *self {
            MapFamily::All => {
                if n > ALL_MAPS_MAX_N {
                    return Err(Error::UnsupportedSize {
                        what: "exhaustive map enumeration n",
                        actual: n,
                        limit: ALL_MAPS_MAX_N,
                    });
                }
                Ok((n as u64).pow(n as u32))
            }
            MapFamily::Permutations => {
                if n > PERMUTATIONS_MAX_N {
                    return Err(Error::UnsupportedSize {
                        what: "permutation enumeration n",
                        actual: n,
                        limit: PERMUTATIONS_MAX_N,
                    });
                }
                Ok((1..=n as u64).product())
            }
            MapFamily::Sample { count, .. } => Ok(count),
        }
    }
}

/// The map at position `index` of the all-maps order.
pub fn map_at_index(n: usize, mut index: u64) -> VertexMap {
    let mut targets = vec![0; n];
    for t in targets.iter_mut().rev() {
        *t = (index % n as u64) as usize;
        index /= n as u64;
    }
    VertexMap::new(targets).expect("digits lie below n")
}

/// The permutation at position `index` of the lexicographic order.
pub fn permutation_at_index(n: usize, mut index: u64) -> VertexMap {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut fact: u64 = (1..n as u64).product();
    let mut targets = Vec::with_capacity(n);
    for remaining in (1..=n).rev() {
        let pick = (index / fact) as usize;
        index %= fact;
        targets.push(pool.remove(pick));
        if remaining > 1 {
            fact /= remaining as u64 - 1;
        }
    }
    VertexMap::new(targets).expect("a permutation of 0..n")
}

/// `count` maps accepted by `keep`, drawn in order from one seeded stream.
pub fn sample_maps(
    n: usize,
    seed: u64,
    count: usize,
    mut keep: impl FnMut(&VertexMap) -> bool,
) -> Vec<VertexMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let f =
            VertexMap::new((0..n).map(|_| rng.gen_range(0..n)).collect()).expect("targets below n");
        if keep(&f) {
            out.push(f);
        }
    }
    out
}

/// Result of a per-map check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapOutcome {
    /// False when the map is outside the check's hypothesis; such maps are
    /// counted but neither pass nor fail.
    pub applicable: bool,
    pub passed: bool,
    pub gamma: Option<usize>,
    /// A check-specific yes/no observation, tallied separately.
    pub flag: Option<bool>,
}

impl MapOutcome {
    pub fn skipped() -> Self {
        Self::default()
    }

    pub fn checked(passed: bool, gamma: Option<usize>) -> Self {
        Self {
            applicable: true,
            passed,
            gamma,
            flag: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: u64,
    /// 0-based targets.
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub n: usize,
    pub family: MapFamily,
    pub total: u64,
    pub applicable: u64,
    pub passed: u64,
    pub failed: u64,
    pub min_gamma: Option<usize>,
    pub max_gamma: Option<usize>,
    pub flagged_true: u64,
    pub flagged_false: u64,
    pub first_failure: Option<Counterexample>,
}

#[derive(Default)]
struct Tally {
    total: u64,
    applicable: u64,
    passed: u64,
    failed: u64,
    min_gamma: Option<usize>,
    max_gamma: Option<usize>,
    flagged_true: u64,
    flagged_false: u64,
    first_failure: Option<(u64, VertexMap)>,
}

impl Tally {
    fn one(index: u64, f: VertexMap, o: MapOutcome) -> Self {
        let mut t = Tally {
            total: 1,
            min_gamma: o.gamma,
            max_gamma: o.gamma,
            ..Tally::default()
        };
        match o.flag {
            Some(true) => t.flagged_true = 1,
            Some(false) => t.flagged_false = 1,
            None => {}
        }
        if o.applicable {
            t.applicable = 1;
            if o.passed {
                t.passed = 1;
            } else {
                t.failed = 1;
                t.first_failure = Some((index, f));
            }
        }
        t
    }

    fn merge(self, other: Tally) -> Tally {
        let pick = |a: Option<usize>, b: Option<usize>, f: fn(usize, usize) -> usize| match (a, b) {
            (Some(x), Some(y)) => Some(f(x, y)),
            (x, None) => x,
            (None, y) => y,
        };
        let first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, None) => a,
            (None, b) => b,
        };
        Tally {
            total: self.total + other.total,
            applicable: self.applicable + other.applicable,
            passed: self.passed + other.passed,
            failed: self.failed + other.failed,
            min_gamma: pick(self.min_gamma, other.min_gamma, usize::min),
            max_gamma: pick(self.max_gamma, other.max_gamma, usize::max),
            flagged_true: self.flagged_true + other.flagged_true,
            flagged_false: self.flagged_false + other.flagged_false,
            first_failure,
        }
    }
}

/// Runs `check` over the family in parallel. The summary does not depend on
/// scheduling: counts and extremes are commutative and the reported
/// counterexample is the failing map with the lowest index.
pub fn enumerate_with<F>(n: usize, family: MapFamily, check: F) -> Result<EnumerationSummary>
where
    F: Fn(&VertexMap) -> Result<MapOutcome> + Sync,
{
    if n == 0 {
        return Err(crate::error::invalid("enumeration needs n >= 1"));
    }
    let total = family.size(n)?;
    let run = |index: u64, f: VertexMap| -> Result<Tally> {
        let o = check(&f)?;
        Ok(Tally::one(index, f, o))
    };
    let tally = match family {
        MapFamily::All => (0..total)
            .into_par_iter()
            .map(|i| run(i, map_at_index(n, i)))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?,
        MapFamily::Permutations => (0..total)
            .into_par_iter()
            .map(|i| run(i, permutation_at_index(n, i)))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?,
        MapFamily::Sample { seed, count } => sample_maps(n, seed, count as usize, |_| true)
            .into_par_iter()
            .enumerate()
            .map(|(i, f)| run(i as u64, f))
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?,
    };
    Ok(tally.finish(n, family))
}

/// Like [`MapFamily::Sample`], but only maps accepted by `keep` are drawn
/// and counted.
pub fn enumerate_filtered_sample<K, F>(
    n: usize,
    seed: u64,
    count: u64,
    keep: K,
    check: F,
) -> Result<EnumerationSummary>
where
    K: FnMut(&VertexMap) -> bool,
    F: Fn(&VertexMap) -> Result<MapOutcome> + Sync,
{
    let tally = sample_maps(n, seed, count as usize, keep)
        .into_par_iter()
        .enumerate()
        .map(|(i, f)| {
            let o = check(&f)?;
            Ok(Tally::one(i as u64, f, o))
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    Ok(tally.finish(n, MapFamily::Sample { seed, count }))
}

impl Tally {
    fn finish(self, n: usize, family: MapFamily) -> EnumerationSummary {
        let tally = self;
        EnumerationSummary {
            n,
            family,
            total: tally.total,
            applicable: tally.applicable,
            passed: tally.passed,
            failed: tally.failed,
            min_gamma: tally.min_gamma,
            max_gamma: tally.max_gamma,
            flagged_true: tally.flagged_true,
            flagged_false: tally.flagged_false,
            first_failure: tally.first_failure.map(|(index, f)| Counterexample {
                index,
                targets: f.targets().to_vec(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_orders() {
        assert_eq!(map_at_index(3, 0).targets(), &[0, 0, 0]);
        assert_eq!(map_at_index(3, 1).targets(), &[0, 0, 1]);
        assert_eq!(map_at_index(3, 26).targets(), &[2, 2, 2]);
        let perms: Vec<Vec<usize>> = (0..6)
            .map(|i| permutation_at_index(3, i).targets().to_vec())
            .collect();
        assert_eq!(
            perms,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        let mut all: Vec<Vec<usize>> = (0..120)
            .map(|i| permutation_at_index(5, i).targets().to_vec())
            .collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        all.dedup();
        assert_eq!(all.len(), 120);
    }

    #[test]
    fn limits() {
        assert!(MapFamily::All.size(8).is_err());
        assert!(MapFamily::Permutations.size(10).is_err());
        assert_eq!(MapFamily::All.size(7).unwrap(), 823_543);
        assert_eq!(MapFamily::Permutations.size(8).unwrap(), 40_320);
    }

    #[test]
    fn summary_is_deterministic_and_reports_lowest_failure() {
        let check = |f: &VertexMap| {
            Ok(MapOutcome::checked(
                !f.is_constant(),
                Some(f.map_range().len()),
            ))
        };
        let a = enumerate_with(4, MapFamily::All, check).unwrap();
        let b = enumerate_with(4, MapFamily::All, check).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total, 256);
        assert_eq!(a.failed, 4);
        assert_eq!(a.first_failure.as_ref().unwrap().index, 0);
        assert_eq!((a.min_gamma, a.max_gamma), (Some(1), Some(4)));

        let s1 = enumerate_with(
            5,
            MapFamily::Sample {
                seed: 9,
                count: 300,
            },
            check,
        )
        .unwrap();
        let s2 = enumerate_with(
            5,
            MapFamily::Sample {
                seed: 9,
                count: 300,
            },
            check,
        )
        .unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.total, 300);
    }

    #[test]
    fn filtered_samples() {
        let maps = sample_maps(6, 1, 50, |f| !f.is_permutation());
        assert_eq!(maps.len(), 50);
        assert!(maps.iter().all(|f| !f.is_permutation()));
        assert_eq!(maps, sample_maps(6, 1, 50, |f| !f.is_permutation()));
    }
}
