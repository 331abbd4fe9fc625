//! Enumeration of multiplicity vectors (n₁, …, n_k) with
//! n₁ + 2n₂ + … + k·n_k = n.
//!
//! These vectors index both the PMF sum and the factorial-moment sum: each
//! one records a partition of n into parts of size at most k by part
//! multiplicities. The enumerator is iterative with O(k) state, since the
//! number of solutions grows like the restricted partition function.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::BigInt;

/// One multiplicity vector: `mults[j-1]` is the number of parts equal to j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartsVector {
    mults: Vec<u32>,
    weight: u32,
}

impl PartsVector {
    /// Multiplicities indexed from part size 1 (`mults()[0]` counts 1s).
    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    /// Multiplicity of parts equal to `j` (1-based).
    pub fn mult(&self, j: u32) -> u32 {
        self.mults[(j - 1) as usize]
    }

    /// The weight n = Σ j·mults[j].
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Total number of parts, Σ mults[j].
    pub fn total_parts(&self) -> u32 {
        self.mults.iter().sum()
    }

    /// Pairs (part size j, multiplicity) for the nonzero entries.
    pub fn nonzero(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i as u32 + 1, m))
    }
}

/// Iterator over all multiplicity vectors of weight `n` with parts ≤ `k`.
///
/// Vectors are produced in descending lexicographic order of
/// (n_k, …, n₁), i.e. partitions in reverse-lexicographic order with the
/// largest parts first; the all-ones partition (n₁ = n) comes last. The
/// order is deterministic and stable, and each instance is an independent,
/// restartable stream.
pub struct WeightedPartitions {
    k: u32,
    next: Option<Vec<u32>>,
    weight: u32,
}

/// Enumerates the solutions of n₁ + 2n₂ + … + k·n_k = n.
///
/// For n = 0 the stream contains exactly the all-zero vector. k = 0 is
/// rejected: the equation has no variables.
pub fn enumerate_weighted(n: u32, k: u32) -> Result<WeightedPartitions> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(WeightedPartitions {
        k,
        next: Some(first_vector(n, k)),
        weight: n,
    })
}

/// Greedy first vector: as many parts of size k as possible, remainder as
/// one smaller part.
fn first_vector(n: u32, k: u32) -> Vec<u32> {
    let mut mults = vec![0u32; k as usize];
    let q = n / k;
    let r = n % k;
    mults[(k - 1) as usize] = q;
    if r > 0 {
        mults[(r - 1) as usize] += 1;
    }
    mults
}

/// Reverse-lex successor: remove one copy of the smallest part j ≥ 2,
/// pool it with all the 1s, and redistribute the pool greedily into parts
/// of size ≤ j − 1. Returns `None` from the all-ones vector.
fn successor(mults: &mut [u32]) -> bool {
    let Some(j) = mults.iter().skip(1).position(|&m| m > 0).map(|i| i + 2) else {
        return false;
    };
    let ones = mults[0];
    let pool = ones + j as u32;
    mults[0] = 0;
    mults[j - 1] -= 1;
    let fill = (j - 1) as u32;
    mults[(fill - 1) as usize] += pool / fill;
    let r = pool % fill;
    if r > 0 {
        mults[(r - 1) as usize] += 1;
    }
    true
}

impl Iterator for WeightedPartitions {
    type Item = PartsVector;

    fn next(&mut self) -> Option<PartsVector> {
        let current = self.next.as_mut()?;
        let item = PartsVector {
            mults: current.clone(),
            weight: self.weight,
        };
        if self.weight == 0 || !successor(current) {
            self.next = None;
        }
        Some(item)
    }
}

impl WeightedPartitions {
    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Number of partitions of n into parts of size ≤ k, by the classical
/// recurrence p(n, k) = p(n − k, k) + p(n, k − 1).
///
/// Deliberately independent of the enumerator so the two can cross-check
/// each other.
pub fn count_weighted(n: u32, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let n = n as usize;
    let k = k as usize;
    // table[i] = p(i, parts <= current k) built up column by column.
    let mut table = vec![BigInt::zero(); n + 1];
    table[0] = BigInt::one();
    for part in 1..=k {
        for i in part..=n {
            let add = table[i - part].clone();
            table[i] += add;
        }
    }
    Ok(table[n].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn collect(n: u32, k: u32) -> Vec<Vec<u32>> {
        enumerate_weighted(n, k)
            .unwrap()
            .map(|p| p.mults().to_vec())
            .collect()
    }

    #[test]
    fn weight_four_parts_up_to_two() {
        // Hand enumeration; the all-(n₁ = n) vector must come last.
        assert_eq!(collect(4, 2), vec![vec![0, 2], vec![2, 1], vec![4, 0]]);
    }

    #[test]
    fn weight_zero_yields_single_zero_vector() {
        assert_eq!(collect(0, 5), vec![vec![0, 0, 0, 0, 0]]);
    }

    #[test]
    fn weight_six_parts_up_to_three() {
        // Brute-force oracle: loop n₃, n₂ and solve for n₁.
        let mut expected = HashSet::new();
        for n3 in 0..=2u32 {
            for n2 in 0..=3u32 {
                let used = 3 * n3 + 2 * n2;
                if used <= 6 {
                    expected.insert(vec![6 - used, n2, n3]);
                }
            }
        }
        let got = collect(6, 3);
        assert_eq!(got.len(), 7);
        assert_eq!(got.iter().cloned().collect::<HashSet<_>>(), expected);
    }

    #[test]
    fn zero_order_is_rejected() {
        assert!(enumerate_weighted(4, 0).is_err());
        assert!(count_weighted(4, 0).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_weighted(4, 2).unwrap(), BigInt::from(3));
        assert_eq!(count_weighted(6, 3).unwrap(), BigInt::from(7));
        for n in 0..40u32 {
            assert_eq!(count_weighted(n, 1).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn stream_count_matches_recurrence() {
        for n in 0..=30u32 {
            for k in 1..=10u32 {
                let streamed = enumerate_weighted(n, k).unwrap().count();
                assert_eq!(
                    BigInt::from(streamed),
                    count_weighted(n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn every_vector_satisfies_weight_constraint() {
        for n in 0..=25u32 {
            for k in 1..=8u32 {
                for p in enumerate_weighted(n, k).unwrap() {
                    let weight: u32 = p.nonzero().map(|(j, m)| j * m).sum();
                    assert_eq!(weight, n);
                    assert_eq!(p.weight(), n);
                }
            }
        }
    }

    #[test]
    fn no_duplicates() {
        for n in 0..=20u32 {
            for k in 1..=6u32 {
                let all = collect(n, k);
                let set: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn large_k_reduces_to_unrestricted_partitions() {
        // For k >= n, parts larger than n never occur and the solution set
        // is in bijection with unrestricted partitions of n.
        for n in 1..=12u32 {
            let base = collect(n, n);
            for k in [n + 1, n + 4] {
                let wide = collect(n, k);
                assert_eq!(wide.len(), base.len());
                for mults in &wide {
                    assert!(mults[n as usize..].iter().all(|&m| m == 0));
                }
                let truncated: Vec<Vec<u32>> =
                    wide.iter().map(|m| m[..n as usize].to_vec()).collect();
                assert_eq!(truncated, base);
            }
        }
    }

    #[test]
    fn streams_are_restartable_and_independent() {
        let a: Vec<_> = enumerate_weighted(9, 4).unwrap().collect();
        let b: Vec<_> = enumerate_weighted(9, 4).unwrap().collect();
        assert_eq!(a, b);
    }
}
