use super::multi_index::MultiIndex;

/// Every ordered `k`-tuple `(m_1, ..., m_k)` of multi-indices summing to a
/// target, each produced once, in lexicographic order of the tuples under the
/// canonical multi-index ordering.
#[derive(Debug, Clone)]
pub struct CompositionStream {
    inner: std::vec::IntoIter<Vec<MultiIndex>>,
}

impl Iterator for CompositionStream {
    type Item = Vec<MultiIndex>;

    fn next(&mut self) -> Option<Self::Item> {
        self.inner.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for CompositionStream {}

/// Weak compositions of `total` into `k` ordered nonnegative parts.
fn weak_compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, slots: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            current.push(rest);
            out.push(current.clone());
            current.pop();
            return;
        }
        for take in 0..=rest {
            current.push(take);
            go(rest - take, slots - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(total, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn enumerate_compositions(
    target: &MultiIndex,
    k: usize,
    allow_zero: bool,
) -> CompositionStream {
    let mut result = Vec::new();
    if k == 0 {
        if target.is_zero() {
            result.push(Vec::new());
        }
        return CompositionStream {
            inner: result.into_iter(),
        };
    }

    let entries: Vec<(u32, u32)> = target.iter().collect();
    let splits: Vec<Vec<Vec<u32>>> = entries
        .iter()
        .map(|&(_, mult)| weak_compositions(mult, k))
        .collect();

    // odometer over the per-index splits
    let mut choice = vec![0usize; entries.len()];
    loop {
        let mut parts = vec![MultiIndex::zero(); k];
        for (slot, &(a, _)) in entries.iter().enumerate() {
            for (part, &count) in parts.iter_mut().zip(&splits[slot][choice[slot]]) {
                part.add_at(a, count);
            }
        }
        if allow_zero || parts.iter().all(|p| !p.is_zero()) {
            result.push(parts);
        }

        let mut pos = 0;
        loop {
            if pos == entries.len() {
                result.sort();
                return CompositionStream {
                    inner: result.into_iter(),
                };
            }
            choice[pos] += 1;
            if choice[pos] < splits[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::exact::{binomial, multi_indices_up_to_weight};

    /// Brute force: every k-tuple of sub-multi-indices of the target, kept
    /// when the parts add up.
    fn brute_force(target: &MultiIndex, k: usize, allow_zero: bool) -> BTreeSet<Vec<MultiIndex>> {
        let subs: Vec<MultiIndex> = multi_indices_up_to_weight(target.weight())
            .into_iter()
            .filter(|m| m.iter().all(|(a, c)| c <= target.get(a)))
            .collect();
        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; k];
        loop {
            let parts: Vec<MultiIndex> = idx.iter().map(|&i| subs[i].clone()).collect();
            let sum = parts.iter().fold(MultiIndex::zero(), |acc, p| acc.plus(p));
            if sum == *target && (allow_zero || parts.iter().all(|p| !p.is_zero())) {
                out.insert(parts);
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < subs.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn small_examples() {
        let d1 = MultiIndex::delta(1);
        let d2 = MultiIndex::delta(2);
        assert_eq!(enumerate_compositions(&d1, 2, false).count(), 0);
        let with_zero: Vec<_> = enumerate_compositions(&d1, 2, true).collect();
        assert_eq!(
            with_zero,
            vec![
                vec![MultiIndex::zero(), d1.clone()],
                vec![d1.clone(), MultiIndex::zero()]
            ]
        );
        let target = d1.plus(&d2);
        let got: Vec<_> = enumerate_compositions(&target, 2, false).collect();
        assert_eq!(got, vec![vec![d1.clone(), d2.clone()], vec![d2, d1]]);
        let expected: Vec<_> = brute_force(&target, 2, false).into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn matches_brute_force_and_counts() {
        for target in multi_indices_up_to_weight(5) {
            for k in 1..=3 {
                for allow_zero in [false, true] {
                    let got: Vec<_> = enumerate_compositions(&target, k, allow_zero).collect();
                    let unique: BTreeSet<_> = got.iter().cloned().collect();
                    assert_eq!(unique.len(), got.len(), "duplicates for {target} k={k}");
                    assert!(got.windows(2).all(|w| w[0] < w[1]), "order for {target}");
                    assert_eq!(unique, brute_force(&target, k, allow_zero));
                }
            }
        }
    }

    #[test]
    fn zero_parts_inclusion_exclusion() {
        // with zeros allowed = sum over the number j of nonzero slots of C(k, j) * (nonzero count with j parts)
        for target in multi_indices_up_to_weight(5) {
            for k in 1..=5usize {
                let with_zero = enumerate_compositions(&target, k, true).count() as u64;
                let assembled: u64 = (0..=k)
                    .map(|j| {
                        let strict = enumerate_compositions(&target, j, false).count() as u64;
                        let c: u64 = binomial(k as u64, j as u64).try_into().unwrap();
                        c * strict
                    })
                    .sum();
                assert_eq!(with_zero, assembled, "target {target} k={k}");
            }
        }
    }
}
