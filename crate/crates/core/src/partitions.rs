//! Set partitions as restricted-growth strings.

use serde::{Deserialize, Serialize};

/// `labels[i]` is the block of element i; block k first appears after all
/// blocks below k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    labels: Vec<u8>,
    blocks: usize,
}

impl SetPartition {
    /// Validates the restricted-growth property.
    pub fn from_rgs(labels: Vec<u8>) -> Option<Self> {
        let mut next = 0u8;
        for &l in &labels {
            if l > next {
                return None;
            }
            if l == next {
                next = next.checked_add(1)?;
            }
        }
        Some(SetPartition { blocks: next as usize, labels })
    }

    /// Canonicalises arbitrary block labels.
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut map: Vec<(usize, u8)> = Vec::new();
        let labels = raw
            .iter()
            .map(|&r| match map.iter().find(|(k, _)| *k == r) {
                Some(&(_, v)) => v,
                None => {
                    let v = map.len() as u8;
                    map.push((r, v));
                    v
                }
            })
            .collect();
        SetPartition { blocks: map.len(), labels }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut raw = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n || raw[x] != usize::MAX {
                    return None;
                }
                raw[x] = b;
            }
        }
        if raw.contains(&usize::MAX) || blocks.iter().any(|b| b.is_empty()) {
            return None;
        }
        Some(SetPartition::from_labels(&raw))
    }

    pub fn singletons(n: usize) -> Self {
        SetPartition { labels: (0..n as u8).collect(), blocks: n }
    }

    pub fn single_block(n: usize) -> Self {
        SetPartition { labels: vec![0; n], blocks: n.min(1) }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.labels[i] as usize
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.blocks];
        for &l in &self.labels {
            out[l as usize] += 1;
        }
        out
    }
}

/// Bell numbers B_0..=B_n (saturating at u128::MAX).
pub fn bell_numbers(n: usize) -> Vec<u128> {
    // Bell triangle
    let mut out = vec![1u128];
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for &x in &row {
            let last = *next.last().expect("nonempty");
            next.push(last.saturating_add(x));
        }
        out.push(next[0]);
        row = next;
    }
    out.truncate(n + 1);
    out
}

pub fn bell(n: usize) -> u128 {
    bell_numbers(n)[n]
}

/// Visits every restricted-growth string of length `n` with the given prefix,
/// in lexicographic order. `visit` sees the labels and the block count.
pub fn for_each_rgs_with_prefix(n: usize, prefix: &[u8], mut visit: impl FnMut(&[u8], usize)) {
    let mut labels = vec![0u8; n];
    let mut maxes = vec![0u8; n + 1];
    // maxes[i] = number of blocks used by labels[..i]
    if prefix.len() > n {
        return;
    }
    for (i, &l) in prefix.iter().enumerate() {
        if l > maxes[i] {
            return;
        }
        labels[i] = l;
        maxes[i + 1] = maxes[i].max(l + 1);
    }
    if n == 0 {
        visit(&labels, 0);
        return;
    }
    let start = prefix.len();
    if start == n {
        visit(&labels, maxes[n] as usize);
        return;
    }
    // iterative odometer over positions start..n
    for i in start..n {
        labels[i] = 0;
        maxes[i + 1] = maxes[i].max(1);
    }
    loop {
        visit(&labels, maxes[n] as usize);
        let mut i = n;
        loop {
            if i == start {
                return;
            }
            i -= 1;
            if labels[i] < maxes[i] {
                labels[i] += 1;
                maxes[i + 1] = maxes[i].max(labels[i] + 1);
                for j in i + 1..n {
                    labels[j] = 0;
                    maxes[j + 1] = maxes[j].max(1);
                }
                break;
            }
        }
    }
}

pub fn for_each_rgs(n: usize, visit: impl FnMut(&[u8], usize)) {
    for_each_rgs_with_prefix(n, &[], visit)
}

/// All partitions of an n-set in restricted-growth lexicographic order.
pub fn enumerate_partitions(n: usize) -> impl Iterator<Item = SetPartition> {
    RgsIter { labels: vec![0; n], maxes: vec![0; n + 1], started: false, done: false }.map(|(labels, blocks)| {
        SetPartition { labels, blocks }
    })
}

struct RgsIter {
    labels: Vec<u8>,
    maxes: Vec<u8>,
    started: bool,
    done: bool,
}

impl Iterator for RgsIter {
    type Item = (Vec<u8>, usize);
    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.labels.len();
        if !self.started {
            self.started = true;
            for i in 0..n {
                self.maxes[i + 1] = 1;
            }
            if n == 0 {
                self.done = true;
            }
            return Some((self.labels.clone(), self.maxes[n] as usize));
        }
        let mut i = n;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.labels[i] < self.maxes[i] {
                self.labels[i] += 1;
                self.maxes[i + 1] = self.maxes[i].max(self.labels[i] + 1);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.maxes[j + 1] = self.maxes[j].max(1);
                }
                return Some((self.labels.clone(), self.maxes[n] as usize));
            }
        }
    }
}

/// Restricted-growth prefixes of length `len`, used to split enumeration into
/// independent work items.
pub fn rgs_prefixes(len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for_each_rgs(len, |l, _| out.push(l.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn bell_values() {
        assert_eq!(bell_numbers(6), vec![1, 1, 2, 5, 15, 52, 203]);
        assert_eq!(bell(12), 4_213_597);
    }

    #[test]
    fn enumeration_counts_and_uniqueness() {
        for n in 0..=8 {
            let all: Vec<SetPartition> = enumerate_partitions(n).collect();
            assert_eq!(all.len() as u128, bell(n), "n={n}");
            let uniq: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(uniq.len(), all.len());
            assert!(all.windows(2).all(|w| w[0].labels() < w[1].labels()));
            let mut cb = 0;
            for_each_rgs(n, |_, _| cb += 1);
            assert_eq!(cb as u128, bell(n));
        }
    }

    #[test]
    fn prefix_split_covers_everything_once() {
        let n = 7;
        let mut total = 0u128;
        for pre in rgs_prefixes(3) {
            for_each_rgs_with_prefix(n, &pre, |_, _| total += 1);
        }
        assert_eq!(total, bell(n));
    }

    #[test]
    fn rgs_validation() {
        assert!(SetPartition::from_rgs(vec![0, 1, 0, 2]).is_some());
        assert!(SetPartition::from_rgs(vec![0, 2]).is_none());
        assert!(SetPartition::from_rgs(vec![1]).is_none());
        assert_eq!(SetPartition::from_labels(&[7, 3, 7]).labels(), &[0, 1, 0]);
        assert_eq!(SetPartition::from_blocks(3, &[vec![2], vec![0, 1]]).unwrap().labels(), &[0, 0, 1]);
        assert!(SetPartition::from_blocks(3, &[vec![0, 1]]).is_none());
    }
}
