//! Slow reference implementations used to check the mining code.
//!
//! Nothing here touches suffix structures: repeats are found by listing
//! every substring, longest common runs by the textbook DP table.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// (token list, {(process id, offset)})
pub type OracleMatch = (Vec<String>, BTreeSet<(String, usize)>);

/// Every maximal repeat of length >= `min_length`, by enumeration.
pub fn brute_force_repeats(
    corpus: &[(String, Vec<String>)],
    min_length: usize,
    allow_intra: bool,
) -> BTreeSet<OracleMatch> {
    let mut occurrences: BTreeMap<Vec<String>, Vec<(usize, usize)>> = BTreeMap::new();
    for (p, (_, tokens)) in corpus.iter().enumerate() {
        for start in 0..tokens.len() {
            for end in start + min_length.max(1)..=tokens.len() {
                occurrences
                    .entry(tokens[start..end].to_vec())
                    .or_default()
                    .push((p, start));
            }
        }
    }

    let mut result = BTreeSet::new();
    for (tokens, occs) in occurrences {
        let processes: BTreeSet<usize> = occs.iter().map(|&(p, _)| p).collect();
        let spread = if allow_intra {
            occs.len() >= 2
        } else {
            processes.len() >= 2
        };
        if !spread {
            continue;
        }
        let len = tokens.len();
        let before = |&(p, i): &(usize, usize)| if i == 0 { None } else { Some(&corpus[p].1[i - 1]) };
        let after = |&(p, i): &(usize, usize)| corpus[p].1.get(i + len);
        if uniform(occs.iter().map(before)) || uniform(occs.iter().map(after)) {
            continue;
        }
        let occ_set = occs.iter().map(|&(p, i)| (corpus[p].0.clone(), i)).collect();
        result.insert((tokens, occ_set));
    }
    result
}

/// True when every item is `Some(x)` with the same `x`.
fn uniform<'a>(mut items: impl Iterator<Item = Option<&'a String>>) -> bool {
    let first = match items.next() {
        Some(Some(first)) => first,
        _ => return false,
    };
    items.all(|x| x == Some(first))
}

/// (run, offsets in a, offsets in b)
pub type OracleRun<T> = (Vec<T>, Vec<usize>, Vec<usize>);

/// Longest common contiguous runs: (length, every run of that length).
#[allow(clippy::needless_range_loop)]
pub fn dp_longest_common_runs<T: Ord + Clone>(a: &[T], b: &[T]) -> (usize, BTreeSet<OracleRun<T>>) {
    let mut table = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    let mut best = 0;
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            if a[i - 1] == b[j - 1] {
                table[i][j] = table[i - 1][j - 1] + 1;
                best = best.max(table[i][j]);
            }
        }
    }
    let mut runs = BTreeSet::new();
    if best == 0 {
        return (0, runs);
    }
    let mut seen: BTreeSet<Vec<T>> = BTreeSet::new();
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            if table[i][j] == best {
                seen.insert(a[i - best..i].to_vec());
            }
        }
    }
    for run in seen {
        let find = |hay: &[T]| -> Vec<usize> {
            (0..=hay.len() - best)
                .filter(|&s| hay[s..s + best] == run[..])
                .collect()
        };
        let (in_a, in_b) = (find(a), find(b));
        runs.insert((run, in_a, in_b));
    }
    (best, runs)
}

/// Longest common substring length by comparing every pair of substrings.
pub fn quartic_lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut best = 0;
    for i in 0..a.len() {
        for j in i + 1..=a.len() {
            for k in 0..b.len() {
                for l in k + 1..=b.len() {
                    if j - i == l - k && j - i > best && a[i..j] == b[k..l] {
                        best = j - i;
                    }
                }
            }
        }
    }
    best
}
