use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{require_processes, Encoded, Match, MatchMode, MatchSet, Occurrence};
use crate::dictionary::MetaProcess;
use crate::error::Result;

/// One longest common run of two processes with all its start offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonRun {
    pub tokens: Vec<String>,
    pub offsets_a: Vec<usize>,
    pub offsets_b: Vec<usize>,
}

struct State {
    len: usize,
    link: Option<usize>,
    next: HashMap<u32, usize>,
}

/// Suffix automaton recognising every substring of one sequence.
struct SuffixAutomaton {
    states: Vec<State>,
}

impl SuffixAutomaton {
    fn new(text: &[u32]) -> Self {
        let mut states = Vec::with_capacity(2 * text.len() + 1);
        states.push(State {
            len: 0,
            link: None,
            next: HashMap::new(),
        });
        let mut last = 0;
        for &c in text {
            let cur = states.len();
            states.push(State {
                len: states[last].len + 1,
                link: None,
                next: HashMap::new(),
            });
            let mut p = Some(last);
            while let Some(q) = p {
                if states[q].next.contains_key(&c) {
                    break;
                }
                states[q].next.insert(c, cur);
                p = states[q].link;
            }
            match p {
                None => states[cur].link = Some(0),
                Some(p) => {
                    let q = states[p].next[&c];
                    if states[p].len + 1 == states[q].len {
                        states[cur].link = Some(q);
                    } else {
                        let clone = states.len();
                        states.push(State {
                            len: states[p].len + 1,
                            link: states[q].link,
                            next: states[q].next.clone(),
                        });
                        let mut walk = Some(p);
                        while let Some(w) = walk {
                            if states[w].next.get(&c) != Some(&q) {
                                break;
                            }
                            states[w].next.insert(c, clone);
                            walk = states[w].link;
                        }
                        states[q].link = Some(clone);
                        states[cur].link = Some(clone);
                    }
                }
            }
            last = cur;
        }
        SuffixAutomaton { states }
    }

    /// For each end position `j` of `other`, the length of the longest
    /// suffix of `other[..=j]` that occurs in the indexed text.
    fn match_lengths(&self, other: &[u32]) -> Vec<usize> {
        let mut state = 0;
        let mut len = 0;
        other
            .iter()
            .map(|c| {
                loop {
                    if let Some(&next) = self.states[state].next.get(c) {
                        state = next;
                        len += 1;
                        break;
                    }
                    match self.states[state].link {
                        Some(link) => {
                            state = link;
                            len = self.states[state].len;
                        }
                        None => {
                            len = 0;
                            break;
                        }
                    }
                }
                len
            })
            .collect()
    }
}

/// (run, offsets in a, offsets in b)
type IdRun = (Vec<u32>, Vec<usize>, Vec<usize>);

/// Longest common runs of two id sequences, runs in ascending order.
fn longest_common_runs(a: &[u32], b: &[u32]) -> (usize, Vec<IdRun>) {
    if a.is_empty() || b.is_empty() {
        return (0, Vec::new());
    }
    let lengths = SuffixAutomaton::new(a).match_lengths(b);
    let longest = lengths.iter().copied().max().unwrap_or(0);
    if longest == 0 {
        return (0, Vec::new());
    }
    // Every occurrence of a longest run in `b` ends where the match length
    // peaks, since no longer common run exists.
    let mut runs: BTreeMap<&[u32], (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (end, &len) in lengths.iter().enumerate() {
        if len == longest {
            let start = end + 1 - longest;
            runs.entry(&b[start..=end]).or_default().1.push(start);
        }
    }
    for start in 0..=a.len() - longest {
        if let Some(entry) = runs.get_mut(&a[start..start + longest]) {
            entry.0.push(start);
        }
    }
    let runs = runs
        .into_iter()
        .map(|(run, (in_a, in_b))| (run.to_vec(), in_a, in_b))
        .collect();
    (longest, runs)
}

/// All distinct longest common contiguous runs of `a` and `b`.
///
/// Ties are all reported. An empty list means the processes share no token.
pub fn pairwise_lcs(a: &MetaProcess, b: &MetaProcess) -> Vec<CommonRun> {
    let pair = [a.clone(), b.clone()];
    let encoded = Encoded::new(&pair);
    let (_, runs) = longest_common_runs(&encoded.processes[0], &encoded.processes[1]);
    let mut runs: Vec<CommonRun> = runs
        .into_iter()
        .map(|(ids, offsets_a, offsets_b)| CommonRun {
            tokens: encoded.decode(&ids),
            offsets_a,
            offsets_b,
        })
        .collect();
    runs.sort_by(|x, y| x.tokens.cmp(&y.tokens));
    runs
}

/// Longest common runs of every unordered pair of processes, kept when at
/// least `min_length` long and merged by token list.
pub fn find_matches_pairwise(corpus: &[MetaProcess], min_length: usize) -> Result<MatchSet> {
    require_processes(corpus, 2)?;
    let encoded = Encoded::new(corpus);
    let pairs: Vec<(usize, usize)> = (0..corpus.len())
        .flat_map(|i| (i + 1..corpus.len()).map(move |j| (i, j)))
        .collect();

    let found: Vec<Match> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (longest, runs) = longest_common_runs(&encoded.processes[i], &encoded.processes[j]);
            let runs = if longest >= min_length.max(1) { runs } else { Vec::new() };
            let encoded = &encoded;
            runs.into_iter().map(move |(ids, in_a, in_b)| {
                let occurrences = in_a
                    .into_iter()
                    .map(|offset| Occurrence {
                        process_id: corpus[i].process_id.clone(),
                        offset,
                    })
                    .chain(in_b.into_iter().map(|offset| Occurrence {
                        process_id: corpus[j].process_id.clone(),
                        offset,
                    }));
                Match::new(encoded.decode(&ids), occurrences)
            })
        })
        .collect();

    Ok(MatchSet::new(MatchMode::Pairwise, min_length, corpus, found))
}
