use super::suffix_array::{lcp_array, suffix_array};
use super::{require_processes, Encoded, Match, MatchMode, MatchSet, Occurrence};
use crate::dictionary::MetaProcess;
use crate::error::Result;

/// Token preceding the occurrences of an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Left {
    Unset,
    Uniform(u32),
    /// Two different predecessors, or one occurrence at a process start.
    Diverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Owners {
    Unset,
    One(u32),
    Many,
}

#[derive(Debug, Clone, Copy)]
struct Summary {
    left: Left,
    owners: Owners,
}

impl Summary {
    const EMPTY: Summary = Summary {
        left: Left::Unset,
        owners: Owners::Unset,
    };

    fn merge(&mut self, other: Summary) {
        self.left = match (self.left, other.left) {
            (Left::Unset, x) | (x, Left::Unset) => x,
            (Left::Uniform(a), Left::Uniform(b)) if a == b => Left::Uniform(a),
            _ => Left::Diverse,
        };
        self.owners = match (self.owners, other.owners) {
            (Owners::Unset, x) | (x, Owners::Unset) => x,
            (Owners::One(a), Owners::One(b)) if a == b => Owners::One(a),
            _ => Owners::Many,
        };
    }
}

struct Frame {
    lcp: usize,
    lb: usize,
    summary: Summary,
}

/// Concatenated corpus with a unique separator after every process.
struct Text {
    symbols: Vec<u32>,
    /// Owning process of each position, `None` on separators.
    owner: Vec<Option<u32>>,
    offset: Vec<usize>,
}

impl Text {
    fn new(encoded: &Encoded<'_>) -> Self {
        let alphabet = encoded.names.len() as u32;
        let total: usize = encoded.processes.iter().map(|p| p.len() + 1).sum();
        let mut text = Text {
            symbols: Vec::with_capacity(total),
            owner: Vec::with_capacity(total),
            offset: Vec::with_capacity(total),
        };
        for (pid, tokens) in encoded.processes.iter().enumerate() {
            for (offset, &t) in tokens.iter().enumerate() {
                text.symbols.push(t);
                text.owner.push(Some(pid as u32));
                text.offset.push(offset);
            }
            text.symbols.push(alphabet + pid as u32);
            text.owner.push(None);
            text.offset.push(tokens.len());
        }
        text
    }

    fn leaf(&self, pos: usize) -> Summary {
        match self.owner[pos] {
            None => Summary::EMPTY,
            Some(pid) => Summary {
                left: if self.offset[pos] == 0 {
                    Left::Diverse
                } else {
                    Left::Uniform(self.symbols[pos - 1])
                },
                owners: Owners::One(pid),
            },
        }
    }
}

/// Every maximal repeat of at least `min_length` tokens.
///
/// A repeat qualifies when it occurs in two or more processes (or at two or
/// more positions anywhere, with `allow_intra`) and no single token extends
/// all of its occurrences on the left or on the right. Occurrences are
/// exhaustive.
///
/// Works bottom-up over the LCP intervals of a generalized suffix array:
/// each interval is a right-maximal repeat, and left-maximality and the
/// process spread are folded up from the children, so only reported
/// repeats cost more than constant time.
pub fn find_matches_repeats(corpus: &[MetaProcess], min_length: usize, allow_intra: bool) -> Result<MatchSet> {
    require_processes(corpus, if allow_intra { 1 } else { 2 })?;
    let min_length = min_length.max(1);
    let encoded = Encoded::new(corpus);
    let text = Text::new(&encoded);
    let sa = suffix_array(&text.symbols);
    let lcp = lcp_array(&text.symbols, &sa);
    let n = sa.len();

    let mut found = Vec::new();
    let mut report = |frame: &Frame, rb: usize| {
        let spread = match frame.summary.owners {
            Owners::Many => true,
            Owners::One(_) => allow_intra,
            Owners::Unset => false,
        };
        if frame.lcp < min_length || frame.summary.left != Left::Diverse || !spread {
            return;
        }
        let first = sa[frame.lb];
        let tokens = encoded.decode(&text.symbols[first..first + frame.lcp]);
        let occurrences = sa[frame.lb..=rb].iter().map(|&pos| Occurrence {
            process_id: corpus[text.owner[pos].expect("token position") as usize]
                .process_id
                .clone(),
            offset: text.offset[pos],
        });
        found.push(Match::new(tokens, occurrences));
    };

    let mut stack = vec![Frame {
        lcp: 0,
        lb: 0,
        summary: Summary::EMPTY,
    }];
    for i in 1..=n {
        let l = if i < n { lcp[i] } else { 0 };
        let mut carry = text.leaf(sa[i - 1]);
        let mut lb = i - 1;
        while l < stack.last().expect("root frame").lcp {
            let mut frame = stack.pop().expect("non-root frame");
            frame.summary.merge(carry);
            report(&frame, i - 1);
            carry = frame.summary;
            lb = frame.lb;
        }
        let top = stack.last_mut().expect("root frame");
        if l > top.lcp {
            stack.push(Frame {
                lcp: l,
                lb,
                summary: carry,
            });
        } else {
            top.summary.merge(carry);
        }
    }

    Ok(MatchSet::new(MatchMode::Repeats, min_length, corpus, found))
}
