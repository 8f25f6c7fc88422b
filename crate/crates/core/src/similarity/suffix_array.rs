//! Suffix array over an integer alphabet by prefix doubling with radix
//! passes, plus Kasai's LCP array.

/// Sorts all suffixes of `text`. Runs in O(n log n).
pub fn suffix_array(text: &[u32]) -> Vec<usize> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }

    // Dense initial ranks.
    let mut symbols: Vec<u32> = text.to_vec();
    symbols.sort_unstable();
    symbols.dedup();
    let mut rank: Vec<usize> = text
        .iter()
        .map(|c| symbols.binary_search(c).expect("symbol present"))
        .collect();
    let mut classes = symbols.len();

    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by_key(|&i| rank[i]);

    let mut by_second = vec![0usize; n];
    let mut next_rank = vec![0usize; n];
    let mut counts = vec![0usize; n.max(classes) + 1];
    let mut k = 1;

    while classes < n {
        // Order by the second half: suffixes too short to have one come first.
        let mut fill = 0;
        for i in n - k.min(n)..n {
            by_second[fill] = i;
            fill += 1;
        }
        for &p in &sa {
            if p >= k {
                by_second[fill] = p - k;
                fill += 1;
            }
        }

        // Stable counting sort by the first half.
        counts[..classes].iter_mut().for_each(|c| *c = 0);
        for &p in &by_second {
            counts[rank[p]] += 1;
        }
        let mut total = 0;
        for c in counts[..classes].iter_mut() {
            let here = *c;
            *c = total;
            total += here;
        }
        for &p in &by_second {
            sa[counts[rank[p]]] = p;
            counts[rank[p]] += 1;
        }

        let key = |p: usize| (rank[p], if p + k < n { rank[p + k] as isize } else { -1 });
        next_rank[sa[0]] = 0;
        for w in 1..n {
            let bump = key(sa[w - 1]) != key(sa[w]);
            next_rank[sa[w]] = next_rank[sa[w - 1]] + usize::from(bump);
        }
        std::mem::swap(&mut rank, &mut next_rank);
        classes = rank[sa[n - 1]] + 1;
        k *= 2;
    }
    sa
}

/// `lcp[i]` is the longest common prefix of suffixes `sa[i - 1]` and
/// `sa[i]`; `lcp[0]` is 0.
pub fn lcp_array(text: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut inverse = vec![0usize; n];
    for (i, &p) in sa.iter().enumerate() {
        inverse[p] = i;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for p in 0..n {
        let r = inverse[p];
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1];
        while p + h < n && q + h < n && text[p + h] == text[q + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}
