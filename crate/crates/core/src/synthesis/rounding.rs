//! Integer `k`-block counts that form a circulation on the de Bruijn graph,
//! and a cyclic word realizing them.

use crate::word::Word;

/// Rounds the targets `t[w]` (indexed by `k`-block code, summing to `total`)
/// to nonnegative integers summing to `total` such that every order-`m`
/// marginal is itself a rounding of the order-`m` targets and in-degree
/// equals out-degree at every `(k−1)`-block.
///
/// Order 1 is rounded directly. At order `m` the four blocks `b·v·c`
/// sharing a middle `v` have prescribed row sums (counts of `0v`, `1v`) and
/// column sums (counts of `v0`, `v1`) from order `m − 1`, leaving one free
/// integer, chosen to minimize the squared deviation from the targets.
pub(crate) fn round_counts(targets: &[f64], k: usize, total: u64) -> Vec<u64> {
    debug_assert_eq!(targets.len(), 1 << k);
    // marginals on the first m positions, m = k, k−1, …, 1
    let mut levels: Vec<Vec<f64>> = vec![targets.to_vec()];
    for _ in 1..k {
        let prev = levels.last().unwrap();
        levels.push(prev.chunks(2).map(|c| c[0] + c[1]).collect());
    }
    levels.reverse();

    let ones = (levels[0][1].round().max(0.0) as u64).min(total);
    let mut counts = vec![total - ones, ones];
    for m in 2..=k {
        let t = &levels[m - 1];
        let half = 1usize << (m - 2);
        let mut next = vec![0u64; 1 << m];
        for v in 0..half {
            let (r0, r1) = (counts[v] as i64, counts[half + v] as i64);
            let (c0, c1) = (counts[2 * v] as i64, counts[2 * v + 1] as i64);
            debug_assert_eq!(r0 + r1, c0 + c1);
            let at = |b: usize, c: usize| t[(b << (m - 1)) | (2 * v) | c];
            let ideal = (at(0, 0) + (r0 as f64 - at(0, 1)) + (c0 as f64 - at(1, 0)) + (at(1, 1) - (r1 - c0) as f64)) / 4.0;
            let lo = 0.max(c0 - r1);
            let hi = r0.min(c0);
            let a = (ideal.round() as i64).clamp(lo, hi);
            next[2 * v] = a as u64;
            next[2 * v + 1] = (r0 - a) as u64;
            next[(1 << (m - 1)) | (2 * v)] = (c0 - a) as u64;
            next[(1 << (m - 1)) | (2 * v + 1)] = (r1 - c0 + a) as u64;
            debug_assert_eq!(c1, (r0 - a) + (r1 - c0 + a));
        }
        counts = next;
    }
    counts
}

/// A cyclic word whose cyclic `k`-block counts are `counts`, assuming
/// `counts` is a circulation. Each strongly connected piece of the support
/// is traversed by an Eulerian circuit and the circuits are concatenated in
/// order of their least node; windows across the seams are not accounted
/// for here.
///
/// The circuit is the greedy walk that takes bit 0 whenever allowed, where
/// the edge by which a node was first reached backwards from the start
/// node (its last exit) is kept for the final departure.
pub(crate) fn euler_word(counts: &[u64], k: usize) -> Word {
    let nodes = 1usize << (k - 1);
    let mask = nodes - 1;
    let total: u64 = counts.iter().sum();
    let mut remaining = counts.to_vec();
    let mut visited = vec![false; nodes];
    let mut last_exit = vec![0u8; nodes];
    let mut word = Word::with_capacity(total as usize);
    let mut queue = Vec::new();

    for root in 0..nodes {
        if visited[root] || remaining[2 * root] + remaining[2 * root + 1] == 0 {
            continue;
        }
        // reverse search for the last-exit arborescence
        visited[root] = true;
        queue.clear();
        queue.push(root);
        while let Some(v) = queue.pop() {
            for b in 0..2usize {
                let u = if k == 1 { 0 } else { (v >> 1) | (b << (k - 2)) };
                let bit = v & 1;
                if !visited[u] && counts[2 * u + bit] > 0 {
                    visited[u] = true;
                    last_exit[u] = bit as u8;
                    queue.push(u);
                }
            }
        }

        let mut piece = Word::new();
        let mut cur = root;
        loop {
            let (n0, n1) = (remaining[2 * cur], remaining[2 * cur + 1]);
            let allowed = |b: usize, nb: u64, other: u64| {
                nb > 0 && !(cur != root && last_exit[cur] as usize == b && nb == 1 && other > 0)
            };
            let b = if allowed(0, n0, n1) {
                0
            } else if allowed(1, n1, n0) {
                1
            } else {
                break;
            };
            remaining[2 * cur + b] -= 1;
            piece.push(b == 1);
            cur = ((cur << 1) | b) & mask;
        }
        debug_assert_eq!(cur, root);
        // start the piece with the root's own symbols
        let m = piece.len();
        if m >= k - 1 && k > 1 {
            word.extend_from_range(&piece, m - (k - 1), k - 1);
            word.extend_from_range(&piece, 0, m - (k - 1));
        } else {
            word.extend_from_range(&piece, 0, m);
        }
    }
    debug_assert!(remaining.iter().all(|&r| r == 0), "counts were not a connected circulation per piece");
    word
}
