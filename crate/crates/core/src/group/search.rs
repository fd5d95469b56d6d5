//! Exact clique and coloring search on small simple graphs.

/// Fixed-width bitset over at most a few hundred vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

/// Size of a maximum clique, by Bron–Kerbosch with Tomita pivoting and a
/// `|R| + |P| <= best` cut.
pub fn max_clique(adj: &[VertexSet]) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let mut best = 1;
    expand(adj, 0, VertexSet::full(n), VertexSet::empty(n), &mut best);
    best
}

fn expand(adj: &[VertexSet], size: usize, mut p: VertexSet, mut x: VertexSet, best: &mut usize) {
    if p.is_empty() {
        if x.is_empty() && size > *best {
            *best = size;
        }
        return;
    }
    if size + p.len() <= *best {
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| (p.intersection(&adj[u]).len(), std::cmp::Reverse(u)))
        .expect("non-empty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).iter().collect();
    for v in candidates {
        expand(
            adj,
            size + 1,
            p.intersection(&adj[v]),
            x.intersection(&adj[v]),
            best,
        );
        p.remove(v);
        x.insert(v);
        if size + p.len() <= *best {
            return;
        }
    }
}

/// Exact chromatic number. Tries `k = lower, lower+1, ...` and decides each
/// `k` with DSATUR-ordered backtracking; new colors are only ever opened in
/// increasing order, which removes color-permutation symmetry.
pub fn chromatic_number(adj: &[VertexSet], lower: usize) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let mut k = lower.max(1);
    loop {
        let mut colors = vec![usize::MAX; n];
        if color_with(adj, k, &mut colors, 0, 0) {
            return k;
        }
        k += 1;
    }
}

fn color_with(adj: &[VertexSet], k: usize, colors: &mut [usize], done: usize, used: usize) -> bool {
    let n = adj.len();
    if done == n {
        return true;
    }
    // DSATUR: most distinct neighbour colors, then highest degree, then lowest index
    let mut pick = None;
    let mut pick_key = (0usize, 0usize);
    for v in 0..n {
        if colors[v] != usize::MAX {
            continue;
        }
        let mut seen = 0u128;
        let mut degree = 0;
        for u in adj[v].iter() {
            if colors[u] != usize::MAX {
                seen |= 1 << colors[u].min(127);
            } else {
                degree += 1;
            }
        }
        let key = (seen.count_ones() as usize, degree);
        if pick.is_none() || key > pick_key {
            pick = Some(v);
            pick_key = key;
        }
    }
    let v = pick.expect("uncolored vertex");
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if adj[v].iter().any(|u| colors[u] == c) {
            continue;
        }
        colors[v] = c;
        if color_with(adj, k, colors, done + 1, used.max(c + 1)) {
            return true;
        }
        colors[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<VertexSet> {
        let mut adj = vec![VertexSet::empty(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    fn complete(n: usize) -> Vec<VertexSet> {
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        graph(n, &edges)
    }

    /// Exhaustive reference over all vertex subsets.
    fn brute_clique(adj: &[VertexSet]) -> usize {
        let n = adj.len();
        (0u32..1 << n)
            .filter(|mask| {
                (0..n).all(|a| {
                    mask >> a & 1 == 0
                        || (a + 1..n).all(|b| mask >> b & 1 == 0 || adj[a].contains(b))
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn brute_chromatic(adj: &[VertexSet]) -> usize {
        let n = adj.len();
        for k in 1..=n {
            let mut c = vec![0usize; n];
            loop {
                let ok = (0..n).all(|a| adj[a].iter().all(|b| c[a] != c[b]));
                if ok {
                    return k;
                }
                let mut i = 0;
                while i < n {
                    c[i] += 1;
                    if c[i] < k {
                        break;
                    }
                    c[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        n
    }

    #[test]
    fn bitset_ops() {
        let mut s = VertexSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(VertexSet::full(130).len(), 130);
    }

    #[test]
    fn small_graphs() {
        assert_eq!(max_clique(&complete(7)), 7);
        assert_eq!(chromatic_number(&complete(7), 1), 7);
        let empty = graph(5, &[]);
        assert_eq!(max_clique(&empty), 1);
        assert_eq!(chromatic_number(&empty, 1), 1);
        // 5-cycle: clique 2, chromatic 3
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(max_clique(&c5), 2);
        assert_eq!(chromatic_number(&c5, 2), 3);
    }

    #[test]
    fn random_graphs_match_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=9);
            let p: f64 = rng.gen_range(0.1..0.9);
            let edges: Vec<_> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let adj = graph(n, &edges);
            assert_eq!(max_clique(&adj), brute_clique(&adj));
            assert_eq!(chromatic_number(&adj, 1), brute_chromatic(&adj));
        }
    }
}
