//! Minimal chunked bitset used for reachability matrices.

/// Fixed-capacity bitset over `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// `self |= other`; reports whether any bit changed.
    pub fn union_with(&mut self, other: &BitSet) -> bool {
        let mut changed = false;
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            let before = *w;
            *w |= o;
            changed |= *w != before;
        }
        changed
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Reachability closure of a DAG given as adjacency lists: `reach[v]` holds
/// every vertex reachable from `v` by a nonempty arc sequence.
pub fn reachability(n: usize, adj: &[Vec<usize>]) -> Vec<BitSet> {
    let mut reach: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    // Relax until fixpoint; cheap at the instance sizes this crate targets.
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            for &w in &adj[v] {
                let (head, tail) = if v < w {
                    let (a, b) = reach.split_at_mut(w);
                    (&mut a[v], &b[0])
                } else {
                    let (a, b) = reach.split_at_mut(v);
                    (&mut b[0], &a[w])
                };
                let mut delta = tail.clone();
                delta.insert(w);
                changed |= head.union_with(&delta);
            }
        }
    }
    reach
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reachability_on_chain() {
        let adj = vec![vec![1], vec![2], vec![]];
        let reach = reachability(3, &adj);
        assert!(reach[0].contains(1) && reach[0].contains(2));
        assert!(reach[1].contains(2) && !reach[1].contains(0));
        assert!(reach[2].is_empty());
    }

    #[test]
    fn iter_ones_crosses_word_boundary() {
        let mut b = BitSet::new(130);
        b.insert(0);
        b.insert(63);
        b.insert(64);
        b.insert(129);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
    }
}
