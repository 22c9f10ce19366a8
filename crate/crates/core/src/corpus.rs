//! Exhaustive corpora of small instances: all non-isomorphic DAGs up to a
//! vertex bound, plus the worked branching example.

use std::collections::BTreeSet;

use crate::digraph::{branching_example, Digraph};

/// All DAGs on exactly `n` vertices, one per isomorphism class. Every DAG
/// admits a topological order, so edge subsets of the increasing complete
/// graph cover all classes; canonical forms over all relabelings dedupe.
pub fn all_dags(n: usize) -> Vec<Digraph> {
    assert!((1..=6).contains(&n), "corpus enumeration is for small n");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut relabeled: Vec<(usize, usize)> =
                    edges.iter().map(|&(u, v)| (p[u], p[v])).collect();
                relabeled.sort_unstable();
                relabeled
            })
            .min()
            .unwrap();
        if seen.insert(canon.clone()) {
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let named: Vec<(String, String)> = canon
                .iter()
                .map(|&(u, v)| ((u + 1).to_string(), (v + 1).to_string()))
                .collect();
            out.push(Digraph::new(names, &named).expect("relabeled DAG stays acyclic"));
        }
    }
    out
}

/// All DAGs with at most `max_vertices` vertices, one per class.
pub fn all_dags_up_to(max_vertices: usize) -> Vec<Digraph> {
    (1..=max_vertices).flat_map(all_dags).collect()
}

/// The default verification corpus: every DAG with at most four vertices
/// plus the five-vertex branching example.
pub fn default_corpus() -> Vec<Digraph> {
    let mut corpus = all_dags_up_to(4);
    corpus.push(branching_example());
    corpus
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permutations(n, &mut cur, &mut out);
    out
}

fn heap_permutations(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_the_known_sequence() {
        assert_eq!(all_dags(1).len(), 1);
        assert_eq!(all_dags(2).len(), 2);
        assert_eq!(all_dags(3).len(), 6);
        assert_eq!(all_dags(4).len(), 31);
        assert_eq!(default_corpus().len(), 41);
    }
}
