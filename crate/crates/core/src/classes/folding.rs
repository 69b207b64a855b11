//! Rank of a finitely generated subgroup of a free group, computed by
//! graph folding.
//!
//! Each word becomes a loop at a base vertex in a labeled graph; folding
//! identifies targets of equally labeled parallel edges until the graph is
//! an immersion, and trimming removes dead branches. The result is the
//! core graph of the subgroup, whose first Betti number E - V + 1 is the
//! subgroup rank.

use std::collections::{BTreeMap, BTreeSet};

use crate::pi1::{free_reduce, Word};

/// Directed edge src --label--> dst with label > 0.
type EdgeSet = BTreeSet<(usize, usize, u32)>;

const BASE: usize = 0;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller representative so the base vertex survives
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Rank of the subgroup of a free group generated by `words`. Letters are
/// nonzero integers, sign for inversion; the ambient rank is implicit in
/// the letters used. Exact for every input.
pub fn free_subgroup_rank(words: &[Word]) -> usize {
    let mut edges: EdgeSet = BTreeSet::new();
    let mut next_vertex = BASE + 1;
    for raw in words {
        let w = free_reduce(raw);
        if w.is_empty() {
            continue;
        }
        let mut at = BASE;
        for (i, &letter) in w.iter().enumerate() {
            let to = if i + 1 == w.len() { BASE } else { next_vertex };
            if to != BASE {
                next_vertex += 1;
            }
            if letter > 0 {
                edges.insert((at, to, letter as u32));
            } else {
                edges.insert((to, at, (-letter) as u32));
            }
            at = to;
        }
    }

    let mut uf = UnionFind::new(next_vertex);
    loop {
        // invariant: edges are stored on representatives before each scan
        let mut merged = false;
        let mut out: BTreeMap<(usize, u32), usize> = BTreeMap::new();
        let mut inc: BTreeMap<(usize, u32), usize> = BTreeMap::new();
        for &(s, d, l) in &edges {
            if let Some(&d0) = out.get(&(s, l)) {
                if d0 != d {
                    merged |= uf.union(d0, d);
                }
            } else {
                out.insert((s, l), d);
            }
            if let Some(&s0) = inc.get(&(d, l)) {
                if s0 != s {
                    merged |= uf.union(s0, s);
                }
            } else {
                inc.insert((d, l), s);
            }
        }
        edges = edges
            .into_iter()
            .map(|(s, d, l)| (uf.find(s), uf.find(d), l))
            .collect();
        if !merged {
            break;
        }
    }

    // trim spurs: vertices other than the base with a single incidence
    loop {
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(s, d, _) in &edges {
            *degree.entry(s).or_insert(0) += 1;
            *degree.entry(d).or_insert(0) += 1;
        }
        let spur: Option<usize> = degree
            .iter()
            .find(|&(&v, &deg)| v != BASE && deg == 1)
            .map(|(&v, _)| v);
        match spur {
            Some(v) => edges.retain(|&(s, d, _)| s != v && d != v),
            None => break,
        }
    }

    let mut vertices: BTreeSet<usize> = BTreeSet::new();
    vertices.insert(BASE);
    for &(s, d, _) in &edges {
        vertices.insert(s);
        vertices.insert(d);
    }
    edges.len() + 1 - vertices.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_trivial_words() {
        assert_eq!(free_subgroup_rank(&[]), 0);
        assert_eq!(free_subgroup_rank(&[vec![]]), 0);
        assert_eq!(free_subgroup_rank(&[vec![1, -1]]), 0);
    }

    #[test]
    fn single_generators_and_duplicates() {
        assert_eq!(free_subgroup_rank(&[vec![1]]), 1);
        assert_eq!(free_subgroup_rank(&[vec![1], vec![1]]), 1);
        assert_eq!(free_subgroup_rank(&[vec![1], vec![-1]]), 1);
        assert_eq!(free_subgroup_rank(&[vec![1], vec![2]]), 2);
        assert_eq!(free_subgroup_rank(&[vec![1, 2]]), 1);
        assert_eq!(free_subgroup_rank(&[vec![1, 1]]), 1);
        assert_eq!(free_subgroup_rank(&[vec![1, 2, -1, -2]]), 1);
    }

    #[test]
    fn redundant_generators_collapse() {
        assert_eq!(free_subgroup_rank(&[vec![1], vec![2], vec![1, 2]]), 2);
        assert_eq!(free_subgroup_rank(&[vec![1], vec![1, 2]]), 2);
        assert_eq!(free_subgroup_rank(&[vec![1, 2, -1], vec![2]]), 2);
    }

    #[test]
    fn index_two_subgroup_of_rank_two() {
        // Nielsen-Schreier: an index-d subgroup of a free group of rank r
        // is free of rank 1 + d(r - 1); here d = 2, r = 2 gives 3.
        let words = vec![vec![1, 1], vec![2], vec![1, 2, -1]];
        assert_eq!(free_subgroup_rank(&words), 3);
    }

    #[test]
    fn index_three_subgroup_of_rank_two() {
        // Schreier generators for the kernel of F2 ->> Z/3 sending both
        // generators to 1, with transversal {1, a, a^2}; the kernel is
        // free of rank 1 + 3(2 - 1) = 4
        let words = vec![
            vec![2, -1],
            vec![1, 2, -1, -1],
            vec![1, 1, 1],
            vec![1, 1, 2],
        ];
        assert_eq!(free_subgroup_rank(&words), 4);
    }

    #[test]
    fn conjugates_of_one_generator_stay_cyclic() {
        assert_eq!(free_subgroup_rank(&[vec![2, 1, -2], vec![2, 1, -2]]), 1);
        assert_eq!(free_subgroup_rank(&[vec![2, 2, 1, -2, -2]]), 1);
    }

    #[test]
    fn unreduced_input_is_reduced_first() {
        assert_eq!(free_subgroup_rank(&[vec![1, -1, 2]]), 1);
        assert_eq!(free_subgroup_rank(&[vec![1, 2, -2, -1, 1]]), 1);
    }
}
