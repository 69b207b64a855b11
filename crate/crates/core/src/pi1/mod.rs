//! Edge-path presentations of fundamental groups, images of subspace
//! groups, abelian invariants, coset enumeration, and presentation
//! simplification.
//!
//! Generators are numbered 1..=generator_count; a negative letter is the
//! inverse of the corresponding positive one.

mod coset;
mod smith;
mod tietze;

pub use coset::{todd_coxeter, CosetOutcome};
pub use smith::smith_normal_form;
pub use tietze::simplify_presentation;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::complex::{full_subcomplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Word in the generators; letters are nonzero, sign marks inversion.
pub type Word = Vec<i32>;

pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert_word(word: &[i32]) -> Word {
    word.iter().rev().map(|&l| -l).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generator_count: usize,
    /// Freely reduced relator words.
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            for &l in r {
                if l == 0 || l.unsigned_abs() as usize > generator_count {
                    return Err(Error::BadLetter {
                        letter: l,
                        generators: generator_count,
                    });
                }
            }
        }
        Ok(Self {
            generator_count,
            relators: relators.iter().map(|r| free_reduce(r)).collect(),
        })
    }

    pub fn trivial() -> Self {
        Self {
            generator_count: 0,
            relators: Vec::new(),
        }
    }

    pub fn is_free(&self) -> bool {
        self.relators.iter().all(|r| r.is_empty())
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relator_matrix(&self) -> Vec<Vec<i128>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i128; self.generator_count];
                for &l in r {
                    let idx = l.unsigned_abs() as usize - 1;
                    row[idx] += if l > 0 { 1 } else { -1 };
                }
                row
            })
            .collect()
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        let diag = smith_normal_form(self.relator_matrix());
        let nonzero = diag.iter().filter(|&&d| d != 0).count();
        AbelianInvariants {
            rank: self.generator_count - nonzero,
            torsion: diag
                .iter()
                .filter(|&&d| d > 1)
                .map(|&d| d as u64)
                .collect(),
        }
    }
}

/// Rank and torsion coefficients in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Spanning-tree data for a based complex: enough to translate any edge
/// path into a word of the edge-path presentation.
#[derive(Debug, Clone)]
pub struct EdgeWordMap {
    pub basepoint: Vertex,
    /// Vertices reachable from the basepoint.
    pub component: Vec<Vertex>,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
    /// Non-tree edge (u, v) with u < v mapped to its generator index.
    generator_of: BTreeMap<(Vertex, Vertex), i32>,
}

impl EdgeWordMap {
    /// Word of the directed edge u -> v: empty for tree edges, a single
    /// letter for generator edges, None if {u, v} is not an edge here.
    pub fn word_for_edge(&self, u: Vertex, v: Vertex) -> Option<Word> {
        let key = (u.min(v), u.max(v));
        if let Some(&g) = self.generator_of.get(&key) {
            return Some(vec![if u < v { g } else { -g }]);
        }
        if self.parent[u] == Some(v) || self.parent[v] == Some(u) {
            return Some(Vec::new());
        }
        None
    }

    /// Directed tree path from `from` up-and-down to `to`.
    pub fn tree_path(&self, from: Vertex, to: Vertex) -> Vec<(Vertex, Vertex)> {
        let (mut a, mut b) = (from, to);
        let mut up: Vec<(Vertex, Vertex)> = Vec::new();
        let mut down: Vec<(Vertex, Vertex)> = Vec::new();
        while self.depth[a] > self.depth[b] {
            let p = self.parent[a].expect("deeper vertex has a parent");
            up.push((a, p));
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let p = self.parent[b].expect("deeper vertex has a parent");
            down.push((p, b));
            b = p;
        }
        while a != b {
            let pa = self.parent[a].expect("distinct vertices below the root");
            let pb = self.parent[b].expect("distinct vertices below the root");
            up.push((a, pa));
            down.push((pb, b));
            a = pa;
            b = pb;
        }
        down.reverse();
        up.extend(down);
        up
    }
}

/// Edge-path presentation of the fundamental group of the basepoint
/// component: breadth-first spanning tree by vertex index, one generator
/// per non-tree edge, one relator per triangle.
pub fn edge_path_presentation(
    x: &SimplicialComplex,
    basepoint: Vertex,
) -> Result<(GroupPresentation, EdgeWordMap)> {
    if basepoint >= x.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: basepoint,
            vertex_count: x.vertex_count(),
        });
    }
    let n = x.vertex_count();
    let mut neighbors: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for (u, v) in x.edges() {
        neighbors[u].push(v);
        neighbors[v].push(u);
    }
    for ns in &mut neighbors {
        ns.sort_unstable();
    }
    let mut parent: Vec<Option<Vertex>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut visited = vec![false; n];
    visited[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    let mut component = vec![basepoint];
    while let Some(u) = queue.pop_front() {
        for &v in &neighbors[u] {
            if !visited[v] {
                visited[v] = true;
                parent[v] = Some(u);
                depth[v] = depth[u] + 1;
                component.push(v);
                queue.push_back(v);
            }
        }
    }
    component.sort_unstable();

    let in_tree = |u: Vertex, v: Vertex| parent[u] == Some(v) || parent[v] == Some(u);
    let mut generator_of = BTreeMap::new();
    let mut next = 1i32;
    for (u, v) in x.edges() {
        if visited[u] && visited[v] && !in_tree(u, v) {
            generator_of.insert((u, v), next);
            next += 1;
        }
    }
    let ewm = EdgeWordMap {
        basepoint,
        component: component.clone(),
        parent,
        depth,
        generator_of,
    };

    let mut relators = Vec::new();
    for t in x.simplices_of_dim(2) {
        if t.iter().all(|&v| visited[v]) {
            let mut w = Word::new();
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                w.extend(ewm.word_for_edge(a, b).expect("triangle edge"));
            }
            relators.push(free_reduce(&w));
        }
    }
    let presentation = GroupPresentation {
        generator_count: (next - 1) as usize,
        relators,
    };
    Ok((presentation, ewm))
}

/// Generators of the image of each path component of the full subcomplex
/// on `vertices` inside the ambient fundamental group.
#[derive(Debug, Clone)]
pub struct Pi1Image {
    /// Ambient vertex sets of the components, ordered by minimum vertex.
    pub components: Vec<Vec<Vertex>>,
    /// Image words per component, one per non-tree edge of that component.
    pub component_words: Vec<Vec<Word>>,
    /// Presentation of each component's own fundamental group.
    pub component_presentations: Vec<GroupPresentation>,
}

pub fn inclusion_image(
    x: &SimplicialComplex,
    vertices: &[Vertex],
    ewm: &EdgeWordMap,
) -> Result<Pi1Image> {
    let sub = full_subcomplex(x, vertices)?;
    let in_base_component: BTreeSet<Vertex> = ewm.component.iter().copied().collect();
    for &v in &sub.to_ambient {
        if !in_base_component.contains(&v) {
            return Err(Error::Unsupported(format!(
                "vertex {v} lies outside the basepoint component"
            )));
        }
    }
    let mut components = Vec::new();
    let mut component_words = Vec::new();
    let mut component_presentations = Vec::new();
    for comp in sub.complex.components() {
        let local = full_subcomplex(&sub.complex, &comp)?;
        let (pres, local_ewm) = edge_path_presentation(&local.complex, 0)?;
        // Local non-tree edges, in the generator order of the local
        // presentation, expanded to ambient loops read through the ambient
        // edge words. The conjugating path from the ambient basepoint to
        // the component root runs inside the ambient spanning tree and
        // contributes the empty word.
        let to_ambient = |lv: Vertex| sub.to_ambient[local.to_ambient[lv]];
        let mut words = Vec::new();
        let mut gen_edges: Vec<(Vertex, Vertex)> =
            local_ewm.generator_of.keys().copied().collect();
        gen_edges.sort_by_key(|&e| local_ewm.generator_of[&e]);
        for (u, v) in gen_edges {
            let mut path = local_ewm.tree_path(0, u);
            path.push((u, v));
            path.extend(local_ewm.tree_path(v, 0));
            let mut w = Word::new();
            for (a, b) in path {
                w.extend(
                    ewm.word_for_edge(to_ambient(a), to_ambient(b))
                        .expect("subcomplex edge is an ambient edge"),
                );
            }
            words.push(free_reduce(&w));
        }
        components.push(comp.iter().map(|&lv| sub.to_ambient[lv]).collect());
        component_words.push(words);
        component_presentations.push(pres);
    }
    Ok(Pi1Image {
        components,
        component_words,
        component_presentations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{barycentric_subdivision, product, SimplicialComplex};

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build("s1", &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    fn torus() -> SimplicialComplex {
        product(&circle(), &circle()).unwrap().complex
    }

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&[1, -1]), Vec::<i32>::new());
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(free_reduce(&[1, 2, -1]), vec![1, 2, -1]);
    }

    #[test]
    fn circle_presents_one_free_generator() {
        let (p, _) = edge_path_presentation(&circle(), 0).unwrap();
        assert_eq!(p.generator_count, 1);
        assert!(p.relators.is_empty());
        assert_eq!(p.abelianization(), AbelianInvariants { rank: 1, torsion: vec![] });
    }

    #[test]
    fn sphere_presentation_is_trivial_after_abelianization() {
        let s2 = SimplicialComplex::build(
            "s2",
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        let (p, _) = edge_path_presentation(&s2, 0).unwrap();
        assert_eq!(p.generator_count, 3);
        assert_eq!(p.relators.len(), 4);
        assert!(p.abelianization().is_trivial());
    }

    #[test]
    fn torus_presentation_abelianizes_to_rank_two() {
        let (p, _) = edge_path_presentation(&torus(), 0).unwrap();
        assert_eq!(p.generator_count, 19);
        assert_eq!(p.relators.len(), 18);
        assert_eq!(p.abelianization(), AbelianInvariants { rank: 2, torsion: vec![] });
    }

    /// Independent Betti oracle: rank of H_1 as dim ker d1 - rank d2 over
    /// the rationals, computed by fraction-free Gaussian elimination on the
    /// boundary matrices.
    fn betti_one_oracle(x: &SimplicialComplex) -> usize {
        let verts: Vec<_> = x.simplices_of_dim(0).cloned().collect();
        let edges: Vec<_> = x.simplices_of_dim(1).cloned().collect();
        let tris: Vec<_> = x.simplices_of_dim(2).cloned().collect();
        let vidx: BTreeMap<_, _> = verts.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let eidx: BTreeMap<_, _> = edges.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut d1 = vec![vec![0i128; edges.len()]; verts.len()];
        for (j, e) in edges.iter().enumerate() {
            d1[vidx[&vec![e[1]]]][j] = 1;
            d1[vidx[&vec![e[0]]]][j] = -1;
        }
        let mut d2 = vec![vec![0i128; tris.len()]; edges.len()];
        for (j, t) in tris.iter().enumerate() {
            d2[eidx[&vec![t[1], t[2]]]][j] = 1;
            d2[eidx[&vec![t[0], t[2]]]][j] = -1;
            d2[eidx[&vec![t[0], t[1]]]][j] = 1;
        }
        fn rank(mut m: Vec<Vec<i128>>) -> usize {
            let rows = m.len();
            if rows == 0 {
                return 0;
            }
            let cols = m[0].len();
            let (mut r, mut rank) = (0, 0);
            for c in 0..cols {
                if r == rows {
                    break;
                }
                if let Some(p) = (r..rows).find(|&i| m[i][c] != 0) {
                    m.swap(r, p);
                    for i in 0..rows {
                        if i != r && m[i][c] != 0 {
                            let (a, b) = (m[r][c], m[i][c]);
                            for j in 0..cols {
                                m[i][j] = m[i][j] * a - m[r][j] * b;
                            }
                            let g = m[i].iter().fold(0i128, |acc, &v| gcd(acc, v.abs()));
                            if g > 1 {
                                m[i].iter_mut().for_each(|v| *v /= g);
                            }
                        }
                    }
                    r += 1;
                    rank += 1;
                }
            }
            rank
        }
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        edges.len() - rank(d1) - rank(d2)
    }

    #[test]
    fn abelianization_rank_matches_betti_oracle() {
        let cases = vec![
            circle(),
            torus(),
            SimplicialComplex::build(
                "s2",
                &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            )
            .unwrap(),
            barycentric_subdivision(&torus()).complex,
        ];
        for x in cases {
            let (p, _) = edge_path_presentation(&x, 0).unwrap();
            assert_eq!(
                p.abelianization().rank,
                betti_one_oracle(&x),
                "H1 rank of {}",
                x.name()
            );
        }
    }

    #[test]
    fn discrete_subspace_has_empty_generator_lists() {
        let sd = barycentric_subdivision(&circle());
        let (_, ewm) = edge_path_presentation(&sd.complex, 0).unwrap();
        // Barycenters of the three original edges are pairwise non-adjacent.
        let im = inclusion_image(&sd.complex, &[3, 4, 5], &ewm).unwrap();
        assert_eq!(im.components.len(), 3);
        assert!(im.component_words.iter().all(|w| w.is_empty()));
    }

    #[test]
    fn whole_space_image_generates_the_ambient_group() {
        let c = circle();
        let (p, ewm) = edge_path_presentation(&c, 0).unwrap();
        let im = inclusion_image(&c, &[0, 1, 2], &ewm).unwrap();
        assert_eq!(p.generator_count, 1);
        assert_eq!(im.components.len(), 1);
        assert_eq!(im.component_words[0], vec![vec![1]]);
    }

    #[test]
    fn factor_row_of_torus_has_infinite_cyclic_image() {
        let t = torus();
        let (p, ewm) = edge_path_presentation(&t, 0).unwrap();
        // One circle factor: vertices with second coordinate zero.
        let row: Vec<usize> = vec![0, 3, 6];
        let im = inclusion_image(&t, &row, &ewm).unwrap();
        assert_eq!(im.components.len(), 1);
        assert_eq!(im.component_words[0].len(), 1);
        // The image generator has nonzero exponent vector, and the torus H1
        // is torsion-free, so the abelianized image has rank one.
        let word = &im.component_words[0][0];
        let mut expo = vec![0i64; p.generator_count];
        for &l in word {
            expo[l.unsigned_abs() as usize - 1] += if l > 0 { 1 } else { -1 };
        }
        let h1 = p.abelianization();
        assert_eq!(h1.rank, 2);
        assert!(expo.iter().any(|&e| e != 0));
    }

    #[test]
    fn image_words_are_loops_in_the_ambient_tree_labels() {
        // A 2x2 grid block of the torus: contains an essential loop.
        let t = torus();
        let (_, ewm) = edge_path_presentation(&t, 0).unwrap();
        let im = inclusion_image(&t, &[0, 1, 2, 3, 4, 5], &ewm).unwrap();
        assert_eq!(im.components.len(), 1);
        assert!(!im.component_words[0].is_empty());
        for w in &im.component_words[0] {
            assert_eq!(free_reduce(w), *w);
        }
    }

    #[test]
    fn presentation_letter_validation() {
        assert!(GroupPresentation::new(1, vec![vec![2]]).is_err());
        assert!(GroupPresentation::new(1, vec![vec![0]]).is_err());
        let p = GroupPresentation::new(2, vec![vec![1, -1, 2]]).unwrap();
        assert_eq!(p.relators, vec![vec![2]]);
    }
}
