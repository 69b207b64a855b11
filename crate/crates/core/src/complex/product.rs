//! Staircase triangulation of a product of two complexes.
//!
//! Vertices are ordered pairs indexed x * |Y| + y. For maximal simplices
//! s of X and t of Y, the top cells are the monotone staircase paths from
//! (min s, min t) to (max s, max t) through the grid s x t; every simplex
//! of the product is a monotone chain of pairs whose projections land in
//! simplices. Both coordinate projections are simplicial.

use std::collections::BTreeSet;

use crate::complex::{Simplex, SimplicialComplex, SimplicialMap, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ProductComplex {
    pub complex: SimplicialComplex,
    pub proj_left: SimplicialMap,
    pub proj_right: SimplicialMap,
    pub left_vertex_count: usize,
    pub right_vertex_count: usize,
}

impl ProductComplex {
    pub fn pair_index(&self, x: Vertex, y: Vertex) -> Vertex {
        x * self.right_vertex_count + y
    }

    pub fn pair_of(&self, v: Vertex) -> (Vertex, Vertex) {
        (v / self.right_vertex_count, v % self.right_vertex_count)
    }
}

pub fn product(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<ProductComplex> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyComplex(
            if x.is_empty() { x.name() } else { y.name() }.to_string(),
        ));
    }
    let w = y.vertex_count();
    let mut simplices: BTreeSet<Simplex> = BTreeSet::new();
    for s in x.maximal_simplices() {
        for t in y.maximal_simplices() {
            staircases(&s, &t, &mut |path| {
                let ids: Simplex = path.iter().map(|&(a, b)| a * w + b).collect();
                // Paths are monotone in both coordinates, so ids increase.
                insert_subsets(&mut simplices, &ids);
            });
        }
    }
    let name = format!("product({},{})", x.name(), y.name());
    let complex = SimplicialComplex::from_closed_set(name, simplices)?;
    let proj_left = SimplicialMap::new(
        &complex,
        x,
        (0..complex.vertex_count()).map(|v| v / w).collect(),
    )?;
    let proj_right = SimplicialMap::new(
        &complex,
        y,
        (0..complex.vertex_count()).map(|v| v % w).collect(),
    )?;
    Ok(ProductComplex {
        complex,
        proj_left,
        proj_right,
        left_vertex_count: x.vertex_count(),
        right_vertex_count: y.vertex_count(),
    })
}

/// Enumerates monotone staircase paths through the grid s x t.
fn staircases(s: &[Vertex], t: &[Vertex], emit: &mut impl FnMut(&[(Vertex, Vertex)])) {
    let mut path: Vec<(Vertex, Vertex)> = vec![(s[0], t[0])];
    fn walk(
        s: &[Vertex],
        t: &[Vertex],
        i: usize,
        j: usize,
        path: &mut Vec<(Vertex, Vertex)>,
        emit: &mut impl FnMut(&[(Vertex, Vertex)]),
    ) {
        if i == s.len() - 1 && j == t.len() - 1 {
            emit(path);
            return;
        }
        if i + 1 < s.len() {
            path.push((s[i + 1], t[j]));
            walk(s, t, i + 1, j, path, emit);
            path.pop();
        }
        if j + 1 < t.len() {
            path.push((s[i], t[j + 1]));
            walk(s, t, i, j + 1, path, emit);
            path.pop();
        }
    }
    walk(s, t, 0, 0, &mut path, emit);
}

fn insert_subsets(set: &mut BTreeSet<Simplex>, ids: &[Vertex]) {
    for mask in 1u32..(1 << ids.len()) {
        let face: Simplex = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        set.insert(face);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build("s1", &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn square_of_edges_is_two_triangles() {
        let e = SimplicialComplex::build("e", &[vec![0, 1]]).unwrap();
        let p = product(&e, &e).unwrap();
        assert_eq!(p.complex.f_vector(), vec![4, 5, 2]);
        assert_eq!(p.complex.euler_characteristic(), 1);
    }

    #[test]
    fn torus_counts() {
        let t = product(&circle(), &circle()).unwrap();
        assert_eq!(t.complex.f_vector(), vec![9, 27, 18]);
        assert_eq!(t.complex.euler_characteristic(), 0);
        assert!(t.complex.is_connected());
    }

    #[test]
    fn product_with_point_is_the_identity_factor() {
        let pt = SimplicialComplex::build("pt", &[vec![0]]).unwrap();
        let c = circle();
        let p = product(&c, &pt).unwrap();
        assert_eq!(p.complex.f_vector(), c.f_vector());
        // With |Y| = 1 the pair index of (x, 0) is x itself.
        assert_eq!(p.proj_left.vertex_map, vec![0, 1, 2]);
    }

    #[test]
    fn euler_characteristic_is_multiplicative() {
        let cases = [
            SimplicialComplex::build("a", &[vec![0, 1, 2]]).unwrap(),
            circle(),
            SimplicialComplex::build(
                "s2",
                &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
            )
            .unwrap(),
        ];
        for x in &cases {
            for y in &cases {
                let p = product(x, y).unwrap();
                assert_eq!(
                    p.complex.euler_characteristic(),
                    x.euler_characteristic() * y.euler_characteristic(),
                    "chi of {} x {}",
                    x.name(),
                    y.name()
                );
            }
        }
    }

    #[test]
    fn projections_are_simplicial_and_onto() {
        let t = product(&circle(), &circle()).unwrap();
        // Constructors validate; spot-check a staircase simplex projects into a simplex.
        let tri = t.complex.simplices_of_dim(2).next().unwrap().clone();
        let img = t.proj_left.image_of(&tri);
        assert!(img.len() <= 2);
    }
}
