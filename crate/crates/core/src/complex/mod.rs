//! Finite abstract simplicial complexes over integer vertices.
//!
//! A complex stores the full face-closed simplex set. Simplices are strictly
//! increasing vertex lists, so set equality is `Vec` equality. Everything here
//! is desk scale: thousands of simplices, not millions.

mod mapping_torus;
mod product;
mod subdivision;

pub use mapping_torus::{base_circle, mapping_torus, MappingTorus, LAYERS};
pub use product::{product, ProductComplex};
pub use subdivision::{barycentric_subdivision, subdivide_map, MapSubdivision, SubdivisionCarrier};

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub type Vertex = usize;
/// Strictly increasing vertex list.
pub type Simplex = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    name: String,
    vertex_count: usize,
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// Face closure of `maximal`. Vertex count is one past the largest index;
    /// a gap in the used indices is rejected rather than silently compacted.
    pub fn build(name: impl Into<String>, maximal: &[Vec<Vertex>]) -> Result<Self> {
        let mut simplices = BTreeSet::new();
        for raw in maximal {
            if raw.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let mut s = raw.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != raw.len() {
                return Err(Error::DuplicateVertex(raw.clone()));
            }
            insert_with_faces(&mut simplices, &s);
        }
        let vertex_count = simplices
            .iter()
            .map(|s| s[s.len() - 1] + 1)
            .max()
            .unwrap_or(0);
        for v in 0..vertex_count {
            if !simplices.contains(&vec![v]) {
                return Err(Error::PhantomVertex {
                    vertex: v,
                    vertex_count,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            vertex_count,
            simplices,
        })
    }

    /// Wraps an already face-closed simplex set. Callers guarantee closure;
    /// vertex range and phantom checks still run.
    pub(crate) fn from_closed_set(
        name: impl Into<String>,
        simplices: BTreeSet<Simplex>,
    ) -> Result<Self> {
        let vertex_count = simplices
            .iter()
            .map(|s| s[s.len() - 1] + 1)
            .max()
            .unwrap_or(0);
        for v in 0..vertex_count {
            if !simplices.contains(&vec![v]) {
                return Err(Error::PhantomVertex {
                    vertex: v,
                    vertex_count,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            vertex_count,
            simplices,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &[Vertex]) -> bool {
        self.simplices.contains(s)
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn simplices_of_dim(&self, k: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.len() == k + 1)
    }

    /// Dimension, or None for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// Simplex counts per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1i64 } else { -1i64 })
            .sum()
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| !self.has_proper_coface(s))
            .cloned()
            .collect()
    }

    fn has_proper_coface(&self, s: &[Vertex]) -> bool {
        // Desk scale: scan cofaces by one extra vertex.
        (0..self.vertex_count).any(|v| {
            if s.binary_search(&v).is_ok() {
                return false;
            }
            let mut t = s.to_vec();
            let pos = t.binary_search(&v).unwrap_err();
            t.insert(pos, v);
            self.simplices.contains(&t)
        })
    }

    /// Simplices in dimension-major, then lexicographic order. This is the
    /// canonical order used to number subdivision vertices.
    pub fn simplices_canonical(&self) -> Vec<Simplex> {
        let mut all: Vec<Simplex> = self.simplices.iter().cloned().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// Edges as vertex pairs (u, v) with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.simplices_of_dim(1).map(|e| (e[0], e[1]))
    }

    /// Connected components of the vertex set under the edge relation,
    /// each sorted; components sorted by minimum vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (u, v) in self.edges() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for v in 0..self.vertex_count {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

fn insert_with_faces(set: &mut BTreeSet<Simplex>, s: &[Vertex]) {
    // All nonempty subsets via bitmask; simplex dimensions stay tiny here.
    debug_assert!(s.len() <= 24);
    for mask in 1u32..(1 << s.len()) {
        let face: Simplex = s
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        set.insert(face);
    }
}

/// Vertex map between named complexes. The map is simplicial: images of
/// simplices are simplices of the target (after deduplication).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub source: String,
    pub target: String,
    pub vertex_map: Vec<Vertex>,
}

impl SimplicialMap {
    pub fn new(
        src: &SimplicialComplex,
        tgt: &SimplicialComplex,
        vertex_map: Vec<Vertex>,
    ) -> Result<Self> {
        let map = Self {
            source: src.name().to_string(),
            target: tgt.name().to_string(),
            vertex_map,
        };
        map.validate(src, tgt)?;
        Ok(map)
    }

    pub fn validate(&self, src: &SimplicialComplex, tgt: &SimplicialComplex) -> Result<()> {
        if self.source != src.name() || self.target != tgt.name() {
            return Err(Error::MapNameMismatch {
                got: (self.source.clone(), self.target.clone()),
                expected: (src.name().to_string(), tgt.name().to_string()),
            });
        }
        if self.vertex_map.len() != src.vertex_count() {
            return Err(Error::MapLengthMismatch {
                got: self.vertex_map.len(),
                expected: src.vertex_count(),
            });
        }
        for &w in &self.vertex_map {
            if w >= tgt.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    vertex_count: tgt.vertex_count(),
                });
            }
        }
        for s in src.simplices() {
            let img = self.image_of(s);
            if !tgt.contains(&img) {
                return Err(Error::NotSimplicial {
                    simplex: s.clone(),
                    image: img,
                });
            }
        }
        Ok(())
    }

    /// Image vertex set of a simplex, sorted and deduplicated.
    pub fn image_of(&self, s: &[Vertex]) -> Simplex {
        let mut img: Simplex = s.iter().map(|&v| self.vertex_map[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// Checks that the map is a simplicial automorphism of `x`.
    pub fn validate_automorphism(&self, x: &SimplicialComplex) -> Result<()> {
        self.validate(x, x)?;
        let mut seen = vec![false; x.vertex_count()];
        for &w in &self.vertex_map {
            if seen[w] {
                return Err(Error::NotAnAutomorphism(format!(
                    "vertex {w} has two preimages"
                )));
            }
            seen[w] = true;
        }
        // A simplicial bijection on a finite complex permutes each dimension,
        // so the inverse is simplicial too; check anyway, it is cheap.
        let mut inverse = vec![0; x.vertex_count()];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            inverse[w] = v;
        }
        for s in x.simplices() {
            let mut pre: Simplex = s.iter().map(|&v| inverse[v]).collect();
            pre.sort_unstable();
            if !x.contains(&pre) {
                return Err(Error::NotAnAutomorphism(format!(
                    "inverse image of {s:?} is not a simplex"
                )));
            }
        }
        Ok(())
    }
}

/// Full subcomplex on a vertex subset, re-indexed to 0..k, with the
/// embedding back into the ambient complex.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub complex: SimplicialComplex,
    /// Subspace vertex -> ambient vertex, strictly increasing.
    pub to_ambient: Vec<Vertex>,
}

pub fn full_subcomplex(x: &SimplicialComplex, vertices: &[Vertex]) -> Result<Subspace> {
    let mut to_ambient: Vec<Vertex> = vertices.to_vec();
    to_ambient.sort_unstable();
    to_ambient.dedup();
    for &v in &to_ambient {
        if v >= x.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: x.vertex_count(),
            });
        }
    }
    let index_of: BTreeMap<Vertex, Vertex> = to_ambient
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut simplices = BTreeSet::new();
    for s in x.simplices() {
        if s.iter().all(|v| index_of.contains_key(v)) {
            simplices.insert(s.iter().map(|v| index_of[v]).collect::<Simplex>());
        }
    }
    let name = format!("{}:full[{}]", x.name(), summarize_vertices(&to_ambient));
    let complex = SimplicialComplex::from_closed_set(name, simplices)?;
    Ok(Subspace {
        complex,
        to_ambient,
    })
}

fn summarize_vertices(vs: &[Vertex]) -> String {
    if vs.len() <= 8 {
        vs.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    } else {
        format!("{} vertices, {}..{}", vs.len(), vs[0], vs[vs.len() - 1])
    }
}

/// One-point union. Basepoints are all identified to vertex 0 of the result;
/// the remaining vertices of each summand follow in input order. Returns the
/// wedge and one vertex embedding per summand.
pub fn wedge(summands: &[(&SimplicialComplex, Vertex)]) -> Result<(SimplicialComplex, Vec<Vec<Vertex>>)> {
    if summands.is_empty() {
        return Err(Error::Malformed("wedge of zero complexes".into()));
    }
    for (x, bp) in summands {
        if *bp >= x.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: *bp,
                vertex_count: x.vertex_count(),
            });
        }
    }
    let mut embeddings = Vec::new();
    let mut next = 1usize;
    for (x, bp) in summands {
        let mut emb = vec![0; x.vertex_count()];
        for v in 0..x.vertex_count() {
            if v == *bp {
                emb[v] = 0;
            } else {
                emb[v] = next;
                next += 1;
            }
        }
        embeddings.push(emb);
    }
    let mut simplices = BTreeSet::new();
    simplices.insert(vec![0]);
    for ((x, _), emb) in summands.iter().zip(&embeddings) {
        for s in x.simplices() {
            let mut img: Simplex = s.iter().map(|&v| emb[v]).collect();
            img.sort_unstable();
            simplices.insert(img);
        }
    }
    let name = format!(
        "wedge({})",
        summands
            .iter()
            .map(|(x, _)| x.name())
            .collect::<Vec<_>>()
            .join(",")
    );
    let complex = SimplicialComplex::from_closed_set(name, simplices)?;
    Ok((complex, embeddings))
}
