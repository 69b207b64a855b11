//! Vertex covers of a complex and category-style bounds derived from them.
//!
//! A piece is a set of vertices read as the union of their open stars, an
//! open set that deformation-retracts onto the full subcomplex spanned by
//! the piece. The pieces cover the space exactly when every vertex lies in
//! some piece. A cover is admissible for a class when, for every piece and
//! every connected component of its full subcomplex, the image of the
//! component's fundamental group in the ambient group lies in the class.
//! The least number of admissible pieces over all covers is the category
//! bound this module approximates from above and below.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use crate::budget::Budget;
use crate::classes::{classify_group, classify_image, Answer, GroupClass, Verdict};
use crate::complex::{barycentric_subdivision, SimplicialComplex, SubdivisionCarrier, Vertex};
use crate::error::{Error, Result};
use crate::pi1::{edge_path_presentation, inclusion_image, EdgeWordMap, GroupPresentation};

/// Cover of a named complex by nonempty vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCover {
    pub complex: String,
    pub pieces: Vec<Vec<Vertex>>,
}

impl VertexCover {
    /// Pieces are sorted and deduplicated; empty pieces and empty covers
    /// are rejected.
    pub fn new(complex: impl Into<String>, pieces: Vec<Vec<Vertex>>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyPiece { piece: 0 });
        }
        let mut cleaned = Vec::with_capacity(pieces.len());
        for (i, piece) in pieces.into_iter().enumerate() {
            let set: BTreeSet<Vertex> = piece.into_iter().collect();
            if set.is_empty() {
                return Err(Error::EmptyPiece { piece: i });
            }
            cleaned.push(set.into_iter().collect());
        }
        Ok(Self {
            complex: complex.into(),
            pieces: cleaned,
        })
    }

    /// Every vertex of `x` lies in some piece and no piece leaves the
    /// vertex range.
    pub fn check_against(&self, x: &SimplicialComplex) -> Result<()> {
        if self.complex != x.name() {
            return Err(Error::CoverNameMismatch {
                got: self.complex.clone(),
                expected: x.name().to_string(),
            });
        }
        let mut seen = vec![false; x.vertex_count()];
        for piece in &self.pieces {
            for &v in piece {
                if v >= x.vertex_count() {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertex_count: x.vertex_count(),
                    });
                }
                seen[v] = true;
            }
        }
        if let Some(vertex) = seen.iter().position(|&s| !s) {
            return Err(Error::NotCovering { vertex });
        }
        Ok(())
    }

    pub fn is_partition(&self, x: &SimplicialComplex) -> bool {
        let mut count = vec![0usize; x.vertex_count()];
        for piece in &self.pieces {
            for &v in piece {
                if v >= count.len() {
                    return false;
                }
                count[v] += 1;
            }
        }
        count.iter().all(|&c| c == 1)
    }
}

/// Per-piece admissibility verdicts with their conjunction.
#[derive(Debug, Clone)]
pub struct CoverReport {
    pub piece_verdicts: Vec<Verdict>,
    pub admissible: Answer,
    pub partition: bool,
}

fn aggregate(verdicts: &[Verdict]) -> Answer {
    if verdicts.iter().any(|v| v.answer == Answer::No) {
        Answer::No
    } else if verdicts.iter().any(|v| v.answer == Answer::Unknown) {
        Answer::Unknown
    } else {
        Answer::Yes
    }
}

/// Classify every piece of the cover against the class. The ambient
/// complex must be connected so that its fundamental group is defined.
pub fn validate_cover(
    x: &SimplicialComplex,
    cover: &VertexCover,
    class: &GroupClass,
    budget: &Budget,
) -> Result<CoverReport> {
    cover.check_against(x)?;
    let (ambient, ewm) = edge_path_presentation(x, 0)?;
    let mut piece_verdicts = Vec::with_capacity(cover.pieces.len());
    for piece in &cover.pieces {
        let image = inclusion_image(x, piece, &ewm)?;
        piece_verdicts.push(classify_image(&image, &ambient, class, budget));
    }
    Ok(CoverReport {
        admissible: aggregate(&piece_verdicts),
        partition: cover.is_partition(x),
        piece_verdicts,
    })
}

/// Multiplicity and nerve of a cover under open-star semantics: a point
/// in the interior of a simplex lies in the pieces that simplex meets, so
/// both quantities are read off the maximal simplices.
#[derive(Debug, Clone)]
pub struct NerveReport {
    pub multiplicity: usize,
    pub nerve: SimplicialComplex,
    /// For partitions: the simplicial map to the nerve, vertex to its
    /// piece index.
    pub index_map: Option<Vec<usize>>,
}

pub fn multiplicity_and_nerve(x: &SimplicialComplex, cover: &VertexCover) -> Result<NerveReport> {
    cover.check_against(x)?;
    let piece_sets: Vec<BTreeSet<Vertex>> = cover
        .pieces
        .iter()
        .map(|p| p.iter().copied().collect())
        .collect();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut multiplicity = 0;
    for sigma in x.maximal_simplices() {
        let meets: Vec<usize> = (0..piece_sets.len())
            .filter(|&i| sigma.iter().any(|v| piece_sets[i].contains(v)))
            .collect();
        multiplicity = multiplicity.max(meets.len());
        faces.insert(meets);
    }
    let face_list: Vec<Vec<usize>> = faces.into_iter().collect();
    let nerve = SimplicialComplex::build(format!("nerve({})", cover.complex), &face_list)?;

    let mut owner: Vec<Option<usize>> = vec![None; x.vertex_count()];
    let mut is_partition = true;
    for (i, piece) in cover.pieces.iter().enumerate() {
        for &v in piece {
            if owner[v].is_some() {
                is_partition = false;
            }
            owner[v].get_or_insert(i);
        }
    }
    let index_map = if is_partition {
        Some(owner.into_iter().map(|o| o.expect("cover checked")).collect())
    } else {
        None
    };
    Ok(NerveReport {
        multiplicity,
        nerve,
        index_map,
    })
}

/// Partition of the subdivision's vertices by carrier dimension. Each
/// piece spans a discrete full subcomplex, because adjacent subdivision
/// vertices have nested carriers of distinct dimensions.
pub fn stars_cover(sd: &SubdivisionCarrier) -> VertexCover {
    let top = sd
        .carrier
        .iter()
        .map(|c| c.len())
        .max()
        .unwrap_or(1);
    let mut pieces = vec![Vec::new(); top];
    for (v, c) in sd.carrier.iter().enumerate() {
        pieces[c.len() - 1].push(v);
    }
    VertexCover::new(sd.complex.name(), pieces)
        .expect("every dimension up to the top one carries a simplex")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Stars,
    Greedy,
    Exact,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stars" => Ok(Strategy::Stars),
            "greedy" => Ok(Strategy::Greedy),
            "exact" => Ok(Strategy::Exact),
            _ => Err(Error::Malformed(format!("unknown strategy {s:?}"))),
        }
    }
}

/// Certified upper bound with the witness cover that realizes it. The
/// witness may live on the barycentric subdivision of the input; `complex`
/// is the complex the cover refers to.
#[derive(Debug, Clone)]
pub struct CatBound {
    pub bound: usize,
    pub complex: SimplicialComplex,
    pub cover: VertexCover,
    pub report: CoverReport,
    /// Set only when the search provably visited every smaller cover.
    pub optimal: bool,
}

pub fn cat_upper(
    x: &SimplicialComplex,
    class: &GroupClass,
    strategy: Strategy,
    budget: &Budget,
) -> Result<CatBound> {
    if x.is_empty() {
        return Err(Error::EmptyComplex(x.name().to_string()));
    }
    if !x.is_connected() {
        return Err(Error::Disconnected(x.name().to_string()));
    }
    match strategy {
        Strategy::Stars => stars_bound(x, class, budget),
        Strategy::Greedy => {
            let all: Vec<Vertex> = (0..x.vertex_count()).collect();
            let whole = VertexCover::new(x.name(), vec![all])?;
            let report = validate_cover(x, &whole, class, budget)?;
            if report.admissible == Answer::Yes {
                return Ok(CatBound {
                    bound: 1,
                    complex: x.clone(),
                    cover: whole,
                    report,
                    optimal: true,
                });
            }
            greedy_merge(x, class, budget)
        }
        Strategy::Exact => exact_partition_search(x, class, budget),
    }
}

fn stars_bound(x: &SimplicialComplex, class: &GroupClass, budget: &Budget) -> Result<CatBound> {
    let sd = barycentric_subdivision(x);
    let cover = stars_cover(&sd);
    let report = validate_cover(&sd.complex, &cover, class, budget)?;
    Ok(CatBound {
        bound: cover.pieces.len(),
        complex: sd.complex,
        cover,
        report,
        optimal: false,
    })
}

/// Start from the carrier-dimension partition of the subdivision and
/// merge pieces first-fit while the merged piece stays admissible.
fn greedy_merge(x: &SimplicialComplex, class: &GroupClass, budget: &Budget) -> Result<CatBound> {
    let sd = barycentric_subdivision(x);
    let cover = stars_cover(&sd);
    let xs = sd.complex;
    let (ambient, ewm) = edge_path_presentation(&xs, 0)?;
    let verdict_of = |verts: &[Vertex]| -> Result<Verdict> {
        let image = inclusion_image(&xs, verts, &ewm)?;
        Ok(classify_image(&image, &ambient, class, budget))
    };

    let mut pieces = cover.pieces;
    let mut verdicts = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        verdicts.push(verdict_of(piece)?);
    }
    let mut i = 0;
    while i < pieces.len() {
        let mut j = i + 1;
        while j < pieces.len() {
            let mut merged: Vec<Vertex> =
                pieces[i].iter().chain(&pieces[j]).copied().collect();
            merged.sort_unstable();
            let v = verdict_of(&merged)?;
            if v.answer == Answer::Yes {
                pieces[i] = merged;
                verdicts[i] = v;
                pieces.remove(j);
                verdicts.remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }

    let cover = VertexCover::new(xs.name(), pieces)?;
    let report = CoverReport {
        admissible: aggregate(&verdicts),
        partition: cover.is_partition(&xs),
        piece_verdicts: verdicts,
    };
    Ok(CatBound {
        bound: cover.pieces.len(),
        complex: xs,
        cover,
        report,
        optimal: false,
    })
}

/// Enumerate vertex partitions of the complex itself in restricted-growth
/// order, by ascending piece count. For subgroup-closed kinds any cover
/// can be shrunk to a partition without losing admissibility, so the first
/// hit is optimal provided no smaller level was left undecided.
fn exact_partition_search(
    x: &SimplicialComplex,
    class: &GroupClass,
    budget: &Budget,
) -> Result<CatBound> {
    let n = x.vertex_count();
    if n > budget.exact_vertex_cap {
        return Err(Error::BudgetExceeded(format!(
            "exact search on {n} vertices exceeds the cap of {}",
            budget.exact_vertex_cap
        )));
    }
    let (ambient, ewm) = edge_path_presentation(x, 0)?;
    let mut cache: BTreeMap<Vec<Vertex>, Verdict> = BTreeMap::new();
    let mut undecided_below = false;
    for k in 1..=n {
        let mut undecided_here = false;
        let mut found: Option<Vec<Vec<Vertex>>> = None;
        for_each_partition(n, k, &mut |rgs| {
            let mut pieces = vec![Vec::new(); k];
            for (v, &b) in rgs.iter().enumerate() {
                pieces[b].push(v);
            }
            for piece in &pieces {
                let verdict = match cache.get(piece) {
                    Some(v) => v.clone(),
                    None => {
                        let v = piece_verdict(x, piece, &ambient, &ewm, class, budget);
                        cache.insert(piece.clone(), v.clone());
                        v
                    }
                };
                match verdict.answer {
                    Answer::Yes => continue,
                    Answer::Unknown => {
                        undecided_here = true;
                        return false;
                    }
                    Answer::No => return false,
                }
            }
            found = Some(pieces);
            true
        });
        if let Some(pieces) = found {
            let cover = VertexCover::new(x.name(), pieces)?;
            let report = validate_cover(x, &cover, class, budget)?;
            return Ok(CatBound {
                bound: k,
                complex: x.clone(),
                cover,
                report,
                optimal: !undecided_below && class.kind.subgroup_closed(),
            });
        }
        undecided_below |= undecided_here;
    }
    unreachable!("the partition into singletons has discrete pieces and always passes")
}

fn piece_verdict(
    x: &SimplicialComplex,
    piece: &[Vertex],
    ambient: &GroupPresentation,
    ewm: &EdgeWordMap,
    class: &GroupClass,
    budget: &Budget,
) -> Verdict {
    match inclusion_image(x, piece, ewm) {
        Ok(image) => classify_image(&image, ambient, class, budget),
        Err(e) => Verdict::unknown(format!("piece rejected: {e}")),
    }
}

/// Visit every partition of {0..n} into exactly k blocks as a restricted
/// growth string; the callback returns true to stop early.
fn for_each_partition(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        rgs: &mut Vec<usize>,
        used: usize,
        n: usize,
        k: usize,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if rgs.len() == n {
            return used == k && f(rgs);
        }
        // prune: remaining positions must be able to reach k blocks
        let remaining = n - rgs.len();
        if used + remaining < k {
            return false;
        }
        let top = (used + 1).min(k);
        for b in 0..top {
            rgs.push(b);
            let new_used = used.max(b + 1);
            if rec(rgs, new_used, n, k, f) {
                return true;
            }
            rgs.pop();
        }
        false
    }
    rec(&mut Vec::with_capacity(n), 0, n, k, f)
}

/// Lower bound: a single-piece cover is the whole space, so when the full
/// fundamental group is provably outside the class the category is at
/// least two; otherwise one is all that is certified.
pub fn cat_lower(
    x: &SimplicialComplex,
    class: &GroupClass,
    budget: &Budget,
) -> Result<(usize, Verdict)> {
    if x.is_empty() {
        return Err(Error::EmptyComplex(x.name().to_string()));
    }
    let (pres, _) = edge_path_presentation(x, 0)?;
    let verdict = classify_group(&pres, class, budget);
    let bound = if verdict.answer == Answer::No { 2 } else { 1 };
    Ok((bound, verdict))
}
