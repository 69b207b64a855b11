//! Budgeted presentation simplification.
//!
//! Only classical equivalence moves are used: free and cyclic reduction,
//! removal of duplicate relators up to rotation and inversion, and
//! elimination of a generator through a relator that mentions it exactly
//! once. The presented group never changes; the abelianization is a cheap
//! regression check for that.

use crate::pi1::{free_reduce, invert_word, GroupPresentation, Word};

/// Simplifies within `move_budget` moves. Eliminations and relator drops
/// count as moves; reductions are bookkeeping. Deterministic: candidates
/// are ranked by (relator length, generator index, relator index).
pub fn simplify_presentation(p: &GroupPresentation, move_budget: usize) -> GroupPresentation {
    let mut gc = p.generator_count;
    let mut rels: Vec<Word> = p.relators.iter().map(|r| free_reduce(r)).collect();
    let mut moves = 0usize;

    loop {
        for r in &mut rels {
            *r = cyclic_reduce(&free_reduce(r));
        }
        rels.retain(|r| !r.is_empty());
        dedupe_cyclic(&mut rels, &mut moves, move_budget);

        if moves >= move_budget {
            break;
        }
        let Some((ri, pos)) = pick_elimination(&rels) else {
            break;
        };
        let relator = rels.remove(ri);
        let letter = relator[pos];
        let g = letter.unsigned_abs() as i32;
        // relator = u (letter) v = 1, so the generator equals a word in
        // the others: +g => inv(u) inv(v); -g => v u.
        let u = &relator[..pos];
        let v = &relator[pos + 1..];
        let replacement: Word = if letter > 0 {
            let mut w = invert_word(u);
            w.extend(invert_word(v));
            w
        } else {
            let mut w = v.to_vec();
            w.extend_from_slice(u);
            w
        };
        let replacement_inv = invert_word(&replacement);
        for r in &mut rels {
            let mut out: Word = Vec::with_capacity(r.len());
            for &l in r.iter() {
                if l == g {
                    out.extend_from_slice(&replacement);
                } else if l == -g {
                    out.extend_from_slice(&replacement_inv);
                } else {
                    out.push(l);
                }
            }
            *r = free_reduce(&out);
        }
        // Renumber letters above the removed generator.
        for r in &mut rels {
            for l in r.iter_mut() {
                if l.abs() > g {
                    *l -= l.signum();
                }
            }
        }
        gc -= 1;
        moves += 1;
    }

    rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    GroupPresentation {
        generator_count: gc,
        relators: rels,
    }
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut s = 0;
    let mut e = w.len();
    while e > s + 1 && w[s] == -w[e - 1] {
        s += 1;
        e -= 1;
    }
    w[s..e].to_vec()
}

/// Lexicographically least rotation of the word or its inverse.
fn cyclic_canonical(w: &[i32]) -> Word {
    let mut best: Option<Word> = None;
    for candidate in [w.to_vec(), invert_word(w)] {
        for i in 0..candidate.len().max(1) {
            let mut rot = candidate[i..].to_vec();
            rot.extend_from_slice(&candidate[..i]);
            if best.as_ref().map_or(true, |b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn dedupe_cyclic(rels: &mut Vec<Word>, moves: &mut usize, budget: usize) {
    let mut seen = std::collections::BTreeSet::new();
    let mut kept = Vec::with_capacity(rels.len());
    for r in rels.drain(..) {
        if seen.insert(cyclic_canonical(&r)) {
            kept.push(r);
        } else if *moves < budget {
            *moves += 1;
        } else {
            kept.push(r);
        }
    }
    *rels = kept;
}

/// Shortest relator containing some generator exactly once; ties broken by
/// generator then relator index. Returns (relator index, letter position).
fn pick_elimination(rels: &[Word]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, i32, usize, usize)> = None;
    for (ri, r) in rels.iter().enumerate() {
        let mut counts = std::collections::BTreeMap::new();
        for &l in r {
            *counts.entry(l.abs()).or_insert(0usize) += 1;
        }
        for (pos, &l) in r.iter().enumerate() {
            if counts[&l.abs()] == 1 {
                let rank = (r.len(), l.abs(), ri);
                if best.map_or(true, |(bl, bg, bri, _)| rank < (bl, bg, bri)) {
                    best = Some((r.len(), l.abs(), ri, pos));
                }
            }
        }
    }
    best.map(|(_, _, ri, pos)| (ri, pos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi1::{edge_path_presentation, todd_coxeter, AbelianInvariants, CosetOutcome};

    #[test]
    fn kills_a_trivial_generator() {
        let p = GroupPresentation::new(2, vec![vec![2]]).unwrap();
        let s = simplify_presentation(&p, 100);
        assert_eq!(s.generator_count, 1);
        assert!(s.relators.is_empty());
    }

    #[test]
    fn collapses_to_the_trivial_presentation() {
        let p = GroupPresentation::new(1, vec![vec![1]]).unwrap();
        let s = simplify_presentation(&p, 100);
        assert_eq!(s.generator_count, 0);
        assert!(s.relators.is_empty());
    }

    #[test]
    fn chain_of_equalities_collapses() {
        let p = GroupPresentation::new(
            4,
            vec![vec![1], vec![1, -2], vec![2, -3]],
        )
        .unwrap();
        let s = simplify_presentation(&p, 100);
        assert_eq!(s.generator_count, 1);
        assert!(s.relators.is_empty());
    }

    #[test]
    fn budget_zero_only_normalizes() {
        let p = GroupPresentation::new(2, vec![vec![1, 2, -2, -1, 2]]).unwrap();
        let s = simplify_presentation(&p, 0);
        assert_eq!(s.generator_count, 2);
        assert_eq!(s.relators, vec![vec![2]]);
    }

    #[test]
    fn sphere_presentation_simplifies_to_trivial() {
        let s2 = crate::complex::SimplicialComplex::build(
            "s2",
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap();
        let (p, _) = edge_path_presentation(&s2, 0).unwrap();
        let s = simplify_presentation(&p, 100);
        assert_eq!(s.generator_count, 0);
        assert!(s.relators.is_empty());
    }

    #[test]
    fn torus_presentation_simplifies_to_two_generators() {
        let c = crate::complex::SimplicialComplex::build(
            "s1",
            &[vec![0, 1], vec![0, 2], vec![1, 2]],
        )
        .unwrap();
        let t = crate::complex::product(&c, &c).unwrap().complex;
        let (p, _) = edge_path_presentation(&t, 0).unwrap();
        let s = simplify_presentation(&p, 10_000);
        assert_eq!(s.generator_count, 2, "relators: {:?}", s.relators);
        assert_eq!(s.relators.len(), 1);
        assert_eq!(s.relators[0].len(), 4);
        assert_eq!(
            s.abelianization(),
            AbelianInvariants { rank: 2, torsion: vec![] }
        );
    }

    #[test]
    fn abelianization_is_invariant_under_simplification() {
        let cases = vec![
            GroupPresentation::new(2, vec![vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]])
                .unwrap(),
            GroupPresentation::new(3, vec![vec![1, 2, -1, -2], vec![3, 3, 3]]).unwrap(),
            GroupPresentation::new(4, vec![vec![1, -2], vec![2, -3], vec![3, -4], vec![4, 4]])
                .unwrap(),
        ];
        for p in cases {
            let s = simplify_presentation(&p, 1_000);
            assert_eq!(p.abelianization(), s.abelianization());
        }
    }

    #[test]
    fn finite_index_is_preserved_by_simplification() {
        let p = GroupPresentation::new(
            3,
            vec![vec![3, -1], vec![1, 1], vec![2, 2], vec![1, 2, 1, 2, 1, 2]],
        )
        .unwrap();
        let s = simplify_presentation(&p, 1_000);
        assert_eq!(todd_coxeter(&p, &[], 1_000), CosetOutcome::Index(6));
        assert_eq!(todd_coxeter(&s, &[], 1_000), CosetOutcome::Index(6));
    }
}
