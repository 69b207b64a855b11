//! Sound membership tests for finitely presented groups and for images of
//! subspace fundamental groups.
//!
//! Every Yes and every No is backed by one of a fixed list of rules; when
//! no rule applies the verdict is Unknown. Rules fire on the Tietze
//! simplification of the input, in a fixed order, so verdicts and traces
//! are deterministic.

use crate::budget::Budget;
use crate::classes::{Answer, ClassKind, GroupClass, LogRate, Verdict};
use crate::classes::folding::free_subgroup_rank;
use crate::pi1::{
    simplify_presentation, smith_normal_form, todd_coxeter, CosetOutcome, GroupPresentation,
    Pi1Image, Word,
};

/// Decide whether the presented group lies in the class. Sound in both
/// directions; Unknown when the rule list cannot decide within budget.
pub fn classify_group(p: &GroupPresentation, class: &GroupClass, budget: &Budget) -> Verdict {
    let s = simplify_presentation(p, budget.tietze_moves);
    let kind = class.kind;
    let mut trace = vec![format!(
        "simplified presentation: {} generators, {} relators",
        s.generator_count,
        s.relators.len()
    )];

    // finite quotient search by coset enumeration over the trivial subgroup
    match todd_coxeter(&s, &[], budget.max_cosets) {
        CosetOutcome::Index(1) => {
            trace.push("coset enumeration closed with index 1: the group is trivial".into());
            return Verdict {
                answer: Answer::Yes,
                trace,
            };
        }
        CosetOutcome::Index(n) => {
            trace.push(format!("coset enumeration closed: finite group of order {n}"));
            let answer = match kind {
                ClassKind::Trivial => {
                    trace.push(format!("order {n} > 1, so not trivial"));
                    Answer::No
                }
                ClassKind::Abelian => {
                    // a finite group is abelian exactly when its
                    // abelianization has the same order
                    let ab = s.abelianization();
                    let ab_order: u128 = ab.torsion.iter().map(|&t| u128::from(t)).product();
                    if ab.rank == 0 && ab_order == n as u128 {
                        trace.push(format!("abelianization also has order {n}"));
                        Answer::Yes
                    } else {
                        trace.push(format!(
                            "abelianization has order {ab_order} < {n}, so the group is not abelian"
                        ));
                        Answer::No
                    }
                }
                _ => {
                    trace.push(format!("finite groups belong to {kind}"));
                    Answer::Yes
                }
            };
            return Verdict { answer, trace };
        }
        CosetOutcome::Exceeded => {
            trace.push(format!(
                "coset enumeration exceeded {} cosets",
                budget.max_cosets
            ));
        }
    }

    // cyclic presentations are decided completely by their abelianization
    if s.generator_count <= 1 {
        let ab = s.abelianization();
        let answer = match kind {
            ClassKind::Trivial => {
                if ab.is_trivial() {
                    Answer::Yes
                } else {
                    Answer::No
                }
            }
            ClassKind::Finite => {
                if ab.rank == 0 {
                    Answer::Yes
                } else {
                    Answer::No
                }
            }
            _ => Answer::Yes,
        };
        trace.push(format!(
            "cyclic group with abelianization rank {} torsion {:?}",
            ab.rank, ab.torsion
        ));
        return Verdict { answer, trace };
    }

    // explicit commutator relators for every generator pair force the
    // group to equal its abelianization
    if all_pairs_commute(&s) {
        let ab = s.abelianization();
        trace.push(format!(
            "all generator pairs commute by relators: abelian with rank {} torsion {:?}",
            ab.rank, ab.torsion
        ));
        let answer = match kind {
            ClassKind::Trivial => {
                if ab.is_trivial() {
                    Answer::Yes
                } else {
                    Answer::No
                }
            }
            ClassKind::Finite => {
                if ab.rank == 0 {
                    Answer::Yes
                } else {
                    Answer::No
                }
            }
            _ => Answer::Yes,
        };
        return Verdict { answer, trace };
    }

    // free of rank >= 2: outside every amenable kind, and growth at least
    // log 3 blocks small exponential-rate kinds
    if s.is_free() {
        trace.push(format!(
            "free group of rank {} (rank one was handled above)",
            s.generator_count
        ));
        let answer = match kind {
            ClassKind::ExpBelow(r) => exp_rate_answer(r, &mut trace),
            _ => {
                // every remaining kind implies amenability
                trace.push("non-abelian free groups are not amenable".into());
                Answer::No
            }
        };
        return Verdict { answer, trace };
    }

    // one-relator surface presentation of genus >= 2
    if let Some(genus) = surface_genus(&s) {
        trace.push(format!(
            "one-relator surface presentation of genus {genus}"
        ));
        let answer = match kind {
            ClassKind::ExpBelow(_) => {
                trace.push("no certified growth bound for surface groups".into());
                Answer::Unknown
            }
            _ => {
                trace.push("surface groups of genus >= 2 are not amenable".into());
                Answer::No
            }
        };
        return Verdict { answer, trace };
    }

    // abelianization obstructions that survive any further quotient
    let ab = s.abelianization();
    if kind == ClassKind::Trivial && !ab.is_trivial() {
        trace.push("nontrivial abelianization".into());
        return Verdict {
            answer: Answer::No,
            trace,
        };
    }
    if kind == ClassKind::Finite && ab.rank > 0 {
        trace.push(format!("abelianization has free rank {}", ab.rank));
        return Verdict {
            answer: Answer::No,
            trace,
        };
    }

    trace.push("no rule decided membership".into());
    Verdict {
        answer: Answer::Unknown,
        trace,
    }
}

/// Decide whether the image of a subspace fundamental group lies in the
/// class, one verdict per connected component of the subspace, combined
/// conjunctively.
pub fn classify_image(
    image: &Pi1Image,
    ambient: &GroupPresentation,
    class: &GroupClass,
    budget: &Budget,
) -> Verdict {
    let parts: Vec<Verdict> = image
        .component_words
        .iter()
        .zip(&image.component_presentations)
        .map(|(words, pres)| classify_component(words, pres, ambient, class, budget))
        .collect();
    Verdict::all(parts, "component")
}

fn classify_component(
    words: &[Word],
    component: &GroupPresentation,
    ambient: &GroupPresentation,
    class: &GroupClass,
    budget: &Budget,
) -> Verdict {
    if words.iter().all(|w| w.is_empty()) {
        return Verdict::yes("image is the trivial subgroup");
    }

    // the image is a quotient of the component group, and every kind in
    // the lattice is closed under quotients, so Yes transfers
    let quotient = classify_group(component, class, budget);
    if quotient.is_yes() {
        let mut v = quotient.prefixed("component group: ");
        v.trace
            .push("the image is a quotient of the component group".into());
        return v;
    }

    if ambient.is_free() {
        let total_letters: usize = words.iter().map(Vec::len).sum();
        if total_letters > budget.nielsen_steps {
            return Verdict::unknown(format!(
                "image words have {total_letters} letters, over the reduction budget"
            ));
        }
        let rank = free_subgroup_rank(words);
        let mut trace = vec![format!(
            "ambient group is free: folded image subgroup has rank {rank}"
        )];
        let answer = match rank {
            0 => Answer::Yes,
            1 => match class.kind {
                ClassKind::Trivial | ClassKind::Finite => {
                    trace.push("infinite cyclic image".into());
                    Answer::No
                }
                _ => {
                    trace.push("infinite cyclic image is abelian".into());
                    Answer::Yes
                }
            },
            _ => match class.kind {
                ClassKind::ExpBelow(r) => exp_rate_answer(r, &mut trace),
                _ => {
                    trace.push("non-abelian free image is not amenable".into());
                    Answer::No
                }
            },
        };
        return Verdict { answer, trace };
    }

    // non-free ambient: read the words in the abelianization of the
    // ambient group, where nontriviality and infinite order are decidable
    // and survive into the image subgroup
    match class.kind {
        ClassKind::Trivial => {
            if let Some(w) = words
                .iter()
                .find(|w| !in_relator_lattice(ambient, w))
            {
                return Verdict::no(format!(
                    "image word {w:?} is nonzero in the ambient first homology"
                ));
            }
        }
        ClassKind::Finite => {
            if let Some(w) = words
                .iter()
                .find(|w| exceeds_relator_rank(ambient, w))
            {
                return Verdict::no(format!(
                    "image word {w:?} has infinite order in the ambient first homology"
                ));
            }
        }
        _ => {}
    }

    let mut v = quotient.prefixed("component group: ");
    v.answer = Answer::Unknown;
    v.trace
        .push("image may be a proper quotient, so No does not transfer".into());
    v
}

fn exponent_vector(w: &Word, generator_count: usize) -> Vec<i128> {
    let mut v = vec![0i128; generator_count];
    for &letter in w {
        v[letter.unsigned_abs() as usize - 1] += i128::from(letter.signum());
    }
    v
}

fn lattice_shape(m: Vec<Vec<i128>>) -> (usize, i128) {
    let diag = smith_normal_form(m);
    let nonzero: Vec<i128> = diag.into_iter().filter(|&d| d != 0).collect();
    (nonzero.len(), nonzero.iter().product())
}

/// The exponent vector of the word lies in the integer row lattice of the
/// relator matrix, which is equivalent to the word dying in the
/// abelianization. Stacking the vector changes neither the rank nor the
/// product of elementary divisors exactly when it was already in the
/// lattice.
fn in_relator_lattice(ambient: &GroupPresentation, w: &Word) -> bool {
    let m = ambient.relator_matrix();
    let v = exponent_vector(w, ambient.generator_count);
    let (rank, det) = lattice_shape(m.clone());
    let mut stacked = m;
    stacked.push(v);
    let (rank2, det2) = lattice_shape(stacked);
    rank == rank2 && det == det2
}

/// The exponent vector leaves even the rational span of the relator rows,
/// so the word has infinite order in the abelianization.
fn exceeds_relator_rank(ambient: &GroupPresentation, w: &Word) -> bool {
    let m = ambient.relator_matrix();
    let v = exponent_vector(w, ambient.generator_count);
    let (rank, _) = lattice_shape(m.clone());
    let mut stacked = m;
    stacked.push(v);
    let (rank2, _) = lattice_shape(stacked);
    rank2 > rank
}

/// A free group of rank >= 2 has uniform exponential growth rate log 3;
/// rates at or below the certified rational lower bound for log 3 are
/// therefore excluded. The bound is tagged as a lower bound, so the
/// comparison errs on the safe side.
fn exp_rate_answer(rate: LogRate, trace: &mut Vec<String>) -> Answer {
    let bound = LogRate::log3_lower();
    if rate.value() <= bound.value() {
        trace.push(format!(
            "growth rate is at least log 3 > {bound}, above the requested {rate}"
        ));
        Answer::No
    } else {
        trace.push(format!(
            "requested rate {rate} exceeds the certified log 3 lower bound {bound}"
        ));
        Answer::Unknown
    }
}

/// The relator, read cyclically in either direction, is a commutator of
/// two distinct generators; returns the generator pair.
fn commutator_pair(w: &[i32]) -> Option<(u32, u32)> {
    if w.len() != 4 {
        return None;
    }
    for r in 0..4 {
        let a = w[r];
        let b = w[(r + 1) % 4];
        let c = w[(r + 2) % 4];
        let d = w[(r + 3) % 4];
        if c == -a && d == -b && a.unsigned_abs() != b.unsigned_abs() {
            let (x, y) = (a.unsigned_abs(), b.unsigned_abs());
            return Some((x.min(y), x.max(y)));
        }
    }
    None
}

fn all_pairs_commute(p: &GroupPresentation) -> bool {
    let pairs: std::collections::BTreeSet<(u32, u32)> =
        p.relators.iter().filter_map(|w| commutator_pair(w)).collect();
    let n = p.generator_count as u32;
    (1..=n).all(|i| (i + 1..=n).all(|j| pairs.contains(&(i, j))))
}

/// Detect the standard one-relator surface presentation
/// < a_1, b_1, ..., a_g, b_g | [a_1, b_1] ... [a_g, b_g] > of genus >= 2,
/// up to rotating or inverting the relator.
fn surface_genus(p: &GroupPresentation) -> Option<usize> {
    let gc = p.generator_count;
    if p.relators.len() != 1 || gc < 4 || gc % 2 != 0 {
        return None;
    }
    let w = &p.relators[0];
    if w.len() != 2 * gc {
        return None;
    }
    let candidates = [w.clone(), crate::pi1::invert_word(w)];
    for word in &candidates {
        'rot: for r in 0..word.len() {
            let rotated: Word = word[r..].iter().chain(&word[..r]).copied().collect();
            let mut seen = vec![false; gc + 1];
            // blocks must be literal commutators [x, y, -x, -y] of two
            // fresh generators
            for block in rotated.chunks(4) {
                if block[2] != -block[0] || block[3] != -block[1] {
                    continue 'rot;
                }
                let a = block[0].unsigned_abs() as usize;
                let b = block[1].unsigned_abs() as usize;
                if a == b || seen[a] || seen[b] {
                    continue 'rot;
                }
                seen[a] = true;
                seen[b] = true;
            }
            if seen[1..].iter().all(|&s| s) {
                return Some(gc / 2);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::ClassKind::*;

    fn pres(gc: usize, rels: &[&[i32]]) -> GroupPresentation {
        GroupPresentation::new(gc, rels.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn ck(p: &GroupPresentation, kind: ClassKind) -> Answer {
        classify_group(p, &GroupClass::new(kind), &Budget::default()).answer
    }

    fn rate(n: i64, d: i64) -> LogRate {
        LogRate::exact(n, d).unwrap()
    }

    #[test]
    fn infinite_cyclic() {
        let z = pres(1, &[]);
        assert_eq!(ck(&z, Amenable), Answer::Yes);
        assert_eq!(ck(&z, Abelian), Answer::Yes);
        assert_eq!(ck(&z, Poly), Answer::Yes);
        assert_eq!(ck(&z, Trivial), Answer::No);
        assert_eq!(ck(&z, Finite), Answer::No);
        assert_eq!(ck(&z, ExpBelow(rate(1, 2))), Answer::Yes);
    }

    #[test]
    fn trivially_presented_trivial_group() {
        let p = pres(2, &[&[1], &[2, 1]]);
        assert_eq!(ck(&p, Trivial), Answer::Yes);
        assert_eq!(ck(&p, Finite), Answer::Yes);
    }

    #[test]
    fn finite_groups() {
        // dihedral group of order 6
        let d3 = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        assert_eq!(ck(&d3, Finite), Answer::Yes);
        assert_eq!(ck(&d3, Abelian), Answer::No);
        assert_eq!(ck(&d3, Trivial), Answer::No);
        assert_eq!(ck(&d3, Amenable), Answer::Yes);
        assert_eq!(ck(&d3, Subexp), Answer::Yes);

        let z2 = pres(1, &[&[1, 1]]);
        assert_eq!(ck(&z2, Finite), Answer::Yes);
        assert_eq!(ck(&z2, Abelian), Answer::Yes);
        assert_eq!(ck(&z2, Trivial), Answer::No);

        // quaternion group: order 8, abelianization of order 4
        let q8 = pres(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]);
        assert_eq!(ck(&q8, Finite), Answer::Yes);
        assert_eq!(ck(&q8, Abelian), Answer::No);
    }

    #[test]
    fn free_abelian_rank_two() {
        let z2 = pres(2, &[&[1, 2, -1, -2]]);
        assert_eq!(ck(&z2, Abelian), Answer::Yes);
        assert_eq!(ck(&z2, Amenable), Answer::Yes);
        assert_eq!(ck(&z2, Poly), Answer::Yes);
        assert_eq!(ck(&z2, Finite), Answer::No);
        assert_eq!(ck(&z2, Trivial), Answer::No);
        assert_eq!(ck(&z2, SubexpBelow(rate(1, 2))), Answer::Yes);
    }

    #[test]
    fn free_rank_two() {
        let f2 = pres(2, &[]);
        assert_eq!(ck(&f2, Amenable), Answer::No);
        assert_eq!(ck(&f2, Subexp), Answer::No);
        assert_eq!(ck(&f2, Abelian), Answer::No);
        assert_eq!(ck(&f2, Trivial), Answer::No);
        assert_eq!(ck(&f2, SubexpBelow(rate(1, 2))), Answer::No);
        // rates at or below the log 3 bound are excluded, larger ones are
        // not decided
        assert_eq!(ck(&f2, ExpBelow(rate(1, 1))), Answer::No);
        assert_eq!(ck(&f2, ExpBelow(rate(109_861, 100_000))), Answer::No);
        assert_eq!(ck(&f2, ExpBelow(rate(11, 10))), Answer::Unknown);
    }

    #[test]
    fn surface_group_of_genus_two() {
        let s2 = pres(4, &[&[1, 2, -1, -2, 3, 4, -3, -4]]);
        assert_eq!(ck(&s2, Amenable), Answer::No);
        assert_eq!(ck(&s2, Subexp), Answer::No);
        assert_eq!(ck(&s2, Abelian), Answer::No);
        assert_eq!(ck(&s2, ExpBelow(rate(1, 2))), Answer::Unknown);
    }

    #[test]
    fn surface_detection_is_robust_to_rotation_and_inversion() {
        let w = vec![1, 2, -1, -2, 3, 4, -3, -4];
        let rotated: Vec<i32> = w[3..].iter().chain(&w[..3]).copied().collect();
        let p = pres(4, &[&rotated]);
        assert_eq!(surface_genus(&p), Some(2));
        let inverted = crate::pi1::invert_word(&w);
        let p = pres(4, &[&inverted]);
        assert_eq!(surface_genus(&p), Some(2));
        // genus one is the torus, not covered by the surface rule
        let t = pres(2, &[&[1, 2, -1, -2]]);
        assert_eq!(surface_genus(&t), None);
        // repeated generators disqualify
        let bad = pres(4, &[&[1, 2, -1, -2, 1, 4, -1, -4]]);
        assert_eq!(surface_genus(&bad), None);
    }

    #[test]
    fn undecidable_input_stays_unknown() {
        // a non-free two-generator presentation with no finite quotient
        // certificate inside a tiny budget, no commutator pattern, no
        // surface relator: Baumslag-Solitar BS(1,2)
        let bs = pres(2, &[&[-2, 1, 2, -1, -1]]);
        let small = Budget {
            max_cosets: 100,
            ..Budget::default()
        };
        let v = classify_group(&bs, &GroupClass::new(Amenable), &small);
        assert_eq!(v.answer, Answer::Unknown);
        // but the abelianization still rules out triviality and finiteness
        assert_eq!(
            classify_group(&bs, &GroupClass::new(Trivial), &small).answer,
            Answer::No
        );
        assert_eq!(
            classify_group(&bs, &GroupClass::new(Finite), &small).answer,
            Answer::No
        );
    }

    #[test]
    fn verdict_traces_name_a_rule() {
        let v = classify_group(
            &pres(2, &[]),
            &GroupClass::new(Amenable),
            &Budget::default(),
        );
        assert_eq!(v.answer, Answer::No);
        assert!(v.trace.iter().any(|l| l.contains("free group of rank 2")));
    }
}
