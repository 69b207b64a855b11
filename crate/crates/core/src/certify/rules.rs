//! Rule catalog for the derivation engine.
//!
//! Each rule inspects a snapshot of the store and proposes new facts with
//! their premise ids. Soundness lives here: every gate (dimension bounds,
//! exact rate comparisons, class inclusions) is checked with exact
//! arithmetic before a conclusion is proposed. Rules fire in tag order and
//! scan facts in insertion order, so saturation is deterministic.

use std::collections::BTreeSet;

use super::{class_subset, FactId, FactStore, RuleId, Statement};
use crate::budget::Budget;
use crate::classes::{finite_cover_rate, Answer, ClassKind, GroupClass, LogRate};
use crate::complex::barycentric_subdivision;
use crate::covers::{stars_cover, validate_cover};
use crate::fibration::mapping_torus_bound;

pub(super) struct Pending {
    pub statement: Statement,
    pub rule: RuleId,
    pub premises: Vec<FactId>,
}

pub(super) fn rule_title(rule: RuleId) -> &'static str {
    match rule {
        "R1" => "bundle cover from fibre cover and base cover",
        "R2" => "amenable cover bound kills high-degree seminorms",
        "R3" => "closed manifold with small amenable cover has zero simplicial volume",
        "R4" => "mapping torus doubles the fibre bound",
        "R5" => "stars of the subdivision cover any complex",
        "R6" => "cover bounds transfer along a fundamental-group equivalence",
        "R7" => "collapsing map with cap k gives a k+1 cover bound",
        "R8" => "k+1 cover bound gives a collapsing map with cap k",
        "R9" => "slow fibres force zero volume entropy",
        "R10" => "full-height exponential floor forces non-collapsing and positive entropy",
        "R11" => "non-collapsing descends from a finite cover at reduced rate",
        "R12" => "slow fibre in a bundle kills total-space entropy",
        "R13" => "volume entropy is invariant under subdivision",
        "R14" => "wedge inherits positive entropy from a summand (external comparison)",
        "R15" => "map bounds from source, target, composition, or fibre inclusion",
        _ => "",
    }
}

fn amenable() -> GroupClass {
    GroupClass::new(ClassKind::Amenable)
}

fn cat_uppers(store: &FactStore) -> Vec<(FactId, String, GroupClass, usize)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::CatUpper {
                space,
                class,
                bound,
            } => Some((f.id, space.clone(), *class, *bound)),
            _ => None,
        })
        .collect()
}

fn cat_lowers(store: &FactStore) -> Vec<(FactId, String, GroupClass, usize)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::CatLower {
                space,
                class,
                bound,
            } => Some((f.id, space.clone(), *class, *bound)),
            _ => None,
        })
        .collect()
}

fn ls_cat_uppers(store: &FactStore) -> Vec<(FactId, String, usize)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::LsCatUpper { space, bound } => Some((f.id, space.clone(), *bound)),
            _ => None,
        })
        .collect()
}

fn map_cat_uppers(store: &FactStore) -> Vec<(FactId, String, GroupClass, usize)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::MapCatUpper { map, class, bound } => {
                Some((f.id, map.clone(), *class, *bound))
            }
            _ => None,
        })
        .collect()
}

fn fcas(store: &FactStore) -> Vec<(FactId, String, GroupClass, usize)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::Fca { space, class, cap } => Some((f.id, space.clone(), *class, *cap)),
            _ => None,
        })
        .collect()
}

fn fncas(store: &FactStore) -> Vec<(FactId, String, LogRate)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::Fnca { space, rate } => Some((f.id, space.clone(), *rate)),
            _ => None,
        })
        .collect()
}

fn bundles(store: &FactStore) -> Vec<(FactId, String, String, String)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::Bundle { total, fibre, base } => {
                Some((f.id, total.clone(), fibre.clone(), base.clone()))
            }
            _ => None,
        })
        .collect()
}

fn mapping_tori(store: &FactStore) -> Vec<(FactId, String, String)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::MappingTorus { total, fibre } => {
                Some((f.id, total.clone(), fibre.clone()))
            }
            _ => None,
        })
        .collect()
}

fn manifolds(store: &FactStore) -> Vec<(FactId, String, usize, bool, bool)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::Manifold {
                space,
                dim,
                closed,
                connected,
                ..
            } => Some((f.id, space.clone(), *dim, *closed, *connected)),
            _ => None,
        })
        .collect()
}

fn ent_facts(store: &FactStore, positive: bool) -> Vec<(FactId, String)> {
    store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::EntZero { space } if !positive => Some((f.id, space.clone())),
            Statement::EntPositive { space } if positive => Some((f.id, space.clone())),
            _ => None,
        })
        .collect()
}

pub(super) fn round(store: &FactStore, budget: &Budget) -> Vec<Pending> {
    let mut out = Vec::new();
    r1(store, &mut out);
    r2(store, &mut out);
    r3(store, &mut out);
    r4(store, &mut out);
    r5(store, budget, &mut out);
    r6(store, &mut out);
    r7(store, &mut out);
    r8(store, &mut out);
    r9(store, &mut out);
    r10(store, &mut out);
    r11(store, &mut out);
    r12(store, &mut out);
    r13(store, &mut out);
    r14(store, &mut out);
    r15(store, &mut out);
    out
}

/// Fibre bound times base LS bound covers the total space of a bundle.
fn r1(store: &FactStore, out: &mut Vec<Pending>) {
    for (bid, total, fibre, base) in bundles(store) {
        for (cuid, space, class, n) in cat_uppers(store) {
            if space != fibre {
                continue;
            }
            for (lsid, ls_space, b) in ls_cat_uppers(store) {
                if ls_space != base {
                    continue;
                }
                out.push(Pending {
                    statement: Statement::CatUpper {
                        space: total.clone(),
                        class,
                        bound: n * b,
                    },
                    rule: "R1",
                    premises: vec![cuid, lsid, bid],
                });
            }
        }
    }
}

/// An amenable cover of cardinality n kills the seminorm and the
/// comparison map in every degree from n up to the space's dimension.
/// Degrees above the dimension carry no homology and are omitted.
fn r2(store: &FactStore, out: &mut Vec<Pending>) {
    for (cuid, space, class, n) in cat_uppers(store) {
        if !class_subset(&class, &amenable()) {
            continue;
        }
        let Some((dim, manifold_fact)) = store.dim_of(&space) else {
            continue;
        };
        for degree in n..=dim {
            let mut premises = vec![cuid];
            premises.extend(manifold_fact);
            out.push(Pending {
                statement: Statement::CompZero {
                    space: space.clone(),
                    degree,
                },
                rule: "R2",
                premises: premises.clone(),
            });
            out.push(Pending {
                statement: Statement::HomologySeminormZero {
                    space: space.clone(),
                    degree,
                },
                rule: "R2",
                premises,
            });
        }
    }
}

/// A closed connected manifold covered by at most dim-many amenable pieces
/// has vanishing simplicial volume. Orientability is not required: the
/// non-orientable volume is half that of the orientation double cover, so
/// vanishing transfers.
fn r3(store: &FactStore, out: &mut Vec<Pending>) {
    for (mid, m_space, dim, closed, connected) in manifolds(store) {
        if !closed || !connected {
            continue;
        }
        for (cuid, space, class, n) in cat_uppers(store) {
            if space == m_space && class_subset(&class, &amenable()) && n <= dim {
                out.push(Pending {
                    statement: Statement::SimVolZero {
                        space: space.clone(),
                    },
                    rule: "R3",
                    premises: vec![mid, cuid],
                });
            }
        }
    }
}

/// The circle base of a mapping torus contributes a factor of two; when
/// the doubled bound fits under the total dimension, the dimension itself
/// is also a bound.
fn r4(store: &FactStore, out: &mut Vec<Pending>) {
    for (mtid, total, fibre) in mapping_tori(store) {
        for (cuid, space, class, n) in cat_uppers(store) {
            if space != fibre {
                continue;
            }
            out.push(Pending {
                statement: Statement::CatUpper {
                    space: total.clone(),
                    class,
                    bound: 2 * n,
                },
                rule: "R4",
                premises: vec![cuid, mtid],
            });
            if let Some((fibre_dim, manifold_fact)) = store.dim_of(&fibre) {
                if let Some(dim_bound) = mapping_torus_bound(n, fibre_dim).dim_bound {
                    let mut premises = vec![cuid, mtid];
                    premises.extend(manifold_fact);
                    out.push(Pending {
                        statement: Statement::CatUpper {
                            space: total.clone(),
                            class,
                            bound: dim_bound,
                        },
                        rule: "R4",
                        premises,
                    });
                }
            }
        }
    }
}

/// Every registered complex is covered by the dim+1 star families of its
/// subdivision, whose pieces are discrete, so the bound holds for every
/// class. The witness cover is rebuilt and validated before the fact is
/// emitted. Classes are instantiated from facts already in the store and
/// from query hints.
fn r5(store: &FactStore, budget: &Budget, out: &mut Vec<Pending>) {
    let mut classes: BTreeSet<GroupClass> = store.class_hints().iter().copied().collect();
    for f in store.facts() {
        match &f.statement {
            Statement::CatUpper { class, .. }
            | Statement::CatLower { class, .. }
            | Statement::MapCatUpper { class, .. }
            | Statement::Fca { class, .. } => {
                classes.insert(*class);
            }
            _ => {}
        }
    }
    for (name, x) in store.complexes() {
        let Some(dim) = x.dim() else {
            continue;
        };
        let mut stars = None;
        for class in &classes {
            let statement = Statement::CatUpper {
                space: name.clone(),
                class: *class,
                bound: dim + 1,
            };
            if store.contains(&statement) {
                continue;
            }
            if stars.is_none() {
                let sd = barycentric_subdivision(x);
                let cover = stars_cover(&sd);
                stars = Some((sd, cover));
            }
            let (sd, cover) = stars.as_ref().expect("just initialized");
            let validated = validate_cover(&sd.complex, cover, class, budget)
                .map(|r| r.admissible == Answer::Yes)
                .unwrap_or(false);
            if validated {
                out.push(Pending {
                    statement,
                    rule: "R5",
                    premises: Vec::new(),
                });
            }
        }
    }
}

/// Cover bounds only depend on the fundamental group, so they transfer
/// across a declared equivalence, in both directions.
fn r6(store: &FactStore, out: &mut Vec<Pending>) {
    let equivalences: Vec<(FactId, String, String)> = store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::Pi1Equivalent { left, right } => {
                Some((f.id, left.clone(), right.clone()))
            }
            _ => None,
        })
        .collect();
    for (peid, left, right) in &equivalences {
        for (cuid, space, class, n) in cat_uppers(store) {
            let other = if space == *left {
                right
            } else if space == *right {
                left
            } else {
                continue;
            };
            out.push(Pending {
                statement: Statement::CatUpper {
                    space: other.clone(),
                    class,
                    bound: n,
                },
                rule: "R6",
                premises: vec![cuid, *peid],
            });
        }
    }
}

/// Pulled-back stars of the target give one cover piece per target vertex
/// orbit: cap k yields a bound of k + 1.
fn r7(store: &FactStore, out: &mut Vec<Pending>) {
    for (fid, space, class, cap) in fcas(store) {
        out.push(Pending {
            statement: Statement::CatUpper {
                space,
                class,
                bound: cap + 1,
            },
            rule: "R7",
            premises: vec![fid],
        });
    }
}

/// The nerve map of a cover with k+1 pieces lands in dimension k; pieces
/// of the fibres are subgroups of the pieces' images, so the class must be
/// subgroup closed.
fn r8(store: &FactStore, out: &mut Vec<Pending>) {
    for (cuid, space, class, bound) in cat_uppers(store) {
        if !class.kind.subgroup_closed() {
            continue;
        }
        out.push(Pending {
            statement: Statement::Fca {
                space,
                class: GroupClass::new(class.kind),
                cap: bound - 1,
            },
            rule: "R8",
            premises: vec![cuid],
        });
    }
}

/// Gate shared by both halves of R9: fibres over a cap-k map out of an
/// n-dimensional space must grow slower than (n-k)/n.
fn slow_fibre_gate(
    store: &FactStore,
    space: &str,
    class: &GroupClass,
    cap: usize,
) -> Option<Vec<FactId>> {
    let (n, manifold_fact) = store.dim_of(space)?;
    if n == 0 || cap >= n {
        return None;
    }
    let gate = LogRate::exact((n - cap) as i64, n as i64).ok()?;
    let target = GroupClass::new(ClassKind::SubexpBelow(gate));
    class_subset(class, &target).then(|| manifold_fact.into_iter().collect())
}

fn r9(store: &FactStore, out: &mut Vec<Pending>) {
    for (fid, space, class, cap) in fcas(store) {
        if let Some(extra) = slow_fibre_gate(store, &space, &class, cap) {
            let mut premises = vec![fid];
            premises.extend(extra);
            out.push(Pending {
                statement: Statement::EntZero { space },
                rule: "R9",
                premises,
            });
        }
    }
    for (cuid, space, class, bound) in cat_uppers(store) {
        if let Some(extra) = slow_fibre_gate(store, &space, &class, bound - 1) {
            let mut premises = vec![cuid];
            premises.extend(extra);
            out.push(Pending {
                statement: Statement::EntZero { space },
                rule: "R9",
                premises,
            });
        }
    }
}

/// A lower bound of dim+1 for an exponential-floor class means no map can
/// collapse all fibres below the rate, and non-collapsing forces positive
/// entropy.
fn r10(store: &FactStore, out: &mut Vec<Pending>) {
    for (clid, space, class, m) in cat_lowers(store) {
        let ClassKind::ExpBelow(delta) = class.kind else {
            continue;
        };
        let Some((n, manifold_fact)) = store.dim_of(&space) else {
            continue;
        };
        if m >= n + 1 {
            let mut premises = vec![clid];
            premises.extend(manifold_fact);
            out.push(Pending {
                statement: Statement::Fnca { space, rate: delta },
                rule: "R10",
                premises,
            });
        }
    }
    for (fnid, space, _rate) in fncas(store) {
        out.push(Pending {
            statement: Statement::EntPositive { space },
            rule: "R10",
            premises: vec![fnid],
        });
    }
}

/// Non-collapsing passes from a d-sheeted cover down to the base, at the
/// rate divided by 2d - 1.
fn r11(store: &FactStore, out: &mut Vec<Pending>) {
    let covers: Vec<(FactId, String, String, u32)> = store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::FiniteCover {
                cover,
                base,
                sheets,
            } => Some((f.id, cover.clone(), base.clone(), *sheets)),
            _ => None,
        })
        .collect();
    for (fcid, cover, base, sheets) in &covers {
        for (fnid, space, rate) in fncas(store) {
            if space == *cover {
                out.push(Pending {
                    statement: Statement::Fnca {
                        space: base.clone(),
                        rate: finite_cover_rate(rate, *sheets),
                    },
                    rule: "R11",
                    premises: vec![fnid, *fcid],
                });
            }
        }
    }
}

/// A bundle whose fibre admits a cover slower than 1/dim(total), small
/// enough that fibre pieces times base stars stay within the dimension,
/// has zero total-space entropy.
fn r12(store: &FactStore, out: &mut Vec<Pending>) {
    for (bid, total, fibre, base) in bundles(store) {
        let Some((m, m_fact)) = store.dim_of(&total) else {
            continue;
        };
        if m == 0 {
            continue;
        }
        let Some((b, b_fact)) = store.dim_of(&base) else {
            continue;
        };
        let Ok(gate) = LogRate::exact(1, m as i64) else {
            continue;
        };
        let target = GroupClass::new(ClassKind::SubexpBelow(gate));
        for (cuid, space, class, n) in cat_uppers(store) {
            if space == fibre && class_subset(&class, &target) && n * (b + 1) <= m {
                let mut premises = vec![cuid, bid];
                premises.extend(m_fact);
                premises.extend(b_fact);
                premises.dedup();
                out.push(Pending {
                    statement: Statement::EntZero {
                        space: total.clone(),
                    },
                    rule: "R12",
                    premises,
                });
            }
        }
    }
}

/// Subdivision does not change the underlying space, so entropy facts
/// travel both ways across a subdivision declaration.
fn r13(store: &FactStore, out: &mut Vec<Pending>) {
    let subdivisions: Vec<(FactId, String, String)> = store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::SubdivisionOf { subdivision, base } => {
                Some((f.id, subdivision.clone(), base.clone()))
            }
            _ => None,
        })
        .collect();
    for (sid, subdivision, base) in &subdivisions {
        for positive in [false, true] {
            for (eid, space) in ent_facts(store, positive) {
                let other = if space == *subdivision {
                    base
                } else if space == *base {
                    subdivision
                } else {
                    continue;
                };
                let statement = if positive {
                    Statement::EntPositive {
                        space: other.clone(),
                    }
                } else {
                    Statement::EntZero {
                        space: other.clone(),
                    }
                };
                out.push(Pending {
                    statement,
                    rule: "R13",
                    premises: vec![eid, *sid],
                });
            }
        }
    }
}

/// A wedge grows at least as fast as each summand; the comparison
/// inequality behind this step is cited, not recomputed.
fn r14(store: &FactStore, out: &mut Vec<Pending>) {
    let wedges: Vec<(FactId, String, String)> = store
        .facts()
        .iter()
        .filter_map(|f| match &f.statement {
            Statement::WedgeOf { space, summand, .. } => {
                Some((f.id, space.clone(), summand.clone()))
            }
            _ => None,
        })
        .collect();
    for (wid, space, summand) in &wedges {
        for (eid, ent_space) in ent_facts(store, true) {
            if ent_space == *summand {
                out.push(Pending {
                    statement: Statement::EntPositive {
                        space: space.clone(),
                    },
                    rule: "R14",
                    premises: vec![eid, *wid],
                });
            }
        }
    }
}

/// Map bounds: a map is bounded by covers of its source or target; a
/// composite is bounded by either factor; and a fibre inclusion bound
/// upgrades to the fibre itself when the class absorbs extensions with
/// abelian kernel, which among the kinds here is exactly the amenable one.
fn r15(store: &FactStore, out: &mut Vec<Pending>) {
    for f in store.facts() {
        let Statement::MapDecl {
            map,
            source,
            target,
        } = &f.statement
        else {
            continue;
        };
        for (cuid, space, class, n) in cat_uppers(store) {
            if space == *source || space == *target {
                out.push(Pending {
                    statement: Statement::MapCatUpper {
                        map: map.clone(),
                        class,
                        bound: n,
                    },
                    rule: "R15",
                    premises: vec![cuid, f.id],
                });
            }
        }
    }
    for f in store.facts() {
        let Statement::Compose {
            composite,
            outer,
            inner,
        } = &f.statement
        else {
            continue;
        };
        for (mcid, map, class, n) in map_cat_uppers(store) {
            if map == *outer || map == *inner {
                out.push(Pending {
                    statement: Statement::MapCatUpper {
                        map: composite.clone(),
                        class,
                        bound: n,
                    },
                    rule: "R15",
                    premises: vec![mcid, f.id],
                });
            }
        }
    }
    for f in store.facts() {
        let Statement::FibreInclusion {
            map,
            fibre,
            abelian_kernel,
            ..
        } = &f.statement
        else {
            continue;
        };
        if !abelian_kernel {
            continue;
        }
        for (mcid, mc_map, class, n) in map_cat_uppers(store) {
            if mc_map == *map && class.kind == ClassKind::Amenable {
                out.push(Pending {
                    statement: Statement::CatUpper {
                        space: fibre.clone(),
                        class,
                        bound: n,
                    },
                    rule: "R15",
                    premises: vec![mcid, f.id],
                });
            }
        }
    }
}

fn best_amenable_upper(store: &FactStore, space: &str) -> Option<usize> {
    cat_uppers(store)
        .into_iter()
        .filter(|(_, s, class, _)| s == space && class_subset(class, &amenable()))
        .map(|(_, _, _, n)| n)
        .min()
}

fn manifold_of(store: &FactStore, space: &str) -> Option<(usize, bool, bool)> {
    manifolds(store)
        .into_iter()
        .find(|(_, s, ..)| s == space)
        .map(|(_, _, dim, closed, connected)| (dim, closed, connected))
}

/// One line per rule that could conclude a statement of the goal's shape,
/// saying which premises are in the store and which are missing. Covers
/// one derivation step; deeper gaps surface once the nearer ones are
/// filled.
pub(super) fn missing_premises(store: &FactStore, goal: &Statement) -> Vec<String> {
    let mut out = Vec::new();
    match goal {
        Statement::SimVolZero { space } => match manifold_of(store, space) {
            None => out.push(format!(
                "R3 needs manifold({space}, d, _, true, true) and cat_upper({space}, amenable, n) \
                 with n <= d; no manifold fact for {space} is asserted"
            )),
            Some((dim, closed, connected)) => {
                if !closed || !connected {
                    out.push(format!(
                        "R3 needs {space} to be closed and connected; the asserted manifold \
                         fact says closed={closed}, connected={connected}"
                    ));
                }
                match best_amenable_upper(store, space) {
                    None => out.push(format!(
                        "R3 needs cat_upper({space}, amenable, n) with n <= {dim}; no amenable \
                         cover bound for {space} is known"
                    )),
                    Some(best) => out.push(format!(
                        "R3 needs cat_upper({space}, amenable, n) with n <= {dim}; the best \
                         known amenable bound is {best}"
                    )),
                }
            }
        },
        Statement::CompZero { space, degree } | Statement::HomologySeminormZero { space, degree } => {
            match store.dim_of(space) {
                None => out.push(format!(
                    "R2 needs the dimension of {space}; register the complex or assert a \
                     manifold fact"
                )),
                Some((dim, _)) if *degree > dim => out.push(format!(
                    "degree {degree} exceeds the dimension {dim} of {space}; R2 derives \
                     nothing there"
                )),
                Some(_) => match best_amenable_upper(store, space) {
                    None => out.push(format!(
                        "R2 needs cat_upper({space}, amenable, n) with n <= {degree}; no \
                         amenable cover bound for {space} is known"
                    )),
                    Some(best) => out.push(format!(
                        "R2 needs cat_upper({space}, amenable, n) with n <= {degree}; the best \
                         known amenable bound is {best}"
                    )),
                },
            }
        }
        Statement::CatUpper {
            space,
            class,
            bound,
        } => {
            let fca_caps: Vec<usize> = fcas(store)
                .into_iter()
                .filter(|(_, s, c, _)| s == space && class_subset(c, class))
                .map(|(_, _, _, cap)| cap)
                .collect();
            match fca_caps.iter().min() {
                Some(&cap) => out.push(format!(
                    "R7 needs fca({space}, {class}, k) with k + 1 <= {bound}; the best known \
                     cap is {cap}"
                )),
                None => out.push(format!(
                    "R7 needs fca({space}, {class}, k) with k + 1 <= {bound}; none is known"
                )),
            }
            if !bundles(store).iter().any(|(_, t, ..)| t == space) {
                out.push(format!(
                    "R1 needs a bundle fact with total space {space} plus fibre and base bounds"
                ));
            } else {
                out.push(format!(
                    "R1 has a bundle fact for {space}; it needs cat_upper on its fibre and \
                     lscat_upper on its base with product at most {bound}"
                ));
            }
            if !mapping_tori(store).iter().any(|(_, t, _)| t == space) {
                out.push(format!(
                    "R4 needs a mapping_torus fact with total space {space} plus a fibre bound"
                ));
            } else {
                out.push(format!(
                    "R4 has a mapping_torus fact for {space}; it needs cat_upper on the fibre \
                     with doubled bound at most {bound}"
                ));
            }
            match store.complex(space) {
                None => out.push(format!(
                    "R5 needs the complex named {space} to be registered to build its stars cover"
                )),
                Some(x) => {
                    let stars = x.dim().map(|d| d + 1);
                    out.push(format!(
                        "R5 gives cat_upper({space}, {class}, {b}) from the registered complex, \
                         which does not reach {bound}",
                        b = stars.unwrap_or(0)
                    ));
                }
            }
        }
        Statement::Fca { space, class, cap } => {
            if !class.kind.subgroup_closed() {
                out.push(format!(
                    "R8 only applies to subgroup-closed classes, and {class} is not"
                ));
            } else {
                let best = cat_uppers(store)
                    .into_iter()
                    .filter(|(_, s, c, _)| s == space && class_subset(c, class))
                    .map(|(_, _, _, n)| n)
                    .min();
                match best {
                    Some(n) => out.push(format!(
                        "R8 needs cat_upper({space}, {class}, n) with n <= {k}; the best known \
                         bound is {n}",
                        k = cap + 1
                    )),
                    None => out.push(format!(
                        "R8 needs cat_upper({space}, {class}, n) with n <= {k}; none is known",
                        k = cap + 1
                    )),
                }
            }
        }
        Statement::EntZero { space } => {
            match store.dim_of(space) {
                None => out.push(format!(
                    "R9 needs the dimension of {space}; register the complex or assert a \
                     manifold fact"
                )),
                Some((n, _)) => out.push(format!(
                    "R9 needs fca({space}, subexp<r, k) or cat_upper({space}, subexp<r, k+1) \
                     with k < {n} and r <= ({n}-k)/{n}"
                )),
            }
            if bundles(store).iter().any(|(_, t, ..)| t == space) {
                out.push(format!(
                    "R12 has a bundle fact for {space}; it needs a slow enough fibre bound and \
                     registered dimensions"
                ));
            }
            out.push(format!(
                "R13 transfers ent_zero across a subdivision_of fact mentioning {space}"
            ));
        }
        Statement::EntPositive { space } => {
            out.push(format!(
                "R10 needs fnca({space}, r), either asserted or from cat_lower({space}, exp<r, \
                 dim+1)"
            ));
            out.push(format!(
                "R13 transfers ent_positive across a subdivision_of fact mentioning {space}; \
                 R14 pulls it from a wedge summand"
            ));
        }
        Statement::Fnca { space, rate } => {
            out.push(format!(
                "R10 needs cat_lower({space}, exp<{rate}, n) with n at least dim + 1 and a \
                 known dimension"
            ));
            let through: Vec<String> = store
                .facts()
                .iter()
                .filter_map(|f| match &f.statement {
                    Statement::FiniteCover { cover, base, .. } if base == space => {
                        Some(cover.clone())
                    }
                    _ => None,
                })
                .collect();
            if through.is_empty() {
                out.push(format!(
                    "R11 needs a finite_cover fact over {space} plus fnca on the covering space"
                ));
            } else {
                out.push(format!(
                    "R11 needs fnca on a covering space of {space} (declared: {})",
                    through.join(", ")
                ));
            }
        }
        Statement::MapCatUpper { map, .. } => {
            if !store.facts().iter().any(|f| {
                matches!(&f.statement, Statement::MapDecl { map: m, .. } if m == map)
                    || matches!(&f.statement, Statement::Compose { composite, .. } if composite == map)
            }) {
                out.push(format!(
                    "R15 needs a map_decl or compose fact naming {map}"
                ));
            } else {
                out.push(format!(
                    "R15 has structure for {map}; it needs a small enough cover bound on the \
                     source, target, or a composition factor"
                ));
            }
        }
        other => {
            let head = other.to_string();
            let head = head.split('(').next().unwrap_or("this").to_string();
            out.push(format!(
                "no derivation rule concludes {head} facts; assert one as an axiom or a \
                 computed fact"
            ));
        }
    }
    out
}
