//! Fact store and forward-chaining derivation engine for vanishing
//! certificates.
//!
//! Facts are closed statements about named spaces, maps, and groups:
//! category-style cover bounds, fibre collapsing statements, and vanishing
//! or positivity of simplicial volume, seminorms, and volume entropy.
//! Every fact carries a provenance: an axiom with a mandatory citation, a
//! computed result with a machine-checked witness, or a derivation naming
//! the rule and its premise facts. Saturation applies the rule catalog to
//! a fixpoint in deterministic order, so traces replay and first
//! derivations have minimal depth. The engine never infers structure: it
//! learns that a space is a manifold, a bundle total space, or a mapping
//! torus only from asserted facts.

mod rules;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::budget::Budget;
use crate::classes::{Answer, GroupClass, LogRate};
use crate::complex::SimplicialComplex;
use crate::covers::{validate_cover, VertexCover};
use crate::error::{Error, Result};
use crate::fca::FcaReport;

pub type FactId = usize;

/// Rule identifiers are stable short tags; traces cite them verbatim.
pub type RuleId = &'static str;

/// A closed statement about named objects. Spaces, maps, and groups are
/// identified by name only; attaching an actual complex to a name happens
/// separately through registration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Statement {
    /// The space admits a cover by `bound` pieces admissible for the class.
    CatUpper {
        space: String,
        class: GroupClass,
        bound: usize,
    },
    /// No admissible cover has fewer than `bound` pieces.
    CatLower {
        space: String,
        class: GroupClass,
        bound: usize,
    },
    /// The space admits a cover by `bound` pieces, each contractible in it.
    LsCatUpper { space: String, bound: usize },
    /// The map factors through a cover of its source by `bound` admissible
    /// pieces.
    MapCatUpper {
        map: String,
        class: GroupClass,
        bound: usize,
    },
    /// Some simplicial map from the space to a complex of dimension at most
    /// `cap` has all point fibres admissible for the class.
    Fca {
        space: String,
        class: GroupClass,
        cap: usize,
    },
    /// Every simplicial map to a lower-dimensional complex has a fibre
    /// whose image grows uniformly at rate at least `rate`.
    Fnca { space: String, rate: LogRate },
    SimVolZero { space: String },
    SimVolPositive { space: String },
    HomologySeminormZero { space: String, degree: usize },
    CompZero { space: String, degree: usize },
    EntZero { space: String },
    EntPositive { space: String },
    /// The two spaces have isomorphic fundamental groups (unordered).
    Pi1Equivalent { left: String, right: String },
    UexpLower { group: String, rate: LogRate },
    /// Structural: the space is a closed manifold of the given dimension
    /// with the given orientability/closedness/connectedness attributes.
    Manifold {
        space: String,
        dim: usize,
        oriented: bool,
        closed: bool,
        connected: bool,
    },
    /// Structural: `total` fibres over `base` with fibre `fibre`.
    Bundle {
        total: String,
        fibre: String,
        base: String,
    },
    /// Structural: `total` is a mapping torus with fibre `fibre`.
    MappingTorus { total: String, fibre: String },
    /// Structural: `cover` is a `sheets`-sheeted cover of `base`.
    FiniteCover {
        cover: String,
        base: String,
        sheets: u32,
    },
    /// Structural: `subdivision` is a barycentric subdivision of `base`.
    SubdivisionOf { subdivision: String, base: String },
    /// Structural: `space` contains `copies` wedge summands of `summand`.
    WedgeOf {
        space: String,
        summand: String,
        copies: usize,
    },
    /// Structural: a named map from `source` to `target`.
    MapDecl {
        map: String,
        source: String,
        target: String,
    },
    /// Structural: `composite` is `outer` after `inner`.
    Compose {
        composite: String,
        outer: String,
        inner: String,
    },
    /// Structural: the map includes `fibre` into the total space of a
    /// fibration; `abelian_kernel` records that the induced extension of
    /// fundamental groups has abelian kernel.
    FibreInclusion {
        map: String,
        fibre: String,
        total: String,
        abelian_kernel: bool,
    },
}

impl Statement {
    fn validate(&self) -> Result<()> {
        use Statement::*;
        let names: Vec<&str> = match self {
            CatUpper { space, .. }
            | CatLower { space, .. }
            | LsCatUpper { space, .. }
            | Fca { space, .. }
            | Fnca { space, .. }
            | SimVolZero { space }
            | SimVolPositive { space }
            | HomologySeminormZero { space, .. }
            | CompZero { space, .. }
            | EntZero { space }
            | EntPositive { space }
            | Manifold { space, .. } => vec![space],
            MapCatUpper { map, .. } => vec![map],
            UexpLower { group, .. } => vec![group],
            Pi1Equivalent { left, right } => vec![left, right],
            Bundle { total, fibre, base } => vec![total, fibre, base],
            MappingTorus { total, fibre } => vec![total, fibre],
            FiniteCover { cover, base, .. } => vec![cover, base],
            SubdivisionOf { subdivision, base } => vec![subdivision, base],
            WedgeOf { space, summand, .. } => vec![space, summand],
            MapDecl {
                map,
                source,
                target,
            } => vec![map, source, target],
            Compose {
                composite,
                outer,
                inner,
            } => vec![composite, outer, inner],
            FibreInclusion {
                map,
                fibre,
                total,
                ..
            } => vec![map, fibre, total],
        };
        if names.iter().any(|n| n.is_empty()) {
            return Err(Error::Malformed("statement with an empty name".into()));
        }
        let positive = match self {
            CatUpper { bound, .. }
            | CatLower { bound, .. }
            | LsCatUpper { bound, .. }
            | MapCatUpper { bound, .. } => Some(("bound", *bound)),
            FiniteCover { sheets, .. } => Some(("sheets", *sheets as usize)),
            WedgeOf { copies, .. } => Some(("copies", *copies)),
            _ => None,
        };
        if let Some((field, value)) = positive {
            if value == 0 {
                return Err(Error::Malformed(format!(
                    "statement field {field} must be positive"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Statement::*;
        match self {
            CatUpper {
                space,
                class,
                bound,
            } => write!(f, "cat_upper({space}, {class}, {bound})"),
            CatLower {
                space,
                class,
                bound,
            } => write!(f, "cat_lower({space}, {class}, {bound})"),
            LsCatUpper { space, bound } => write!(f, "lscat_upper({space}, {bound})"),
            MapCatUpper { map, class, bound } => {
                write!(f, "map_cat_upper({map}, {class}, {bound})")
            }
            Fca { space, class, cap } => write!(f, "fca({space}, {class}, {cap})"),
            Fnca { space, rate } => write!(f, "fnca({space}, {rate})"),
            SimVolZero { space } => write!(f, "simvol_zero({space})"),
            SimVolPositive { space } => write!(f, "simvol_positive({space})"),
            HomologySeminormZero { space, degree } => {
                write!(f, "homology_seminorm_zero({space}, {degree})")
            }
            CompZero { space, degree } => write!(f, "comp_zero({space}, {degree})"),
            EntZero { space } => write!(f, "ent_zero({space})"),
            EntPositive { space } => write!(f, "ent_positive({space})"),
            Pi1Equivalent { left, right } => write!(f, "pi1_equivalent({left}, {right})"),
            UexpLower { group, rate } => write!(f, "uexp_lower({group}, {rate})"),
            Manifold {
                space,
                dim,
                oriented,
                closed,
                connected,
            } => write!(
                f,
                "manifold({space}, {dim}, {oriented}, {closed}, {connected})"
            ),
            Bundle { total, fibre, base } => write!(f, "bundle({total}, {fibre}, {base})"),
            MappingTorus { total, fibre } => write!(f, "mapping_torus({total}, {fibre})"),
            FiniteCover {
                cover,
                base,
                sheets,
            } => write!(f, "finite_cover({cover}, {base}, {sheets})"),
            SubdivisionOf { subdivision, base } => {
                write!(f, "subdivision_of({subdivision}, {base})")
            }
            WedgeOf {
                space,
                summand,
                copies,
            } => write!(f, "wedge_of({space}, {summand}, {copies})"),
            MapDecl {
                map,
                source,
                target,
            } => write!(f, "map_decl({map}, {source}, {target})"),
            Compose {
                composite,
                outer,
                inner,
            } => write!(f, "compose({composite}, {outer}, {inner})"),
            FibreInclusion {
                map,
                fibre,
                total,
                abelian_kernel,
            } => write!(
                f,
                "fibre_inclusion({map}, {fibre}, {total}, {abelian_kernel})"
            ),
        }
    }
}

/// Split `head(a, b, ...)` respecting nested parentheses, so names such as
/// product(circle3,circle3) survive as single arguments.
fn split_call(s: &str) -> Result<(&str, Vec<&str>)> {
    let s = s.trim();
    let open = s
        .find('(')
        .ok_or_else(|| Error::Malformed(format!("expected head(args) in {s:?}")))?;
    if !s.ends_with(')') {
        return Err(Error::Malformed(format!("unbalanced parentheses in {s:?}")));
    }
    let head = s[..open].trim();
    let inner = &s[open + 1..s.len() - 1];
    let mut args = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Malformed(format!("unbalanced parentheses in {s:?}")))?;
            }
            ',' if depth == 0 => {
                args.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Malformed(format!("unbalanced parentheses in {s:?}")));
    }
    let last = inner[start..].trim();
    if !last.is_empty() {
        args.push(last);
    }
    if args.iter().any(|a| a.is_empty()) {
        return Err(Error::Malformed(format!("empty argument in {s:?}")));
    }
    Ok((head, args))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::Malformed(format!("expected an integer, found {s:?}")))
}

fn parse_bool(s: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Malformed(format!("expected true or false, found {s:?}"))),
    }
}

impl FromStr for Statement {
    type Err = Error;

    /// Accepts the same textual form `Display` produces, used for CLI
    /// goals and fact rendering.
    fn from_str(s: &str) -> Result<Self> {
        let (head, args) = split_call(s)?;
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::Malformed(format!(
                    "{head} expects {n} arguments, found {}",
                    args.len()
                )))
            }
        };
        let statement = match head {
            "cat_upper" | "cat_lower" | "map_cat_upper" | "fca" => {
                arity(3)?;
                let class: GroupClass = args[1].parse()?;
                let n = parse_usize(args[2])?;
                let name = args[0].to_string();
                match head {
                    "cat_upper" => Statement::CatUpper {
                        space: name,
                        class,
                        bound: n,
                    },
                    "cat_lower" => Statement::CatLower {
                        space: name,
                        class,
                        bound: n,
                    },
                    "map_cat_upper" => Statement::MapCatUpper {
                        map: name,
                        class,
                        bound: n,
                    },
                    _ => Statement::Fca {
                        space: name,
                        class,
                        cap: n,
                    },
                }
            }
            "lscat_upper" => {
                arity(2)?;
                Statement::LsCatUpper {
                    space: args[0].to_string(),
                    bound: parse_usize(args[1])?,
                }
            }
            "fnca" => {
                arity(2)?;
                Statement::Fnca {
                    space: args[0].to_string(),
                    rate: args[1].parse()?,
                }
            }
            "simvol_zero" => {
                arity(1)?;
                Statement::SimVolZero {
                    space: args[0].to_string(),
                }
            }
            "simvol_positive" => {
                arity(1)?;
                Statement::SimVolPositive {
                    space: args[0].to_string(),
                }
            }
            "homology_seminorm_zero" => {
                arity(2)?;
                Statement::HomologySeminormZero {
                    space: args[0].to_string(),
                    degree: parse_usize(args[1])?,
                }
            }
            "comp_zero" => {
                arity(2)?;
                Statement::CompZero {
                    space: args[0].to_string(),
                    degree: parse_usize(args[1])?,
                }
            }
            "ent_zero" => {
                arity(1)?;
                Statement::EntZero {
                    space: args[0].to_string(),
                }
            }
            "ent_positive" => {
                arity(1)?;
                Statement::EntPositive {
                    space: args[0].to_string(),
                }
            }
            "pi1_equivalent" => {
                arity(2)?;
                Statement::Pi1Equivalent {
                    left: args[0].to_string(),
                    right: args[1].to_string(),
                }
            }
            "uexp_lower" => {
                arity(2)?;
                Statement::UexpLower {
                    group: args[0].to_string(),
                    rate: args[1].parse()?,
                }
            }
            "manifold" => {
                arity(5)?;
                Statement::Manifold {
                    space: args[0].to_string(),
                    dim: parse_usize(args[1])?,
                    oriented: parse_bool(args[2])?,
                    closed: parse_bool(args[3])?,
                    connected: parse_bool(args[4])?,
                }
            }
            "bundle" => {
                arity(3)?;
                Statement::Bundle {
                    total: args[0].to_string(),
                    fibre: args[1].to_string(),
                    base: args[2].to_string(),
                }
            }
            "mapping_torus" => {
                arity(2)?;
                Statement::MappingTorus {
                    total: args[0].to_string(),
                    fibre: args[1].to_string(),
                }
            }
            "finite_cover" => {
                arity(3)?;
                let sheets = parse_usize(args[2])?;
                Statement::FiniteCover {
                    cover: args[0].to_string(),
                    base: args[1].to_string(),
                    sheets: u32::try_from(sheets)
                        .map_err(|_| Error::Malformed("sheet count too large".into()))?,
                }
            }
            "subdivision_of" => {
                arity(2)?;
                Statement::SubdivisionOf {
                    subdivision: args[0].to_string(),
                    base: args[1].to_string(),
                }
            }
            "wedge_of" => {
                arity(3)?;
                Statement::WedgeOf {
                    space: args[0].to_string(),
                    summand: args[1].to_string(),
                    copies: parse_usize(args[2])?,
                }
            }
            "map_decl" => {
                arity(3)?;
                Statement::MapDecl {
                    map: args[0].to_string(),
                    source: args[1].to_string(),
                    target: args[2].to_string(),
                }
            }
            "compose" => {
                arity(3)?;
                Statement::Compose {
                    composite: args[0].to_string(),
                    outer: args[1].to_string(),
                    inner: args[2].to_string(),
                }
            }
            "fibre_inclusion" => {
                arity(4)?;
                Statement::FibreInclusion {
                    map: args[0].to_string(),
                    fibre: args[1].to_string(),
                    total: args[2].to_string(),
                    abelian_kernel: parse_bool(args[3])?,
                }
            }
            _ => {
                return Err(Error::Malformed(format!("unknown statement head {head:?}")));
            }
        };
        statement.validate()?;
        Ok(statement)
    }
}

/// Machine-checked evidence attached to a computed fact.
#[derive(Debug, Clone)]
pub enum Witness {
    /// A cover that has been validated against the registered complex.
    Cover(VertexCover),
    /// A short description of the computation that produced the fact.
    Note(String),
}

impl Witness {
    fn summary(&self) -> String {
        match self {
            Witness::Cover(c) => format!("validated {}-piece cover", c.pieces.len()),
            Witness::Note(n) => n.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Provenance {
    Axiom { citation: String },
    Computed { witness: Witness },
    Derived { rule: RuleId, premises: Vec<FactId> },
}

#[derive(Debug, Clone)]
pub struct FactEntry {
    pub id: FactId,
    pub statement: Statement,
    pub provenance: Provenance,
    /// Axioms and computed facts sit at depth 0; a derived fact is one
    /// deeper than its deepest premise. Saturation works in rounds, so the
    /// recorded depth is the least possible.
    pub depth: usize,
}

/// Result summary of a saturation run.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub rounds: usize,
    pub derived: usize,
    pub contradictions: Vec<(FactId, FactId)>,
}

/// A derivation tree for one fact; leaves are axioms or computed facts.
#[derive(Debug, Clone)]
pub struct Trace {
    pub id: FactId,
    pub statement: Statement,
    pub rule: Option<RuleId>,
    pub label: String,
    pub premises: Vec<Trace>,
}

impl Trace {
    /// Number of rule applications on the longest path to a leaf.
    pub fn depth(&self) -> usize {
        if self.premises.is_empty() && self.rule.is_none() {
            0
        } else {
            1 + self.premises.iter().map(Trace::depth).max().unwrap_or(0)
        }
    }

    /// Rule tags cited anywhere in the tree, deduplicated, in first-use
    /// order from the root down.
    pub fn rules_cited(&self) -> Vec<RuleId> {
        let mut out = Vec::new();
        self.collect_rules(&mut out);
        out
    }

    fn collect_rules(&self, out: &mut Vec<RuleId>) {
        if let Some(rule) = self.rule {
            if !out.contains(&rule) {
                out.push(rule);
            }
        }
        for p in &self.premises {
            p.collect_rules(out);
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        for _ in 0..indent {
            out.push_str("  ");
        }
        out.push_str(&self.statement.to_string());
        out.push_str("  [");
        out.push_str(&self.label);
        out.push_str("]\n");
        for p in &self.premises {
            p.render_into(indent + 1, out);
        }
    }
}

/// Outcome of a goal query: a minimal-depth derivation, or the nearest
/// missing premises explaining why no rule concludes the goal.
#[derive(Debug, Clone)]
pub enum QueryOutcome {
    Proved(Trace),
    Unproved { missing: Vec<String> },
}

impl QueryOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, QueryOutcome::Proved(_))
    }
}

/// Class inclusion at the level of whole classes: every group admitted by
/// `a` is admitted by `b`. All groups named in facts are fundamental
/// groups of finite complexes, hence finitely presented, so a closure flag
/// on the right is only demanding when the kind is not subgroup closed.
pub(crate) fn class_subset(a: &GroupClass, b: &GroupClass) -> bool {
    a.kind.implies(&b.kind)
        && (a.fg_closure_applied == b.fg_closure_applied
            || !b.fg_closure_applied
            || a.kind.subgroup_closed())
}

#[derive(Debug, Clone, Default)]
pub struct FactStore {
    facts: Vec<FactEntry>,
    index: BTreeMap<Statement, FactId>,
    complexes: BTreeMap<String, SimplicialComplex>,
    class_hints: Vec<GroupClass>,
}

impl FactStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn facts(&self) -> &[FactEntry] {
        &self.facts
    }

    pub fn get(&self, id: FactId) -> Option<&FactEntry> {
        self.facts.get(id)
    }

    pub fn contains(&self, statement: &Statement) -> bool {
        self.index.contains_key(statement)
    }

    pub fn complex(&self, name: &str) -> Option<&SimplicialComplex> {
        self.complexes.get(name)
    }

    pub(crate) fn complexes(&self) -> &BTreeMap<String, SimplicialComplex> {
        &self.complexes
    }

    /// Attach an actual complex to its name, enabling dimension lookups
    /// and the stars-cover rule for that space. Re-registering the same
    /// complex is a no-op; a different complex under a taken name is
    /// rejected.
    pub fn register_complex(&mut self, x: &SimplicialComplex) -> Result<()> {
        if let Some(existing) = self.complexes.get(x.name()) {
            if existing.maximal_simplices() == x.maximal_simplices() {
                return Ok(());
            }
            return Err(Error::Malformed(format!(
                "a different complex is already registered as {:?}",
                x.name()
            )));
        }
        self.complexes.insert(x.name().to_string(), x.clone());
        Ok(())
    }

    /// Ask saturation to instantiate class-generic rules for this class
    /// even before any fact mentions it. Queries seed their goal class
    /// here so that registered complexes get their dimension bound.
    pub fn hint_class(&mut self, class: GroupClass) {
        if !self.class_hints.contains(&class) {
            self.class_hints.push(class);
        }
    }

    pub(crate) fn class_hints(&self) -> &[GroupClass] {
        &self.class_hints
    }

    pub fn assert_axiom(&mut self, statement: Statement, citation: &str) -> Result<FactId> {
        statement.validate()?;
        if citation.trim().is_empty() {
            return Err(Error::Malformed(
                "axioms require a nonempty citation".into(),
            ));
        }
        self.insert(
            statement,
            Provenance::Axiom {
                citation: citation.trim().to_string(),
            },
            0,
        )
    }

    /// Store a computed fact. Cover bounds must come with their witness
    /// cover, which is revalidated here against the registered complex;
    /// everything else carries a descriptive note.
    pub fn assert_computed(
        &mut self,
        statement: Statement,
        witness: Witness,
        budget: &Budget,
    ) -> Result<FactId> {
        statement.validate()?;
        if let Statement::CatUpper {
            space,
            class,
            bound,
        } = &statement
        {
            let Witness::Cover(cover) = &witness else {
                return Err(Error::Malformed(
                    "computed cover bounds must carry their witness cover".into(),
                ));
            };
            if cover.complex != *space {
                return Err(Error::Malformed(format!(
                    "witness cover is for {:?}, fact is about {:?}",
                    cover.complex, space
                )));
            }
            if cover.pieces.len() != *bound {
                return Err(Error::Malformed(format!(
                    "witness cover has {} pieces, fact claims {bound}",
                    cover.pieces.len()
                )));
            }
            let complex = self.complexes.get(space).ok_or_else(|| {
                Error::UnknownName(format!("complex {space:?} must be registered first"))
            })?;
            let report = validate_cover(complex, cover, class, budget)?;
            if report.admissible != Answer::Yes {
                return Err(Error::Malformed(format!(
                    "witness cover for {space:?} does not validate for {class}"
                )));
            }
        }
        self.insert(statement, Provenance::Computed { witness }, 0)
    }

    /// Store the outcome of a fibre collapsing check as a computed fact.
    /// Only a check that actually holds can be stored.
    pub fn assert_fca_checked(&mut self, report: &FcaReport, class: GroupClass) -> Result<FactId> {
        if report.holds != Answer::Yes {
            return Err(Error::Malformed(format!(
                "fibre collapsing check on {:?} did not hold",
                report.map_source
            )));
        }
        let statement = Statement::Fca {
            space: report.map_source.clone(),
            class,
            cap: report.cap,
        };
        let note = format!(
            "checked map to {} across {} fibres",
            report.map_target,
            report.fibres.len()
        );
        self.insert(
            statement,
            Provenance::Computed {
                witness: Witness::Note(note),
            },
            0,
        )
    }

    fn insert(
        &mut self,
        statement: Statement,
        provenance: Provenance,
        depth: usize,
    ) -> Result<FactId> {
        if let Some(&id) = self.index.get(&statement) {
            return Ok(id);
        }
        let id = self.facts.len();
        self.index.insert(statement.clone(), id);
        self.facts.push(FactEntry {
            id,
            statement,
            provenance,
            depth,
        });
        Ok(id)
    }

    /// Dimension of a named space, from the registered complex when
    /// available, else from an asserted manifold fact. The second value is
    /// the manifold fact consulted, so that rules can cite it.
    pub(crate) fn dim_of(&self, space: &str) -> Option<(usize, Option<FactId>)> {
        if let Some(c) = self.complexes.get(space) {
            if let Some(d) = c.dim() {
                return Some((d, None));
            }
        }
        self.facts.iter().find_map(|f| match &f.statement {
            Statement::Manifold {
                space: s, dim, ..
            } if s == space => Some((*dim, Some(f.id))),
            _ => None,
        })
    }

    /// Apply the rule catalog to a fixpoint. Rules run in tag order on a
    /// snapshot of the store each round, and new facts commit in
    /// generation order, so reruns produce identical stores and the first
    /// derivation of a statement is one of minimal depth.
    pub fn saturate(&mut self, budget: &Budget) -> Result<Saturation> {
        let mut rounds = 0usize;
        let mut derived = 0usize;
        loop {
            let pending = rules::round(self, budget);
            let mut inserted = 0usize;
            for p in pending {
                if self.index.contains_key(&p.statement) {
                    continue;
                }
                if self.facts.len() >= budget.max_facts {
                    return Err(Error::BudgetExceeded(format!(
                        "fact store reached the cap of {} facts",
                        budget.max_facts
                    )));
                }
                let depth = 1 + p
                    .premises
                    .iter()
                    .map(|&id| self.facts[id].depth)
                    .max()
                    .unwrap_or(0);
                self.insert(
                    p.statement,
                    Provenance::Derived {
                        rule: p.rule,
                        premises: p.premises,
                    },
                    depth,
                )?;
                inserted += 1;
            }
            if inserted == 0 {
                break;
            }
            rounds += 1;
            derived += inserted;
        }
        Ok(Saturation {
            rounds,
            derived,
            contradictions: self.contradictions(),
        })
    }

    /// Pairs of stored facts asserting both vanishing and positivity of
    /// the same quantity for the same space.
    pub fn contradictions(&self) -> Vec<(FactId, FactId)> {
        let mut out = Vec::new();
        for f in &self.facts {
            let opposite = match &f.statement {
                Statement::SimVolZero { space } => Statement::SimVolPositive {
                    space: space.clone(),
                },
                Statement::EntZero { space } => Statement::EntPositive {
                    space: space.clone(),
                },
                _ => continue,
            };
            if let Some(&other) = self.index.get(&opposite) {
                out.push((f.id, other));
            }
        }
        out
    }

    /// Whether a stored fact establishes the goal, allowing sound
    /// slack: a sharper bound proves a looser one, and a smaller class
    /// proves a larger one.
    fn establishes(&self, fact: &Statement, goal: &Statement) -> bool {
        use Statement::*;
        match (fact, goal) {
            (
                CatUpper {
                    space: fs,
                    class: fc,
                    bound: fb,
                },
                CatUpper {
                    space: gs,
                    class: gc,
                    bound: gb,
                },
            ) => fs == gs && class_subset(fc, gc) && fb <= gb,
            (
                CatLower {
                    space: fs,
                    class: fc,
                    bound: fb,
                },
                CatLower {
                    space: gs,
                    class: gc,
                    bound: gb,
                },
            ) => fs == gs && class_subset(gc, fc) && fb >= gb,
            (
                LsCatUpper {
                    space: fs,
                    bound: fb,
                },
                LsCatUpper {
                    space: gs,
                    bound: gb,
                },
            ) => fs == gs && fb <= gb,
            (
                MapCatUpper {
                    map: fm,
                    class: fc,
                    bound: fb,
                },
                MapCatUpper {
                    map: gm,
                    class: gc,
                    bound: gb,
                },
            ) => fm == gm && class_subset(fc, gc) && fb <= gb,
            (
                Fca {
                    space: fs,
                    class: fc,
                    cap: fk,
                },
                Fca {
                    space: gs,
                    class: gc,
                    cap: gk,
                },
            ) => fs == gs && class_subset(fc, gc) && fk <= gk,
            (Fnca { space: fs, rate: fr }, Fnca { space: gs, rate: gr }) => {
                fs == gs && fr.value() >= gr.value()
            }
            (
                UexpLower {
                    group: fg,
                    rate: fr,
                },
                UexpLower {
                    group: gg,
                    rate: gr,
                },
            ) => fg == gg && fr.value() >= gr.value(),
            (
                Pi1Equivalent {
                    left: fl,
                    right: fr,
                },
                Pi1Equivalent {
                    left: gl,
                    right: gr,
                },
            ) => (fl == gl && fr == gr) || (fl == gr && fr == gl),
            _ => fact == goal,
        }
    }

    /// Find a minimal-depth derivation of the goal or report the nearest
    /// missing premises.
    pub fn query(&self, goal: &Statement) -> QueryOutcome {
        let best = self
            .facts
            .iter()
            .filter(|f| self.establishes(&f.statement, goal))
            .min_by_key(|f| (f.depth, f.id));
        match best {
            Some(f) => QueryOutcome::Proved(self.trace(f.id)),
            None => QueryOutcome::Unproved {
                missing: self.missing_report(goal),
            },
        }
    }

    /// Derivation tree for a stored fact.
    pub fn trace(&self, id: FactId) -> Trace {
        let entry = &self.facts[id];
        let (rule, label, premises) = match &entry.provenance {
            Provenance::Axiom { citation } => (None, format!("axiom: {citation}"), Vec::new()),
            Provenance::Computed { witness } => {
                (None, format!("computed: {}", witness.summary()), Vec::new())
            }
            Provenance::Derived { rule, premises } => (
                Some(*rule),
                format!("{rule} {}", rules::rule_title(rule)),
                premises.iter().map(|&p| self.trace(p)).collect(),
            ),
        };
        Trace {
            id,
            statement: entry.statement.clone(),
            rule,
            label,
            premises,
        }
    }

    /// Human-readable account of why the goal is out of reach: for each
    /// rule that could conclude a statement of the goal's shape, which
    /// premises are present and which are missing.
    fn missing_report(&self, goal: &Statement) -> Vec<String> {
        rules::missing_premises(self, goal)
    }
}
