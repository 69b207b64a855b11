//! Classes of fundamental-group constraints and three-valued membership
//! verdicts.
//!
//! The class lattice is fixed: Trivial => Finite => Poly; Abelian => Poly;
//! Poly => SubexpBelow(r) for every r; SubexpBelow(r) => Subexp => Amenable;
//! SubexpBelow(r) => ExpBelow(r); parametrized kinds are monotone in the
//! rate. Membership answers are Yes, No, or Unknown, and Yes/No are only
//! produced by sound rules; Unknown is the honest default.

mod classify;
mod folding;

pub use classify::{classify_group, classify_image};
pub use folding::free_subgroup_rank;

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Which side of the true quantity a stored rational sits on. Values built
/// from exact user input are tagged UpperBound so that threshold checks
/// (which must not overshoot) may use them directly; derived lower bounds
/// on growth keep the LowerBound tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rounding {
    LowerBound,
    UpperBound,
}

/// Exact strictly positive rational standing for a logarithmic growth
/// rate. Divisions by odd integers stay exact; the only irrational
/// constant in the system, log 3, is stored as a rational lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogRate {
    value: Ratio<i64>,
    rounding: Rounding,
}

impl LogRate {
    pub fn exact(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Malformed("rate with zero denominator".into()));
        }
        let value = Ratio::new(numer, denom);
        if value <= Ratio::from_integer(0) {
            return Err(Error::NegativeRate(format!("{numer}/{denom}")));
        }
        Ok(Self {
            value,
            rounding: Rounding::UpperBound,
        })
    }

    /// Rational lower bound for log 3, the growth rate of a free group of
    /// rank two.
    pub fn log3_lower() -> Self {
        Self {
            value: Ratio::new(109_861, 100_000),
            rounding: Rounding::LowerBound,
        }
    }

    pub fn value(&self) -> Ratio<i64> {
        self.value
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    /// Exact division by the odd integer 2d - 1.
    pub fn div_odd(&self, d: u32) -> Self {
        Self {
            value: self.value / Ratio::from_integer(i64::from(2 * d - 1)),
            rounding: self.rounding,
        }
    }
}

impl fmt::Display for LogRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.value.numer(), self.value.denom())
    }
}

impl FromStr for LogRate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>(),
                d.trim().parse::<i64>(),
            ),
            None => (s.trim().parse::<i64>(), Ok(1)),
        };
        match (n, d) {
            (Ok(n), Ok(d)) if d != 0 => LogRate::exact(n, d),
            _ => Err(Error::Malformed(format!("unparseable rate {s:?}"))),
        }
    }
}

/// Growth rate of the index-d cover bound: the ambient rate shrinks by the
/// odd factor 2d - 1, exactly.
pub fn finite_cover_rate(rate: LogRate, d: u32) -> LogRate {
    rate.div_odd(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    Trivial,
    Finite,
    Abelian,
    Amenable,
    Poly,
    SubexpBelow(LogRate),
    Subexp,
    ExpBelow(LogRate),
}

impl ClassKind {
    /// Sound implication in the class lattice: a group in `self` is
    /// guaranteed to lie in `other`.
    pub fn implies(&self, other: &ClassKind) -> bool {
        use ClassKind::*;
        match (self, other) {
            (a, b) if a == b => true,
            (Trivial, _) => true,
            (Finite, Poly | Subexp | Amenable | SubexpBelow(_) | ExpBelow(_)) => true,
            (Abelian, Poly | Subexp | Amenable | SubexpBelow(_) | ExpBelow(_)) => true,
            (Poly, Subexp | Amenable | SubexpBelow(_) | ExpBelow(_)) => true,
            (SubexpBelow(_), Subexp | Amenable) => true,
            (SubexpBelow(a), SubexpBelow(b)) => a.value() <= b.value(),
            (SubexpBelow(a), ExpBelow(b)) => a.value() <= b.value(),
            (Subexp, Amenable) => true,
            (ExpBelow(a), ExpBelow(b)) => a.value() <= b.value(),
            _ => false,
        }
    }

    /// Closed under passage to finitely generated subgroups. The sole
    /// exception in this lattice is ExpBelow, where a subgroup can grow
    /// faster relative to its own word metric.
    pub fn subgroup_closed(&self) -> bool {
        !matches!(self, ClassKind::ExpBelow(_))
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::Trivial => write!(f, "trivial"),
            ClassKind::Finite => write!(f, "finite"),
            ClassKind::Abelian => write!(f, "abelian"),
            ClassKind::Amenable => write!(f, "amenable"),
            ClassKind::Poly => write!(f, "poly"),
            ClassKind::SubexpBelow(r) => write!(f, "subexp<{r}"),
            ClassKind::Subexp => write!(f, "subexp"),
            ClassKind::ExpBelow(r) => write!(f, "exp<{r}"),
        }
    }
}

/// A constraint class, optionally widened by the finitely-generated
/// closure. For finitely presented inputs the closure never changes a
/// membership answer, so classification ignores the flag; derivation rules
/// that need subgroup closure consult `ClassKind::subgroup_closed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupClass {
    pub kind: ClassKind,
    pub fg_closure_applied: bool,
}

impl GroupClass {
    pub fn new(kind: ClassKind) -> Self {
        Self {
            kind,
            fg_closure_applied: false,
        }
    }

    pub fn with_fg_closure(kind: ClassKind) -> Self {
        Self {
            kind,
            fg_closure_applied: true,
        }
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if self.fg_closure_applied {
            write!(f, "+fg")?;
        }
        Ok(())
    }
}

impl FromStr for GroupClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, closure) = match s.strip_suffix("+fg") {
            Some(body) => (body, true),
            None => (s, false),
        };
        let kind = match body {
            "trivial" => ClassKind::Trivial,
            "finite" => ClassKind::Finite,
            "abelian" => ClassKind::Abelian,
            "amenable" => ClassKind::Amenable,
            "poly" => ClassKind::Poly,
            "subexp" => ClassKind::Subexp,
            _ => {
                if let Some(rate) = body.strip_prefix("subexp<") {
                    ClassKind::SubexpBelow(rate.parse()?)
                } else if let Some(rate) = body.strip_prefix("exp<") {
                    ClassKind::ExpBelow(rate.parse()?)
                } else {
                    return Err(Error::Malformed(format!("unknown class {s:?}")));
                }
            }
        };
        Ok(Self {
            kind,
            fg_closure_applied: closure,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// Membership verdict with the rule trace that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub trace: Vec<String>,
}

impl Verdict {
    pub fn yes(reason: impl Into<String>) -> Self {
        Self {
            answer: Answer::Yes,
            trace: vec![reason.into()],
        }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        Self {
            answer: Answer::No,
            trace: vec![reason.into()],
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Self {
            answer: Answer::Unknown,
            trace: vec![reason.into()],
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn prefixed(mut self, prefix: &str) -> Self {
        for line in &mut self.trace {
            *line = format!("{prefix}{line}");
        }
        self
    }

    /// Conjunction: Yes only if all are Yes, No as soon as one is No.
    pub fn all(parts: Vec<Verdict>, context: &str) -> Verdict {
        let mut trace = Vec::new();
        let mut answer = Answer::Yes;
        for (i, p) in parts.iter().enumerate() {
            for line in &p.trace {
                trace.push(format!("{context}[{i}]: {line}"));
            }
        }
        if parts.iter().any(|p| p.answer == Answer::No) {
            answer = Answer::No;
        } else if parts.iter().any(|p| p.answer == Answer::Unknown) {
            answer = Answer::Unknown;
        }
        if parts.is_empty() {
            trace.push(format!("{context}: empty, vacuously yes"));
        }
        Verdict { answer, trace }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Yes => write!(f, "yes"),
            Answer::No => write!(f, "no"),
            Answer::Unknown => write!(f, "unknown"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rate(n: i64, d: i64) -> LogRate {
        LogRate::exact(n, d).unwrap()
    }

    #[test]
    fn lattice_implications() {
        use ClassKind::*;
        assert!(Trivial.implies(&Amenable));
        assert!(Trivial.implies(&ExpBelow(rate(1, 2))));
        assert!(Finite.implies(&Poly));
        assert!(!Finite.implies(&Abelian));
        assert!(Abelian.implies(&Amenable));
        assert!(Poly.implies(&SubexpBelow(rate(1, 100))));
        assert!(SubexpBelow(rate(1, 3)).implies(&SubexpBelow(rate(1, 2))));
        assert!(!SubexpBelow(rate(1, 2)).implies(&SubexpBelow(rate(1, 3))));
        assert!(SubexpBelow(rate(1, 2)).implies(&ExpBelow(rate(1, 2))));
        assert!(SubexpBelow(rate(1, 2)).implies(&Amenable));
        assert!(Subexp.implies(&Amenable));
        assert!(!Amenable.implies(&Subexp));
        assert!(ExpBelow(rate(1, 3)).implies(&ExpBelow(rate(1, 2))));
        assert!(!ExpBelow(rate(1, 2)).implies(&Amenable));
    }

    #[test]
    fn implication_is_transitive_on_samples() {
        use ClassKind::*;
        let kinds = vec![
            Trivial,
            Finite,
            Abelian,
            Amenable,
            Poly,
            SubexpBelow(rate(1, 3)),
            SubexpBelow(rate(1, 2)),
            Subexp,
            ExpBelow(rate(1, 3)),
            ExpBelow(rate(11, 10)),
        ];
        for a in &kinds {
            for b in &kinds {
                for c in &kinds {
                    if a.implies(b) && b.implies(c) {
                        assert!(a.implies(c), "{a} => {b} => {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn cover_rate_divides_exactly() {
        let r = rate(1, 2);
        assert_eq!(finite_cover_rate(r, 1).value(), Ratio::new(1, 2));
        assert_eq!(finite_cover_rate(r, 2).value(), Ratio::new(1, 6));
        assert_eq!(finite_cover_rate(r, 3).value(), Ratio::new(1, 10));
        assert_eq!(finite_cover_rate(rate(3, 7), 5).value(), Ratio::new(1, 21));
        assert_eq!(finite_cover_rate(r, 2).rounding(), r.rounding());
    }

    #[test]
    fn rates_reject_negatives_and_bad_input() {
        assert!(LogRate::exact(-1, 2).is_err());
        assert!(LogRate::exact(0, 3).is_err());
        assert!("x/y".parse::<LogRate>().is_err());
        assert!("1/0".parse::<LogRate>().is_err());
        assert!("0/5".parse::<LogRate>().is_err());
        assert_eq!("3/4".parse::<LogRate>().unwrap(), rate(3, 4));
        assert_eq!("2".parse::<LogRate>().unwrap(), rate(2, 1));
    }

    #[test]
    fn class_strings_round_trip() {
        for s in [
            "trivial", "finite", "abelian", "amenable", "poly", "subexp",
            "subexp<1/2", "exp<11/10", "amenable+fg",
        ] {
            let c: GroupClass = s.parse().unwrap();
            assert_eq!(c.to_string(), s);
        }
        assert!("subexp<".parse::<GroupClass>().is_err());
        assert!("weird".parse::<GroupClass>().is_err());
    }

    #[test]
    fn log3_bound_sits_below_the_true_value() {
        // 3 > e^{109861/100000}: checked against e^{1.09861} = 2.99998....
        let r = LogRate::log3_lower();
        assert_eq!(r.rounding(), Rounding::LowerBound);
        assert!(r.value() < Ratio::new(109_862, 100_000));
    }

    #[test]
    fn verdict_aggregation() {
        let v = Verdict::all(vec![Verdict::yes("a"), Verdict::yes("b")], "piece");
        assert_eq!(v.answer, Answer::Yes);
        let v = Verdict::all(vec![Verdict::yes("a"), Verdict::unknown("b")], "piece");
        assert_eq!(v.answer, Answer::Unknown);
        let v = Verdict::all(
            vec![Verdict::unknown("a"), Verdict::no("b")],
            "piece",
        );
        assert_eq!(v.answer, Answer::No);
        assert_eq!(Verdict::all(vec![], "piece").answer, Answer::Yes);
    }
}
