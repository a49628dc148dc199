//! Obstructions to quasi-alternating status from `Q` and `det`.
//!
//! For a quasi-alternating link `L`:
//!
//! * `det L >= 1`;
//! * `deg Q_L <= det L - 1`;
//! * `deg Q_L <= det L - 2` unless `L` is a `(2, n)` torus link;
//! * if `det L <= 3` then `L` is the unknot, the Hopf link or a trefoil.
//!
//! [`classify`] applies the contrapositives in that order. Only a failed
//! inequality (or a Q-polynomial that differs from the allowed values) ever
//! produces [`Verdict::NotQa`]; everything else is inconclusive.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::determinant::{det_via_q, determinant};
use crate::diagram::LinkDiagram;
use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::qpoly::{q_torus2, SkeinEngine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NotQaReason {
    DetZero,
    ExceedsQCBound,
    FailsRefinedBound,
    FailsSmallDetLemma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InconclusiveNote {
    PassesBothBounds,
    TorusCandidate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    NotQa(NotQaReason),
    Inconclusive(InconclusiveNote),
}

impl Verdict {
    pub fn is_not_qa(&self) -> bool {
        matches!(self, Verdict::NotQa(_))
    }

    /// The bound whose failure proves the verdict, empty when inconclusive.
    pub fn theorem_cited(&self) -> &'static str {
        match self {
            Verdict::NotQa(NotQaReason::DetZero) => "quasi-alternating => det >= 1",
            Verdict::NotQa(NotQaReason::ExceedsQCBound) => "quasi-alternating => deg Q <= det - 1",
            Verdict::NotQa(NotQaReason::FailsRefinedBound) => "quasi-alternating, not T(2,n) => deg Q <= det - 2",
            Verdict::NotQa(NotQaReason::FailsSmallDetLemma) => {
                "quasi-alternating, det <= 3 => unknot, Hopf link or trefoil"
            }
            Verdict::Inconclusive(_) => "",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotQa(r) => write!(f, "NotQA/{r:?}"),
            Verdict::Inconclusive(n) => write!(f, "Inconclusive/{n:?}"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn big_as_number<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(n) => s.serialize_u64(n),
        None => s.collect_str(v),
    }
}

/// Everything [`classify`] learned about one diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub crossings: usize,
    /// From the Goeritz matrix.
    #[serde(serialize_with = "big_as_number")]
    pub det: BigInt,
    /// From `Q(2) = det^2`.
    #[serde(serialize_with = "big_as_number")]
    pub det_q: BigInt,
    pub q: LaurentPoly,
    pub deg_q: i64,
    pub verdict: Verdict,
    pub theorem_cited: String,
}

impl Report {
    /// Whether the two independent determinant computations agree.
    pub fn dets_agree(&self) -> bool {
        self.det == self.det_q
    }
}

/// The decision procedure on precomputed `Q` and `det`.
pub fn verdict_for(q: &LaurentPoly, det: &BigInt) -> Verdict {
    use InconclusiveNote::*;
    use NotQaReason::*;
    if det.is_zero() {
        return Verdict::NotQa(DetZero);
    }
    let deg = BigInt::from(q.degree().expect("Q-polynomials are nonzero"));
    if &deg >= det {
        return Verdict::NotQa(ExceedsQCBound);
    }
    if deg == det - 1u32 {
        // Q is mirror invariant, so one comparison covers T(2, +-det)
        let n = det.to_i64().expect("det fits when deg Q = det - 1");
        return if *q == q_torus2(n) {
            Verdict::Inconclusive(TorusCandidate)
        } else {
            Verdict::NotQa(FailsRefinedBound)
        };
    }
    if let Some(n @ 1..=3) = det.to_i64() {
        if *q != q_torus2(n) {
            return Verdict::NotQa(FailsSmallDetLemma);
        }
    }
    Verdict::Inconclusive(PassesBothBounds)
}

/// Classifies with a caller-supplied skein engine (shared caches, budgets).
pub fn classify_with(engine: &mut SkeinEngine<'_>, name: &str, d: &LinkDiagram) -> Result<Report> {
    let q = engine.evaluate(d)?;
    let det = determinant(d);
    let det_q = det_via_q(&q)?;
    let verdict = verdict_for(&q, &det);
    Ok(Report {
        name: name.to_string(),
        crossings: d.crossing_count(),
        deg_q: q.degree().expect("Q-polynomials are nonzero"),
        theorem_cited: verdict.theorem_cited().to_string(),
        det,
        det_q,
        q,
        verdict,
    })
}

/// Full report for `d` with a fresh engine.
pub fn classify(d: &LinkDiagram) -> Result<Report> {
    classify_with(&mut SkeinEngine::new(), "", d)
}
