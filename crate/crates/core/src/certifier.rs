//! Search for resolution trees proving a link quasi-alternating.
//!
//! A crossing `c` of a diagram `D` is usable when both smoothings have
//! nonzero determinant and `det D = det D_A + det D_B`. A certificate is a
//! tree of usable crossings whose leaves all simplify to the crossing-free
//! unknot.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::determinant::determinant;
use crate::diagram::{CanonicalKey, LinkDiagram, Resolution};
use crate::error::{Error, Result};

/// A resolution tree. Shared subtrees are reference counted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The crossing-free unknot.
    Leaf,
    Node(CertNode),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertNode {
    /// Simplified diagram at this node; `crossing` indexes into it.
    pub diagram: LinkDiagram,
    pub key: CanonicalKey,
    pub crossing: usize,
    pub det: BigInt,
    /// Subtrees for `SmoothingA` and `SmoothingB`, in that order.
    pub children: [Arc<Certificate>; 2],
}

impl Certificate {
    pub fn is_leaf(&self) -> bool {
        matches!(self, Certificate::Leaf)
    }

    pub fn det(&self) -> BigInt {
        match self {
            Certificate::Leaf => BigInt::from(1),
            Certificate::Node(n) => n.det.clone(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Certificate::Leaf => 0,
            Certificate::Node(n) => 1 + n.children.iter().map(|c| c.depth()).max().unwrap_or(0),
        }
    }

    /// Number of internal nodes, counting shared subtrees once per use.
    pub fn node_count(&self) -> usize {
        match self {
            Certificate::Leaf => 0,
            Certificate::Node(n) => 1 + n.children.iter().map(|c| c.node_count()).sum::<usize>(),
        }
    }

    /// Whether this certificate is about `d`, i.e. its root matches the
    /// simplification of `d`.
    pub fn proves(&self, d: &LinkDiagram) -> bool {
        let s = d.simplify();
        match self {
            Certificate::Leaf => s.is_trivial_knot(),
            Certificate::Node(n) => s.canonical_key() == n.key,
        }
    }

    /// Indented text, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0, "");
        out
    }

    fn write_text(&self, out: &mut String, indent: usize, label: &str) {
        let pad = "  ".repeat(indent);
        match self {
            Certificate::Leaf => {
                let _ = writeln!(out, "{pad}{label}unknot");
            }
            Certificate::Node(n) => {
                let _ = writeln!(
                    out,
                    "{pad}{label}det {} at crossing {}: {}",
                    n.det,
                    n.crossing,
                    n.diagram.to_pd_string()
                );
                n.children[0].write_text(out, indent + 1, "A: ");
                n.children[1].write_text(out, indent + 1, "B: ");
            }
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Certificate::Leaf => s.serialize_str("unknot"),
            Certificate::Node(n) => {
                let mut st = s.serialize_struct("Node", 5)?;
                st.serialize_field("key", &n.key.to_string())?;
                st.serialize_field("crossing", &n.crossing)?;
                st.serialize_field("det", &n.det.to_u64())?;
                st.serialize_field("pd", &n.diagram.to_pd_string())?;
                st.serialize_field("children", &[&*n.children[0], &*n.children[1]])?;
                st.end()
            }
        }
    }
}

/// Rechecks a certificate from scratch.
///
/// Every node's determinant is recomputed, each smoothing is redone and
/// simplified, and must match the child subtree (by canonical key, or by
/// being the unknot at a leaf).
pub fn verify_certificate(cert: &Certificate) -> bool {
    match cert {
        Certificate::Leaf => true,
        Certificate::Node(n) => verify_node(n),
    }
}

fn verify_node(n: &CertNode) -> bool {
    let d = &n.diagram;
    if d.canonical_key() != n.key || n.crossing >= d.crossing_count() {
        return false;
    }
    let det = determinant(d);
    if det != n.det {
        return false;
    }
    let mut sum = BigInt::zero();
    for (r, child) in Resolution::BOTH.into_iter().zip(&n.children) {
        let Ok(s) = d.smooth(n.crossing, r) else {
            return false;
        };
        let s = s.simplify();
        let matches = match &**child {
            Certificate::Leaf => s.is_trivial_knot(),
            Certificate::Node(c) => s.canonical_key() == c.key && verify_node(c),
        };
        if !matches {
            return false;
        }
        let part = determinant(&s);
        if !part.is_positive() {
            return false;
        }
        sum += part;
    }
    sum == det
}

#[derive(Clone)]
enum Outcome {
    Found(Arc<Certificate>),
    Absent,
}

/// Depth-first certificate search with memoization by canonical key.
///
/// Successes and definitive failures are remembered across calls; a search
/// cut short by the budget leaves nothing behind, so a later call with a
/// larger budget starts clean for the unfinished diagrams.
pub struct Certifier {
    memo: HashMap<CanonicalKey, Outcome>,
    dets: HashMap<CanonicalKey, BigInt>,
    nodes: u64,
    budget: u64,
}

impl Default for Certifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Certifier {
    pub fn new() -> Self {
        Self {
            memo: HashMap::new(),
            dets: HashMap::new(),
            nodes: 0,
            budget: crate::qpoly::DEFAULT_NODE_BUDGET,
        }
    }

    /// Limits each [`Certifier::certify`] call to `max_nodes` expansions.
    pub fn with_budget(mut self, max_nodes: u64) -> Self {
        self.budget = max_nodes;
        self
    }

    /// Diagrams expanded by the most recent call.
    pub fn nodes_expanded(&self) -> u64 {
        self.nodes
    }

    /// `Ok(None)` means no certificate exists among this diagram's own
    /// resolution trees; other diagrams of the same link may still have one.
    pub fn certify(&mut self, d: &LinkDiagram) -> Result<Option<Arc<Certificate>>> {
        self.nodes = 0;
        Ok(match self.search(d.simplify())? {
            Outcome::Found(c) => Some(c),
            Outcome::Absent => None,
        })
    }

    fn det_of(&mut self, key: &CanonicalKey, d: &LinkDiagram) -> BigInt {
        if let Some(v) = self.dets.get(key) {
            return v.clone();
        }
        let v = determinant(d);
        self.dets.insert(key.clone(), v.clone());
        v
    }

    fn search(&mut self, d: LinkDiagram) -> Result<Outcome> {
        if d.is_trivial_knot() {
            return Ok(Outcome::Found(Arc::new(Certificate::Leaf)));
        }
        if d.crossing_count() == 0 || d.is_split() {
            return Ok(Outcome::Absent);
        }
        let key = d.canonical_key();
        if let Some(o) = self.memo.get(&key) {
            return Ok(o.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let det = self.det_of(&key, &d);
        let mut candidates = Vec::new();
        if det.is_positive() {
            for c in 0..d.crossing_count() {
                let a = d.smooth(c, Resolution::SmoothingA)?.simplify();
                let b = d.smooth(c, Resolution::SmoothingB)?.simplify();
                let da = self.det_of(&a.canonical_key(), &a);
                let db = self.det_of(&b.canonical_key(), &b);
                if da.is_positive() && db.is_positive() && &da + &db == det {
                    candidates.push((da.clone().min(db.clone()), c, a, b));
                }
            }
        }
        candidates.sort_by(|x, y| (&x.0, x.1).cmp(&(&y.0, y.1)));
        let mut found = None;
        for (_, c, a, b) in candidates {
            let Outcome::Found(ca) = self.search(a)? else { continue };
            let Outcome::Found(cb) = self.search(b)? else { continue };
            found = Some(Certificate::Node(CertNode {
                diagram: d.clone(),
                key: key.clone(),
                crossing: c,
                det: det.clone(),
                children: [ca, cb],
            }));
            break;
        }
        let outcome = match found {
            Some(c) => Outcome::Found(Arc::new(c)),
            None => Outcome::Absent,
        };
        self.memo.insert(key, outcome.clone());
        Ok(outcome)
    }
}

/// Certificate search with a fresh [`Certifier`] and the given node budget.
pub fn certify(d: &LinkDiagram, max_nodes: u64) -> Result<Option<Arc<Certificate>>> {
    Certifier::new().with_budget(max_nodes).certify(d)
}
