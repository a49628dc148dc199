//! Unoriented link diagrams in planar-diagram (PD) notation.
//!
//! A diagram is a list of crossings, each a 4-tuple of arc labels read
//! counterclockwise starting from an incoming under-strand end, plus a count
//! of crossing-free circles. Positions 0 and 2 carry the under-strand,
//! 1 and 3 the over-strand. Since no orientation is stored, the tuple
//! `(a, b, c, d)` and its half-turn `(c, d, a, b)` describe the same crossing;
//! the constructor keeps the lexicographically smaller of the two.

mod canonical;
mod moves;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::CanonicalKey;

/// A crossing as four arc labels, counterclockwise from an under-strand end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing(pub [usize; 4]);

impl Crossing {
    pub fn arc(&self, pos: usize) -> usize {
        self.0[pos & 3]
    }

    /// Over/under exchanged: a quarter turn of the tuple.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.0;
        Crossing([b, c, d, a])
    }

    fn normalized(self) -> Crossing {
        let [a, b, c, d] = self.0;
        let half = [c, d, a, b];
        Crossing(self.0.min(half))
    }

    /// True when positions `pos` and `pos + 1` carry the same arc (an R1 loop).
    pub fn has_kink_at(&self, pos: usize) -> bool {
        self.arc(pos) == self.arc(pos + 1)
    }
}

/// One of the two crossingless reconnections at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Resolution {
    /// Joins positions 0-1 and 2-3.
    SmoothingA,
    /// Joins positions 0-3 and 1-2.
    SmoothingB,
}

impl Resolution {
    pub const BOTH: [Resolution; 2] = [Resolution::SmoothingA, Resolution::SmoothingB];

    /// The two position pairs joined by this smoothing.
    pub(crate) fn joins(self) -> [(usize, usize); 2] {
        match self {
            Resolution::SmoothingA => [(0, 1), (2, 3)],
            Resolution::SmoothingB => [(0, 3), (1, 2)],
        }
    }
}

/// An occurrence of an arc end: crossing index and tuple position.
pub(crate) type Slot = (usize, usize);

/// A link diagram: crossings plus crossing-free circles.
///
/// Values are immutable; every operation returns a new diagram. Arc labels
/// are always exactly `0..arc_count`, each used by two crossing slots.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    arc_count: usize,
    free_loops: usize,
}

impl LinkDiagram {
    /// Validates raw labels (any integers, each appearing exactly twice) and
    /// compacts them to `0..arc_count` preserving their relative order.
    pub fn new(raw: &[[i64; 4]], free_loops: usize) -> Result<Self> {
        if raw.is_empty() && free_loops == 0 {
            return Err(Error::EmptyDiagram);
        }
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for t in raw {
            for &a in t {
                *counts.entry(a).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::ArcMultiplicity { label, count });
        }
        let index: BTreeMap<i64, usize> = counts.keys().enumerate().map(|(i, &l)| (l, i)).collect();
        let crossings = raw
            .iter()
            .map(|t| Crossing(t.map(|a| index[&a])).normalized())
            .collect();
        Ok(Self {
            crossings,
            arc_count: index.len(),
            free_loops,
        })
    }

    /// The unlink of `loops` components drawn without crossings.
    pub fn unlink(loops: usize) -> Result<Self> {
        Self::new(&[], loops)
    }

    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
            arc_count: 0,
            free_loops: 1,
        }
    }

    /// Rebuilds from labels that may have gaps; labels must still pair up.
    pub(crate) fn from_labels(crossings: Vec<[usize; 4]>, free_loops: usize) -> Self {
        let raw: Vec<[i64; 4]> = crossings.iter().map(|t| t.map(|a| a as i64)).collect();
        Self::new(&raw, free_loops).expect("internal move broke the arc pairing invariant")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Zero crossings and a single circle.
    pub fn is_trivial_knot(&self) -> bool {
        self.crossings.is_empty() && self.free_loops == 1
    }

    fn check_index(&self, c: usize) -> Result<()> {
        if c >= self.crossings.len() {
            return Err(Error::CrossingIndex {
                index: c,
                count: self.crossings.len(),
            });
        }
        Ok(())
    }

    /// Both slots of every arc.
    pub(crate) fn arc_slots(&self) -> Vec<[Slot; 2]> {
        let mut slots = vec![[(usize::MAX, 0); 2]; self.arc_count];
        let mut seen = vec![0u8; self.arc_count];
        for (i, c) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                let a = c.0[p];
                slots[a][seen[a] as usize] = (i, p);
                seen[a] += 1;
            }
        }
        slots
    }

    /// For each slot, the slot at the other end of its arc, indexed `4*i + p`.
    pub(crate) fn partners(&self) -> Vec<Slot> {
        let mut out = vec![(0, 0); 4 * self.crossings.len()];
        for [s, t] in self.arc_slots() {
            out[4 * s.0 + s.1] = t;
            out[4 * t.0 + t.1] = s;
        }
        out
    }

    /// Strands of the diagram as cyclic sequences of entered slots.
    ///
    /// Entering crossing `i` at position `p`, a strand leaves through
    /// `p + 2` and enters the partner slot of that exit. Free loops are not
    /// included.
    pub(crate) fn strands(&self) -> Vec<Vec<Slot>> {
        let partners = self.partners();
        let mut visited = vec![false; 4 * self.crossings.len()];
        let mut out = Vec::new();
        for start in 0..visited.len() {
            if visited[start] {
                continue;
            }
            let mut strand = Vec::new();
            let mut cur = (start / 4, start % 4);
            loop {
                let idx = 4 * cur.0 + cur.1;
                if visited[idx] {
                    break;
                }
                visited[idx] = true;
                let exit = (cur.0, (cur.1 + 2) % 4);
                visited[4 * exit.0 + exit.1] = true;
                strand.push(cur);
                cur = partners[4 * exit.0 + exit.1];
            }
            out.push(strand);
        }
        out
    }

    /// Number of link components, free loops included.
    pub fn components(&self) -> usize {
        self.strands().len() + self.free_loops
    }

    /// Exchanges over and under at crossing `c`.
    pub fn switch(&self, c: usize) -> Result<Self> {
        self.check_index(c)?;
        let mut out = self.clone();
        out.crossings[c] = out.crossings[c].switched().normalized();
        Ok(out)
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.crossings {
            *c = c.switched().normalized();
        }
        out
    }

    /// Connected pieces of the crossing-adjacency graph, as crossing indices.
    pub(crate) fn pieces(&self) -> Vec<Vec<usize>> {
        let n = self.crossings.len();
        let slots = self.arc_slots();
        let mut piece = vec![usize::MAX; n];
        let mut out = Vec::new();
        for root in 0..n {
            if piece[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![root];
            piece[root] = id;
            let mut k = 0;
            while k < members.len() {
                let i = members[k];
                k += 1;
                for &a in &self.crossings[i].0 {
                    for &(j, _) in &slots[a] {
                        if piece[j] == usize::MAX {
                            piece[j] = id;
                            members.push(j);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Whether the diagram is visibly split: it falls into two or more
    /// pieces, where a crossing-free circle counts as a piece of its own.
    pub fn is_split(&self) -> bool {
        self.pieces().len() + self.free_loops >= 2
    }

    /// PD text with 1-based labels, e.g. `X(1,4,2,5) X(3,6,4,1)`, followed
    /// by `loops=k` when there are free loops.
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, x, d] = c.0.map(|v| v + 1);
                format!("X({a},{b},{x},{d})")
            })
            .collect();
        if self.free_loops > 0 {
            parts.push(format!("loops={}", self.free_loops));
        }
        parts.join(" ")
    }
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkDiagram[{}]", self.to_pd_string())
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}
