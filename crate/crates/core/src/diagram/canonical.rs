use std::fmt;

use super::{LinkDiagram, Slot};

/// Relabeling-invariant encoding of a diagram, used as a memo key.
///
/// Each connected piece is encoded as its own PD code under the labeling
/// produced by walking it from some entry slot; the piece code is the
/// least such over all entry slots. Piece codes are sorted and prefixed by
/// the free-loop count. Since every code is itself a complete PD code, equal
/// keys mean the diagrams agree up to relabeling and crossing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

const UNSET: u32 = u32::MAX;

/// Scratch buffers for one walk, reused across entry slots.
struct Walker<'a> {
    d: &'a LinkDiagram,
    partners: &'a [Slot],
    crossing_label: Vec<u32>,
    entry_pos: Vec<u8>,
    arc_label: Vec<u32>,
    order: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(d: &'a LinkDiagram, partners: &'a [Slot]) -> Self {
        Self {
            d,
            partners,
            crossing_label: vec![UNSET; d.crossings.len()],
            entry_pos: vec![0; d.crossings.len()],
            arc_label: vec![UNSET; d.arc_count],
            order: Vec::new(),
        }
    }

    fn reset(&mut self, piece: &[usize]) {
        for &i in piece {
            self.crossing_label[i] = UNSET;
            for a in self.d.crossings[i].0 {
                self.arc_label[a] = UNSET;
            }
        }
        self.order.clear();
    }

    fn label_arc(&mut self, a: usize, next_arc: &mut u32) {
        if self.arc_label[a] == UNSET {
            self.arc_label[a] = *next_arc;
            *next_arc += 1;
        }
    }

    /// Walks the strand entering at `start`, labelling crossings and arcs in
    /// the order met.
    fn walk_strand(&mut self, start: Slot, next_arc: &mut u32) {
        let mut cur = start;
        loop {
            let (i, p) = cur;
            self.label_arc(self.d.crossings[i].arc(p), next_arc);
            if self.crossing_label[i] == UNSET {
                self.crossing_label[i] = self.order.len() as u32;
                self.entry_pos[i] = p as u8;
                self.order.push(i);
            }
            let exit = (i, (p + 2) % 4);
            self.label_arc(self.d.crossings[i].arc(exit.1), next_arc);
            cur = self.partners[4 * exit.0 + exit.1];
            if cur == start {
                break;
            }
        }
    }

    /// Encodes `piece` starting from `start` into `out`.
    fn encode(&mut self, piece: &[usize], start: Slot, out: &mut Vec<u32>) {
        self.reset(piece);
        out.clear();
        let mut next_arc = 0u32;
        self.walk_strand(start, &mut next_arc);
        // further strands start at the earliest-labelled crossing that
        // still has an unlabelled arc, entering one step counterclockwise
        // from where that crossing was first entered
        let mut k = 0;
        while k < self.order.len() {
            let i = self.order[k];
            let c = self.d.crossings[i];
            let e = self.entry_pos[i] as usize;
            if self.arc_label[c.arc(e + 1)] == UNSET || self.arc_label[c.arc(e + 3)] == UNSET {
                self.walk_strand((i, (e + 1) % 4), &mut next_arc);
                continue;
            }
            k += 1;
        }
        out.push(self.order.len() as u32);
        for &i in &self.order {
            let t = self.d.crossings[i].0.map(|a| self.arc_label[a]);
            let half = [t[2], t[3], t[0], t[1]];
            out.extend_from_slice(&t.min(half));
        }
    }
}

impl LinkDiagram {
    /// Key invariant under arc relabeling and crossing reordering.
    pub fn canonical_key(&self) -> CanonicalKey {
        let partners = self.partners();
        let mut walker = Walker::new(self, &partners);
        let mut codes: Vec<Vec<u32>> = Vec::new();
        let mut scratch = Vec::new();
        for piece in self.pieces() {
            let mut best: Option<Vec<u32>> = None;
            for &i in &piece {
                for p in 0..4 {
                    walker.encode(&piece, (i, p), &mut scratch);
                    if best.as_ref().is_none_or(|b| scratch < *b) {
                        best = Some(scratch.clone());
                    }
                }
            }
            codes.extend(best);
        }
        codes.sort();
        let mut bytes = Vec::with_capacity(8 + codes.iter().map(|c| 4 * c.len()).sum::<usize>());
        bytes.extend_from_slice(&(self.free_loops as u32).to_le_bytes());
        bytes.extend_from_slice(&(codes.len() as u32).to_le_bytes());
        for code in &codes {
            for v in code {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
        }
        CanonicalKey(bytes)
    }
}
