use super::{LinkDiagram, Resolution, Slot};
use crate::error::Result;

/// Union-find over arc labels.
struct Joins {
    parent: Vec<usize>,
}

impl Joins {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

impl LinkDiagram {
    /// Deletes the crossings in `removed`, joins arcs pairwise as listed,
    /// and forgets the arcs in `dropped`. Joined arcs that no longer touch a
    /// crossing become free loops.
    fn reconnect(&self, removed: &[usize], joins: &[(usize, usize)], dropped: &[usize]) -> Self {
        let mut uf = Joins::new(self.arc_count);
        for &(a, b) in joins {
            uf.union(a, b);
        }
        let mut kept = Vec::with_capacity(self.crossings.len() - removed.len());
        let mut live = vec![false; self.arc_count];
        for (i, c) in self.crossings.iter().enumerate() {
            if removed.contains(&i) {
                continue;
            }
            let t = c.0.map(|a| uf.find(a));
            for &a in &t {
                live[a] = true;
            }
            kept.push(t);
        }
        let mut closed = Vec::new();
        for &i in removed {
            for &a in &self.crossings[i].0 {
                if dropped.contains(&a) {
                    continue;
                }
                let r = uf.find(a);
                if !live[r] && !closed.contains(&r) {
                    closed.push(r);
                }
            }
        }
        Self::from_labels(kept, self.free_loops + closed.len())
    }

    /// Replaces crossing `c` by the reconnection `r`.
    pub fn smooth(&self, c: usize, r: Resolution) -> Result<Self> {
        self.check_index(c)?;
        let t = self.crossings[c];
        let joins = r.joins().map(|(p, q)| (t.arc(p), t.arc(q)));
        Ok(self.reconnect(&[c], &joins, &[]))
    }

    /// Removes the R1 loop at crossing `c`, positions `p` and `p + 1`.
    fn remove_kink(&self, c: usize, p: usize) -> Self {
        let t = self.crossings[c];
        self.reconnect(&[c], &[(t.arc(p + 2), t.arc(p + 3))], &[t.arc(p)])
    }

    /// Removes the R2 bigon formed by crossings `c1` and `c2`.
    fn remove_bigon(&self, c1: usize, c2: usize) -> Self {
        let mut joins = Vec::with_capacity(4);
        for c in [c1, c2] {
            let t = self.crossings[c];
            joins.push((t.arc(0), t.arc(2)));
            joins.push((t.arc(1), t.arc(3)));
        }
        self.reconnect(&[c1, c2], &joins, &[])
    }

    fn find_kink(&self) -> Option<(usize, usize)> {
        self.crossings
            .iter()
            .enumerate()
            .find_map(|(i, c)| (0..4).find(|&p| c.has_kink_at(p)).map(|p| (i, p)))
    }

    /// A bigon face whose bounding arcs each pass over (or under) at both
    /// of its corners.
    fn find_bigon(&self) -> Option<(usize, usize)> {
        let partners = self.partners();
        for face in self.face_darts_with(&partners) {
            if face.len() != 2 {
                continue;
            }
            let (s, t) = (face[0], face[1]);
            if s.0 == t.0 {
                continue;
            }
            // the arc leaving at `s` arrives at its partner; same parity
            // means the same strand is on top at both ends
            let far = partners[4 * s.0 + s.1];
            if s.1 % 2 == far.1 % 2 {
                return Some((s.0, t.0));
            }
        }
        None
    }

    /// Faces as orbits of darts, a dart being a slot read as "leave the
    /// crossing along this arc". After arriving at slot `q` the face turns to
    /// `q - 1`, so the corner between positions `p` and `p + 1` of a
    /// crossing belongs to the face of dart `p`.
    pub(crate) fn face_darts_with(&self, partners: &[Slot]) -> Vec<Vec<Slot>> {
        let mut seen = vec![false; partners.len()];
        let mut faces = Vec::new();
        for start in 0..partners.len() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push((d / 4, d % 4));
                let (j, q) = partners[d];
                d = 4 * j + (q + 3) % 4;
            }
            faces.push(face);
        }
        faces
    }

    /// Greedy Reidemeister I/II reduction until neither applies.
    ///
    /// Never increases the crossing count, and returns the diagram
    /// unchanged (labels included) when no move is available.
    pub fn simplify(&self) -> Self {
        let mut d = self.clone();
        loop {
            if let Some((c, p)) = d.find_kink() {
                d = d.remove_kink(c, p);
            } else if let Some((c1, c2)) = d.find_bigon() {
                d = d.remove_bigon(c1, c2);
            } else {
                return d;
            }
        }
    }

    /// Adds an R1 curl on `arc`; `positive` picks which of the two curls.
    /// On a crossing-free diagram the curl is drawn on one of the loops.
    pub fn with_kink(&self, arc: usize, positive: bool) -> Self {
        let fresh = self.arc_count;
        let (x, y) = (fresh, fresh + 1);
        let slots = self.arc_slots();
        let mut tuples: Vec<[usize; 4]> = self.crossings.iter().map(|c| c.0).collect();
        if tuples.is_empty() {
            let t = if positive { [x, x, y, y] } else { [x, y, y, x] };
            return Self::from_labels(vec![t], self.free_loops - 1);
        }
        // split `arc` into arc -> kink -> y; the far end now sees y
        let (j, q) = slots[arc][1];
        tuples[j][q] = y;
        tuples.push(if positive { [arc, x, x, y] } else { [arc, y, x, x] });
        Self::from_labels(tuples, self.free_loops)
    }

    /// Pushes a finger of `arc_a` across a face it shares with `arc_b`,
    /// passing over `arc_b` twice (an R2 move adding two crossings).
    /// `None` when the arcs coincide or bound no common face.
    pub fn with_bigon(&self, arc_a: usize, arc_b: usize) -> Option<Self> {
        if arc_a == arc_b || self.crossings.is_empty() {
            return None;
        }
        let partners = self.partners();
        let arc_of = |s: Slot| self.crossings[s.0].arc(s.1);
        let face = self
            .face_darts_with(&partners)
            .into_iter()
            .find(|f| f.iter().any(|&s| arc_of(s) == arc_a) && f.iter().any(|&s| arc_of(s) == arc_b))?;
        let da = *face.iter().find(|&&s| arc_of(s) == arc_a)?;
        let db = *face.iter().find(|&&s| arc_of(s) == arc_b)?;
        // Both darts run with the face on their left. Picture A along the
        // bottom heading east, B along the top heading west. A's finger goes
        // up over B at P, comes back down over B at Q, so A reads
        // arc_a, P, a1, Q, a2 and B reads arc_b, Q, b1, P, b2.
        let fa = partners[4 * da.0 + da.1];
        let fb = partners[4 * db.0 + db.1];
        let n = self.arc_count;
        let (a1, a2, b1, b2) = (n, n + 1, n + 2, n + 3);
        let mut tuples: Vec<[usize; 4]> = self.crossings.iter().map(|c| c.0).collect();
        tuples[fa.0][fa.1] = a2;
        tuples[fb.0][fb.1] = b2;
        tuples.push([b1, a1, b2, arc_a]);
        tuples.push([arc_b, a1, b1, a2]);
        Some(Self::from_labels(tuples, self.free_loops))
    }
}
