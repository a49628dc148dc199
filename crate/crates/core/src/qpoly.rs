//! The unoriented Q-polynomial by skein recursion.
//!
//! `Q` is determined by `Q(unknot) = 1` and
//! `Q(L+) + Q(L-) = x (Q(L0) + Q(Linf))`. To evaluate it on a diagram we fix
//! a base point and direction on every component and an order on the
//! components. A crossing is *bad* when the traversal meets it first on the
//! under-strand. Switching every bad crossing gives a descending diagram,
//! which is an unlink, so with bad crossings `c1..cm` switched one at a time
//!
//! ```text
//! Q(d) = sum_i (-1)^(i-1) x (Q(A_i) + Q(B_i)) + (-1)^m mu^(k-1),   mu = 2x^-1 - 1
//! ```
//!
//! where `A_i`, `B_i` smooth `c_i` in the diagram with `c1..c(i-1)` already
//! switched and `k` is the number of components. Smoothings have one crossing
//! fewer, so the recursion terminates. Results are memoized by
//! [`CanonicalKey`].

use std::collections::HashMap;
use std::sync::RwLock;

use itertools::Itertools;
use serde::Serialize;

use crate::diagram::{CanonicalKey, LinkDiagram, Resolution};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Counters from one or more evaluations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SkeinStats {
    pub nodes_expanded: u64,
    pub cache_hits: u64,
    pub max_depth: u64,
}

/// Memo table shareable across threads and across links of a batch.
///
/// Entries are pure functions of their key, so racing inserts of the same
/// key store equal values.
#[derive(Default)]
pub struct SharedCache {
    map: RwLock<HashMap<CanonicalKey, LaurentPoly>>,
}

impl SharedCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &CanonicalKey) -> Option<LaurentPoly> {
        self.map.read().unwrap().get(key).cloned()
    }

    fn insert(&self, key: CanonicalKey, value: LaurentPoly) {
        self.map.write().unwrap().entry(key).or_insert(value);
    }
}

/// `2x^-1 - 1`, the value on the two-component unlink.
pub fn mu() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-1, 0)])
}

fn unlink_value(components: usize) -> LaurentPoly {
    mu().pow(components.saturating_sub(1) as u32)
}

/// Skein evaluator with its own memo table and optionally a shared one.
pub struct SkeinEngine<'a> {
    local: HashMap<CanonicalKey, LaurentPoly>,
    shared: Option<&'a SharedCache>,
    budget: u64,
    stats: SkeinStats,
}

impl Default for SkeinEngine<'_> {
    fn default() -> Self {
        Self::new()
    }
}

impl<'a> SkeinEngine<'a> {
    pub fn new() -> Self {
        Self {
            local: HashMap::new(),
            shared: None,
            budget: DEFAULT_NODE_BUDGET,
            stats: SkeinStats::default(),
        }
    }

    /// Limit on expanded nodes, counted across all calls on this engine.
    pub fn with_budget(mut self, max_nodes: u64) -> Self {
        self.budget = max_nodes;
        self
    }

    pub fn with_shared(mut self, cache: &'a SharedCache) -> Self {
        self.shared = Some(cache);
        self
    }

    pub fn stats(&self) -> SkeinStats {
        self.stats
    }

    pub fn evaluate(&mut self, d: &LinkDiagram) -> Result<LaurentPoly> {
        self.eval_at(d, 1)
    }

    fn lookup(&mut self, key: &CanonicalKey) -> Option<LaurentPoly> {
        if let Some(v) = self.local.get(key) {
            return Some(v.clone());
        }
        let v = self.shared?.get(key)?;
        self.local.insert(key.clone(), v.clone());
        Some(v)
    }

    fn eval_at(&mut self, d: &LinkDiagram, depth: u64) -> Result<LaurentPoly> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let d = d.simplify();
        if d.crossing_count() == 0 {
            return Ok(unlink_value(d.free_loops()));
        }
        let key = d.canonical_key();
        if let Some(v) = self.lookup(&key) {
            self.stats.cache_hits += 1;
            return Ok(v);
        }
        self.stats.nodes_expanded += 1;
        if self.stats.nodes_expanded > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }

        let plan = DescendingPlan::for_diagram(&d);
        let mut acc = LaurentPoly::zero();
        let mut cur = d.clone();
        let mut negate = false;
        for &c in &plan.bad {
            let mut pair = LaurentPoly::zero();
            for r in Resolution::BOTH {
                let s = cur.smooth(c, r)?;
                pair = &pair + &self.eval_at(&s, depth + 1)?;
            }
            let term = pair.shift(1);
            acc = if negate { &acc - &term } else { &acc + &term };
            negate = !negate;
            cur = cur.switch(c)?;
        }
        let base = unlink_value(plan.components);
        acc = if negate { &acc - &base } else { &acc + &base };

        if let Some(shared) = self.shared {
            shared.insert(key.clone(), acc.clone());
        }
        self.local.insert(key, acc.clone());
        Ok(acc)
    }
}

/// Base points, directions and component order for one diagram, with the
/// crossings that traversal meets first from below.
struct DescendingPlan {
    bad: Vec<usize>,
    components: usize,
}

/// One pass of a strand through a crossing.
#[derive(Clone, Copy)]
struct Pass {
    crossing: usize,
    over: bool,
}

impl DescendingPlan {
    fn for_diagram(d: &LinkDiagram) -> Self {
        let strands: Vec<Vec<Pass>> = d
            .strands()
            .into_iter()
            .map(|s| {
                s.into_iter()
                    .map(|(i, p)| Pass {
                        crossing: i,
                        over: p % 2 == 1,
                    })
                    .collect()
            })
            .collect();
        let n = d.crossing_count();
        let k = strands.len();

        // owner[c] = strands passing through c as (under, over)
        let mut under_of = vec![usize::MAX; n];
        let mut over_of = vec![usize::MAX; n];
        for (si, s) in strands.iter().enumerate() {
            for pass in s {
                if pass.over {
                    over_of[pass.crossing] = si;
                } else {
                    under_of[pass.crossing] = si;
                }
            }
        }

        let mut bad = Vec::new();
        for s in &strands {
            bad.extend(best_self_traversal(s));
        }

        // weight[i][j]: crossings where j is over i; bad if i comes first
        let mut weight = vec![vec![0usize; k]; k];
        for c in 0..n {
            let (u, o) = (under_of[c], over_of[c]);
            if u != o {
                weight[u][o] += 1;
            }
        }
        let order = best_component_order(&weight);
        let mut rank = vec![0; k];
        for (r, &s) in order.iter().enumerate() {
            rank[s] = r;
        }
        for c in 0..n {
            let (u, o) = (under_of[c], over_of[c]);
            if u != o && rank[u] < rank[o] {
                bad.push(c);
            }
        }
        bad.sort_unstable();
        Self {
            bad,
            components: k + d.free_loops(),
        }
    }
}

/// Self-crossings met first from below, for the base point and direction
/// that minimize their number.
fn best_self_traversal(passes: &[Pass]) -> Vec<usize> {
    let len = passes.len();
    // first and second index of each self-crossing on this strand
    let mut first: HashMap<usize, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for (j, pass) in passes.iter().enumerate() {
        if let Some(&i) = first.get(&pass.crossing) {
            let (under, over) = if passes[i].over { (j, i) } else { (i, j) };
            pairs.push((pass.crossing, under, over));
        } else {
            first.insert(pass.crossing, j);
        }
    }
    if pairs.is_empty() {
        return Vec::new();
    }
    let mut best: Option<Vec<usize>> = None;
    for start in 0..len {
        for forward in [true, false] {
            let dist = |j: usize| {
                if forward {
                    (j + len - start) % len
                } else {
                    (start + len - j) % len
                }
            };
            let bad: Vec<usize> = pairs
                .iter()
                .filter(|&&(_, u, o)| dist(u) < dist(o))
                .map(|&(c, _, _)| c)
                .collect();
            if best.as_ref().is_none_or(|b| bad.len() < b.len()) {
                best = Some(bad);
            }
        }
    }
    best.unwrap_or_default()
}

/// Component order minimizing inter-component bad crossings; exhaustive
/// for up to seven components, greedy beyond.
fn best_component_order(weight: &[Vec<usize>]) -> Vec<usize> {
    let k = weight.len();
    let cost = |order: &[usize]| -> usize {
        let mut total = 0;
        for (a, &i) in order.iter().enumerate() {
            for &j in &order[a + 1..] {
                total += weight[i][j];
            }
        }
        total
    };
    if k <= 7 {
        return (0..k).permutations(k).min_by_key(|o| cost(o)).unwrap_or_default();
    }
    // strands that are mostly on top go first
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| {
        let below: usize = weight[i].iter().sum();
        let above: usize = weight.iter().map(|row| row[i]).sum();
        below as i64 - above as i64
    });
    order
}

/// Q-polynomial of `d` with a fresh engine and the default node budget.
pub fn q_polynomial(d: &LinkDiagram) -> Result<(LaurentPoly, SkeinStats)> {
    let mut engine = SkeinEngine::new();
    let q = engine.evaluate(d)?;
    Ok((q, engine.stats()))
}

/// Closed form for the `(2, n)` torus link, by the recurrence
/// `Q_k = x (Q_(k-1) + 1) - Q_(k-2)` with `Q_0 = mu`, `Q_1 = 1`.
/// Mirror images share `Q`, so only `|n|` matters.
pub fn q_torus2(n: i64) -> LaurentPoly {
    let k = n.unsigned_abs();
    let (mut prev, mut cur) = (mu(), LaurentPoly::one());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&cur + &LaurentPoly::one()).shift(1) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}
