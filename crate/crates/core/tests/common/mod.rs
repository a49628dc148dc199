#![allow(dead_code)]

use std::collections::HashMap;

use knotqa::corpus::bundled;
use knotqa::{CorpusEntry, LaurentPoly, LinkDiagram};
use num_bigint::BigInt;

pub struct Golden {
    pub crossings: usize,
    pub det: BigInt,
    pub alternating: bool,
    pub q: LaurentPoly,
}

/// Reference values taken from KnotInfo/LinkInfo: `Q = F(1, x)` from the
/// Kauffman polynomial, and the tabulated determinant.
pub fn golden() -> HashMap<String, Golden> {
    include_str!("../data/knotinfo_q.tsv")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let g = Golden {
                crossings: f[1].parse().unwrap(),
                det: f[2].parse().unwrap(),
                alternating: f[3] == "Y",
                q: f[4].parse().unwrap(),
            };
            (f[0].to_string(), g)
        })
        .collect()
}

/// Braid words for the same links, from the same tables.
pub fn braids() -> Vec<(String, LinkDiagram)> {
    include_str!("../data/braids.tsv")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            let word: Vec<i64> = f[2].split(',').map(|t| t.parse().unwrap()).collect();
            (
                f[0].to_string(),
                LinkDiagram::from_braid(&word, f[1].parse().unwrap()).unwrap(),
            )
        })
        .collect()
}

pub fn corpus() -> Vec<CorpusEntry> {
    bundled()
}

pub fn small_corpus(max_crossings: usize) -> Vec<CorpusEntry> {
    bundled()
        .into_iter()
        .filter(|e| e.parsed.crossing_count() <= max_crossings)
        .collect()
}

/// Walks every strand straight from the PD tuples and checks that
/// crossings alternate over/under along it.
pub fn is_alternating(d: &LinkDiagram) -> bool {
    let xs: Vec<[usize; 4]> = d.crossings().iter().map(|c| c.0).collect();
    let mut slots: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (i, x) in xs.iter().enumerate() {
        for (p, &a) in x.iter().enumerate() {
            slots.entry(a).or_default().push((i, p));
        }
    }
    let mut seen = vec![[false; 4]; xs.len()];
    for start_i in 0..xs.len() {
        for start_p in 0..4 {
            if seen[start_i][start_p] {
                continue;
            }
            let (mut i, mut p) = (start_i, start_p);
            let mut prev_over: Option<bool> = None;
            loop {
                seen[i][p] = true;
                let out = (p + 2) % 4;
                seen[i][out] = true;
                let over = p % 2 == 1;
                if prev_over == Some(over) {
                    return false;
                }
                prev_over = Some(over);
                let arc = xs[i][out];
                let s = &slots[&arc];
                let next = if s[0] == (i, out) { s[1] } else { s[0] };
                (i, p) = next;
                if (i, p) == (start_i, start_p) {
                    break;
                }
            }
            if prev_over == Some(start_p % 2 == 1) {
                return false;
            }
        }
    }
    true
}

/// Alternating, no kinks to remove, and for tabulated links drawn with the
/// minimal number of crossings.
pub fn is_reduced_alternating(e: &CorpusEntry, golden: &HashMap<String, Golden>) -> bool {
    let d = &e.parsed;
    if d.crossing_count() == 0 || !is_alternating(d) || d.simplify().crossing_count() != d.crossing_count() {
        return false;
    }
    golden.get(&e.name).is_none_or(|g| g.crossings == d.crossing_count())
}
