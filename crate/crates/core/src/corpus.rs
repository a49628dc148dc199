//! Line-oriented corpora of named diagrams.
//!
//! One entry per line, `name<TAB>notation`, where the notation is either
//! `pd:<PD text>` or `braid:<strands>:[l1,l2,...]`. Blank lines and lines
//! starting with `#` are skipped.

use std::collections::HashSet;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

const BUNDLED: &str = include_str!("../data/corpus.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub source: String,
    pub parsed: LinkDiagram,
}

/// Parses a `pd:` or `braid:` notation string.
pub fn parse_notation(s: &str) -> Result<LinkDiagram> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix("pd:") {
        return LinkDiagram::parse_pd(body);
    }
    if let Some(body) = s.strip_prefix("braid:") {
        let (strands, word) = body
            .split_once(':')
            .ok_or_else(|| Error::Notation(format!("expected braid:<strands>:[...], got {s:?}")))?;
        let strands: usize = strands
            .trim()
            .parse()
            .map_err(|_| Error::Notation(format!("bad strand count in {s:?}")))?;
        let word = word.trim();
        let inner = word
            .strip_prefix('[')
            .and_then(|w| w.strip_suffix(']'))
            .ok_or_else(|| Error::Notation(format!("braid word must be bracketed in {s:?}")))?;
        let letters = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Notation(format!("bad braid letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        return LinkDiagram::from_braid(&letters, strands);
    }
    Err(Error::Notation(format!(
        "notation must start with pd: or braid:, got {s:?}"
    )))
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, source: impl Into<String>) -> Result<Self> {
        let source = source.into();
        let parsed = parse_notation(&source)?;
        Ok(Self {
            name: name.into(),
            source,
            parsed,
        })
    }
}

/// Parses a whole corpus; errors carry the 1-based line number.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let at = |e: Error| Error::Notation(format!("line {}: {e}", lineno + 1));
        let (name, notation) = line
            .split_once('\t')
            .ok_or_else(|| at(Error::Notation("expected name<TAB>notation".into())))?;
        let name = name.trim();
        if !seen.insert(name.to_string()) {
            return Err(at(Error::Notation(format!("duplicate name {name:?}"))));
        }
        out.push(CorpusEntry::new(name, notation.trim()).map_err(at)?);
    }
    Ok(out)
}

/// The corpus shipped with the crate: unknot, Hopf link, `T(2,n)` for
/// `n <= 12`, all prime knots up to eight crossings, 10_140, eleven
/// 12-crossing non-alternating knots, and the prime links up to seven
/// crossings.
pub fn bundled() -> Vec<CorpusEntry> {
    parse_corpus(BUNDLED).expect("bundled corpus parses")
}

pub fn bundled_entry(name: &str) -> Option<CorpusEntry> {
    bundled().into_iter().find(|e| e.name == name)
}
