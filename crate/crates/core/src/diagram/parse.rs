use super::LinkDiagram;
use crate::error::{Error, Result};

impl LinkDiagram {
    /// Parses PD text such as `X(1,4,2,5) X(3,8,4,1) ...`.
    ///
    /// Tuples may be written `X(...)`, `X[...]`, `(...)` or `[...]`, separated by
    /// whitespace or commas, optionally inside an outer `PD[...]` or `[...]`
    /// (so KnotInfo's `[[1,5,2,4],[3,1,4,6],...]` parses as is). A `loops=k`
    /// token adds `k` crossing-free circles. Labels are usually 1-based; any
    /// set of integers each used exactly twice is accepted.
    pub fn parse_pd(text: &str) -> Result<Self> {
        let (tuples, loops) = scan_pd(text)?;
        Self::new(&tuples, loops)
    }

    /// Like [`parse_pd`](Self::parse_pd) with extra free loops on top of any
    /// `loops=` token.
    pub fn parse_pd_with_loops(text: &str, free_loops: usize) -> Result<Self> {
        let (tuples, loops) = scan_pd(text)?;
        Self::new(&tuples, loops + free_loops)
    }

    /// Closure of a braid word on `strand_count` strands.
    ///
    /// Letter `i` (1-based) crosses strands `|i|` and `|i|+1`; for a positive
    /// letter the strand coming from the left passes over. Strands untouched
    /// by the word close up into free loops, so `[]` on one strand is the
    /// unknot.
    pub fn from_braid(word: &[i64], strand_count: usize) -> Result<Self> {
        if strand_count == 0 || (strand_count == 1 && !word.is_empty()) {
            return Err(Error::BraidStrands(strand_count));
        }
        let mut cur: Vec<usize> = (0..strand_count).collect();
        let mut next = strand_count;
        let mut tuples = Vec::with_capacity(word.len());
        for &letter in word {
            let i = letter.unsigned_abs() as usize;
            if letter == 0 || i >= strand_count {
                return Err(Error::BraidLetter {
                    letter,
                    strands: strand_count,
                });
            }
            // strands read bottom to top; ends counterclockwise are
            // bottom-left, bottom-right, top-right, top-left
            let (l0, r0) = (cur[i - 1], cur[i]);
            let (l1, r1) = (next, next + 1);
            next += 2;
            tuples.push(if letter > 0 { [r0, r1, l1, l0] } else { [l0, r0, r1, l1] });
            cur[i - 1] = l1;
            cur[i] = r1;
        }
        let mut loops = 0;
        let mut close = vec![usize::MAX; next];
        for (k, &top) in cur.iter().enumerate() {
            if top == k {
                loops += 1;
            } else {
                close[top] = k;
            }
        }
        let raw: Vec<[i64; 4]> = tuples
            .iter()
            .map(|t| {
                t.map(|a| {
                    if close[a] == usize::MAX {
                        a as i64
                    } else {
                        close[a] as i64
                    }
                })
            })
            .collect();
        Self::new(&raw, loops)
    }
}

fn scan_pd(text: &str) -> Result<(Vec<[i64; 4]>, usize)> {
    let s = text.trim();
    let b = s.as_bytes();
    let mut tuples = Vec::new();
    let mut loops = 0usize;
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() || c == b',' || c == b';' || c == b')' || c == b']' {
            i += 1;
        } else if s[i..].starts_with("loops=") {
            let start = i + "loops=".len();
            let mut end = start;
            while end < b.len() && b[end].is_ascii_digit() {
                end += 1;
            }
            loops += s[start..end]
                .parse::<usize>()
                .map_err(|_| Error::Notation(format!("bad loops count in {s:?}")))?;
            i = end;
        } else if s[i..].starts_with("PD") {
            i += 2;
        } else if (c == b'X' || c == b'x') && matches!(b.get(i + 1), Some(b'(' | b'[')) {
            i += 1;
        } else if c == b'(' || c == b'[' {
            // innermost bracket pair is a tuple, anything else a wrapper
            let close = b[i + 1..]
                .iter()
                .position(|&x| matches!(x, b'(' | b'[' | b')' | b']'))
                .map(|k| k + i + 1);
            match close {
                Some(j) if matches!(b[j], b')' | b']') => {
                    tuples.push(parse_tuple(&s[i + 1..j])?);
                    i = j + 1;
                }
                Some(_) => i += 1,
                None => return Err(Error::MalformedTuple(s[i..].to_string())),
            }
        } else {
            return Err(Error::Notation(format!(
                "unexpected {:?} at byte {i} of PD text",
                s[i..].chars().next().unwrap_or(' ')
            )));
        }
    }
    Ok((tuples, loops))
}

fn parse_tuple(body: &str) -> Result<[i64; 4]> {
    let bad = || Error::MalformedTuple(format!("({body})"));
    let vals = body
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    vals.try_into().map_err(|_| bad())
}
