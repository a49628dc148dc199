//! Link determinant from the Goeritz matrix of a checkerboard coloring.
//!
//! Faces come from the rotation system of the PD code (see
//! [`LinkDiagram::face_darts_with`]). Faces are two-colored so that faces
//! sharing an arc differ; the class containing face 0 is black, the other
//! white. At each crossing the two white corners are opposite each other:
//!
//! ```text
//!          1                         1
//!      B   |   W                 W   |   B
//!    2 ----+---- 0   eta = +1  2 ----+---- 0   eta = -1
//!      W   |   B                 B   |   W
//!          3                         3
//! ```
//!
//! (positions 0/2 are the under-strand, 1/3 the over-strand; `eta = +1`
//! when the white corners sit between positions 0-1 and 2-3). The Goeritz
//! matrix has `G[i][j] = -sum eta` over crossings joining white faces
//! `i != j` and zero row sums. Any consistent choice of the two conventions
//! changes the reduced determinant at most by sign.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Face colors, indexed like `faces`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Black,
    White,
}

/// Faces of a connected diagram and a checkerboard coloring of them.
#[derive(Clone, Debug)]
pub struct FaceStructure {
    /// Each face as its cycle of darts `(crossing, position)`.
    pub faces: Vec<Vec<(usize, usize)>>,
    pub coloring: Vec<Color>,
    /// `face_of[4 * crossing + p]` is the face holding the corner between
    /// positions `p` and `p + 1`.
    pub face_of: Vec<usize>,
}

/// Computes faces and the checkerboard coloring of a connected diagram.
pub fn faces(d: &LinkDiagram) -> Result<FaceStructure> {
    if d.crossing_count() == 0 || d.is_split() {
        return Err(Error::NotConnected);
    }
    let partners = d.partners();
    let faces = d.face_darts_with(&partners);
    let mut face_of = vec![0; partners.len()];
    for (f, darts) in faces.iter().enumerate() {
        for &(i, p) in darts {
            face_of[4 * i + p] = f;
        }
    }
    // a dart and the dart running back along the same arc lie on
    // opposite sides of it
    let mut color: Vec<Option<Color>> = vec![None; faces.len()];
    color[0] = Some(Color::Black);
    let mut stack = vec![0];
    while let Some(f) = stack.pop() {
        let here = color[f].unwrap();
        let other = match here {
            Color::Black => Color::White,
            Color::White => Color::Black,
        };
        for &(i, p) in &faces[f] {
            let (j, q) = partners[4 * i + p];
            let g = face_of[4 * j + q];
            match color[g] {
                None => {
                    color[g] = Some(other);
                    stack.push(g);
                }
                Some(c) => debug_assert!(c == other, "diagram is not checkerboard colorable"),
            }
        }
    }
    Ok(FaceStructure {
        faces,
        coloring: color.into_iter().map(|c| c.unwrap_or(Color::Black)).collect(),
        face_of,
    })
}

impl FaceStructure {
    /// `V - E + F` with `V` crossings and `E = 2V` edges.
    pub fn euler_characteristic(&self, crossings: usize) -> i64 {
        crossings as i64 - 2 * crossings as i64 + self.faces.len() as i64
    }
}

/// The Goeritz matrix over white faces with per-crossing signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoeritzMatrix {
    pub entries: Vec<Vec<i64>>,
    pub crossing_types: Vec<i8>,
}

impl GoeritzMatrix {
    pub fn from_faces(d: &LinkDiagram, fs: &FaceStructure) -> Self {
        let white: Vec<usize> = (0..fs.faces.len())
            .filter(|&f| fs.coloring[f] == Color::White)
            .collect();
        let mut index = vec![usize::MAX; fs.faces.len()];
        for (k, &f) in white.iter().enumerate() {
            index[f] = k;
        }
        let m = white.len();
        let mut entries = vec![vec![0i64; m]; m];
        let mut crossing_types = Vec::with_capacity(d.crossing_count());
        for i in 0..d.crossing_count() {
            let corner = |p: usize| fs.face_of[4 * i + p];
            let (eta, p) = if fs.coloring[corner(0)] == Color::White {
                (1, 0)
            } else {
                (-1, 1)
            };
            crossing_types.push(eta as i8);
            let (a, b) = (index[corner(p)], index[corner(p + 2)]);
            if a != b {
                entries[a][b] -= eta;
                entries[b][a] -= eta;
            }
        }
        for (r, row) in entries.iter_mut().enumerate() {
            let off: i64 = row.iter().enumerate().filter(|&(c, _)| c != r).map(|(_, v)| v).sum();
            row[r] = -off;
        }
        Self {
            entries,
            crossing_types,
        }
    }

    /// `|det|` with the last row and column deleted.
    pub fn reduced_determinant(&self) -> BigInt {
        let m = self.entries.len();
        if m <= 1 {
            return BigInt::from(1);
        }
        let minor: Vec<Vec<BigInt>> = self.entries[..m - 1]
            .iter()
            .map(|row| row[..m - 1].iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        bareiss_determinant(minor).abs()
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// The determinant of the link drawn by `d`.
///
/// The crossing-free unknot gives 1; a visibly split diagram gives 0.
pub fn determinant(d: &LinkDiagram) -> BigInt {
    if d.crossing_count() == 0 {
        return BigInt::from(u8::from(d.free_loops() == 1));
    }
    if d.is_split() {
        return BigInt::zero();
    }
    let fs = faces(d).expect("connected diagram has faces");
    GoeritzMatrix::from_faces(d, &fs).reduced_determinant()
}

/// The determinant recovered from `Q(2) = det^2`.
pub fn det_via_q(q: &LaurentPoly) -> Result<BigInt> {
    let v = q.eval_int(2)?;
    let not_square = || Error::NotASquare(v.to_string());
    if !v.is_integer() || v.is_negative() {
        return Err(not_square());
    }
    let n = v.to_integer();
    let root = n.sqrt();
    if &root * &root != n {
        return Err(not_square());
    }
    Ok(root)
}
