//! Link invariants from planar diagrams: the unoriented Q-polynomial, the
//! determinant, and the quasi-alternating obstructions built on them.
//!
//! Everything consumes a [`LinkDiagram`], an unoriented PD code. The Q
//! polynomial comes from a memoized skein recursion, the determinant from a
//! Goeritz matrix, and [`classify`] combines the two into a [`Verdict`].
//! [`certify`] searches for an explicit resolution tree proving that a link
//! is quasi-alternating.

pub mod certifier;
pub mod corpus;
pub mod determinant;
pub mod diagram;
mod error;
pub mod laurent;
pub mod obstruction;
pub mod qpoly;

pub use certifier::{certify, verify_certificate, CertNode, Certificate, Certifier};
pub use corpus::{parse_corpus, parse_notation, CorpusEntry};
pub use determinant::{det_via_q, determinant, faces, FaceStructure, GoeritzMatrix};
pub use diagram::{CanonicalKey, Crossing, LinkDiagram, Resolution};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use obstruction::{classify, classify_with, verdict_for, InconclusiveNote, NotQaReason, Report, Verdict};
pub use qpoly::{q_polynomial, q_torus2, SharedCache, SkeinEngine, SkeinStats, DEFAULT_NODE_BUDGET};
