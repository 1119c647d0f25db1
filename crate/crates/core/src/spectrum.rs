//! Shared spectral types: vertex-condition families, eigenvalue lists with
//! band provenance, and truncation requests.

/// The two self-adjoint vertex-condition families treated here.
///
/// Standard (Kirchhoff): the function is continuous at each vertex and the
/// outgoing derivatives sum to zero. Anti-standard (anti-Kirchhoff): the
/// outgoing derivatives agree at each vertex and the function values sum to
/// zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexConditions {
    Standard,
    AntiStandard,
}

impl std::fmt::Display for VertexConditions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexConditions::Standard => write!(f, "standard"),
            VertexConditions::AntiStandard => write!(f, "anti-standard"),
        }
    }
}

/// Which side of the multiple of π an arc point sits on: base + α or
/// base − α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcBranch {
    Plus,
    Minus,
}

/// Provenance of an eigenvalue entry.
///
/// The closed-form bands follow the value of cos(√λ ℓ): `Zero` is λ = 0,
/// `CosPlusOne`/`CosMinusOne` are the even/odd multiples of π in √λ ℓ, and
/// `Arc` is a point 2kπ ± α or (2k+1)π ± α with α = arccos(μ) for an interior
/// transition eigenvalue μ. `Root` marks a numerically located secular root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Band {
    Zero,
    CosPlusOne,
    CosMinusOne,
    Arc {
        mu: f64,
        branch: ArcBranch,
        k: usize,
    },
    Root,
}

impl Band {
    /// Fixed tie-break order for entries with equal λ: zero, then arc, then
    /// the cos = ±1 bands, then secular roots. Presentation only.
    pub fn rank(&self) -> u8 {
        match self {
            Band::Zero => 0,
            Band::Arc { .. } => 1,
            Band::CosPlusOne | Band::CosMinusOne => 2,
            Band::Root => 3,
        }
    }
}

impl std::fmt::Display for Band {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Band::Zero => write!(f, "ZERO"),
            Band::CosPlusOne => write!(f, "COS_PLUS_ONE"),
            Band::CosMinusOne => write!(f, "COS_MINUS_ONE"),
            Band::Arc { mu, branch, k } => {
                let sign = match branch {
                    ArcBranch::Plus => '+',
                    ArcBranch::Minus => '-',
                };
                write!(f, "ARC(mu={mu};branch={sign};k={k})")
            }
            Band::Root => write!(f, "ROOT"),
        }
    }
}

/// How much of the (infinite) spectrum to materialize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Keep entries until at least `count` eigenvalues (with multiplicity)
    /// are covered. Entries are atomic: a multiplicity block is never split.
    ByCount(usize),
    /// Keep every entry with √λ ≤ kmax (kmax is in units of √λ).
    ByKmax(f64),
}

/// One merged eigenvalue: λ, its square root, the multiplicity, and the band
/// it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEntry {
    pub lambda: f64,
    pub sqrt_lambda: f64,
    pub multiplicity: usize,
    pub band: Band,
}

/// A truncated, ascending Laplace spectrum under one condition family.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueList {
    pub entries: Vec<SpectralEntry>,
    pub conditions: VertexConditions,
    pub truncation: Truncation,
}

impl EigenvalueList {
    /// Total eigenvalue count with multiplicity.
    pub fn flat_count(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// λ values expanded by multiplicity, ascending. Index k (1-based) into
    /// this sequence is the meaning of λ_k in the comparison inequalities.
    pub fn flat(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.flat_count());
        for e in &self.entries {
            out.extend(std::iter::repeat_n(e.lambda, e.multiplicity));
        }
        out
    }

    /// √λ values expanded by multiplicity, ascending.
    pub fn flat_sqrt(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.flat_count());
        for e in &self.entries {
            out.extend(std::iter::repeat_n(e.sqrt_lambda, e.multiplicity));
        }
        out
    }
}
