//! Closed-form Laplace spectra on equilateral graphs via the transition
//! matrix.
//!
//! For an equilateral graph with edge length ℓ the positive spectrum of both
//! condition families is generated by four bands in the variable x = √λ ℓ:
//!
//! * standard:      x ∈ {2kπ ± arccos(μ)} for interior μ ∈ σ(Z), plus the
//!   even multiples 2kπ (k ≥ 1) and odd multiples (2k+1)π of π;
//! * anti-standard: x ∈ {(2k+1)π ± arccos(μ)}, plus the same π-lattice with
//!   the even/odd multiplicity rules swapped.
//!
//! Multiplicities at the π-lattice points are the constants N − n + 2 and
//! N − n (N − n + 2 and N − n + 1 appear via the cycle rank N − n + 1), with
//! the bipartite/non-bipartite split taken from the combinatorial two-coloring
//! test, never from floating point.

use crate::graph::MetricGraph;
use crate::spectrum::{
    ArcBranch, Band, EigenvalueList, SpectralEntry, Truncation, VertexConditions,
};
use std::f64::consts::PI;
use thiserror::Error;

/// Tolerance for clustering transition-matrix eigenvalues into
/// multiplicity groups, and for snapping them to ±1.
pub const MU_CLUSTER_TOL: f64 = 1e-9;

/// Absolute slack added to a `ByKmax` bound so that band points landing
/// exactly on the bound are kept regardless of rounding.
const KMAX_INCLUSION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("graph is not equilateral; the transition-matrix method needs a common edge length")]
    NotEquilateral,
}

/// One eigenvalue of the transition matrix with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuEntry {
    pub mu: f64,
    pub multiplicity: usize,
}

/// The sorted spectrum of the transition matrix Z, clustered to
/// [`MU_CLUSTER_TOL`].
///
/// Entries are descending; the first is always μ = 1 with multiplicity 1 on a
/// connected graph, and −1 appears exactly when the graph is bipartite.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSpectrum {
    entries: Vec<MuEntry>,
    n: usize,
}

impl TransitionSpectrum {
    pub fn entries(&self) -> &[MuEntry] {
        &self.entries
    }

    /// Matrix dimension n (total eigenvalue count with multiplicity).
    pub fn n(&self) -> usize {
        self.n
    }

    /// μ values expanded by multiplicity, descending: μ_1 ≥ μ_2 ≥ ⋯ ≥ μ_n.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n);
        for e in &self.entries {
            out.extend(std::iter::repeat_n(e.mu, e.multiplicity));
        }
        out
    }

    /// Smallest eigenvalue μ_n.
    pub fn min_mu(&self) -> f64 {
        self.entries.last().expect("spectrum is nonempty").mu
    }

    /// Whether −1 is an eigenvalue (after snapping). For connected graphs
    /// this is the spectral form of bipartiteness.
    pub fn has_minus_one(&self) -> bool {
        self.min_mu() == -1.0
    }

    /// Clusters strictly inside (−1, 1): the arccos band generators.
    pub fn interior(&self) -> Vec<MuEntry> {
        self.entries
            .iter()
            .copied()
            .filter(|e| e.mu > -1.0 && e.mu < 1.0)
            .collect()
    }
}

/// Eigenvalues of Z, computed through the symmetric similarity
/// D^{−1/2} A D^{−1/2} (same spectrum, guaranteed real), then sorted
/// descending and clustered.
pub fn transition_spectrum(g: &MetricGraph) -> TransitionSpectrum {
    let n = g.vertex_count();
    let deg = g.degrees();
    let mut sym = g.adjacency_matrix();
    for e in g.edges() {
        let scale = 1.0 / ((deg[e.u] as f64).sqrt() * (deg[e.v] as f64).sqrt());
        sym[(e.u, e.v)] = scale;
        sym[(e.v, e.u)] = scale;
    }
    let mut mus: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    mus.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));

    let mut entries: Vec<MuEntry> = Vec::new();
    for mu in mus {
        debug_assert!(
            (-1.0 - 1e-12..=1.0 + 1e-12).contains(&mu),
            "transition eigenvalue {mu} escapes [-1, 1]"
        );
        let mu = mu.clamp(-1.0, 1.0);
        match entries.last_mut() {
            Some(last) if (last.mu - mu).abs() < MU_CLUSTER_TOL => last.multiplicity += 1,
            _ => entries.push(MuEntry {
                mu,
                multiplicity: 1,
            }),
        }
    }
    for e in &mut entries {
        if (e.mu - 1.0).abs() < MU_CLUSTER_TOL {
            e.mu = 1.0;
        } else if (e.mu + 1.0).abs() < MU_CLUSTER_TOL {
            e.mu = -1.0;
        }
    }
    debug_assert_eq!(entries[0].mu, 1.0);
    debug_assert_eq!(entries[0].multiplicity, 1);
    TransitionSpectrum { entries, n }
}

/// One arccos family: interior μ, its angle α = arccos(μ) ∈ (0, π), and the
/// multiplicity carried by every generated point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcFamily {
    pub mu: f64,
    pub alpha: f64,
    pub multiplicity: usize,
}

/// The four band families for one condition type, in units of x = √λ ℓ.
///
/// `cos_plus_one_multiplicity` rules the even lattice x = 2kπ (k ≥ 1) and
/// `cos_minus_one_multiplicity` the odd lattice x = (2k+1)π (k ≥ 0). A zero
/// multiplicity means the family contributes nothing.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionBands {
    pub conditions: VertexConditions,
    pub zero_multiplicity: usize,
    pub cos_plus_one_multiplicity: usize,
    pub cos_minus_one_multiplicity: usize,
    pub arcs: Vec<ArcFamily>,
}

/// Both condition columns of the band table, plus the data they were
/// derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct BandTable {
    pub edge_length: f64,
    pub is_bipartite: bool,
    /// N − n + 1.
    pub cycle_rank: usize,
    pub transition: TransitionSpectrum,
    pub standard: ConditionBands,
    pub antistandard: ConditionBands,
}

/// Builds the symbolic band table for an equilateral graph.
pub fn band_table(g: &MetricGraph) -> Result<BandTable, SpectrumError> {
    let edge_length = g
        .equilateral_length()
        .ok_or(SpectrumError::NotEquilateral)?;
    let bipartite = g.is_bipartite();
    let c = g.cycle_rank();
    let transition = transition_spectrum(g);
    let arcs: Vec<ArcFamily> = transition
        .interior()
        .iter()
        .map(|e| ArcFamily {
            mu: e.mu,
            alpha: e.mu.acos(),
            multiplicity: e.multiplicity,
        })
        .collect();

    // Multiplicity constants, written via the cycle rank c = N − n + 1:
    // N − n + 2 = c + 1 and N − n = c − 1 (the latter only used when the
    // graph is non-bipartite, which forces c ≥ 1).
    let standard = ConditionBands {
        conditions: VertexConditions::Standard,
        zero_multiplicity: 1,
        cos_plus_one_multiplicity: c + 1,
        cos_minus_one_multiplicity: if bipartite { c + 1 } else { c - 1 },
        arcs: arcs.clone(),
    };
    let antistandard = ConditionBands {
        conditions: VertexConditions::AntiStandard,
        zero_multiplicity: if bipartite { c } else { c - 1 },
        cos_plus_one_multiplicity: if bipartite { c + 1 } else { c - 1 },
        cos_minus_one_multiplicity: c + 1,
        arcs,
    };
    Ok(BandTable {
        edge_length,
        is_bipartite: bipartite,
        cycle_rank: c,
        transition,
        standard,
        antistandard,
    })
}

/// Expands one condition column of the band table into an explicit sorted
/// eigenvalue list, window by window in x = √λ ℓ, until the truncation is
/// satisfied.
fn expand_bands(
    bands: &ConditionBands,
    edge_length: f64,
    truncation: Truncation,
) -> EigenvalueList {
    let mut entries: Vec<SpectralEntry> = Vec::new();
    if bands.zero_multiplicity > 0 {
        entries.push(SpectralEntry {
            lambda: 0.0,
            sqrt_lambda: 0.0,
            multiplicity: bands.zero_multiplicity,
            band: Band::Zero,
        });
    }

    let kmax_bound = match truncation {
        Truncation::ByKmax(kmax) => Some(kmax + KMAX_INCLUSION_SLACK),
        Truncation::ByCount(_) => None,
    };
    let count_target = match truncation {
        Truncation::ByCount(c) => Some(c),
        Truncation::ByKmax(_) => None,
    };

    let mut flat: usize = entries.iter().map(|e| e.multiplicity).sum();
    let mut window = 0usize;
    loop {
        if let Some(target) = count_target {
            if flat >= target {
                break;
            }
        }
        let base = 2.0 * window as f64 * PI;
        if let Some(bound) = kmax_bound {
            if base / edge_length > bound {
                break;
            }
        }

        // All band points with x in (2wπ, 2(w+1)π].
        let mut points: Vec<(f64, usize, Band)> = Vec::new();
        for arc in &bands.arcs {
            match bands.conditions {
                VertexConditions::Standard => {
                    points.push((
                        base + arc.alpha,
                        arc.multiplicity,
                        Band::Arc {
                            mu: arc.mu,
                            branch: ArcBranch::Plus,
                            k: window,
                        },
                    ));
                    points.push((
                        base + 2.0 * PI - arc.alpha,
                        arc.multiplicity,
                        Band::Arc {
                            mu: arc.mu,
                            branch: ArcBranch::Minus,
                            k: window,
                        },
                    ));
                }
                VertexConditions::AntiStandard => {
                    points.push((
                        base + PI - arc.alpha,
                        arc.multiplicity,
                        Band::Arc {
                            mu: arc.mu,
                            branch: ArcBranch::Minus,
                            k: window,
                        },
                    ));
                    points.push((
                        base + PI + arc.alpha,
                        arc.multiplicity,
                        Band::Arc {
                            mu: arc.mu,
                            branch: ArcBranch::Plus,
                            k: window,
                        },
                    ));
                }
            }
        }
        if bands.cos_minus_one_multiplicity > 0 {
            points.push((
                base + PI,
                bands.cos_minus_one_multiplicity,
                Band::CosMinusOne,
            ));
        }
        if bands.cos_plus_one_multiplicity > 0 {
            points.push((
                base + 2.0 * PI,
                bands.cos_plus_one_multiplicity,
                Band::CosPlusOne,
            ));
        }
        points.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .unwrap()
                .then(a.2.rank().cmp(&b.2.rank()))
        });

        for (x, multiplicity, band) in points {
            let sqrt_lambda = x / edge_length;
            if let Some(bound) = kmax_bound {
                if sqrt_lambda > bound {
                    continue;
                }
            }
            // Equal λ from distinct bands cannot occur: arc points have
            // α ∈ (0, π) exclusive and the π-lattice is disjoint from them.
            if let Some(last) = entries.last_mut() {
                if last.sqrt_lambda == sqrt_lambda {
                    debug_assert!(false, "band collision at sqrt_lambda {sqrt_lambda}");
                    last.multiplicity += multiplicity;
                    flat += multiplicity;
                    continue;
                }
            }
            entries.push(SpectralEntry {
                lambda: sqrt_lambda * sqrt_lambda,
                sqrt_lambda,
                multiplicity,
                band,
            });
            flat += multiplicity;
        }
        window += 1;
    }

    if let Some(target) = count_target {
        let mut covered = 0usize;
        let mut keep = 0usize;
        for e in &entries {
            keep += 1;
            covered += e.multiplicity;
            if covered >= target {
                break;
            }
        }
        entries.truncate(keep);
    }

    EigenvalueList {
        entries,
        conditions: bands.conditions,
        truncation,
    }
}

/// Spectrum of the standard (Kirchhoff) Laplacian on an equilateral graph.
pub fn standard_spectrum(
    g: &MetricGraph,
    truncation: Truncation,
) -> Result<EigenvalueList, SpectrumError> {
    let table = band_table(g)?;
    Ok(expand_bands(&table.standard, table.edge_length, truncation))
}

/// Spectrum of the anti-standard (anti-Kirchhoff) Laplacian on an
/// equilateral graph.
pub fn antistandard_spectrum(
    g: &MetricGraph,
    truncation: Truncation,
) -> Result<EigenvalueList, SpectrumError> {
    let table = band_table(g)?;
    Ok(expand_bands(
        &table.antistandard,
        table.edge_length,
        truncation,
    ))
}

/// Dispatch on the condition family.
pub fn spectrum(
    g: &MetricGraph,
    conditions: VertexConditions,
    truncation: Truncation,
) -> Result<EigenvalueList, SpectrumError> {
    match conditions {
        VertexConditions::Standard => standard_spectrum(g, truncation),
        VertexConditions::AntiStandard => antistandard_spectrum(g, truncation),
    }
}

/// Number of eigenvalues, with multiplicity, in one period window
/// (0, (2π/ℓ)²]. The count is the same for both condition families.
pub fn first_window_flat_count(g: &MetricGraph) -> Result<usize, SpectrumError> {
    let table = band_table(g)?;
    let b = &table.standard;
    let arcs: usize = b.arcs.iter().map(|a| 2 * a.multiplicity).sum();
    Ok(arcs + b.cos_plus_one_multiplicity + b.cos_minus_one_multiplicity)
}
