//! Comparison between standard and anti-standard eigenvalues on
//! non-bipartite graphs.
//!
//! On an equilateral non-bipartite graph the shifted domination
//!
//! ```text
//! λ_{k+1}(standard) ≥ λ_{k+N−n}(anti-standard)    for all k ≥ 1
//! ```
//!
//! holds exactly when the transition eigenvalues satisfy the two inequality
//! families μ_j ≤ −μ_{n+2−j} (j = 2..n) and μ_j ≥ −μ_{n−j} (j = 2..n−2).
//! This module checks both sides numerically and cross-validates them, and
//! also verifies the odd-cycle subdivision comparison.

use crate::equilateral::{
    antistandard_spectrum, first_window_flat_count, transition_spectrum, SpectrumError,
    TransitionSpectrum,
};
use crate::graph::MetricGraph;
use crate::spectrum::EigenvalueList;
use thiserror::Error;

/// Default absolute tolerance on eigenvalue and μ comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComparisonError {
    #[error("the μ-condition test applies to non-bipartite graphs only")]
    BipartiteInput,
    #[error(
        "spectra too short: need flat index {needed}, lists cover {standard} and {antistandard}"
    )]
    InsufficientTruncation {
        needed: usize,
        standard: usize,
        antistandard: usize,
    },
    #[error("preconditions failed: {0}")]
    PreconditionsFailed(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Which inequality family a witness violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionFamily {
    /// μ_j ≤ −μ_{n+2−j}, j = 2..n.
    UpperFamily,
    /// μ_j ≥ −μ_{n−j}, j = 2..n−2.
    LowerFamily,
}

/// One violated inequality instance: index j (1-based), the offending μ_j,
/// and the bound it had to clear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionWitness {
    pub family: ConditionFamily,
    pub j: usize,
    pub mu_j: f64,
    pub bound: f64,
}

/// Verdicts on the two μ inequality families. The field names double as the
/// JSON keys of the `compare` output.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    /// Upper family: μ_j ≤ −μ_{n+2−j} for j = 2..n.
    pub cond_4_11: bool,
    /// Lower family: μ_j ≥ −μ_{n−j} for j = 2..n−2; vacuously true when the
    /// index range is empty.
    pub cond_4_2: bool,
    pub witnesses: Vec<ConditionWitness>,
    /// N − n, the index shift in the domination inequality.
    pub shift: usize,
}

impl ConditionReport {
    pub fn both_hold(&self) -> bool {
        self.cond_4_11 && self.cond_4_2
    }
}

/// First index where the shifted domination fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominationViolation {
    pub k: usize,
    pub lambda_st: f64,
    pub lambda_ast: f64,
}

/// Result of checking λ_{k+1}(st) ≥ λ_{k+shift}(a/st) over k = 1..K.
#[derive(Debug, Clone, PartialEq)]
pub struct DominationReport {
    pub checked_count: usize,
    pub holds: bool,
    pub first_violation: Option<DominationViolation>,
    pub tolerance: f64,
}

/// Checks the two μ inequality families on a non-bipartite transition
/// spectrum.
///
/// `shift` is N − n, recorded in the report for the downstream domination
/// check (the transition spectrum itself does not know the edge count).
pub fn check_mu_conditions(
    spectrum: &TransitionSpectrum,
    bipartite: bool,
    shift: usize,
    tolerance: f64,
) -> Result<ConditionReport, ComparisonError> {
    if bipartite {
        return Err(ComparisonError::BipartiteInput);
    }
    let mu = spectrum.expanded(); // descending, 1-based below
    let n = mu.len();
    let at = |j: usize| mu[j - 1];

    let mut witnesses = Vec::new();
    for j in 2..=n {
        let bound = -at(n + 2 - j);
        if at(j) > bound + tolerance {
            witnesses.push(ConditionWitness {
                family: ConditionFamily::UpperFamily,
                j,
                mu_j: at(j),
                bound,
            });
        }
    }
    // Empty j range (n ≤ 3) makes the family vacuously true.
    if n >= 4 {
        for j in 2..=n - 2 {
            let bound = -at(n - j);
            if at(j) < bound - tolerance {
                witnesses.push(ConditionWitness {
                    family: ConditionFamily::LowerFamily,
                    j,
                    mu_j: at(j),
                    bound,
                });
            }
        }
    }

    let cond_4_11 = !witnesses
        .iter()
        .any(|w| w.family == ConditionFamily::UpperFamily);
    let cond_4_2 = !witnesses
        .iter()
        .any(|w| w.family == ConditionFamily::LowerFamily);
    Ok(ConditionReport {
        cond_4_11,
        cond_4_2,
        witnesses,
        shift,
    })
}

/// Convenience: μ conditions for a graph, with the shift taken from its
/// edge/vertex counts.
pub fn check_mu_conditions_for_graph(
    g: &MetricGraph,
    tolerance: f64,
) -> Result<ConditionReport, ComparisonError> {
    if g.is_bipartite() {
        return Err(ComparisonError::BipartiteInput);
    }
    // Non-bipartite graphs contain a cycle, so N − n = cycle_rank − 1 ≥ 0.
    check_mu_conditions(
        &transition_spectrum(g),
        false,
        g.cycle_rank() - 1,
        tolerance,
    )
}

/// Checks λ_{k+1}(standard) ≥ λ_{k+shift}(anti-standard) − tolerance for
/// k = 1..K on multiplicity-expanded, 1-indexed eigenvalue sequences.
pub fn verify_domination(
    standard: &EigenvalueList,
    antistandard: &EigenvalueList,
    shift: usize,
    k_count: usize,
    tolerance: f64,
) -> Result<DominationReport, ComparisonError> {
    let st = standard.flat();
    let ast = antistandard.flat();
    let needed = k_count + shift.max(1);
    if st.len() < k_count + 1 || ast.len() < k_count + shift {
        return Err(ComparisonError::InsufficientTruncation {
            needed,
            standard: st.len(),
            antistandard: ast.len(),
        });
    }

    let mut first_violation = None;
    for k in 1..=k_count {
        let lambda_st = st[k]; // flat index k+1, 1-based
        let lambda_ast = ast[k + shift - 1];
        if lambda_st < lambda_ast - tolerance {
            first_violation = Some(DominationViolation {
                k,
                lambda_st,
                lambda_ast,
            });
            break;
        }
    }
    Ok(DominationReport {
        checked_count: k_count,
        holds: first_violation.is_none(),
        first_violation,
        tolerance,
    })
}

/// Cross-validates the two directions of the equivalence on an equilateral
/// non-bipartite graph: returns true iff the μ-condition verdict matches the
/// domination verdict with shift N − n over the first `k_count` indices.
pub fn theorem_consistency(g: &MetricGraph, k_count: usize) -> Result<bool, ComparisonError> {
    let spectrum = transition_spectrum(g);
    let bipartite = g.is_bipartite();
    if bipartite {
        return Err(ComparisonError::BipartiteInput);
    }
    let shift = g.cycle_rank() - 1; // N − n, non-bipartite so ≥ 0
    let conditions = check_mu_conditions(&spectrum, bipartite, shift, DEFAULT_TOLERANCE)?;

    let needed = k_count + shift + 2;
    let st =
        crate::equilateral::standard_spectrum(g, crate::spectrum::Truncation::ByCount(needed))?;
    let ast = antistandard_spectrum(g, crate::spectrum::Truncation::ByCount(needed))?;
    let domination = verify_domination(&st, &ast, shift, k_count, DEFAULT_TOLERANCE)?;

    Ok(conditions.both_hold() == domination.holds)
}

/// The number of indices needed to cover one full period window of the
/// domination check for an equilateral graph.
pub fn window_check_count(g: &MetricGraph) -> Result<usize, ComparisonError> {
    Ok(first_window_flat_count(g)?)
}

/// Subdivision comparison for an equilateral odd cycle whose transition
/// spectrum satisfies both μ conditions: midpoint subdivision must push every
/// anti-standard eigenvalue up by at most one index slot, i.e.
/// λ_{k+1}(a/st, subdivided) ≥ λ_k(a/st, original) for k = 1..K.
pub fn subdivision_comparison(
    g: &MetricGraph,
    k_count: usize,
    tolerance: f64,
) -> Result<DominationReport, ComparisonError> {
    if g.equilateral_length().is_none() {
        return Err(ComparisonError::PreconditionsFailed(
            "graph is not equilateral".into(),
        ));
    }
    if !g.is_odd_cycle() {
        return Err(ComparisonError::PreconditionsFailed(
            "graph is not an odd cycle".into(),
        ));
    }
    let conditions = check_mu_conditions_for_graph(g, tolerance)?;
    if !conditions.both_hold() {
        return Err(ComparisonError::PreconditionsFailed(
            "transition eigenvalues violate the μ inequality families".into(),
        ));
    }

    let subdivided = g
        .subdivide(&vec![2; g.edge_count()])
        .expect("midpoint subdivision of a valid graph is valid");
    let needed = k_count + 2;
    let fine = antistandard_spectrum(&subdivided, crate::spectrum::Truncation::ByCount(needed))?;
    let coarse = antistandard_spectrum(g, crate::spectrum::Truncation::ByCount(needed))?;

    let fine_flat = fine.flat();
    let coarse_flat = coarse.flat();
    if fine_flat.len() < k_count + 1 || coarse_flat.len() < k_count {
        return Err(ComparisonError::InsufficientTruncation {
            needed: k_count + 1,
            standard: fine_flat.len(),
            antistandard: coarse_flat.len(),
        });
    }
    let mut first_violation = None;
    for k in 1..=k_count {
        let lambda_fine = fine_flat[k];
        let lambda_coarse = coarse_flat[k - 1];
        if lambda_fine < lambda_coarse - tolerance {
            first_violation = Some(DominationViolation {
                k,
                lambda_st: lambda_fine,
                lambda_ast: lambda_coarse,
            });
            break;
        }
    }
    Ok(DominationReport {
        checked_count: k_count,
        holds: first_violation.is_none(),
        first_violation,
        tolerance,
    })
}
