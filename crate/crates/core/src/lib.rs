//! Spectra of standard (Kirchhoff) and anti-standard (anti-Kirchhoff)
//! Laplace operators on metric graphs.
//!
//! Two independent computation routes are provided:
//!
//! * [`equilateral`] — closed-form spectra with exact multiplicities on
//!   equilateral graphs, driven by the eigenvalues of the degree-normalized
//!   transition matrix Z through cos(√λ ℓ) ∈ σ(Z) (standard) and
//!   −cos(√λ ℓ) ∈ σ(Z) (anti-standard);
//! * [`secular`] — numerical root finding for the secular equation
//!   det(I − S e^{ikL}) = 0 on arbitrary, possibly inequilateral, graphs.
//!
//! [`comparison`] checks the shifted eigenvalue domination
//! λ_{k+1}(standard) ≥ λ_{k+N−n}(anti-standard) on non-bipartite graphs and
//! its equivalence with two inequality families on σ(Z), plus the odd-cycle
//! subdivision comparison. [`graph`] holds the validated metric-graph model
//! and [`format`] its JSON file format.
//!
//! ```
//! use qglap::{MetricGraph, Truncation, VertexConditions};
//!
//! // Unit pentagon: the closed form and the secular solver agree.
//! let pentagon = MetricGraph::cycle(5, 1.0);
//! let closed =
//!     qglap::equilateral::standard_spectrum(&pentagon, Truncation::ByCount(9)).unwrap();
//! let numeric =
//!     qglap::secular::spectrum_via_secular(&pentagon, VertexConditions::Standard, 6.0)
//!         .unwrap();
//! for (a, b) in closed.entries.iter().zip(&numeric.entries) {
//!     assert!((a.sqrt_lambda - b.sqrt_lambda).abs() < 1e-8);
//!     assert_eq!(a.multiplicity, b.multiplicity);
//! }
//! ```

pub mod comparison;
pub mod equilateral;
pub mod format;
pub mod graph;
pub mod secular;
pub mod spectrum;

pub use graph::{Edge, GraphError, MetricGraph, StructureReport};
pub use spectrum::{Band, EigenvalueList, SpectralEntry, Truncation, VertexConditions};
