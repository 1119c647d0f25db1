//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see them).

use qglap::comparison::{
    check_mu_conditions_for_graph, theorem_consistency, verify_domination, window_check_count,
    DEFAULT_TOLERANCE,
};
use qglap::equilateral::{
    antistandard_spectrum, standard_spectrum, transition_spectrum, TransitionSpectrum,
};
use qglap::graph::{Edge, MetricGraph};
use qglap::secular::{build_scattering, find_roots, spectrum_via_secular};
use qglap::spectrum::{Truncation, VertexConditions};
use std::f64::consts::PI;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($arg)+));
        }
    };
}

fn criterion(id: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {id}: PASS"),
        Err(msg) => {
            println!("criterion {id}: FAIL — {msg}");
            panic!("criterion {id} failed: {msg}");
        }
    }
}

fn assert_mu_entries(
    s: &TransitionSpectrum,
    expected: &[(f64, usize)],
    tol: f64,
) -> Result<(), String> {
    ensure!(
        s.entries().len() == expected.len(),
        "expected {} eigenvalue clusters, got {}",
        expected.len(),
        s.entries().len()
    );
    for (entry, &(mu, mult)) in s.entries().iter().zip(expected) {
        ensure!(
            (entry.mu - mu).abs() <= tol,
            "mu {} differs from expected {}",
            entry.mu,
            mu
        );
        ensure!(
            entry.multiplicity == mult,
            "multiplicity {} at mu {} (expected {})",
            entry.multiplicity,
            mu,
            mult
        );
    }
    Ok(())
}

#[test]
fn criterion_01_pentagon_transition_spectrum_and_domination() {
    criterion("01 pentagon spectrum + domination", || {
        let g = MetricGraph::cycle(5, 1.0);
        let s = transition_spectrum(&g);
        let golden = 5f64.sqrt();
        assert_mu_entries(
            &s,
            &[
                (1.0, 1),
                ((golden - 1.0) / 4.0, 2),
                (-(golden + 1.0) / 4.0, 2),
            ],
            1e-10,
        )?;

        let report =
            check_mu_conditions_for_graph(&g, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
        ensure!(report.cond_4_11, "upper μ family must hold on the pentagon");
        ensure!(report.cond_4_2, "lower μ family must hold on the pentagon");

        let st = standard_spectrum(&g, Truncation::ByCount(205)).map_err(|e| e.to_string())?;
        let ast = antistandard_spectrum(&g, Truncation::ByCount(205)).map_err(|e| e.to_string())?;
        let dom =
            verify_domination(&st, &ast, 0, 200, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
        ensure!(
            dom.holds,
            "domination violated at {:?}",
            dom.first_violation
        );
        Ok(())
    });
}

#[test]
fn criterion_02_triangle_standard_secular_roots() {
    criterion("02 triangle standard secular roots", || {
        let g = MetricGraph::triangle_3_4_5();
        let sys = build_scattering(&g, VertexConditions::Standard);
        let roots = find_roots(&sys, 0.01, 3.0).map_err(|e| e.to_string())?;
        let expected = [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0];
        ensure!(
            roots.roots.len() == expected.len(),
            "expected {} roots, found {}",
            expected.len(),
            roots.roots.len()
        );
        for (root, want) in roots.roots.iter().zip(expected) {
            ensure!(
                (root.k - want).abs() < 1e-8,
                "root {} differs from {} by {:.2e}",
                root.k,
                want,
                (root.k - want).abs()
            );
            ensure!(
                root.multiplicity == 2,
                "root {} has multiplicity {}",
                root.k,
                root.multiplicity
            );
        }
        let at_sixth = sys.secular_value(PI / 6.0).norm();
        ensure!(at_sixth < 1e-10, "|det| at π/6 is {at_sixth:.2e}");
        let at_twelfth = sys.secular_value(PI / 12.0);
        let err = (at_twelfth - nalgebra::Complex::new(4.0, 0.0)).norm();
        ensure!(err < 1e-9, "det at π/12 off by {err:.2e}");
        Ok(())
    });
}

#[test]
fn criterion_03_triangle_antistandard_secular_roots() {
    criterion("03 triangle anti-standard secular roots", || {
        let g = MetricGraph::triangle_3_4_5();
        let sys = build_scattering(&g, VertexConditions::AntiStandard);
        let roots = find_roots(&sys, 0.01, 2.5).map_err(|e| e.to_string())?;
        let expected = [
            PI / 12.0,
            PI / 4.0,
            5.0 * PI / 12.0,
            7.0 * PI / 12.0,
            3.0 * PI / 4.0,
        ];
        ensure!(
            roots.roots.len() == expected.len(),
            "expected {} roots, found {}",
            expected.len(),
            roots.roots.len()
        );
        for (root, want) in roots.roots.iter().zip(expected) {
            ensure!((root.k - want).abs() < 1e-8, "root {} vs {}", root.k, want);
            ensure!(root.multiplicity == 2, "multiplicity at {}", root.k);
        }
        let spectrum = spectrum_via_secular(&g, VertexConditions::AntiStandard, 2.5)
            .map_err(|e| e.to_string())?;
        ensure!(
            spectrum.entries[0].lambda > 0.0,
            "anti-standard triangle spectrum must have no zero mode (N − n = 0)"
        );
        Ok(())
    });
}

#[test]
fn criterion_04_subdivided_triangle_spectra() {
    criterion("04 subdivided triangle spectra", || {
        let g = MetricGraph::triangle_3_4_5()
            .subdivide(&[3, 4, 5])
            .map_err(|e| e.to_string())?;
        let s = transition_spectrum(&g);
        let r3 = 3f64.sqrt() / 2.0;
        assert_mu_entries(
            &s,
            &[
                (1.0, 1),
                (r3, 2),
                (0.5, 2),
                (0.0, 2),
                (-0.5, 2),
                (-r3, 2),
                (-1.0, 1),
            ],
            1e-10,
        )?;

        let st = standard_spectrum(&g, Truncation::ByCount(100)).map_err(|e| e.to_string())?;
        let ast = antistandard_spectrum(&g, Truncation::ByCount(100)).map_err(|e| e.to_string())?;
        let st_flat = st.flat();
        let ast_flat = ast.flat();
        ensure!(st_flat.len() >= 100 && ast_flat.len() >= 100, "too short");
        for i in 0..100 {
            ensure!(
                (st_flat[i] - ast_flat[i]).abs() < 1e-10,
                "flat index {i}: standard {} vs anti-standard {}",
                st_flat[i],
                ast_flat[i]
            );
        }
        // Independent oracle: the 12-gon with unit edges and invisible
        // degree-2 Kirchhoff vertices is a circle of length 12, so the
        // standard spectrum is {0} ∪ {(πm/6)² ×2}.
        let mut expected = vec![0.0];
        let mut m = 1;
        while expected.len() < 100 {
            let lambda = (PI * m as f64 / 6.0).powi(2);
            expected.push(lambda);
            expected.push(lambda);
            m += 1;
        }
        for i in 0..100 {
            ensure!(
                (st_flat[i] - expected[i]).abs() < 1e-9,
                "flat index {i}: {} vs circle oracle {}",
                st_flat[i],
                expected[i]
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_05_triangle_secular_domination() {
    criterion("05 triangle secular domination", || {
        let g = MetricGraph::triangle_3_4_5();
        let st = spectrum_via_secular(&g, VertexConditions::Standard, 28.0)
            .map_err(|e| e.to_string())?;
        let ast = spectrum_via_secular(&g, VertexConditions::AntiStandard, 28.0)
            .map_err(|e| e.to_string())?;
        let dom =
            verify_domination(&st, &ast, 0, 100, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
        ensure!(dom.holds, "violated at {:?}", dom.first_violation);
        Ok(())
    });
}

#[test]
fn criterion_06_cross_oracle_secular_vs_closed_form() {
    criterion("06 cross-oracle secular vs closed form", || {
        let graphs: Vec<(&str, MetricGraph)> = vec![
            ("C3", MetricGraph::cycle(3, 1.0)),
            ("C5", MetricGraph::cycle(5, 1.0)),
            ("K4", MetricGraph::complete(4, 1.0)),
            (
                "subdivided triangle",
                MetricGraph::triangle_3_4_5().subdivide(&[3, 4, 5]).unwrap(),
            ),
        ];
        let kmax = 4.0 * PI;
        for (name, g) in &graphs {
            for conditions in [VertexConditions::Standard, VertexConditions::AntiStandard] {
                let closed = qglap::equilateral::spectrum(g, conditions, Truncation::ByKmax(kmax))
                    .map_err(|e| e.to_string())?;
                let numeric =
                    spectrum_via_secular(g, conditions, kmax).map_err(|e| e.to_string())?;
                ensure!(
                    closed.entries.len() == numeric.entries.len(),
                    "{name} {conditions}: {} closed entries vs {} secular",
                    closed.entries.len(),
                    numeric.entries.len()
                );
                for (c, s) in closed.entries.iter().zip(&numeric.entries) {
                    ensure!(
                        (c.sqrt_lambda - s.sqrt_lambda).abs() < 1e-8,
                        "{name} {conditions}: sqrt λ {} vs {}",
                        c.sqrt_lambda,
                        s.sqrt_lambda
                    );
                    ensure!(
                        c.multiplicity == s.multiplicity,
                        "{name} {conditions}: multiplicity {} vs {} at sqrt λ {}",
                        c.multiplicity,
                        s.multiplicity,
                        c.sqrt_lambda
                    );
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_triangle_circle_oracle() {
    criterion("07 C3 standard spectrum = circle of length 3", || {
        let g = MetricGraph::cycle(3, 1.0);
        let list = standard_spectrum(&g, Truncation::ByCount(9)).map_err(|e| e.to_string())?;
        let flat = list.flat();
        ensure!(flat.len() >= 9, "need 9 flat entries, got {}", flat.len());
        let mut expected = vec![0.0];
        for m in 1..=4 {
            let lambda = (2.0 * PI * m as f64 / 3.0).powi(2);
            expected.push(lambda);
            expected.push(lambda);
        }
        for i in 0..9 {
            ensure!(
                (flat[i] - expected[i]).abs() < 1e-10,
                "flat index {i}: {} vs circle {}",
                flat[i],
                expected[i]
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_08_equivalence_across_corpus() {
    criterion("08 equivalence across the corpus", || {
        let corpus: Vec<(&str, MetricGraph)> = vec![
            ("C3", MetricGraph::cycle(3, 1.0)),
            ("C5", MetricGraph::cycle(5, 1.0)),
            ("C7", MetricGraph::cycle(7, 1.0)),
            ("K4", MetricGraph::complete(4, 1.0)),
            ("K5", MetricGraph::complete(5, 1.0)),
            ("W5", MetricGraph::wheel(5, 1.0)),
        ];
        for (name, g) in &corpus {
            let k = window_check_count(g).map_err(|e| e.to_string())?;
            let consistent = theorem_consistency(g, k).map_err(|e| e.to_string())?;
            ensure!(
                consistent,
                "{name}: condition and domination verdicts differ"
            );
        }
        // K4 and K5 must land on the negative branch: an explicit lower-family
        // violation and a located domination violation.
        for (name, g) in [
            ("K4", MetricGraph::complete(4, 1.0)),
            ("K5", MetricGraph::complete(5, 1.0)),
        ] {
            let report =
                check_mu_conditions_for_graph(&g, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
            ensure!(!report.cond_4_2, "{name}: lower μ family should fail");
            ensure!(
                !report.witnesses.is_empty(),
                "{name}: expected explicit witnesses"
            );
            let k = window_check_count(&g).map_err(|e| e.to_string())?;
            let shift = report.shift;
            let needed = k + shift + 2;
            let st =
                standard_spectrum(&g, Truncation::ByCount(needed)).map_err(|e| e.to_string())?;
            let ast = antistandard_spectrum(&g, Truncation::ByCount(needed))
                .map_err(|e| e.to_string())?;
            let dom = verify_domination(&st, &ast, shift, k, DEFAULT_TOLERANCE)
                .map_err(|e| e.to_string())?;
            ensure!(!dom.holds, "{name}: domination should fail");
            let v = dom
                .first_violation
                .ok_or_else(|| format!("{name}: missing located violation"))?;
            ensure!(
                v.lambda_st < v.lambda_ast,
                "{name}: violation at k = {} is not a violation",
                v.k
            );
        }
        Ok(())
    });
}

/// Small deterministic generator for the random-graph corpus.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }
}

/// Random connected simple graph with unit lengths: a random spanning tree
/// plus a few random extra edges.
fn random_graph(rng: &mut XorShift) -> MetricGraph {
    let n = 2 + rng.below(7); // 2..=8 vertices
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for child in 1..n {
        let parent = rng.below(child);
        pairs.push((parent, child));
    }
    let extras = rng.below(4);
    for _ in 0..extras {
        let u = rng.below(n);
        let v = rng.below(n);
        let (u, v) = (u.min(v), u.max(v));
        if u != v && !pairs.contains(&(u, v)) {
            pairs.push((u, v));
        }
    }
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge::new(u, v, 1.0))
        .collect();
    MetricGraph::new(n, edges).expect("random graph is valid")
}

#[test]
fn criterion_09_property_suite_on_random_corpus() {
    criterion("09 property suite on random corpus", || {
        let mut rng = XorShift(0x9e3779b97f4a7c15);
        let corpus: Vec<MetricGraph> = (0..20).map(|_| random_graph(&mut rng)).collect();
        let bipartite_count = corpus.iter().filter(|g| g.is_bipartite()).count();
        ensure!(
            bipartite_count >= 3 && corpus.len() - bipartite_count >= 3,
            "corpus must mix bipartite and non-bipartite graphs (got {bipartite_count}/20 bipartite)"
        );

        for (idx, g) in corpus.iter().enumerate() {
            // Transition rows sum to 1.
            let z = g.transition_matrix();
            for i in 0..g.vertex_count() {
                let row: f64 = (0..g.vertex_count()).map(|j| z[(i, j)]).sum();
                ensure!((row - 1.0).abs() < 1e-14, "graph {idx}: row sum {row}");
            }

            // Scattering orthogonality and exact sign relation.
            let st = build_scattering(g, VertexConditions::Standard);
            let ast = build_scattering(g, VertexConditions::AntiStandard);
            let m = st.bond_count();
            let product = &st.matrix * st.matrix.transpose();
            for i in 0..m {
                for j in 0..m {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    ensure!(
                        (product[(i, j)] - expected).abs() < 1e-12,
                        "graph {idx}: S·Sᵀ entry ({i},{j})"
                    );
                }
            }
            ensure!(
                st.matrix == -ast.matrix.clone(),
                "graph {idx}: sign relation must be exact"
            );

            // Orientation-reversal invariance of the secular modulus.
            let reversed = build_scattering(&g.reversed(), VertexConditions::Standard);
            for s in 0..8 {
                let k = 0.05 + s as f64 * 0.61;
                let a = st.secular_value(k).norm();
                let b = reversed.secular_value(k).norm();
                ensure!(
                    (a - b).abs() < 1e-10,
                    "graph {idx}: reversal changes |det| at k = {k}"
                );
            }

            // Spectral bipartiteness criterion.
            let spectrum = transition_spectrum(g);
            let spectral = (spectrum.min_mu() + 1.0).abs() < 1e-9;
            ensure!(
                spectral == g.is_bipartite(),
                "graph {idx}: spectral and combinatorial bipartiteness disagree"
            );

            // Weyl counting over (0, K] with K = 4π / shortest length.
            let shortest = g
                .edges()
                .iter()
                .map(|e| e.length)
                .fold(f64::INFINITY, f64::min);
            let kmax = 4.0 * PI / shortest;
            for (conditions, sys) in [
                (VertexConditions::Standard, &st),
                (VertexConditions::AntiStandard, &ast),
            ] {
                let k_min = PI / (8.0 * g.total_length());
                let roots = find_roots(sys, k_min, kmax).map_err(|e| e.to_string())?;
                let found = roots.flat_count() as f64;
                let weyl = g.total_length() * kmax / PI;
                ensure!(
                    (found - weyl).abs() <= 2.0 * g.edge_count() as f64,
                    "graph {idx} ({conditions}): {found} roots vs Weyl {weyl:.1}"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_subdivision_comparison_on_pentagon() {
    criterion("10 subdivision comparison on C5", || {
        let g = MetricGraph::cycle(5, 1.0);
        let report = qglap::comparison::subdivision_comparison(&g, 100, DEFAULT_TOLERANCE)
            .map_err(|e| e.to_string())?;
        ensure!(report.holds, "violated at {:?}", report.first_violation);
        Ok(())
    });
}
