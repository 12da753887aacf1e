use std::path::Path;

use acnet::characterize::{random_admissible, validate_response, ResponseMatrix};
use acnet::io::read_network;
use acnet::numerics::{ComplexMatrix, RealMatrix, Tolerances};
use acnet::response::response_matrix;
use acnet::synthesize::{
    assemble_laplace, build_plan, synthesize_network, verify_roundtrip, SynthesisOptions,
};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn worked_example() -> ResponseMatrix {
    let s = RealMatrix::from_rows(&[
        vec![2.0, 1.0, -3.0],
        vec![1.0, 2.0, -3.0],
        vec![-3.0, -3.0, 6.0],
    ])
    .unwrap();
    ResponseMatrix::new(&ComplexMatrix::from_real(&s), &tol()).unwrap()
}

#[test]
fn worked_example_network_matches_fixture() {
    let syn = synthesize_network(&worked_example(), SynthesisOptions::default(), &tol()).unwrap();
    let fixture = read_network(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/worked_network.json"),
    )
    .unwrap();
    assert_eq!(syn.network.edges.len(), 6);
    for (a, b) in syn.network.edges.iter().zip(&fixture.edges) {
        assert_eq!((a.u, a.v), (b.u, b.v));
        assert!((a.conductance - b.conductance).norm() < 1e-12);
    }
    assert!(syn.report.residual <= 1e-12);
    let report = verify_roundtrip(&worked_example(), &fixture);
    assert!(report.residual <= 1e-12, "{report:?}");
}

#[test]
fn plan_invariants_b6() {
    for seed in 0..10 {
        let rm = random_admissible(6, seed).unwrap();
        let plan = build_plan(&rm, SynthesisOptions::default(), &tol()).unwrap();
        assert_eq!(plan.n, 4);
        let w = &plan.w;
        for k in 0..plan.n {
            assert!(w.col_vec(k).iter().sum::<f64>().abs() <= 1e-10);
        }
        let wwt = w.matmul(&w.transpose()).unwrap();
        assert!(wwt.max_abs_diff(&plan.s_prime) <= 1e-9);
        // S' recomputed directly from S and λ₂
        let l2 = rm.lambda2();
        let direct = RealMatrix::from_fn(6, 6, |i, j| {
            rm.real_part()[(i, j)] - if i == j { l2 } else { 0.0 } + l2 / 6.0
        });
        assert!(direct.max_abs_diff(&plan.s_prime) <= 1e-14);
        assert!((plan.delta * plan.n as f64 - l2 / 2.0).abs() <= 1e-14 * l2);
        assert!((plan.epsilon * plan.epsilon - 6.0 * plan.delta).abs() <= 1e-14);
        assert_eq!(plan.f.asymmetry(), 0.0);
    }
}

#[test]
fn assembled_laplace_structure() {
    for seed in 0..10 {
        let b = 3 + (seed as usize % 6);
        let rm = random_admissible(b, seed).unwrap();
        let plan = build_plan(&rm, SynthesisOptions::default(), &tol()).unwrap();
        let l = assemble_laplace(&plan).unwrap();
        let n = plan.n;
        assert_eq!(l.rows(), b + n);
        assert_eq!(l.asymmetry(), 0.0);
        let sums = l.row_sums();
        for (i, s) in sums.iter().enumerate() {
            assert!(s.norm() <= 1e-10 * (1.0 + l.max_abs()), "row {i}: {s}");
        }
        for i in 0..b + n {
            for j in 0..b + n {
                if i == j {
                    continue;
                }
                let x = l[(i, j)];
                match (i < b, j < b) {
                    (true, true) => assert!((x.re + rm.lambda2() / (2.0 * b as f64)).abs() < 1e-15),
                    (false, false) => assert_eq!(x.norm(), 0.0),
                    _ => assert_eq!(x.re, -plan.delta),
                }
            }
        }
    }
}

#[test]
fn roundtrip_b3_to_b12() {
    for b in 3..=12 {
        for seed in 0..5 {
            let rm = random_admissible(b, 1000 * b as u64 + seed).unwrap();
            let syn = synthesize_network(&rm, SynthesisOptions::default(), &tol()).unwrap();
            assert_eq!(syn.network.interior_count, b - 2);
            assert!(syn.report.relative_residual <= 1e-8);
            let r = response_matrix(&syn.network).unwrap();
            assert!(r.max_abs_diff(rm.matrix()) <= 1e-8 * rm.matrix().max_abs());
        }
    }
}

#[test]
fn edge_real_parts_follow_the_block_pattern() {
    let rm = random_admissible(7, 3).unwrap();
    let syn = synthesize_network(&rm, SynthesisOptions::default(), &tol()).unwrap();
    let plan = syn.plan.unwrap();
    let b = 7;
    assert_eq!(syn.network.edges.len(), b * (b - 1) / 2 + b * (b - 2));
    for e in &syn.network.edges {
        assert!(e.u < b, "interior-interior edge {e:?}");
        if e.v < b {
            assert!((e.conductance.re - rm.lambda2() / (2.0 * b as f64)).abs() < 1e-15);
        } else {
            assert_eq!(e.conductance.re, plan.delta);
        }
    }
}

#[test]
fn imaginary_part_only_changes_boundary_imaginary_parts() {
    let a = random_admissible(6, 21).unwrap();
    let b = random_admissible(6, 22).unwrap();
    // same real part, different imaginary part
    let mixed = ComplexMatrix::from_parts(a.real_part(), b.imag_part()).unwrap();
    let mixed = ResponseMatrix::new(&mixed, &tol()).unwrap();
    let sa = synthesize_network(&a, SynthesisOptions::default(), &tol()).unwrap();
    let sm = synthesize_network(&mixed, SynthesisOptions::default(), &tol()).unwrap();
    assert_eq!(sa.network.edges.len(), sm.network.edges.len());
    for (x, y) in sa.network.edges.iter().zip(&sm.network.edges) {
        assert_eq!((x.u, x.v), (y.u, y.v));
        assert_eq!(x.conductance.re, y.conductance.re);
        if x.v >= 6 {
            assert_eq!(x.conductance.im, y.conductance.im);
        }
    }
    let (pa, pm) = (sa.plan.unwrap(), sm.plan.unwrap());
    assert_eq!(pa.w, pm.w);
    assert_eq!(pa.delta, pm.delta);
}

#[test]
fn repeated_lambda2_can_drop_interior_nodes() {
    // λ₂(I - 𝟙/b) + v vᵀ with v ⟂ 𝟙: spectrum 0, λ₂ (b-2 times), λ₂ + |v|²
    let b = 6;
    let lambda2 = 1.5;
    let v = [1.0, -2.0, 0.5, 0.5, 0.0, 0.0];
    let s = RealMatrix::from_fn(b, b, |i, j| {
        lambda2 * (if i == j { 1.0 } else { 0.0 } - 1.0 / b as f64) + v[i] * v[j]
    });
    let rm = ResponseMatrix::new(&ComplexMatrix::from_real(&s), &tol()).unwrap();
    let opts = SynthesisOptions {
        minimize_interior: true,
    };
    let syn = synthesize_network(&rm, opts, &tol()).unwrap();
    assert_eq!(syn.network.interior_count, 1);
    assert!(syn.report.relative_residual <= 1e-8);
    let plan = syn.plan.unwrap();
    assert!((plan.delta - lambda2 / 2.0).abs() < 1e-12);
}

#[test]
fn batch_of_verified_roundtrips() {
    for seed in 0..100 {
        let b = 2 + (seed as usize % 11);
        let rm = random_admissible(b, seed).unwrap();
        let syn = synthesize_network(&rm, SynthesisOptions::default(), &tol()).unwrap();
        let report = verify_roundtrip(&rm, &syn.network);
        assert!(report.passes(1e-8), "seed {seed}: {report:?}");
        assert_eq!(report, syn.report);
    }
}

#[test]
fn roundtrip_against_wrong_network_reports_difference() {
    let a = random_admissible(4, 1).unwrap();
    let b = random_admissible(4, 2).unwrap();
    let net_b = synthesize_network(&b, SynthesisOptions::default(), &tol())
        .unwrap()
        .network;
    let report = verify_roundtrip(&a, &net_b);
    let gap = a.matrix().max_abs_diff(b.matrix());
    assert!((report.residual - gap).abs() <= 1e-8 * gap);
    assert!(!report.passes(1e-8));
    // boundary count mismatch is reported as an infinite residual
    let c = random_admissible(5, 2).unwrap();
    assert_eq!(verify_roundtrip(&c, &net_b).residual, f64::INFINITY);
}

#[test]
fn inadmissible_input_cannot_be_wrapped() {
    let bad = ComplexMatrix::identity(3);
    assert!(ResponseMatrix::new(&bad, &tol()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdict_is_scale_consistent(b in 2usize..9, seed in any::<u64>(), log_scale in -2.0f64..6.0) {
        let rm = random_admissible(b, seed).unwrap();
        let s = 10f64.powf(log_scale);
        let scaled = rm.matrix().map(|z| z * s);
        prop_assert!(validate_response(&scaled, &tol()).unwrap().verdict.admissible);
        // perturb one row sum far beyond the tolerance: rejected at every scale
        let mut broken = rm.matrix().clone();
        broken[(0, 0)] += num_complex::Complex64::new(0.5, 0.0);
        let broken_scaled = broken.map(|z| z * s);
        prop_assert!(!validate_response(&broken, &tol()).unwrap().verdict.admissible);
        prop_assert!(!validate_response(&broken_scaled, &tol()).unwrap().verdict.admissible);
    }

    #[test]
    fn generated_matrices_always_admissible(b in 2usize..13, seed in any::<u64>()) {
        let rm = random_admissible(b, seed).unwrap();
        let v = validate_response(rm.matrix(), &tol()).unwrap();
        prop_assert!(v.verdict.admissible);
        prop_assert!(rm.spectral().eigenvalues[0].abs() <= 1e-12);
    }
}
