use proptest::prelude::*;

use juddian_core::boson::{displacement_matrix, DisplacementParams, FockCutoff};
use juddian_core::juddian::{juddian_points, juddian_points_up_to};
use juddian_core::numerics::{norm2, poly_real_roots, sym_eig, sym_eigvals, Matrix, Polynomial, SymMatrix};
use juddian_core::rabi::{
    block_spectra, build_rabi, find_crossings, parity_operator, spectrum_sweep, ModelParams, Units,
};

fn sym_from(dim: usize, entries: &[f64]) -> SymMatrix {
    let mut it = entries.iter().cycle();
    SymMatrix::from_upper(dim, |_, _| *it.next().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigen_residual_and_orthonormality(dim in 1usize..60, entries in prop::collection::vec(-5.0f64..5.0, 64)) {
        let a = sym_from(dim, &entries);
        let eig = sym_eig(&a).unwrap();
        let fro = a.frobenius_norm().max(f64::MIN_POSITIVE);
        for k in 0..dim {
            let v = eig.vector(k);
            let r: Vec<f64> = a.matvec(&v).iter().zip(&v).map(|(x, y)| x - eig.values[k] * y).collect();
            prop_assert!(norm2(&r) <= 1e-10 * fro);
        }
        let gram = eig.vectors.transpose().matmul(&eig.vectors);
        prop_assert!(gram.sub(&Matrix::identity(dim)).max_abs() <= 1e-10);
        let sum: f64 = eig.values.iter().sum();
        prop_assert!((sum - a.trace()).abs() <= 1e-9 * fro);
        let sq: f64 = eig.values.iter().map(|x| x * x).sum();
        prop_assert!((sq - fro * fro).abs() <= 1e-9 * fro);
    }

    #[test]
    fn roots_evaluate_to_zero(roots in prop::collection::btree_set(-40i32..40, 1..6), lead in 0.5f64..3.0) {
        // product of (x − r/10) with distinct r, evaluated on a bracket that
        // avoids every root
        let mut p = Polynomial::constant(lead);
        for r in &roots {
            p = &p * &Polynomial::linear(-(*r as f64) / 10.0 + 0.0137, 1.0);
        }
        let found = poly_real_roots(&p, -4.5, 4.5).unwrap();
        prop_assert_eq!(found.roots.len(), roots.len());
        let deg = p.degree() as i32;
        for r in found.roots {
            let bound = 1e-10 * p.max_abs_coeff() * r.abs().max(1.0).powi(deg);
            prop_assert!(p.eval(r).abs() <= bound);
        }
    }

    #[test]
    fn block_spectra_are_complete(g in 0.0f64..0.9, omega0 in 0.2f64..2.5) {
        let params = ModelParams::new(1.0, omega0, g).unwrap();
        let cutoff = FockCutoff(40);
        let full = sym_eigvals(&build_rabi(&params, cutoff, Units::Scaled)).unwrap();
        let (a, b) = block_spectra(&params, cutoff, Units::Scaled).unwrap();
        let mut merged: Vec<f64> = a.into_iter().chain(b).collect();
        merged.sort_by(f64::total_cmp);
        for (x, y) in merged.iter().zip(&full) {
            prop_assert!((x - y).abs() <= 1e-10 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn parity_commutes_with_hamiltonian(g in -1.0f64..1.0, omega in 0.3f64..3.0, omega0 in 0.0f64..3.0) {
        let cutoff = FockCutoff(30);
        let h = build_rabi(&ModelParams::new(omega, omega0, g).unwrap(), cutoff, Units::Unscaled);
        let pi = parity_operator(cutoff);
        let comm = h.as_matrix().matmul(pi.as_matrix()).sub(&pi.as_matrix().matmul(h.as_matrix()));
        prop_assert!(comm.max_abs() <= 1e-12);
    }

    #[test]
    fn coupling_sign_does_not_change_spectrum(g in 0.0f64..0.9) {
        let cutoff = FockCutoff(60);
        let (p1, m1) = block_spectra(&ModelParams::resonant(g), cutoff, Units::Scaled).unwrap();
        let (p2, m2) = block_spectra(&ModelParams::resonant(-g), cutoff, Units::Scaled).unwrap();
        for (x, y) in p1.iter().chain(&m1).zip(p2.iter().chain(&m2)) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn displacement_near_orthogonal(z in -3.0f64..3.0) {
        let m = 100;
        let d = displacement_matrix(DisplacementParams::new(z).unwrap(), FockCutoff(m)).unwrap();
        let gram = d.transpose().matmul(&d);
        let keep = m - 4 * (z * z).ceil() as usize;
        for i in 0..keep {
            for j in 0..keep {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((gram[(i, j)] - want).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn lowest_levels_converged_in_cutoff() {
    for k in 0..=16 {
        let g = 0.05 * k as f64;
        let params = ModelParams::resonant(g);
        let (p100, m100) = block_spectra(&params, FockCutoff(100), Units::Scaled).unwrap();
        let (p125, m125) = block_spectra(&params, FockCutoff(125), Units::Scaled).unwrap();
        for i in 0..8 {
            assert!((p100[i] - p125[i]).abs() <= 1e-8, "g = {g}, + level {i}");
            assert!((m100[i] - m125[i]).abs() <= 1e-8, "g = {g}, - level {i}");
        }
    }
}

#[test]
fn sweep_rows_are_independent_of_grid() {
    let t = ModelParams::resonant(0.0);
    let c = FockCutoff(50);
    let a = spectrum_sweep(&t, &[0.1, 0.3, 0.5], c, 4, Units::Scaled).unwrap();
    let b = spectrum_sweep(&t, &[0.3], c, 4, Units::Scaled).unwrap();
    assert_eq!(a.rows[1], b.rows[0]);
}

#[test]
fn crossings_on_baselines_are_juddian_points() {
    let template = ModelParams::resonant(0.0);
    let cutoff = FockCutoff(100);
    let grid: Vec<f64> = (0..201).map(|i| 0.05 + 0.75 * i as f64 / 200.0).collect();
    let table = spectrum_sweep(&template, &grid, cutoff, 8, Units::Scaled).unwrap();
    let crossings = find_crossings(&table, &template, cutoff).unwrap();
    let points = juddian_points_up_to(4, &template).unwrap();
    let mut on_baseline = 0;
    for c in &crossings {
        let lambda = template.lambda_at(c.g_star);
        for n in 1..=4 {
            if (c.e_star - (n as f64 - lambda * lambda)).abs() <= 1e-6 {
                on_baseline += 1;
                let hit = points.iter().any(|p| p.n == n && (p.g - c.g_star).abs() <= 1e-7);
                assert!(hit, "crossing at g = {} E = {} on baseline {n} is not a Juddian point", c.g_star, c.e_star);
            }
        }
    }
    assert_eq!(on_baseline, 10);
}

#[test]
fn juddian_points_branch_invariant() {
    use juddian_core::juddian::{alternate_branch, reconstruct_state, eigen_residual};
    let params = ModelParams::new(1.0, 0.8, 0.0).unwrap();
    for n in 1..=4 {
        let pts = juddian_points(n, &params).unwrap();
        for p in &pts {
            let alt = alternate_branch(p);
            assert!((alt.g - p.g).abs() <= 1e-12 && (alt.energy - p.energy).abs() <= 1e-12);
            let st = reconstruct_state(&alt, FockCutoff(100)).unwrap();
            assert!(eigen_residual(&alt, &st, FockCutoff(100)) <= 1e-6);
        }
    }
}
