//! The invariant suites behind `swcnt verify`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use swcnt_core::bloch::{plane_wave, LatticePotential};
use swcnt_core::geometry::{class_scalars, general_scalars};
use swcnt_core::tightbinding::build_hs;
use swcnt_core::transforms::{neighbor_shells, wrap_pi, Sublattice};
use swcnt_core::{
    atom_positions, bloch_sum, brillouin_zone, characteristic_vectors, cyclic_eigenfunction, dual_products,
    hamiltonian_apply, make_transform, modified_operator_apply, overlap_integral, reciprocal_tube, sample_kappa,
    solve_secular, verify_bloch_property, Branch, HoppingModel, KPoint, ModelOrbital, SurfaceFunction, SurfaceGrid,
    SymmetryClass, TBParams, TubeGeometry,
};

use crate::report::{CheckLine, CheckStatus};

fn check(name: &str, residual: f64, tol: f64) -> CheckLine {
    CheckLine {
        name: name.to_string(),
        status: if residual <= tol { CheckStatus::Pass } else { CheckStatus::Fail },
        residual,
        tol,
        note: None,
    }
}

/// Passes when `residual >= floor`.
fn check_at_least(name: &str, residual: f64, floor: f64) -> CheckLine {
    CheckLine {
        status: if residual >= floor { CheckStatus::Pass } else { CheckStatus::Fail },
        ..check(name, residual, floor)
    }
}

fn info(name: &str, residual: f64, tol: f64, note: &str) -> CheckLine {
    CheckLine { status: CheckStatus::Info, note: Some(note.to_string()), ..check(name, residual, tol) }
}

fn geometry_checks(g: &TubeGeometry, out: &mut Vec<CheckLine>) {
    out.push(check("theta+ + theta- = pi/3", (g.theta_plus + g.theta_minus - PI / 3.0).abs(), 1e-12));
    if let Ok(cs) = class_scalars(&g.spec) {
        let gs = general_scalars(&g.spec);
        let d = (cs.chord_plus - gs.chord_plus).abs().max((cs.chord_minus - gs.chord_minus).abs());
        out.push(check("class chord formulas = general formulas", d, 1e-12));
    }
    let (n, m, t1, t2) = (g.spec.n, g.spec.m, g.t1, g.t2);
    // C_h · T in units of a²/2 (graphene metric a₊·a₋ = a²/2).
    let dot = 2 * n * t1 + n * t2 + m * t1 + 2 * m * t2;
    out.push(check("C_h . T = 0", dot.abs() as f64, 0.0));
}

fn transform_checks(g: &TubeGeometry, out: &mut Vec<CheckLine>) {
    let turn = make_transform(g, Branch::Minus, g.spec.m).compose(make_transform(g, Branch::Plus, g.spec.n));
    out.push(check("T-^m T+^n = identity", wrap_pi(turn.dtheta).abs() + turn.dz.abs(), 1e-10));
    let atoms = atom_positions(g);
    out.push(check("atom count = 2N", (atoms.len() as f64 - 2.0 * g.n_cells as f64).abs(), 0.0));
    match neighbor_shells(&atoms, g, 2) {
        Ok(t) => {
            let bad =
                t.first.iter().filter(|v| v.len() != 3).count() + t.second.iter().filter(|v| v.len() != 6).count();
            out.push(check("neighbour shells 3 + 6", bad as f64, 0.0));
        }
        Err(e) => out.push(info("neighbour shells 3 + 6", f64::NAN, 0.0, &e.to_string())),
    }
}

fn reciprocal_checks(g: &TubeGeometry, out: &mut Vec<CheckLine>) {
    let rt = reciprocal_tube(g);
    let dp = dual_products(&characteristic_vectors(g), &rt);
    let diag = (dp.plus_plus - 3.0 * PI).abs().max((dp.minus_minus - 3.0 * PI).abs());
    let closed = swcnt_core::reciprocal::dual_products_closed_form(g);
    if g.class == SymmetryClass::Zigzag {
        out.push(info("a_hat·b_tilde diag = 3π", diag, 1e-12, "informational: zigzag + family is a pure rotation"));
        let want = closed[2].expect("plus-minus closed form");
        out.push(info(
            "a_hat·b_tilde cross = closed form",
            (dp.plus_minus - want).abs() / want.abs().max(1.0),
            1e-12,
            "informational: minus-plus term is singular for zigzag",
        ));
    } else {
        out.push(check("a_hat·b_tilde diag = 3π", diag, 1e-12));
        let mut worst = 0.0f64;
        for (got, want) in [(dp.plus_minus, closed[2]), (dp.minus_plus, closed[3])] {
            let want = want.expect("closed form off zigzag");
            worst = worst.max((got - want).abs() / want.abs().max(1.0));
        }
        out.push(check("a_hat·b_tilde cross = closed form", worst, 1e-12));
    }
    match brillouin_zone(&rt) {
        Ok(bz) => {
            let rel = (bz.area - rt.cell_area()).abs() / rt.cell_area();
            out.push(check("Brillouin hexagon area = cell area", rel, 1e-10));
        }
        Err(e) => out.push(CheckLine {
            note: Some(e.to_string()),
            ..check("Brillouin hexagon area = cell area", f64::INFINITY, 1e-10)
        }),
    }
}

fn factorization_residual(g: &TubeGeometry, n: usize) -> f64 {
    let zp = 8.0 * g.c(g.axial_branch());
    let grid = SurfaceGrid::plain(g.r_t, zp, n, n).expect("grid size");
    let cfg = LatticePotential::new(g, 0.5).config();
    let k = KPoint::new(0.3, 2.0 * TAU / zp);
    let u = SurfaceFunction::from_fn(grid, |p| {
        let w = TAU * p.z / zp;
        Complex64::new(1.0 / (1.5 - p.theta.cos()), 0.2 * (p.theta - 0.4).sin()) * (1.0 + 0.5 * w.sin())
    });
    let e = plane_wave(&u, k);
    let psi = e.zip_with(&u, |a, b| a * b).expect("same grid");
    let lhs = hamiltonian_apply(&psi, &cfg);
    let rhs = e.zip_with(&modified_operator_apply(&u, k, &cfg), |a, b| a * b).expect("same grid");
    lhs.max_diff(&rhs).expect("same grid")
}

fn bloch_checks(g: &TubeGeometry, l: usize, out: &mut Vec<CheckLine>) -> swcnt_core::error::Result<()> {
    let orb = ModelOrbital::for_sublattice(g, Sublattice::A);
    let grid = SurfaceGrid::resolving(g, orb.width)?;
    let branch = g.axial_branch();
    let ks = sample_kappa(g, l)?;
    let step = ks[1] - ks[0];
    let mut on = 0.0f64;
    let mut off = f64::INFINITY;
    for &k in &ks {
        on = on.max(verify_bloch_property(&bloch_sum(g, &grid, &orb, k)?, g, k, branch, 1));
        let mid = k + 0.5 * step;
        off = off.min(verify_bloch_property(&bloch_sum(g, &grid, &orb, mid)?, g, mid, branch, 1));
    }
    out.push(check("Bloch law at every kappa_nu", on, 1e-10));
    out.push(check_at_least("midway kappa breaks closure (residual >= tol)", off, 0.1));

    let seed = ModelOrbital::for_sublattice(g, Sublattice::B).sample(&grid);
    let psis = ks.iter().map(|&k| cyclic_eigenfunction(&seed, g, k)).collect::<swcnt_core::error::Result<Vec<_>>>()?;
    let norms =
        psis.iter().map(|p| overlap_integral(p, p).map(|z| z.re)).collect::<swcnt_core::error::Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for mu in 0..psis.len() {
        for nu in mu + 1..psis.len() {
            worst = worst.max(overlap_integral(&psis[mu], &psis[nu])?.norm() / norms[mu].max(norms[nu]));
        }
    }
    out.push(check("cyclic eigenfunctions orthogonal", worst, 1e-8));

    let coarse = factorization_residual(g, 32);
    let fine = factorization_residual(g, 64);
    out.push(check("modified-operator factorization (64x64)", fine, 1e-6));
    out.push(check("factorization refinement 32->64 (ratio)", fine / coarse, 0.1));
    Ok(())
}

fn tb_checks(g: &TubeGeometry, l: usize, out: &mut Vec<CheckLine>) -> swcnt_core::error::Result<()> {
    let models = [
        TBParams { s2: 0.03, ..TBParams::default() },
        TBParams { s2: 0.03, model: HoppingModel::CurvatureAware, ..TBParams::default() },
    ];
    let ph = TBParams { s1: 0.0, s2: 0.0, ..TBParams::default() };
    let (mut herm, mut det, mut sym, mut shift) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in sample_kappa(g, l)? {
        for p in &models {
            for order in [1, 2] {
                let hs = build_hs(g, p, k, order)?;
                herm = herm.max((hs.h[1][0] - hs.h[0][1].conj()).norm()).max((hs.s[1][0] - hs.s[0][1].conj()).norm());
                let hn2: f64 = hs.h.iter().flatten().map(|z| z.norm_sqr()).sum();
                let (ep, em) = solve_secular(&hs)?;
                for eps in [ep, em] {
                    let a = |i: usize, j: usize| hs.h[i][j] - eps * hs.s[i][j];
                    det = det.max((a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).norm() / hn2);
                }
            }
        }
        let (ep, em) = solve_secular(&build_hs(g, &ph, k, 1)?)?;
        sym = sym.max((ep + em).abs());
        let (ep2, em2) = solve_secular(&build_hs(g, &ph, k, 2)?)?;
        shift = shift.max(((ep2 - em2) - (ep - em)).abs());
    }
    out.push(check("H, S Hermitian (both orders, both models)", herm, 1e-12));
    out.push(check("secular det residual / |H|^2", det, 1e-8));
    out.push(check("particle-hole symmetry (first shell, flat)", sym, 1e-12));
    out.push(check("second shell keeps eps+ - eps-", shift, 1e-12));
    Ok(())
}

/// Runs every suite on the `(n, m)` tube with half-count `l`.
pub fn run_checks(g: &TubeGeometry, l: usize) -> swcnt_core::error::Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    geometry_checks(g, &mut out);
    transform_checks(g, &mut out);
    reciprocal_checks(g, &mut out);
    bloch_checks(g, l, &mut out)?;
    tb_checks(g, l, &mut out)?;
    Ok(out)
}
