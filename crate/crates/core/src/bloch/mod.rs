//! Bloch functions on the tube: phase factors, Bloch sums of localized
//! orbitals, cyclic eigenfunction combinations, overlaps, and the operator
//! acting on the periodic factor of a Bloch function.

mod grid;
mod operator;
mod orbital;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use grid::{SurfaceFunction, SurfaceGrid};
pub use operator::{
    hamiltonian_apply, modified_operator_apply, plane_wave, LatticePotential, Potential, SchrodingerConfig,
    HBAR2_OVER_2M,
};
pub use orbital::ModelOrbital;

use crate::error::{Error, Result};
use crate::geometry::{Branch, TubeGeometry};
use crate::reciprocal::KPoint;
use crate::transforms::{enumerate_cells, make_transform, TubePoint};

/// Phase factors picked up under `T_j^±`: `σ = ±κ c± j`, `η = ±2π z j / c±`,
/// `λ = e^{iσ}`, `μ = e^{iη}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochPhase {
    pub sigma: f64,
    pub eta: f64,
    pub lambda: Complex64,
    pub mu: Complex64,
}

pub fn bloch_phases(geom: &TubeGeometry, k: KPoint, r: TubePoint, j: i64, branch: Branch) -> Result<BlochPhase> {
    let c = geom.c(branch);
    if c <= 0.0 {
        return Err(Error::RotationOnlyBranch);
    }
    let sign = branch.sign();
    let jf = j as f64;
    let sigma = sign * k.kappa * c * jf;
    let eta = sign * std::f64::consts::TAU * r.z * jf / c;
    Ok(BlochPhase { sigma, eta, lambda: Complex64::from_polar(1.0, sigma), mu: Complex64::from_polar(1.0, eta) })
}

/// `k·r = π cos(θ − τ) + κ z` for points on the tube and the reciprocal tube.
pub fn phase_inner(k: KPoint, r: TubePoint) -> f64 {
    std::f64::consts::PI * (r.theta - k.tau).cos() + k.kappa * r.z
}

fn check_tube_grid(geom: &TubeGeometry, grid: &SurfaceGrid) -> Result<()> {
    let expected = SurfaceGrid::finite_tube(geom, grid.n_theta, grid.n_z)?;
    if expected != *grid {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

/// `Φ(r) = N^{-1/2} Σ_cells e^{−iκ z_cell} φ(M_cell r)` over the `N` cells of
/// the finite tube, where `z_cell = j c₊ − s c₋` is the axial shift of `M_{s,j}`.
pub fn bloch_sum(
    geom: &TubeGeometry,
    grid: &SurfaceGrid,
    orbital: &ModelOrbital,
    kappa: f64,
) -> Result<SurfaceFunction> {
    check_tube_grid(geom, grid)?;
    let half_cell = 0.5 * geom.spec.a;
    if orbital.width > half_cell {
        log::warn!(
            "orbital width {:.3} A exceeds half a cell ({:.3} A); Bloch sums lose locality",
            orbital.width,
            half_cell
        );
    }
    let terms: Vec<(TubePoint, Complex64)> = enumerate_cells(geom)
        .into_iter()
        .map(|c| {
            let t = c.transform(geom);
            (t.inverse().apply(orbital.center), Complex64::from_polar(1.0, -kappa * t.dz))
        })
        .collect();
    let norm = 1.0 / (geom.n_cells as f64).sqrt();
    let nt = grid.n_theta;
    let values: Vec<Complex64> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let p = grid.point(idx % nt, idx / nt);
            let mut acc = Complex64::new(0.0, 0.0);
            for (center, ph) in &terms {
                acc += ph * orbital.value_centered(grid, *center, p);
            }
            acc * norm
        })
        .collect();
    SurfaceFunction::from_values(*grid, values)
}

/// `max_r |f(T_l r) − e^{±ilκc±} f(r)|` for the chosen family, using exact
/// trigonometric interpolation for `f(T_l r)`. The sign is `+` for `T^+` and
/// `−` for `T^-`.
pub fn verify_bloch_property(phi: &SurfaceFunction, geom: &TubeGeometry, kappa: f64, branch: Branch, l: i64) -> f64 {
    let t = make_transform(geom, branch, l);
    let expected = Complex64::from_polar(1.0, branch.sign() * l as f64 * kappa * geom.c(branch));
    let moved = phi.shifted(t);
    moved.values().iter().zip(phi.values()).map(|(a, b)| (a - expected * b).norm()).fold(0.0, f64::max)
}

/// `Ψ = Σ_{j=−L}^{L−1} e^{−iσ_j} T_j seed` with `σ_j = ±κ c j` for the tube's
/// translating family (`T^+`, or `T^-` for zigzag), so that
/// `T_l Ψ = e^{iσ_l} Ψ`.
pub fn cyclic_eigenfunction(seed: &SurfaceFunction, geom: &TubeGeometry, kappa: f64) -> Result<SurfaceFunction> {
    check_tube_grid(geom, seed.grid())?;
    let branch = geom.axial_branch();
    let c = geom.c(branch);
    let l = geom.l as i64;
    let parts: Vec<SurfaceFunction> = (-l..l)
        .into_par_iter()
        .map(|j| {
            let sigma = branch.sign() * kappa * c * j as f64;
            seed.shifted(make_transform(geom, branch, j)).scale(Complex64::from_polar(1.0, -sigma))
        })
        .collect();
    let mut acc = SurfaceFunction::zeros(*seed.grid());
    for part in &parts {
        acc = acc.zip_with(part, |a, b| a + b)?;
    }
    Ok(acc)
}

/// `∫ conj(f) g dA` over the whole finite tube.
pub fn overlap_integral(f: &SurfaceFunction, g: &SurfaceFunction) -> Result<Complex64> {
    f.check_same_grid(g)?;
    let sum: Complex64 = f.values().iter().zip(g.values()).map(|(a, b)| a.conj() * b).sum();
    Ok(sum * f.grid().cell_area())
}

/// `Σ_{l=−L}^{L−1} e^{iπ(μ−ν)l/L}`: `2L` when `μ ≡ ν (mod 2L)`, otherwise 0.
pub fn cyclic_phase_sum(mu: i64, nu: i64, l: usize) -> Complex64 {
    let li = l as i64;
    (-li..li).map(|j| Complex64::from_polar(1.0, std::f64::consts::PI * ((mu - nu) * j) as f64 / l as f64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ChiralSpec, GRAPHENE_LATTICE_CONSTANT};
    use crate::reciprocal::{reciprocal_transform, reciprocal_tube, sample_kappa};
    use crate::transforms::Sublattice;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    const A: f64 = GRAPHENE_LATTICE_CONSTANT;

    fn tube(n: i64, m: i64, l: usize) -> TubeGeometry {
        TubeGeometry::with_half_count(&ChiralSpec::new(n, m).unwrap(), l).unwrap()
    }

    #[test]
    fn phases_basic() {
        let g = tube(5, 5, 4);
        let k = KPoint::new(0.1, 0.7);
        let r = TubePoint::new(0.2, 1.3);
        let p0 = bloch_phases(&g, k, r, 0, Branch::Plus).unwrap();
        assert_eq!((p0.sigma, p0.eta), (0.0, 0.0));
        assert_eq!(p0.lambda, Complex64::new(1.0, 0.0));
        let p1 = bloch_phases(&g, k, r, 1, Branch::Plus).unwrap();
        assert!((p1.sigma - 0.7 * A / 2.0).abs() < 1e-15);
        assert!((p1.eta - 4.0 * PI * 1.3 / A).abs() < 1e-12);
        let p2 = bloch_phases(&g, k, r, 2, Branch::Minus).unwrap();
        let p1m = bloch_phases(&g, k, r, 1, Branch::Minus).unwrap();
        assert!((p2.sigma - 2.0 * p1m.sigma).abs() < 1e-15);
        assert!((p2.lambda.norm() - 1.0).abs() < 1e-15 && (p2.mu.norm() - 1.0).abs() < 1e-15);
        let z = tube(5, 0, 2);
        assert_eq!(bloch_phases(&z, k, r, 1, Branch::Plus), Err(Error::RotationOnlyBranch));
    }

    #[test]
    fn inner_product_values() {
        assert!((phase_inner(KPoint::new(0.4, 2.0), TubePoint::new(0.4, 0.0)) - PI).abs() < 1e-15);
        assert!(phase_inner(KPoint::new(0.0, 2.0), TubePoint::new(PI / 2.0, 0.0)).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn transformed_inner_product(j in -6i64..6, theta in 0.0..TAU, z in -5.0..5.0f64,
                                     tau in -0.5..0.5f64, kappa in -2.0..2.0f64, plus in proptest::bool::ANY) {
            let g = tube(4, 2, 2);
            let rt = reciprocal_tube(&g);
            let b = if plus { Branch::Plus } else { Branch::Minus };
            let r = TubePoint::new(theta, z);
            let k = KPoint::new(tau, kappa);
            let tr = make_transform(&g, b, j).apply(r);
            let tk_t = reciprocal_transform(&rt, b, j);
            let tk = KPoint::new(tau + tk_t.dtheta, kappa + tk_t.dz);
            let c = g.c(b);
            let jf = j as f64;
            let want = b.sign() * (c * kappa * jf + TAU * z * jf / c) + TAU * jf * jf;
            let got = phase_inner(tk, tr) - phase_inner(k, r);
            prop_assert!((got - want).abs() < 1e-9 * (1.0 + want.abs()));
        }

        #[test]
        fn phase_additivity(j in -20i64..20, l in -20i64..20, kappa in -3.0..3.0f64, z in -9.0..9.0f64) {
            let g = tube(7, 3, 1);
            let k = KPoint::new(0.0, kappa);
            let r = TubePoint::new(0.0, z);
            for b in [Branch::Plus, Branch::Minus] {
                let a = bloch_phases(&g, k, r, j, b).unwrap();
                let c = bloch_phases(&g, k, r, l, b).unwrap();
                let s = bloch_phases(&g, k, r, j + l, b).unwrap();
                prop_assert!((s.sigma - a.sigma - c.sigma).abs() < 1e-10);
                prop_assert!((s.eta - a.eta - c.eta).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn cyclic_sums() {
        assert!((cyclic_phase_sum(2, 2, 4) - Complex64::new(8.0, 0.0)).norm() < 1e-12);
        for mu in -4..4 {
            for nu in -4..4 {
                if mu != nu {
                    assert!(cyclic_phase_sum(mu, nu, 4).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn zero_kappa_sum_is_plain_sum() {
        let g = tube(3, 3, 1);
        let grid = SurfaceGrid::finite_tube(&g, 32, 16).unwrap();
        let orb = ModelOrbital::for_sublattice(&g, Sublattice::A);
        let phi = bloch_sum(&g, &grid, &orb, 0.0).unwrap();
        assert!(phi.values().iter().all(|v| v.im.abs() < 1e-15));
        // Hand expansion: N = 6 cells, plain average of translated orbitals.
        let p = grid.point(5, 3);
        let mut want = 0.0;
        for c in enumerate_cells(&g) {
            want += orb.value(&grid, c.transform(&g).apply(p));
        }
        want /= 6f64.sqrt();
        assert!((phi.get(5, 3).re - want).abs() < 1e-14);
    }

    #[test]
    fn single_ring_two_term_sum() {
        // (1,1) with L = 1: two cells j = 0, 1, phases 1 and e^{−iκc₊}.
        let g = tube(1, 1, 1);
        let grid = SurfaceGrid::finite_tube(&g, 16, 16).unwrap();
        let orb = ModelOrbital::for_sublattice(&g, Sublattice::A);
        let kappa = sample_kappa(&g, 1).unwrap()[0];
        let phi = bloch_sum(&g, &grid, &orb, kappa).unwrap();
        let p = grid.point(3, 9);
        let t1 = make_transform(&g, Branch::Plus, 1);
        let want = (Complex64::new(orb.value(&grid, p), 0.0)
            + Complex64::from_polar(1.0, -kappa * g.c_plus) * orb.value(&grid, t1.apply(p)))
            / 2f64.sqrt();
        assert!((phi.get(3, 9) - want).norm() < 1e-14);
    }

    #[test]
    fn grid_must_belong_to_the_tube() {
        let g = tube(4, 2, 2);
        let other = tube(4, 2, 3);
        let grid = SurfaceGrid::finite_tube(&other, 16, 16).unwrap();
        let orb = ModelOrbital::for_sublattice(&g, Sublattice::A);
        assert_eq!(bloch_sum(&g, &grid, &orb, 0.0), Err(Error::GridMismatch));
        let f = SurfaceFunction::zeros(grid);
        let h = SurfaceFunction::zeros(SurfaceGrid::finite_tube(&g, 16, 16).unwrap());
        assert_eq!(overlap_integral(&f, &h), Err(Error::GridMismatch));
    }

    #[test]
    fn chiral_bloch_law_both_families() {
        let g = tube(4, 2, 3);
        let grid = SurfaceGrid::finite_tube(&g, 64, 64).unwrap();
        let orb = ModelOrbital::for_sublattice(&g, Sublattice::B);
        for kappa in sample_kappa(&g, 3).unwrap() {
            let phi = bloch_sum(&g, &grid, &orb, kappa).unwrap();
            assert!(verify_bloch_property(&phi, &g, kappa, Branch::Plus, 0) < 1e-14);
            for (b, l) in [(Branch::Plus, 1), (Branch::Minus, 1), (Branch::Plus, -2)] {
                let res = verify_bloch_property(&phi, &g, kappa, b, l);
                assert!(res < 1e-10, "κ={kappa} {b:?} l={l}: {res}");
            }
        }
    }

    #[test]
    fn naive_periodicity_of_u_fails() {
        let g = tube(5, 5, 4);
        let grid = SurfaceGrid::finite_tube(&g, 64, 64).unwrap();
        let orb = ModelOrbital::for_sublattice(&g, Sublattice::A);
        let kappa = sample_kappa(&g, 4).unwrap()[5];
        let phi = bloch_sum(&g, &grid, &orb, kappa).unwrap();
        let k = KPoint::new(0.0, kappa);
        let u = phi.map_with_point(|p, v| v * Complex64::from_polar(1.0, -phase_inner(k, p)));
        let t = make_transform(&g, Branch::Plus, 1);
        let diff = u.shifted(t).max_diff(&u).unwrap();
        assert!(diff > 0.1 * u.max_abs(), "{diff}");
    }

    #[test]
    fn cyclic_eigenfunction_two_terms() {
        let g = tube(2, 1, 1);
        let grid = SurfaceGrid::finite_tube(&g, 32, 32).unwrap();
        let seed = ModelOrbital::for_sublattice(&g, Sublattice::A).sample(&grid);
        let kappa = sample_kappa(&g, 1).unwrap()[0];
        let psi = cyclic_eigenfunction(&seed, &g, kappa).unwrap();
        // j = −1, 0: Ψ = e^{iκc₊} seed(T_{−1} r) + seed(r)
        let tm = make_transform(&g, Branch::Plus, -1);
        let want = seed.shifted(tm).scale(Complex64::from_polar(1.0, kappa * g.c_plus));
        let want = want.zip_with(&seed, |a, b| a + b).unwrap();
        assert!(psi.max_diff(&want).unwrap() < 1e-14);
    }
    #[test]
    fn off_grid_kappa_breaks_closure() {
        let g = tube(5, 5, 4);
        let grid = SurfaceGrid::finite_tube(&g, 64, 64).unwrap();
        let orb = ModelOrbital::for_sublattice(&g, Sublattice::A);
        let ks = sample_kappa(&g, 4).unwrap();
        let mid = 0.5 * (ks[2] + ks[3]);
        let phi = bloch_sum(&g, &grid, &orb, mid).unwrap();
        let res = verify_bloch_property(&phi, &g, mid, Branch::Plus, 1);
        assert!(res >= 0.1, "{res}");
    }

    #[test]
    fn cyclic_eigenfunctions_are_orthogonal() {
        let g = tube(4, 2, 2);
        let grid = SurfaceGrid::finite_tube(&g, 32, 64).unwrap();
        let seed = ModelOrbital::for_sublattice(&g, Sublattice::B).sample(&grid);
        let psis: Vec<_> =
            sample_kappa(&g, 2).unwrap().into_iter().map(|k| cyclic_eigenfunction(&seed, &g, k).unwrap()).collect();
        for (mu, a) in psis.iter().enumerate() {
            let norm = overlap_integral(a, a).unwrap();
            assert!(norm.re > 0.0 && norm.im.abs() < 1e-12 * norm.re);
            for b in &psis[mu + 1..] {
                assert!(overlap_integral(a, b).unwrap().norm() < 1e-8 * norm.re);
            }
        }
    }
    #[test]
    fn resolving_grid_keeps_bloch_law_on_wide_tubes() {
        for (n, m) in [(10, 10), (8, 3), (9, 0)] {
            let g = tube(n, m, 2);
            let orb = ModelOrbital::for_sublattice(&g, Sublattice::A);
            let grid = SurfaceGrid::resolving(&g, orb.width).unwrap();
            let k = sample_kappa(&g, 2).unwrap()[1];
            let phi = bloch_sum(&g, &grid, &orb, k).unwrap();
            let res = verify_bloch_property(&phi, &g, k, g.axial_branch(), 1);
            assert!(res < 1e-10, "({n},{m}) {}x{}: {res}", grid.n_theta, grid.n_z);
        }
    }
}
