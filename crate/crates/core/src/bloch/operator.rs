//! Schrödinger operator on the tube surface and its Bloch-reduced form.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::SurfaceFunction;
use crate::geometry::TubeGeometry;
use crate::reciprocal::KPoint;
use crate::transforms::TubePoint;

/// `ħ²/2mₑ` in eV·Å².
pub const HBAR2_OVER_2M: f64 = 3.80998;

pub type Potential = Arc<dyn Fn(TubePoint) -> f64 + Send + Sync>;

/// Kinetic prefactor and potential of `H = −(ħ²/2m) Δ + V`.
#[derive(Clone)]
pub struct SchrodingerConfig {
    pub kinetic_prefactor: f64,
    pub potential: Potential,
}

impl std::fmt::Debug for SchrodingerConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SchrodingerConfig").field("kinetic_prefactor", &self.kinetic_prefactor).finish_non_exhaustive()
    }
}

impl SchrodingerConfig {
    pub fn free() -> Self {
        Self::with_potential(|_| 0.0)
    }

    pub fn with_potential<F>(v: F) -> Self
    where
        F: Fn(TubePoint) -> f64 + Send + Sync + 'static,
    {
        SchrodingerConfig { kinetic_prefactor: HBAR2_OVER_2M, potential: Arc::new(v) }
    }

    fn add_potential(&self, kinetic: SurfaceFunction, u: &SurfaceFunction) -> SurfaceFunction {
        let pref = self.kinetic_prefactor;
        let grid = *u.grid();
        let nt = grid.n_theta;
        let vals = (0..grid.len())
            .map(|idx| {
                let p = grid.point(idx % nt, idx / nt);
                -pref * kinetic.values()[idx] + (self.potential)(p) * u.values()[idx]
            })
            .collect();
        SurfaceFunction::from_values(grid, vals).expect("same grid")
    }
}

/// Potential with the full rotation-translation symmetry of the tube:
/// `v0 Σ cos(G·x)` over the reciprocal vectors dual to the rolled lattice
/// vectors `(r_t α₊, c₊)` and `(r_t α₋, −c₋)`, plus an optional
/// symmetry-breaking term `δ cos θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePotential {
    pub r_t: f64,
    pub g1: [f64; 2],
    pub g2: [f64; 2],
    pub v0: f64,
    pub delta: f64,
}

impl LatticePotential {
    pub fn new(geom: &TubeGeometry, v0: f64) -> Self {
        let a1 = [geom.r_t * geom.alpha_plus, geom.c_plus];
        let a2 = [geom.r_t * geom.alpha_minus, -geom.c_minus];
        let det = a1[0] * a2[1] - a1[1] * a2[0];
        LatticePotential {
            r_t: geom.r_t,
            g1: [TAU * a2[1] / det, -TAU * a2[0] / det],
            g2: [-TAU * a1[1] / det, TAU * a1[0] / det],
            v0,
            delta: 0.0,
        }
    }

    pub fn with_asymmetry(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn value(&self, p: TubePoint) -> f64 {
        let x = [self.r_t * p.theta, p.z];
        let dot = |g: [f64; 2]| g[0] * x[0] + g[1] * x[1];
        let g3 = [self.g1[0] + self.g2[0], self.g1[1] + self.g2[1]];
        self.v0 * (dot(self.g1).cos() + dot(self.g2).cos() + dot(g3).cos()) + self.delta * p.theta.cos()
    }

    pub fn config(self) -> SchrodingerConfig {
        SchrodingerConfig::with_potential(move |p| self.value(p))
    }
}

/// `H f = −(ħ²/2m)((1/r_t²) ∂θθ + ∂zz) f + V f`.
pub fn hamiltonian_apply(f: &SurfaceFunction, cfg: &SchrodingerConfig) -> SurfaceFunction {
    let r2 = f.grid().r_t.powi(2);
    let ftt = f.d_theta2();
    let fzz = f.d_z2();
    let lap = ftt.zip_with(&fzz, |a, b| a / r2 + b).expect("same grid");
    cfg.add_potential(lap, f)
}

/// `−(ħ²/2m) ∇̃u + V u`, the operator acting on the periodic factor `u` of
/// `ψ = e^{i k·r} u` with `k·r = π cos(θ − τ) + κ z`:
///
/// `∇̃ = (1/r_t²)∂θθ + ∂zz + (2πi/r_t²) sin(τ−θ) ∂θ + 2iκ ∂z
///      − (π/r_t²)[i cos(τ−θ) + π sin²(τ−θ)] − κ²`.
pub fn modified_operator_apply(u: &SurfaceFunction, k: KPoint, cfg: &SchrodingerConfig) -> SurfaceFunction {
    let r2 = u.grid().r_t.powi(2);
    let (ut, utt, uz, uzz) = (u.d_theta(), u.d_theta2(), u.d_z(), u.d_z2());
    let i = Complex64::new(0.0, 1.0);
    let kappa = k.kappa;
    let nt = u.grid().n_theta;
    let grid = *u.grid();
    let vals: Vec<Complex64> = (0..grid.len())
        .map(|idx| {
            let p = grid.point(idx % nt, idx / nt);
            let (s, c) = (k.tau - p.theta).sin_cos();
            let zeroth = -(PI / r2) * (i * c + PI * s * s) - kappa * kappa;
            utt.values()[idx] / r2
                + uzz.values()[idx]
                + (TAU * i / r2) * s * ut.values()[idx]
                + 2.0 * i * kappa * uz.values()[idx]
                + zeroth * u.values()[idx]
        })
        .collect();
    let lap = SurfaceFunction::from_values(grid, vals).expect("same grid");
    cfg.add_potential(lap, u)
}

/// `e^{i k·r}` sampled on the grid of `like`.
pub fn plane_wave(like: &SurfaceFunction, k: KPoint) -> SurfaceFunction {
    SurfaceFunction::from_fn(*like.grid(), |p| Complex64::from_polar(1.0, super::phase_inner(k, p)))
}
