//! Periodic sample grids on the tube surface and spectral operations on them.
//!
//! A finite tube is a torus: `(θ, z) ~ (θ + 2π, z) ~ (θ + Θ, z + Z)` where the
//! second relation is the screw closing the tube. Samples sit on the sheared
//! lattice `θ = θ' + (Θ/Z) z`, in which both directions are plainly periodic,
//! so shifts and derivatives become diagonal in Fourier space.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::geometry::{Branch, TubeGeometry};
use crate::transforms::{period_transform, wrap_pi, RotTranslation, TubePoint};

const MIN_SAMPLES: usize = 8;
/// `k·w` at which a Gaussian's spectrum has dropped below roundoff.
const RESOLVE_KW: f64 = 8.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceGrid {
    pub n_theta: usize,
    pub n_z: usize,
    pub r_t: f64,
    /// Axial period `Z`.
    pub z_period: f64,
    /// Rotation `Θ ∈ (−π, π]` accompanying one axial period.
    pub twist: f64,
    /// Lower edge of the axial sample window; the window is `[z0, z0 + Z)`.
    pub z0: f64,
    /// Half-count `L` and translating family of the tube this grid closes, if any.
    pub l: usize,
    pub branch: Option<Branch>,
}

impl SurfaceGrid {
    /// Grid on the finite tube of `geom`, closed by its period screw.
    pub fn finite_tube(geom: &TubeGeometry, n_theta: usize, n_z: usize) -> Result<Self> {
        check_size(n_theta, n_z)?;
        let per = period_transform(geom);
        // Orient the period so that it advances along +z.
        let (z_period, twist) = if per.dz >= 0.0 { (per.dz, per.dtheta) } else { (-per.dz, -per.dtheta) };
        Ok(SurfaceGrid {
            n_theta,
            n_z,
            r_t: geom.r_t,
            z_period,
            twist: wrap_pi(twist),
            z0: -0.5 * z_period,
            l: geom.l,
            branch: Some(geom.axial_branch()),
        })
    }

    /// Finite-tube grid fine enough for spectral accuracy on features of
    /// width `width`: wave numbers up to `RESOLVE_KW / width` are kept in both
    /// the arc and (sheared) axial directions. Sizes are rounded up to a
    /// multiple of 16.
    pub fn resolving(geom: &TubeGeometry, width: f64) -> Result<Self> {
        let probe = Self::finite_tube(geom, MIN_SAMPLES, MIN_SAMPLES)?;
        let k = RESOLVE_KW / width;
        let round = |x: f64| ((x / 16.0).ceil() as usize * 16).max(16);
        let n_theta = round(2.0 * k * geom.r_t);
        let n_z = round(probe.z_period * k * (1.0 + probe.shear().abs() * geom.r_t) / PI);
        Self::finite_tube(geom, n_theta, n_z)
    }

    /// Untwisted cylinder segment of radius `r_t` with period `z_period`.
    pub fn plain(r_t: f64, z_period: f64, n_theta: usize, n_z: usize) -> Result<Self> {
        check_size(n_theta, n_z)?;
        Ok(SurfaceGrid { n_theta, n_z, r_t, z_period, twist: 0.0, z0: -0.5 * z_period, l: 0, branch: None })
    }

    pub fn len(&self) -> usize {
        self.n_theta * self.n_z
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Θ / Z`.
    pub fn shear(&self) -> f64 {
        self.twist / self.z_period
    }

    pub fn z_at(&self, q: usize) -> f64 {
        self.z0 + self.z_period * q as f64 / self.n_z as f64
    }

    /// Sample `(p, q)`: `p` runs around the tube, `q` along it.
    pub fn point(&self, p: usize, q: usize) -> TubePoint {
        let z = self.z_at(q);
        TubePoint::new(TAU * p as f64 / self.n_theta as f64 + self.shear() * z, z)
    }

    pub fn points(&self) -> Vec<TubePoint> {
        (0..self.n_z).flat_map(|q| (0..self.n_theta).map(move |p| self.point(p, q))).collect()
    }

    /// Area weight of one sample.
    pub fn cell_area(&self) -> f64 {
        self.r_t * TAU / self.n_theta as f64 * self.z_period / self.n_z as f64
    }

    /// Unrolled torus periods: the full turn `(2π r_t, 0)` and the screw `(r_t Θ, Z)`.
    pub fn unrolled_periods(&self) -> ([f64; 2], [f64; 2]) {
        ([TAU * self.r_t, 0.0], [self.r_t * self.twist, self.z_period])
    }

    fn same_as(&self, other: &SurfaceGrid) -> bool {
        self == other
    }
}

fn check_size(n_theta: usize, n_z: usize) -> Result<()> {
    if n_theta < MIN_SAMPLES || n_z < MIN_SAMPLES {
        return Err(Error::GridTooSmall(n_theta, n_z));
    }
    Ok(())
}

/// Signed frequency of FFT bin `i`, or `None` for the Nyquist bin of an even length.
fn frequency(i: usize, n: usize) -> Option<f64> {
    if n.is_multiple_of(2) && i == n / 2 {
        None
    } else if i <= n / 2 {
        Some(i as f64)
    } else {
        Some(i as f64 - n as f64)
    }
}

struct Plans {
    theta_fwd: Arc<dyn Fft<f64>>,
    theta_inv: Arc<dyn Fft<f64>>,
    z_fwd: Arc<dyn Fft<f64>>,
    z_inv: Arc<dyn Fft<f64>>,
}

impl Plans {
    fn new(grid: &SurfaceGrid) -> Self {
        let mut planner = FftPlanner::new();
        Plans {
            theta_fwd: planner.plan_fft_forward(grid.n_theta),
            theta_inv: planner.plan_fft_inverse(grid.n_theta),
            z_fwd: planner.plan_fft_forward(grid.n_z),
            z_inv: planner.plan_fft_inverse(grid.n_z),
        }
    }
}

fn fft2(grid: &SurfaceGrid, plans: &Plans, data: &mut [Complex64], inverse: bool) {
    let (nt, nz) = (grid.n_theta, grid.n_z);
    let (ft, fz) = if inverse { (&plans.theta_inv, &plans.z_inv) } else { (&plans.theta_fwd, &plans.z_fwd) };
    for row in data.chunks_exact_mut(nt) {
        ft.process(row);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); nz];
    for p in 0..nt {
        for q in 0..nz {
            col[q] = data[q * nt + p];
        }
        fz.process(&mut col);
        for q in 0..nz {
            data[q * nt + p] = col[q];
        }
    }
    if inverse {
        let scale = 1.0 / (nt * nz) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }
}

/// Complex samples of a function on a [`SurfaceGrid`], stored `z`-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceFunction {
    grid: SurfaceGrid,
    values: Vec<Complex64>,
}

impl SurfaceFunction {
    pub fn from_values(grid: SurfaceGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(SurfaceFunction { grid, values })
    }

    pub fn from_fn<F>(grid: SurfaceGrid, f: F) -> Self
    where
        F: Fn(TubePoint) -> Complex64 + Sync,
    {
        let values =
            (0..grid.len()).into_par_iter().map(|i| f(grid.point(i % grid.n_theta, i / grid.n_theta))).collect();
        SurfaceFunction { grid, values }
    }

    pub fn zeros(grid: SurfaceGrid) -> Self {
        SurfaceFunction { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn grid(&self) -> &SurfaceGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, p: usize, q: usize) -> Complex64 {
        self.values[q * self.grid.n_theta + p]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn check_same_grid(&self, other: &SurfaceFunction) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Pointwise combination `f(self, other)`.
    pub fn zip_with<F>(&self, other: &SurfaceFunction, f: F) -> Result<SurfaceFunction>
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        self.check_same_grid(other)?;
        Ok(SurfaceFunction {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    /// Pointwise map with access to the sample position.
    pub fn map_with_point<F>(&self, f: F) -> SurfaceFunction
    where
        F: Fn(TubePoint, Complex64) -> Complex64,
    {
        let nt = self.grid.n_theta;
        SurfaceFunction {
            grid: self.grid,
            values: self.values.iter().enumerate().map(|(i, v)| f(self.grid.point(i % nt, i / nt), *v)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> SurfaceFunction {
        SurfaceFunction { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Max-norm distance to `other`.
    pub fn max_diff(&self, other: &SurfaceFunction) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Apply a Fourier multiplier `m(k_θ, k_z)` where `k_θ` is the angular
    /// mode number and `k_z` the axial wave number `2π j / Z` of the sheared
    /// grid. Nyquist bins use the mean over both sign choices, which keeps
    /// the underlying trigonometric interpolant symmetric.
    pub fn apply_multiplier<M>(&self, m: M) -> SurfaceFunction
    where
        M: Fn(f64, f64) -> Complex64,
    {
        let g = &self.grid;
        let plans = Plans::new(g);
        let mut data = self.values.clone();
        fft2(g, &plans, &mut data, false);
        let kz_unit = TAU / g.z_period;
        let options = |i: usize, n: usize| -> [f64; 2] {
            match frequency(i, n) {
                Some(k) => [k, k],
                None => [n as f64 / 2.0, -(n as f64) / 2.0],
            }
        };
        for q in 0..g.n_z {
            let kz = options(q, g.n_z);
            for p in 0..g.n_theta {
                let kt = options(p, g.n_theta);
                let mut acc = Complex64::new(0.0, 0.0);
                for a in kt {
                    for b in kz {
                        acc += m(a, b * kz_unit);
                    }
                }
                data[q * g.n_theta + p] *= 0.25 * acc;
            }
        }
        fft2(g, &plans, &mut data, true);
        SurfaceFunction { grid: self.grid, values: data }
    }

    /// `g(r) = f(t r)`, by exact phase shifts of the trigonometric interpolant.
    pub fn shifted(&self, t: RotTranslation) -> SurfaceFunction {
        let dz = t.dz;
        let dtp = t.dtheta - self.grid.shear() * dz;
        self.apply_multiplier(|kt, kz| Complex64::from_polar(1.0, kt * dtp + kz * dz))
    }

    /// `∂/∂θ` at fixed `z`.
    pub fn d_theta(&self) -> SurfaceFunction {
        self.apply_multiplier(|kt, _| Complex64::new(0.0, kt))
    }

    /// `∂²/∂θ²` at fixed `z`.
    pub fn d_theta2(&self) -> SurfaceFunction {
        self.apply_multiplier(|kt, _| Complex64::new(-kt * kt, 0.0))
    }

    /// `∂/∂z` at fixed `θ`.
    pub fn d_z(&self) -> SurfaceFunction {
        let s = self.grid.shear();
        self.apply_multiplier(|kt, kz| Complex64::new(0.0, kz - s * kt))
    }

    /// `∂²/∂z²` at fixed `θ`.
    pub fn d_z2(&self) -> SurfaceFunction {
        let s = self.grid.shear();
        self.apply_multiplier(|kt, kz| {
            let k = kz - s * kt;
            Complex64::new(-k * k, 0.0)
        })
    }

    /// Trigonometric interpolation at an arbitrary surface point.
    pub fn evaluate(&self, at: TubePoint) -> Complex64 {
        let g = &self.grid;
        let plans = Plans::new(g);
        let mut data = self.values.clone();
        fft2(g, &plans, &mut data, false);
        let zp = at.z - g.z0;
        let tp = at.theta - g.shear() * at.z;
        let kz_unit = TAU / g.z_period;
        let basis = |i: usize, n: usize, x: f64, unit: f64| -> Complex64 {
            match frequency(i, n) {
                Some(k) => Complex64::from_polar(1.0, k * unit * x),
                None => Complex64::new((n as f64 / 2.0 * unit * x).cos(), 0.0),
            }
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for q in 0..g.n_z {
            let ez = basis(q, g.n_z, zp, kz_unit);
            for p in 0..g.n_theta {
                acc += data[q * g.n_theta + p] * ez * basis(p, g.n_theta, tp, 1.0);
            }
        }
        acc / (g.n_theta * g.n_z) as f64
    }
}

/// Reduce an unrolled displacement `(x, z)` to the image nearest the origin
/// along `z` first, then around the circumference.
pub(crate) fn reduce_displacement(grid: &SurfaceGrid, mut x: f64, mut z: f64) -> (f64, f64) {
    let (turn, screw) = grid.unrolled_periods();
    let k = (z / screw[1]).round();
    x -= k * screw[0];
    z -= k * screw[1];
    x -= (x / turn[0]).round() * turn[0];
    (x, z)
}
