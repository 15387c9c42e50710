//! Localized model orbital used to build Bloch sums.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{reduce_displacement, SurfaceFunction, SurfaceGrid};
use crate::geometry::TubeGeometry;
use crate::transforms::{sublattice_offset, Sublattice, TubePoint};

/// Gaussian tails beyond this many widths are dropped.
const CUTOFF_WIDTHS: f64 = 8.0;

/// Periodic Gaussian bump `N exp(−d²/2w²)` on the tube surface, where `d` is
/// the unrolled (arc length, axial) distance to the nearest torus image of
/// the centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelOrbital {
    pub center: TubePoint,
    pub width: f64,
    pub normalization: f64,
}

impl ModelOrbital {
    /// `L²`-normalized Gaussian: `N = 1/(w √π)`.
    pub fn gaussian(center: TubePoint, width: f64) -> Self {
        ModelOrbital { center, width, normalization: 1.0 / (width * PI.sqrt()) }
    }

    /// Orbital on the unit-cell atom of `sublattice`, width `0.3 a`.
    pub fn for_sublattice(geom: &TubeGeometry, sublattice: Sublattice) -> Self {
        Self::gaussian(sublattice_offset(geom, sublattice), 0.3 * geom.spec.a)
    }

    /// Value at `at` with the centre moved to `center`, summed over every torus
    /// image within the cutoff.
    pub(crate) fn value_centered(&self, grid: &SurfaceGrid, center: TubePoint, at: TubePoint) -> f64 {
        let w = self.width;
        let cut = CUTOFF_WIDTHS * w;
        let cut2 = cut * cut;
        let (turn, screw) = grid.unrolled_periods();
        let (x0, z0) = reduce_displacement(grid, grid.r_t * (at.theta - center.theta), at.z - center.z);
        let kz = ((cut + 0.5 * screw[1]) / screw[1]).ceil() as i64;
        let kx = ((cut + 0.5 * turn[0]) / turn[0]).ceil() as i64;
        let mut acc = 0.0;
        for i in -kz..=kz {
            let xs = x0 + i as f64 * screw[0];
            let zs = z0 + i as f64 * screw[1];
            if zs.abs() > cut {
                continue;
            }
            let xs = xs - (xs / turn[0]).round() * turn[0];
            for j in -kx..=kx {
                let x = xs + j as f64 * turn[0];
                let d2 = x * x + zs * zs;
                if d2 < cut2 {
                    acc += (-0.5 * d2 / (w * w)).exp();
                }
            }
        }
        self.normalization * acc
    }

    pub fn value(&self, grid: &SurfaceGrid, at: TubePoint) -> f64 {
        self.value_centered(grid, self.center, at)
    }

    pub fn sample(&self, grid: &SurfaceGrid) -> SurfaceFunction {
        SurfaceFunction::from_fn(*grid, |p| Complex64::new(self.value(grid, p), 0.0))
    }
}
