//! Two-band tight-binding model on the tube: Hamiltonian and overlap matrices
//! in the first and second nearest-neighbour approximations, the secular
//! equation and κ sweeps.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Branch, TubeGeometry, GRAPHENE_LATTICE_CONSTANT};
use crate::reciprocal::sample_kappa;
use crate::transforms::{distance, site, AtomSite, CellIndex, Sublattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HoppingModel {
    /// Constant hopping per shell.
    Flat,
    /// `−t0 (d_ref/d)^β · max(n̂_i·n̂_j, 0)` with the 3D chord distance `d`.
    CurvatureAware,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TBParams {
    pub eps_2p: f64,
    pub t1: f64,
    pub t2: f64,
    pub s1: f64,
    pub s2: f64,
    pub model: HoppingModel,
    pub t0: f64,
    pub d_ref: f64,
    pub beta: f64,
}

impl Default for TBParams {
    fn default() -> Self {
        TBParams {
            eps_2p: 0.0,
            t1: 2.7,
            t2: 0.1,
            s1: 0.1,
            s2: 0.0,
            model: HoppingModel::Flat,
            t0: 2.7,
            d_ref: GRAPHENE_LATTICE_CONSTANT / 3f64.sqrt(),
            beta: 2.0,
        }
    }
}

fn bad(field: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { field: field.to_string(), reason: reason.into() }
}

impl TBParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_2p", self.eps_2p),
            ("t1", self.t1),
            ("t2", self.t2),
            ("s1", self.s1),
            ("s2", self.s2),
            ("t0", self.t0),
            ("d_ref", self.d_ref),
            ("beta", self.beta),
        ] {
            if !v.is_finite() {
                return Err(bad(name, "must be finite"));
            }
        }
        if self.t1 <= 0.0 {
            return Err(bad("t1", "must be > 0"));
        }
        if self.s1.abs() >= 1.0 {
            return Err(bad("s1", "must satisfy |s1| < 1"));
        }
        if self.beta < 0.0 {
            return Err(bad("beta", "must be >= 0"));
        }
        if self.d_ref <= 0.0 {
            return Err(bad("d_ref", "must be > 0"));
        }
        Ok(())
    }

    /// Parse a JSON object with any subset of the field names; missing fields
    /// keep their defaults. Errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| bad("<document>", e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| bad("<document>", "expected a JSON object"))?;
        let mut p = TBParams::default();
        for (key, v) in obj {
            let num = || v.as_f64().ok_or_else(|| bad(key, format!("expected a number, got {v}")));
            match key.as_str() {
                "eps_2p" => p.eps_2p = num()?,
                "t1" => p.t1 = num()?,
                "t2" => p.t2 = num()?,
                "s1" => p.s1 = num()?,
                "s2" => p.s2 = num()?,
                "t0" => p.t0 = num()?,
                "d_ref" => p.d_ref = num()?,
                "beta" => p.beta = num()?,
                "model" => {
                    p.model = match v.as_str().map(|s| s.to_ascii_lowercase()) {
                        Some(s) if s == "flat" => HoppingModel::Flat,
                        Some(s) if s == "curvature_aware" || s == "curvatureaware" => HoppingModel::CurvatureAware,
                        _ => return Err(bad(key, format!("expected \"flat\" or \"curvature_aware\", got {v}"))),
                    }
                }
                _ => return Err(bad(key, "unknown field")),
            }
        }
        p.validate()?;
        Ok(p)
    }
}

// Neighbour windows in units of d_ref: first shell at 1, second at √3,
// third (opposite sublattice) at 2.
const SHELL1_MAX: f64 = 1.5;
const SHELL2_MAX: f64 = 2.5;

/// Hopping integral between two sites that are shell-1 or shell-2 neighbours.
pub fn hopping_value(site_i: &AtomSite, site_j: &AtomSite, params: &TBParams, shell: u8) -> Result<f64> {
    let d = distance(&site_i.position, &site_j.position);
    let same = site_i.sublattice == site_j.sublattice;
    let is_neighbor = match shell {
        1 => !same && d > 0.0 && d <= SHELL1_MAX * params.d_ref,
        2 => same && d > 0.0 && d <= SHELL2_MAX * params.d_ref,
        _ => return Err(Error::InvalidShellCount(shell as usize)),
    };
    if !is_neighbor {
        return Err(Error::NotNeighbors { shell, distance: d });
    }
    Ok(match params.model {
        HoppingModel::Flat => {
            if shell == 1 {
                -params.t1
            } else {
                -params.t2
            }
        }
        HoppingModel::CurvatureAware => {
            let (ni, nj) = (site_i.point.normal(), site_j.point.normal());
            let align = (ni[0] * nj[0] + ni[1] * nj[1] + ni[2] * nj[2]).clamp(0.0, 1.0);
            -params.t0 * (params.d_ref / d).powf(params.beta) * align
        }
    })
}

/// Cells of the `A` atoms bonded to `B` in cell `(0,0)`.
pub const FIRST_SHELL_CELLS: [CellIndex; 3] =
    [CellIndex { s: 0, j: 0 }, CellIndex { s: 0, j: 1 }, CellIndex { s: 1, j: 0 }];

/// Cells of the `B` atoms bonded to `A` in cell `(0,0)`.
pub const FIRST_SHELL_CELLS_CONJ: [CellIndex; 3] =
    [CellIndex { s: 0, j: 0 }, CellIndex { s: 0, j: -1 }, CellIndex { s: -1, j: 0 }];

/// Same-sublattice neighbours: `±a₊`, `±a₋`, `±(a₊ − a₋)`.
pub const SECOND_SHELL_CELLS: [CellIndex; 6] = [
    CellIndex { s: 0, j: 1 },
    CellIndex { s: 1, j: 0 },
    CellIndex { s: -1, j: 0 },
    CellIndex { s: 0, j: -1 },
    CellIndex { s: -1, j: 1 },
    CellIndex { s: 1, j: -1 },
];

/// Hamiltonian and overlap at one κ; index 0 is sublattice `A`, 1 is `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HSMatrices {
    pub h: [[Complex64; 2]; 2],
    pub s: [[Complex64; 2]; 2],
    pub kappa: f64,
}

fn cell_z(geom: &TubeGeometry, c: CellIndex) -> f64 {
    c.j as f64 * geom.c(Branch::Plus) - c.s as f64 * geom.c(Branch::Minus)
}

fn phase(geom: &TubeGeometry, kappa: f64, c: CellIndex) -> Complex64 {
    Complex64::from_polar(1.0, kappa * cell_z(geom, c))
}

/// `Σ_c (hop, overlap) e^{iκ z_c}` from `from(0,0)` to `to(c)`.
fn shell_sum(
    geom: &TubeGeometry,
    params: &TBParams,
    kappa: f64,
    from: Sublattice,
    to: Sublattice,
    cells: &[CellIndex],
    shell: u8,
) -> Result<(Complex64, Complex64)> {
    let origin = site(geom, CellIndex::new(0, 0), from);
    let overlap = if shell == 1 { params.s1 } else { params.s2 };
    let mut h = Complex64::new(0.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    for &c in cells {
        let other = site(geom, c, to);
        let t = hopping_value(&origin, &other, params, shell)?;
        let ph = phase(geom, kappa, c);
        h += t * ph;
        s += overlap * ph;
    }
    Ok((h, s))
}

pub fn build_hs_first_nn(geom: &TubeGeometry, params: &TBParams, kappa: f64) -> Result<HSMatrices> {
    let (h_ab, s_ab) = shell_sum(geom, params, kappa, Sublattice::B, Sublattice::A, &FIRST_SHELL_CELLS, 1)?;
    let (h_ba, s_ba) = shell_sum(geom, params, kappa, Sublattice::A, Sublattice::B, &FIRST_SHELL_CELLS_CONJ, 1)?;
    let eps = Complex64::new(params.eps_2p, 0.0);
    let one = Complex64::new(1.0, 0.0);
    Ok(HSMatrices { h: [[eps, h_ab], [h_ba, eps]], s: [[one, s_ab], [s_ba, one]], kappa })
}

pub fn build_hs_second_nn(geom: &TubeGeometry, params: &TBParams, kappa: f64) -> Result<HSMatrices> {
    let mut hs = build_hs_first_nn(geom, params, kappa)?;
    for (idx, sub) in [(0, Sublattice::A), (1, Sublattice::B)] {
        let (h, s) = shell_sum(geom, params, kappa, sub, sub, &SECOND_SHELL_CELLS, 2)?;
        hs.h[idx][idx] += h;
        hs.s[idx][idx] += s;
    }
    Ok(hs)
}

pub fn build_hs(geom: &TubeGeometry, params: &TBParams, kappa: f64, order: u8) -> Result<HSMatrices> {
    match order {
        1 => build_hs_first_nn(geom, params, kappa),
        2 => build_hs_second_nn(geom, params, kappa),
        _ => Err(Error::InvalidShellCount(order as usize)),
    }
}

/// Coefficients of `det(H − εS) = |S| ε² + Q ε + |H|`.
pub fn secular_coefficients(hs: &HSMatrices) -> (f64, f64, f64) {
    let (h, s) = (&hs.h, &hs.s);
    let det_s = (s[0][0] * s[1][1] - s[0][1] * s[1][0]).re;
    let det_h = (h[0][0] * h[1][1] - h[0][1] * h[1][0]).re;
    let q = (s[0][1] * h[1][0] + s[1][0] * h[0][1] - s[0][0] * h[1][1] - s[1][1] * h[0][0]).re;
    (det_s, q, det_h)
}

/// Roots `(ε₊, ε₋)` of the secular equation, `ε₊ ≥ ε₋`.
pub fn solve_secular(hs: &HSMatrices) -> Result<(f64, f64)> {
    let (det_s, q, det_h) = secular_coefficients(hs);
    // Written so that NaN entries are rejected too.
    let positive = |x: f64| x > 0.0;
    if !positive(det_s) || !positive(hs.s[0][0].re) {
        return Err(Error::OverlapNotPositive(det_s));
    }
    let mut disc = q * q - 4.0 * det_s * det_h;
    if disc < 0.0 {
        if disc < -1e-12 * (q * q).max(1.0) {
            return Err(Error::NegativeDiscriminant(disc));
        }
        disc = 0.0;
    }
    let root = disc.sqrt();
    // (−Q ± √D)/(2|S|), evaluated without cancellation.
    let w = -0.5 * (q + q.signum() * root);
    let (r1, r2) = if w == 0.0 {
        let r = -q / (2.0 * det_s);
        (r, r)
    } else {
        (w / det_s, det_h / w)
    };
    Ok((r1.max(r2), r1.min(r2)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandStructure {
    /// Grid labels; for a dense sweep these are plain sample indices.
    pub nu: Vec<i64>,
    pub kappas: Vec<f64>,
    pub eps_plus: Vec<f64>,
    pub eps_minus: Vec<f64>,
    pub q_values: Vec<f64>,
    pub gap: f64,
    pub gap_kappa: f64,
    /// False for a dense sweep that ignores the cyclic quantization of κ.
    pub quantized: bool,
}

fn sweep(
    geom: &TubeGeometry,
    params: &TBParams,
    nu: Vec<i64>,
    kappas: Vec<f64>,
    order: u8,
    quantized: bool,
) -> Result<BandStructure> {
    let rows: Vec<(f64, f64, f64)> = kappas
        .par_iter()
        .map(|&k| {
            let hs = build_hs(geom, params, k, order)?;
            let (p, m) = solve_secular(&hs)?;
            Ok((p, m, secular_coefficients(&hs).1))
        })
        .collect::<Result<_>>()?;
    let mut gap = f64::INFINITY;
    let mut gap_kappa = f64::NAN;
    for (i, r) in rows.iter().enumerate() {
        if r.0 - r.1 < gap {
            gap = r.0 - r.1;
            gap_kappa = kappas[i];
        }
    }
    Ok(BandStructure {
        nu,
        kappas,
        eps_plus: rows.iter().map(|r| r.0).collect(),
        eps_minus: rows.iter().map(|r| r.1).collect(),
        q_values: rows.iter().map(|r| r.2).collect(),
        gap,
        gap_kappa,
        quantized,
    })
}

/// Bands on the quantized grid `κ_ν`, `ν = −L … L−1`.
pub fn band_structure(geom: &TubeGeometry, params: &TBParams, l: usize, order: u8) -> Result<BandStructure> {
    if l < 2 {
        return Err(Error::InvalidHalfCount { got: l, min: 2 });
    }
    let kappas = sample_kappa(geom, l)?;
    let li = l as i64;
    sweep(geom, params, (-li..li).collect(), kappas, order, true)
}

/// Bands at arbitrary κ values, for smooth plots. Not cyclic.
pub fn band_structure_dense(
    geom: &TubeGeometry,
    params: &TBParams,
    kappas: &[f64],
    order: u8,
) -> Result<BandStructure> {
    sweep(geom, params, (0..kappas.len() as i64).collect(), kappas.to_vec(), order, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GapClass {
    MetalLike,
    Gapped,
}

pub const METAL_GAP_THRESHOLD: f64 = 1e-6;

pub fn band_gap(bands: &BandStructure) -> (f64, GapClass) {
    let class = if bands.gap < METAL_GAP_THRESHOLD { GapClass::MetalLike } else { GapClass::Gapped };
    (bands.gap, class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ChiralSpec;
    use crate::transforms::{atom_positions, neighbor_shells};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const A: f64 = GRAPHENE_LATTICE_CONSTANT;

    fn geom(n: i64, m: i64) -> TubeGeometry {
        TubeGeometry::with_half_count(&ChiralSpec::new(n, m).unwrap(), 3).unwrap()
    }

    fn plain(t1: f64, t2: f64) -> TBParams {
        TBParams { t1, t2, s1: 0.0, s2: 0.0, ..TBParams::default() }
    }

    #[test]
    fn flat_hopping_is_constant() {
        let g = geom(4, 2);
        let p = TBParams::default();
        let b = site(&g, CellIndex::new(0, 0), Sublattice::B);
        for c in FIRST_SHELL_CELLS {
            let a = site(&g, c, Sublattice::A);
            assert_eq!(hopping_value(&b, &a, &p, 1).unwrap(), -2.7);
        }
        let far = site(&g, CellIndex::new(0, 3), Sublattice::A);
        assert!(hopping_value(&b, &far, &p, 1).is_err());
        let same = site(&g, CellIndex::new(0, 1), Sublattice::B);
        assert!(hopping_value(&b, &same, &p, 1).is_err());
        assert_eq!(hopping_value(&b, &same, &p, 2).unwrap(), -0.1);
    }

    #[test]
    fn curvature_model_reference_point() {
        let p = TBParams { model: HoppingModel::CurvatureAware, ..TBParams::default() };
        let mk = |z: f64, sub| AtomSite {
            position: [0.0, 5.0, z],
            point: crate::transforms::TubePoint::new(0.0, z),
            sublattice: sub,
            cell: CellIndex::new(0, 0),
        };
        let t = hopping_value(&mk(0.0, Sublattice::A), &mk(p.d_ref, Sublattice::B), &p, 1).unwrap();
        assert!((t + p.t0).abs() < 1e-12);
    }

    #[test]
    fn zigzag_curvature_bonds_differ() {
        let g = geom(5, 0);
        let p = TBParams { model: HoppingModel::CurvatureAware, ..TBParams::default() };
        let b = site(&g, CellIndex::new(0, 0), Sublattice::B);
        let hop = |c| hopping_value(&b, &site(&g, c, Sublattice::A), &p, 1).unwrap();
        let (skew1, skew2, axial) = (hop(FIRST_SHELL_CELLS[0]), hop(FIRST_SHELL_CELLS[1]), hop(FIRST_SHELL_CELLS[2]));
        assert!((skew1 - skew2).abs() < 1e-12);
        // Axial bond keeps its flat length and parallel normals.
        assert!((axial + p.t0).abs() < 1e-12);
        // Skew bond: chord from the rolled flat offset (a/2 arc, a/(2√3) axial).
        let dtheta = PI / 5.0;
        let chord = ((2.0 * g.r_t * (dtheta / 2.0).sin()).powi(2) + (A / (2.0 * 3f64.sqrt())).powi(2)).sqrt();
        let expect = -p.t0 * (p.d_ref / chord).powi(2) * dtheta.cos();
        assert!((skew1 - expect).abs() < 1e-12);
    }

    #[test]
    fn shell_cells_match_neighbor_search() {
        for (n, m) in [(4, 2), (5, 5), (5, 0), (7, 3)] {
            let g = geom(n, m);
            let b = site(&g, CellIndex::new(0, 0), Sublattice::B);
            let atoms = atom_positions(&g);
            let table = neighbor_shells(&atoms, &g, 2).unwrap();
            let ib =
                atoms.iter().position(|x| x.cell == CellIndex::new(0, 0) && x.sublattice == Sublattice::B).unwrap();
            let mut want: Vec<f64> = FIRST_SHELL_CELLS
                .iter()
                .map(|&c| distance(&b.position, &site(&g, c, Sublattice::A).position))
                .collect();
            let mut got: Vec<f64> = table.first[ib].iter().map(|x| x.distance).collect();
            want.sort_by(f64::total_cmp);
            got.sort_by(f64::total_cmp);
            for (x, y) in want.iter().zip(&got) {
                assert!((x - y).abs() < 1e-9, "({n},{m})");
            }
            let mut want: Vec<f64> = SECOND_SHELL_CELLS
                .iter()
                .map(|&c| distance(&b.position, &site(&g, c, Sublattice::B).position))
                .collect();
            let mut got: Vec<f64> = table.second[ib].iter().map(|x| x.distance).collect();
            want.sort_by(f64::total_cmp);
            got.sort_by(f64::total_cmp);
            for (x, y) in want.iter().zip(&got) {
                assert!((x - y).abs() < 1e-9, "({n},{m})");
            }
        }
    }

    #[test]
    fn armchair_flat_offdiagonal() {
        let g = geom(5, 5);
        let p = plain(2.7, 0.1);
        for k in [-1.3, 0.0, 0.4, 2.2] {
            let hs = build_hs_first_nn(&g, &p, k).unwrap();
            let expect = -2.7 * (1.0 + 2.0 * (k * A / 2.0).cos());
            assert!((hs.h[0][1] - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
        let hs = build_hs_first_nn(&g, &p, 0.0).unwrap();
        assert!((hs.h[0][1].re + 3.0 * 2.7).abs() < 1e-12);
    }

    #[test]
    fn zigzag_flat_offdiagonal_modulus() {
        let g = geom(5, 0);
        let p = plain(2.7, 0.1);
        for k in [-1.4, -0.3, 0.0, 0.9] {
            let hs = build_hs_first_nn(&g, &p, k).unwrap();
            let expect = 2.7 * 2.7 * (5.0 + 4.0 * (k * 3f64.sqrt() * A / 2.0).cos());
            assert!((hs.h[0][1].norm_sqr() - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn second_shell_diagonals() {
        let p = plain(2.7, 0.13);
        let g = geom(4, 2);
        for k in [-0.8, 0.0, 0.35] {
            let hs = build_hs_second_nn(&g, &p, k).unwrap();
            let (cp, cm) = (g.c_plus, g.c_minus);
            let expect = -2.0 * 0.13 * ((k * cp).cos() + (k * cm).cos() + (k * (cp + cm)).cos());
            for d in 0..2 {
                assert!((hs.h[d][d] - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
            let first = build_hs_first_nn(&g, &p, k).unwrap();
            assert_eq!(hs.h[0][1], first.h[0][1]);
            assert_eq!(hs.h[1][0], first.h[1][0]);
        }
        let hs = build_hs_second_nn(&g, &p, 0.0).unwrap();
        assert!((hs.h[0][0].re + 6.0 * 0.13).abs() < 1e-12);
        let g = geom(5, 0);
        let k = 0.77;
        let hs = build_hs_second_nn(&g, &p, k).unwrap();
        let expect = -2.0 * 0.13 * (1.0 + 2.0 * (k * g.c_minus).cos());
        assert!((hs.h[1][1].re - expect).abs() < 1e-12 && hs.h[1][1].im.abs() < 1e-12);
    }

    #[test]
    fn secular_specializations() {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let (haa, hbb, hab) = (0.3, -0.4, Complex64::new(1.1, -0.7));
        let hs = HSMatrices {
            h: [[Complex64::new(haa, 0.0), hab], [hab.conj(), Complex64::new(hbb, 0.0)]],
            s: [[one, z], [z, one]],
            kappa: 0.0,
        };
        let (p, m) = solve_secular(&hs).unwrap();
        let r = ((haa - hbb).powi(2) + 4.0 * hab.norm_sqr()).sqrt();
        assert!((p - (haa + hbb + r) / 2.0).abs() < 1e-14);
        assert!((m - (haa + hbb - r) / 2.0).abs() < 1e-14);
        let mut hs2 = hs;
        hs2.h[0][1] = z;
        hs2.h[1][0] = z;
        assert_eq!(solve_secular(&hs2).unwrap(), (0.3, -0.4));
    }

    #[test]
    fn secular_rejects_bad_overlap_and_non_hermitian_input() {
        let one = Complex64::new(1.0, 0.0);
        let mut hs = HSMatrices {
            h: [[one, one], [one, one]],
            s: [[one, Complex64::new(1.5, 0.0)], [Complex64::new(1.5, 0.0), one]],
            kappa: 0.0,
        };
        assert!(matches!(solve_secular(&hs), Err(Error::OverlapNotPositive(_))));
        hs.s = [[one, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), one]];
        hs.h = [[one, Complex64::new(1.0, 0.0)], [Complex64::new(-1.0, 0.0), one]];
        assert!(matches!(solve_secular(&hs), Err(Error::NegativeDiscriminant(_))));
    }

    #[test]
    fn armchair_flat_bands_cross() {
        let g = geom(5, 5);
        let p = plain(2.7, 0.1);
        let bands = band_structure(&g, &p, 6, 1).unwrap();
        assert_eq!(bands.kappas.len(), 12);
        assert!(bands.gap < 1e-9);
        assert!((bands.gap_kappa.abs() - 4.0 * PI / (3.0 * A)).abs() < 1e-12);
        assert_eq!(band_gap(&bands).1, GapClass::MetalLike);
        for (i, k) in bands.kappas.iter().enumerate() {
            let f = 2.7 * (1.0 + 2.0 * (k * A / 2.0).cos());
            let (hi, lo) = (f.abs(), -f.abs());
            assert!((bands.eps_plus[i] - hi).abs() < 1e-12);
            assert!((bands.eps_minus[i] - lo).abs() < 1e-12);
        }
        let i0 = bands.nu.iter().position(|&v| v == 0).unwrap();
        assert!((bands.eps_plus[i0] - 3.0 * 2.7).abs() < 1e-12);
    }

    #[test]
    fn zigzag_flat_gap() {
        let g = geom(5, 0);
        let bands = band_structure(&g, &plain(2.7, 0.1), 6, 1).unwrap();
        assert!((bands.gap - 5.4).abs() < 1e-9);
        assert!((bands.gap_kappa + 2.0 * PI / (3f64.sqrt() * A)).abs() < 1e-12);
        assert_eq!(band_gap(&bands).1, GapClass::Gapped);
        // With the default overlap s1 the edge gap becomes 2 t1 / (1 − s1²).
        let bands = band_structure(&g, &TBParams::default(), 6, 1).unwrap();
        assert!((bands.gap - 5.4 / (1.0 - 0.01)).abs() < 1e-9);
    }

    #[test]
    fn degenerate_zero_hopping() {
        let g = geom(4, 2);
        let p = TBParams { t1: 0.0, s1: 0.0, ..TBParams::default() };
        let bands = band_structure(&g, &p, 3, 1).unwrap();
        assert!(bands.eps_plus.iter().zip(&bands.eps_minus).all(|(a, b)| (a - b).abs() < 1e-15));
        assert_eq!(band_gap(&bands), (0.0, GapClass::MetalLike));
    }

    #[test]
    fn band_structure_needs_two_half_steps() {
        assert!(band_structure(&geom(4, 2), &TBParams::default(), 1, 1).is_err());
        assert!(band_structure(&geom(4, 2), &TBParams::default(), 2, 3).is_err());
    }

    #[test]
    fn dense_sweep_is_flagged() {
        let b = band_structure_dense(&geom(5, 5), &TBParams::default(), &[0.0, 0.1, 0.2], 2).unwrap();
        assert!(!b.quantized);
        assert_eq!(b.nu, vec![0, 1, 2]);
    }

    #[test]
    fn params_json() {
        let p = TBParams::from_json(r#"{"t1": 3.0, "model": "curvature_aware"}"#).unwrap();
        assert_eq!(p.t1, 3.0);
        assert_eq!(p.model, HoppingModel::CurvatureAware);
        assert_eq!(p.s1, 0.1);
        let e = TBParams::from_json(r#"{"t1": "big"}"#).unwrap_err();
        assert!(e.to_string().contains("`t1`"));
        let e = TBParams::from_json(r#"{"s1": 1.2}"#).unwrap_err();
        assert!(e.to_string().contains("`s1`"));
        let e = TBParams::from_json(r#"{"gamma": 1}"#).unwrap_err();
        assert!(e.to_string().contains("`gamma`"));
        assert!(TBParams::from_json("{not json").is_err());
        let e = TBParams::from_json(r#"{"t1": 0}"#).unwrap_err();
        assert!(e.to_string().contains("`t1`"));
    }

    #[test]
    fn curvature_hoppings_approach_flat_limit() {
        let p = TBParams { model: HoppingModel::CurvatureAware, ..TBParams::default() };
        let shell2_flat = -p.t0 * (p.d_ref / A).powf(p.beta);
        // Shell 2 bonds nearly along the circumference bend the most; they reach
        // the 1e-3 band only from n = 150 on for zigzag-like tubes.
        for (n, m, shell2_n) in [(100, 100, true), (100, 0, false), (150, 0, true), (100, 37, false), (150, 56, true)] {
            let g = TubeGeometry::with_half_count(&ChiralSpec::new(n, m).unwrap(), 1).unwrap();
            let b = site(&g, CellIndex::new(0, 0), Sublattice::B);
            for c in FIRST_SHELL_CELLS {
                let t = hopping_value(&b, &site(&g, c, Sublattice::A), &p, 1).unwrap();
                assert!(((t + p.t0) / p.t0).abs() < 1e-3, "({n},{m}) shell 1: {t}");
            }
            if shell2_n {
                for c in SECOND_SHELL_CELLS {
                    let t = hopping_value(&b, &site(&g, c, Sublattice::B), &p, 2).unwrap();
                    assert!(((t - shell2_flat) / shell2_flat).abs() < 1e-3, "({n},{m}) shell 2: {t}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn hermitian_and_particle_hole(n in 2i64..12, m0 in 0i64..12, t1 in 0.5..4.0f64, t2 in 0.0..0.5f64,
                                       s1 in -0.3..0.3f64, s2 in -0.1..0.1f64, eps in -1.0..1.0f64,
                                       curved in proptest::bool::ANY) {
            let m = m0.min(n);
            let g = TubeGeometry::with_half_count(&ChiralSpec::new(n, m).unwrap(), 3).unwrap();
            let model = if curved { HoppingModel::CurvatureAware } else { HoppingModel::Flat };
            let p = TBParams { eps_2p: eps, t1, t2, s1, s2, model, ..TBParams::default() };
            for k in sample_kappa(&g, 3).unwrap() {
                for order in [1u8, 2] {
                    let hs = build_hs(&g, &p, k, order).unwrap();
                    prop_assert!((hs.h[1][0] - hs.h[0][1].conj()).norm() < 1e-12);
                    prop_assert!((hs.s[1][0] - hs.s[0][1].conj()).norm() < 1e-12);
                    prop_assert!(hs.h[0][0].im.abs() < 1e-12 && hs.h[1][1].im.abs() < 1e-12);
                }
            }
            let flat = TBParams { eps_2p: 0.0, t1, s1: 0.0, s2: 0.0, model: HoppingModel::Flat, ..p };
            let b = band_structure(&g, &flat, 3, 1).unwrap();
            for (x, y) in b.eps_plus.iter().zip(&b.eps_minus) {
                prop_assert!((x + y).abs() < 1e-12);
            }
        }
    }
}
