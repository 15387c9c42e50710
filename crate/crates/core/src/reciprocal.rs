//! Reciprocal tube, Brillouin hexagon, wave-vector domains and the κ grid.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Branch, CharacteristicVectors, SymmetryClass, TubeGeometry};
use crate::transforms::RotTranslation;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReciprocalTube {
    pub class: SymmetryClass,
    /// `π / r_t`.
    pub r_tilde: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub b_tilde_plus: [f64; 3],
    pub b_tilde_minus: [f64; 3],
    /// Arc components `α± r̃`.
    pub b_prime_plus: f64,
    pub b_prime_minus: f64,
    /// Axial components `2π/c₊` and `−2π/c₋` (zero for the zigzag rotation branch).
    pub b_dprime_plus: f64,
    pub b_dprime_minus: f64,
    /// Side length `|b₊|` of the unrolled reciprocal cell.
    pub a_tilde: f64,
}

pub fn reciprocal_tube(geom: &TubeGeometry) -> ReciprocalTube {
    let r_tilde = PI / geom.r_t;
    let b_dprime_plus = if geom.class == SymmetryClass::Zigzag { 0.0 } else { 2.0 * PI / geom.c_plus };
    let b_dprime_minus = -2.0 * PI / geom.c_minus;
    let (ap, am) = (geom.alpha_plus, geom.alpha_minus);
    let b_prime_plus = ap * r_tilde;
    ReciprocalTube {
        class: geom.class,
        r_tilde,
        alpha_plus: ap,
        alpha_minus: am,
        b_tilde_plus: [-r_tilde * ap.sin(), r_tilde * ap.cos(), b_dprime_plus],
        b_tilde_minus: [-r_tilde * am.sin(), r_tilde * am.cos(), b_dprime_minus],
        b_prime_plus,
        b_prime_minus: am * r_tilde,
        b_dprime_plus,
        b_dprime_minus,
        a_tilde: b_prime_plus.hypot(b_dprime_plus),
    }
}

impl ReciprocalTube {
    /// Unrolled reciprocal basis vectors `b± = ⟨b'±, b''±⟩`.
    pub fn flat_basis(&self) -> ([f64; 2], [f64; 2]) {
        ([self.b_prime_plus, self.b_dprime_plus], [self.b_prime_minus, self.b_dprime_minus])
    }

    /// Area of the parallelogram spanned by `b₊` and `b₋`.
    pub fn cell_area(&self) -> f64 {
        let (p, q) = self.flat_basis();
        (p[0] * q[1] - p[1] * q[0]).abs()
    }
}

/// Wave vector `(−r̃ sin τ, r̃ cos τ, κ)` on the reciprocal tube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KPoint {
    pub tau: f64,
    pub kappa: f64,
}

impl KPoint {
    pub fn new(tau: f64, kappa: f64) -> Self {
        KPoint { tau, kappa }
    }

    pub fn to_cartesian(&self, r_tilde: f64) -> [f64; 3] {
        [-r_tilde * self.tau.sin(), r_tilde * self.tau.cos(), self.kappa]
    }
}

fn dot3(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// Products `â_x · b̃_y` of real and reciprocal characteristic vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualProducts {
    pub plus_plus: f64,
    pub minus_minus: f64,
    pub plus_minus: f64,
    pub minus_plus: f64,
}

pub fn dual_products(cv: &CharacteristicVectors, rt: &ReciprocalTube) -> DualProducts {
    DualProducts {
        plus_plus: dot3(&cv.a_hat_plus, &rt.b_tilde_plus),
        minus_minus: dot3(&cv.a_hat_minus, &rt.b_tilde_minus),
        plus_minus: dot3(&cv.a_hat_plus, &rt.b_tilde_minus),
        minus_plus: dot3(&cv.a_hat_minus, &rt.b_tilde_plus),
    }
}

/// Closed-form values of the four products: `3π` on the diagonal and
/// `π cos(α₊−α₋) − 2π c±/c∓` off it. A term is `None` where the closed form
/// divides by `c₊ = 0` (zigzag).
pub fn dual_products_closed_form(geom: &TubeGeometry) -> [Option<f64>; 4] {
    let cross = PI * (geom.alpha_plus - geom.alpha_minus).cos();
    let minus_plus = if geom.c_plus > 0.0 { Some(cross - 2.0 * PI * geom.c_minus / geom.c_plus) } else { None };
    [Some(3.0 * PI), Some(3.0 * PI), Some(cross - 2.0 * PI * geom.c_plus / geom.c_minus), minus_plus]
}

/// Voronoi cell of the origin in the unrolled reciprocal lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrillouinHexagon {
    /// Counter-clockwise vertices in the `(x̃, z̃)` plane.
    pub vertices: Vec<[f64; 2]>,
    pub area: f64,
}

fn dot2(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[0] + u[1] * v[1]
}

fn cross2(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn sub2(u: [f64; 2], v: [f64; 2]) -> [f64; 2] {
    [u[0] - v[0], u[1] - v[1]]
}

/// Lagrange–Gauss reduction of a planar lattice basis.
fn gauss_reduce(mut u: [f64; 2], mut v: [f64; 2]) -> ([f64; 2], [f64; 2]) {
    if dot2(u, u) > dot2(v, v) {
        std::mem::swap(&mut u, &mut v);
    }
    for _ in 0..200 {
        let mu = (dot2(u, v) / dot2(u, u)).round();
        v = [v[0] - mu * u[0], v[1] - mu * u[1]];
        if dot2(v, v) >= dot2(u, u) {
            break;
        }
        std::mem::swap(&mut u, &mut v);
    }
    (u, v)
}

/// Keep the part of `poly` with `x·p ≤ |p|²/2`.
fn clip(poly: &[[f64; 2]], p: [f64; 2]) -> Vec<[f64; 2]> {
    let h = 0.5 * dot2(p, p);
    let f = |x: [f64; 2]| dot2(x, p) - h;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let cur = poly[i];
        let next = poly[(i + 1) % poly.len()];
        let (fc, fn_) = (f(cur), f(next));
        if fc <= 0.0 {
            out.push(cur);
        }
        if (fc < 0.0 && fn_ > 0.0) || (fc > 0.0 && fn_ < 0.0) {
            let t = fc / (fc - fn_);
            out.push([cur[0] + t * (next[0] - cur[0]), cur[1] + t * (next[1] - cur[1])]);
        }
    }
    out
}

fn shoelace(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    0.5 * (0..n).map(|i| cross2(poly[i], poly[(i + 1) % n])).sum::<f64>()
}

pub fn brillouin_zone(rt: &ReciprocalTube) -> Result<BrillouinHexagon> {
    let (b1, b2) = rt.flat_basis();
    let scale = dot2(b1, b1).sqrt().max(dot2(b2, b2).sqrt());
    let area = cross2(b1, b2).abs();
    if !(scale.is_finite() && area.is_finite()) || area <= 1e-12 * scale * scale {
        return Err(Error::DegenerateLattice);
    }
    let (u, v) = gauss_reduce(b1, b2);
    let big = 4.0 * (dot2(u, u).sqrt() + dot2(v, v).sqrt());
    let mut poly = vec![[-big, -big], [big, -big], [big, big], [-big, big]];
    for i in -2i32..=2 {
        for j in -2i32..=2 {
            if i == 0 && j == 0 {
                continue;
            }
            let p = [i as f64 * u[0] + j as f64 * v[0], i as f64 * u[1] + j as f64 * v[1]];
            poly = clip(&poly, p);
        }
    }
    let tol = 1e-10 * scale;
    let mut verts: Vec<[f64; 2]> = Vec::with_capacity(poly.len());
    for p in poly {
        if verts.last().is_none_or(|q| (p[0] - q[0]).hypot(p[1] - q[1]) > tol) {
            verts.push(p);
        }
    }
    while verts.len() > 1 {
        let (f, l) = (verts[0], verts[verts.len() - 1]);
        if (f[0] - l[0]).hypot(f[1] - l[1]) > tol {
            break;
        }
        verts.pop();
    }
    // Drop vertices lying on a straight edge.
    let mut changed = true;
    while changed && verts.len() > 3 {
        changed = false;
        let n = verts.len();
        for i in 0..n {
            let (prev, cur, next) = (verts[(i + n - 1) % n], verts[i], verts[(i + 1) % n]);
            let e1 = sub2(cur, prev);
            let e2 = sub2(next, cur);
            let norm = dot2(e1, e1).sqrt() * dot2(e2, e2).sqrt();
            if cross2(e1, e2).abs() <= 1e-10 * norm {
                verts.remove(i);
                changed = true;
                break;
            }
        }
    }
    // Start from the vertex with the smallest polar angle for a reproducible order.
    let angle = |p: &[f64; 2]| p[1].atan2(p[0]).rem_euclid(2.0 * PI);
    if let Some(start) = (0..verts.len()).min_by(|&a, &b| angle(&verts[a]).total_cmp(&angle(&verts[b]))) {
        verts.rotate_left(start);
    }
    let area = shoelace(&verts).abs();
    Ok(BrillouinHexagon { vertices: verts, area })
}

/// Which transformation family a domain belongs to. Armchair tubes share one box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainBranch {
    Plus,
    Minus,
    Shared,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum KappaRange {
    /// Half-open interval `[min, max)`.
    Interval { min: f64, max: f64 },
    /// The zigzag `+` family is a pure rotation: κ is an unconstrained constant.
    RotationOnly,
}

/// Half-open box `κ × τ` of admissible wave vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KDomain {
    pub kappa: KappaRange,
    pub tau_min: f64,
    pub tau_max: f64,
    pub branch: DomainBranch,
}

impl KDomain {
    pub fn kappa_bounds(&self) -> Option<(f64, f64)> {
        match self.kappa {
            KappaRange::Interval { min, max } => Some((min, max)),
            KappaRange::RotationOnly => None,
        }
    }

    pub fn is_rotation_only(&self) -> bool {
        matches!(self.kappa, KappaRange::RotationOnly)
    }

    pub fn contains(&self, k: &KPoint) -> bool {
        let tau_ok = k.tau >= self.tau_min && k.tau < self.tau_max;
        match self.kappa {
            KappaRange::Interval { min, max } => tau_ok && k.kappa >= min && k.kappa < max,
            KappaRange::RotationOnly => tau_ok,
        }
    }
}

pub fn k_domain(geom: &TubeGeometry, branch: Branch) -> KDomain {
    let alpha = geom.alpha(branch);
    let c = geom.c(branch);
    let tag = match (geom.class, branch) {
        (SymmetryClass::Armchair, _) => DomainBranch::Shared,
        (_, Branch::Plus) => DomainBranch::Plus,
        (_, Branch::Minus) => DomainBranch::Minus,
    };
    let kappa = if c > 0.0 { KappaRange::Interval { min: -PI / c, max: PI / c } } else { KappaRange::RotationOnly };
    KDomain { kappa, tau_min: -0.5 * alpha, tau_max: 0.5 * alpha, branch: tag }
}

/// Quantized axial wave numbers `κ_ν = πν/(L c)`, `ν = −L … L−1`, where `c` is
/// the axial step of the tube's translating family (`c₊`, or `c₋` for zigzag).
pub fn sample_kappa(geom: &TubeGeometry, l: usize) -> Result<Vec<f64>> {
    if l < 1 {
        return Err(Error::InvalidHalfCount { got: l, min: 1 });
    }
    let c = geom.c(geom.axial_branch());
    let li = l as i64;
    Ok((-li..li).map(|nu| kappa_nu(c, l, nu)).collect())
}

pub(crate) fn kappa_nu(c: f64, l: usize, nu: i64) -> f64 {
    PI * nu as f64 / (l as f64 * c)
}

/// `T̃_j^±`: rotation by `j α±` of the reciprocal tube combined with the axial
/// step `j b''±`.
pub fn reciprocal_transform(rt: &ReciprocalTube, branch: Branch, j: i64) -> RotTranslation {
    let jf = j as f64;
    match branch {
        Branch::Plus => RotTranslation::new(jf * rt.alpha_plus, jf * rt.b_dprime_plus),
        Branch::Minus => RotTranslation::new(jf * rt.alpha_minus, jf * rt.b_dprime_minus),
    }
}
