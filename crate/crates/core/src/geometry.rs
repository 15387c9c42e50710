//! Closed-form geometry of a graphene sheet rolled along the chiral vector
//! `C_h = n a₊ + m a₋`.
//!
//! The flat lattice uses `a± = (a/2)⟨√3, ±1⟩`. After rolling, every flat
//! lattice vector `p a₊ + q a₋` becomes a rotation by `p α₊ + q α₋` about the
//! tube axis combined with an axial shift `p c₊ − q c₋`.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graphene lattice constant in Å.
pub const GRAPHENE_LATTICE_CONSTANT: f64 = 2.46;

/// Chiral indices of a tube plus the graphene lattice constant (Å).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiralSpec {
    pub n: i64,
    pub m: i64,
    pub a: f64,
}

impl ChiralSpec {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        Self::with_lattice_constant(n, m, GRAPHENE_LATTICE_CONSTANT)
    }

    pub fn with_lattice_constant(n: i64, m: i64, a: f64) -> Result<Self> {
        let spec = ChiralSpec { n, m, a };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 || self.m < 0 || self.m > self.n {
            return Err(Error::InvalidIndices { n: self.n, m: self.m });
        }
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Error::InvalidLatticeConstant(self.a));
        }
        Ok(())
    }

    /// `n² + nm + m²`.
    pub fn norm_sq(&self) -> i64 {
        self.n * self.n + self.m * self.m + self.n * self.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryClass {
    Armchair,
    Zigzag,
    Chiral,
}

impl std::fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SymmetryClass::Armchair => "armchair",
            SymmetryClass::Zigzag => "zigzag",
            SymmetryClass::Chiral => "chiral",
        };
        f.write_str(name)
    }
}

/// Selects one of the two rotation-translation families `T^+` / `T^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

pub fn classify(spec: &ChiralSpec) -> Result<SymmetryClass> {
    spec.validate()?;
    Ok(if spec.m == spec.n {
        SymmetryClass::Armchair
    } else if spec.m == 0 {
        SymmetryClass::Zigzag
    } else {
        SymmetryClass::Chiral
    })
}

/// The real-valued part of a tube geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeScalars {
    pub r_t: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub chord_plus: f64,
    pub chord_minus: f64,
}

fn chord(a: f64, theta: f64, r_t: f64, alpha: f64) -> f64 {
    let axial = a * theta.sin();
    let planar = 2.0 * r_t * (0.5 * alpha).sin();
    (axial * axial + planar * planar).sqrt()
}

/// The chiral-tube formulas, valid for every `0 <= m <= n`.
pub fn general_scalars(spec: &ChiralSpec) -> TubeScalars {
    let (n, m, a) = (spec.n as f64, spec.m as f64, spec.a);
    let norm_sq = spec.norm_sq() as f64;
    let norm = norm_sq.sqrt();
    let r_t = a * norm / (2.0 * PI);
    let theta_plus = ((2.0 * n + m) / (2.0 * norm)).clamp(-1.0, 1.0).acos();
    let theta_minus = ((n + 2.0 * m) / (2.0 * norm)).clamp(-1.0, 1.0).acos();
    let alpha_plus = PI * (2.0 * n + m) / norm_sq;
    let alpha_minus = PI * (n + 2.0 * m) / norm_sq;
    let c_plus = 3f64.sqrt() * m * a / (2.0 * norm);
    let c_minus = 3f64.sqrt() * n * a / (2.0 * norm);
    TubeScalars {
        r_t,
        theta_plus,
        theta_minus,
        alpha_plus,
        alpha_minus,
        c_plus,
        c_minus,
        chord_plus: chord(a, theta_plus, r_t, alpha_plus),
        chord_minus: chord(a, theta_minus, r_t, alpha_minus),
    }
}

fn armchair_scalars(spec: &ChiralSpec) -> TubeScalars {
    let (n, a) = (spec.n as f64, spec.a);
    let alpha = PI / n;
    let s = (PI / (2.0 * n)).sin();
    let chord = a * (0.25 + 3.0 * n * n / (PI * PI) * s * s).sqrt();
    TubeScalars {
        r_t: n * a * 3f64.sqrt() / (2.0 * PI),
        theta_plus: FRAC_PI_6,
        theta_minus: FRAC_PI_6,
        alpha_plus: alpha,
        alpha_minus: alpha,
        c_plus: 0.5 * a,
        c_minus: 0.5 * a,
        chord_plus: chord,
        chord_minus: chord,
    }
}

fn zigzag_scalars(spec: &ChiralSpec) -> TubeScalars {
    let (n, a) = (spec.n as f64, spec.a);
    let s = (PI / (2.0 * n)).sin();
    TubeScalars {
        r_t: n * a / (2.0 * PI),
        theta_plus: 0.0,
        theta_minus: FRAC_PI_3,
        alpha_plus: 2.0 * PI / n,
        alpha_minus: PI / n,
        c_plus: 0.0,
        c_minus: 3f64.sqrt() * a / 2.0,
        chord_plus: a * n / PI * (PI / n).sin(),
        chord_minus: a * (0.75 + n * n / (PI * PI) * s * s).sqrt(),
    }
}

/// Scalars through the class-specific closed forms (armchair and zigzag have
/// their own simplified expressions).
pub fn class_scalars(spec: &ChiralSpec) -> Result<TubeScalars> {
    Ok(match classify(spec)? {
        SymmetryClass::Armchair => armchair_scalars(spec),
        SymmetryClass::Zigzag => zigzag_scalars(spec),
        SymmetryClass::Chiral => general_scalars(spec),
    })
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The translation vector `T = t1 a₊ + t2 a₋` orthogonal to `C_h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TranslationVector {
    pub t1: i64,
    pub t2: i64,
    /// `gcd(n, m)`.
    pub d: i64,
    /// `gcd(2n + m, n + 2m)`.
    pub d_r: i64,
    /// `|T|` in Å.
    pub t_len: f64,
}

pub fn translation_vector(spec: &ChiralSpec) -> Result<TranslationVector> {
    spec.validate()?;
    let (n, m) = (spec.n, spec.m);
    let d_r = gcd(2 * n + m, n + 2 * m);
    let t_len = 3f64.sqrt() * spec.a * (spec.norm_sq() as f64).sqrt() / d_r as f64;
    Ok(TranslationVector { t1: (n + 2 * m) / d_r, t2: -(2 * n + m) / d_r, d: gcd(n, m), d_r, t_len })
}

/// Number of cells `N` must be a positive multiple of this value.
pub fn required_cell_multiple(spec: &ChiralSpec) -> Result<usize> {
    Ok(match classify(spec)? {
        SymmetryClass::Chiral => 2 * spec.m as usize,
        SymmetryClass::Armchair | SymmetryClass::Zigzag => 2 * spec.n as usize,
    })
}

/// Every derived quantity of a finite tube with `n_cells = N` hexagonal cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeGeometry {
    pub spec: ChiralSpec,
    pub class: SymmetryClass,
    pub r_t: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub chord_plus: f64,
    pub chord_minus: f64,
    pub ch_len: f64,
    pub t_len: f64,
    pub t1: i64,
    pub t2: i64,
    pub d: i64,
    pub d_r: i64,
    pub n_cells: usize,
    /// Half-count `L`: `N = 2mL` for chiral tubes, `N = 2nL` otherwise.
    pub l: usize,
}

pub fn compute_geometry(spec: &ChiralSpec, n_cells: usize) -> Result<TubeGeometry> {
    let class = classify(spec)?;
    let required = required_cell_multiple(spec)?;
    if n_cells == 0 || !n_cells.is_multiple_of(required) {
        return Err(Error::InvalidCellCount { n_cells, required });
    }
    let sc = class_scalars(spec)?;
    let tv = translation_vector(spec)?;
    Ok(TubeGeometry {
        spec: *spec,
        class,
        r_t: sc.r_t,
        theta_plus: sc.theta_plus,
        theta_minus: sc.theta_minus,
        alpha_plus: sc.alpha_plus,
        alpha_minus: sc.alpha_minus,
        c_plus: sc.c_plus,
        c_minus: sc.c_minus,
        chord_plus: sc.chord_plus,
        chord_minus: sc.chord_minus,
        ch_len: spec.a * (spec.norm_sq() as f64).sqrt(),
        t_len: tv.t_len,
        t1: tv.t1,
        t2: tv.t2,
        d: tv.d,
        d_r: tv.d_r,
        n_cells,
        l: n_cells / required,
    })
}

impl TubeGeometry {
    /// Geometry of the finite tube with half-count `l`.
    pub fn with_half_count(spec: &ChiralSpec, l: usize) -> Result<Self> {
        compute_geometry(spec, l * required_cell_multiple(spec)?)
    }

    pub fn alpha(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.alpha_plus,
            Branch::Minus => self.alpha_minus,
        }
    }

    pub fn c(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.c_plus,
            Branch::Minus => self.c_minus,
        }
    }

    pub fn theta(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.theta_plus,
            Branch::Minus => self.theta_minus,
        }
    }

    pub fn chord(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.chord_plus,
            Branch::Minus => self.chord_minus,
        }
    }

    /// `a°±/a`.
    pub fn chord_ratio(&self, branch: Branch) -> f64 {
        self.chord(branch) / self.spec.a
    }

    /// The family whose powers run along the tube axis and carry the
    /// quantized phase: `T^+` unless the tube is zigzag (where `T^+` is a
    /// pure rotation).
    pub fn axial_branch(&self) -> Branch {
        match self.class {
            SymmetryClass::Zigzag => Branch::Minus,
            _ => Branch::Plus,
        }
    }

    /// Number of values taken by the bounded cell index (`m`, or `n` for zigzag).
    pub fn ring_count(&self) -> usize {
        match self.class {
            SymmetryClass::Zigzag => self.spec.n as usize,
            _ => self.spec.m as usize,
        }
    }
}

/// Three-dimensional analogues `â±` of the graphene lattice vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicVectors {
    pub a_hat_plus: [f64; 3],
    pub a_hat_minus: [f64; 3],
}

pub fn characteristic_vectors(geom: &TubeGeometry) -> CharacteristicVectors {
    let r = geom.r_t;
    CharacteristicVectors {
        a_hat_plus: [-r * geom.alpha_plus.sin(), r * geom.alpha_plus.cos(), geom.c_plus],
        a_hat_minus: [-r * geom.alpha_minus.sin(), r * geom.alpha_minus.cos(), -geom.c_minus],
    }
}
