//! Serializable report types printed by the commands.

use serde::{Deserialize, Serialize};
use swcnt_core::{
    characteristic_vectors, reciprocal_tube, Branch, CharacteristicVectors, ReciprocalTube, SymmetryClass, TubeGeometry,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub n: i64,
    pub m: i64,
    pub a: f64,
    pub class: SymmetryClass,
    pub geometry: TubeGeometry,
    pub vectors: CharacteristicVectors,
    pub reciprocal: ReciprocalTube,
    /// `a°₊/a`, `a°₋/a`.
    pub ratio_plus: f64,
    pub ratio_minus: f64,
}

impl GeometryReport {
    pub fn new(geom: &TubeGeometry) -> Self {
        GeometryReport {
            n: geom.spec.n,
            m: geom.spec.m,
            a: geom.spec.a,
            class: geom.class,
            geometry: *geom,
            vectors: characteristic_vectors(geom),
            reciprocal: reciprocal_tube(geom),
            ratio_plus: geom.chord_ratio(Branch::Plus),
            ratio_minus: geom.chord_ratio(Branch::Minus),
        }
    }
}

/// Fixed-point text with `prec` decimals that never prints a signed zero.
pub fn fixed(x: f64, prec: usize) -> String {
    let s = format!("{x:.prec$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// One row of the band CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandRecord {
    pub nu: i64,
    pub kappa: f64,
    pub eps_minus: f64,
    pub eps_plus: f64,
}

impl BandRecord {
    pub const CSV_HEADER: &'static str = "nu,kappa,eps_minus,eps_plus";

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{}", self.nu, fixed(self.kappa, 9), fixed(self.eps_minus, 9), fixed(self.eps_plus, 9))
    }

    pub fn from_csv(line: &str) -> Option<Self> {
        let mut it = line.split(',');
        let rec = BandRecord {
            nu: it.next()?.trim().parse().ok()?,
            kappa: it.next()?.trim().parse().ok()?,
            eps_minus: it.next()?.trim().parse().ok()?,
            eps_plus: it.next()?.trim().parse().ok()?,
        };
        it.next().is_none().then_some(rec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainReport {
    pub branch: Branch,
    pub rotation_only: bool,
    pub kappa_min: Option<f64>,
    pub kappa_max: Option<f64>,
    pub tau_min: f64,
    pub tau_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BzReport {
    pub n: i64,
    pub m: i64,
    pub class: SymmetryClass,
    pub vertices: Vec<[f64; 2]>,
    pub area: f64,
    pub cell_area: f64,
    pub domains: Vec<DomainReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Info,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    pub residual: f64,
    pub tol: f64,
    pub note: Option<String>,
}

impl std::fmt::Display for CheckLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}  residual={:.9e} tol={:.9e}", self.name, self.status, self.residual, self.tol)?;
        if let Some(note) = &self.note {
            write!(f, "  ({note})")?;
        }
        Ok(())
    }
}
