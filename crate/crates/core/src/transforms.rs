//! Rotation-translation group of the tube, cell enumeration and atom sites.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Branch, SymmetryClass, TubeGeometry};

const SEAM_SNAP: f64 = 1e-12;

/// Reduce an angle to `[0, 2π)`, snapping values within 1e-12 of the seam to 0.
pub fn normalize_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(TAU);
    if t < SEAM_SNAP || TAU - t < SEAM_SNAP {
        t = 0.0;
    }
    t
}

/// Reduce an angle to `(−π, π]`.
pub fn wrap_pi(theta: f64) -> f64 {
    let t = normalize_angle(theta);
    if t > PI {
        t - TAU
    } else {
        t
    }
}

/// Point `(−r_t sinθ, r_t cosθ, z)` on the tube surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubePoint {
    pub theta: f64,
    pub z: f64,
}

impl TubePoint {
    pub fn new(theta: f64, z: f64) -> Self {
        TubePoint { theta: normalize_angle(theta), z }
    }

    pub fn to_cartesian(&self, r_t: f64) -> [f64; 3] {
        [-r_t * self.theta.sin(), r_t * self.theta.cos(), self.z]
    }

    /// Outward unit normal of the cylinder at this point.
    pub fn normal(&self) -> [f64; 3] {
        [-self.theta.sin(), self.theta.cos(), 0.0]
    }
}

/// Screw motion: rotation `dtheta` about the axis and shift `dz` along it.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RotTranslation {
    pub dtheta: f64,
    pub dz: f64,
}

impl RotTranslation {
    pub const IDENTITY: RotTranslation = RotTranslation { dtheta: 0.0, dz: 0.0 };

    pub fn new(dtheta: f64, dz: f64) -> Self {
        RotTranslation { dtheta, dz }
    }

    pub fn compose(self, other: RotTranslation) -> RotTranslation {
        RotTranslation { dtheta: self.dtheta + other.dtheta, dz: self.dz + other.dz }
    }

    pub fn inverse(self) -> RotTranslation {
        RotTranslation { dtheta: -self.dtheta, dz: -self.dz }
    }

    /// `self` composed with itself `k` times (negative `k` uses the inverse).
    pub fn power(self, k: i64) -> RotTranslation {
        RotTranslation { dtheta: k as f64 * self.dtheta, dz: k as f64 * self.dz }
    }

    pub fn apply(&self, p: TubePoint) -> TubePoint {
        TubePoint::new(p.theta + self.dtheta, p.z + self.dz)
    }

    /// Equality as group elements, i.e. with `dtheta` taken modulo 2π.
    pub fn approx_eq(&self, other: &RotTranslation, tol: f64) -> bool {
        wrap_pi(self.dtheta - other.dtheta).abs() <= tol && (self.dz - other.dz).abs() <= tol
    }
}

pub fn compose(t1: RotTranslation, t2: RotTranslation) -> RotTranslation {
    t1.compose(t2)
}

pub fn apply(t: RotTranslation, p: TubePoint) -> TubePoint {
    t.apply(p)
}

/// `T_j^±`: rotation by `j α±` and axial shift `±j c±`.
pub fn make_transform(geom: &TubeGeometry, branch: Branch, j: i64) -> RotTranslation {
    let jf = j as f64;
    RotTranslation { dtheta: jf * geom.alpha(branch), dz: branch.sign() * jf * geom.c(branch) }
}

/// Cell label: the cell is the image of the unit cell under `M_{s,j} = T^-_s ∘ T^+_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellIndex {
    pub s: i64,
    pub j: i64,
}

impl CellIndex {
    pub fn new(s: i64, j: i64) -> Self {
        CellIndex { s, j }
    }

    pub fn transform(&self, geom: &TubeGeometry) -> RotTranslation {
        make_transform(geom, Branch::Minus, self.s).compose(make_transform(geom, Branch::Plus, self.j))
    }
}

/// The `N` cells of the finite tube, in generation order.
pub fn enumerate_cells(geom: &TubeGeometry) -> Vec<CellIndex> {
    let l = geom.l as i64;
    let mut cells = Vec::with_capacity(geom.n_cells);
    match geom.class {
        SymmetryClass::Zigzag => {
            for j in 0..geom.spec.n {
                for s in -l..l {
                    cells.push(CellIndex { s, j });
                }
            }
        }
        SymmetryClass::Armchair | SymmetryClass::Chiral => {
            for s in 0..geom.spec.m {
                for j in (-l + s)..(l + s) {
                    cells.push(CellIndex { s, j });
                }
            }
        }
    }
    cells
}

/// Alternative labelling through `T^+_j ∘ T^-_s` with `j ∈ [0, n)` and
/// `s ∈ [−L'+j, L'+j)`, which requires `N = 2nL'`. Its natural end
/// identification is `T^-_{2L'}`; it coincides with [`period_transform`]
/// whenever `T^-_{2L'}` lies in the group generated by the period screw and
/// the full turn.
pub fn enumerate_cells_alt(geom: &TubeGeometry) -> Result<Vec<CellIndex>> {
    let n = geom.spec.n as usize;
    if !geom.n_cells.is_multiple_of(2 * n) {
        return Err(Error::InvalidCellCount { n_cells: geom.n_cells, required: 2 * n });
    }
    let lp = (geom.n_cells / (2 * n)) as i64;
    let mut cells = Vec::with_capacity(geom.n_cells);
    for j in 0..geom.spec.n {
        for s in (-lp + j)..(lp + j) {
            cells.push(CellIndex { s, j });
        }
    }
    Ok(cells)
}

/// Screw identifying the two ends of the finite tube: `T^+_{2L}`, or `T^-_{2L}`
/// for zigzag tubes.
pub fn period_transform(geom: &TubeGeometry) -> RotTranslation {
    make_transform(geom, geom.axial_branch(), 2 * geom.l as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sublattice {
    A,
    B,
}

/// Position of the sublattice atom inside the unit cell. `A` sits at the
/// origin; `B` is the rolled image of the flat offset `(a₊ + a₋)/3`.
pub fn sublattice_offset(geom: &TubeGeometry, sub: Sublattice) -> TubePoint {
    match sub {
        Sublattice::A => TubePoint::new(0.0, 0.0),
        Sublattice::B => TubePoint::new((geom.alpha_plus + geom.alpha_minus) / 3.0, (geom.c_plus - geom.c_minus) / 3.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomSite {
    pub position: [f64; 3],
    pub point: TubePoint,
    pub sublattice: Sublattice,
    pub cell: CellIndex,
}

/// Atom of the given sublattice in `cell`, without any wrapping along the axis.
pub fn site(geom: &TubeGeometry, cell: CellIndex, sublattice: Sublattice) -> AtomSite {
    let point = cell.transform(geom).apply(sublattice_offset(geom, sublattice));
    AtomSite { position: point.to_cartesian(geom.r_t), point, sublattice, cell }
}

/// Bring `p` into the axial window `[−Z/2, Z/2)` using the period screw.
fn wrap_axial(p: TubePoint, period: RotTranslation) -> TubePoint {
    let k = (p.z / period.dz + 0.5).floor() as i64;
    if k == 0 {
        p
    } else {
        period.power(-k).apply(p)
    }
}

/// The `2N` atoms of the finite tube, folded into one axial period and
/// sorted by `z`, then `θ`.
pub fn atom_positions(geom: &TubeGeometry) -> Vec<AtomSite> {
    let period = period_transform(geom);
    let mut atoms: Vec<AtomSite> = enumerate_cells(geom)
        .par_iter()
        .flat_map_iter(|&cell| {
            [Sublattice::A, Sublattice::B].into_iter().map(move |sub| {
                let s = site(geom, cell, sub);
                let point = wrap_axial(s.point, period);
                AtomSite { position: point.to_cartesian(geom.r_t), point, ..s }
            })
        })
        .collect();
    let key = |x: f64| (x * 1e9).round() as i64;
    atoms.sort_by(|a, b| {
        (key(a.point.z), key(a.point.theta), a.sublattice, a.cell).cmp(&(
            key(b.point.z),
            key(b.point.theta),
            b.sublattice,
            b.cell,
        ))
    });
    atoms
}

pub fn distance(p: &[f64; 3], q: &[f64; 3]) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Neighbor {
    /// Index into the atom list.
    pub index: usize,
    /// Power of the period screw applied to reach the neighbouring image.
    pub image: i64,
    pub distance: f64,
    /// The neighbouring image itself.
    pub site: AtomSite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborTable {
    /// Three nearest neighbours of each atom (opposite sublattice).
    pub first: Vec<Vec<Neighbor>>,
    /// Next six neighbours (same sublattice); empty when only one shell was requested.
    pub second: Vec<Vec<Neighbor>>,
}

const SHELL_GAP_MIN: f64 = 1e-6;

/// Nearest-neighbour shells with periodic closure across the tube ends.
pub fn neighbor_shells(atoms: &[AtomSite], geom: &TubeGeometry, shells: usize) -> Result<NeighborTable> {
    if !(1..=2).contains(&shells) {
        return Err(Error::InvalidShellCount(shells));
    }
    let period = period_transform(geom);
    let reach = 1.5 * geom.spec.a;
    let kmax = ((reach / period.dz.abs()).ceil() as i64 + 1).max(2);
    let images: Vec<Vec<AtomSite>> = (-kmax..=kmax)
        .map(|k| {
            let t = period.power(k);
            atoms
                .iter()
                .map(|a| {
                    let point = t.apply(a.point);
                    AtomSite { position: point.to_cartesian(geom.r_t), point, ..*a }
                })
                .collect()
        })
        .collect();
    let wanted = if shells == 1 { 3 } else { 9 };

    let per_atom: Vec<Result<(Vec<Neighbor>, Vec<Neighbor>)>> = atoms
        .par_iter()
        .enumerate()
        .map(|(i, atom)| {
            let mut cands: Vec<Neighbor> = Vec::new();
            for (ki, layer) in images.iter().enumerate() {
                let k = ki as i64 - kmax;
                for (idx, other) in layer.iter().enumerate() {
                    if idx == i && k == 0 {
                        continue;
                    }
                    let d = distance(&atom.position, &other.position);
                    if d <= reach {
                        cands.push(Neighbor { index: idx, image: k, distance: d, site: *other });
                    }
                }
            }
            cands.sort_by(|a, b| {
                a.distance.total_cmp(&b.distance).then(a.index.cmp(&b.index)).then(a.image.cmp(&b.image))
            });
            let check_gap = |upto: usize| -> Result<()> {
                let gap = match (cands.get(upto - 1), cands.get(upto)) {
                    (Some(x), Some(y)) => y.distance - x.distance,
                    (Some(_), None) => f64::INFINITY,
                    _ => 0.0,
                };
                if gap < SHELL_GAP_MIN {
                    Err(Error::AmbiguousShell { atom: i, gap })
                } else {
                    Ok(())
                }
            };
            check_gap(3)?;
            let first: Vec<Neighbor> = cands[..3].to_vec();
            if first.iter().any(|nb| nb.site.sublattice == atom.sublattice) {
                return Err(Error::ShellTopology { atom: i, shell: 1 });
            }
            let second = if wanted == 9 {
                check_gap(9)?;
                let second: Vec<Neighbor> = cands[3..9].to_vec();
                if second.iter().any(|nb| nb.site.sublattice != atom.sublattice) {
                    return Err(Error::ShellTopology { atom: i, shell: 2 });
                }
                second
            } else {
                Vec::new()
            };
            Ok((first, second))
        })
        .collect();

    let mut table = NeighborTable { first: Vec::with_capacity(atoms.len()), second: Vec::with_capacity(atoms.len()) };
    for r in per_atom {
        let (f, s) = r?;
        table.first.push(f);
        table.second.push(s);
    }
    Ok(table)
}
