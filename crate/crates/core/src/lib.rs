//! Geometry, symmetry and band structure of single-walled carbon nanotubes.
//!
//! A tube is fixed by its chiral indices `(n, m)`. From them the crate derives
//! the rolled geometry, the rotation-translation group acting on the tube, the
//! reciprocal tube with its Brillouin hexagon, numerical Bloch-function tools on
//! the cylinder surface, and nearest-neighbour tight-binding bands.

pub mod bloch;
pub mod error;
pub mod geometry;
pub mod reciprocal;
pub mod tables;
pub mod tightbinding;
pub mod transforms;

pub use bloch::{
    bloch_phases, bloch_sum, cyclic_eigenfunction, hamiltonian_apply, modified_operator_apply, overlap_integral,
    phase_inner, verify_bloch_property, BlochPhase, ModelOrbital, SchrodingerConfig, SurfaceFunction, SurfaceGrid,
};
pub use error::{Error, Result};
pub use geometry::{
    characteristic_vectors, classify, compute_geometry, translation_vector, Branch, CharacteristicVectors, ChiralSpec,
    SymmetryClass, TubeGeometry, GRAPHENE_LATTICE_CONSTANT,
};
pub use reciprocal::{
    brillouin_zone, dual_products, k_domain, reciprocal_transform, reciprocal_tube, sample_kappa, BrillouinHexagon,
    DualProducts, KDomain, KPoint, KappaRange, ReciprocalTube,
};
pub use tightbinding::{
    band_gap, band_structure, build_hs_first_nn, build_hs_second_nn, hopping_value, solve_secular, BandStructure,
    GapClass, HSMatrices, HoppingModel, TBParams,
};
pub use transforms::{
    atom_positions, enumerate_cells, make_transform, neighbor_shells, period_transform, AtomSite, CellIndex,
    NeighborTable, RotTranslation, Sublattice, TubePoint,
};
