use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid chiral indices ({n},{m}): require n >= 1 and 0 <= m <= n (require m <= n)")]
    InvalidIndices { n: i64, m: i64 },

    #[error("lattice constant must be positive and finite, got {0}")]
    InvalidLatticeConstant(f64),

    #[error("cell count {n_cells} is not a positive multiple of {required}")]
    InvalidCellCount { n_cells: usize, required: usize },

    #[error("half-count L must be at least {min}, got {got}")]
    InvalidHalfCount { got: usize, min: usize },

    #[error("ambiguous neighbor shell split for atom {atom}: distance gap {gap:.3e} A")]
    AmbiguousShell { atom: usize, gap: f64 },

    #[error("neighbor shell {shell} of atom {atom} has the wrong sublattice composition")]
    ShellTopology { atom: usize, shell: u8 },
    #[error("neighbor shells must be 1 or 2, got {0}")]
    InvalidShellCount(usize),

    #[error("sites at distance {distance:.6} A are not shell-{shell} neighbors")]
    NotNeighbors { shell: u8, distance: f64 },

    #[error("degenerate reciprocal lattice: basis vectors are collinear")]
    DegenerateLattice,

    #[error("rotation-only branch has no axial phase")]
    RotationOnlyBranch,

    #[error("surface grids do not match")]
    GridMismatch,

    #[error("surface grid needs at least 8 samples per direction, got {0}x{1}")]
    GridTooSmall(usize, usize),

    #[error("overlap matrix is not positive definite (det S = {0:.3e})")]
    OverlapNotPositive(f64),

    #[error("negative discriminant {0:.3e}: Hamiltonian/overlap pair is not Hermitian")]
    NegativeDiscriminant(f64),

    #[error("invalid tight-binding parameter `{field}`: {reason}")]
    InvalidParameter { field: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
