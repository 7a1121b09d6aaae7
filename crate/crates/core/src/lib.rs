//! Exact spectra of Cayley graphs of the symmetric group and of arrangement
//! graphs: permutation algebra, irreducible characters, generating-set
//! families, verified eigenvalue computation and equitable quotients.

pub mod arrangement;
pub mod cayley;
pub mod characters;
pub mod error;
pub mod exact;
pub mod genset;
pub mod graph;
pub mod perm;
pub mod spectral;
pub mod spectrum;

pub use error::{Error, ParseError, Result};
pub use perm::{CosetSystem, CycleType, GroundPartition, Permutation};
pub use spectrum::{Eigenvalue, Spectrum};

/// Size limits for the expensive paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest `n` for which `S_n` is enumerated.
    pub group_degree: usize,
    /// Largest `n` for a full character table.
    pub character_degree: usize,
    /// Largest matrix handed to the dense eigensolver.
    pub numeric_vertices: usize,
    /// Largest matrix whose spectrum is proved exactly.
    pub exact_vertices: usize,
    /// Largest arrangement graph built.
    pub arrangement_vertices: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            group_degree: perm::DEFAULT_GROUP_CAP,
            character_degree: characters::DEFAULT_CHARACTER_CAP,
            numeric_vertices: 5040,
            exact_vertices: 720,
            arrangement_vertices: 2520,
        }
    }
}
