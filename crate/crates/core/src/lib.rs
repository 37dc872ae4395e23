//! Separable operators built from tensor convolutions of vector-valued mappings on
//! finite abelian groups, with Fourier-side decompositions, PPT checks and the
//! spectral tools for the cyclic construction.

pub mod abelian;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod separability;
pub mod spectral;
pub mod transform;

pub use abelian::{FiniteAbelianGroup, GroupElement, MeasurePair};
pub use error::{Error, Result};
pub use hilbert::{CVector, HermitianOperator, TensorSpaceShape};
pub use separability::{SeparabilityStatus, SeparabilityVerdict, SeparableDecomposition};
pub use transform::{ScalarFunction, Side, VectorMapping};
