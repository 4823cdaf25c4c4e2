//! Complex dense linear algebra: products, Kronecker products, the Hermitian
//! exponential map, Haar sampling on SU(n) and partial traces.

mod hermitian;
mod lie;
mod matrix;
mod random;
mod trace;
mod unitary;

pub use hermitian::{
    check_hermitian, hermitian_eigen, hermitian_function, unitary_from_hermitian, HermitianEigen,
};
pub use lie::{cartan_basis, gell_mann_basis};
pub use matrix::{kron, pauli_y, ComplexMatrix};
pub use random::{derive_seed, haar_random_special_unitary, HaarSampler, RandomSeed};
pub use trace::{partial_trace, Subsystem};
pub use unitary::UnitaryMatrix;

/// Tolerances shared across the engine (stated for double precision).
pub mod tol {
    /// Unitarity check applied when a matrix is wrapped as unitary.
    pub const UNITARY: f64 = 1e-10;
    /// Unitarity expected of freshly synthesised products.
    pub const UNITARY_FRESH: f64 = 1e-12;
    /// `|det U - 1|` for special unitaries.
    pub const SPECIAL_DET: f64 = 1e-8;
    pub const HERMITIAN: f64 = 1e-10;
    /// Trace and norm checks on states and density matrices.
    pub const NORM: f64 = 1e-10;
    /// Default maximal-entanglement residual threshold.
    pub const MAX_ENTANGLED: f64 = 1e-8;
}
