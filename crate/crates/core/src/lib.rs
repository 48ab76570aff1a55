//! Exact Poisson cohomology and homology of the truncated polynomial algebra
//! `Λ(a,b) = C[X,Y]/(X^a, Y^b)` with bracket `{X, Y} = XY`.
//!
//! Everything is generic over an exact [`Field`]; the aliases below fix the
//! scalar to arbitrary-precision rationals, which is what the reporting
//! layer uses.

pub mod algebra;
pub mod chain;
pub mod cochain;
pub mod linalg;
pub mod ring;
pub mod scalar;

pub use algebra::{euler_dims, AlgebraError, EulerDims, MonomialIndex, TruncParams};
pub use chain::{duality_report, homology, homology_dims, omega_dims, DualityReport, FormPart, Generator, KaehlerBasisIndex};
pub use cochain::{
    chi1_basis, cohomology_dims, cup, delta0_matrix, delta1_matrix, hamiltonian, is_cocycle_eq2, normalize_one_cocycle, CochainError,
};
pub use linalg::{quotient_coordinates, LinalgError};
pub use ring::fibre_product_table;
pub use scalar::Field;

pub type Rational = num_rational::BigRational;
pub type RatMatrix = linalg::Matrix<Rational>;
pub type SubspaceBasis = linalg::Subspace<Rational>;
pub type AlgebraElement = algebra::AlgebraElement<Rational>;
pub type Derivation = cochain::Derivation<Rational>;
pub type Biderivation = cochain::Biderivation<Rational>;
pub type Cochain = cochain::Cochain<Rational>;
pub type PoissonComplex = cochain::PoissonComplex<Rational>;
pub type CohomologyReport = cochain::CohomologyReport<Rational>;
pub type RingTable = ring::RingTable<Rational>;
pub type TwistParams = chain::TwistParams<Rational>;
pub type ChainElement = chain::ChainElement<Rational>;
pub type HomologyReport = chain::HomologyReport<Rational>;
