//! Exact and numerical tools for order-`n` parafermion algebras on a chain
//! of `L` sites: normal-ordered symbolic algebra, an explicit clock/shift
//! matrix representation, reflection-symmetric Hamiltonians and checks of
//! reflection positivity for the associated trace functionals.

pub mod algebra;
pub mod error;
pub mod exponents;
pub mod hamiltonian;
pub mod representation;
pub mod rp;

pub use algebra::{Monomial, PhaseExponent, Polynomial, Side, SideClass};
pub use error::{Error, Result};
pub use exponents::{ExponentVector, Support};
pub use hamiltonian::{CouplingRule, CouplingTable, HamiltonianSpec};
pub use representation::{Matrix, Representation};
pub use rp::{check_rp, RPReport, POSITIVITY_TOLERANCE};
