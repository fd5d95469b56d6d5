//! Frustration graphs of qudit Pauli groups.
//!
//! The crate works with generalized Pauli operators over a prime dimension
//! `d` and the antisymmetric matrices over Z_d that record their pairwise
//! commutation phases. From those matrices it derives exact graph quantities
//! (clique numbers, central subgroups, symplectic normal forms), bounds on
//! sums of expectation values, and the geometric entanglement of stabilizer
//! code spaces. The [`oracle`] module checks each closed form against dense
//! numerics.
//!
//! ```
//! use qudit_frustration::gf::Modulus;
//! use qudit_frustration::group::{sos_bound, GroupSpec};
//! use qudit_frustration::pauli::PauliOperator;
//!
//! let d = Modulus::new(2).unwrap();
//! let spec = GroupSpec::from_generators(vec![
//!     PauliOperator::single(d, 1, 0),
//!     PauliOperator::single(d, 0, 1),
//! ])
//! .unwrap();
//! assert_eq!(sos_bound(&spec).unwrap(), 2);
//! ```

pub mod cli;
pub mod gf;
pub mod group;
pub mod oracle;
pub mod pauli;
pub mod stabilizer;
pub mod symplectic;
