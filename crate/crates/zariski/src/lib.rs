//! Exact arithmetic for divisors on surface intersection lattices.
//!
//! A surface is modeled by its intersection lattice: an integer Gram matrix
//! over a set of named irreducible curve classes, together with an optional
//! canonical pairing vector. On top of that model this crate computes
//!
//! - Zariski decompositions `D = P + N` of effective rational divisors,
//!   with a brute-force oracle that re-derives every answer independently,
//! - denominator scans over integer divisor grids, deciding whether every
//!   decomposition on the grid is integral,
//! - the rank-2 closed form for a single negative curve, its divisibility
//!   criterion, and the exact denominator bound it implies,
//! - rank-2 classification helpers: candidate K3 intersection forms, ruled
//!   and elliptic-section lattice generators, a third-negative-curve
//!   consistency check, and a determinant probe for negative definite
//!   curve configurations.
//!
//! All arithmetic is exact: integer matrices, reduced rationals, and
//! fraction-free elimination. No floating point is used anywhere.
//!
//! ```
//! use zariski::lattice::{DivisorQ, SurfaceLattice};
//! use zariski::engine::zariski_decompose;
//!
//! let l = SurfaceLattice::new(
//!     vec![vec![-2, 1], vec![1, 0]],
//!     vec!["C0".into(), "f".into()],
//!     None,
//! )
//! .unwrap();
//! let d = DivisorQ::from_integers(&[1, 1]);
//! let z = zariski_decompose(&l, &d).unwrap();
//! assert_eq!(z.denominator, 2);
//! ```

pub mod classify;
pub mod cli;
pub mod engine;
pub mod io;
pub mod lattice;
mod linalg;
pub mod rational;

pub use lattice::{DivisorQ, Signature, SurfaceLattice};
pub use rational::Rat;
