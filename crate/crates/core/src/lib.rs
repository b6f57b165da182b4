//! Exact combinatorics around the Narayana numbers.
//!
//! * [`qpoly`]: integer polynomials in `q`, Gaussian binomials, closed-form
//!   q-Narayana numbers.
//! * [`dyck`]: Dyck paths and the statistics `des`, `hp`, `ea`, `lnfs`, `da`
//!   with their major-index companions.
//! * [`posets`]: finite posets, the lattice `J(2 x n)`, linear extensions and
//!   flag f/h-vectors.
//! * [`tableaux`]: two-column semistandard tableaux and principal
//!   specializations of Schur polynomials.
//! * [`shelling`]: pure simplicial complexes, pre-shellings and the order
//!   `Omega_n` on Dyck paths.

pub mod dyck;
pub mod error;
pub mod posets;
pub mod qpoly;
pub mod shelling;
pub mod tableaux;

pub use dyck::{DyckPath, RankSubset, Statistic, CoStatistic};
pub use error::{Error, Result};
pub use qpoly::QPoly;
