//! Exact invariants of connected algebra objects in Temperley-Lieb-Jones
//! categories and of twisted group algebras.
//!
//! - [`scalar`]: exact rationals, the base parameter `r`, quantum integers.
//! - [`tl`]: Temperley-Lieb diagrams, traces, Jones-Wenzl projectors.
//! - [`graph`]: fair and balanced δ-graphs, builders and the JSON format.
//! - [`loops`]: the loop algebra `A_v` at a basepoint.
//! - [`modular`]: inner products, modular operators, modular spectra and
//!   factor types.
//! - [`gjs`]: the graded algebra with the Bacher-Walker product.
//! - [`group`]: twisted group algebras of finite groups.
//! - [`lattice`]: finitely generated subgroups of `ℚ₊^×`.
//! - [`linalg`]: dense exact linear algebra.
//! - [`cli`]: the `sfi` command line.

pub mod cli;
pub mod error;
pub mod gjs;
pub mod graph;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod loops;
pub mod modular;
pub mod scalar;
pub mod tl;

pub use error::{Error, Result};
pub use scalar::{BaseParam, QScalar};
