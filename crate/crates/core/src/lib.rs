//! Exact Hall, Ringel, Heisenberg-double and lattice algebras attached to
//! representations of acyclic quivers over finite fields.

pub mod coeff;
pub mod derived;
pub mod error;
pub mod field;
pub mod heis;
pub mod hopf;
pub mod lattice;
pub mod linalg;
pub mod lincomb;
pub mod qgroup;
pub mod quiver;
pub mod rep;
pub mod suites;
pub mod table;

pub use coeff::{Coeff, GroundParams};
pub use error::{Error, Result};
pub use quiver::{Config, Quiver, K0};
pub use table::{ClassId, Table};
