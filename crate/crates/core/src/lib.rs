//! Thomas decomposition of polynomial and differential polynomial systems over Q,
//! with a finite-field oracle for checking the results.

pub mod algebraic;
pub mod differential;
pub mod poly;
pub mod thomas;
pub mod verify;

pub use algebraic::{Algebraic, Ranking, Var};
pub use poly::{Poly, Rational};
pub use thomas::{Decomposition, Kind, Options, Relation, SimpleSystem, Strategy};
