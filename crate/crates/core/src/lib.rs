//! Cluster algebras of finite type: quiver and seed mutation, lower-bound presentations,
//! Gröbner-basis computations, singular loci and their local certificates, and blowups.

pub mod error;
pub mod field;
pub mod groebner;
pub mod poly;
pub mod quiver;
pub mod continuant;
pub mod seed;
pub mod presentations;
pub mod singularity;
pub mod blowup;

pub use error::{AlgebraError, Result};
pub use field::{FieldElem, FieldSpec};
pub use poly::{MultiPoly, PolyRing, VarNames};
