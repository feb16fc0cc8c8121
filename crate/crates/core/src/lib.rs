//! Nullification numbers of knots and links: diagrams, polynomial
//! invariants, Seifert matrices and signatures, rational and Montesinos
//! constructions, and the nullification search engine.

pub mod diagram;
pub mod engine;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod laurent;
pub mod montesinos;
pub mod polynomials;
pub mod rational;
pub mod seifert;
pub mod suite;
mod util;

pub use diagram::build::{braid_closure, torus_diagram};
pub use diagram::codes::{parse_gauss, parse_pd, serialize_gauss, serialize_pd};
pub use diagram::{Crossing, LinkDiagram, SeifertDecomposition, Sign};
pub use error::{Error, Result};
