//! Exhaustive generation of unlabeled finite graded lattices and their
//! semimodular, lower semimodular, modular and geometric subfamilies.
//!
//! Lattices are built top-down one level at a time. A mother lattice of
//! length `k` is extended by a new atom level to produce daughters of length
//! `k + 1`; isomorphic daughters of the same mother are removed through a
//! canonical form of the level-colored cover digraph. Only vertically
//! indecomposable lattices are generated; totals follow from the
//! vertical-sum recursion in [`count`].
//!
//! ```
//! use latgen::generator::{generate, Family, FamilySpec};
//! use latgen::generator::sink::CountSink;
//!
//! let mut sink = CountSink::default();
//! generate(&FamilySpec::new(Family::Modular), 10, &mut sink).unwrap();
//! assert_eq!(sink.count(10), 28);
//! ```

pub mod canon;
pub mod codec;
pub mod count;
pub mod error;
pub mod generator;
pub mod lattice;
pub mod oracle;
pub mod stats;
pub mod verify;

pub use canon::{canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use lattice::{Lattice, Mask, MAX_ELEMENTS};
