//! Computations in graph products of cyclic groups: right-angled Artin and
//! Coxeter groups, flat braid groups, and a handful of groups built from them.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: finite labelled graphs, joins, links and stars.
//! * [`word`]: normal forms, cyclic reduction, roots and coset
//!   representatives for words over any [`word::Commutation`] structure.
//! * [`structure`]: centralizers, virtual centres, thick elements and the
//!   parabolic subgroup criteria.
//! * [`coxeter`]: general Coxeter matrices, the integral reflection
//!   representation and the braid-move word problem.
//! * [`fp`]: finitely presented groups: Todd–Coxeter, Reidemeister–Schreier,
//!   Tietze simplification and homomorphism checks.
//! * [`lampraag`]: the semidirect product of the line RAAG by ℤ.
//! * [`flip`]: presentations of flip manifolds.
//! * [`median`]: Cayley balls, hyperplanes and median checks.

pub mod coxeter;
pub mod error;
pub mod flip;
pub mod fp;
pub mod graph;
pub mod lampraag;
pub mod median;
pub mod structure;
pub mod word;

pub use error::{Error, Result};
pub use graph::{LabeledGraph, VertexOrder, VertexSet};
pub use word::{ReducedWord, Syllable, Word};
