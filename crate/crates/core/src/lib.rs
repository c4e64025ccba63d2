//! Commutation classes of double wiring diagrams.
//!
//! The crate enumerates the graph of commutation classes of `n`-stringed
//! double wiring diagrams (vertices are classes, edges are single braid
//! moves), detects braid moves from the chamber-label quiver, and expresses
//! arbitrary minors as Laurent polynomials in the chamber minors of a base
//! class by propagating the three-term exchange relation.
//!
//! Module map:
//!
//! * [`label`]: chamber labels, label sets and packed class keys.
//! * [`wiring`]: crossing words, chamber-label sweep and the word-level
//!   (heap based) braid-move oracle.
//! * [`quiver`]: the chamber quiver and subquiver based move detection.
//! * [`graph`]: breadth-first enumeration of the class graph, statistics,
//!   move paths, Hamiltonian search, export and checkpoints.
//! * [`laurent`]: exact multivariate Laurent polynomials.
//! * [`positivity`]: minor expansion, positivity verification and the
//!   symbolic / exact-rational oracles.
//! * [`oracle`]: cross-validation of quiver detection against words.

pub mod graph;
pub mod label;
pub mod laurent;
pub mod oracle;
pub mod positivity;
pub mod quiver;
pub mod wiring;

pub use graph::{enumerate, EnumerateOptions, Enumeration, GraphError, GraphStats, MovePath, PhiGraph};
pub use label::{ChamberLabel, ClassKey, LabelError, LabelSet};
pub use laurent::{LaurentError, LaurentPoly, Monomial, VarTable};
pub use positivity::{ExpressionReport, MinorId, PositivityError, RationalMatrix};
pub use quiver::{Move, MoveKind, Quiver};
pub use wiring::{Color, Letter, MoveSite, Word, WordError};

/// Largest string count representable by the packed 16-bit subset masks.
pub const MAX_STRINGS: usize = 16;
