//! Virtual tangles as Gauss diagrams, and their index polynomial invariants.
//!
//! * [`diagram`]: the Gauss-diagram model.
//! * [`poly`]: exact Laurent polynomials over the rationals.
//! * [`invariants`]: intersection index, `p_sc`, `p_lk`, `p_lkL`, linking numbers.
//! * [`moves`]: Reidemeister rewrites and seeded random walks.
//! * [`singular`]: double points and Vassiliev derivatives.
//! * [`ops`]: connected sum, closure, string links, linking-number generators.
//! * [`gauss`]: the text format.
//! * [`random`]: seeded random diagrams.
//! * [`cli`]: the `vtangle` command line.

pub mod cli;
pub mod diagram;
pub mod gauss;
pub mod invariants;
pub mod moves;
pub mod ops;
pub mod poly;
pub mod random;
pub mod singular;

pub use diagram::{equal_diagrams, TangleDiagram};
pub use gauss::{parse, serialize};
pub use invariants::{p_lk, p_lk_l, p_sc, vlk, wriggle, Invariant, InvariantReport};
pub use poly::{LaurentPoly, Rational};
