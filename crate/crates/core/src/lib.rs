//! Combinatorial calculus of symplectic plumbing divisors.
//!
//! - [`graph`]: decorated divisor graphs, intersection matrices, exact
//!   inertia and sign classification.
//! - [`gs`]: the GS concavity/convexity criterion decided over exact
//!   rationals, with constructive witnesses and construction data.
//! - [`moves`]: toric and interior blow-ups/downs, augmented versions with
//!   exact area bookkeeping, minimal models.
//! - [`open_book`]: the supporting open book of a non-negative (or
//!   non-positive) divisor as page invariants plus a signed twist word.
//! - [`torus`]: the SL(2,Z) word calculus for circular spherical divisors
//!   and the universal-tightness classifier.

pub mod graph;
pub mod gs;
pub mod moves;
pub mod open_book;
pub mod rational;
pub mod torus;
