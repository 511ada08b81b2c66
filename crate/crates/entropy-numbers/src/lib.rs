//! Two-sided entropy-number estimates for the natural embeddings and
//! diagonal operators between finite-dimensional `l_p` sequence spaces,
//! together with the combinatorial constructions behind them and certified
//! empirical covering/packing estimators.
//!
//! Modules:
//! - [`space`]: exponent arithmetic, quasi-norms, entropy profiles, and the
//!   algebra of entropy numbers (composition, sums, inner/outer relation);
//! - [`bounds`]: closed-form evaluators for the three-regime estimate and
//!   its profile-based and heterogeneous refinements;
//! - [`combinat`]: dominating weight sequences, bounded-intersection set
//!   families, and exact big-integer counting bounds;
//! - [`nets`]: lattice coverings, greedy packings, product and
//!   block-decomposition nets, certified entropy brackets, and audits;
//! - [`verify`]: grid suites tying the closed forms to the certified
//!   brackets;
//! - [`io`]: line-oriented witness serialization.
//!
//! The `parallel` feature (on by default) routes the heavy reductions
//! through rayon; sequential twins are always compiled for comparison.

pub mod bounds;
pub mod combinat;
pub mod error;
pub mod io;
pub mod nets;
pub mod par;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
