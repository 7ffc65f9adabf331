//! Combinatorial group theory of genus-one 2-bridge knot groups.
//!
//! The crate builds the one-relator presentation `⟨a, b | u_r⟩`, the long
//! upper meridian pair `(x_ℓ, y_ℓ)` and the S-sequence data attached to
//! them, and checks the small cancellation facts that make the pair
//! generate a free subgroup. Supporting modules cover parabolic SL(2, C)
//! representations, the dihedral π-orbifold quotient and reflection orbits
//! in the Farey tessellation. [`battery`] runs everything over a grid of
//! knots.
//!
//! ```
//! use bridge_forge::{presentation::relator, Fraction};
//!
//! let r = relator(&"2/5".parse::<Fraction>().unwrap()).unwrap();
//! assert_eq!(r.u.representative().to_string(), "abaBAbabAB");
//! ```

pub mod battery;
pub mod error;
pub mod farey;
pub mod freeness;
pub mod meridians;
pub mod orbifold;
pub mod poly;
pub mod presentation;
pub mod sl2_oracle;
pub mod slope;
pub mod smallcancel;
pub mod words;

pub use battery::{verify_all, BatteryOptions, BatteryOutcome, Status, VerificationReport};
pub use error::{Error, Result};
pub use farey::{ExtRational, FareyEdge, Reflection, Verdict};
pub use freeness::{ExponentPattern, SignPattern};
pub use meridians::MeridianWords;
pub use poly::IntPoly;
pub use presentation::Relator;
pub use sl2_oracle::{Mat2, NumericRep};
pub use slope::{ContinuedFraction, Fraction, GenusOneKnot, Sign};
pub use smallcancel::SymmetrizedSet;
pub use words::{CyclicSSequence, CyclicWord, Letter, ReducedWord, SSequence, Word};
