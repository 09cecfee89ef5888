//! Exact symbolic computation for coset-indicator algebras attached to a
//! semidirect product `G = N ⋊ H` with a distinguished normal subgroup
//! `M ⊆ N`.
//!
//! The library works throughout with the family `U = {aMa⁻¹ : a ∈ H}` of
//! conjugates of `M`. On top of an abstract [`CosetSystem`] it provides:
//!
//! * canonical coset arithmetic, quotient enumeration and the ax+b action
//!   ([`system`]),
//! * the commutative *-algebra spanned by coset indicators ([`d0`]),
//! * the algebraic crossed product, its corner at `χ_M`, the concrete
//!   isometry/unitary/projection families and their relation audits
//!   ([`a0`], [`gens`], [`relations`]),
//! * Hecke double-coset enumeration and exact convolution ([`hecke`]),
//! * an independent operator oracle on finitely supported functions on `N`
//!   ([`repr`]),
//! * exact `Q/Z`-valued bicharacter and self-duality checks ([`duality`]).
//!
//! Three instances are shipped: the rationals with `M = Z` ([`instances::rational`]),
//! a number field `Q(θ)` with `M = Z[θ]` ([`instances::numberfield`]), and the
//! lamplighter wreath product `(⊕_Z Z/m) ⋊ Z` ([`instances::lamplighter`]).
//!
//! All arithmetic is exact: big rationals, Gaussian-rational coefficients and
//! `Q/Z`-valued characters. There is no floating point anywhere.

pub mod a0;
pub mod conditions;
pub mod d0;
pub mod duality;
pub mod gens;
pub mod hecke;
pub mod instances;
pub mod jsonio;
pub mod relations;
pub mod report;
pub mod repr;
pub mod scalar;
pub mod system;

pub use a0::{A0Elem, CornerElem};
pub use d0::D0Elem;
pub use hecke::{DoubleCoset, HeckeElem};
pub use instances::lamplighter::{LampConfig, LamplighterSystem};
pub use instances::numberfield::{FieldElem, NumberFieldSystem};
pub use instances::rational::{Rational, RationalSystem};
pub use repr::FinVec;
pub use scalar::{QmodZ, Scalar};
pub use system::{Coset, CosetError, CosetSystem, GroupElem, InstanceConfig};
