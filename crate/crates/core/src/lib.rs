//! Finite quasi-quantum linear spaces over abelian groups.
//!
//! The crate builds, for an abelian group `G` with a 3-cocycle `Φ`, the
//! braided linear spaces `S(V)` generated by skew-primitive elements, their
//! bosonizations `S(V) # kG`, and checks every structural axiom exactly in
//! cyclotomic arithmetic.
//!
//! * [`cyclo`]: exact arithmetic in `Q(ζ_M)` over any num-traits coefficient ring.
//! * [`group`]: finite abelian groups and their normalized 3-cocycles.
//! * [`qchar`]: quasi-characters and admissible series.
//! * [`nichols`]: the braided algebra `S(V)` with its coproduct and antipode.
//! * [`bosonize`]: the quasi-Hopf algebra `S(V) # kG`.
//! * [`classify`]: enumeration, presentations and the `Z2³` census.

pub mod bosonize;
pub mod classify;
pub mod cli;
pub mod cyclo;
pub mod group;
pub mod nichols;
pub mod qchar;
mod sparse;

pub use num_rational::{BigRational, Rational64};

pub use bosonize::{coinvariants_roundtrip, verify_majid_axioms, MajidAlgebra};
pub use classify::{enumerate_admissible, present_majid, z2cubed_report, Frame};
pub use cyclo::{Coeff, Cyclotomic, RootExp};
pub use group::{verify_cocycle, AbelianGroup, Cocycle, CocycleData, GroupElem};
pub use nichols::BraidedSpace;
pub use qchar::{matrix_admissible, solve_quasicharacters, AdmissibleSeries, QuasiCharacter};

/// Exact arbitrary-precision rationals.
pub type Rational = BigRational;
/// Cyclotomic numbers with arbitrary-precision rational coefficients.
pub type CycNumber = Cyclotomic<BigRational>;
/// Cyclotomic numbers with 64-bit rational coefficients.
pub type CycNumber64 = Cyclotomic<Rational64>;
/// Cyclotomic integers with machine coefficients; the fast path for
/// structure constants, which are all sums of roots of unity.
pub type CycInt = Cyclotomic<i64>;
