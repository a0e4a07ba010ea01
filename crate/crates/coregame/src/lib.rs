//! Exact-arithmetic core analysis for cooperative games induced by
//! nonlinear parametric optimization programs.
//!
//! A game assigns to each coalition of players the optimal value of a
//! constrained program over a finite domain. This crate decides core
//! non-emptiness through the basis-linear relaxation of the objective,
//! produces and verifies core members from exact LP duals, computes
//! approximate-core parameters, and ships closed-form analyses for the
//! standard application families (portfolio, max cut, matching, ratio and
//! assortment games). All arithmetic is exact rational; every equality in
//! a verdict is bit-for-bit.
//!
//! # Modules
//!
//! - `exact` - rational scalars, vectors, matrices, exact linear solving
//! - `domain` - feasible-point domains and structural assumption checks
//! - `objective` - objective functions, relaxations, function classes
//! - `lp` - exact two-phase rational simplex with certified duals
//! - `game` - instances, characteristic functions, the four-game chain
//! - `analysis` - core characterizations, oracles, approximate core
//! - `families` - application-family generators and closed-form tests
//! - `error` - shared error type

pub mod analysis;
pub mod domain;
pub mod error;
pub mod exact;
pub mod families;
pub mod game;
pub mod lp;
pub mod objective;

pub use analysis::{
    bondareva_oracle, core_nonempty, equivalence_check, gamma_analysis, integrality_check,
    is_core_member, superadditivity_probe, tbc_value, BondarevaReport, CoreReport,
};
pub use domain::{check_assumptions, AssumptionReport, DomainSpec};
pub use error::{Error, Result};
pub use exact::{RatMatrix, RatVector, Rational};
pub use game::{Coalition, GameInstance, GameSense, ValueChain};
pub use objective::{BasisVariant, ObjectiveSpec};
