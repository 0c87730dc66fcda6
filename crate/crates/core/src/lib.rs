//! Exact variation of GIT quotients for torus actions on projective space.
//!
//! A linear torus action on `P(V)` is described by its [`WeightSystem`]: the
//! characters occurring in `V`, optionally with a finite Weyl group and a
//! Weyl-invariant Gram form on one-parameter subgroups. Linearizations are
//! rational character twists `theta`, and a point with weight state `S` is
//! semistable for `theta` exactly when `theta` lies in the convex hull of `S`.
//!
//! The crate is organised bottom-up:
//!
//! * [`polycore`]: exact rational vectors, polytopes (double description),
//!   metric projection, exact LP and hyperplane-arrangement cells.
//! * [`stability`]: the numerical criterion, instability measure, adapted
//!   one-parameter subgroups and the Hesselink stratification.
//! * [`gitfan`]: stability regions, walls, GIT classes, the inclusion poset and
//!   fan verification.
//! * [`fibers`]: nilcone components, graded invariant monoids, Hilbert bases,
//!   weighted projective spaces and Weyl-invariant subrings.
//!
//! Every quantity is a [`Q`] (arbitrary precision rational) and only squared
//! distances are ever stored. Floating copies in [`polycore::approx`] only
//! skip exact tests whose answer they already settle.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fibers;
pub mod gitfan;
pub mod polycore;
pub mod sl2;
pub mod stability;

pub use error::{Error, Result};
pub use polycore::{GramForm, Hyperplane, Location, QPolytope, QVector, Q};
pub use stability::{Linearization, OneParamSubgroup, SignedMeasure, State, StateFamily, WeightSystem};
