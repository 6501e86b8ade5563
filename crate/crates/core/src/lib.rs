//! Exact tools for Descartes' rule of signs realization problems: sign
//! patterns and compatible couples, sequences of compatible pairs, exact
//! polynomial root statistics, witness search with exact certificates, the
//! degree-4 coefficient-space geometry, and a multivariate identity engine.

pub mod cli;
pub mod combinatorics;
pub mod exactpoly;
pub mod multisym;
pub mod quartic;
pub mod rational;
pub mod realize;
pub mod scp;

pub use combinatorics::{
    enumerate_couples, enumerate_orbits, CompatibleCouple, CompatiblePair, Orbit, Sign, SignPattern,
};
pub use exactpoly::{ModuliOrder, UniPoly};
pub use rational::Rational;
pub use scp::{count_scps, enumerate_scps, Scp};
