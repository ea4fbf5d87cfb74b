//! Asymptotic iteration method for 2×2 spin-boson Hamiltonians in exact arithmetic.

pub mod algebra;
pub mod catalog;
pub mod aim;
pub mod par;
pub mod runner;
