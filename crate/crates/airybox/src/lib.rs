//! Bound states of a particle in a one-dimensional box with a uniform field.
//!
//! The nondimensional eigenvalue problem solved here is
//!
//! ```text
//!     -ψ″(ξ) - α ξ ψ(ξ) = β ψ(ξ),    ψ(-1) = ψ(+1) = 0,    ½ ∫ ψ² dξ = 1,
//! ```
//!
//! i.e. an infinite square well on ξ ∈ [-1, +1] tilted by a uniform field of
//! strength α ≥ 0. The substitution η(ξ) = -α^(1/3) (ξ + β/α) turns the
//! equation into the Airy equation, so every eigenfunction is a combination
//! `Ai(η) - w·Bi(η)` and the eigenvalues β are the roots of a 2×2
//! characteristic determinant built from Airy values at the two walls.
//!
//! The crate provides that analytic solution end to end, plus an independent
//! finite-difference eigensolver used to cross-validate it:
//!
//! - [`airy`] — Ai, Bi, Ai′, Bi′ on the real line, written from scratch
//!   (Maclaurin series with compensated summation, asymptotic expansions).
//! - [`roots`] — sign-change scanning and safeguarded Newton polishing.
//! - [`gauss`] — Gauss-Legendre rules, used to cross-check the normalization
//!   integral against its closed form.
//! - [`analytic`] — eigenvalues, normalized eigenfunctions, and the wall
//!   forces `F = (dψ/dξ)²` at ξ = ∓1, whose half-difference equals α in every
//!   state (the force-equilibrium identity).
//! - [`fd`] — Sturm-bisection tridiagonal eigensolver on a uniform grid,
//!   the validation oracle.
//! - [`cli`] — the `airybox` command-line front end emitting CSV/JSON tables.

pub mod airy;
pub mod analytic;
pub mod cli;
mod dd;
pub mod error;
pub mod fd;
pub mod gauss;
pub mod roots;

pub use error::{Error, Result};
