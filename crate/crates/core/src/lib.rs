//! Exact and numeric machinery for invariant para-Kähler Einstein structures
//! on semisimple adjoint orbits.
//!
//! The pipeline runs root system → Chevalley basis → fundamental gradation →
//! Koszul form `ψ` → symplectic form `ρ = dψ` → Einstein metric `λ⁻¹ρ∘K`, all
//! over exact rationals. The [`paracomplex`] module is a separate numeric lab
//! for curvature of para-Kähler potentials in a single chart.

pub mod error;
pub mod linalg;
pub mod rational;
pub mod rootsys;
pub mod chevalley;
pub mod cli;
pub mod config;
pub mod gradation;
pub mod koszul;
pub mod paracomplex;
pub mod verify;
