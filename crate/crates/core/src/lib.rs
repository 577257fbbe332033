//! Exact solutions of the one-dimensional piston problem for the full
//! compressible Euler equations, a measure-theoretic weak-form calculus
//! that certifies them (including the singular high-Mach limits with mass
//! concentration on the wall and expansion to vacuum), and an independent
//! finite-volume cross-check.
//!
//! The problem is posed in wall coordinates on the quarter plane
//! `x < 0, t > 0`: uniform gas streams toward (or away from) a resting
//! impermeable wall at `x = 0`. All quantities are nondimensional; the two
//! governing parameters are the adiabatic exponent `gamma` and the wall
//! Mach number `M0`.

pub mod error;
pub mod fv;
pub mod gas;
pub mod limits;
pub mod measure;
pub mod rarefaction;
pub mod shock;
pub mod solution;

pub use error::{Error, Result};
pub use gas::{
    energy_mach, gamma_from_energy_mach, mach_energy, Direction, GasState, Mach, PistonParams,
};
pub use limits::{
    convergence_study, limit_solution, recede_limits, shock_limits, ConvergenceReport,
    LimitRegime, LimitSolution, LimitValues, DEFAULT_MACH_SEQUENCE,
};
pub use measure::{
    max_weak_residuals, standard_family, weak_residuals, MeasureBundle, PhiField, TestFunction,
    MEASURE_NAMES, QUAD_TOL,
};
pub use rarefaction::{fan_state, solve_rarefaction, RarefactionSolution};
pub use shock::{rh_residual, rh_residual_scaled, sample_shock, solve_shock, ShockSolution};
pub use solution::SelfSimilarSolution;
