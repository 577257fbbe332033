//! Thermodynamic ground truth: gas states, equation of state, sound speed,
//! Mach/energy conversions and characteristic speeds.
//!
//! Everything is nondimensional. The undisturbed gas has unit density and
//! unit speed relative to the wall, so a problem is fixed by the adiabatic
//! exponent `gamma`, the wall Mach number `M0` (or equivalently the total
//! energy `E0` of the incoming gas) and the direction the wall moves.

use crate::error::{Error, Result};

/// Densities below this are treated as exact vacuum (`u = E = 0`).
pub const VACUUM_RHO: f64 = 1e-14;

/// Relative slack allowed before a negative internal energy is rejected.
const ADMISSIBILITY_TOL: f64 = 1e-12;

/// Wall Mach number. The limit `Infinite` is a first-class value, not a
/// large float, so limit regimes stay exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mach {
    Finite(f64),
    Infinite,
}

impl Mach {
    pub fn value(self) -> f64 {
        match self {
            Mach::Finite(m) => m,
            Mach::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Mach::Finite(_))
    }

    /// The finite value, or an error for the infinite sentinel.
    pub fn finite(self) -> Result<f64> {
        match self {
            Mach::Finite(m) => Ok(m),
            Mach::Infinite => Err(Error::InvalidParameter(
                "operation requires a finite Mach number".into(),
            )),
        }
    }
}

impl std::fmt::Display for Mach {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mach::Finite(m) => write!(f, "{m}"),
            Mach::Infinite => write!(f, "inf"),
        }
    }
}

/// Which way the wall moves relative to the gas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Wall advances into the gas; in wall coordinates the gas streams
    /// toward it with unit speed.
    Rush,
    /// Wall retreats; the gas expands after it.
    Recede,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Rush => "rush",
            Direction::Recede => "recede",
        }
    }
}

/// Pointwise fluid state: density, velocity, total energy per unit mass.
///
/// Vacuum convention: densities below [`VACUUM_RHO`] collapse to the exact
/// vacuum state `(0, 0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasState {
    pub rho: f64,
    pub u: f64,
    /// Total energy per unit mass, `E = e + u^2/2`.
    pub energy: f64,
}

impl GasState {
    pub const VACUUM: GasState = GasState {
        rho: 0.0,
        u: 0.0,
        energy: 0.0,
    };

    /// Builds a state, snapping sub-threshold densities to exact vacuum.
    pub fn new(rho: f64, u: f64, energy: f64) -> Self {
        if rho < VACUUM_RHO {
            Self::VACUUM
        } else {
            GasState { rho, u, energy }
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.rho < VACUUM_RHO
    }

    /// Specific internal energy `e = E - u^2/2`.
    pub fn internal_energy(&self) -> f64 {
        self.energy - 0.5 * self.u * self.u
    }

    /// Pressure from the state function `p = (gamma - 1) rho e`; zero in
    /// vacuum. A negative internal energy beyond rounding slack is rejected.
    pub fn pressure(&self, gamma: f64) -> Result<f64> {
        if self.is_vacuum() {
            return Ok(0.0);
        }
        let e = self.internal_energy();
        let scale = 1.0_f64.max(self.energy.abs()).max(0.5 * self.u * self.u);
        if e < -ADMISSIBILITY_TOL * scale {
            return Err(Error::InadmissibleState(format!(
                "negative internal energy e = {e:.6e} (rho = {}, u = {}, E = {})",
                self.rho, self.u, self.energy
            )));
        }
        Ok((gamma - 1.0) * self.rho * e.max(0.0))
    }

    /// Pressure with tiny negative internal energies clamped to zero.
    /// For hot paths where the state is admissible by construction.
    pub fn pressure_clamped(&self, gamma: f64) -> f64 {
        if self.is_vacuum() {
            0.0
        } else {
            (gamma - 1.0) * self.rho * self.internal_energy().max(0.0)
        }
    }

    /// Local sound speed `c = sqrt(gamma p / rho)`; zero in vacuum.
    pub fn sound_speed(&self, gamma: f64) -> Result<f64> {
        if self.is_vacuum() {
            return Ok(0.0);
        }
        Ok((gamma * self.pressure(gamma)? / self.rho).sqrt())
    }

    /// Slowest characteristic speed `u - c`.
    pub fn lambda1(&self, gamma: f64) -> Result<f64> {
        Ok(self.u - self.sound_speed(gamma)?)
    }
}

/// The two-parameter problem description.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PistonParams {
    pub gamma: f64,
    pub mach: Mach,
    pub direction: Direction,
}

impl PistonParams {
    /// Validates `gamma > 1` and `0 < M0 <= inf`.
    pub fn new(gamma: f64, mach: Mach, direction: Direction) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma = {gamma} must be finite and > 1"
            )));
        }
        if let Mach::Finite(m) = mach {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "Mach number {m} must be positive and finite (or the Infinite sentinel)"
                )));
            }
        }
        Ok(PistonParams {
            gamma,
            mach,
            direction,
        })
    }

    /// Builds the problem from `(E0, M0)`, deriving `gamma` from the
    /// Mach/energy relation. Used when sweeping `M0` at fixed energy.
    pub fn from_energy_mach(e0: f64, m0: f64, direction: Direction) -> Result<Self> {
        let gamma = gamma_from_energy_mach(e0, m0)?;
        PistonParams::new(gamma, Mach::Finite(m0), direction)
    }

    /// Initial pressure `p0 = 1/(gamma M0^2)`.
    pub fn p0(&self) -> f64 {
        match self.mach {
            Mach::Finite(m) => 1.0 / (self.gamma * m * m),
            Mach::Infinite => 0.0,
        }
    }

    /// Initial sound speed `c0 = 1/M0`.
    pub fn c0(&self) -> f64 {
        match self.mach {
            Mach::Finite(m) => 1.0 / m,
            Mach::Infinite => 0.0,
        }
    }

    /// Initial total energy per unit mass; exactly `1/2` at infinite Mach.
    pub fn e0(&self) -> f64 {
        match self.mach {
            Mach::Finite(m) => 0.5 + 1.0 / (self.gamma * (self.gamma - 1.0) * m * m),
            Mach::Infinite => 0.5,
        }
    }

    /// The undisturbed state in wall coordinates: `(1, +/-1, E0)`.
    pub fn upstream(&self) -> GasState {
        let u = match self.direction {
            Direction::Rush => 1.0,
            Direction::Recede => -1.0,
        };
        GasState {
            rho: 1.0,
            u,
            energy: self.e0(),
        }
    }
}

/// Total energy from the Mach number: `E0 = 1/2 + 1/(gamma (gamma-1) M0^2)`.
///
/// `gamma = 1` with a finite Mach number has unbounded energy and is
/// rejected; pass `Mach::Infinite` for the limit regimes instead.
pub fn mach_energy(gamma: f64, mach: Mach) -> Result<f64> {
    if !gamma.is_finite() || gamma < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} must be >= 1"
        )));
    }
    match mach {
        Mach::Infinite => Ok(0.5),
        Mach::Finite(m) => {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "Mach number {m} must be positive"
                )));
            }
            if gamma == 1.0 {
                return Err(Error::InvalidParameter(
                    "gamma = 1 with finite Mach number has unbounded total energy".into(),
                ));
            }
            Ok(0.5 + 1.0 / (gamma * (gamma - 1.0) * m * m))
        }
    }
}

/// Mach number from the total energy. `E0 = 1/2` (or `gamma = 1` with any
/// admissible energy) maps to the infinite-Mach sentinel.
pub fn energy_mach(gamma: f64, e0: f64) -> Result<Mach> {
    if !gamma.is_finite() || gamma < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} must be >= 1"
        )));
    }
    if !e0.is_finite() || e0 < 0.5 {
        return Err(Error::InvalidParameter(format!(
            "total energy E0 = {e0} must be >= 1/2"
        )));
    }
    if gamma == 1.0 || e0 == 0.5 {
        return Ok(Mach::Infinite);
    }
    Ok(Mach::Finite(
        1.0 / (gamma * (gamma - 1.0) * (e0 - 0.5)).sqrt(),
    ))
}

/// `gamma` from `(E0, M0)`: the root > 1 of
/// `gamma (gamma - 1) = 1 / (M0^2 (E0 - 1/2))`.
pub fn gamma_from_energy_mach(e0: f64, m0: f64) -> Result<f64> {
    if !e0.is_finite() || e0 <= 0.5 {
        return Err(Error::InvalidParameter(format!(
            "total energy E0 = {e0} must be > 1/2"
        )));
    }
    if !m0.is_finite() || m0 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Mach number {m0} must be positive and finite"
        )));
    }
    let q = 1.0 / (m0 * m0 * (e0 - 0.5));
    Ok(0.5 * (1.0 + (1.0 + 4.0 * q).sqrt()))
}
