//! Exact solution of the advancing-wall problem for finite Mach number:
//! a single left-facing shock separates the incoming uniform stream from
//! the stagnant compressed gas at the wall.
//!
//! Eliminating the downstream pressure and energy from the jump conditions
//! with the state function leaves a quadratic in the shock strength
//! `y = rho1 - 1`; the admissible (compressive) branch is the positive
//! root. All other quantities follow in closed form:
//!
//! ```text
//!   sigma = -1 / y
//!   p1    = p0 + 1 + 1/y
//!   E1    = (y (E0 + p0) + E0) / (1 + y)
//! ```

use crate::error::{Error, Result};
use crate::gas::{Direction, GasState, PistonParams};

/// Exact two-state solution with a left-facing shock at `x/t = sigma`.
#[derive(Clone, Copy, Debug)]
pub struct ShockSolution {
    pub params: PistonParams,
    /// Shock speed, always negative.
    pub sigma: f64,
    /// Incoming stream `(1, 1, E0)`.
    pub upstream: GasState,
    /// Stagnant compressed state `(rho1, 0, E1)`.
    pub downstream: GasState,
    /// Downstream pressure.
    pub p1: f64,
    /// Shock strength `y = rho1 - 1`. Kept as the primary variable: the
    /// compression ratio blows up as gamma -> 1 and products like
    /// `rho1 * sigma` must be formed from `y` to avoid cancellation.
    strength: f64,
}

impl ShockSolution {
    pub fn rho1(&self) -> f64 {
        1.0 + self.strength
    }

    pub fn e1(&self) -> f64 {
        self.downstream.energy
    }

    /// `rho1 - 1 > 0`.
    pub fn strength(&self) -> f64 {
        self.strength
    }

    /// `rho1 * sigma = -(1 + 1/y)`, formed from the strength directly so it
    /// stays accurate when `rho1` is huge.
    pub fn rho1_sigma(&self) -> f64 {
        -(1.0 + 1.0 / self.strength)
    }
}

/// Solves the advancing-wall problem for `gamma > 1`, `0 < M0 < inf`.
pub fn solve_shock(params: &PistonParams) -> Result<ShockSolution> {
    if params.direction != Direction::Rush {
        return Err(Error::InvalidParameter(
            "shock solution requires the advancing-wall direction".into(),
        ));
    }
    let gamma = params.gamma;
    let m0 = params.mach.finite()?;
    if !(gamma > 1.0) || !(m0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need gamma > 1 and 0 < M0 < inf, got gamma = {gamma}, M0 = {m0}"
        )));
    }
    let p0 = params.p0();
    let e0 = params.e0();

    // a y^2 + b y - 1 = 0 with y = rho1 - 1. Note b = (gamma - 3)/2
    // identically, so the branch below switches sign exactly at gamma = 3.
    let a = (gamma - 1.0) * (e0 + p0);
    let b = (gamma - 1.0) * e0 - p0 - 1.0;
    let disc = b * b + 4.0 * a;
    if !(a > 0.0) || !(disc > 0.0) {
        return Err(Error::Internal(format!(
            "shock quadratic degenerate: a = {a:.3e}, discriminant = {disc:.3e}"
        )));
    }
    // positive root, evaluated in the cancellation-free form on each branch
    let y = if b <= 0.0 {
        (-b + disc.sqrt()) / (2.0 * a)
    } else {
        2.0 / (b + disc.sqrt())
    };
    if !(y > 0.0) {
        return Err(Error::Internal(format!(
            "compressive root not positive: y = {y:.3e}"
        )));
    }

    let sigma = -1.0 / y;
    let p1 = p0 + 1.0 + 1.0 / y;
    let e1 = (y * (e0 + p0) + e0) / (1.0 + y);

    Ok(ShockSolution {
        params: *params,
        sigma,
        upstream: GasState {
            rho: 1.0,
            u: 1.0,
            energy: e0,
        },
        downstream: GasState {
            rho: 1.0 + y,
            u: 0.0,
            energy: e1,
        },
        p1,
        strength: y,
    })
}

/// Residuals `sigma [U] - [F]` of the mass, momentum and energy jump
/// conditions across a discontinuity of speed `sigma`; all three vanish for
/// a genuine shock.
pub fn rh_residual(up: &GasState, down: &GasState, sigma: f64, gamma: f64) -> Result<[f64; 3]> {
    let pu = up.pressure(gamma)?;
    let pd = down.pressure(gamma)?;
    let mu = up.rho * up.u;
    let md = down.rho * down.u;
    Ok([
        sigma * (down.rho - up.rho) - (md - mu),
        sigma * (md - mu) - ((down.rho * down.u * down.u + pd) - (up.rho * up.u * up.u + pu)),
        sigma * (down.rho * down.energy - up.rho * up.energy)
            - ((md * down.energy + down.u * pd) - (mu * up.energy + up.u * pu)),
    ])
}

/// Jump-condition residuals scaled by `max(1, |lhs|, |rhs|)` per equation.
/// The raw residuals grow with the compression ratio, which is unbounded as
/// gamma -> 1, so tolerance checks use this form.
pub fn rh_residual_scaled(
    up: &GasState,
    down: &GasState,
    sigma: f64,
    gamma: f64,
) -> Result<[f64; 3]> {
    let pu = up.pressure(gamma)?;
    let pd = down.pressure(gamma)?;
    let mu = up.rho * up.u;
    let md = down.rho * down.u;
    let lhs = [
        sigma * (down.rho - up.rho),
        sigma * (md - mu),
        sigma * (down.rho * down.energy - up.rho * up.energy),
    ];
    let rhs = [
        md - mu,
        (down.rho * down.u * down.u + pd) - (up.rho * up.u * up.u + pu),
        (md * down.energy + down.u * pd) - (mu * up.energy + up.u * pu),
    ];
    let mut out = [0.0; 3];
    for k in 0..3 {
        out[k] = (lhs[k] - rhs[k]) / 1.0_f64.max(lhs[k].abs()).max(rhs[k].abs());
    }
    Ok(out)
}

/// Samples the self-similar solution at `eta = x/t <= 0`. The tie
/// `eta = sigma` returns the downstream state.
pub fn sample_shock(sol: &ShockSolution, eta: f64) -> Result<GasState> {
    if eta > 0.0 {
        return Err(Error::Domain(format!(
            "eta = {eta} outside the solution domain eta <= 0"
        )));
    }
    Ok(if eta < sol.sigma {
        sol.upstream
    } else {
        sol.downstream
    })
}
