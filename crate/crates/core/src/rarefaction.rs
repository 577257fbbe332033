//! Exact solution of the retreating-wall problem: a simple expansion fan
//! connects the incoming stream to the state at rest on the wall, and a
//! vacuum region opens ahead of the wall once the retreat is fast enough.
//!
//! Along the fan the slow Riemann invariant `u + 2c/(gamma-1)` and the
//! entropy indicator `p / rho^gamma` are both constant, which reduces the
//! fan to a one-parameter family. We parametrize it by
//! `w = rho^((gamma-1)/2)`, in which the characteristic speed is affine:
//!
//! ```text
//!   eta(w) = -1 + (2 - (gamma+1) w) / ((gamma-1) M0),   w in [w_wall, 1].
//! ```

use crate::error::{Error, Result};
use crate::gas::{Direction, GasState, PistonParams};

/// Exact fan solution. `eta_head` is the upstream edge of the fan,
/// `eta_tail` its wall-side edge: the wall characteristic if the gas still
/// reaches the wall, or the vacuum boundary otherwise.
#[derive(Clone, Copy, Debug)]
pub struct RarefactionSolution {
    pub params: PistonParams,
    pub eta_head: f64,
    pub eta_tail: f64,
    /// True iff a vacuum region of positive width separates gas and wall,
    /// i.e. `M0 > 2/(gamma-1)` strictly. At exact threshold the wall
    /// density vanishes but no open vacuum region exists.
    pub vacuum: bool,
    /// State on the wall side of the fan; the vacuum state when `vacuum`.
    pub wall_state: GasState,
    /// Incoming stream `(1, -1, E0)`.
    pub upstream: GasState,
    /// Gas pressure at the wall (zero under vacuum).
    pub p_wall: f64,
    /// Largest value of the exponential fan parameter used,
    /// `s_max = -gamma ln(rho_wall)`; infinite when the fan reaches vacuum.
    pub s_max: f64,
}

impl RarefactionSolution {
    fn m0(&self) -> f64 {
        self.params.mach.value()
    }

    /// `w = rho^((gamma-1)/2)`, the variable in which the fan is affine.
    fn w_of_rho(&self, rho: f64) -> f64 {
        if rho <= 0.0 {
            0.0
        } else {
            (0.5 * (self.params.gamma - 1.0) * rho.ln()).exp()
        }
    }

    fn rho_of_w(&self, w: f64) -> f64 {
        if w <= 0.0 {
            0.0
        } else {
            (2.0 / (self.params.gamma - 1.0) * w.ln()).exp()
        }
    }

    /// Characteristic speed `u - c` along the fan as a function of `w`.
    fn eta_of_w(&self, w: f64) -> f64 {
        let gamma = self.params.gamma;
        -1.0 + (2.0 - (gamma + 1.0) * w) / ((gamma - 1.0) * self.m0())
    }

    /// Full state on the fan from the scaled density `w`.
    fn state_of_w(&self, w: f64) -> GasState {
        let gamma = self.params.gamma;
        let e0 = self.params.e0();
        let rho = self.rho_of_w(w);
        let u = -1.0 + 2.0 * (1.0 - w) / ((gamma - 1.0) * self.m0());
        let e = (e0 - 0.5) * w * w;
        GasState::new(rho, u, 0.5 * u * u + e)
    }

    /// Infallible sampling for quadrature hot paths; `eta` is clamped into
    /// the solution domain and the fan is inverted through the affine
    /// relation directly.
    pub fn sample_clamped(&self, eta: f64) -> GasState {
        let eta = eta.min(0.0);
        if eta <= self.eta_head {
            return self.upstream;
        }
        if eta >= self.eta_tail {
            return self.wall_state;
        }
        let gamma = self.params.gamma;
        let w = ((2.0 - (1.0 + eta) * (gamma - 1.0) * self.m0()) / (gamma + 1.0)).clamp(0.0, 1.0);
        self.state_of_w(w)
    }

    /// Inverts the characteristic-speed relation inside the fan. Bracketed
    /// bisection on `w` (the speed is strictly decreasing there), finished
    /// by one Newton step, which is exact because the relation is affine.
    fn invert_fan(&self, eta: f64) -> Result<f64> {
        let gamma = self.params.gamma;
        let m0 = self.m0();
        let w_tail = if self.vacuum {
            0.0
        } else {
            self.w_of_rho(self.wall_state.rho)
        };
        let (mut lo, mut hi) = (w_tail, 1.0);
        for _ in 0..60 {
            if hi - lo <= 1e-13 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.eta_of_w(mid) > eta {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let w = ((2.0 - (1.0 + eta) * (gamma - 1.0) * m0) / (gamma + 1.0))
            .clamp(lo - 1e-12, hi + 1e-12)
            .clamp(0.0, 1.0);
        let resid = (self.eta_of_w(w) - eta).abs();
        let tol = 1e-10 * eta.abs().max(1.0);
        if resid > tol {
            return Err(Error::Numerical {
                what: format!("fan inversion at eta = {eta}"),
                achieved: resid,
                required: tol,
            });
        }
        Ok(w)
    }
}

/// Solves the retreating-wall problem for `gamma > 1`, `0 < M0 < inf`.
pub fn solve_rarefaction(params: &PistonParams) -> Result<RarefactionSolution> {
    if params.direction != Direction::Recede {
        return Err(Error::InvalidParameter(
            "rarefaction solution requires the retreating-wall direction".into(),
        ));
    }
    let gamma = params.gamma;
    let m0 = params.mach.finite()?;
    if !(gamma > 1.0) || !(m0 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need gamma > 1 and 0 < M0 < inf, got gamma = {gamma}, M0 = {m0}"
        )));
    }
    let e0 = params.e0();
    let p0 = params.p0();
    let eta_head = -1.0 - 1.0 / m0;

    let vacuum = m0 > 2.0 / (gamma - 1.0);
    // w at the wall; <= 0 at and beyond the vacuum threshold
    let w_wall = 1.0 - 0.5 * (gamma - 1.0) * m0;

    let mut sol = RarefactionSolution {
        params: *params,
        eta_head,
        eta_tail: 0.0,
        vacuum,
        wall_state: GasState::VACUUM,
        upstream: GasState {
            rho: 1.0,
            u: -1.0,
            energy: e0,
        },
        p_wall: 0.0,
        s_max: f64::INFINITY,
    };

    if vacuum {
        // gas/vacuum interface, obtained from the fan at zero density
        sol.eta_tail = -1.0 + 2.0 / ((gamma - 1.0) * m0);
    } else if w_wall <= 0.0 {
        // exact threshold M0 = 2/(gamma-1): the fan just exhausts the gas
        // at the wall; no vacuum region of positive width
        sol.eta_tail = -1.0 + 2.0 / ((gamma - 1.0) * m0);
    } else {
        let rho_wall = sol.rho_of_w(w_wall);
        let e_wall = (e0 - 0.5) * w_wall * w_wall;
        sol.wall_state = GasState::new(rho_wall, 0.0, e_wall);
        // lambda_1 of the wall state: -c_wall = -w_wall / M0
        sol.eta_tail = -w_wall / m0;
        if !sol.wall_state.is_vacuum() {
            // p_wall = p0 rho^gamma, written via w to survive gamma -> 1
            sol.p_wall = p0 * (2.0 * gamma / (gamma - 1.0) * w_wall.ln()).exp();
            sol.s_max = -gamma * rho_wall.ln();
        }
    }
    Ok(sol)
}

/// Samples the self-similar solution at `eta = x/t <= 0`: the incoming
/// stream before the fan head, the fan itself, and the wall (or vacuum)
/// state beyond the tail.
pub fn fan_state(sol: &RarefactionSolution, eta: f64) -> Result<GasState> {
    if eta > 0.0 {
        return Err(Error::Domain(format!(
            "eta = {eta} outside the solution domain eta <= 0"
        )));
    }
    if eta <= sol.eta_head {
        return Ok(sol.upstream);
    }
    if eta >= sol.eta_tail {
        return Ok(sol.wall_state);
    }
    let w = sol.invert_fan(eta)?;
    Ok(sol.state_of_w(w))
}
