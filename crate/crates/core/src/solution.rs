//! Unified view over the two exact solution families, used by the
//! finite-volume comparison and the command-line front end.

use crate::error::Result;
use crate::gas::{Direction, GasState, PistonParams};
use crate::measure::MeasureBundle;
use crate::rarefaction::{fan_state, solve_rarefaction, RarefactionSolution};
use crate::shock::{sample_shock, solve_shock, ShockSolution};

/// Piecewise description of the self-similar solution `V(x/t)`.
#[derive(Clone, Copy, Debug)]
pub enum SelfSimilarSolution {
    Shock(ShockSolution),
    Rarefaction(RarefactionSolution),
}

impl SelfSimilarSolution {
    pub fn solve(params: &PistonParams) -> Result<Self> {
        Ok(match params.direction {
            Direction::Rush => SelfSimilarSolution::Shock(solve_shock(params)?),
            Direction::Recede => {
                SelfSimilarSolution::Rarefaction(solve_rarefaction(params)?)
            }
        })
    }

    pub fn params(&self) -> &PistonParams {
        match self {
            SelfSimilarSolution::Shock(s) => &s.params,
            SelfSimilarSolution::Rarefaction(r) => &r.params,
        }
    }

    pub fn state_at(&self, eta: f64) -> Result<GasState> {
        match self {
            SelfSimilarSolution::Shock(s) => sample_shock(s, eta),
            SelfSimilarSolution::Rarefaction(r) => fan_state(r, eta),
        }
    }

    /// Infallible sampling with `eta` clamped into the domain.
    pub fn sample_clamped(&self, eta: f64) -> GasState {
        match self {
            SelfSimilarSolution::Shock(s) => {
                if eta.min(0.0) < s.sigma {
                    s.upstream
                } else {
                    s.downstream
                }
            }
            SelfSimilarSolution::Rarefaction(r) => r.sample_clamped(eta),
        }
    }

    /// Speeds of the wave features (shock, or fan edges).
    pub fn features(&self) -> Vec<f64> {
        match self {
            SelfSimilarSolution::Shock(s) => vec![s.sigma],
            SelfSimilarSolution::Rarefaction(r) => vec![r.eta_head, r.eta_tail],
        }
    }

    /// Conservative bound on the fastest left-running signal; nothing in
    /// the solution (or its numerical smearing) outruns this.
    pub fn leftmost_wave_speed(&self) -> f64 {
        let gamma = self.params().gamma;
        match self {
            SelfSimilarSolution::Shock(s) => {
                let lam_up = s.upstream.lambda1(gamma).unwrap_or(0.0);
                let lam_down = s.downstream.lambda1(gamma).unwrap_or(0.0);
                s.sigma.min(lam_up).min(lam_down)
            }
            SelfSimilarSolution::Rarefaction(r) => r.eta_head,
        }
    }

    /// The measure bundle of this solution.
    pub fn bundle(&self) -> MeasureBundle {
        match self {
            SelfSimilarSolution::Shock(s) => MeasureBundle::from_shock(s),
            SelfSimilarSolution::Rarefaction(r) => MeasureBundle::from_rarefaction(r),
        }
    }
}
