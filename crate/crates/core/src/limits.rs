//! High-Mach-number limits of both wall directions, and numerical
//! certification that the finite-Mach solutions converge to them weakly as
//! measures.
//!
//! Two one-parameter limit families exist. Holding `gamma` fixed sends the
//! incoming total energy to `1/2` (a cold, infinitely supersonic stream);
//! holding `E0` fixed sends `gamma` to 1, which is the singular family: for
//! the advancing wall the compressed layer thins to nothing and a growing
//! share of the mass concentrates on the wall itself.

use crate::error::{Error, Result};
use crate::gas::{Direction, GasState, Mach, PistonParams};
use crate::measure::{
    DiracWeight, MeasureBundle, PhiField, TestFunction, MEASURE_NAMES, PHI_HORIZON,
};
use crate::rarefaction::solve_rarefaction;
use crate::shock::solve_shock;
use serde_json::{json, Value};

/// The four limit regimes: direction crossed with which parameter is held.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LimitRegime {
    /// Advancing wall, `gamma` fixed: two-state limit with finite
    /// compression `(gamma+1)/(gamma-1)`.
    RushFixedGamma { gamma: f64 },
    /// Advancing wall, `E0` fixed: the shock collapses onto the wall and
    /// mass concentrates there with weight `t`.
    RushFixedEnergy { e0: f64 },
    /// Retreating wall, `gamma` fixed: the fan degenerates to the line
    /// `x = -t` with vacuum beyond.
    RecedeFixedGamma { gamma: f64 },
    /// Retreating wall, `E0` fixed: same geometry, energy `E0` retained.
    RecedeFixedEnergy { e0: f64 },
}

impl LimitRegime {
    pub fn is_rush(&self) -> bool {
        matches!(
            self,
            LimitRegime::RushFixedGamma { .. } | LimitRegime::RushFixedEnergy { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            LimitRegime::RushFixedGamma { .. } => "rush-fixed-gamma",
            LimitRegime::RushFixedEnergy { .. } => "rush-fixed-energy",
            LimitRegime::RecedeFixedGamma { .. } => "recede-fixed-gamma",
            LimitRegime::RecedeFixedEnergy { .. } => "recede-fixed-energy",
        }
    }

    /// The finite-Mach problem of this family at Mach number `m0`.
    pub fn finite_params(&self, m0: f64) -> Result<PistonParams> {
        match *self {
            LimitRegime::RushFixedGamma { gamma } => {
                PistonParams::new(gamma, Mach::Finite(m0), Direction::Rush)
            }
            LimitRegime::RushFixedEnergy { e0 } => {
                PistonParams::from_energy_mach(e0, m0, Direction::Rush)
            }
            LimitRegime::RecedeFixedGamma { gamma } => {
                PistonParams::new(gamma, Mach::Finite(m0), Direction::Recede)
            }
            LimitRegime::RecedeFixedEnergy { e0 } => {
                PistonParams::from_energy_mach(e0, m0, Direction::Recede)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            LimitRegime::RushFixedGamma { gamma } | LimitRegime::RecedeFixedGamma { gamma } => {
                if !(gamma > 1.0) || !gamma.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "gamma = {gamma} must be finite and > 1"
                    )));
                }
            }
            LimitRegime::RushFixedEnergy { e0 } | LimitRegime::RecedeFixedEnergy { e0 } => {
                if !(e0 > 0.5) || !e0.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "E0 = {e0} must be finite and > 1/2"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Closed-form limit values of the shock quantities.
#[derive(Clone, Copy, Debug)]
pub struct LimitValues {
    /// `None` means the compression ratio diverges.
    pub rho1: Option<f64>,
    pub sigma: f64,
    pub p1: f64,
    pub e1: f64,
    pub rho1_sigma: f64,
}

/// Limiting solution: two regions split at `split_eta`, optional mass and
/// energy concentration on the wall, and the wall pressure weight.
#[derive(Clone, Copy, Debug)]
pub struct LimitSolution {
    pub regime: LimitRegime,
    /// Region boundary in `eta`; for the concentration regime the second
    /// region is empty and this is 0.
    pub split_eta: f64,
    /// State for `eta < split_eta`.
    pub left: GasState,
    /// State beyond `split_eta`; `None` when the left state fills the
    /// whole quarter plane.
    pub right: Option<GasState>,
    /// Shock-limit values (advancing wall only).
    pub values: Option<LimitValues>,
    /// Coefficient of `t delta_wall` in the mass measure.
    pub mass_dirac: Option<f64>,
    /// Coefficient of `t delta_wall` in the total-energy measure.
    pub energy_dirac: Option<f64>,
    pub wall_pressure: f64,
    /// True when the region beyond the split is vacuum.
    pub vacuum_beyond: bool,
}

/// High-Mach limit of the advancing-wall problem.
pub fn shock_limits(regime: &LimitRegime) -> Result<LimitSolution> {
    regime.validate()?;
    match *regime {
        LimitRegime::RushFixedGamma { gamma } => {
            let rho1 = (gamma + 1.0) / (gamma - 1.0);
            let sigma = (1.0 - gamma) / 2.0;
            let p1 = (gamma + 1.0) / 2.0;
            Ok(LimitSolution {
                regime: *regime,
                split_eta: sigma,
                left: GasState {
                    rho: 1.0,
                    u: 1.0,
                    energy: 0.5,
                },
                right: Some(GasState {
                    rho: rho1,
                    u: 0.0,
                    energy: 0.5,
                }),
                values: Some(LimitValues {
                    rho1: Some(rho1),
                    sigma,
                    p1,
                    e1: 0.5,
                    rho1_sigma: rho1 * sigma,
                }),
                mass_dirac: None,
                energy_dirac: None,
                wall_pressure: p1,
                vacuum_beyond: false,
            })
        }
        LimitRegime::RushFixedEnergy { e0 } => Ok(LimitSolution {
            regime: *regime,
            split_eta: 0.0,
            left: GasState {
                rho: 1.0,
                u: 1.0,
                energy: e0,
            },
            right: None,
            values: Some(LimitValues {
                rho1: None,
                sigma: 0.0,
                p1: 1.0,
                e1: e0,
                rho1_sigma: -1.0,
            }),
            mass_dirac: Some(1.0),
            energy_dirac: Some(e0),
            wall_pressure: 1.0,
            vacuum_beyond: false,
        }),
        _ => Err(Error::InvalidParameter(
            "shock limit requires an advancing-wall regime".into(),
        )),
    }
}

/// High-Mach limit of the retreating-wall problem: a contact line at
/// `eta = -1` with vacuum beyond; pressureless in both families.
pub fn recede_limits(regime: &LimitRegime) -> Result<LimitSolution> {
    regime.validate()?;
    let energy = match *regime {
        LimitRegime::RecedeFixedGamma { .. } => 0.5,
        LimitRegime::RecedeFixedEnergy { e0 } => e0,
        _ => {
            return Err(Error::InvalidParameter(
                "recede limit requires a retreating-wall regime".into(),
            ))
        }
    };
    Ok(LimitSolution {
        regime: *regime,
        split_eta: -1.0,
        left: GasState {
            rho: 1.0,
            u: -1.0,
            energy,
        },
        right: Some(GasState::VACUUM),
        values: None,
        mass_dirac: None,
        energy_dirac: None,
        wall_pressure: 0.0,
        vacuum_beyond: true,
    })
}

/// Either limit, dispatched on the regime.
pub fn limit_solution(regime: &LimitRegime) -> Result<LimitSolution> {
    if regime.is_rush() {
        shock_limits(regime)
    } else {
        recede_limits(regime)
    }
}

impl MeasureBundle {
    /// Measure bundle of a limiting solution.
    pub fn from_limit(sol: &LimitSolution) -> Self {
        // the fixed-energy families live at gamma = 1, where the state
        // function makes the limits pressureless upstream
        let gamma = match sol.regime {
            LimitRegime::RushFixedGamma { gamma } | LimitRegime::RecedeFixedGamma { gamma } => {
                gamma
            }
            _ => 1.0,
        };
        let initial = crate::measure::InitialData {
            rho: sol.left.rho,
            u: sol.left.u,
            energy: sol.left.energy,
        };
        let mut bundle = match sol.right {
            Some(right) => {
                MeasureBundle::from_states(gamma, initial, &[sol.split_eta], &[sol.left, right])
            }
            None => MeasureBundle::from_states(gamma, initial, &[], &[sol.left]),
        };
        bundle.wall_weight = DiracWeight::Constant(sol.wall_pressure);
        if let (Some(m), Some(e)) = (sol.mass_dirac, sol.energy_dirac) {
            bundle = bundle.with_wall_concentration(m, e);
        }
        bundle
    }
}

/// Pairing gaps between the finite-Mach measure solutions along a Mach
/// sequence and the limit solution, per measure component and test
/// function, plus the wall-weight gap in `L^1(0, T)`.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub regime: LimitRegime,
    pub mach_sequence: Vec<f64>,
    pub phi_labels: Vec<String>,
    /// `gaps[k][j][c]`: Mach index `k`, test function `j`, component `c`
    /// (ordered as [`MEASURE_NAMES`]).
    pub gaps: Vec<Vec<[f64; 7]>>,
    /// Wall-weight gaps per Mach index, integrated over `[0, horizon]`.
    pub wall_weight_gaps: Vec<f64>,
    pub horizon: f64,
    pub quad_tol: f64,
}

impl ConvergenceReport {
    pub fn gap_column(&self, component: usize, phi_idx: usize) -> Vec<f64> {
        self.gaps.iter().map(|per_m0| per_m0[phi_idx][component]).collect()
    }

    /// True if the column never increases from its second entry on.
    pub fn column_monotone_from_second(&self, component: usize, phi_idx: usize) -> bool {
        let col = self.gap_column(component, phi_idx);
        col.windows(2).skip(1).all(|w| w[1] <= w[0] + self.quad_tol)
    }

    pub fn final_gap(&self, component: usize, phi_idx: usize) -> f64 {
        *self
            .gap_column(component, phi_idx)
            .last()
            .expect("nonempty Mach sequence")
    }

    /// Largest final gap of one component across the family.
    pub fn max_final_gap(&self, component: usize) -> f64 {
        (0..self.phi_labels.len())
            .map(|j| self.final_gap(component, j))
            .fold(0.0, f64::max)
    }

    /// CSV rows `m0,measure,phi,gap`, one per entry, after a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m0,measure,phi,gap\n");
        for (k, &m0) in self.mach_sequence.iter().enumerate() {
            for (c, name) in MEASURE_NAMES.iter().enumerate() {
                for (j, label) in self.phi_labels.iter().enumerate() {
                    out.push_str(&format!("{m0},{name},{label},{:.12e}\n", self.gaps[k][j][c]));
                }
            }
            out.push_str(&format!(
                "{m0},wall_weight,L1({:.1}),{:.12e}\n",
                self.horizon, self.wall_weight_gaps[k]
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let monotone: Vec<bool> = (0..7)
            .map(|c| {
                (0..self.phi_labels.len())
                    .all(|j| self.column_monotone_from_second(c, j))
            })
            .collect();
        let final_gaps: Vec<f64> = (0..7).map(|c| self.max_final_gap(c)).collect();
        json!({
            "schema": 1,
            "regime": self.regime.name(),
            "mach_sequence": self.mach_sequence,
            "phi_count": self.phi_labels.len(),
            "quad_tol": self.quad_tol,
            "horizon": self.horizon,
            "measures": MEASURE_NAMES,
            "monotone_from_second": monotone,
            "max_final_gap": final_gaps,
            "wall_weight_gaps": self.wall_weight_gaps,
        })
    }
}

/// Default Mach sequence for convergence studies.
pub const DEFAULT_MACH_SEQUENCE: [f64; 4] = [1e1, 1e2, 1e3, 1e4];

/// Runs the weak-convergence study: pairs every finite-Mach bundle and the
/// limit bundle against the family and tabulates the absolute gaps.
///
/// Pairings use the test-function values themselves (weak convergence of
/// measures), not their derivatives.
pub fn convergence_study(
    regime: &LimitRegime,
    mach_sequence: &[f64],
    phis: &[TestFunction],
    quad_tol: f64,
) -> Result<ConvergenceReport> {
    if mach_sequence.is_empty() {
        return Err(Error::InvalidParameter("empty Mach sequence".into()));
    }
    if !mach_sequence.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::InvalidParameter(
            "Mach sequence must be strictly increasing".into(),
        ));
    }
    let limit = limit_solution(regime)?;
    let limit_bundle = MeasureBundle::from_limit(&limit);

    // limit pairings, computed once
    let mut limit_pairings = vec![[0.0_f64; 7]; phis.len()];
    for (j, phi) in phis.iter().enumerate() {
        for (c, (_, m)) in limit_bundle.components().iter().enumerate() {
            limit_pairings[j][c] = m.pair(phi, PhiField::Value, quad_tol)?;
        }
    }

    let horizon = PHI_HORIZON;
    let mut gaps = Vec::with_capacity(mach_sequence.len());
    let mut wall_weight_gaps = Vec::with_capacity(mach_sequence.len());
    for &m0 in mach_sequence {
        let params = regime.finite_params(m0)?;
        let bundle = match params.direction {
            Direction::Rush => MeasureBundle::from_shock(&solve_shock(&params)?),
            Direction::Recede => {
                MeasureBundle::from_rarefaction(&solve_rarefaction(&params)?)
            }
        };
        let mut per_phi = vec![[0.0_f64; 7]; phis.len()];
        for (j, phi) in phis.iter().enumerate() {
            for (c, (_, m)) in bundle.components().iter().enumerate() {
                let v = m.pair(phi, PhiField::Value, quad_tol)?;
                per_phi[j][c] = (v - limit_pairings[j][c]).abs();
            }
        }
        gaps.push(per_phi);
        // both weights are constants, so the local L^1 gap is exact
        let dw = (bundle.wall_weight.coefficient() - limit_bundle.wall_weight.coefficient())
            .abs();
        wall_weight_gaps.push(dw * horizon);
    }

    Ok(ConvergenceReport {
        regime: *regime,
        mach_sequence: mach_sequence.to_vec(),
        phi_labels: phis.iter().map(|p| p.label()).collect(),
        gaps,
        wall_weight_gaps,
        horizon,
        quad_tol,
    })
}
