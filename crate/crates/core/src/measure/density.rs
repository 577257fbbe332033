//! Absolutely continuous measure parts: piecewise self-similar profiles
//! `g(x/t) dx dt` on the quarter plane `x < 0, t > 0`, and their pairings
//! with test functions.
//!
//! A pairing is an iterated integral: the inner sweep in `x` is split at
//! each feature line `x = eta_b t` and at the wall, the outer sweep in `t`
//! at the times where those lines cross the bump support. On the resulting
//! cells the integrand is smooth and the adaptive rule converges fast.

use crate::error::{Error, Result};
use crate::gas::GasState;
use crate::measure::quad::integrate_split;
use crate::measure::test_function::{PhiField, TestFunction};
use crate::rarefaction::RarefactionSolution;

/// Which scalar field of the flow a profile carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluxField {
    /// rho
    Density,
    /// rho u
    Momentum,
    /// rho u^2
    MomentumFlux,
    /// rho E
    Energy,
    /// rho u E
    EnergyFlux,
    /// u p
    PressureWork,
    /// p
    Pressure,
}

impl FluxField {
    pub fn eval(self, state: &GasState, gamma: f64) -> f64 {
        match self {
            FluxField::Density => state.rho,
            FluxField::Momentum => state.rho * state.u,
            FluxField::MomentumFlux => state.rho * state.u * state.u,
            FluxField::Energy => state.rho * state.energy,
            FluxField::EnergyFlux => state.rho * state.u * state.energy,
            FluxField::PressureWork => state.u * state.pressure_clamped(gamma),
            FluxField::Pressure => state.pressure_clamped(gamma),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FluxField::Density => "density",
            FluxField::Momentum => "momentum",
            FluxField::MomentumFlux => "momentum_flux",
            FluxField::Energy => "energy",
            FluxField::EnergyFlux => "energy_flux",
            FluxField::PressureWork => "pressure_work",
            FluxField::Pressure => "pressure",
        }
    }
}

/// Profile of one piece: constant, or a field evaluated along an
/// expansion fan.
#[derive(Clone, Copy, Debug)]
pub enum Profile {
    Constant(f64),
    Fan {
        solution: RarefactionSolution,
        field: FluxField,
    },
}

impl Profile {
    fn eval(&self, eta: f64) -> f64 {
        match self {
            Profile::Constant(v) => *v,
            Profile::Fan { solution, field } => {
                let state = solution.sample_clamped(eta);
                field.eval(&state, solution.params.gamma)
            }
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Profile::Constant(0.0))
    }
}

/// One piece of a profile on an `eta` interval (`eta_lo` may be `-inf`).
#[derive(Clone, Copy, Debug)]
pub struct Piece {
    pub eta_lo: f64,
    pub eta_hi: f64,
    pub profile: Profile,
}

/// A piecewise self-similar density `g(x/t)` supported on `x < 0, t > 0`.
/// Pieces are contiguous and ordered; the last one ends at `eta = 0`.
#[derive(Clone, Debug, Default)]
pub struct SelfSimilarDensity {
    pub pieces: Vec<Piece>,
}

impl SelfSimilarDensity {
    /// Piecewise-constant profile: `breaks` are the interior breakpoints in
    /// increasing order and `values[k]` the value between `breaks[k-1]` and
    /// `breaks[k]` (first piece starts at `-inf`, last ends at `0`).
    pub fn piecewise_constant(breaks: &[f64], values: &[f64]) -> Self {
        assert_eq!(values.len(), breaks.len() + 1);
        let mut edges = vec![f64::NEG_INFINITY];
        edges.extend_from_slice(breaks);
        edges.push(0.0);
        let pieces = values
            .iter()
            .zip(edges.windows(2))
            .map(|(&v, e)| Piece {
                eta_lo: e[0],
                eta_hi: e[1],
                profile: Profile::Constant(v),
            })
            .collect();
        SelfSimilarDensity { pieces }
    }

    /// The profile value at `eta <= 0`.
    pub fn eval(&self, eta: f64) -> f64 {
        for (k, p) in self.pieces.iter().enumerate() {
            let last = k + 1 == self.pieces.len();
            if eta < p.eta_hi || (last && eta <= p.eta_hi) {
                return p.profile.eval(eta);
            }
        }
        0.0
    }

    /// Interior breakpoints (finite ones only).
    pub fn breakpoints(&self) -> Vec<f64> {
        self.pieces
            .iter()
            .map(|p| p.eta_lo)
            .filter(|e| e.is_finite())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(|p| p.profile.is_zero())
    }

    /// Pairing with a bump field over the quarter plane, to absolute
    /// tolerance `tol`.
    pub fn pair(&self, phi: &TestFunction, field: PhiField, tol: f64) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let t_lo = (phi.t0 - phi.r).max(0.0);
        let t_hi = phi.t0 + phi.r;
        if !(t_hi > t_lo) {
            return Ok(0.0);
        }

        // outer split times: feature lines x = eta_b t entering/leaving the
        // disk, and the wall doing the same
        let breaks = self.breakpoints();
        let mut t_splits: Vec<f64> = Vec::new();
        for &eta_b in &breaks {
            // (1 + eta^2) t^2 - 2 (t0 + eta x0) t + (t0^2 + x0^2 - r^2) = 0
            let a = 1.0 + eta_b * eta_b;
            let b = -2.0 * (phi.t0 + eta_b * phi.x0);
            let c = phi.t0 * phi.t0 + phi.x0 * phi.x0 - phi.r * phi.r;
            let disc = b * b - 4.0 * a * c;
            if disc > 0.0 {
                let sq = disc.sqrt();
                t_splits.push((-b - sq) / (2.0 * a));
                t_splits.push((-b + sq) / (2.0 * a));
            }
        }
        if phi.x0.abs() < phi.r {
            let half = (phi.r * phi.r - phi.x0 * phi.x0).sqrt();
            t_splits.push(phi.t0 - half);
            t_splits.push(phi.t0 + half);
        }

        let inner_tol = (tol * 2e-2).max(1e-300);
        let mut worst_inner = 0.0_f64;

        let mut row = |t: f64| -> f64 {
            let chord = (phi.r * phi.r - (t - phi.t0).powi(2)).max(0.0).sqrt();
            let x_lo = phi.x0 - chord;
            let x_hi = (phi.x0 + chord).min(0.0);
            if !(x_hi > x_lo) {
                return 0.0;
            }
            let x_splits: Vec<f64> = breaks.iter().map(|&e| e * t).collect();
            let mut integrand = |x: f64| {
                let eta = if t > 0.0 {
                    x / t
                } else if x < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    0.0
                };
                self.eval(eta) * phi.eval(field, t, x)
            };
            let (v, e) = integrate_split(&mut integrand, x_lo, x_hi, &x_splits, inner_tol);
            worst_inner = worst_inner.max(e);
            v
        };

        let (value, outer_err) = integrate_split(&mut row, t_lo, t_hi, &t_splits, tol * 0.9);
        let total_err = outer_err + worst_inner * (t_hi - t_lo);
        if total_err > tol {
            return Err(Error::Numerical {
                what: format!("density pairing against {}", phi.label()),
                achieved: total_err,
                required: tol,
            });
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn unit_profile_integrates_bump_exactly() {
        // <1 * L^2 restricted to the quarter plane, phi> for a bump whose
        // disk lies wholly inside: the closed form r^2 (pi^2 - 4) / (2 pi),
        // confirmed by polar and Cartesian quadrature oracles.
        let dens = SelfSimilarDensity::piecewise_constant(&[], &[1.0]);
        let phi = TestFunction::new(1.0, -1.0, 0.5);
        let v = dens.pair(&phi, PhiField::Value, 1e-10).unwrap();
        let closed = 0.25 * (PI * PI - 4.0) / (2.0 * PI);
        assert_abs_diff_eq!(v, closed, epsilon = 1e-10);
        assert_abs_diff_eq!(v, 0.233544138606828819, epsilon = 1e-10);
    }

    #[test]
    fn clipping_at_the_wall_halves_a_centered_bump() {
        // bump centered on the wall: only the x <= 0 half contributes
        let dens = SelfSimilarDensity::piecewise_constant(&[], &[1.0]);
        let phi = TestFunction::new(1.0, 0.0, 0.5);
        let v = dens.pair(&phi, PhiField::Value, 1e-10).unwrap();
        let closed = 0.5 * 0.25 * (PI * PI - 4.0) / (2.0 * PI);
        assert_abs_diff_eq!(v, closed, epsilon = 1e-10);
    }

    #[test]
    fn derivative_fields_integrate_to_zero_inside_constant_region() {
        // with a constant profile, pairing against either partial of a bump
        // compactly supported in the interior is a divergence: exactly zero
        let dens = SelfSimilarDensity::piecewise_constant(&[], &[2.5]);
        let phi = TestFunction::new(1.0, -1.0, 0.4);
        let vt = dens.pair(&phi, PhiField::Dt, 1e-11).unwrap();
        let vx = dens.pair(&phi, PhiField::Dx, 1e-11).unwrap();
        assert!(vt.abs() <= 1e-11, "dt pairing {vt:.3e}");
        assert!(vx.abs() <= 1e-11, "dx pairing {vx:.3e}");
    }

    #[test]
    fn step_profile_weights_the_two_wedges() {
        // profile 2 before eta = -1, 5 after; bump centered on the line.
        // By symmetry of the bump about x = -t the pairing is the mean of
        // the two values times the bump mass.
        let dens = SelfSimilarDensity::piecewise_constant(&[-1.0], &[2.0, 5.0]);
        let phi = TestFunction::new(1.0, -1.0, 0.3);
        let v = dens.pair(&phi, PhiField::Value, 1e-10).unwrap();
        let bump_mass = 0.09 * (PI * PI - 4.0) / (2.0 * PI);
        assert_abs_diff_eq!(v, 3.5 * bump_mass, epsilon = 2e-10);
    }

    #[test]
    fn support_beyond_the_wall_contributes_nothing() {
        let dens = SelfSimilarDensity::piecewise_constant(&[], &[1.0]);
        let phi = TestFunction::new(1.0, 1.0, 0.4);
        assert_eq!(dens.pair(&phi, PhiField::Value, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn eval_selects_pieces_and_handles_infinite_eta() {
        let dens = SelfSimilarDensity::piecewise_constant(&[-1.0, -0.5], &[1.0, 2.0, 3.0]);
        assert_eq!(dens.eval(f64::NEG_INFINITY), 1.0);
        assert_eq!(dens.eval(-2.0), 1.0);
        assert_eq!(dens.eval(-0.7), 2.0);
        assert_eq!(dens.eval(-0.2), 3.0);
        assert_eq!(dens.eval(0.0), 3.0);
        assert_eq!(dens.breakpoints(), vec![-1.0, -0.5]);
    }
}
