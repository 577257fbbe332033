//! Measure-theoretic representation of solutions and the weak-form
//! calculus: self-similar densities plus weighted curve Diracs, pairings
//! with test functions, and residual certification of the three balance
//! identities.

pub mod density;
pub mod dirac;
pub mod quad;
pub mod test_function;

pub use density::{FluxField, Piece, Profile, SelfSimilarDensity};
pub use dirac::{Curve, CurveDirac, DiracWeight};
pub use test_function::{standard_family, PhiField, TestFunction, PHI_HORIZON};

use crate::error::{Error, Result};
use crate::gas::GasState;
use crate::measure::quad::adaptive_quadrature;
use crate::rarefaction::RarefactionSolution;
use crate::shock::ShockSolution;
use serde_json::{json, Value};

/// Default absolute quadrature tolerance for a single pairing.
pub const QUAD_TOL: f64 = 1e-10;

/// One unknown of the weak formulation: an absolutely continuous part plus
/// weighted curve Diracs.
#[derive(Clone, Debug, Default)]
pub struct Measure {
    pub density: SelfSimilarDensity,
    pub diracs: Vec<CurveDirac>,
}

impl Measure {
    fn ac(density: SelfSimilarDensity) -> Self {
        Measure {
            density,
            diracs: Vec::new(),
        }
    }

    /// Pairing `<mu, phi-field>` to absolute tolerance `tol`.
    pub fn pair(&self, phi: &TestFunction, field: PhiField, tol: f64) -> Result<f64> {
        let mut v = self.density.pair(phi, field, tol)?;
        for d in &self.diracs {
            v += d.pair(phi, field, tol)?;
        }
        Ok(v)
    }

    fn to_json(&self) -> Value {
        let pieces: Vec<Value> = self
            .density
            .pieces
            .iter()
            .map(|p| {
                let profile = match &p.profile {
                    Profile::Constant(v) => json!({ "kind": "constant", "value": v }),
                    Profile::Fan { solution, field } => json!({
                        "kind": "fan",
                        "field": field.name(),
                        "gamma": solution.params.gamma,
                        "mach": solution.params.mach.value(),
                    }),
                };
                json!({
                    "eta_lo": finite_or_str(p.eta_lo),
                    "eta_hi": finite_or_str(p.eta_hi),
                    "profile": profile,
                })
            })
            .collect();
        let diracs: Vec<Value> = self
            .diracs
            .iter()
            .map(|d| {
                json!({
                    "curve": { "x0": d.curve.x0, "slope": d.curve.slope },
                    "weight": { "kind": d.weight.kind(), "coefficient": d.weight.coefficient() },
                })
            })
            .collect();
        json!({ "pieces": pieces, "diracs": diracs })
    }
}

fn finite_or_str(v: f64) -> Value {
    if v == f64::NEG_INFINITY {
        json!("-inf")
    } else if v == f64::INFINITY {
        json!("inf")
    } else {
        json!(v)
    }
}

/// Constant initial data on the half line `x < 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialData {
    pub rho: f64,
    pub u: f64,
    pub energy: f64,
}

/// The seven unknowns of the weak formulation, the wall weight, and the
/// data needed to evaluate the balance identities.
#[derive(Clone, Debug)]
pub struct MeasureBundle {
    pub gamma: f64,
    pub initial: InitialData,
    /// rho
    pub rho: Measure,
    /// rho u
    pub momentum: Measure,
    /// rho u^2
    pub momentum_flux: Measure,
    /// rho E
    pub energy: Measure,
    /// rho u E
    pub energy_flux: Measure,
    /// u p
    pub pressure_work: Measure,
    /// p
    pub pressure: Measure,
    /// Boundary pressure weight on the wall path.
    pub wall_weight: DiracWeight,
    /// Finite feature speeds (shock, fan edges, contact) used to split
    /// quadrature domains and to place the certifying test functions.
    pub features: Vec<f64>,
}

pub const MEASURE_NAMES: [&str; 7] = [
    "rho",
    "momentum",
    "momentum_flux",
    "energy",
    "energy_flux",
    "pressure_work",
    "pressure",
];

impl MeasureBundle {
    /// Bundle with piecewise-constant states: `states[k]` reigns between
    /// `breaks[k-1]` and `breaks[k]` (extended to `-inf` and `0`). All
    /// seven profiles are derived from the states, so the density ratios
    /// are consistent by construction.
    pub fn from_states(
        gamma: f64,
        initial: InitialData,
        breaks: &[f64],
        states: &[GasState],
    ) -> Self {
        assert_eq!(states.len(), breaks.len() + 1);
        let make = |field: FluxField| {
            let values: Vec<f64> = states.iter().map(|s| field.eval(s, gamma)).collect();
            Measure::ac(SelfSimilarDensity::piecewise_constant(breaks, &values))
        };
        MeasureBundle {
            gamma,
            initial,
            rho: make(FluxField::Density),
            momentum: make(FluxField::Momentum),
            momentum_flux: make(FluxField::MomentumFlux),
            energy: make(FluxField::Energy),
            energy_flux: make(FluxField::EnergyFlux),
            pressure_work: make(FluxField::PressureWork),
            pressure: make(FluxField::Pressure),
            wall_weight: DiracWeight::Constant(0.0),
            features: breaks.to_vec(),
        }
    }

    /// Finite-Mach advancing-wall bundle: two constant states separated by
    /// the shock, wall weight equal to the downstream pressure.
    pub fn from_shock(sol: &ShockSolution) -> Self {
        let up = sol.upstream;
        let mut bundle = MeasureBundle::from_states(
            sol.params.gamma,
            InitialData {
                rho: up.rho,
                u: up.u,
                energy: up.energy,
            },
            &[sol.sigma],
            &[sol.upstream, sol.downstream],
        );
        bundle.wall_weight = DiracWeight::Constant(sol.p1);
        bundle
    }

    /// Finite-Mach retreating-wall bundle: upstream state, expansion fan,
    /// and wall (or vacuum) state; wall weight equal to the gas pressure on
    /// the wall.
    pub fn from_rarefaction(sol: &RarefactionSolution) -> Self {
        let gamma = sol.params.gamma;
        let up = sol.upstream;
        let make = |field: FluxField| {
            let pieces = vec![
                Piece {
                    eta_lo: f64::NEG_INFINITY,
                    eta_hi: sol.eta_head,
                    profile: Profile::Constant(field.eval(&up, gamma)),
                },
                Piece {
                    eta_lo: sol.eta_head,
                    eta_hi: sol.eta_tail,
                    profile: Profile::Fan {
                        solution: *sol,
                        field,
                    },
                },
                Piece {
                    eta_lo: sol.eta_tail,
                    eta_hi: 0.0,
                    profile: Profile::Constant(field.eval(&sol.wall_state, gamma)),
                },
            ];
            Measure::ac(SelfSimilarDensity { pieces })
        };
        MeasureBundle {
            gamma,
            initial: InitialData {
                rho: up.rho,
                u: up.u,
                energy: up.energy,
            },
            rho: make(FluxField::Density),
            momentum: make(FluxField::Momentum),
            momentum_flux: make(FluxField::MomentumFlux),
            energy: make(FluxField::Energy),
            energy_flux: make(FluxField::EnergyFlux),
            pressure_work: make(FluxField::PressureWork),
            pressure: make(FluxField::Pressure),
            wall_weight: DiracWeight::Constant(sol.p_wall),
            features: vec![sol.eta_head, sol.eta_tail],
        }
    }

    /// Attaches the mass-concentration Diracs `c t delta_wall` to the mass
    /// measure and `c E t delta_wall` to the total-energy measure.
    pub fn with_wall_concentration(mut self, mass_coeff: f64, energy_coeff: f64) -> Self {
        self.rho
            .diracs
            .push(CurveDirac::on_wall(DiracWeight::LinearInT(mass_coeff)));
        self.energy
            .diracs
            .push(CurveDirac::on_wall(DiracWeight::LinearInT(energy_coeff)));
        self
    }

    pub fn components(&self) -> [(&'static str, &Measure); 7] {
        [
            (MEASURE_NAMES[0], &self.rho),
            (MEASURE_NAMES[1], &self.momentum),
            (MEASURE_NAMES[2], &self.momentum_flux),
            (MEASURE_NAMES[3], &self.energy),
            (MEASURE_NAMES[4], &self.energy_flux),
            (MEASURE_NAMES[5], &self.pressure_work),
            (MEASURE_NAMES[6], &self.pressure),
        ]
    }

    /// The certifying test-function family for this bundle's geometry.
    pub fn standard_family(&self) -> Vec<TestFunction> {
        standard_family(&self.features)
    }

    /// Integral of the constant initial data against `phi(0, .)` over the
    /// half line, times `coeff`.
    fn initial_integral(&self, phi: &TestFunction, coeff: f64, tol: f64) -> Result<f64> {
        if coeff == 0.0 || phi.t0 >= phi.r {
            return Ok(0.0);
        }
        let half = (phi.r * phi.r - phi.t0 * phi.t0).sqrt();
        let x_lo = phi.x0 - half;
        let x_hi = (phi.x0 + half).min(0.0);
        if !(x_hi > x_lo) {
            return Ok(0.0);
        }
        let (v, err) = adaptive_quadrature(&mut |x| phi.value(0.0, x), x_lo, x_hi, tol);
        if err > tol {
            return Err(Error::Numerical {
                what: "initial-data integral".into(),
                achieved: err,
                required: tol,
            });
        }
        Ok(coeff * v)
    }

    /// `<w_p delta_wall, phi>`.
    pub fn wall_term(&self, phi: &TestFunction, tol: f64) -> Result<f64> {
        CurveDirac::on_wall(self.wall_weight).pair(phi, PhiField::Value, tol)
    }

    /// Serializes the bundle description (pieces, breakpoints, Dirac
    /// weights as symbolic tags).
    pub fn to_json(&self) -> Value {
        let mut measures = serde_json::Map::new();
        for (name, m) in self.components() {
            measures.insert(name.to_string(), m.to_json());
        }
        json!({
            "schema": 1,
            "gamma": self.gamma,
            "initial": {
                "rho": self.initial.rho,
                "u": self.initial.u,
                "energy": self.initial.energy,
            },
            "wall_weight": {
                "kind": self.wall_weight.kind(),
                "coefficient": self.wall_weight.coefficient(),
            },
            "features": self.features,
            "measures": Value::Object(measures),
        })
    }

    /// Maximum violation of the density-ratio structure across sampled
    /// profile points: the momentum profile must be `u` times the mass
    /// profile, the flux profiles `u` times their base measures, and the
    /// pressure profile must satisfy the state function. Also enforces the
    /// structural constraints on the singular parts (the wall is at rest,
    /// so only mass and total energy may concentrate there).
    pub fn consistency_defect(&self) -> Result<f64> {
        for (name, m) in self.components() {
            if name != "rho" && name != "energy" && !m.diracs.is_empty() {
                return Err(Error::Internal(format!(
                    "measure {name} must not carry a singular part on the wall"
                )));
            }
        }
        if self.rho.diracs.len() != self.energy.diracs.len() {
            return Err(Error::Internal(
                "mass and total-energy concentrations must pair up".into(),
            ));
        }

        let mut defect: f64 = 0.0;
        for (k, piece) in self.rho.density.pieces.iter().enumerate() {
            let lo = if piece.eta_lo.is_finite() {
                piece.eta_lo
            } else {
                piece.eta_hi - 2.0
            };
            let hi = piece.eta_hi;
            for j in 1..=5 {
                let eta = lo + (hi - lo) * j as f64 / 6.0;
                let rho = self.rho.density.eval(eta);
                let mom = self.momentum.density.eval(eta);
                let mom_flux = self.momentum_flux.density.eval(eta);
                let en = self.energy.density.eval(eta);
                let en_flux = self.energy_flux.density.eval(eta);
                let pwork = self.pressure_work.density.eval(eta);
                let p = self.pressure.density.eval(eta);
                if rho <= 0.0 {
                    // vacuum convention: everything vanishes with the mass
                    for v in [mom, mom_flux, en, en_flux, pwork, p] {
                        defect = defect.max(v.abs());
                    }
                    continue;
                }
                let u = mom / rho;
                let scale = 1.0_f64.max(rho).max(en.abs()).max(p.abs());
                defect = defect.max((mom_flux - u * mom).abs() / scale);
                defect = defect.max((en_flux - u * en).abs() / scale);
                defect = defect.max((pwork - u * p).abs() / scale);
                // state function: p = (gamma - 1)(rho E - rho u^2 / 2)
                let eos = (self.gamma - 1.0) * (en - 0.5 * mom_flux);
                defect = defect.max((p - eos).abs() / scale);
                let _ = k;
            }
        }
        Ok(defect)
    }
}

/// Left-hand sides of the mass, momentum and energy balance identities for
/// the given test function; all three vanish for a genuine solution.
pub fn weak_residuals(
    bundle: &MeasureBundle,
    phi: &TestFunction,
    tol: f64,
) -> Result<[f64; 3]> {
    let init = &bundle.initial;
    let mass = bundle.rho.pair(phi, PhiField::Dt, tol)?
        + bundle.momentum.pair(phi, PhiField::Dx, tol)?
        + bundle.initial_integral(phi, init.rho, tol)?;
    let momentum = bundle.momentum.pair(phi, PhiField::Dt, tol)?
        + bundle.momentum_flux.pair(phi, PhiField::Dx, tol)?
        + bundle.pressure.pair(phi, PhiField::Dx, tol)?
        - bundle.wall_term(phi, tol)?
        + bundle.initial_integral(phi, init.rho * init.u, tol)?;
    let energy = bundle.energy.pair(phi, PhiField::Dt, tol)?
        + bundle.energy_flux.pair(phi, PhiField::Dx, tol)?
        + bundle.pressure_work.pair(phi, PhiField::Dx, tol)?
        + bundle.initial_integral(phi, init.rho * init.energy, tol)?;
    Ok([mass, momentum, energy])
}

/// Componentwise maximum of `|weak_residuals|` over a family.
pub fn max_weak_residuals(
    bundle: &MeasureBundle,
    phis: &[TestFunction],
    tol: f64,
) -> Result<[f64; 3]> {
    let mut worst = [0.0_f64; 3];
    for phi in phis {
        let r = weak_residuals(bundle, phi, tol)?;
        for k in 0..3 {
            worst[k] = worst[k].max(r[k].abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::{Direction, Mach, PistonParams};
    use crate::rarefaction::solve_rarefaction;
    use crate::shock::solve_shock;

    fn shock_bundle(gamma: f64, m0: f64) -> MeasureBundle {
        let params = PistonParams::new(gamma, Mach::Finite(m0), Direction::Rush).unwrap();
        MeasureBundle::from_shock(&solve_shock(&params).unwrap())
    }

    #[test]
    fn shock_bundle_satisfies_identities_on_probe_bumps() {
        let bundle = shock_bundle(1.4, 2.0);
        // one bump per geometric feature: shock line, wall, initial line
        let probes = [
            TestFunction::new(1.0, 1.0 * bundle.features[0], 0.3),
            TestFunction::new(1.0, 0.0, 0.4),
            TestFunction::new(0.0, -0.8, 0.4),
        ];
        for phi in &probes {
            let r = weak_residuals(&bundle, phi, QUAD_TOL).unwrap();
            for v in r {
                assert!(v.abs() <= 5e-9, "residual {v:.3e} at {}", phi.label());
            }
        }
    }

    #[test]
    fn residuals_vanish_identically_inside_constant_region() {
        let bundle = shock_bundle(1.4, 2.0);
        // support strictly inside the downstream wedge, away from all lines
        let phi = TestFunction::new(2.0, -0.15, 0.06);
        let r = weak_residuals(&bundle, &phi, 1e-12).unwrap();
        for v in r {
            assert!(v.abs() <= 1e-12, "residual {v:.3e}");
        }
    }

    #[test]
    fn support_disjoint_from_quarter_plane_gives_exact_zeros() {
        let bundle = shock_bundle(1.4, 2.0);
        let phi = TestFunction::new(1.0, 1.0, 0.4);
        let r = weak_residuals(&bundle, &phi, 1e-12).unwrap();
        assert_eq!(r, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn corrupted_shock_speed_shows_up_in_the_mass_identity() {
        let params = PistonParams::new(1.4, Mach::Finite(2.0), Direction::Rush).unwrap();
        let mut sol = solve_shock(&params).unwrap();
        sol.sigma *= 1.01;
        let bundle = MeasureBundle::from_shock(&sol);
        let phi = TestFunction::new(1.0, sol.sigma, 0.4);
        let r = weak_residuals(&bundle, &phi, QUAD_TOL).unwrap();
        assert!(
            r[0].abs() > 1e-4,
            "mass residual should reveal the corruption, got {:.3e}",
            r[0]
        );
        // the jump defect scales with the conserved jumps: mass clearly
        // beats momentum; total energy is of the same order as mass
        assert!(r[0].abs() > r[1].abs());
        assert!(r[0].abs() > 0.5 * r[2].abs());
    }

    #[test]
    fn rarefaction_bundle_satisfies_identities_on_probe_bumps() {
        let params = PistonParams::new(1.4, Mach::Finite(2.0), Direction::Recede).unwrap();
        let bundle = MeasureBundle::from_rarefaction(&solve_rarefaction(&params).unwrap());
        let probes = [
            TestFunction::new(1.0, -1.5, 0.3),  // fan head
            TestFunction::new(1.0, -0.9, 0.25), // fan interior
            TestFunction::new(1.0, -0.3, 0.3),  // fan tail
            TestFunction::new(1.0, 0.0, 0.25),  // wall
        ];
        for phi in &probes {
            let r = weak_residuals(&bundle, phi, QUAD_TOL).unwrap();
            for v in r {
                assert!(v.abs() <= 5e-9, "residual {v:.3e} at {}", phi.label());
            }
        }
    }

    #[test]
    fn pairing_is_linear_in_the_measure() {
        let bundle = shock_bundle(1.4, 2.0);
        let phi = TestFunction::new(1.0, -0.5, 0.4);
        let a = bundle.rho.pair(&phi, PhiField::Value, QUAD_TOL).unwrap();
        let b = bundle.energy.pair(&phi, PhiField::Value, QUAD_TOL).unwrap();
        // 2 rho + 3 energy as a synthetic combined measure
        let mut combo = SelfSimilarDensity { pieces: vec![] };
        let rp = &bundle.rho.density.pieces;
        let ep = &bundle.energy.density.pieces;
        for (r, e) in rp.iter().zip(ep) {
            let (Profile::Constant(rv), Profile::Constant(ev)) = (&r.profile, &e.profile)
            else {
                panic!("constant profiles expected")
            };
            combo.pieces.push(Piece {
                eta_lo: r.eta_lo,
                eta_hi: r.eta_hi,
                profile: Profile::Constant(2.0 * rv + 3.0 * ev),
            });
        }
        let c = combo.pair(&phi, PhiField::Value, QUAD_TOL).unwrap();
        assert!(
            (c - (2.0 * a + 3.0 * b)).abs() <= 3.0 * QUAD_TOL,
            "linearity defect {:.3e}",
            (c - (2.0 * a + 3.0 * b)).abs()
        );
    }

    #[test]
    fn mass_measure_is_nonnegative_on_the_family() {
        let bundle = shock_bundle(1.4, 2.0);
        for phi in bundle.standard_family() {
            let v = bundle.rho.pair(&phi, PhiField::Value, QUAD_TOL).unwrap();
            assert!(v >= -1e-10, "negative mass pairing {v:.3e}");
        }
    }

    #[test]
    fn bundles_are_ratio_consistent() {
        let b = shock_bundle(1.4, 2.0);
        assert!(b.consistency_defect().unwrap() <= 1e-12);
        let params = PistonParams::new(1.4, Mach::Finite(10.0), Direction::Recede).unwrap();
        let b = MeasureBundle::from_rarefaction(&solve_rarefaction(&params).unwrap());
        assert!(b.consistency_defect().unwrap() <= 1e-12);
    }

    #[test]
    fn wall_concentration_is_structurally_checked() {
        let b = shock_bundle(1.4, 2.0).with_wall_concentration(1.0, 0.9);
        assert!(b.consistency_defect().is_ok());
        let mut bad = shock_bundle(1.4, 2.0);
        bad.momentum
            .diracs
            .push(CurveDirac::on_wall(DiracWeight::Constant(1.0)));
        assert!(bad.consistency_defect().is_err());
    }

    #[test]
    fn json_round_trip_structure() {
        let b = shock_bundle(1.4, 2.0).with_wall_concentration(1.0, 0.9464);
        let v = b.to_json();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["measures"]["rho"]["pieces"][0]["eta_lo"], "-inf");
        assert_eq!(
            v["measures"]["rho"]["diracs"][0]["weight"]["kind"],
            "linear-in-t"
        );
        assert_eq!(v["measures"]["pressure"]["diracs"].as_array().unwrap().len(), 0);
    }
}
