//! Independent first-order Godunov cross-check of the exact solutions:
//! HLLC fluxes, reflecting wall on the right, constant inflow on the left,
//! discrete conservation ledger and L^1 comparison against the exact
//! self-similar profiles.

use crate::error::{Error, Result};
use crate::gas::{GasState, PistonParams};
use crate::solution::SelfSimilarSolution;

/// Run configuration on the domain `[-length, 0]`.
#[derive(Clone, Copy, Debug)]
pub struct FvConfig {
    pub cells: usize,
    pub length: f64,
    pub cfl: f64,
    pub t_end: f64,
    pub params: PistonParams,
}

impl FvConfig {
    fn validate(&self, exact: &SelfSimilarSolution) -> Result<()> {
        if self.cells < 8 {
            return Err(Error::InvalidParameter(format!(
                "cell count {} too small",
                self.cells
            )));
        }
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "CFL number {} must lie in (0, 1)",
                self.cfl
            )));
        }
        if !(self.length > 0.0) || !(self.t_end >= 0.0) {
            return Err(Error::InvalidParameter(
                "domain length must be positive and end time nonnegative".into(),
            ));
        }
        let reach = self.t_end * exact.leftmost_wave_speed().abs();
        if reach >= self.length {
            return Err(Error::InvalidParameter(format!(
                "waves reach the artificial boundary: T * speed = {reach:.3} >= length {}",
                self.length
            )));
        }
        Ok(())
    }
}

/// Conserved cell state `(rho, rho u, rho E)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Cons {
    rho: f64,
    mom: f64,
    en: f64,
}

impl Cons {
    fn from_state(s: &GasState) -> Self {
        Cons {
            rho: s.rho,
            mom: s.rho * s.u,
            en: s.rho * s.energy,
        }
    }

    fn velocity(&self) -> f64 {
        if self.rho > 0.0 {
            self.mom / self.rho
        } else {
            0.0
        }
    }

    fn pressure(&self, gamma: f64) -> f64 {
        if self.rho <= 0.0 {
            return 0.0;
        }
        let u = self.velocity();
        ((gamma - 1.0) * (self.en - 0.5 * self.rho * u * u)).max(0.0)
    }

    fn sound_speed(&self, gamma: f64) -> f64 {
        if self.rho <= 0.0 {
            0.0
        } else {
            (gamma * self.pressure(gamma) / self.rho).sqrt()
        }
    }

    fn physical_flux(&self, gamma: f64) -> Cons {
        let u = self.velocity();
        let p = self.pressure(gamma);
        Cons {
            rho: self.mom,
            mom: self.mom * u + p,
            en: u * (self.en + p),
        }
    }
}

/// HLLC flux with pressure-based wave-speed estimates.
fn hllc_flux(l: &Cons, r: &Cons, gamma: f64) -> Cons {
    let (ul, ur) = (l.velocity(), r.velocity());
    let (pl, pr) = (l.pressure(gamma), r.pressure(gamma));
    let (al, ar) = (l.sound_speed(gamma), r.sound_speed(gamma));

    // PVRS estimate for the star pressure, floored at zero
    let p_pvrs = 0.5 * (pl + pr) - 0.125 * (ur - ul) * (l.rho + r.rho) * (al + ar);
    let p_star = p_pvrs.max(0.0);
    let q = |p: f64, pk: f64| -> f64 {
        if p > pk && pk > 0.0 {
            (1.0 + 0.5 * (gamma + 1.0) / gamma * (p / pk - 1.0)).sqrt()
        } else {
            1.0
        }
    };
    let s_l = ul - al * q(p_star, pl);
    let s_r = ur + ar * q(p_star, pr);
    let denom = l.rho * (s_l - ul) - r.rho * (s_r - ur);
    let s_star = if denom.abs() > 1e-300 {
        (pr - pl + l.rho * ul * (s_l - ul) - r.rho * ur * (s_r - ur)) / denom
    } else {
        0.5 * (ul + ur)
    };

    if s_l >= 0.0 {
        return l.physical_flux(gamma);
    }
    if s_r <= 0.0 {
        return r.physical_flux(gamma);
    }
    let starred = |k: &Cons, uk: f64, pk: f64, sk: f64| -> Cons {
        let factor = k.rho * (sk - uk) / (sk - s_star);
        Cons {
            rho: factor,
            mom: factor * s_star,
            en: factor * (k.en / k.rho + (s_star - uk) * (s_star + pk / (k.rho * (sk - uk)))),
        }
    };
    if s_star >= 0.0 {
        let f = l.physical_flux(gamma);
        let us = starred(l, ul, pl, s_l);
        Cons {
            rho: f.rho + s_l * (us.rho - l.rho),
            mom: f.mom + s_l * (us.mom - l.mom),
            en: f.en + s_l * (us.en - l.en),
        }
    } else {
        let f = r.physical_flux(gamma);
        let us = starred(r, ur, pr, s_r);
        Cons {
            rho: f.rho + s_r * (us.rho - r.rho),
            mom: f.mom + s_r * (us.mom - r.mom),
            en: f.en + s_r * (us.en - r.en),
        }
    }
}

/// Reflecting-wall flux from the mirrored ghost state. The symmetric
/// Riemann problem has a resting star region, so the mass and energy
/// components are identically zero and the momentum component is the wall
/// pressure, which we take from the exact one-sided wave relation: a shock
/// for gas running into the wall, a rarefaction (possibly down to vacuum)
/// for gas pulling away. An approximate estimate here is what ruins the
/// near-vacuum retreating runs.
fn wall_flux(inner: &Cons, gamma: f64) -> (Cons, f64) {
    let rho = inner.rho;
    let u = inner.velocity();
    let p = inner.pressure(gamma);
    let a = inner.sound_speed(gamma);
    let p_wall = if rho <= 0.0 || p <= 0.0 {
        if u > 0.0 && rho > 0.0 {
            // pressureless stream against the wall
            0.5 * (gamma + 1.0) * rho * u * u
        } else {
            0.0
        }
    } else if u <= 0.0 {
        // expansion; vacuum at the wall once the base vanishes
        let base = 1.0 + 0.5 * (gamma - 1.0) * u / a;
        if base <= 0.0 {
            0.0
        } else {
            p * base.powf(2.0 * gamma / (gamma - 1.0))
        }
    } else {
        // compression: Newton on (p* - p) sqrt(A / (p* + B)) = u
        let a_k = 2.0 / ((gamma + 1.0) * rho);
        let b_k = (gamma - 1.0) / (gamma + 1.0) * p;
        let mut ps = (p + rho * a * u).max(p * (1.0 + 1e-6));
        for _ in 0..60 {
            let root = (a_k / (ps + b_k)).sqrt();
            let f = (ps - p) * root - u;
            let fp = root * (1.0 - 0.5 * (ps - p) / (ps + b_k));
            let step = f / fp;
            let next = (ps - step).max(0.5 * (ps + p));
            let done = (next - ps).abs() <= 1e-13 * ps;
            ps = next;
            if done {
                break;
            }
        }
        ps
    };
    (
        Cons {
            rho: 0.0,
            mom: p_wall,
            en: 0.0,
        },
        p_wall,
    )
}

/// Result of one finite-volume run.
#[derive(Clone, Debug)]
pub struct FvResult {
    pub config: FvConfig,
    pub x_centers: Vec<f64>,
    pub rho: Vec<f64>,
    pub momentum: Vec<f64>,
    pub energy: Vec<f64>,
    /// Sum over the three components of the L^1 errors vs the exact
    /// solution.
    pub l1_error: f64,
    pub l1_error_by_component: [f64; 3],
    /// L^1 error excluding 10-cell bands around each wave feature and the
    /// wall (the smooth region).
    pub l1_error_smooth: f64,
    /// Worst per-step relative imbalance of the conservation ledger.
    pub conservation_defect: f64,
    /// Time average of the numerical wall pressure over `[T/2, T]`.
    pub wall_pressure_avg: f64,
    /// Share of the total mass held by the 5% of cells nearest the wall.
    pub wall_mass_fraction: f64,
    pub steps: usize,
}

impl FvResult {
    /// Snapshot rows `x_center,rho,u,E,p`.
    pub fn to_csv(&self) -> String {
        let gamma = self.config.params.gamma;
        let mut out = String::from("x_center,rho,u,E,p\n");
        for i in 0..self.x_centers.len() {
            let rho = self.rho[i];
            let (u, en) = if rho > 0.0 {
                (self.momentum[i] / rho, self.energy[i] / rho)
            } else {
                (0.0, 0.0)
            };
            let p = GasState::new(rho, u, en).pressure_clamped(gamma);
            out.push_str(&format!(
                "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                self.x_centers[i], rho, u, en, p
            ));
        }
        out
    }
}

// 8-point Gauss-Legendre rule on [-1, 1]
const GL8_X: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.5255324099163290,
    -0.1834346424956498,
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL8_W: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.3626837833783620,
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

/// Exact cell averages of `(rho, rho u, rho E)` at time `t` on a uniform
/// grid, integrating each smooth subcell with Gauss quadrature.
fn exact_cell_averages(exact: &SelfSimilarSolution, t: f64, edges: &[f64]) -> Vec<Cons> {
    if t <= 0.0 {
        // at t = 0 the solution is the constant initial data; keep the
        // projection exact instead of round-tripping it through quadrature
        let c = Cons::from_state(&exact.params().upstream());
        return vec![c; edges.len() - 1];
    }
    let features: Vec<f64> = exact.features().iter().map(|eta| eta * t).collect();
    let mut out = Vec::with_capacity(edges.len() - 1);
    for cell in edges.windows(2) {
        let (xl, xr) = (cell[0], cell[1]);
        let mut cuts = vec![xl];
        for &xf in &features {
            if xf > xl && xf < xr {
                cuts.push(xf);
            }
        }
        cuts.push(xr);
        cuts.sort_by(f64::total_cmp);
        let mut avg = Cons::default();
        for sub in cuts.windows(2) {
            let (a, b) = (sub[0], sub[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for k in 0..8 {
                let x = mid + half * GL8_X[k];
                let eta = if t > 0.0 { x / t } else { -1.0 };
                let s = exact.sample_clamped(eta);
                let c = Cons::from_state(&s);
                let w = GL8_W[k] * half;
                avg.rho += w * c.rho;
                avg.mom += w * c.mom;
                avg.en += w * c.en;
            }
        }
        let dx = xr - xl;
        avg.rho /= dx;
        avg.mom /= dx;
        avg.en /= dx;
        out.push(avg);
    }
    out
}

fn kahan_total(cells: &[Cons]) -> [f64; 3] {
    let mut sum = [0.0_f64; 3];
    let mut comp = [0.0_f64; 3];
    for c in cells {
        for (k, v) in [c.rho, c.mom, c.en].into_iter().enumerate() {
            let y = v - comp[k];
            let t = sum[k] + y;
            comp[k] = (t - sum[k]) - y;
            sum[k] = t;
        }
    }
    sum
}

/// Runs the scheme and compares against the exact solution at `t_end`.
pub fn run_fv(config: &FvConfig) -> Result<FvResult> {
    let exact = SelfSimilarSolution::solve(&config.params)?;
    config.validate(&exact)?;

    let n = config.cells;
    let dx = config.length / n as f64;
    let gamma = config.params.gamma;
    let upstream = Cons::from_state(&config.params.upstream());

    // initial data: the projection of the constant upstream state is exact
    let mut cells = vec![upstream; n];
    let mut fluxes = vec![Cons::default(); n + 1];

    let mut t = 0.0;
    let mut steps = 0usize;
    let mut conservation_defect = 0.0_f64;
    let mut wall_pressure_integral = 0.0;
    let half_window = 0.5 * config.t_end;

    while t < config.t_end {
        // global wave-speed bound for the time step
        let mut max_speed = 0.0_f64;
        for c in &cells {
            max_speed = max_speed.max(c.velocity().abs() + c.sound_speed(gamma));
        }
        if !(max_speed > 0.0) || !max_speed.is_finite() {
            return Err(Error::Numerical {
                what: format!("wave speed degenerate at t = {t:.6}"),
                achieved: max_speed,
                required: f64::EPSILON,
            });
        }
        let dt = (config.cfl * dx / max_speed).min(config.t_end - t);

        // interface fluxes: constant inflow ghost on the left, mirrored
        // ghost (reflecting wall) on the right
        fluxes[0] = hllc_flux(&upstream, &cells[0], gamma);
        for i in 1..n {
            fluxes[i] = hllc_flux(&cells[i - 1], &cells[i], gamma);
        }
        let (wall, p_wall) = wall_flux(&cells[n - 1], gamma);
        fluxes[n] = wall;

        let before = kahan_total(&cells);
        let lambda = dt / dx;
        for i in 0..n {
            cells[i].rho -= lambda * (fluxes[i + 1].rho - fluxes[i].rho);
            cells[i].mom -= lambda * (fluxes[i + 1].mom - fluxes[i].mom);
            cells[i].en -= lambda * (fluxes[i + 1].en - fluxes[i].en);
            if !(cells[i].rho > 0.0) || cells[i].pressure(gamma) < 0.0 {
                return Err(Error::InadmissibleState(format!(
                    "cell {i} at x = {:.4}, t = {t:.6}: rho = {:.3e}, mom = {:.3e}, \
                     rho E = {:.3e} after step {steps}",
                    -config.length + (i as f64 + 0.5) * dx,
                    cells[i].rho,
                    cells[i].mom,
                    cells[i].en
                )));
            }
        }

        // telescoping ledger: totals move only by the boundary fluxes
        let after = kahan_total(&cells);
        let boundary = [
            fluxes[n].rho - fluxes[0].rho,
            fluxes[n].mom - fluxes[0].mom,
            fluxes[n].en - fluxes[0].en,
        ];
        for k in 0..3 {
            let expected = before[k] * dx - dt * boundary[k];
            let defect = (after[k] * dx - expected).abs()
                / 1.0_f64.max(expected.abs()).max(before[k].abs() * dx);
            conservation_defect = conservation_defect.max(defect);
        }

        // time-averaged numerical wall pressure over the second half
        let overlap = (t + dt).min(config.t_end) - t.max(half_window);
        if overlap > 0.0 {
            wall_pressure_integral += p_wall * overlap;
        }

        t += dt;
        steps += 1;
        if steps > 2_000_000 {
            return Err(Error::Numerical {
                what: "step count exploded".into(),
                achieved: steps as f64,
                required: 2e6,
            });
        }
    }

    // error vs exact cell averages
    let edges: Vec<f64> = (0..=n).map(|i| -config.length + i as f64 * dx).collect();
    let exact_avg = exact_cell_averages(&exact, config.t_end, &edges);
    let mut l1 = [0.0_f64; 3];
    for i in 0..n {
        l1[0] += (cells[i].rho - exact_avg[i].rho).abs() * dx;
        l1[1] += (cells[i].mom - exact_avg[i].mom).abs() * dx;
        l1[2] += (cells[i].en - exact_avg[i].en).abs() * dx;
    }

    // smooth-region error: drop 10-cell bands around each feature and the wall
    let band = 10.0 * dx;
    let feature_xs: Vec<f64> = exact
        .features()
        .iter()
        .map(|eta| eta * config.t_end)
        .collect();
    let mut l1_smooth = 0.0;
    for i in 0..n {
        let xc = -config.length + (i as f64 + 0.5) * dx;
        let near_feature = feature_xs.iter().any(|&xf| (xc - xf).abs() <= band);
        if near_feature || xc >= -band {
            continue;
        }
        l1_smooth += ((cells[i].rho - exact_avg[i].rho).abs()
            + (cells[i].mom - exact_avg[i].mom).abs()
            + (cells[i].en - exact_avg[i].en).abs())
            * dx;
    }

    // mass share of the 5% of cells nearest the wall
    let k = ((0.05 * n as f64).round() as usize).max(1);
    let near: f64 = cells[n - k..].iter().map(|c| c.rho).sum();
    let total: f64 = cells.iter().map(|c| c.rho).sum();

    let wall_pressure_avg = if config.t_end > 0.0 {
        wall_pressure_integral / (config.t_end - half_window)
    } else {
        0.0
    };

    Ok(FvResult {
        config: *config,
        x_centers: (0..n)
            .map(|i| -config.length + (i as f64 + 0.5) * dx)
            .collect(),
        rho: cells.iter().map(|c| c.rho).collect(),
        momentum: cells.iter().map(|c| c.mom).collect(),
        energy: cells.iter().map(|c| c.en).collect(),
        l1_error: l1.iter().sum(),
        l1_error_by_component: l1,
        l1_error_smooth: l1_smooth,
        conservation_defect,
        wall_pressure_avg,
        wall_mass_fraction: near / total,
        steps,
    })
}

/// Grid-refinement study: L^1 errors on successively doubled grids and the
/// least-squares convergence order.
#[derive(Clone, Debug)]
pub struct OrderStudy {
    pub cells: Vec<usize>,
    pub errors: Vec<f64>,
    /// Negated least-squares slope of `log(error)` vs `log(N)`.
    pub order: f64,
    /// False when the error sequence is not strictly decreasing; the order
    /// is still reported.
    pub monotone: bool,
    pub results: Vec<FvResult>,
}

pub fn convergence_order(config: &FvConfig, refinements: usize) -> Result<OrderStudy> {
    if refinements < 3 {
        return Err(Error::InvalidParameter(
            "need at least 3 refinement levels".into(),
        ));
    }
    let mut cells = Vec::new();
    let mut errors = Vec::new();
    let mut results = Vec::new();
    for level in 0..refinements {
        let cfg = FvConfig {
            cells: config.cells << level,
            ..*config
        };
        let res = run_fv(&cfg)?;
        cells.push(cfg.cells);
        errors.push(res.l1_error);
        results.push(res);
    }
    let order = -slope_of_log_log(&cells, &errors);
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    Ok(OrderStudy {
        cells,
        errors,
        order,
        monotone,
        results,
    })
}

pub fn slope_of_log_log(ns: &[usize], errs: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|&e| e.max(1e-300).ln()).collect();
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
