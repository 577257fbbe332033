//! Acceptance suite: one test per criterion, each printing a PASS line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).
//!
//! Tolerances are pinned in the assertions themselves.

use std::time::Instant;

use piston1d::fv::{convergence_order, run_fv, FvConfig};
use piston1d::gas::{Direction, Mach, PistonParams};
use piston1d::limits::{
    convergence_study, limit_solution, recede_limits, shock_limits, LimitRegime,
};
use piston1d::measure::{
    standard_family, weak_residuals, DiracWeight, MeasureBundle, TestFunction, MEASURE_NAMES,
    QUAD_TOL,
};
use piston1d::rarefaction::{fan_state, solve_rarefaction};
use piston1d::shock::{rh_residual_scaled, solve_shock};

fn rush(gamma: f64, m0: f64) -> PistonParams {
    PistonParams::new(gamma, Mach::Finite(m0), Direction::Rush).unwrap()
}

fn recede(gamma: f64, m0: f64) -> PistonParams {
    PistonParams::new(gamma, Mach::Finite(m0), Direction::Recede).unwrap()
}

/// Damped Newton on the full jump-condition system plus state function in
/// the unknowns (rho1, sigma, p1, E1), with finite-difference Jacobian and
/// Gaussian elimination. Fully independent of the closed-form solver.
fn newton_oracle(gamma: f64, m0: f64) -> [f64; 4] {
    let params = rush(gamma, m0);
    let p0 = params.p0();
    let e0 = params.e0();
    let f = |z: &[f64; 4]| -> [f64; 4] {
        let (rho1, sigma, p1, e1) = (z[0], z[1], z[2], z[3]);
        [
            sigma * (rho1 - 1.0) + 1.0,
            -sigma - (p1 - 1.0 - p0),
            sigma * (rho1 * e1 - e0) + (e0 + p0),
            p1 - (gamma - 1.0) * rho1 * e1,
        ]
    };
    let mut z = [2.0, -0.5, 1.0, 1.0];
    for _ in 0..200 {
        let r = f(&z);
        let norm = r.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if norm < 1e-13 {
            break;
        }
        let mut jac = [[0.0; 4]; 4];
        for j in 0..4 {
            let h = 1e-7 * (1.0 + z[j].abs());
            let mut zp = z;
            zp[j] += h;
            let rp = f(&zp);
            for i in 0..4 {
                jac[i][j] = (rp[i] - r[i]) / h;
            }
        }
        let mut aug = [[0.0; 5]; 4];
        for i in 0..4 {
            aug[i][..4].copy_from_slice(&jac[i]);
            aug[i][4] = -r[i];
        }
        for col in 0..4 {
            let piv = (col..4)
                .max_by(|&i, &j| aug[i][col].abs().total_cmp(&aug[j][col].abs()))
                .unwrap();
            aug.swap(col, piv);
            for row in col + 1..4 {
                let factor = aug[row][col] / aug[col][col];
                for k in col..5 {
                    aug[row][k] -= factor * aug[col][k];
                }
            }
        }
        let mut dz = [0.0; 4];
        for i in (0..4).rev() {
            let mut s = aug[i][4];
            for k in i + 1..4 {
                s -= aug[i][k] * dz[k];
            }
            dz[i] = s / aug[i][i];
        }
        let mut step = 1.0;
        loop {
            let zt = [
                z[0] + step * dz[0],
                z[1] + step * dz[1],
                z[2] + step * dz[2],
                z[3] + step * dz[3],
            ];
            let nt = f(&zt).iter().map(|v| v.abs()).fold(0.0, f64::max);
            if nt < norm || step < 1e-6 {
                z = zt;
                break;
            }
            step *= 0.5;
        }
    }
    z
}

#[test]
fn criterion_1_shock_exactness() {
    let sol = solve_shock(&rush(1.4, 2.0)).unwrap();
    let z = newton_oracle(1.4, 2.0);
    assert!((sol.rho1() - z[0]).abs() <= 1e-9, "rho1 {} vs {}", sol.rho1(), z[0]);
    assert!((sol.sigma - z[1]).abs() <= 1e-9, "sigma {} vs {}", sol.sigma, z[1]);
    assert!((sol.p1 - z[2]).abs() <= 1e-9, "p1 {} vs {}", sol.p1, z[2]);
    assert!((sol.e1() - z[3]).abs() <= 1e-9, "E1 {} vs {}", sol.e1(), z[3]);

    let r = rh_residual_scaled(&sol.upstream, &sol.downstream, sol.sigma, 1.4).unwrap();
    for v in r {
        assert!(v.abs() <= 1e-10, "scaled jump residual {v:.3e}");
    }

    // runtime: well under a millisecond per solve
    let t0 = Instant::now();
    let mut acc = 0.0;
    for k in 0..1000 {
        let m0 = 2.0 + (k % 7) as f64 * 0.1;
        acc += solve_shock(&rush(1.4, m0)).unwrap().sigma;
    }
    let per_solve = t0.elapsed().as_secs_f64() / 1000.0;
    assert!(acc.is_finite());
    assert!(per_solve < 1e-3, "solve took {:.3e} s", per_solve);

    println!("criterion 1 (shock exactness vs independent root finder): PASS");
}

#[test]
fn criterion_2_fixed_gamma_rush_limit() {
    let t0 = Instant::now();
    let target = [6.0, -0.2, 1.2, 0.5];
    let mut last = [f64::INFINITY; 4];
    for k in 1..=5 {
        let m0 = 10f64.powi(k);
        let sol = solve_shock(&rush(1.4, m0)).unwrap();
        let gaps = [
            (sol.rho1() - target[0]).abs(),
            (sol.sigma - target[1]).abs(),
            (sol.p1 - target[2]).abs(),
            (sol.e1() - target[3]).abs(),
        ];
        for (i, g) in gaps.iter().enumerate() {
            assert!(
                *g < last[i],
                "gap {i} not decreasing at k = {k}: {g:.3e} vs {:.3e}",
                last[i]
            );
        }
        if k == 4 {
            assert!(gaps[0] < 1e-4, "|rho1 - 6| = {:.3e} at k = 4", gaps[0]);
        }
        last = gaps;
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "took {elapsed:.3} s");
    println!("criterion 2 (fixed-gamma advancing-wall limit): PASS");
}

#[test]
fn criterion_3_fixed_energy_rush_limit() {
    let mut last_rs = f64::INFINITY;
    for k in 1..=4 {
        let m0 = 10f64.powi(k);
        let params = PistonParams::from_energy_mach(1.0, m0, Direction::Rush).unwrap();
        let sol = solve_shock(&params).unwrap();
        let rs = (sol.rho1_sigma() + 1.0).abs();
        assert!(rs < last_rs, "|rho1 sigma + 1| not decreasing at k = {k}");
        if k == 3 {
            assert!(rs < 1e-3, "|rho1 sigma + 1| = {rs:.3e} at k = 3");
            assert!(
                (sol.p1 - 1.0).abs() < 1e-3,
                "|p1 - 1| = {:.3e} at k = 3",
                (sol.p1 - 1.0).abs()
            );
        }
        last_rs = rs;
    }
    println!("criterion 3 (fixed-energy advancing-wall limit): PASS");
}

#[test]
fn criterion_4_measure_certification() {
    let t0 = Instant::now();
    let mut cases: Vec<(String, MeasureBundle)> = Vec::new();
    for gamma in [1.4, 2.0] {
        for m0 in [2.0, 10.0] {
            let sol = solve_shock(&rush(gamma, m0)).unwrap();
            cases.push((
                format!("advancing wall gamma={gamma} M0={m0}"),
                MeasureBundle::from_shock(&sol),
            ));
        }
    }
    let concentration =
        MeasureBundle::from_limit(&shock_limits(&LimitRegime::RushFixedEnergy { e0: 1.0 }).unwrap());
    // the singular limit bundle: unit background plus t-weighted wall
    // concentration, unit wall weight
    assert_eq!(concentration.wall_weight, DiracWeight::Constant(1.0));
    assert_eq!(concentration.rho.diracs.len(), 1);
    assert_eq!(
        concentration.rho.diracs[0].weight,
        DiracWeight::LinearInT(1.0)
    );
    assert_eq!(concentration.rho.density.eval(-0.5), 1.0);
    cases.push(("fixed-energy advancing-wall limit".into(), concentration));
    cases.push((
        "fixed-gamma retreating-wall limit".into(),
        MeasureBundle::from_limit(
            &recede_limits(&LimitRegime::RecedeFixedGamma { gamma: 1.4 }).unwrap(),
        ),
    ));
    cases.push((
        "fixed-energy retreating-wall limit".into(),
        MeasureBundle::from_limit(
            &recede_limits(&LimitRegime::RecedeFixedEnergy { e0: 1.0 }).unwrap(),
        ),
    ));

    for (name, bundle) in &cases {
        let family = bundle.standard_family();
        assert!(family.len() >= 20, "{name}: family too small");
        for phi in &family {
            let r = weak_residuals(bundle, phi, QUAD_TOL).unwrap();
            for (k, v) in r.iter().enumerate() {
                assert!(
                    v.abs() <= 5e-9,
                    "{name}: identity {k} residual {v:.3e} at {}",
                    phi.label()
                );
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "took {elapsed:.1} s");
    println!(
        "criterion 4 (weak-form certification, {} bundles x >=20 bumps in {elapsed:.1} s): PASS",
        cases.len()
    );
}

#[test]
fn criterion_5_weak_convergence_of_measures() {
    let regime = LimitRegime::RushFixedEnergy { e0: 1.0 };
    let phis = standard_family(&[]);
    assert!(phis.len() >= 20);
    let report = convergence_study(&regime, &[10.0, 100.0, 1000.0], &phis, QUAD_TOL).unwrap();
    for c in 0..7 {
        for j in 0..phis.len() {
            assert!(
                report.column_monotone_from_second(c, j),
                "{} gap column not monotone for {}: {:?}",
                MEASURE_NAMES[c],
                report.phi_labels[j],
                report.gap_column(c, j)
            );
        }
    }
    // mass is component 0, total energy component 3
    for (c, name) in [(0usize, "mass"), (3usize, "total energy")] {
        let worst = report.max_final_gap(c);
        assert!(worst < 1e-3, "{name} final gap {worst:.3e}");
    }
    println!("criterion 5 (weak convergence of measures): PASS");
}

#[test]
fn criterion_6_rarefaction_exactness() {
    let sol = solve_rarefaction(&recede(1.4, 2.0)).unwrap();
    assert!((sol.wall_state.rho - 0.07776).abs() <= 1e-12);
    assert!((sol.eta_head - (-1.5)).abs() <= 1e-12);
    assert!((sol.eta_tail - (-0.3)).abs() <= 1e-12);

    let gamma = 1.4;
    let p0 = sol.params.p0();
    let invariant0 = -1.0 + 2.0 * sol.params.c0() / (gamma - 1.0);
    for k in 0..=1000 {
        let eta = sol.eta_head + (sol.eta_tail - sol.eta_head) * k as f64 / 1000.0;
        let s = fan_state(&sol, eta).unwrap();
        let back = s.lambda1(gamma).unwrap();
        assert!((back - eta).abs() <= 1e-10, "round trip {:.3e}", (back - eta).abs());
        let c = s.sound_speed(gamma).unwrap();
        let inv = s.u + 2.0 * c / (gamma - 1.0);
        assert!((inv - invariant0).abs() <= 1e-10);
        let isen = s.pressure(gamma).unwrap() / s.rho.powf(gamma);
        assert!((isen - p0).abs() <= 1e-10);
    }
    println!("criterion 6 (rarefaction exactness): PASS");
}

#[test]
fn criterion_7_vacuum_phenomenology() {
    // threshold at gamma = 1.4 sits exactly at M0 = 5
    assert!(!solve_rarefaction(&recede(1.4, 4.999)).unwrap().vacuum);
    assert!(!solve_rarefaction(&recede(1.4, 5.0)).unwrap().vacuum);
    assert!(solve_rarefaction(&recede(1.4, 5.0)).unwrap().wall_state.is_vacuum());
    assert!(solve_rarefaction(&recede(1.4, 5.001)).unwrap().vacuum);
    for m0 in [5.5, 6.0, 10.0, 100.0] {
        assert!(solve_rarefaction(&recede(1.4, m0)).unwrap().vacuum);
    }
    for m0 in [0.5, 1.0, 2.0, 4.0] {
        assert!(!solve_rarefaction(&recede(1.4, m0)).unwrap().vacuum);
    }
    let sol = solve_rarefaction(&recede(1.4, 10.0)).unwrap();
    assert!((sol.eta_tail - (-0.5)).abs() <= 1e-12);

    // fixed-energy family: no vacuum at any finite Mach number of the
    // default sequence, vacuum in the limit
    for m0 in piston1d::DEFAULT_MACH_SEQUENCE {
        let params = PistonParams::from_energy_mach(1.0, m0, Direction::Recede).unwrap();
        let sol = solve_rarefaction(&params).unwrap();
        assert!(!sol.vacuum, "unexpected vacuum at M0 = {m0}");
        assert!(m0 < 2.0 / (params.gamma - 1.0));
    }
    let limit = limit_solution(&LimitRegime::RecedeFixedEnergy { e0: 1.0 }).unwrap();
    assert!(limit.vacuum_beyond);
    assert_eq!(limit.right.unwrap(), piston1d::GasState::VACUUM);
    println!("criterion 7 (vacuum phenomenology): PASS");
}

#[test]
fn criterion_8_finite_volume_cross_validation() {
    let t0 = Instant::now();
    let base = |direction: Direction| FvConfig {
        cells: 200,
        length: 2.0,
        cfl: 0.8,
        t_end: 0.5,
        params: PistonParams::new(1.4, Mach::Finite(2.0), direction).unwrap(),
    };

    // L1 convergence order on N in {200, 400, 800}, both directions
    for direction in [Direction::Rush, Direction::Recede] {
        let study = convergence_order(&base(direction), 3).unwrap();
        assert_eq!(study.cells, vec![200, 400, 800]);
        assert!(
            (0.6..=1.2).contains(&study.order),
            "{direction:?}: order {:.3}, errors {:?}",
            study.order,
            study.errors
        );
        assert!(study.monotone);
    }

    // time-averaged numerical wall pressure within 5% of the exact value
    let res = run_fv(&FvConfig {
        cells: 400,
        ..base(Direction::Rush)
    })
    .unwrap();
    let p1 = solve_shock(&res.config.params).unwrap().p1;
    assert!(
        (res.wall_pressure_avg - p1).abs() / p1 < 0.05,
        "wall pressure {:.5} vs exact {:.5}",
        res.wall_pressure_avg,
        p1
    );

    // mass concentration signature along the fixed-energy family. The band
    // fraction rises while the shock is outside the 5% band and saturates
    // at (band + T)/(length + T) once the shock has collapsed into it;
    // that ceiling is exactly the t-weighted wall concentration (band mass
    // = band*rho0 + T*inflow). The peak cell density keeps growing without
    // bound, the discrete trace of the diverging compression ratio.
    let mut fractions = Vec::new();
    let mut peaks = Vec::new();
    for m0 in [5.0, 20.0, 80.0] {
        let params = PistonParams::from_energy_mach(1.0, m0, Direction::Rush).unwrap();
        let cfg = FvConfig {
            cells: 400,
            length: 0.4,
            cfl: 0.8,
            t_end: 0.5,
            params,
        };
        let r = run_fv(&cfg).unwrap();
        fractions.push(r.wall_mass_fraction);
        peaks.push(r.rho.iter().cloned().fold(0.0f64, f64::max));
    }
    assert!(
        fractions.windows(2).all(|w| w[1] >= w[0] - 1e-9),
        "fractions not monotone: {fractions:?}"
    );
    assert!(
        fractions[1] > fractions[0] + 0.1,
        "no concentration jump: {fractions:?}"
    );
    let ceiling = (0.02 + 0.5) / (0.4 + 0.5);
    assert!(
        (fractions[2] - ceiling).abs() < 1e-3,
        "saturation {:.6} vs ceiling {ceiling:.6}",
        fractions[2]
    );
    assert!(
        peaks.windows(2).all(|w| w[1] > 1.2 * w[0]),
        "peak densities not growing: {peaks:?}"
    );

    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "took {elapsed:.1} s");
    println!("criterion 8 (finite-volume cross-validation in {elapsed:.1} s): PASS");
}
