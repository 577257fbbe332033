//! Compactly supported C^1 bumps used to probe the weak formulation.

use std::f64::consts::PI;

/// Which field of a test function enters a pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiField {
    Value,
    Dt,
    Dx,
}

/// Radial bump `phi(t, x) = cos^2(pi d / (2 r))` for `d < r` and zero
/// outside, where `d` is the distance to the center. Inside its disk the
/// bump is real-analytic (it is an even series in `d`), across the boundary
/// it is C^1, and its maximum value is exactly 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestFunction {
    pub t0: f64,
    pub x0: f64,
    pub r: f64,
}

impl TestFunction {
    pub fn new(t0: f64, x0: f64, r: f64) -> Self {
        assert!(r > 0.0, "bump radius must be positive");
        TestFunction { t0, x0, r }
    }

    pub fn value(&self, t: f64, x: f64) -> f64 {
        let d2 = (t - self.t0).powi(2) + (x - self.x0).powi(2);
        if d2 >= self.r * self.r {
            return 0.0;
        }
        let c = (PI * d2.sqrt() / (2.0 * self.r)).cos();
        c * c
    }

    // common radial factor of both partials: -(pi / (2 r d)) sin(pi d / r)
    fn radial(&self, d2: f64) -> f64 {
        if d2 <= 0.0 {
            return 0.0;
        }
        let d = d2.sqrt();
        -(PI / (2.0 * self.r)) * (PI * d / self.r).sin() / d
    }

    pub fn dt(&self, t: f64, x: f64) -> f64 {
        let d2 = (t - self.t0).powi(2) + (x - self.x0).powi(2);
        if d2 >= self.r * self.r {
            return 0.0;
        }
        self.radial(d2) * (t - self.t0)
    }

    pub fn dx(&self, t: f64, x: f64) -> f64 {
        let d2 = (t - self.t0).powi(2) + (x - self.x0).powi(2);
        if d2 >= self.r * self.r {
            return 0.0;
        }
        self.radial(d2) * (x - self.x0)
    }

    pub fn eval(&self, field: PhiField, t: f64, x: f64) -> f64 {
        match field {
            PhiField::Value => self.value(t, x),
            PhiField::Dt => self.dt(t, x),
            PhiField::Dx => self.dx(t, x),
        }
    }

    /// Stable identifier used in reports.
    pub fn label(&self) -> String {
        format!("bump(t={:.2},x={:.2},r={:.2})", self.t0, self.x0, self.r)
    }
}

/// Deterministic certifying family: a fixed spread over the quarter plane
/// (wall, initial line, corner, interior) plus three bumps straddling each
/// finite feature line `x = eta t`. Always at least 20 members.
pub fn standard_family(features: &[f64]) -> Vec<TestFunction> {
    let mut family = vec![
        // on the wall path
        TestFunction::new(0.7, 0.0, 0.3),
        TestFunction::new(1.5, 0.0, 0.45),
        TestFunction::new(2.3, 0.0, 0.6),
        // on the initial line
        TestFunction::new(0.0, -0.5, 0.3),
        TestFunction::new(0.0, -1.25, 0.45),
        TestFunction::new(0.0, -2.0, 0.35),
        // the corner
        TestFunction::new(0.0, 0.0, 0.25),
        // interior spread
        TestFunction::new(1.0, -2.5, 0.4),
        TestFunction::new(0.9, -0.15, 0.25),
        TestFunction::new(1.8, -0.8, 0.5),
        TestFunction::new(1.2, -1.2, 0.35),
        TestFunction::new(0.6, -0.9, 0.25),
        TestFunction::new(2.2, -0.3, 0.4),
        TestFunction::new(1.4, -2.2, 0.45),
        TestFunction::new(2.5, -1.6, 0.5),
        TestFunction::new(0.5, -0.4, 0.2),
        TestFunction::new(2.0, -1.05, 0.3),
        TestFunction::new(0.4, -0.2, 0.18),
        TestFunction::new(1.1, -0.55, 0.3),
        TestFunction::new(1.9, -1.9, 0.45),
    ];
    for &eta in features.iter().filter(|e| e.is_finite()) {
        for (t, r) in [(0.8, 0.3), (1.6, 0.45), (2.4, 0.6)] {
            family.push(TestFunction::new(t, t * eta, r));
        }
    }
    family
}

/// Every test-function support lies in `t < PHI_HORIZON`; studies over the
/// wall weight integrate up to this time.
pub const PHI_HORIZON: f64 = 3.1;
