//! Dirac measures supported on Lipschitz curves in the (t, x) plane.

use crate::error::{Error, Result};
use crate::measure::quad::adaptive_quadrature;
use crate::measure::test_function::{PhiField, TestFunction};

/// Affine path `x(t) = x0 + slope * t` for `t in [0, t_end)`; covers the
/// wall path (`x = 0`) and any sloped test line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curve {
    pub x0: f64,
    pub slope: f64,
    pub t_end: f64,
}

impl Curve {
    pub fn wall() -> Self {
        Curve {
            x0: 0.0,
            slope: 0.0,
            t_end: f64::INFINITY,
        }
    }

    pub fn x_at(&self, t: f64) -> f64 {
        self.x0 + self.slope * t
    }

    fn arclength_factor(&self) -> f64 {
        (self.slope * self.slope + 1.0).sqrt()
    }
}

/// Weight functions attached to curve Diracs; the two shapes that occur.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiracWeight {
    Constant(f64),
    /// `w(t) = c * t`
    LinearInT(f64),
}

impl DiracWeight {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            DiracWeight::Constant(c) => c,
            DiracWeight::LinearInT(c) => c * t,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self, DiracWeight::Constant(0.0) | DiracWeight::LinearInT(0.0))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DiracWeight::Constant(_) => "constant",
            DiracWeight::LinearInT(_) => "linear-in-t",
        }
    }

    pub fn coefficient(&self) -> f64 {
        match *self {
            DiracWeight::Constant(c) | DiracWeight::LinearInT(c) => c,
        }
    }
}

/// A weighted Dirac measure on a curve. Pairing with a test function `f`
/// is the line integral of `w(t) f(t, x(t))` against arclength in `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveDirac {
    pub curve: Curve,
    pub weight: DiracWeight,
}

impl CurveDirac {
    pub fn on_wall(weight: DiracWeight) -> Self {
        CurveDirac {
            curve: Curve::wall(),
            weight,
        }
    }

    /// Pairing against an arbitrary continuous function restricted to the
    /// time window `[ta, tb]`; used by tests with non-bump integrands.
    pub fn pair_on(
        &self,
        f: &dyn Fn(f64, f64) -> f64,
        ta: f64,
        tb: f64,
        tol: f64,
    ) -> Result<f64> {
        let a = ta.max(0.0);
        let b = tb.min(self.curve.t_end);
        if !(b > a) || self.weight.is_zero() {
            return Ok(0.0);
        }
        let factor = self.curve.arclength_factor();
        let (v, err) = adaptive_quadrature(
            &mut |t| self.weight.eval(t) * f(t, self.curve.x_at(t)) * factor,
            a,
            b,
            tol,
        );
        if err > tol {
            return Err(Error::Numerical {
                what: "curve Dirac pairing".into(),
                achieved: err,
                required: tol,
            });
        }
        Ok(v)
    }

    /// Pairing against a bump field. The integration window is the exact
    /// time interval in which the curve crosses the bump support.
    pub fn pair(&self, phi: &TestFunction, field: PhiField, tol: f64) -> Result<f64> {
        if self.weight.is_zero() {
            return Ok(0.0);
        }
        // |(t - t0, x0c + s t - x0)|^2 <= r^2 is a quadratic in t
        let s = self.curve.slope;
        let dx0 = self.curve.x0 - phi.x0;
        let a = 1.0 + s * s;
        let b = -2.0 * phi.t0 + 2.0 * s * dx0;
        let c = phi.t0 * phi.t0 + dx0 * dx0 - phi.r * phi.r;
        let disc = b * b - 4.0 * a * c;
        if disc <= 0.0 {
            return Ok(0.0);
        }
        let sq = disc.sqrt();
        let t_lo = (-b - sq) / (2.0 * a);
        let t_hi = (-b + sq) / (2.0 * a);
        self.pair_on(&|t, x| phi.eval(field, t, x), t_lo, t_hi, tol)
    }
}
