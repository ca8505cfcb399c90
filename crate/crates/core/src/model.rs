//! Parameters, states and the discrete phytoplankton-zooplankton map
//!
//! ```text
//! u' = u(2 - u) - u^h v / (1 + c u^h)
//! v' = beta u^h v / (1 + c u^h) + (1 - r) v - theta u v
//! ```
//!
//! with `h = 1` (Holling type II) or `h = 2` (Holling type III), together with
//! the level-set function `psi` whose solutions `psi(u) = beta` on `(0, 1)`
//! are the interior fixed points.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::bisect;

/// Bracket width used when solving for the minimiser of `psi` with `h = 2`.
pub const UBAR_TOL: f64 = 1e-12;

/// Order of the predator functional response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResponseOrder {
    /// `u / (1 + c u)`
    TypeII,
    /// `u^2 / (1 + c u^2)`
    TypeIII,
}

impl ResponseOrder {
    pub fn exponent(self) -> i32 {
        match self {
            ResponseOrder::TypeII => 1,
            ResponseOrder::TypeIII => 2,
        }
    }

    pub fn from_exponent(h: u8) -> Result<Self> {
        match h {
            1 => Ok(ResponseOrder::TypeII),
            2 => Ok(ResponseOrder::TypeIII),
            _ => Err(Error::InvalidParameter {
                name: "h",
                value: h as f64,
                reason: "response order must be 1 or 2",
            }),
        }
    }
}

/// One of the four continuous model parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamName {
    Beta,
    R,
    Theta,
    C,
}

impl ParamName {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::Beta => "beta",
            ParamName::R => "r",
            ParamName::Theta => "theta",
            ParamName::C => "c",
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "beta" => Ok(ParamName::Beta),
            "r" => Ok(ParamName::R),
            "theta" => Ok(ParamName::Theta),
            "c" => Ok(ParamName::C),
            other => Err(format!(
                "unknown parameter '{other}' (expected beta, r, theta or c)"
            )),
        }
    }
}

/// Validated model parameters.
///
/// `beta` is the conversion coefficient, `r` the zooplankton death rate,
/// `theta` the toxin liberation rate and `c` the saturation coefficient. All
/// four are finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params {
    order: ResponseOrder,
    beta: f64,
    r: f64,
    theta: f64,
    c: f64,
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        });
    }
    if value <= 0.0 {
        return Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be strictly positive",
        });
    }
    Ok(())
}

impl Params {
    pub fn new(h: u8, beta: f64, r: f64, theta: f64, c: f64) -> Result<Self> {
        let order = ResponseOrder::from_exponent(h)?;
        Self::with_order(order, beta, r, theta, c)
    }

    pub fn with_order(order: ResponseOrder, beta: f64, r: f64, theta: f64, c: f64) -> Result<Self> {
        check_positive("beta", beta)?;
        check_positive("r", r)?;
        check_positive("theta", theta)?;
        check_positive("c", c)?;
        Ok(Params {
            order,
            beta,
            r,
            theta,
            c,
        })
    }

    pub fn order(&self) -> ResponseOrder {
        self.order
    }

    /// Response exponent `h` (1 or 2).
    pub fn h(&self) -> u8 {
        self.order.exponent() as u8
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn get(&self, name: ParamName) -> f64 {
        match name {
            ParamName::Beta => self.beta,
            ParamName::R => self.r,
            ParamName::Theta => self.theta,
            ParamName::C => self.c,
        }
    }

    /// Copy with one parameter replaced, re-validated.
    pub fn with(&self, name: ParamName, value: f64) -> Result<Self> {
        let mut p = *self;
        match name {
            ParamName::Beta => p.beta = value,
            ParamName::R => p.r = value,
            ParamName::Theta => p.theta = value,
            ParamName::C => p.c = value,
        }
        Self::with_order(p.order, p.beta, p.r, p.theta, p.c)
    }

    /// `(c + 1)(r + theta)`, the value of `psi` at `u = 1`.
    pub fn psi_at_one(&self) -> f64 {
        (1.0 + self.c) * (self.r + self.theta)
    }
}

/// A point of the phase plane. Coordinates may leave the positive quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub u: f64,
    pub v: f64,
}

impl State {
    pub const fn new(u: f64, v: f64) -> Self {
        State { u, v }
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.v.is_finite()
    }

    /// Max-norm distance.
    pub fn dist_inf(&self, other: &State) -> f64 {
        (self.u - other.u).abs().max((self.v - other.v).abs())
    }
}

impl From<(f64, f64)> for State {
    fn from((u, v): (f64, f64)) -> Self {
        State { u, v }
    }
}

/// `u^h / (1 + c u^h)`.
pub fn functional_response(u: f64, params: &Params) -> Result<f64> {
    let uh = u.powi(params.order.exponent());
    let denom = 1.0 + params.c * uh;
    if denom == 0.0 {
        return Err(Error::Domain {
            what: "functional response (pole of 1 + c u^h)",
            u,
        });
    }
    Ok(uh / denom)
}

/// One application of the map. No clamping is done: images may be negative
/// or large. A non-finite image is reported as [`Error::NonFinite`].
pub fn apply_map(s: State, params: &Params) -> Result<State> {
    let State { u, v } = s;
    let uh = u.powi(params.order.exponent());
    let response = uh / (1.0 + params.c * uh);
    let next = State {
        u: u * (2.0 - u) - response * v,
        v: params.beta * response * v + (1.0 - params.r) * v - params.theta * u * v,
    };
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::NonFinite { u, v })
    }
}

/// `psi(u) = (r + theta u)(1 + c u^h) / u^h` for `u > 0`.
pub fn psi(u: f64, params: &Params) -> Result<f64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain { what: "psi", u });
    }
    let uh = u.powi(params.order.exponent());
    Ok((params.r + params.theta * u) * (1.0 + params.c * uh) / uh)
}

/// The unique positive minimiser of `psi`.
///
/// For `h = 1` this is `sqrt(r / (c theta))`. For `h = 2` it is the positive
/// root of `theta c x^3 - theta x - 2 r`, bracketed on `(0, X]` by doubling `X`
/// and refined by bisection.
pub fn ubar(params: &Params) -> f64 {
    let Params { r, theta, c, .. } = *params;
    match params.order {
        ResponseOrder::TypeII => (r / (c * theta)).sqrt(),
        ResponseOrder::TypeIII => {
            let cubic = |x: f64| theta * c * x * x * x - theta * x - 2.0 * r;
            let mut hi = 1.0;
            while cubic(hi) <= 0.0 {
                hi *= 2.0;
            }
            bisect(cubic, 0.0, hi, UBAR_TOL)
        }
    }
}

/// `phi(x) = theta (1 + c x^2)^2 / (2 x)`; the curve on which the
/// characteristic polynomial of the `h = 2` map vanishes at `lambda = 1`.
pub fn phi(u: f64, params: &Params) -> Result<f64> {
    if params.order != ResponseOrder::TypeIII {
        return Err(Error::UnsupportedOrder {
            what: "phi",
            expected: 2,
        });
    }
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain { what: "phi", u });
    }
    let s = 1.0 + params.c * u * u;
    Ok(params.theta * s * s / (2.0 * u))
}
