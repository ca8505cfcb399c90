//! Boundary and interior fixed points, the existence table for interior
//! points, and the interval on which the zooplankton image stays nonnegative.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{psi, ubar, Params, ResponseOrder, State};
use crate::roots::{bisect, quadratic_roots};

/// Absolute tolerance for ties between `beta` and the analytic thresholds.
pub const TIE_TOL: f64 = 1e-12;

/// Roots closer than this to `u = 1` coincide with `E1` and are dropped.
pub const UNIT_EDGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FixedPointLabel {
    E0,
    E1,
    Eminus,
    Eplus,
}

impl FixedPointLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            FixedPointLabel::E0 => "E0",
            FixedPointLabel::E1 => "E1",
            FixedPointLabel::Eminus => "Eminus",
            FixedPointLabel::Eplus => "Eplus",
        }
    }

    pub fn is_interior(self) -> bool {
        matches!(self, FixedPointLabel::Eminus | FixedPointLabel::Eplus)
    }
}

impl fmt::Display for FixedPointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FixedPointLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "E0" => Ok(FixedPointLabel::E0),
            "E1" => Ok(FixedPointLabel::E1),
            "Eminus" => Ok(FixedPointLabel::Eminus),
            "Eplus" => Ok(FixedPointLabel::Eplus),
            other => Err(format!(
                "unknown fixed point '{other}' (expected E0, E1, Eminus or Eplus)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPoint {
    pub state: State,
    pub label: FixedPointLabel,
    /// Set on the double root that appears when `beta = psi(ubar)`.
    pub degenerate: bool,
}

/// Which branch of the existence table decided the count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExistenceRegime {
    /// `ubar >= 1`, `beta <= psi(1)`.
    LargeUbarNone,
    /// `ubar >= 1`, `beta > psi(1)`.
    LargeUbarUnique,
    /// `ubar < 1`, `beta < psi(ubar)`.
    SmallUbarNone,
    /// `ubar < 1`, `beta = psi(ubar)`: a double root.
    SmallUbarTangent,
    /// `ubar < 1`, `psi(ubar) < beta < psi(1)`.
    SmallUbarPair,
    /// `ubar < 1`, `beta >= psi(1)`.
    SmallUbarUnique,
}

impl ExistenceRegime {
    pub fn describe(self) -> &'static str {
        match self {
            ExistenceRegime::LargeUbarNone => "ubar>=1, beta<=(c+1)(r+theta): no interior fixed point",
            ExistenceRegime::LargeUbarUnique => "ubar>=1, beta>(c+1)(r+theta): one interior fixed point",
            ExistenceRegime::SmallUbarNone => "ubar<1, beta<psi(ubar): no interior fixed point",
            ExistenceRegime::SmallUbarTangent => "ubar<1, beta=psi(ubar): one (double) interior fixed point",
            ExistenceRegime::SmallUbarPair => "ubar<1, psi(ubar)<beta<(c+1)(r+theta): two interior fixed points",
            ExistenceRegime::SmallUbarUnique => "ubar<1, beta>=(c+1)(r+theta): one interior fixed point",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExistenceVerdict {
    pub count: usize,
    pub regime: ExistenceRegime,
    pub ubar: f64,
    /// `psi(ubar)`
    pub psi_min: f64,
    /// `psi(1) = (c + 1)(r + theta)`
    pub psi_one: f64,
    /// `beta` equals `psi(1)` within [`TIE_TOL`]: one root of `psi = beta`
    /// sits at `u = 1` and is not counted.
    pub root_at_boundary: bool,
}

/// `E0 = (0, 0)` and `E1 = (1, 0)`; present for every parameter set.
pub fn boundary_fixed_points(_params: &Params) -> [FixedPoint; 2] {
    [
        FixedPoint {
            state: State::new(0.0, 0.0),
            label: FixedPointLabel::E0,
            degenerate: false,
        },
        FixedPoint {
            state: State::new(1.0, 0.0),
            label: FixedPointLabel::E1,
            degenerate: false,
        },
    ]
}

/// Number of interior fixed points according to the existence table
/// (split on `ubar >= 1` versus `ubar < 1`).
pub fn existence_verdict(params: &Params) -> ExistenceVerdict {
    let beta = params.beta();
    let ub = ubar(params);
    let psi_one = params.psi_at_one();
    let psi_min = psi(ub, params).expect("ubar is positive");
    let root_at_boundary = (beta - psi_one).abs() <= TIE_TOL;

    let (count, regime) = if ub >= 1.0 {
        if beta <= psi_one + TIE_TOL {
            (0, ExistenceRegime::LargeUbarNone)
        } else {
            (1, ExistenceRegime::LargeUbarUnique)
        }
    } else if (beta - psi_min).abs() <= TIE_TOL {
        (1, ExistenceRegime::SmallUbarTangent)
    } else if beta < psi_min {
        (0, ExistenceRegime::SmallUbarNone)
    } else if beta >= psi_one - TIE_TOL {
        (1, ExistenceRegime::SmallUbarUnique)
    } else {
        (2, ExistenceRegime::SmallUbarPair)
    };

    ExistenceVerdict {
        count,
        regime,
        ubar: ub,
        psi_min,
        psi_one,
        root_at_boundary,
    }
}

fn interior_v(u: f64, params: &Params) -> f64 {
    match params.order() {
        ResponseOrder::TypeII => (1.0 - u) * (1.0 + params.c() * u),
        ResponseOrder::TypeIII => (1.0 - u) * (1.0 + params.c() * u * u) / u,
    }
}

/// Roots of `psi(u) = beta` in `(0, 1)` found directly from the polynomial
/// form of the equation, ascending.
fn interior_roots(params: &Params) -> Vec<f64> {
    let (beta, r, theta, c) = (params.beta(), params.r(), params.theta(), params.c());
    match params.order() {
        ResponseOrder::TypeII => {
            // c theta u^2 - (beta - r c - theta) u + r = 0
            let b = beta - r * c - theta;
            if b <= 0.0 {
                return Vec::new();
            }
            match quadratic_roots(c * theta, -b, r) {
                Some((lo, hi)) => vec![lo, hi],
                None => Vec::new(),
            }
        }
        ResponseOrder::TypeIII => {
            // theta c u^3 + (r c - beta) u^2 + theta u + r = u^2 (psi(u) - beta)
            let cubic = |u: f64| ((theta * c * u + (r * c - beta)) * u + theta) * u + r;
            let mut breaks = vec![0.0];
            if let Some((a, b)) = quadratic_roots(3.0 * theta * c, 2.0 * (r * c - beta), theta) {
                breaks.extend([a, b].into_iter().filter(|&x| x > 0.0 && x < 1.0));
            }
            breaks.push(1.0);
            breaks.dedup();

            let mut found = Vec::new();
            for w in breaks.windows(2) {
                let (a, b) = (w[0], w[1]);
                let (ga, gb) = (cubic(a), cubic(b));
                if ga == 0.0 && a > 0.0 {
                    // touching zero at a critical point; handled by the tangent rule
                    continue;
                }
                if ga.signum() != gb.signum() || gb == 0.0 {
                    found.push(bisect(cubic, a, b, 0.0));
                }
            }
            found
        }
    }
}

/// Interior fixed points `(u, v)` with `0 < u < 1`, `v > 0`, sorted by `u` and
/// labelled `Eminus`, `Eplus`.
///
/// A double root (`beta = psi(ubar)` with `ubar < 1`) is returned once, at
/// `ubar`, with `degenerate` set. A root at `u = 1` coincides with `E1` and is
/// excluded.
pub fn positive_fixed_points(params: &Params) -> Vec<FixedPoint> {
    let ub = ubar(params);
    if ub < 1.0 {
        let psi_min = psi(ub, params).expect("ubar is positive");
        if (params.beta() - psi_min).abs() <= TIE_TOL {
            return vec![FixedPoint {
                state: State::new(ub, interior_v(ub, params)),
                label: FixedPointLabel::Eminus,
                degenerate: true,
            }];
        }
    }

    let mut roots: Vec<f64> = interior_roots(params)
        .into_iter()
        .filter(|&u| u > 0.0 && u < 1.0 - UNIT_EDGE_TOL)
        .collect();
    roots.sort_by(f64::total_cmp);

    roots
        .into_iter()
        .zip([FixedPointLabel::Eminus, FixedPointLabel::Eplus])
        .map(|(u, label)| FixedPoint {
            state: State::new(u, interior_v(u, params)),
            label,
            degenerate: false,
        })
        .collect()
}

/// Boundary points followed by interior points.
pub fn all_fixed_points(params: &Params) -> Vec<FixedPoint> {
    let mut out = boundary_fixed_points(params).to_vec();
    out.extend(positive_fixed_points(params));
    out
}

/// Interior point with the given label, if it exists.
pub fn interior_point(params: &Params, label: FixedPointLabel) -> Option<FixedPoint> {
    positive_fixed_points(params)
        .into_iter()
        .find(|fp| fp.label == label)
}

/// Roots `(uhat_minus, uhat_plus)` of
/// `c theta u^2 - (beta + c - theta - r c) u + (r - 1)`, between which a
/// nonnegative `v` has a nonnegative image (`h = 1` only).
pub fn uhat_bounds(params: &Params) -> Result<(f64, f64)> {
    if params.order() != ResponseOrder::TypeII {
        return Err(Error::UnsupportedOrder {
            what: "uhat bounds",
            expected: 1,
        });
    }
    let (beta, r, theta, c) = (params.beta(), params.r(), params.theta(), params.c());
    let b = beta + c - theta - r * c;
    quadratic_roots(c * theta, -b, r - 1.0).ok_or_else(|| {
        Error::Regime("v' < 0 for every u: the nonnegativity quadratic has no real roots".into())
    })
}
