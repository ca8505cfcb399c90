//! Invariant regions of the phase plane, the type II parameter taxonomy, and
//! the hypothesis checklists attached to the invariance and convergence
//! results.
//!
//! Regions for `h = 1`:
//!
//! | id | definition |
//! |----|------------|
//! | M1 | `0 <= u <= 2`, `v = 0` |
//! | M2 | `u = 0`, `v >= 0` |
//! | M3 | `0 <= u <= 1`, `0 <= v <= 2` |
//! | M4 | `0 <= u <= 1`, `0 <= v <= (2-u)(1+cu)` |
//! | S1 | `0 < u <= 1`, `0 <= v <= (1-u)(1+cu)` |
//! | S2 | `0 < u <= 1`, `(1-u)(1+cu) < v <= 2` |
//! | S3 | `0 < u <= 1`, `2 < v <= (2-u)(1+cu)` |
//!
//! Regions for `h = 2`, with `g(u) = (2-u)(1+cu^2)/u`:
//!
//! | id | definition |
//! |----|------------|
//! | N  | `0 <= u <= 1`, `0 <= v <= g(u)` (every `v >= 0` at `u = 0`) |
//! | N1 | `0 < u < 1`, `0 < v <= (1-u)(1+cu^2)/u` |
//! | N2 | `0 < u < u_-`, `(1-u)(1+cu^2)/u <= v <= g(u)` |

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_points::{existence_verdict, interior_point, FixedPointLabel, TIE_TOL};
use crate::model::{apply_map, Params, ResponseOrder, State};
use crate::stability::interior_coeffs;

/// Slack allowed when testing whether a mapped sample stayed in its region.
pub const INVARIANCE_SLACK: f64 = 1e-12;

/// Smallest `u` drawn when sampling the `h = 2` regions, away from the pole of
/// `g` at `u = 0`.
pub const N_SAMPLE_MIN_U: f64 = 1e-6;

/// Upper end of the `v` range drawn for the unbounded axis region M2.
pub const M2_SAMPLE_MAX_V: f64 = 10.0;

/// Largest `c` for which `g` is decreasing on `(0, 1)`.
pub const G_MONOTONE_MAX_C: f64 = 27.0 / 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionId {
    M1,
    M2,
    M3,
    M4,
    S1,
    S2,
    S3,
    N,
    N1,
    N2,
}

impl RegionId {
    pub const ALL: [RegionId; 10] = [
        RegionId::M1,
        RegionId::M2,
        RegionId::M3,
        RegionId::M4,
        RegionId::S1,
        RegionId::S2,
        RegionId::S3,
        RegionId::N,
        RegionId::N1,
        RegionId::N2,
    ];

    pub fn order(self) -> ResponseOrder {
        match self {
            RegionId::N | RegionId::N1 | RegionId::N2 => ResponseOrder::TypeIII,
            _ => ResponseOrder::TypeII,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RegionId::M1 => "M1",
            RegionId::M2 => "M2",
            RegionId::M3 => "M3",
            RegionId::M4 => "M4",
            RegionId::S1 => "S1",
            RegionId::S2 => "S2",
            RegionId::S3 => "S3",
            RegionId::N => "N",
            RegionId::N1 => "N1",
            RegionId::N2 => "N2",
        }
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        RegionId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown region '{s}'"))
    }
}

fn check_order(region: RegionId, params: &Params) -> Result<()> {
    if region.order() != params.order() {
        return Err(Error::UnsupportedOrder {
            what: region.as_str(),
            expected: region.order().exponent() as u8,
        });
    }
    Ok(())
}

/// `(1-u)(1+cu^h)/u^(h-1)`: the curve on which `u' = u`.
pub fn u_nullcline(u: f64, params: &Params) -> f64 {
    let h = params.order().exponent();
    (1.0 - u) * (1.0 + params.c() * u.powi(h)) / u.powi(h - 1)
}

/// `(2-u)(1+cu^h)/u^(h-1)`: the curve on which `u' = 0`.
pub fn u_zero_curve(u: f64, params: &Params) -> f64 {
    let h = params.order().exponent();
    (2.0 - u) * (1.0 + params.c() * u.powi(h)) / u.powi(h - 1)
}

fn in_closed(x: f64, lo: f64, hi: f64, slack: f64) -> bool {
    x >= lo - slack && x <= hi + slack
}

/// Membership with `slack` applied to the non-strict inequalities.
fn contains(s: State, region: RegionId, params: &Params, slack: f64, u_minus: Option<f64>) -> bool {
    let State { u, v } = s;
    if !s.is_finite() {
        return false;
    }
    match region {
        RegionId::M1 => in_closed(u, 0.0, 2.0, slack) && v.abs() <= slack,
        RegionId::M2 => u.abs() <= slack && v >= -slack,
        RegionId::M3 => in_closed(u, 0.0, 1.0, slack) && in_closed(v, 0.0, 2.0, slack),
        RegionId::M4 => {
            in_closed(u, 0.0, 1.0, slack) && in_closed(v, 0.0, u_zero_curve(u, params), slack)
        }
        RegionId::S1 => {
            u > 0.0 && u <= 1.0 + slack && in_closed(v, 0.0, u_nullcline(u, params), slack)
        }
        RegionId::S2 => {
            u > 0.0 && u <= 1.0 + slack && v > u_nullcline(u, params) && v <= 2.0 + slack
        }
        RegionId::S3 => {
            u > 0.0 && u <= 1.0 + slack && v > 2.0 && v <= u_zero_curve(u, params) + slack
        }
        RegionId::N => {
            if !in_closed(u, 0.0, 1.0, slack) || v < -slack {
                return false;
            }
            // the bound blows up at u = 0: the whole nonnegative v axis belongs
            u <= 0.0 || v <= u_zero_curve(u, params) + slack
        }
        RegionId::N1 => u > 0.0 && u < 1.0 && v > 0.0 && v <= u_nullcline(u, params) + slack,
        RegionId::N2 => match u_minus {
            Some(um) => {
                u > 0.0
                    && u < um
                    && v >= u_nullcline(u, params) - slack
                    && v <= u_zero_curve(u, params) + slack
            }
            None => false,
        },
    }
}

fn lower_u(params: &Params) -> Option<f64> {
    interior_point(params, FixedPointLabel::Eminus).map(|e| e.state.u)
}

/// Whether `s` lies in `region`; boundary points are members. N2 is empty
/// when the lower interior fixed point does not exist.
pub fn membership(s: State, region: RegionId, params: &Params) -> Result<bool> {
    check_order(region, params)?;
    let u_minus = if region == RegionId::N2 {
        lower_u(params)
    } else {
        None
    };
    Ok(contains(s, region, params, 0.0, u_minus))
}

/// Draws `count` points from `region`, deterministic in `seed`: `u` uniform on
/// the region's range, then `v` uniform between the `u`-dependent bounds.
pub fn sample_region(region: RegionId, params: &Params, count: usize, seed: u64) -> Result<Vec<State>> {
    check_order(region, params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u_minus = lower_u(params);
    if region == RegionId::N2 && u_minus.is_none() {
        return Err(Error::Regime("N2 needs the lower interior fixed point".into()));
    }

    // v-bounds as a function of u; None when the slice at u is empty
    let slice = |u: f64| -> Option<(f64, f64)> {
        let (lo, hi) = match region {
            RegionId::M1 => (0.0, 0.0),
            RegionId::M2 => (0.0, M2_SAMPLE_MAX_V),
            RegionId::M3 => (0.0, 2.0),
            RegionId::M4 | RegionId::N => (0.0, u_zero_curve(u, params)),
            RegionId::S1 | RegionId::N1 => (0.0, u_nullcline(u, params)),
            RegionId::S2 => (u_nullcline(u, params), 2.0),
            RegionId::S3 => (2.0, u_zero_curve(u, params)),
            RegionId::N2 => (u_nullcline(u, params), u_zero_curve(u, params)),
        };
        (hi >= lo).then_some((lo, hi))
    };
    let (u_lo, u_hi) = match region {
        RegionId::M1 => (0.0, 2.0),
        RegionId::M2 => (0.0, 0.0),
        RegionId::M3 | RegionId::M4 => (0.0, 1.0),
        RegionId::S1 | RegionId::S2 | RegionId::S3 => (f64::MIN_POSITIVE, 1.0),
        RegionId::N | RegionId::N1 => (N_SAMPLE_MIN_U, 1.0),
        RegionId::N2 => (N_SAMPLE_MIN_U, u_minus.unwrap_or(1.0)),
    };

    const MAX_REJECTIONS: usize = 1_000_000;
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    while out.len() < count {
        let u = if u_hi > u_lo { rng.gen_range(u_lo..=u_hi) } else { u_lo };
        let Some((lo, hi)) = slice(u) else {
            rejected += 1;
            if rejected > MAX_REJECTIONS {
                return Err(Error::Regime(format!("{region} is empty for these parameters")));
            }
            continue;
        };
        let v = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
        let s = State::new(u, v);
        // strict inequalities (S2, S3, N1) can reject the drawn endpoint
        if contains(s, region, params, 0.0, u_minus) {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub start: State,
    /// `None` when the map overflowed.
    pub image: Option<State>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub region: RegionId,
    pub samples: usize,
    pub seed: u64,
    /// Whether the parameters satisfy the hypotheses under which the region
    /// is claimed invariant.
    pub hypotheses_hold: bool,
    /// Samples whose image left the region, in sample order.
    pub violations: Vec<Violation>,
}

/// Maps `samples` seeded points of `region` once and collects those whose
/// image left it (with [`INVARIANCE_SLACK`]).
pub fn verify_invariance(region: RegionId, params: &Params, samples: usize, seed: u64) -> Result<InvarianceReport> {
    let points = sample_region(region, params, samples, seed)?;
    let u_minus = lower_u(params);
    let violations = points
        .iter()
        .enumerate()
        .filter_map(|(index, &start)| match apply_map(start, params) {
            Ok(img) if contains(img, region, params, INVARIANCE_SLACK, u_minus) => None,
            Ok(img) => Some(Violation {
                index,
                start,
                image: Some(img),
            }),
            Err(_) => Some(Violation {
                index,
                start,
                image: None,
            }),
        })
        .collect();
    Ok(InvarianceReport {
        region,
        samples,
        seed,
        hypotheses_hold: invariance_hypotheses(region, params).map_or(false, |b| b.all_hold()),
        violations,
    })
}

// ---------------------------------------------------------------------------
// parameter taxonomy (h = 1)

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ParameterClass {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParameterSubclass {
    A1,
    A2,
    A3,
    B1,
    C1,
    C2,
    C3,
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
}

impl ParameterSubclass {
    pub const ALL: [ParameterSubclass; 15] = [
        ParameterSubclass::A1,
        ParameterSubclass::A2,
        ParameterSubclass::A3,
        ParameterSubclass::B1,
        ParameterSubclass::C1,
        ParameterSubclass::C2,
        ParameterSubclass::C3,
        ParameterSubclass::D1,
        ParameterSubclass::D2,
        ParameterSubclass::D3,
        ParameterSubclass::D4,
        ParameterSubclass::D5,
        ParameterSubclass::D6,
        ParameterSubclass::D7,
        ParameterSubclass::D8,
    ];

    pub fn class(self) -> ParameterClass {
        use ParameterSubclass::*;
        match self {
            A1 | A2 | A3 => ParameterClass::A,
            B1 => ParameterClass::B,
            C1 | C2 | C3 => ParameterClass::C,
            _ => ParameterClass::D,
        }
    }

    pub fn as_str(self) -> &'static str {
        use ParameterSubclass::*;
        match self {
            A1 => "a1",
            A2 => "a2",
            A3 => "a3",
            B1 => "b1",
            C1 => "c1",
            C2 => "c2",
            C3 => "c3",
            D1 => "d1",
            D2 => "d2",
            D3 => "d3",
            D4 => "d4",
            D5 => "d5",
            D6 => "d6",
            D7 => "d7",
            D8 => "d8",
        }
    }

    /// Whether the parameters satisfy this subclass's inequality system.
    pub fn matches(self, params: &Params) -> bool {
        use ParameterSubclass::*;
        let (beta, r, theta, c) = (params.beta(), params.r(), params.theta(), params.c());
        // thresholds shared by several subclasses
        let k1 = r + theta - 1.0;
        let k2 = r + 2.0 * theta - 1.0;
        let c_cap_b = beta / k1 - 1.0;
        let c_cap_c = beta / k2 - 0.5;
        match self {
            A1 => theta <= 1.0 && r <= 1.0 - theta,
            A2 => theta <= 1.0 && 1.0 - theta < r && r < 1.0 && beta > k1 && c < c_cap_b,
            A3 => theta > 1.0 && r < 1.0 && beta > k1 && c < c_cap_b,
            B1 => r > 1.0 && beta > k1 && c < c_cap_b,
            C1 => theta <= 0.5 && r <= 1.0 - 2.0 * theta,
            C2 => {
                theta <= 0.5
                    && 1.0 - 2.0 * theta < r
                    && r <= 1.0
                    && beta > k2 / 2.0
                    && c <= c_cap_c
            }
            C3 => theta > 0.5 && r <= 1.0 && beta > k2 / 2.0 && c <= c_cap_c,
            D1 => {
                theta <= 0.5 && 1.0 - 2.0 * theta < r && r <= 1.0 - theta && beta <= k2 / 2.0
            }
            D2 => {
                theta <= 0.5
                    && 1.0 - 2.0 * theta < r
                    && r <= 1.0 - theta
                    && beta > k2 / 2.0
                    && c > c_cap_c
            }
            D3 => theta > 0.5 && theta <= 1.0 && r <= 1.0 - theta && beta <= k2 / 2.0,
            D4 => {
                theta > 0.5 && theta <= 1.0 && r <= 1.0 - theta && beta > k2 / 2.0 && c > c_cap_c
            }
            D5 => {
                theta <= 1.0
                    && 1.0 - theta < r
                    && r < 1.0
                    && k1 < beta
                    && beta <= k2 / 2.0
                    && c < c_cap_b
            }
            D6 => {
                theta <= 1.0
                    && 1.0 - theta < r
                    && r < 1.0
                    && beta > k2 / 2.0
                    && c_cap_c < c
                    && c < c_cap_b
            }
            D7 => theta > 1.0 && r < 1.0 && k1 < beta && beta <= k2 / 2.0 && c < c_cap_b,
            D8 => theta > 1.0 && r < 1.0 && beta > k2 / 2.0 && c_cap_c < c && c < c_cap_b,
        }
    }
}

impl fmt::Display for ParameterSubclass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every subclass whose inequalities hold. The classes overlap, so several
/// may be returned; an empty list means `v' < 0` somewhere on the relevant
/// `u` range.
pub fn parameter_subclasses(params: &Params) -> Result<Vec<ParameterSubclass>> {
    if params.order() != ResponseOrder::TypeII {
        return Err(Error::UnsupportedOrder {
            what: "parameter taxonomy",
            expected: 1,
        });
    }
    Ok(ParameterSubclass::ALL
        .into_iter()
        .filter(|s| s.matches(params))
        .collect())
}

/// Whether the roots `(uhat_minus, uhat_plus)` have the sign pattern of
/// `class`, allowing `tol` at the boundary comparisons.
pub fn uhat_signature_holds(class: ParameterClass, (lo, hi): (f64, f64), tol: f64) -> bool {
    match class {
        ParameterClass::A => lo < tol && hi > 1.0 - tol,
        ParameterClass::B => lo > -tol && lo < 1.0 + tol && hi > 1.0 - tol,
        ParameterClass::C => lo <= tol && hi >= 2.0 - tol,
        ParameterClass::D => lo < tol && hi > 1.0 - tol && hi < 2.0 + tol,
    }
}

// ---------------------------------------------------------------------------
// hypothesis checklists

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisBlock {
    /// What the hypotheses guarantee when they all hold.
    pub claim: &'static str,
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisBlock {
    fn new(claim: &'static str) -> Self {
        HypothesisBlock {
            claim,
            checks: Vec::new(),
        }
    }

    fn check(mut self, name: impl Into<String>, holds: bool) -> Self {
        self.checks.push(HypothesisCheck {
            name: name.into(),
            holds,
        });
        self
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn tie(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL
}

fn has_any(params: &Params, set: &[ParameterSubclass]) -> bool {
    set.iter().any(|s| s.matches(params))
}

const CLASS_A: [ParameterSubclass; 3] = [
    ParameterSubclass::A1,
    ParameterSubclass::A2,
    ParameterSubclass::A3,
];

/// `r >= c theta, beta <= (c+1)(r+theta)` or `r <= c theta,
/// beta <= (sqrt(theta) + sqrt(c r))^2`: `beta <= psi(u)` on `(0, 1]`.
fn type_ii_no_interior_bound(params: &Params) -> bool {
    let (beta, r, theta, c) = (params.beta(), params.r(), params.theta(), params.c());
    let psi_min = (theta.sqrt() + (c * r).sqrt()).powi(2);
    (r >= c * theta && beta <= params.psi_at_one() + TIE_TOL)
        || (r <= c * theta && beta <= psi_min + TIE_TOL)
}

fn lower_q(params: &Params) -> Option<f64> {
    interior_point(params, FixedPointLabel::Eminus).map(|e| interior_coeffs(e.state.u, params).q)
}

/// Hypotheses under which `region` is claimed to be invariant, `None` for
/// regions without such a claim (S1-S3, N1, N2).
pub fn invariance_hypotheses(region: RegionId, params: &Params) -> Option<HypothesisBlock> {
    if region.order() != params.order() {
        return None;
    }
    let block = match region {
        RegionId::M1 => HypothesisBlock::new("M1 is invariant"),
        RegionId::M2 => HypothesisBlock::new("M2 is invariant").check("r <= 1", params.r() <= 1.0),
        RegionId::M3 => HypothesisBlock::new("M3 is invariant")
            .check("one of (a1)-(a3)", has_any(params, &CLASS_A))
            .check("beta <= psi(u) on (0,1]", type_ii_no_interior_bound(params)),
        RegionId::M4 => HypothesisBlock::new("M4 is invariant")
            .check("one of (a1)-(a3)", has_any(params, &CLASS_A))
            .check("beta <= psi(u) on (0,1]", type_ii_no_interior_bound(params))
            .check("c <= 1/2", params.c() <= 0.5),
        RegionId::N => n_invariance_block(params),
        _ => return None,
    };
    Some(block)
}

fn n_invariance_block(params: &Params) -> HypothesisBlock {
    let ev = existence_verdict(params);
    let beta = params.beta();
    HypothesisBlock::new("N is invariant and every orbit in N tends to E1")
        .check("r + theta <= 1", params.r() + params.theta() <= 1.0)
        .check("c <= 27/4", params.c() <= G_MONOTONE_MAX_C)
        .check(
            "ubar>=1 and beta<=(c+1)(r+theta), or ubar<1 and beta<=psi(ubar)",
            (ev.ubar >= 1.0 && beta <= ev.psi_one + TIE_TOL)
                || (ev.ubar < 1.0 && beta <= ev.psi_min + TIE_TOL),
        )
}

/// Checklists for every invariance and convergence result that applies to
/// the response order of `params`.
pub fn hypothesis_blocks(params: &Params) -> Vec<HypothesisBlock> {
    let ev = existence_verdict(params);
    let (beta, r, theta, c) = (params.beta(), params.r(), params.theta(), params.c());
    let q_minus = lower_q(params);
    let q_below_one = q_minus.map_or(false, |q| q < 1.0);
    let q_name = |q: Option<f64>| match q {
        Some(q) => format!("q(u_-) < 1 (q = {q:.6})"),
        None => "q(u_-) < 1 (no E-)".to_string(),
    };

    match params.order() {
        ResponseOrder::TypeII => {
            let class_a = has_any(params, &CLASS_A);
            let b1 = ParameterSubclass::B1.matches(params);
            let wide_bound = {
                let psi_min = (theta.sqrt() + (c * r).sqrt()).powi(2);
                (r >= 4.0 * c * theta
                    && beta <= (2.0 * c + 1.0) * (r + 2.0 * theta) / 2.0 + TIE_TOL)
                    || (r <= 4.0 * c * theta && beta <= psi_min + TIE_TOL)
            };
            let class_c_or_d = ParameterSubclass::ALL.into_iter().any(|s| {
                matches!(s.class(), ParameterClass::C | ParameterClass::D) && s.matches(params)
            });
            let unique_lower = beta > ev.psi_one + TIE_TOL
                || (r < c * theta && (tie(beta, ev.psi_one) || tie(beta, ev.psi_min)));
            vec![
                invariance_hypotheses(RegionId::M1, params).expect("h = 1"),
                invariance_hypotheses(RegionId::M2, params).expect("h = 1"),
                invariance_hypotheses(RegionId::M3, params).expect("h = 1"),
                invariance_hypotheses(RegionId::M4, params).expect("h = 1"),
                HypothesisBlock::new("orbits from M3 (or M4 with c <= 1/2, or the b1 strip) tend to E1")
                    .check("beta <= psi(u) on (0,1]", type_ii_no_interior_bound(params))
                    .check("one of (a1)-(a3) or (b1)", class_a || b1),
                HypothesisBlock::new("orbits starting with 1 < u < 2 tend to E1 after entering M3/M4")
                    .check("beta <= psi(u) on (0,2]", wide_bound)
                    .check("one of (c1)-(c3) or (d1)-(d8)", class_c_or_d),
                HypothesisBlock::new("orbits from the stated sets tend to E-")
                    .check(
                        "beta>(c+1)(r+theta), or r<c theta and beta in {(c+1)(r+theta), psi(ubar)}",
                        unique_lower,
                    )
                    .check(q_name(q_minus), q_below_one)
                    .check("one of (a1)-(a3) or (b1)", class_a || b1),
                HypothesisBlock::new("bistability: the stable curve of E+ separates the basins of E- and E1")
                    .check("r < c theta", r < c * theta)
                    .check(
                        "psi(ubar) < beta < (c+1)(r+theta)",
                        ev.psi_min < beta && beta < ev.psi_one,
                    )
                    .check(q_name(q_minus), q_below_one)
                    .check("one of (a1)-(a3) or (b1)", class_a || b1),
            ]
        }
        ResponseOrder::TypeIII => {
            let base = |block: HypothesisBlock| {
                block
                    .check("r + theta <= 1", r + theta <= 1.0)
                    .check("c <= 27/4", c <= G_MONOTONE_MAX_C)
            };
            let unique_lower = beta > ev.psi_one + TIE_TOL
                || (ev.ubar < 1.0 && (tie(beta, ev.psi_one) || tie(beta, ev.psi_min)));
            vec![
                n_invariance_block(params),
                base(HypothesisBlock::new("orbits from N1 u N2 tend to the unique E-"))
                    .check(
                        "beta>(c+1)(r+theta), or ubar<1 and beta in {(c+1)(r+theta), psi(ubar)}",
                        unique_lower,
                    )
                    .check(q_name(q_minus), q_below_one),
                base(HypothesisBlock::new("bistability: the stable curve of E+ separates the basins of E- and E1"))
                    .check("ubar < 1", ev.ubar < 1.0)
                    .check(
                        "psi(ubar) < beta < (c+1)(r+theta)",
                        ev.psi_min < beta && beta < ev.psi_one,
                    )
                    .check(q_name(q_minus), q_below_one),
            ]
        }
    }
}
