//! Linear stability of fixed points.
//!
//! The characteristic polynomial of a 2x2 Jacobian is written
//! `F(lambda) = lambda^2 - p lambda + q` with `p` the trace and `q` the
//! determinant. The root-location lemma [`classify_roots`] is stated for
//! `lambda^2 + B lambda + C`, so callers pass `B = -p`, `C = q`.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_points::{positive_fixed_points, FixedPoint, FixedPointLabel};
use crate::model::{apply_map, Params, ResponseOrder, State};

/// Width of the band around each defining equality inside which a point is
/// reported as nonhyperbolic.
pub const NONHYPERBOLIC_TOL: f64 = 1e-9;

/// Allowed inconsistency between `F(1)`, `F(-1)` and `(B, C)` in
/// [`classify_roots`].
pub const CONSISTENCY_TOL: f64 = 1e-12;

/// Maximum residual for a state to be accepted as a fixed point.
pub const FIXED_POINT_RESIDUAL: f64 = 1e-8;

pub type Matrix2 = [[f64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharCoeffs {
    pub p: f64,
    pub q: f64,
}

impl CharCoeffs {
    pub fn from_matrix(m: &Matrix2) -> Self {
        CharCoeffs {
            p: m[0][0] + m[1][1],
            q: m[0][0] * m[1][1] - m[0][1] * m[1][0],
        }
    }

    /// `F(lambda) = lambda^2 - p lambda + q`.
    pub fn eval(&self, lambda: f64) -> f64 {
        lambda * lambda - self.p * lambda + self.q
    }

    pub fn f_at_one(&self) -> f64 {
        1.0 - self.p + self.q
    }

    pub fn f_at_minus_one(&self) -> f64 {
        1.0 + self.p + self.q
    }

    /// Roots of `F`, real pair ascending or complex pair with negative
    /// imaginary part first.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half = 0.5 * self.p;
        let disc = half * half - self.q;
        if disc >= 0.0 {
            let s = disc.sqrt();
            [Complex64::new(half - s, 0.0), Complex64::new(half + s, 0.0)]
        } else {
            let s = (-disc).sqrt();
            [Complex64::new(half, -s), Complex64::new(half, s)]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StabilityClass {
    Attractive,
    Repelling,
    Saddle,
    NonHyperbolic,
}

impl StabilityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityClass::Attractive => "Attractive",
            StabilityClass::Repelling => "Repelling",
            StabilityClass::Saddle => "Saddle",
            StabilityClass::NonHyperbolic => "NonHyperbolic",
        }
    }
}

impl std::fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Caveats attached to a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReportNote {
    /// `q(u_-) = 1` with `p(u_-) >= 2`: the type table has no entry.
    TableIncomplete,
    /// `E+` for `h = 2` with `theta >= 1`; the saddle result is only
    /// established for `0 < theta < 1`, so the root lemma decided instead.
    OutsideProvedRegime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityReport {
    pub coeffs: CharCoeffs,
    pub eigenvalues: [Complex64; 2],
    pub class: StabilityClass,
    /// Complex conjugate pair on the unit circle.
    pub ns_flag: bool,
    pub note: Option<ReportNote>,
}

impl StabilityReport {
    fn new(coeffs: CharCoeffs, class: StabilityClass) -> Self {
        StabilityReport {
            coeffs,
            eigenvalues: coeffs.eigenvalues(),
            class,
            ns_flag: false,
            note: None,
        }
    }
}

/// Jacobian of the map at an arbitrary state.
pub fn map_jacobian(s: State, params: &Params) -> Matrix2 {
    let State { u, v } = s;
    let h = params.order().exponent();
    let (beta, r, theta, c) = (params.beta(), params.r(), params.theta(), params.c());
    let uh = u.powi(h);
    let denom = 1.0 + c * uh;
    let response = uh / denom;
    // d/du [u^h / (1 + c u^h)] = h u^(h-1) / (1 + c u^h)^2
    let dresponse = h as f64 * u.powi(h - 1) / (denom * denom);
    [
        [2.0 - 2.0 * u - dresponse * v, -response],
        [
            beta * dresponse * v - theta * v,
            beta * response + 1.0 - r - theta * u,
        ],
    ]
}

/// Jacobian at a fixed point. Rejects states whose residual exceeds
/// [`FIXED_POINT_RESIDUAL`].
pub fn jacobian(fp: &FixedPoint, params: &Params) -> Result<Matrix2> {
    let image = apply_map(fp.state, params)?;
    let residual = image.dist_inf(&fp.state);
    if !(residual <= FIXED_POINT_RESIDUAL) {
        return Err(Error::Precondition(format!(
            "({}, {}) is not a fixed point (residual {residual:e})",
            fp.state.u, fp.state.v
        )));
    }
    Ok(map_jacobian(fp.state, params))
}

/// Location of the two roots of `lambda^2 + B lambda + C` relative to the
/// unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootCase {
    /// `F(1) > 0`, `F(-1) > 0`, `C < 1`: both roots inside.
    I1,
    /// `F(1) > 0`, `F(-1) = 0`, `B != 2`: one root at `-1`; the other is
    /// `-C`, compared with 1 by modulus.
    I2(Ordering),
    /// `F(1) > 0`, `F(-1) < 0`: one inside, one outside.
    I3,
    /// `F(1) > 0`, `F(-1) > 0`, `C > 1`: both outside.
    I4,
    /// `-2 < B < 2`, `C = 1`: complex pair on the unit circle.
    I5,
    /// `F(-1) = 0`, `B = 2`: double root at `-1`.
    I6,
    /// `F(1) = 0`; the other root equals `C`, its modulus compares to 1 as `|C|`.
    II(Ordering),
    /// `F(1) < 0`, `F(-1) <= 0`: one root above 1, the other at or below -1.
    /// The flag is set when the other root is exactly -1.
    III1 { at_minus_one: bool },
    /// `F(1) < 0`, `F(-1) > 0`: one root above 1, the other in `(-1, 1)`.
    III2,
}

impl RootCase {
    pub fn label(&self) -> &'static str {
        match self {
            RootCase::I1 => "i.1",
            RootCase::I2(_) => "i.2",
            RootCase::I3 => "i.3",
            RootCase::I4 => "i.4",
            RootCase::I5 => "i.5",
            RootCase::I6 => "i.6",
            RootCase::II(_) => "ii",
            RootCase::III1 { .. } => "iii.1",
            RootCase::III2 => "iii.2",
        }
    }

    /// `|lambda_1|` and `|lambda_2|` compared with 1.
    pub fn moduli_vs_one(&self) -> [Ordering; 2] {
        use Ordering::*;
        match *self {
            RootCase::I1 => [Less, Less],
            RootCase::I2(other) => [Equal, other],
            RootCase::I3 => [Less, Greater],
            RootCase::I4 => [Greater, Greater],
            RootCase::I5 | RootCase::I6 => [Equal, Equal],
            RootCase::II(other) => [Equal, other],
            RootCase::III1 { at_minus_one } => {
                [if at_minus_one { Equal } else { Greater }, Greater]
            }
            RootCase::III2 => [Less, Greater],
        }
    }

    pub fn class(&self) -> StabilityClass {
        match self {
            RootCase::I1 => StabilityClass::Attractive,
            RootCase::I3 | RootCase::III2 => StabilityClass::Saddle,
            RootCase::I4 | RootCase::III1 { at_minus_one: false } => StabilityClass::Repelling,
            RootCase::I2(_)
            | RootCase::I5
            | RootCase::I6
            | RootCase::II(_)
            | RootCase::III1 { at_minus_one: true } => StabilityClass::NonHyperbolic,
        }
    }
}

fn sign_with_tol(x: f64, tol: f64) -> Ordering {
    if x > tol {
        Ordering::Greater
    } else if x < -tol {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Root-location lemma for `F(lambda) = lambda^2 + B lambda + C`.
///
/// `f_one` and `f_minus_one` must equal `1 + B + C` and `1 - B + C`. Equalities
/// are decided within [`NONHYPERBOLIC_TOL`].
pub fn classify_roots(f_one: f64, f_minus_one: f64, b: f64, c: f64) -> Result<RootCase> {
    if (f_one - (1.0 + b + c)).abs() > CONSISTENCY_TOL
        || (f_minus_one - (1.0 - b + c)).abs() > CONSISTENCY_TOL
    {
        return Err(Error::Precondition(format!(
            "F(1)={f_one}, F(-1)={f_minus_one} inconsistent with B={b}, C={c}"
        )));
    }
    let tol = NONHYPERBOLIC_TOL;
    let case = match sign_with_tol(f_one, tol) {
        Ordering::Greater => match sign_with_tol(f_minus_one, tol) {
            Ordering::Less => RootCase::I3,
            Ordering::Equal => {
                if (b - 2.0).abs() <= tol {
                    RootCase::I6
                } else {
                    RootCase::I2(sign_with_tol(c.abs() - 1.0, tol))
                }
            }
            Ordering::Greater => match sign_with_tol(c - 1.0, tol) {
                Ordering::Less => RootCase::I1,
                Ordering::Greater => RootCase::I4,
                Ordering::Equal => RootCase::I5,
            },
        },
        Ordering::Equal => RootCase::II(sign_with_tol(c.abs() - 1.0, tol)),
        Ordering::Less => match sign_with_tol(f_minus_one, tol) {
            Ordering::Greater => RootCase::III2,
            Ordering::Equal => RootCase::III1 { at_minus_one: true },
            Ordering::Less => RootCase::III1 { at_minus_one: false },
        },
    };
    Ok(case)
}

/// Root-location lemma applied to `lambda^2 - p lambda + q`.
pub fn classify_coeffs(coeffs: &CharCoeffs) -> RootCase {
    classify_roots(coeffs.f_at_one(), coeffs.f_at_minus_one(), -coeffs.p, coeffs.q)
        .expect("F(1) and F(-1) computed from the same coefficients")
}

/// Type of `E0` or `E1`, from the closed-form table.
///
/// `E0`: saddle for `0 < r < 2`, nonhyperbolic at `r = 2`, repelling above.
/// `E1`: attractive for `beta/(1+c) < r + theta < 2 + beta/(1+c)`,
/// nonhyperbolic on either endpoint, saddle otherwise. The table is the same
/// for both response orders.
pub fn classify_boundary(fp: &FixedPoint, params: &Params) -> Result<StabilityReport> {
    let tol = NONHYPERBOLIC_TOL;
    let coeffs = CharCoeffs::from_matrix(&jacobian(fp, params)?);
    let class = match fp.label {
        FixedPointLabel::E0 => match sign_with_tol(params.r() - 2.0, tol) {
            Ordering::Less => StabilityClass::Saddle,
            Ordering::Equal => StabilityClass::NonHyperbolic,
            Ordering::Greater => StabilityClass::Repelling,
        },
        FixedPointLabel::E1 => {
            let k = params.beta() / (1.0 + params.c());
            let s = params.r() + params.theta();
            if (s - k).abs() <= tol || (s - (2.0 + k)).abs() <= tol {
                StabilityClass::NonHyperbolic
            } else if k < s && s < 2.0 + k {
                StabilityClass::Attractive
            } else {
                StabilityClass::Saddle
            }
        }
        label => {
            return Err(Error::Precondition(format!(
                "{label} is not a boundary fixed point"
            )))
        }
    };
    Ok(StabilityReport::new(coeffs, class))
}

/// Closed-form trace and determinant at an interior fixed point with
/// coordinate `u`.
///
/// `h = 1`: `p = a + 1`, `q = a + u(1-u)(beta/(1+cu)^2 - theta)` with
/// `a = (1-u)(1+2cu)/(1+cu)`.
/// `h = 2`: `p = 1 + a`, `q = a + u(1-u)(2 beta u/(1+cu^2)^2 - theta)` with
/// `a = 2cu^2(1-u)/(1+cu^2)`.
pub fn interior_coeffs(u: f64, params: &Params) -> CharCoeffs {
    let (beta, theta, c) = (params.beta(), params.theta(), params.c());
    match params.order() {
        ResponseOrder::TypeII => {
            let s = 1.0 + c * u;
            let a = (1.0 - u) * (1.0 + 2.0 * c * u) / s;
            CharCoeffs {
                p: a + 1.0,
                q: a + u * (1.0 - u) * (beta / (s * s) - theta),
            }
        }
        ResponseOrder::TypeIII => {
            let s = 1.0 + c * u * u;
            let a = 2.0 * c * u * u * (1.0 - u) / s;
            CharCoeffs {
                p: 1.0 + a,
                q: a + u * (1.0 - u) * (2.0 * beta * u / (s * s) - theta),
            }
        }
    }
}

/// Characteristic coefficients at an interior fixed point.
pub fn char_coeffs(fp: &FixedPoint, params: &Params) -> Result<CharCoeffs> {
    if !fp.label.is_interior() {
        return Err(Error::Precondition(format!(
            "{} is a boundary fixed point; use classify_boundary",
            fp.label
        )));
    }
    Ok(interior_coeffs(fp.state.u, params))
}

/// Type of `E-` or `E+` from the closed-form tables.
///
/// `E-`: attractive if `q < 1`, repelling if `q > 1`, nonhyperbolic (with the
/// Neimark-Sacker flag) when `q = 1` and `-2 < p < 2`.
/// `E+` with `h = 1`: saddle, repelling or nonhyperbolic as `F(-1)` is
/// positive, negative or zero. `E+` with `h = 2`: saddle when `theta < 1`.
pub fn classify_interior(fp: &FixedPoint, params: &Params) -> Result<StabilityReport> {
    let expected = positive_fixed_points(params)
        .into_iter()
        .find(|e| e.label == fp.label);
    match expected {
        Some(e) if fp.label.is_interior() && e.state.dist_inf(&fp.state) <= FIXED_POINT_RESIDUAL => {}
        _ => {
            return Err(Error::Precondition(format!(
                "({}, {}) labelled {} is not an interior fixed point of these parameters",
                fp.state.u, fp.state.v, fp.label
            )))
        }
    }

    let tol = NONHYPERBOLIC_TOL;
    let coeffs = char_coeffs(fp, params)?;
    let mut report = StabilityReport::new(coeffs, StabilityClass::NonHyperbolic);

    if fp.degenerate {
        // double root: F(1) = 0, outside the tables
        report.class = classify_coeffs(&coeffs).class();
        return Ok(report);
    }

    match fp.label {
        FixedPointLabel::Eminus => match sign_with_tol(coeffs.q - 1.0, tol) {
            Ordering::Less => report.class = StabilityClass::Attractive,
            Ordering::Greater => report.class = StabilityClass::Repelling,
            Ordering::Equal => {
                if coeffs.p > -2.0 && coeffs.p < 2.0 {
                    report.ns_flag = true;
                } else {
                    report.note = Some(ReportNote::TableIncomplete);
                }
            }
        },
        FixedPointLabel::Eplus => match params.order() {
            ResponseOrder::TypeII => {
                report.class = match sign_with_tol(coeffs.f_at_minus_one(), tol) {
                    Ordering::Greater => StabilityClass::Saddle,
                    Ordering::Less => StabilityClass::Repelling,
                    Ordering::Equal => StabilityClass::NonHyperbolic,
                }
            }
            ResponseOrder::TypeIII => {
                if params.theta() < 1.0 {
                    report.class = StabilityClass::Saddle;
                } else {
                    report.class = classify_coeffs(&coeffs).class();
                    report.note = Some(ReportNote::OutsideProvedRegime);
                }
            }
        },
        _ => unreachable!("checked above"),
    }
    Ok(report)
}

/// Dispatches to [`classify_boundary`] or [`classify_interior`].
pub fn classify(fp: &FixedPoint, params: &Params) -> Result<StabilityReport> {
    if fp.label.is_interior() {
        classify_interior(fp, params)
    } else {
        classify_boundary(fp, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_points::boundary_fixed_points;

    fn params(h: u8, beta: f64, r: f64, theta: f64, c: f64) -> Params {
        Params::new(h, beta, r, theta, c).unwrap()
    }

    fn fd_jacobian(s: State, p: &Params, step: f64) -> Matrix2 {
        let f = |u: f64, v: f64| apply_map(State::new(u, v), p).unwrap();
        let (up, um) = (f(s.u + step, s.v), f(s.u - step, s.v));
        let (vp, vm) = (f(s.u, s.v + step), f(s.u, s.v - step));
        [
            [(up.u - um.u) / (2.0 * step), (vp.u - vm.u) / (2.0 * step)],
            [(up.v - um.v) / (2.0 * step), (vp.v - vm.v) / (2.0 * step)],
        ]
    }

    fn assert_matrix_close(a: &Matrix2, b: &Matrix2, tol: f64) {
        for i in 0..2 {
            for j in 0..2 {
                assert!((a[i][j] - b[i][j]).abs() <= tol, "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn jacobian_at_e0_is_diagonal() {
        let p = params(1, 1.0, 0.5, 0.25, 0.25);
        let [e0, _] = boundary_fixed_points(&p);
        assert_eq!(jacobian(&e0, &p).unwrap(), [[2.0, 0.0], [0.0, 0.5]]);
    }

    #[test]
    fn jacobian_at_e1_matches_finite_differences() {
        let p = params(1, 1.0, 0.5, 0.25, 0.25);
        let [_, e1] = boundary_fixed_points(&p);
        let j = jacobian(&e1, &p).unwrap();
        assert_matrix_close(&j, &fd_jacobian(e1.state, &p, 1e-6), 1e-6);
        let eig = CharCoeffs::from_matrix(&j).eigenvalues();
        assert!(eig[0].norm() < 1e-15);
        assert!((eig[1].re - 1.05).abs() < 1e-12);
    }

    #[test]
    fn jacobian_at_type_iii_interior_matches_closed_form() {
        let p = params(2, 3.0, 0.5, 0.25, 2.0);
        let e = positive_fixed_points(&p)[0];
        let (u, v) = (e.state.u, e.state.v);
        let s = 1.0 + 2.0 * u * u;
        let closed = [
            [4.0 * u * u * (1.0 - u) / s, -u * u / s],
            [(6.0 * u / (s * s) - 0.25) * v, 1.0],
        ];
        let j = jacobian(&e, &p).unwrap();
        assert_matrix_close(&j, &closed, 1e-9);
        assert_matrix_close(&j, &fd_jacobian(e.state, &p, 1e-6), 1e-6);
    }

    #[test]
    fn jacobian_rejects_non_fixed_points() {
        let p = params(1, 1.0, 0.5, 0.25, 0.25);
        let fake = FixedPoint {
            state: State::new(0.5, 0.5),
            label: FixedPointLabel::Eminus,
            degenerate: false,
        };
        assert!(matches!(jacobian(&fake, &p), Err(Error::Precondition(_))));
    }

    #[test]
    fn root_lemma_examples() {
        let case = |b: f64, c: f64| classify_roots(1.0 + b + c, 1.0 - b + c, b, c).unwrap();
        assert_eq!(case(0.0, 0.5), RootCase::I1);
        assert_eq!(case(-3.0, 2.0), RootCase::II(Ordering::Greater));
        assert_eq!(case(-1.0, 1.0), RootCase::I5);
        assert_eq!(case(0.0, -2.0), RootCase::III1 { at_minus_one: false });
        assert_eq!(case(2.0, 1.0), RootCase::I6);
        assert_eq!(case(1.5, 0.5), RootCase::I2(Ordering::Less));
        assert_eq!(case(0.0, 2.0), RootCase::I4);
        assert_eq!(case(1.0, -0.5), RootCase::I3);
        assert_eq!(case(-2.5, 1.0), RootCase::III2);
        assert!(matches!(
            classify_roots(1.0, 1.0, 0.0, 0.5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn boundary_tables() {
        let e0 = |r: f64| {
            let p = params(1, 1.0, r, 0.25, 0.25);
            classify_boundary(&boundary_fixed_points(&p)[0], &p).unwrap().class
        };
        assert_eq!(e0(0.5), StabilityClass::Saddle);
        assert_eq!(e0(2.0), StabilityClass::NonHyperbolic);
        assert_eq!(e0(2.5), StabilityClass::Repelling);

        let e1 = |p: Params| classify_boundary(&boundary_fixed_points(&p)[1], &p).unwrap().class;
        assert_eq!(e1(params(1, 1.0, 0.5, 0.25, 0.25)), StabilityClass::Saddle);
        assert_eq!(e1(params(1, 3.7, 0.5, 0.25, 4.0)), StabilityClass::Attractive);
        // r + theta = beta / (1 + c)
        assert_eq!(e1(params(1, 1.0, 0.55, 0.25, 0.25)), StabilityClass::NonHyperbolic);
    }

    #[test]
    fn type_ii_interior_coefficients() {
        let p = params(1, 1.0, 0.5, 0.25, 0.25);
        let e = positive_fixed_points(&p)[0];
        let c = char_coeffs(&e, &p).unwrap();
        assert!((c.p - 1.1452).abs() < 1e-4, "{c:?}");
        assert!((c.q - 0.1909).abs() < 1e-4, "{c:?}");
        let fd = CharCoeffs::from_matrix(&fd_jacobian(e.state, &p, 1e-6));
        assert!((fd.p - c.p).abs() < 1e-6 && (fd.q - c.q).abs() < 1e-6);
        assert_eq!(classify_interior(&e, &p).unwrap().class, StabilityClass::Attractive);
    }

    #[test]
    fn coefficients_approach_degenerate_limit() {
        let p = params(1, 1.0, 0.5, 0.25, 0.25);
        let c = interior_coeffs(1.0 - 1e-12, &p);
        assert!((c.p - 1.0).abs() < 1e-10 && c.q.abs() < 1e-10);
        let p2 = params(2, 1.0, 0.5, 0.25, 2.0);
        let c = interior_coeffs(1.0, &p2);
        assert_eq!((c.p, c.q), (1.0, 0.0));
    }

    #[test]
    fn type_iii_ns_neighbourhood() {
        let at = |c: f64| {
            let p = params(2, 11.0, 0.5, 0.25, c);
            let e = positive_fixed_points(&p)[0];
            (e.state.u, classify_interior(&e, &p).unwrap())
        };
        let (u, rep) = at(11.3);
        assert!((u - 0.371).abs() < 1e-3);
        assert!((rep.coeffs.q - 0.999).abs() < 1e-3);
        assert_eq!(rep.class, StabilityClass::Attractive);
        let (u, rep) = at(11.1);
        assert!((u - 0.365).abs() < 1e-3);
        assert!((rep.coeffs.q - 1.003).abs() < 1e-3);
        assert_eq!(rep.class, StabilityClass::Repelling);
    }

    #[test]
    fn type_iii_upper_point_is_saddle() {
        let p = params(2, 6.7, 0.5, 0.25, 8.0);
        let fps = positive_fixed_points(&p);
        let rep = classify_interior(&fps[1], &p).unwrap();
        assert_eq!(rep.class, StabilityClass::Saddle);
        assert!(rep.note.is_none());
        assert_eq!(classify_coeffs(&rep.coeffs).class(), StabilityClass::Saddle);
    }

    #[test]
    fn classify_interior_rejects_mismatched_label() {
        let p = params(1, 1.0, 0.5, 0.25, 0.25);
        let mut e = positive_fixed_points(&p)[0];
        e.label = FixedPointLabel::Eplus;
        assert!(classify_interior(&e, &p).is_err());
        let [e0, _] = boundary_fixed_points(&p);
        assert!(char_coeffs(&e0, &p).is_err());
    }

    #[test]
    fn vieta_holds_for_reports() {
        let p = params(1, 3.7, 0.5, 0.25, 4.0);
        for fp in crate::fixed_points::all_fixed_points(&p) {
            let rep = classify(&fp, &p).unwrap();
            let [l1, l2] = rep.eigenvalues;
            assert!(((l1 + l2).re - rep.coeffs.p).abs() < 1e-9);
            assert!(((l1 * l2).re - rep.coeffs.q).abs() < 1e-9);
            assert!((l1 * l2).im.abs() < 1e-9);
        }
    }
}
