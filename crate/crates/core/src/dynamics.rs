//! Orbits and what they tend to.
//!
//! [`simulate`] iterates the map and returns a limit verdict. The batch
//! routines ([`portrait`], [`basin_boundary`]) run independent simulations in
//! parallel and return results in input order, so the output does not depend
//! on the number of threads.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixed_points::{all_fixed_points, interior_point, positive_fixed_points, FixedPoint, FixedPointLabel};
use crate::model::{apply_map, ParamName, Params, State};
use crate::regions::u_zero_curve;
use crate::stability::{classify_boundary, classify_interior, interior_coeffs, StabilityClass};

/// Consecutive iterates that must sit within `conv_tol` of the same fixed
/// point before the orbit is declared convergent.
pub const CONVERGENCE_STREAK: usize = 10;

/// Cap on stored iterates; longer runs are decimated with a uniform stride.
pub const MAX_STORED_ITERATES: usize = 100_000;

/// Length of each of the two tail windows examined for an invariant curve.
pub const TAIL_WINDOW: usize = 1000;

/// Grid points scanned along each vertical line when bracketing the basin
/// boundary.
pub const BASIN_SCAN_POINTS: usize = 400;

/// `|q(u_-) - 1|` accepted at a Neimark-Sacker crossing.
pub const NS_TOL: f64 = 1e-9;

/// Parameter bracket width at which crossing refinement stops.
pub const NS_PARAM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimSettings {
    pub max_steps: usize,
    pub conv_tol: f64,
    pub escape_radius: f64,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            max_steps: 100_000,
            conv_tol: 1e-9,
            escape_radius: 1e8,
        }
    }
}

impl SimSettings {
    pub fn validate(&self) -> Result<()> {
        if self.max_steps < 1 {
            return Err(Error::Precondition("max_steps must be at least 1".into()));
        }
        if !(self.conv_tol > 0.0) || !self.conv_tol.is_finite() {
            return Err(Error::Precondition(format!(
                "conv_tol must be positive and finite, got {}",
                self.conv_tol
            )));
        }
        if !(self.escape_radius > 0.0) {
            return Err(Error::Precondition(format!(
                "escape_radius must be positive, got {}",
                self.escape_radius
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ConvergedTo(FixedPointLabel),
    Diverged,
    /// Bounded, non-convergent orbit winding around `E-` at a non-shrinking
    /// distance. Empirical: decided from the tail of the orbit.
    InvariantCurve,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ConvergedTo(label) => write!(f, "ConvergedTo({label})"),
            Verdict::Diverged => f.write_str("Diverged"),
            Verdict::InvariantCurve => f.write_str("InvariantCurve"),
            Verdict::Undecided => f.write_str("Undecided"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryResult {
    /// `s0` followed by every `stride`-th iterate, at most
    /// [`MAX_STORED_ITERATES`] states; the last iterate computed is always
    /// included.
    pub iterates: Vec<State>,
    /// Iterate index of each stored state.
    pub indices: Vec<usize>,
    pub stride: usize,
    pub verdict: Verdict,
    pub steps_used: usize,
}

impl TrajectoryResult {
    pub fn last(&self) -> State {
        *self.iterates.last().expect("s0 is always stored")
    }
}

fn nearest_within(s: State, fps: &[FixedPoint], tol: f64) -> Option<FixedPointLabel> {
    fps.iter()
        .map(|fp| (fp.state.dist_inf(&s), fp.label))
        .filter(|(d, _)| *d <= tol)
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, label)| label)
}

struct Recorder {
    iterates: Vec<State>,
    indices: Vec<usize>,
    stride: usize,
}

impl Recorder {
    fn new(s0: State) -> Self {
        Recorder {
            iterates: vec![s0],
            indices: vec![0],
            stride: 1,
        }
    }

    /// Keeps every `stride`-th iterate; when the buffer fills up, every other
    /// stored entry is dropped and the stride doubles.
    fn record(&mut self, n: usize, s: State) {
        if n % self.stride != 0 {
            return;
        }
        self.iterates.push(s);
        self.indices.push(n);
        if self.iterates.len() == MAX_STORED_ITERATES {
            self.stride *= 2;
            let stride = self.stride;
            let mut k = 0;
            self.iterates.retain(|_| {
                let keep = self.indices[k] % stride == 0;
                k += 1;
                keep
            });
            self.indices.retain(|i| i % stride == 0);
        }
    }

    fn finish(mut self, n: usize, s: State, verdict: Verdict) -> TrajectoryResult {
        if *self.indices.last().unwrap() != n {
            self.iterates.push(s);
            self.indices.push(n);
        }
        TrajectoryResult {
            iterates: self.iterates,
            indices: self.indices,
            stride: self.stride,
            verdict,
            steps_used: n,
        }
    }
}

/// Tail test for a closed invariant curve around `center`: the orbit stays a
/// finite distance away, does not shrink towards it from one window to the
/// next, and winds around it at least once.
fn looks_like_invariant_curve(tail: &VecDeque<State>, center: State, conv_tol: f64) -> bool {
    let window = tail.len() / 2;
    if window < 50 {
        return false;
    }
    let floor = 10.0 * conv_tol;

    let (mut umin, mut umax, mut vmin, mut vmax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for s in tail {
        umin = umin.min(s.u);
        umax = umax.max(s.u);
        vmin = vmin.min(s.v);
        vmax = vmax.max(s.v);
    }
    if (umax - umin).max(vmax - vmin) <= floor {
        return false;
    }

    let dists: Vec<f64> = tail.iter().map(|s| s.dist_inf(&center)).collect();
    if dists.iter().cloned().fold(f64::INFINITY, f64::min) <= floor {
        return false;
    }
    let early = dists[..window].iter().cloned().fold(0.0, f64::max);
    let late = dists[tail.len() - window..].iter().cloned().fold(0.0, f64::max);
    if late < 0.9 * early {
        return false;
    }

    let mut winding = 0.0;
    let mut prev: Option<f64> = None;
    for s in tail {
        let angle = (s.v - center.v).atan2(s.u - center.u);
        if let Some(p) = prev {
            let mut d = angle - p;
            if d > PI {
                d -= 2.0 * PI;
            } else if d < -PI {
                d += 2.0 * PI;
            }
            winding += d;
        }
        prev = Some(angle);
    }
    winding.abs() >= 2.0 * PI
}

/// Iterates the map from `s0` for at most `settings.max_steps` steps.
///
/// Stops early once [`CONVERGENCE_STREAK`] consecutive iterates lie within
/// `conv_tol` (max-norm) of the same fixed point, or when a coordinate
/// exceeds `escape_radius` or overflows. A start that is mapped exactly onto
/// itself and lies within `conv_tol` of a fixed point converges in 0 steps.
pub fn simulate(s0: State, params: &Params, settings: &SimSettings) -> Result<TrajectoryResult> {
    settings.validate()?;
    if !s0.is_finite() {
        return Err(Error::Precondition("initial state must be finite".into()));
    }
    let fps = all_fixed_points(params);
    let center = interior_point(params, FixedPointLabel::Eminus).map(|e| e.state);
    let mut rec = Recorder::new(s0);

    if let Ok(img) = apply_map(s0, params) {
        if img == s0 {
            if let Some(label) = nearest_within(s0, &fps, settings.conv_tol) {
                return Ok(rec.finish(0, s0, Verdict::ConvergedTo(label)));
            }
        }
    }

    let tail_cap = 2 * TAIL_WINDOW;
    let mut tail: VecDeque<State> = VecDeque::with_capacity(tail_cap);
    let mut streak: Option<(FixedPointLabel, usize)> = None;
    let mut s = s0;
    for n in 1..=settings.max_steps {
        s = match apply_map(s, params) {
            Ok(next) => next,
            Err(_) => return Ok(rec.finish(n - 1, s, Verdict::Diverged)),
        };
        rec.record(n, s);
        if s.u.abs() > settings.escape_radius || s.v.abs() > settings.escape_radius {
            return Ok(rec.finish(n, s, Verdict::Diverged));
        }

        streak = match (nearest_within(s, &fps, settings.conv_tol), streak) {
            (Some(label), Some((prev, k))) if label == prev => Some((label, k + 1)),
            (Some(label), _) => Some((label, 1)),
            (None, _) => None,
        };
        if let Some((label, k)) = streak {
            if k >= CONVERGENCE_STREAK {
                return Ok(rec.finish(n, s, Verdict::ConvergedTo(label)));
            }
        }

        if tail.len() == tail_cap {
            tail.pop_front();
        }
        tail.push_back(s);
    }

    let verdict = match center {
        Some(c) if looks_like_invariant_curve(&tail, c, settings.conv_tol) => Verdict::InvariantCurve,
        _ => Verdict::Undecided,
    };
    Ok(rec.finish(settings.max_steps, s, verdict))
}

/// Rectangle `[u0, u1] x [v0, v1]` split into `nu x nv` cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub u0: f64,
    pub u1: f64,
    pub nu: usize,
    pub v0: f64,
    pub v1: f64,
    pub nv: usize,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        if self.nu < 1 || self.nv < 1 {
            return Err(Error::Precondition("grid resolution must be at least 1 in each axis".into()));
        }
        if ![self.u0, self.u1, self.v0, self.v1].iter().all(|x| x.is_finite()) {
            return Err(Error::Precondition("grid bounds must be finite".into()));
        }
        Ok(())
    }

    /// Cell centres in row-major order: `v` rows outer, `u` inner.
    pub fn centers(&self) -> Vec<State> {
        let du = (self.u1 - self.u0) / self.nu as f64;
        let dv = (self.v1 - self.v0) / self.nv as f64;
        (0..self.nv)
            .flat_map(|j| {
                (0..self.nu).map(move |i| {
                    State::new(
                        self.u0 + (i as f64 + 0.5) * du,
                        self.v0 + (j as f64 + 0.5) * dv,
                    )
                })
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    /// `u0:u1:nu,v0:v1:nv`
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        fn axis(part: &str) -> std::result::Result<(f64, f64, usize), String> {
            let fields: Vec<&str> = part.split(':').collect();
            if fields.len() != 3 {
                return Err(format!("expected lo:hi:count, got '{part}'"));
            }
            let lo = fields[0].trim().parse::<f64>().map_err(|e| format!("{}: {e}", fields[0]))?;
            let hi = fields[1].trim().parse::<f64>().map_err(|e| format!("{}: {e}", fields[1]))?;
            let n = fields[2].trim().parse::<usize>().map_err(|e| format!("{}: {e}", fields[2]))?;
            Ok((lo, hi, n))
        }
        let (u_part, v_part) = s
            .split_once(',')
            .ok_or_else(|| format!("expected u0:u1:nu,v0:v1:nv, got '{s}'"))?;
        let (u0, u1, nu) = axis(u_part)?;
        let (v0, v1, nv) = axis(v_part)?;
        let grid = Grid { u0, u1, nu, v0, v1, nv };
        grid.validate().map_err(|e| e.to_string())?;
        Ok(grid)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PortraitCell {
    pub start: State,
    pub verdict: Verdict,
    pub steps_used: usize,
}

/// Verdict for the centre of every grid cell, row-major.
pub fn portrait(grid: &Grid, params: &Params, settings: &SimSettings) -> Result<Vec<PortraitCell>> {
    grid.validate()?;
    settings.validate()?;
    grid.centers()
        .into_par_iter()
        .map(|start| {
            let run = simulate(start, params, settings)?;
            Ok(PortraitCell {
                start,
                verdict: run.verdict,
                steps_used: run.steps_used,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    pub u: f64,
    pub v_star: f64,
    /// Attractor reached just below `v_star`.
    pub below: FixedPointLabel,
    /// Attractor reached just above `v_star`.
    pub above: FixedPointLabel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasinBoundary {
    pub samples: Vec<BoundarySample>,
    /// Why particular `u` values were omitted.
    pub notes: Vec<String>,
}

fn attractor(v: Verdict) -> Option<FixedPointLabel> {
    match v {
        Verdict::ConvergedTo(l @ (FixedPointLabel::Eminus | FixedPointLabel::E1)) => Some(l),
        _ => None,
    }
}

/// Checks the bistable regime: two interior points, `E-` and `E1` both
/// attractive.
pub fn check_bistable(params: &Params) -> Result<()> {
    let fps = positive_fixed_points(params);
    if fps.len() != 2 {
        return Err(Error::Regime(format!(
            "bistability needs two interior fixed points, found {}",
            fps.len()
        )));
    }
    let lower = classify_interior(&fps[0], params)?;
    if lower.class != StabilityClass::Attractive {
        return Err(Error::Regime(format!("E- is {}, not attractive", lower.class)));
    }
    let e1 = all_fixed_points(params)[1];
    let e1_class = classify_boundary(&e1, params)?.class;
    if e1_class != StabilityClass::Attractive {
        return Err(Error::Regime(format!("E1 is {e1_class}, not attractive")));
    }
    Ok(())
}

fn boundary_at(u: f64, params: &Params, v_tol: f64, settings: &SimSettings) -> Result<std::result::Result<BoundarySample, String>> {
    if !(u > 0.0 && u <= 1.0) {
        return Ok(Err(format!("u={u}: outside (0, 1]")));
    }
    let top = u_zero_curve(u, params);
    let verdict_at = |v: f64| -> Result<Option<FixedPointLabel>> {
        Ok(attractor(simulate(State::new(u, v), params, settings)?.verdict))
    };

    // lowest adjacent pair of scan points reaching different attractors
    let mut prev: Option<(f64, FixedPointLabel)> = None;
    let mut bracket = None;
    for k in 1..=BASIN_SCAN_POINTS {
        let v = top * k as f64 / BASIN_SCAN_POINTS as f64;
        match (verdict_at(v)?, prev) {
            (Some(label), Some((pv, pl))) if label != pl => {
                bracket = Some((pv, pl, v, label));
                break;
            }
            (Some(label), _) => prev = Some((v, label)),
            (None, _) => prev = None,
        }
    }
    let Some((mut lo, below, mut hi, above)) = bracket else {
        return Ok(Err(format!("u={u}: no E-/E1 bracket found on (0, {top}]")));
    };

    while hi - lo > v_tol {
        let mid = 0.5 * (lo + hi);
        match verdict_at(mid)? {
            Some(l) if l == below => lo = mid,
            Some(l) if l == above => hi = mid,
            _ => return Ok(Err(format!("u={u}: undecided orbit at v={mid} during bisection"))),
        }
    }
    Ok(Ok(BoundarySample {
        u,
        v_star: 0.5 * (lo + hi),
        below,
        above,
    }))
}

/// Approximates the stable curve of `E+` (the boundary between the basins of
/// `E-` and `E1`) on each vertical line `u = const` by bisection in `v`.
pub fn basin_boundary(u_values: &[f64], params: &Params, v_tol: f64, settings: &SimSettings) -> Result<BasinBoundary> {
    if !(v_tol > 0.0) {
        return Err(Error::Precondition("v_tol must be positive".into()));
    }
    settings.validate()?;
    check_bistable(params)?;

    let per_u: Vec<_> = u_values
        .par_iter()
        .map(|&u| boundary_at(u, params, v_tol, settings))
        .collect::<Result<_>>()?;
    let mut out = BasinBoundary {
        samples: Vec::new(),
        notes: Vec::new(),
    };
    for r in per_u {
        match r {
            Ok(s) => out.samples.push(s),
            Err(note) => out.notes.push(note),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSample {
    pub value: f64,
    pub u_minus: Option<f64>,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub class: Option<StabilityClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BifurcationPoint {
    pub param_name: ParamName,
    pub value: f64,
    pub u_minus: f64,
    pub p_at_crossing: f64,
    pub q_at_crossing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NsSweep {
    pub samples: Vec<SweepSample>,
    pub crossings: Vec<BifurcationPoint>,
    pub notes: Vec<String>,
}

/// `(u_-, p, q)` at parameter value `x`, or `None` when `E-` does not exist.
fn lower_point_coeffs(params: &Params, name: ParamName, x: f64) -> Result<Option<(Params, FixedPoint, f64, f64)>> {
    let p = params.with(name, x)?;
    Ok(interior_point(&p, FixedPointLabel::Eminus).map(|e| {
        let c = interior_coeffs(e.state.u, &p);
        (p, e, c.p, c.q)
    }))
}

/// Scans `name` over `steps` equally spaced values on `[from, to]` for sign
/// changes of `q(u_-) - 1` and refines each by bisection.
pub fn ns_sweep(name: ParamName, from: f64, to: f64, steps: usize, params: &Params) -> Result<NsSweep> {
    if !(from < to) {
        return Err(Error::Precondition(format!("empty range [{from}, {to}]")));
    }
    if steps < 2 {
        return Err(Error::Precondition("steps must be at least 2".into()));
    }

    let mut notes = Vec::new();
    let mut samples = Vec::with_capacity(steps);
    for i in 0..steps {
        let x = if i + 1 == steps {
            to
        } else {
            from + (to - from) * i as f64 / (steps - 1) as f64
        };
        let sample = match lower_point_coeffs(params, name, x)? {
            Some((p, e, pc, qc)) => SweepSample {
                value: x,
                u_minus: Some(e.state.u),
                p: Some(pc),
                q: Some(qc),
                class: Some(classify_interior(&e, &p)?.class),
            },
            None => {
                notes.push(format!("{name}={x}: no E-, skipped"));
                SweepSample {
                    value: x,
                    u_minus: None,
                    p: None,
                    q: None,
                    class: None,
                }
            }
        };
        samples.push(sample);
    }
    if samples.iter().all(|s| s.q.is_none()) {
        return Err(Error::Regime(format!(
            "E- does not exist anywhere on {name} in [{from}, {to}]"
        )));
    }

    let mut crossings = Vec::new();
    for pair in samples.windows(2) {
        let (Some(qa), Some(qb)) = (pair[0].q, pair[1].q) else {
            continue;
        };
        let (fa, fb) = (qa - 1.0, qb - 1.0);
        // a zero on the grid is counted by the bracket it starts
        if !(fa == 0.0 || fa * fb < 0.0) {
            continue;
        }
        match refine_crossing(params, name, pair[0].value, fa, pair[1].value)? {
            Ok(point) => crossings.push(point),
            Err(note) => notes.push(note),
        }
    }

    Ok(NsSweep {
        samples,
        crossings,
        notes,
    })
}

fn refine_crossing(params: &Params, name: ParamName, mut a: f64, mut fa: f64, mut b: f64) -> Result<std::result::Result<BifurcationPoint, String>> {
    loop {
        let mid = if fa == 0.0 { a } else { 0.5 * (a + b) };
        let Some((_, e, p, q)) = lower_point_coeffs(params, name, mid)? else {
            return Ok(Err(format!("{name}={mid}: E- vanished inside bracket")));
        };
        let f = q - 1.0;
        if f.abs() <= NS_TOL || b - a <= NS_PARAM_TOL {
            if f.abs() > NS_TOL {
                return Ok(Err(format!(
                    "{name}={mid}: bracket collapsed with |q-1|={:e}",
                    f.abs()
                )));
            }
            if !(p > -2.0 && p < 2.0) {
                return Ok(Err(format!("{name}={mid}: q=1 but p={p} outside (-2, 2)")));
            }
            return Ok(Ok(BifurcationPoint {
                param_name: name,
                value: mid,
                u_minus: e.state.u,
                p_at_crossing: p,
                q_at_crossing: q,
            }));
        }
        if f.signum() == fa.signum() {
            a = mid;
            fa = f;
        } else {
            b = mid;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VAxisCheck {
    pub starts: usize,
    pub steps: usize,
    pub monotone: bool,
    /// Largest `v` left after `steps` iterations.
    pub max_final: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogisticReport {
    /// Discriminant of `u^2 - 3u + 3`; negative means no 2-cycle on M1.
    pub period_two_discriminant: f64,
    pub starts: usize,
    pub steps: usize,
    /// Largest `|f^n(u0) - 1|` over the starts.
    pub max_final_error: f64,
    /// Every start in `(0, 1)` gave a non-decreasing orbit.
    pub monotone_below_one: bool,
    /// Present when `r <= 1`.
    pub v_axis: Option<VAxisCheck>,
}

impl LogisticReport {
    pub fn converged(&self, tol: f64) -> bool {
        self.max_final_error <= tol
    }
}

/// Dynamics on the two invariant axes: `u -> u(2 - u)` on M1 and
/// `v -> (1 - r) v` on M2.
pub fn logistic_edge_checks(params: &Params) -> Result<LogisticReport> {
    const STARTS: usize = 100;
    const STEPS: usize = 10_000;

    let (a, b, c) = (1.0, -3.0, 3.0);
    let period_two_discriminant = b * b - 4.0 * a * c;

    let mut max_final_error: f64 = 0.0;
    let mut monotone_below_one = true;
    for i in 0..STARTS {
        let u0 = 2.0 * (i as f64 + 0.5) / STARTS as f64;
        let mut s = State::new(u0, 0.0);
        for _ in 0..STEPS {
            let next = apply_map(s, params)?;
            if u0 < 1.0 && next.u < s.u {
                monotone_below_one = false;
            }
            s = next;
        }
        max_final_error = max_final_error.max((s.u - 1.0).abs());
    }

    let v_axis = if params.r() <= 1.0 {
        let mut monotone = true;
        let mut max_final: f64 = 0.0;
        for i in 1..=STARTS {
            let mut s = State::new(0.0, 10.0 * i as f64 / STARTS as f64);
            for _ in 0..STEPS {
                let next = apply_map(s, params)?;
                if next.v > s.v || next.u != 0.0 {
                    monotone = false;
                }
                s = next;
            }
            max_final = max_final.max(s.v);
        }
        Some(VAxisCheck {
            starts: STARTS,
            steps: STEPS,
            monotone,
            max_final,
        })
    } else {
        None
    };

    Ok(LogisticReport {
        period_two_discriminant,
        starts: STARTS,
        steps: STEPS,
        max_final_error,
        monotone_below_one,
        v_axis,
    })
}
