//! Independent oracles shared by the integration tests. Nothing here calls the
//! crate's analytic helpers: the map is the only thing borrowed.
#![allow(dead_code)]

use phytozoo::{apply_map, Params, StabilityClass, State};
use rand::Rng;

/// `(r + theta u)(1 + c u^h) / u^h`, written out again.
pub fn psi_oracle(u: f64, p: &Params) -> f64 {
    let h = p.h() as i32;
    (p.r() + p.theta() * u) * (1.0 + p.c() * u.powi(h)) / u.powi(h)
}

/// Central-difference Jacobian of the map.
pub fn fd_jacobian(s: State, p: &Params, step: f64) -> [[f64; 2]; 2] {
    let f = |u: f64, v: f64| apply_map(State::new(u, v), p).unwrap();
    let (up, um) = (f(s.u + step, s.v), f(s.u - step, s.v));
    let (vp, vm) = (f(s.u, s.v + step), f(s.u, s.v - step));
    let d = 2.0 * step;
    [
        [(up.u - um.u) / d, (vp.u - vm.u) / d],
        [(up.v - um.v) / d, (vp.v - vm.v) / d],
    ]
}

/// Moduli of the eigenvalues of a 2x2 matrix.
pub fn eigen_moduli(m: [[f64; 2]; 2]) -> [f64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        [((tr - s) / 2.0).abs(), ((tr + s) / 2.0).abs()]
    } else {
        let m = det.sqrt();
        [m, m]
    }
}

/// Type from eigenvalue moduli; `None` within `band` of the unit circle.
pub fn class_from_moduli(moduli: [f64; 2], band: f64) -> Option<StabilityClass> {
    if moduli.iter().any(|m| (m - 1.0).abs() <= band) {
        return None;
    }
    let inside = moduli.iter().filter(|m| **m < 1.0).count();
    Some(match inside {
        2 => StabilityClass::Attractive,
        1 => StabilityClass::Saddle,
        _ => StabilityClass::Repelling,
    })
}

pub fn random_params<R: Rng>(rng: &mut R, h: u8) -> Params {
    Params::new(
        h,
        rng.gen_range(0.05..20.0),
        rng.gen_range(0.05..1.5),
        rng.gen_range(0.05..1.5),
        rng.gen_range(0.05..20.0),
    )
    .unwrap()
}

/// Roots of `psi = beta` on `(0, 1)` counted by sign changes on a uniform
/// grid.
pub fn grid_root_count(p: &Params, points: usize) -> usize {
    let mut count = 0;
    let mut prev: Option<f64> = None;
    for i in 1..points {
        let u = i as f64 / points as f64;
        let f = psi_oracle(u, p) - p.beta();
        if let Some(g) = prev {
            if (f > 0.0) != (g > 0.0) {
                count += 1;
            }
        }
        prev = Some(f);
    }
    count
}

/// Minimum of `psi_oracle` on `(0, 1]` by dense sampling, with its location.
pub fn grid_psi_min(p: &Params, points: usize) -> (f64, f64) {
    (1..=points)
        .map(|i| {
            let u = i as f64 / points as f64;
            (u, psi_oracle(u, p))
        })
        .fold((f64::NAN, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
}
