//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so every criterion is reported even when an earlier one fails;
//! the process exits non-zero if any criterion fails.

mod common;

use common::{class_from_moduli, eigen_moduli, fd_jacobian, psi_oracle};
use phytozoo::dynamics::{basin_boundary, logistic_edge_checks, ns_sweep, simulate, SimSettings, Verdict};
use phytozoo::fixed_points::{all_fixed_points, interior_point, positive_fixed_points};
use phytozoo::model::ubar;
use phytozoo::regions::{invariance_hypotheses, membership, verify_invariance, RegionId};
use phytozoo::stability::{classify, interior_coeffs, map_jacobian};
use phytozoo::{apply_map, FixedPointLabel, ParamName, Params, StabilityClass, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::process::Command;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn params(h: u8, beta: f64, r: f64, theta: f64, c: f64) -> Params {
    Params::new(h, beta, r, theta, c).unwrap()
}

fn stable_ii() -> Params {
    params(1, 1.0, 0.5, 0.25, 0.25)
}
fn bistable_ii() -> Params {
    params(1, 3.7, 0.5, 0.25, 4.0)
}
fn stable_iii() -> Params {
    params(2, 3.0, 0.5, 0.25, 2.0)
}
fn bistable_iii() -> Params {
    params(2, 6.7, 0.5, 0.25, 8.0)
}
fn near_ns(c: f64) -> Params {
    params(2, 11.0, 0.5, 0.25, c)
}

fn cli_fp(p: &Params) -> Value {
    let fmt = |x: f64| format!("{x}");
    let out = Command::new(env!("CARGO_BIN_EXE_phytozoo"))
        .args(["fp", "--h", &p.h().to_string()])
        .args(["--beta", &fmt(p.beta()), "--r", &fmt(p.r())])
        .args(["--theta", &fmt(p.theta()), "--c", &fmt(p.c())])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn reported(report: &Value, label: &str) -> Option<(f64, f64)> {
    report["fixed_points"]
        .as_array()?
        .iter()
        .find(|p| p["label"] == label)
        .map(|p| (p["u"].as_f64().unwrap(), p["v"].as_f64().unwrap()))
}

// ---------------------------------------------------------------------------

fn fixed_point_golden_values() -> Outcome {
    // (case, params, label, printed u, printed v, tolerance)
    let cases = [
        ("stable_ii", stable_ii(), "Eminus", 0.876894, 0.150093, 1e-5),
        ("bistable_ii", bistable_ii(), "Eminus", 0.564922, 1.41822, 1e-5),
        ("bistable_ii", bistable_ii(), "Eplus", 0.885078, 0.521718, 1e-5),
        ("stable_iii", stable_iii(), "Eminus", 0.623, 1.074, 1e-3),
        ("bistable_iii", bistable_iii(), "Eminus", 0.784712, 1.625865, 1e-5),
        ("bistable_iii", bistable_iii(), "Eplus", 0.913894, 0.723753, 1e-5),
    ];
    let mut misses = Vec::new();
    for (case, p, label, u, v, tol) in cases {
        let rep = cli_fp(&p);
        match reported(&rep, label) {
            Some((fu, fv)) => {
                let err = (fu - u).abs().max((fv - v).abs());
                if err > tol {
                    misses.push(format!("{case} {label} ({fu:.7}, {fv:.7}) off by {err:.1e} > {tol:e}"));
                }
            }
            None => misses.push(format!("{case} {label} missing")),
        }
    }
    let pass = misses.is_empty();
    let detail = if pass { "6 points within tolerance".into() } else { misses.join("; ") };
    Outcome::new(pass, detail)
}

fn stability_golden_values() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (c, q_printed, class) in [(11.3, 0.999, StabilityClass::Attractive), (11.1, 1.003, StabilityClass::Repelling)] {
        let p = near_ns(c);
        let Some(e) = interior_point(&p, FixedPointLabel::Eminus) else {
            return Outcome::new(false, format!("no E- at c={c}"));
        };
        let q = interior_coeffs(e.state.u, &p).q;
        let got = classify(&e, &p).unwrap().class;
        pass &= (q - q_printed).abs() <= 1e-3 && got == class;
        parts.push(format!("c={c}: q={q:.6} {got}"));
    }
    Outcome::new(pass, parts.join(", "))
}

fn ns_crossing() -> Outcome {
    let sweep = match ns_sweep(ParamName::C, 11.0, 11.5, 50, &near_ns(11.0)) {
        Ok(s) => s,
        Err(e) => return Outcome::new(false, e.to_string()),
    };
    if sweep.crossings.len() != 1 {
        return Outcome::new(false, format!("{} crossings", sweep.crossings.len()));
    }
    let b = &sweep.crossings[0];
    let pass = b.value > 11.1
        && b.value < 11.3
        && (b.q_at_crossing - 1.0).abs() <= 1e-9
        && b.p_at_crossing > -2.0
        && b.p_at_crossing < 2.0;
    Outcome::new(
        pass,
        format!("c*={:.9} p={:.6} |q-1|={:.1e}", b.value, b.p_at_crossing, (b.q_at_crossing - 1.0).abs()),
    )
}

fn trajectory_verdicts() -> Outcome {
    let to_eminus = Verdict::ConvergedTo(FixedPointLabel::Eminus);
    let long = SimSettings::default();
    let short = SimSettings { max_steps: 10_000, ..SimSettings::default() };
    let cases = [
        ("stable_ii (0.04,0.1)", stable_ii(), State::new(0.04, 0.1), long, to_eminus),
        ("stable_ii (0.4,0.8)", stable_ii(), State::new(0.4, 0.8), long, to_eminus),
        ("stable_iii (0.4,1.6)", stable_iii(), State::new(0.4, 1.6), long, to_eminus),
        ("stable_iii (0.4,4)", stable_iii(), State::new(0.4, 4.0), long, to_eminus),
        ("near_ns c=11.3 (0.3,4)", near_ns(11.3), State::new(0.3, 4.0), long, to_eminus),
        ("near_ns c=11.1 (0.36,4.3)", near_ns(11.1), State::new(0.36, 4.3), short, Verdict::InvariantCurve),
        ("near_ns c=11.1 (0.4,5)", near_ns(11.1), State::new(0.4, 5.0), short, Verdict::InvariantCurve),
    ];
    let mut misses = Vec::new();
    let mut steps = Vec::new();
    for (name, p, s0, settings, want) in cases {
        let run = simulate(s0, &p, &settings).unwrap();
        if run.verdict != want {
            misses.push(format!("{name}: {} after {}", run.verdict, run.steps_used));
        }
        steps.push(run.steps_used.to_string());
    }
    let pass = misses.is_empty();
    let detail = if pass { format!("7 verdicts as expected, steps {}", steps.join("/")) } else { misses.join("; ") };
    Outcome::new(pass, detail)
}

fn basin_through_saddle() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (case, p, u_plus, v_plus) in [("bistable_ii", bistable_ii(), 0.885078, 0.521718), ("bistable_iii", bistable_iii(), 0.913894, 0.723753)] {
        match basin_boundary(&[u_plus], &p, 1e-6, &SimSettings::default()) {
            Ok(b) if b.samples.len() == 1 => {
                let v = b.samples[0].v_star;
                pass &= (v - v_plus).abs() <= 0.05;
                parts.push(format!("{case} v*={v:.5} vs {v_plus}"));
            }
            Ok(b) => {
                pass = false;
                parts.push(format!("{case}: {}", b.notes.join(", ")));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{case}: {e}"));
            }
        }
    }
    Outcome::new(pass, parts.join(", "))
}

fn invariance_suite() -> Outcome {
    const SAMPLES: usize = 10_000;
    const DRAWS: usize = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    let mut tally = Vec::new();

    // parameter draws satisfying each set's hypotheses
    let mut check = |region: RegionId, draw: &mut dyn FnMut(&mut ChaCha8Rng) -> Params, rng: &mut ChaCha8Rng| {
        let (mut sets, mut bad, mut worst) = (0, 0, None);
        let mut tries = 0;
        while sets < DRAWS && tries < 1_000_000 {
            tries += 1;
            let p = draw(rng);
            if !invariance_hypotheses(region, &p).unwrap().all_hold() {
                continue;
            }
            let rep = verify_invariance(region, &p, SAMPLES, sets as u64).unwrap();
            if !rep.violations.is_empty() {
                bad += 1;
                worst.get_or_insert((p, rep.violations[0]));
            }
            sets += 1;
        }
        tally.push(format!("{region} {sets}x{SAMPLES}"));
        if sets < DRAWS {
            failures.push(format!("{region}: only {sets} admissible draws"));
        }
        if let Some((p, v)) = worst {
            failures.push(format!(
                "{region}: {bad}/{sets} draws violated, e.g. c={:.3} {:?} -> {:?}",
                p.c(),
                (v.start.u, v.start.v),
                v.image.map(|s| (s.u, s.v))
            ));
        }
    };

    let any = |h: u8| {
        move |rng: &mut ChaCha8Rng| {
            params(h, rng.gen_range(0.05..6.0), rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0), rng.gen_range(0.05..6.0))
        }
    };
    check(RegionId::M1, &mut any(1), &mut rng);
    check(RegionId::M2, &mut any(1), &mut rng);
    check(RegionId::M3, &mut any(1), &mut rng);
    let mut small_c = |rng: &mut ChaCha8Rng| {
        params(1, rng.gen_range(0.05..3.0), rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0), rng.gen_range(0.01..0.5))
    };
    check(RegionId::M4, &mut small_c, &mut rng);
    let mut type_iii = |rng: &mut ChaCha8Rng| {
        let r = rng.gen_range(0.02..0.98);
        params(2, rng.gen_range(0.05..8.0), r, rng.gen_range(0.01..(1.0 - r)), rng.gen_range(0.05..6.75))
    };
    check(RegionId::N, &mut type_iii, &mut rng);

    // a point of M4 that leaves it when c > 1/2
    let p = params(1, 1.71, 0.25, 0.25, 20.0);
    let s = State::new(0.15, 6.0);
    let img = apply_map(s, &p).unwrap();
    if !(membership(s, RegionId::M4, &p).unwrap() && !membership(img, RegionId::M4, &p).unwrap()) {
        failures.push(format!("(0.15,6) -> ({:.3},{:.3}) did not leave M4", img.u, img.v));
    }

    let pass = failures.is_empty();
    let detail = if pass {
        format!("{}; (0.15,6) -> ({:.2},{:.2}) leaves M4", tally.join(", "), img.u, img.v)
    } else {
        failures.join("; ")
    };
    Outcome::new(pass, detail)
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut draws, mut compared, mut excluded, mut mismatches) = (0, 0, 0, Vec::new());
    while draws < 1000 {
        let p = common::random_params(&mut rng, 1 + (draws % 2) as u8);
        let fps = positive_fixed_points(&p);
        if fps.is_empty() {
            continue;
        }
        draws += 1;
        for fp in fps {
            let closed = classify(&fp, &p).unwrap().class;
            let numeric = class_from_moduli(eigen_moduli(fd_jacobian(fp.state, &p, 1e-6)), 1e-8);
            let exact = class_from_moduli(eigen_moduli(map_jacobian(fp.state, &p)), 1e-8);
            match (numeric, exact) {
                (Some(n), Some(_)) => {
                    compared += 1;
                    if n != closed {
                        mismatches.push(format!("{p:?} {}: {closed} vs {n}", fp.label));
                    }
                }
                _ => excluded += 1,
            }
        }
    }
    let pass = mismatches.is_empty();
    let detail = if pass {
        format!("{compared}/{compared} agree, {excluded} near class boundaries excluded")
    } else {
        format!("{} mismatches, first: {}", mismatches.len(), mismatches[0])
    };
    Outcome::new(pass, detail)
}

fn residual_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let (mut worst_fixed, mut worst_level, mut pairs) = (0.0f64, 0.0f64, 0);
    let mut order_broken = None;
    for i in 0..10_000 {
        let p = common::random_params(&mut rng, 1 + (i % 2) as u8);
        for fp in all_fixed_points(&p) {
            worst_fixed = worst_fixed.max(apply_map(fp.state, &p).unwrap().dist_inf(&fp.state));
        }
        let pos = positive_fixed_points(&p);
        for fp in &pos {
            worst_level = worst_level.max((psi_oracle(fp.state.u, &p) - p.beta()).abs());
        }
        if pos.len() == 2 {
            pairs += 1;
            let ub = ubar(&p);
            if !(pos[0].state.u < ub && ub < pos[1].state.u) {
                order_broken.get_or_insert(p);
            }
        }
    }
    let pass = worst_fixed <= 1e-10 && worst_level <= 1e-9 && order_broken.is_none();
    let mut detail = format!("max |V(E)-E| {worst_fixed:.1e}, max |psi-beta| {worst_level:.1e}, {pairs} pairs");
    if let Some(p) = order_broken {
        detail += &format!(", u- < ubar < u+ broken at {p:?}");
    }
    Outcome::new(pass, detail)
}

fn logistic_edge() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, p) in [("h=1", stable_ii()), ("h=2", stable_iii())] {
        let rep = logistic_edge_checks(&p).unwrap();
        let v_ok = rep.v_axis.as_ref().map_or(false, |v| v.monotone && v.max_final <= 1e-9);
        pass &= rep.period_two_discriminant < 0.0 && rep.converged(1e-9) && rep.monotone_below_one && v_ok;
        parts.push(format!(
            "{name}: disc {} max|f^n-1| {:.1e} v-axis {}",
            rep.period_two_discriminant,
            rep.max_final_error,
            if v_ok { "decays" } else { "does not decay" }
        ));
    }
    Outcome::new(pass, parts.join(", "))
}

fn divergence() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for r in [0.1, 0.5, 0.9] {
        let p = params(2, 3.0, r, 0.25, 2.0);
        let run = simulate(State::new(-0.1, 1.0), &p, &SimSettings::default()).unwrap();
        let last = run.last();
        pass &= run.verdict == Verdict::Diverged && last.u < 0.0 && last.v > 0.0;
        parts.push(format!("r={r}: {} at n={} u={:.1e} v={:.1e}", run.verdict, run.steps_used, last.u, last.v));
    }
    Outcome::new(pass, parts.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("fixed-point golden values", fixed_point_golden_values),
        ("stability golden values", stability_golden_values),
        ("Neimark-Sacker crossing", ns_crossing),
        ("trajectory verdicts", trajectory_verdicts),
        ("basin boundary through the saddle", basin_through_saddle),
        ("invariant sets", invariance_suite),
        ("closed form vs finite-difference Jacobian", oracle_equivalence),
        ("fixed-point residuals", residual_suite),
        ("logistic edge", logistic_edge),
        ("divergence from u < 0", divergence),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let secs = start.elapsed().as_secs_f64();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{name}]: {status} ({}; {secs:.2} s)", i + 1, out.detail);
        failed += usize::from(!out.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
