// Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
// harness so the lines are always printed; exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use pseudoquad::constraints::{feasible_candidates, intersect_with_affine, AffineConstraint};
use pseudoquad::model::{CountHint, QuadricKind, Scenario};
use pseudoquad::numerics::Vector;
use pseudoquad::quadrics::{classify, classify_satellite_quadric, sample_points};
use pseudoquad::simulate::{
    run_trials, NoiseModel, SearchRegion, TrialConfig, DEFAULT_HALF_WIDTH, DEFAULT_RESOLUTION,
};
use pseudoquad::solver::{
    filter_inequalities, is_collinear_degenerate, residual_htilde, solve_squared,
    two_satellite_closed_form,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator for one criterion; `PSEUDOQUAD_ACCEPTANCE_SEED` shifts all
/// seeds to rerun the randomized suites on fresh draws.
fn rng(k: u64) -> ChaCha8Rng {
    let offset = std::env::var("PSEUDOQUAD_ACCEPTANCE_SEED")
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .unwrap_or(0);
    ChaCha8Rng::seed_from_u64(k + 1000 * offset)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("satellite quadric table", table),
        ("cone example", cone),
        ("two-satellite closed form", two_satellites),
        ("duality", duality),
        ("inequality filtering", inequalities),
        ("redundancy and consistency", redundancy),
        ("ocean experiment", ocean),
        ("robot vacuum", robot),
        ("equivariance", equivariance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {} {}: {} ({}; {:.2?})",
            i + 1,
            name,
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn table() -> Outcome {
    use QuadricKind::*;
    let positions: [&[f64]; 4] = [&[-1., 0., 0.], &[1., 0., 0.], &[0., 1., 0.], &[3., 0., 4.]];
    let r2 = 2f64.sqrt();
    let rows = [
        ([0.0, r2, r2 / 2.0, 4.0 * r2], Cylinder, 0, 0),
        ([0.0, 0.0, 0.0, 0.0], Sphere, 2, 1),
        ([0.0, 0.0, 0.0, 2.0], ProlateSpheroid, 2, 1),
        ([0.0, 0.0, 0.0, 4.0], ParaboloidOfRevolution, 1, 1),
        ([0.0, 0.0, 0.0, 13.0 / 3.0], HyperboloidTwoSheets, 2, 2),
        ([0.0, 0.0, 0.0, 2.0 * 5f64.sqrt()], Cone, 1, 1),
        ([0.0, 0.0, 0.0, 5.0], HyperboloidOneSheet, 0, 0),
        ([0.0, 0.0, 0.0, 6.0], HyperboloidTwoSheets, 2, 0),
    ];
    let start = Instant::now();
    let mut matches = 0;
    let mut misses = Vec::new();
    for (t, kind, count, feasible) in rows {
        let sc = Scenario::from_slices(&positions, &t).unwrap();
        let sol = solve_squared(&sc).unwrap();
        let got_kind = classify_satellite_quadric(&sol).descriptor.kind;
        let got_count = sol.set.count().as_number();
        let got_feasible = filter_inequalities(&sol, &sc).count().as_number();
        if got_kind == kind && got_count == Some(count) && got_feasible == Some(feasible) {
            matches += 1;
        } else {
            misses.push(format!(
                "t4={:.4}: {got_kind:?} {got_count:?} {got_feasible:?}",
                t[3]
            ));
        }
    }
    let elapsed = start.elapsed();
    let pass = matches == 8 && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!("{matches}/8 rows match in {elapsed:.2?} {misses:?}"),
    )
}

fn cone() -> Outcome {
    let sc = Scenario::from_slices(
        &[&[1., 0., 0.], &[2., 0., 0.], &[0., 1., 0.]],
        &[1., 2., 1.],
    )
    .unwrap();
    let sol = solve_squared(&sc).unwrap();
    let f = &sol.frame;
    let tol = 1e-12;
    let mut errs = Vec::new();
    let u = f.u().cloned().unwrap_or_else(|| Vector::zeros(3));
    let dev = |a: &Vector, b: &[f64]| (a - Vector::from_column_slice(b)).amax();
    let frame_dev = [
        dev(&u, &[1., 1., 0.]),
        f.alpha().map_or(f64::INFINITY, f64::abs),
        dev(f.v(), &[0., 0., 0.]),
        f.beta().abs(),
        if f.w().len() == 1 {
            dev(&f.w()[0], &[0., 0., 1.])
        } else {
            f64::INFINITY
        },
        if f.gamma().len() == 1 {
            f.gamma()[0].abs()
        } else {
            f64::INFINITY
        },
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if frame_dev > tol {
        errs.push(format!("frame deviation {frame_dev:.2e}"));
    }
    match sol.set.points() {
        Some(p) if p.len() == 1 && p[0].0.abs() <= tol && p[0].1.amax() <= tol => {}
        other => errs.push(format!("solution set {other:?}")),
    }
    let mut rng = rng(2);
    let alpha = f.alpha().unwrap_or(0.0);
    let h = |s: &Vector| residual_htilde(f, u.dot(s) - alpha, s).htilde;
    let h0 = h(&Vector::zeros(3));
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s = uniform_point(&mut rng, 3, 2.0);
        let quad = (h(&s) + h(&-&s)) / 2.0 - h0;
        worst = worst.max((quad - (s[2] * s[2] - 2.0 * s[0] * s[1])).abs());
    }
    if worst > tol {
        errs.push(format!("quadratic part deviation {worst:.2e}"));
    }
    outcome(
        errs.is_empty(),
        format!("frame dev {frame_dev:.1e}, h quadratic dev {worst:.1e} {errs:?}"),
    )
}

fn two_satellites() -> Outcome {
    let mut rng = rng(3);
    let (mut done, mut failures, mut worst) = (0, 0, 0.0f64);
    while done < 1000 {
        let n = rng.random_range(2..=4);
        let s1 = uniform_point(&mut rng, n, 5.0);
        let s2 = uniform_point(&mut rng, n, 5.0);
        let (t1, t2): (f64, f64) = (rng.random_range(0.0..10.0), rng.random_range(0.0..10.0));
        let d = (&s1 - &s2).norm();
        if d == 0.0 || ((t1 - t2).abs() / d - 1.0).abs() <= 1e-6 {
            continue;
        }
        done += 1;
        let sc = Scenario::new(vec![s1.clone(), s2.clone()], vec![t1, t2]).unwrap();
        let sol = solve_squared(&sc).unwrap();
        let scale = sc.scale();
        let closed = two_satellite_closed_form(&s1, t1, &s2, t2).unwrap();
        for (b, x) in &closed.solutions {
            let residual = squared_residual(&sc, *b, x) / (scale * scale);
            let distance = distance_to_set(&sol.set, *b, x) / scale;
            worst = worst.max(residual).max(distance);
            if residual > 1e-9 || distance > 1e-9 {
                failures += 1;
            }
        }
    }
    outcome(
        failures == 0,
        format!("{done} scenarios, {failures} non-members, worst relative residual {worst:.1e}"),
    )
}

fn duality() -> Outcome {
    let mut rng = rng(4);
    let limit = 1e-8;
    let (mut done, mut tries) = (0, 0);
    let mut failures: Vec<String> = Vec::new();
    let mut worst = std::collections::BTreeMap::<&str, f64>::new();
    while done < 500 && tries < 100_000 {
        tries += 1;
        let n = rng.random_range(2..=5);
        let m = rng.random_range(2..=n + 1);
        let sc = if rng.random_bool(0.5) {
            consistent_scenario(&mut rng, n, m)
        } else {
            random_scenario(&mut rng, n, m)
        };
        let Some(sc) = sc else { continue };
        let t0 = sc.pseudoranges[0];
        if sc.pseudoranges.iter().all(|t| *t == t0) || is_collinear_degenerate(&sc) {
            continue;
        }
        let Ok(sol) = solve_squared(&sc) else {
            continue;
        };
        if !matches!(sol.set.count(), CountHint::Two | CountHint::Infinite) {
            continue;
        }
        done += 1;
        let (qsol, qsat, r) = classify(&sol);
        let checks = [
            ("kinds", r.kinds_paired.applicable && r.kinds_paired.ok, 0.0),
            ("axis", r.axis_match.applicable, r.axis_match.deviation),
            (
                "foci",
                r.foci_vertex_swap.applicable,
                r.foci_vertex_swap.deviation,
            ),
            (
                "eccentricity",
                r.eccentricity_product.is_some(),
                r.eccentricity_product
                    .map_or(f64::INFINITY, |p| (p - 1.0).abs()),
            ),
            (
                "spans",
                r.spans_perpendicular.applicable,
                r.spans_perpendicular.deviation,
            ),
            (
                "intersection",
                r.spans_intersection_is_axis.applicable,
                r.spans_intersection_is_axis.deviation,
            ),
            (
                "tangent",
                r.qsol_meets_asat_perpendicularly.applicable,
                r.qsol_meets_asat_perpendicularly.deviation,
            ),
        ];
        for (name, applicable, dev) in checks {
            let w = worst.entry(name).or_insert(0.0);
            *w = w.max(dev);
            if !applicable || dev > limit {
                failures.push(format!(
                    "{name} n={n} m={m} {:?}/{:?} dev {dev:.1e}",
                    qsol.kind, qsat.descriptor.kind
                ));
            }
        }
    }
    let worst: Vec<String> = worst.iter().map(|(k, v)| format!("{k} {v:.1e}")).collect();
    let generic = format!(
        "{done} generic scenarios, worst deviations [{}]",
        worst.join(", ")
    );

    let (mut ddone, mut dfail) = (0, Vec::new());
    while ddone < 200 {
        let n = rng.random_range(2..=5);
        let m = rng.random_range(2..=n + 1);
        let sats: Vec<Vector> = (0..m).map(|_| uniform_point(&mut rng, n, 5.0)).collect();
        let t = rng.random_range(0.0..10.0);
        let Ok(sc) = Scenario::new(sats, vec![t; m]) else {
            continue;
        };
        let Ok(sol) = solve_squared(&sc) else {
            continue;
        };
        if sol.set.is_empty() {
            continue;
        }
        ddone += 1;
        let (qsol, qsat, r) = classify(&sol);
        let q = &qsat.descriptor;
        use QuadricKind::*;
        let sat_sphere = q.kind == Sphere || q.family == Some(Sphere);
        let sol_affine = matches!(qsol.kind, AffineSubspace | SinglePoint | FullSpace | Line);
        let center_dev = q.center.as_ref().map_or(f64::INFINITY, |c| {
            qsol.ambient.distance(c).max(q.ambient.distance(c)) / sc.scale()
        });
        if !(sat_sphere && sol_affine && center_dev <= limit && r.all_ok()) {
            dfail.push(format!(
                "n={n} m={m} {:?}/{:?} center dev {center_dev:.1e}",
                qsol.kind, q.kind
            ));
        }
    }
    let pass = done == 500 && failures.is_empty() && dfail.is_empty();
    failures.truncate(5);
    dfail.truncate(5);
    outcome(
        pass,
        format!("{generic}; {ddone} equal-time scenarios; failures {failures:?} {dfail:?}"),
    )
}

fn inequalities() -> Outcome {
    let mut rng = rng(5);
    let (mut done, mut points, mut disagree) = (0, 0usize, 0usize);
    let mut examples = Vec::new();
    while done < 500 {
        let n = rng.random_range(2..=4);
        let m = rng.random_range(2..=n + 1);
        let sc = if rng.random_bool(0.5) {
            consistent_scenario(&mut rng, n, m)
        } else {
            random_scenario(&mut rng, n, m)
        };
        let Some(sc) = sc else { continue };
        let Ok(sol) = solve_squared(&sc) else {
            continue;
        };
        if sol.set.is_empty() {
            continue;
        }
        done += 1;
        let feasible = filter_inequalities(&sol, &sc);
        let eps = sc.tol.geom_abs * sc.scale();
        for (b, x) in sol.set.sample(200, &mut rng) {
            points += 1;
            let brute = sc.pseudoranges.iter().all(|t| t - b >= -eps);
            if brute != feasible.admits(b, &x) {
                disagree += 1;
                if examples.len() < 3 {
                    examples.push(format!(
                        "n={n} m={m} {:?} slack {:.2e}",
                        feasible.feasible,
                        sc.min_slack(b)
                    ));
                }
            }
        }
    }
    // Pseudoranges differing by more than the satellite distance.
    let mut no_solution_ok = true;
    for (s2, t2) in [([4.0, 0.0], 5.0), ([1.0, 1.0], 3.0)] {
        let sc = Scenario::from_slices(&[&[0., 0.], &s2], &[0.0, t2]).unwrap();
        let sol = solve_squared(&sc).unwrap();
        let f = filter_inequalities(&sol, &sc);
        no_solution_ok &= f.count() == CountHint::Zero;
    }
    outcome(
        disagree == 0 && no_solution_ok,
        format!(
            "{done} scenarios, {points} sampled points, {disagree} disagreements, two-satellite no-solution case {} {examples:?}",
            if no_solution_ok { "empty" } else { "NOT empty" }
        ),
    )
}

fn redundancy() -> Outcome {
    let mut rng = rng(6);
    let (mut done, mut tries) = (0, 0);
    let mut worst = 0.0f64;
    let (mut changed, mut not_empty) = (Vec::new(), Vec::new());
    while done < 200 && tries < 100_000 {
        tries += 1;
        let n = rng.random_range(2..=4);
        // Two satellites leave only themselves on the satellite locus.
        let m = rng.random_range(3..=n + 1);
        let sc = if rng.random_bool(0.5) {
            consistent_scenario(&mut rng, n, m)
        } else {
            random_scenario(&mut rng, n, m)
        };
        let Some(sc) = sc else { continue };
        let Ok(sol) = solve_squared(&sc) else {
            continue;
        };
        if !matches!(sol.set.count(), CountHint::Two | CountHint::Infinite)
            || sol.diagnostics.near_degenerate
        {
            continue;
        }
        let locus = classify_satellite_quadric(&sol);
        if !locus.complete {
            continue;
        }
        let Ok(samples) = sample_points(&locus.descriptor, 1, rng.random()) else {
            continue;
        };
        let s = samples[0].point.clone();
        let Some(&t) = locus.time_map.times(&s).first() else {
            continue;
        };
        if s.norm() > 50.0 || !residual_htilde(&sol.frame, t, &s).is_consistent(sc.scale(), &sc.tol)
        {
            continue;
        }
        let mut sats = sc.satellites.clone();
        sats.push(s);
        let mut ts = sc.pseudoranges.clone();
        ts.push(t);
        let Ok(extended) = Scenario::new(sats.clone(), ts.clone()) else {
            continue;
        };
        let Ok(ext) = solve_squared(&extended) else {
            continue;
        };
        done += 1;
        let sa = sol.set.sample(50, &mut rng);
        let sb = ext.set.sample(50, &mut rng);
        let dev = if ext.set.is_empty() || ext.set.count() != sol.set.count() {
            f64::INFINITY
        } else {
            sampled_hausdorff(&sol.set, &ext.set, &sa, &sb)
        };
        worst = worst.max(dev);
        if dev > 1e-8 {
            changed.push(format!(
                "n={n} m={m} {:?}->{:?} dev {dev:.1e}",
                sol.set.count(),
                ext.set.count()
            ));
        }
        ts[m] += 1e-3;
        let perturbed = Scenario::new(sats, ts)
            .ok()
            .and_then(|p| solve_squared(&p).ok());
        if !perturbed.is_some_and(|p| p.set.is_empty()) {
            not_empty.push(format!("n={n} m={m}"));
        }
    }
    let pass = done == 200 && changed.is_empty() && not_empty.is_empty();
    let (c, e) = (changed.len(), not_empty.len());
    changed.truncate(3);
    not_empty.truncate(3);
    outcome(
        pass,
        format!("{done} scenarios, worst deviation {worst:.1e}, {c} changed {changed:?}, {e} perturbed not empty {not_empty:?}"),
    )
}

fn ocean_config(third: [f64; 3], sigma: f64) -> TrialConfig {
    let x_true = Vector::from_vec(vec![0.75, 5.0, 0.0]);
    TrialConfig {
        receivers: [[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], third]
            .iter()
            .map(|r| Vector::from_column_slice(r))
            .collect(),
        region: SearchRegion::around(
            AffineConstraint::horizontal(3, 0.0),
            &x_true,
            DEFAULT_HALF_WIDTH,
            DEFAULT_RESOLUTION,
        ),
        x_true,
        b_true: 0.0,
        noise: NoiseModel { sigma, seed: 20240 },
    }
}

fn ocean() -> Outcome {
    let start = Instant::now();
    let trials = 1000;
    // Coordinates in kilometres; the reference errors are in metres.
    let mean_m = |third, sigma| {
        run_trials(&ocean_config(third, sigma), trials)
            .unwrap()
            .mean_error
            * 1000.0
    };
    let boats = [0.0, 1.0, 0.0];
    let aircraft = [0.0, 1.0, 10.0];
    let (b1, a1) = (mean_m(boats, 0.01), mean_m(aircraft, 0.01));
    let (b2, a2) = (mean_m(boats, 0.1), mean_m(aircraft, 0.1));
    let within = |x: f64, r: f64| x >= r / 5.0 && x <= r * 5.0;
    let checks = [
        ("order at sigma 0.01", b1 < a1),
        ("order at sigma 0.1", b2 < a2),
        ("three boats near 0.31 m", within(b1, 0.31)),
        ("aircraft near 12.68 m", within(a1, 12.68)),
        ("runtime", start.elapsed() <= Duration::from_secs(300)),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(
        failed.is_empty(),
        format!(
            "mean error boats/aircraft: {b1:.2} m / {a1:.2} m at sigma 0.01, {b2:.2} m / {a2:.2} m at sigma 0.1; failed {failed:?}"
        ),
    )
}

fn robot() -> Outcome {
    let floor = AffineConstraint::horizontal(3, 0.0);
    let mut errs = Vec::new();
    let ceiling = |xy: [[f64; 2]; 3]| -> Vec<Vector> {
        xy.iter()
            .map(|p| Vector::from_vec(vec![p[0], p[1], 3.0]))
            .collect()
    };

    // Below the circumcenter.
    let sats = ceiling([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0]]);
    let x = Vector::from_vec(vec![2.0, 2.0, 0.0]);
    let sc = Scenario::new(sats.clone(), pseudoranges(&sats, &x, 0.5)).unwrap();
    let sol = solve_squared(&sc).unwrap();
    let hit = intersect_with_affine(&sol, &sc, &floor).unwrap();
    let below = hit.candidates.len() == 1 && (&hit.candidates[0].x - &x).amax() <= 1e-9;
    if !below {
        errs.push(format!(
            "below circumcenter: {:?}",
            hit.candidates
                .iter()
                .map(|c| c.x.as_slice().to_vec())
                .collect::<Vec<_>>()
        ));
    }

    // Parabolic: t_i = <u, s_i> - alpha with |u| = 1.
    let u = [0.6, 0.8];
    let t = vec![10.0, 10.0 + 4.0 * u[0], 10.0 + 4.0 * u[1]];
    let sc = Scenario::new(sats, t).unwrap();
    let sol = solve_squared(&sc).unwrap();
    let e = sol.conic().map(|p| p.e);
    let hit = intersect_with_affine(&sol, &sc, &floor).unwrap();
    if hit.candidates.len() != 1 || e.is_none_or(|e| (e - 1.0).abs() > 1e-12) {
        errs.push(format!(
            "parabolic: e {e:?}, {} candidates",
            hit.candidates.len()
        ));
    }

    // Generic placements.
    let mut rng = rng(8);
    let (mut elliptic, mut hyperbolic, mut over_two, mut not_single, mut lost) = (0, 0, 0, 0, 0);
    for _ in 0..500 {
        let xy = [0, 1, 2].map(|_| [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)]);
        let sats = ceiling(xy);
        let x = Vector::from_vec(vec![
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            0.0,
        ]);
        let Ok(sc) = Scenario::new(
            sats.clone(),
            pseudoranges(&sats, &x, rng.random_range(-1.0..1.0)),
        ) else {
            continue;
        };
        let Ok(sol) = solve_squared(&sc) else {
            continue;
        };
        let Some(e) = sol.conic().map(|p| p.e) else {
            continue;
        };
        if (e - 1.0).abs() < 1e-6 || e < 1e-6 {
            continue;
        }
        let hit = intersect_with_affine(&sol, &sc, &floor).unwrap();
        if hit.candidates.len() > 2 {
            over_two += 1;
        }
        let feasible = feasible_candidates(&hit.candidates, &sc, &sc.tol);
        if !feasible.iter().any(|c| (&c.x - &x).amax() <= 1e-6) {
            lost += 1;
        }
        if e < 1.0 {
            elliptic += 1;
            if feasible.len() != 1 {
                not_single += 1;
            }
        } else {
            hyperbolic += 1;
        }
    }
    if over_two + not_single + lost > 0 {
        errs.push(format!(
            "{over_two} with >2 candidates, {not_single} elliptic not single, {lost} missing truth"
        ));
    }
    outcome(
        errs.is_empty(),
        format!("below circumcenter unique, parabolic unique, {elliptic} elliptic / {hyperbolic} hyperbolic placements {errs:?}"),
    )
}

fn equivariance() -> Outcome {
    let mut rng = rng(9);
    let (mut done, mut worst, mut ill_conditioned) = (0, 0.0f64, 0);
    let mut failures = Vec::new();
    while done < 300 {
        let n = rng.random_range(2..=4);
        let m = rng.random_range(2..=n + 2);
        let sc = if rng.random_bool(0.6) {
            consistent_scenario(&mut rng, n, m)
        } else {
            random_scenario(&mut rng, n, m)
        };
        let Some(sc) = sc else { continue };
        let Ok(sol) = solve_squared(&sc) else {
            continue;
        };
        if sol.diagnostics.near_degenerate {
            continue;
        }
        // Rounding of the transformed inputs alone moves the solutions of an
        // ill-conditioned scenario by more than the tolerance. Near-parabolic
        // two-sheet sets have their far sheet about 1/(e - 1) scales out.
        let samples = sol.set.sample(20, &mut rng);
        let far = samples
            .iter()
            .any(|(b, x)| b.abs().max(x.norm()) > 10.0 * sc.scale());
        if lifted_condition(&sc) > 1e3 || far {
            ill_conditioned += 1;
            continue;
        }
        done += 1;
        let rot = rotation(&mut rng, n);
        let shift = uniform_point(&mut rng, n, 5.0);
        let dt = rng.random_range(-3.0..3.0);
        let identity = nalgebra::DMatrix::identity(n, n);
        let zero = Vector::zeros(n);
        let transforms = [
            ("translation", &identity, &shift, 0.0),
            ("rotation", &rot, &zero, 0.0),
            ("time shift", &identity, &zero, dt),
            ("combined", &rot, &shift, dt),
        ];
        for (name, r, c, dt) in transforms {
            let sats: Vec<Vector> = sc.satellites.iter().map(|s| r * s + c).collect();
            let ts: Vec<f64> = sc.pseudoranges.iter().map(|t| t + dt).collect();
            let moved = Scenario::new(sats, ts).unwrap();
            let msol = solve_squared(&moved).unwrap();
            let scale = moved.scale();
            if msol.set.count() != sol.set.count() {
                failures.push(format!(
                    "{name}: count {:?} -> {:?}",
                    sol.set.count(),
                    msol.set.count()
                ));
                continue;
            }
            let forward = samples
                .iter()
                .map(|(b, x)| distance_to_set(&msol.set, b + dt, &(r * x + c)))
                .fold(0.0, f64::max);
            let back = msol
                .set
                .sample(20, &mut rng)
                .iter()
                .map(|(b, x)| distance_to_set(&sol.set, b - dt, &(r.transpose() * (x - c))))
                .fold(0.0, f64::max);
            let dev = forward.max(back) / scale;
            worst = worst.max(dev);
            if dev > 1e-9 {
                failures.push(format!(
                    "{name}: n={n} m={m} {:?} dev {dev:.1e}",
                    sol.set.count()
                ));
            }
        }
    }
    let count = failures.len();
    failures.truncate(5);
    outcome(
        count == 0,
        format!(
            "{done} scenarios x 4 transforms ({ill_conditioned} ill-conditioned draws skipped), worst relative deviation {worst:.1e}, {count} failures {failures:?}"
        ),
    )
}
