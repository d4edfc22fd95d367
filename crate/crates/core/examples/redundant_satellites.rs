// Extra satellites either lie on the satellite quadric of the first ones and
// change nothing, or do not and leave no solution.

use pseudoquad::model::Scenario;
use pseudoquad::numerics::Vector;
use pseudoquad::quadrics::{classify_satellite_quadric, sample_points};
use pseudoquad::solver::solve_squared;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = Vector::from_vec(vec![1.0, 2.0, 0.5]);
    let b = 0.3;
    let sats: Vec<Vector> = [
        [5.0, 0.0, 0.0],
        [0.0, 5.0, 1.0],
        [-3.0, 1.0, 4.0],
        [2.0, -4.0, -1.0],
    ]
    .iter()
    .map(|p| Vector::from_column_slice(p))
    .collect();
    let t: Vec<f64> = sats.iter().map(|s| (s - &x).norm() + b).collect();
    let base = Scenario::new(sats[..3].to_vec(), t[..3].to_vec())?;
    println!("three satellites: {:?}", solve_squared(&base)?.set.count());

    let full = Scenario::new(sats.clone(), t.clone())?;
    let sol = solve_squared(&full)?;
    println!(
        "four satellites: {:?}, rank(A) = {}",
        sol.set.count(),
        sol.diagnostics.rank_a
    );
    for (bb, xx) in sol.set.points().unwrap_or_default() {
        println!("  b = {bb:.6}, x = {:?}", xx.as_slice());
    }

    // A fifth satellite on the satellite quadric, with its time from the
    // time map, agrees with both solutions and is redundant.
    let locus = classify_satellite_quadric(&sol);
    let s5 = sample_points(&locus.descriptor, 1, 11)?.remove(0).point;
    let t5 = locus.time_map.times(&s5)[0];
    let mut sats5 = sats.clone();
    sats5.push(s5);
    let mut t5s = t.clone();
    t5s.push(t5);
    let sol = solve_squared(&Scenario::new(sats5.clone(), t5s.clone())?)?;
    println!("five consistent satellites: {:?}", sol.set.count());

    t5s[4] += 1e-3;
    let sol = solve_squared(&Scenario::new(sats5, t5s)?)?;
    println!("fifth pseudorange off by 1e-3: {:?}", sol.set.count());
    for check in &sol.diagnostics.leftover {
        println!(
            "  satellite {} residual {:.3e} consistent {}",
            check.index,
            check.residual.max(),
            check.consistent
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
