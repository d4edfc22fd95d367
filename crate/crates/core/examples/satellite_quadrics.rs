// Every type of satellite quadric from one set of four satellites, by
// varying the pseudoranges.

use pseudoquad::model::Scenario;
use pseudoquad::quadrics::classify_satellite_quadric;
use pseudoquad::solver::{filter_inequalities, solve_squared};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let positions: [&[f64]; 4] = [&[-1., 0., 0.], &[1., 0., 0.], &[0., 1., 0.], &[3., 0., 4.]];
    let r2 = 2f64.sqrt();
    let rows = [
        [0.0, r2, r2 / 2.0, 4.0 * r2],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 2.0],
        [0.0, 0.0, 0.0, 4.0],
        [0.0, 0.0, 0.0, 13.0 / 3.0],
        [0.0, 0.0, 0.0, 2.0 * 5f64.sqrt()],
        [0.0, 0.0, 0.0, 5.0],
        [0.0, 0.0, 0.0, 6.0],
    ];
    println!(
        "{:<40} {:<24} {:>6} {:>9}",
        "t", "Q_sat'", "|X|", "feasible"
    );
    for t in rows {
        let sc = Scenario::from_slices(&positions, &t)?;
        let sol = solve_squared(&sc)?;
        let locus = classify_satellite_quadric(&sol);
        let feasible = filter_inequalities(&sol, &sc);
        let count = sol.set.count().as_number().ok_or("finite set expected")?;
        let fcount = feasible.count().as_number().ok_or("finite set expected")?;
        println!(
            "{:<40} {:<24} {count:>6} {fcount:>9}",
            format!("{t:.4?}"),
            format!("{:?}", locus.descriptor.kind)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
