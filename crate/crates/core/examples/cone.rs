// Three satellites whose pseudoranges equal their distances to the origin.
//
// The only solution is the origin with zero bias, while the satellite
// residual is the cone `z3^2 - 2 z1 z2`.

use pseudoquad::model::Scenario;
use pseudoquad::numerics::Vector;
use pseudoquad::quadrics::classify;
use pseudoquad::solver::{residual_htilde, solve_squared};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sc = Scenario::from_slices(
        &[&[1., 0., 0.], &[2., 0., 0.], &[0., 1., 0.]],
        &[1., 2., 1.],
    )?;
    let sol = solve_squared(&sc)?;
    let frame = &sol.frame;
    println!(
        "u = {:?}, alpha = {:?}",
        frame.u().map(|u| u.as_slice().to_vec()),
        frame.alpha()
    );
    println!("v = {:?}, beta = {}", frame.v().as_slice(), frame.beta());
    println!(
        "w = {:?}, gamma = {:?}",
        frame
            .w()
            .iter()
            .map(|w| w.as_slice().to_vec())
            .collect::<Vec<_>>(),
        frame.gamma()
    );

    let points = sol.set.points().ok_or("expected a finite solution set")?;
    for (b, x) in &points {
        println!("solution: b = {b:.3e}, x = {:?}", x.as_slice());
    }
    assert_eq!(points.len(), 1);

    for z in [[1.0, 2.0, 3.0], [0.5, -1.0, 0.25]] {
        let s = Vector::from_column_slice(&z);
        let t = frame.u().map_or(0.0, |u| u.dot(&s)) - frame.alpha().unwrap_or(0.0);
        let h = residual_htilde(frame, t, &s).htilde;
        println!(
            "h({z:?}) = {h:.6} (z3^2 - 2 z1 z2 = {:.6})",
            z[2] * z[2] - 2.0 * z[0] * z[1]
        );
    }

    let (qsol, qsat, _) = classify(&sol);
    println!(
        "Q_sol: {:?}, Q_sat': {:?} (complete: {})",
        qsol.kind, qsat.descriptor.kind, qsat.complete
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
