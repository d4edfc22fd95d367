// A robot on the floor hears three ceiling emitters; the floor plane cuts
// the solution set down to at most two points.

use pseudoquad::constraints::{feasible_candidates, intersect_with_affine, AffineConstraint};
use pseudoquad::model::Scenario;
use pseudoquad::numerics::Vector;
use pseudoquad::solver::solve_squared;

fn locate(ceiling: &[Vector], robot: &Vector, bias: f64) -> Result<(), Box<dyn std::error::Error>> {
    let t: Vec<f64> = ceiling.iter().map(|s| (s - robot).norm() + bias).collect();
    let sc = Scenario::new(ceiling.to_vec(), t)?;
    let sol = solve_squared(&sc)?;
    let floor = AffineConstraint::horizontal(3, 0.0);
    let inter = intersect_with_affine(&sol, &sc, &floor)?;
    let feasible = feasible_candidates(&inter.candidates, &sc, &sc.tol);
    println!(
        "robot at {:?}: {} candidate(s), {} feasible",
        robot.as_slice(),
        inter.candidates.len(),
        feasible.len()
    );
    for c in &inter.candidates {
        println!(
            "  x = {:?}, b = {:.6}, feasible {}",
            c.x.as_slice(),
            c.b,
            c.feasible
        );
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ceiling: Vec<Vector> = [[0.0, 0.0, 3.0], [4.0, 0.0, 3.0], [0.0, 4.0, 3.0]]
        .iter()
        .map(|p| Vector::from_column_slice(p))
        .collect();
    // Directly below the circumcenter the location is unique.
    locate(&ceiling, &Vector::from_vec(vec![2.0, 2.0, 0.0]), 0.5)?;
    // Elsewhere there are two geometric candidates.
    locate(&ceiling, &Vector::from_vec(vec![1.0, 0.5, 0.0]), 0.5)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
