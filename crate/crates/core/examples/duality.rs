// Quadric of solutions against quadric of satellites: foci and vertices
// swap, eccentricities are reciprocal and the ambient spaces meet in the
// common axis.

use pseudoquad::model::Scenario;
use pseudoquad::quadrics::classify;
use pseudoquad::solver::solve_squared;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Three satellites in space: a hyperbola of solutions in one plane and
    // an ellipse of satellites in the perpendicular plane through the axis.
    let sc = Scenario::from_slices(
        &[&[0., 0., 0.], &[4., 0., 0.], &[1., 3., 0.]],
        &[1., 3., 2.],
    )?;
    let sol = solve_squared(&sc)?;
    let (qsol, qsat, report) = classify(&sol);
    println!(
        "Q_sol {:?}: vertices {:?}",
        qsol.kind,
        qsol.vertices
            .iter()
            .map(|v| v.as_slice().to_vec())
            .collect::<Vec<_>>()
    );
    println!(
        "        foci {:?}",
        qsol.foci
            .iter()
            .map(|v| v.as_slice().to_vec())
            .collect::<Vec<_>>()
    );
    println!(
        "Q_sat {:?}: vertices {:?}",
        qsat.descriptor.kind,
        qsat.descriptor
            .vertices
            .iter()
            .map(|v| v.as_slice().to_vec())
            .collect::<Vec<_>>()
    );
    println!(
        "        foci {:?}",
        qsat.descriptor
            .foci
            .iter()
            .map(|v| v.as_slice().to_vec())
            .collect::<Vec<_>>()
    );
    println!("eccentricity product: {:?}", report.eccentricity_product);
    println!("all checks pass: {}", report.all_ok());

    // Equal pseudoranges: a circle of satellites around the circumcenter,
    // paired with the line of solutions through it.
    let sc = Scenario::from_slices(
        &[&[1., 0., 0.], &[0., 1., 0.], &[-1., 0., 0.]],
        &[2., 2., 2.],
    )?;
    let sol = solve_squared(&sc)?;
    let (qsol, qsat, report) = classify(&sol);
    println!(
        "equal times: Q_sol {:?}, Q_sat {:?}, center {:?}, checks pass: {}",
        qsol.kind,
        qsat.descriptor.kind,
        qsat.descriptor
            .center
            .as_ref()
            .map(|c| c.as_slice().to_vec()),
        report.all_ok()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
