// Two satellites: the closed form against the general solver.

use pseudoquad::model::Scenario;
use pseudoquad::numerics::Vector;
use pseudoquad::solver::{filter_inequalities, solve_squared, two_satellite_closed_form};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s1 = Vector::from_vec(vec![0.0, 0.0, 0.0]);
    let s2 = Vector::from_vec(vec![3.0, 1.0, 0.0]);
    let (t1, t2) = (2.0, 1.0);
    let closed = two_satellite_closed_form(&s1, t1, &s2, t2)?;
    let sc = Scenario::new(vec![s1.clone(), s2.clone()], vec![t1, t2])?;
    let sol = solve_squared(&sc)?;
    let feasible = filter_inequalities(&sol, &sc);
    println!("u = {:?}", closed.u.as_slice());
    for (b, x) in &closed.solutions {
        println!(
            "closed form: b = {b:.6}, x = {:?}, squared residual {:.1e}, feasible {}",
            x.as_slice(),
            sc.squared_residual(*b, x),
            feasible.admits(*b, x)
        );
    }

    // Pseudoranges differing by more than the distance: no solution at all.
    let far = Scenario::new(vec![s1, s2], vec![0.0, 10.0])?;
    let sol = solve_squared(&far)?;
    println!(
        "|t1 - t2| > d: feasible count {:?}",
        filter_inequalities(&sol, &far).count()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
