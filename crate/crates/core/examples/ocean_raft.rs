// Grid-search localization of a raft on the ocean, with three boats or two
// boats and an aircraft. Coordinates are in kilometres; errors are printed
// in metres.

use pseudoquad::constraints::AffineConstraint;
use pseudoquad::numerics::Vector;
use pseudoquad::simulate::{run_trials, NoiseModel, SearchRegion, TrialConfig, DEFAULT_HALF_WIDTH};

fn config(receivers: &[[f64; 3]], sigma: f64, resolution: usize) -> TrialConfig {
    let x_true = Vector::from_vec(vec![0.75, 5.0, 0.0]);
    TrialConfig {
        receivers: receivers
            .iter()
            .map(|r| Vector::from_column_slice(r))
            .collect(),
        region: SearchRegion::around(
            AffineConstraint::horizontal(3, 0.0),
            &x_true,
            DEFAULT_HALF_WIDTH,
            resolution,
        ),
        x_true,
        b_true: 0.0,
        noise: NoiseModel { sigma, seed: 2024 },
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let boats = [[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]];
    let aircraft = [[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 10.0]];
    let (trials, resolution) = (200, 201);
    for sigma in [0.01, 0.1] {
        for (name, receivers) in [("three boats", &boats), ("two boats + aircraft", &aircraft)] {
            let stats = run_trials(&config(receivers, sigma, resolution), trials)?;
            println!(
                "sigma {sigma:<5} {name:<22} mean {:>9.2} m  std {:>9.2} m",
                stats.mean_error * 1000.0,
                stats.std_error * 1000.0
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
