#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use pseudoquad::model::{Scenario, SolutionSet};
use pseudoquad::numerics::Vector;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn uniform_point<R: Rng>(rng: &mut R, n: usize, half: f64) -> Vector {
    Vector::from_fn(n, |_, _| rng.random_range(-half..half))
}

pub fn gaussian_point<R: Rng>(rng: &mut R, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| StandardNormal.sample(rng))
}

/// Pseudoranges of `sats` as heard from `x` with clock bias `b`.
pub fn pseudoranges(sats: &[Vector], x: &Vector, b: f64) -> Vec<f64> {
    sats.iter().map(|s| (s - x).norm() + b).collect()
}

/// A scenario with pseudoranges measured from a random receiver.
pub fn consistent_scenario<R: Rng>(rng: &mut R, n: usize, m: usize) -> Option<Scenario> {
    let sats: Vec<Vector> = (0..m).map(|_| uniform_point(rng, n, 5.0)).collect();
    let x = uniform_point(rng, n, 3.0);
    let b = rng.random_range(-2.0..2.0);
    let t = pseudoranges(&sats, &x, b);
    Scenario::new(sats, t).ok()
}

/// A scenario with unrelated pseudoranges.
pub fn random_scenario<R: Rng>(rng: &mut R, n: usize, m: usize) -> Option<Scenario> {
    let sats: Vec<Vector> = (0..m).map(|_| uniform_point(rng, n, 5.0)).collect();
    let t = (0..m).map(|_| rng.random_range(0.0..10.0)).collect();
    Scenario::new(sats, t).ok()
}

/// Random orthogonal matrix.
pub fn rotation<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
    g.qr().q()
}

/// Largest `|(|s_i - x|^2 - (t_i - b)^2)|` over the satellites.
pub fn squared_residual(sc: &Scenario, b: f64, x: &Vector) -> f64 {
    sc.satellites
        .iter()
        .zip(&sc.pseudoranges)
        .map(|(s, t)| ((s - x).norm_squared() - (t - b) * (t - b)).abs())
        .fold(0.0, f64::max)
}

fn lift(b: f64, x: &Vector) -> DVector<f64> {
    let mut z = DVector::zeros(x.len() + 1);
    z[0] = b;
    z.rows_mut(1, x.len()).copy_from(x);
    z
}

/// Distance from `(b, x)` to a solution set (an upper bound for infinite
/// sets: projection onto the affine hull, then Newton steps onto the
/// quadric inside it).
pub fn distance_to_set(set: &SolutionSet, b: f64, x: &Vector) -> f64 {
    let q = lift(b, x);
    let Some(par) = set.parametrization() else {
        return f64::INFINITY;
    };
    if let Some(points) = set.points() {
        return points
            .iter()
            .map(|(pb, px)| (lift(*pb, px) - &q).norm())
            .fold(f64::INFINITY, f64::min);
    }
    let np = par.poly.nparams();
    let n = x.len();
    let origin = lift(par.bias, &par.origin);
    let mut cols = Vec::with_capacity(np);
    if let Some(u) = &par.lead {
        cols.push(lift(1.0, u));
    }
    for w in &par.basis {
        cols.push(lift(0.0, w));
    }
    let m = DMatrix::from_columns(&cols);
    debug_assert_eq!(m.nrows(), n + 1);
    let gram = m.transpose() * &m;
    let gram_inv = gram
        .clone()
        .try_inverse()
        .expect("parametrization has independent directions");
    let mut p = &gram_inv * m.transpose() * (&q - &origin);
    for _ in 0..50 {
        let ps: Vec<f64> = p.iter().copied().collect();
        let g = par.poly.eval(&ps);
        let grad = DVector::from_vec(par.poly.gradient(&ps));
        let dir = &gram_inv * &grad;
        let denom = grad.dot(&dir);
        if denom <= 0.0 || g == 0.0 {
            break;
        }
        let step = &dir * (g / denom);
        p -= &step;
        if step.norm() <= 1e-16 * (1.0 + p.norm()) {
            break;
        }
    }
    (&origin + &m * &p - &q).norm()
}

/// Two-way deviation between two sets from samples of each.
pub fn sampled_hausdorff(
    a: &SolutionSet,
    b: &SolutionSet,
    sa: &[(f64, Vector)],
    sb: &[(f64, Vector)],
) -> f64 {
    let ab = sa
        .iter()
        .map(|(bb, x)| distance_to_set(b, *bb, x))
        .fold(0.0, f64::max);
    let ba = sb
        .iter()
        .map(|(bb, x)| distance_to_set(a, *bb, x))
        .fold(0.0, f64::max);
    ab.max(ba)
}

/// Condition number of the lifted matrix `B` (rows `(2 s_i, -1)`).
pub fn lifted_condition(sc: &Scenario) -> f64 {
    let b = sc.lifted_system().b;
    let sv = b.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}
