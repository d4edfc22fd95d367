//! From a scenario to its complete set of solutions.
//!
//! The pipeline is: pick a maximal set of independent rows of the lifted
//! matrix `A`, build the frame on those rows, describe the solution set of the
//! squared equations in that frame, and check every left-over satellite
//! against the satellite residual. Inequality filtering is a separate step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    ConicParameters, CountHint, Frame, LiftedSystem, Parametrization, QuadraticForm, Scenario,
    SolutionSet,
};
use crate::numerics::{
    orthonormal_complement, particular_solution, rank_with_tolerance, Matrix, Tolerance, Vector,
};

/// Left-over satellites are accepted as consistent when their residual is
/// within this multiple of the geometric tolerance (scaled).
const CONSISTENCY_FACTOR: f64 = 100.0;

/// `|e - 1|` below which a non-parabolic classification is flagged.
pub const NEAR_PARABOLIC_BAND: f64 = 1e-6;

pub fn build_matrices(sc: &Scenario) -> LiftedSystem {
    LiftedSystem::build(sc)
}

/// Indices of `rank(A)` independent rows, chosen greedily by largest
/// remaining component (pivoted Gram-Schmidt), returned in ascending order.
pub fn select_rows(a: &Matrix, tol: &Tolerance) -> Result<Vec<usize>> {
    let rank = rank_with_tolerance(a, tol)?;
    let rows: Vec<Vector> = (0..a.nrows()).map(|i| a.row(i).transpose()).collect();
    let mut basis: Vec<Vector> = Vec::with_capacity(rank);
    let mut chosen = Vec::with_capacity(rank);
    let reduce = |r: &Vector, basis: &[Vector]| {
        let mut r = r.clone();
        for _ in 0..2 {
            for q in basis {
                let c = q.dot(&r);
                r.axpy(-c, q, 1.0);
            }
        }
        r
    };
    while chosen.len() < rank {
        let mut best: Option<(usize, Vector, f64)> = None;
        for (i, row) in rows.iter().enumerate() {
            if chosen.contains(&i) {
                continue;
            }
            let r = reduce(row, &basis);
            let n = r.norm();
            if best.as_ref().is_none_or(|(_, _, bn)| n > *bn) {
                best = Some((i, r, n));
            }
        }
        let (i, r, n) = best.expect("rank never exceeds the row count");
        chosen.push(i);
        basis.push(r / n);
    }
    chosen.sort_unstable();
    Ok(chosen)
}

fn augmented(b: &Matrix, w: &[Vector]) -> Matrix {
    let (m, cols) = b.shape();
    let mut aug = Matrix::zeros(m + w.len(), cols);
    aug.view_mut((0, 0), (m, cols)).copy_from(b);
    for (j, wj) in w.iter().enumerate() {
        for i in 0..wj.len() {
            aug[(m + j, i)] = wj[i];
        }
    }
    aug
}

fn stacked(head: impl Iterator<Item = f64>, tail: &[f64]) -> Vector {
    let mut v: Vec<f64> = head.collect();
    v.extend_from_slice(tail);
    Vector::from_vec(v)
}

/// Frame of a scenario whose lifted matrix `A` has full row rank.
pub fn compute_frame(sys: &LiftedSystem, sc: &Scenario) -> Result<Frame> {
    let tol = &sc.tol;
    let (m, n) = (sys.rows(), sc.dim);
    let rank_a = rank_with_tolerance(&sys.a, tol)?;
    let rank_b = rank_with_tolerance(&sys.b, tol)?;
    let inconsistent = || Error::InconsistentRanks { rank_a, rank_b };
    if rank_a != m {
        return Err(inconsistent());
    }
    let s1 = &sc.satellites[0];
    let diffs: Vec<Vector> = sc.satellites[1..].iter().map(|s| s - s1).collect();
    let w = orthonormal_complement(&diffs, n, tol)?;
    let gamma: Vec<f64> = w.iter().map(|wj| wj.dot(s1)).collect();
    let aug = augmented(&sys.b, &w);
    let solve = |rhs: Vector| -> Result<Vector> {
        particular_solution(&aug, &rhs, tol)?.ok_or_else(inconsistent)
    };

    if rank_b == m {
        if w.len() + m != n + 1 {
            return Err(inconsistent());
        }
        let vb = solve(stacked(sys.rhs.iter().copied(), &gamma))?;
        let zeros = vec![0.0; w.len()];
        let ua = solve(stacked(sc.pseudoranges.iter().map(|t| 2.0 * t), &zeros))?;
        Ok(Frame::FullRank {
            u: ua.rows(0, n).into_owned(),
            alpha: ua[n] / 2.0,
            v: vb.rows(0, n).into_owned(),
            beta: vb[n],
            w,
            gamma,
        })
    } else if rank_b + 1 == m {
        if w.len() + m != n + 2 {
            return Err(inconsistent());
        }
        let z = particular_solution(&sys.a, &sys.rhs, tol)?.ok_or_else(inconsistent)?;
        let b0 = z[0];
        let rhs = sc
            .satellites
            .iter()
            .zip(&sc.pseudoranges)
            .map(|(s, t)| s.norm_squared() - (t - b0).powi(2));
        let vb = solve(stacked(rhs, &gamma))?;
        Ok(Frame::RankDeficient {
            b0,
            v: vb.rows(0, n).into_owned(),
            beta: vb[n],
            w,
            gamma,
        })
    } else {
        Err(inconsistent())
    }
}

/// Derived scalars of a full-rank frame; `None` in the rank-deficient branch.
pub fn conic_parameters(frame: &Frame, tol: &Tolerance) -> Option<ConicParameters> {
    let Frame::FullRank {
        u, alpha, v, beta, ..
    } = frame
    else {
        return None;
    };
    let e = u.norm();
    let raw = e * e - 1.0;
    let a = if raw.abs() <= tol.geom_abs { 0.0 } else { raw };
    let c = u.dot(v) - alpha;
    let d = v.norm_squared() - beta;
    let (mu, rho) = if a != 0.0 {
        (Some(c / a), Some(c * c / a - d))
    } else {
        (None, None)
    };
    let (lambda1, lambda2) = if c != 0.0 {
        let l1 = -d / (2.0 * c);
        (Some(l1), Some(l1 - c / 2.0))
    } else {
        (None, None)
    };
    Some(ConicParameters {
        e,
        a,
        c,
        d,
        mu,
        rho,
        lambda1,
        lambda2,
        near_parabolic: a != 0.0 && (e - 1.0).abs() <= NEAR_PARABOLIC_BAND,
    })
}

/// Residual of a candidate satellite `(t, s)` against the satellite locus of
/// a frame, split into its components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HTildeResidual {
    /// The quadratic part.
    pub htilde: f64,
    /// Distance of `s` from the satellites' affine span (largest `|<s,w_j> - gamma_j|`).
    pub affine: f64,
    /// `|t - (<u,s> - alpha)|` in the full-rank branch, 0 otherwise.
    pub time: f64,
}

impl HTildeResidual {
    pub fn max(&self) -> f64 {
        self.htilde.abs().max(self.affine).max(self.time)
    }

    pub fn is_consistent(&self, scale: f64, tol: &Tolerance) -> bool {
        let eps = CONSISTENCY_FACTOR * tol.geom_abs;
        self.htilde.abs() <= eps * scale * scale
            && self.affine <= eps * scale
            && self.time <= eps * scale
    }
}

pub fn residual_htilde(frame: &Frame, t: f64, s: &Vector) -> HTildeResidual {
    let affine = frame.affine_violation(s);
    match frame {
        Frame::FullRank {
            u, alpha, v, beta, ..
        } => {
            let ts = u.dot(s) - alpha;
            HTildeResidual {
                htilde: (s - v).norm_squared() - ts * ts + beta - v.norm_squared(),
                affine,
                time: (t - ts).abs(),
            }
        }
        Frame::RankDeficient { b0, v, beta, .. } => HTildeResidual {
            htilde: (t - b0).powi(2) - (s - v).norm_squared() - beta + v.norm_squared(),
            affine,
            time: 0.0,
        },
    }
}

/// Exact locus test for a scenario with the single solution `(b0, x0)`:
/// `(t, s)` is consistent exactly when `t = b0 +- |s - x0|`.
pub fn cone_membership(
    b0: f64,
    x0: &Vector,
    t: f64,
    s: &Vector,
    scale: f64,
    tol: &Tolerance,
) -> bool {
    ((t - b0).abs() - (s - x0).norm()).abs() <= CONSISTENCY_FACTOR * tol.geom_abs * scale
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeftoverCheck {
    pub index: usize,
    pub residual: HTildeResidual,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub rank_a: usize,
    pub rank_b: usize,
    /// Rows of the scenario the frame was built on.
    pub selected: Vec<usize>,
    pub leftover: Vec<LeftoverCheck>,
    pub duplicates: Vec<(usize, usize)>,
    pub k: usize,
    pub scale: f64,
    pub conic: Option<ConicParameters>,
    /// Radius squared of the solution sphere in the rank-deficient branch.
    pub radius_squared: Option<f64>,
    pub near_degenerate: bool,
}

/// Solution set of the squared equations together with everything it was
/// derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub frame: Frame,
    pub set: SolutionSet,
    pub tol: Tolerance,
    pub diagnostics: Diagnostics,
}

impl Solution {
    pub fn scale(&self) -> f64 {
        self.diagnostics.scale
    }

    pub fn conic(&self) -> Option<&ConicParameters> {
        self.diagnostics.conic.as_ref()
    }

    /// False when a left-over satellite contradicted the frame.
    pub fn consistent(&self) -> bool {
        self.diagnostics.leftover.iter().all(|l| l.consistent)
    }
}

fn subscenario(sc: &Scenario, rows: &[usize]) -> Scenario {
    Scenario {
        dim: sc.dim,
        satellites: rows.iter().map(|&i| sc.satellites[i].clone()).collect(),
        pseudoranges: rows.iter().map(|&i| sc.pseudoranges[i]).collect(),
        tol: sc.tol,
    }
}

fn full_rank_count(
    p: &ConicParameters,
    k: usize,
    scale: f64,
    tol: &Tolerance,
) -> (CountHint, bool) {
    let eps_c = tol.geom_abs * scale;
    let eps_d = tol.geom_abs * scale * scale;
    let (a, c, d) = (p.a, p.c, p.d);
    if k == 0 {
        if a == 0.0 {
            return if c.abs() > eps_c {
                (CountHint::One, false)
            } else if d.abs() <= eps_d {
                (CountHint::Infinite, true)
            } else {
                (CountHint::Zero, false)
            };
        }
        let disc = c * c - a * d;
        let band = eps_d * (1.0 + a.abs());
        return if disc.abs() <= band {
            (CountHint::One, true)
        } else if disc > 0.0 {
            (CountHint::Two, false)
        } else {
            (CountHint::Zero, false)
        };
    }
    if a > 0.0 {
        let rho = p.rho.expect("rho defined for a != 0");
        if rho.abs() <= eps_d {
            (CountHint::One, true)
        } else if rho > 0.0 {
            (CountHint::Infinite, false)
        } else {
            (CountHint::Zero, false)
        }
    } else if a < 0.0 || c.abs() > eps_c {
        (CountHint::Infinite, false)
    } else if d > eps_d {
        (CountHint::Zero, false)
    } else {
        (CountHint::Infinite, d.abs() <= eps_d)
    }
}

fn rank_deficient_count(r2: f64, k: usize, scale: f64, tol: &Tolerance) -> (CountHint, bool) {
    let band = tol.geom_abs * scale * scale;
    if r2.abs() <= band {
        (CountHint::One, true)
    } else if r2 < 0.0 || k == 0 {
        (CountHint::Zero, false)
    } else if k == 1 {
        (CountHint::Two, false)
    } else {
        (CountHint::Infinite, false)
    }
}

/// Solution set of the squared equations.
pub fn solve_squared(sc: &Scenario) -> Result<Solution> {
    let validation = sc.validate()?;
    let tol = sc.tol;
    let scale = sc.scale();
    let sys = build_matrices(sc);
    let selected = select_rows(&sys.a, &tol)?;
    let sub = subscenario(sc, &selected);
    let sub_sys = build_matrices(&sub);
    let frame = compute_frame(&sub_sys, &sub)?;

    let leftover: Vec<LeftoverCheck> = (0..sc.len())
        .filter(|i| !selected.contains(i))
        .map(|i| {
            let residual = residual_htilde(&frame, sc.pseudoranges[i], &sc.satellites[i]);
            LeftoverCheck {
                index: i,
                residual,
                consistent: residual.is_consistent(scale, &tol),
            }
        })
        .collect();

    let k = frame.k();
    let conic = conic_parameters(&frame, &tol);
    let (parametrization, radius_squared) = match &frame {
        Frame::FullRank { u, v, w, .. } => {
            let p = conic.as_ref().expect("full-rank frame");
            let (count, near) = full_rank_count(p, k, scale, &tol);
            let mut square = vec![p.a];
            let mut linear = vec![2.0 * p.c];
            square.extend(std::iter::repeat_n(1.0, k));
            linear.extend(std::iter::repeat_n(0.0, k));
            let par = Parametrization {
                bias: 0.0,
                origin: v.clone(),
                lead: Some(u.clone()),
                basis: w.clone(),
                poly: QuadraticForm {
                    square,
                    linear,
                    constant: p.d,
                },
                count,
                near_degenerate: near,
            };
            (par, None)
        }
        Frame::RankDeficient { b0, v, beta, w, .. } => {
            let r2 = beta - v.norm_squared();
            let (count, near) = rank_deficient_count(r2, k, scale, &tol);
            let par = Parametrization {
                bias: *b0,
                origin: v.clone(),
                lead: None,
                basis: w.clone(),
                poly: QuadraticForm {
                    square: vec![1.0; k],
                    linear: vec![0.0; k],
                    constant: -r2,
                },
                count,
                near_degenerate: near,
            };
            (par, Some(r2))
        }
    };

    let near_degenerate = parametrization.near_degenerate;
    let consistent = leftover.iter().all(|l| l.consistent);
    let set = if !consistent || parametrization.count == CountHint::Zero {
        SolutionSet::Empty
    } else {
        SolutionSet::Parametrized(parametrization)
    };
    let diagnostics = Diagnostics {
        rank_a: selected.len(),
        rank_b: rank_with_tolerance(&sub_sys.b, &tol)?,
        selected,
        leftover,
        duplicates: validation.duplicates,
        k,
        scale,
        conic,
        radius_squared,
        near_degenerate,
    };
    Ok(Solution {
        frame,
        set,
        tol,
        diagnostics,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheetSign {
    /// `<u, x - c> >= 0`.
    Plus,
    /// `<u, x - c> <= 0`.
    Minus,
}

/// Which solutions of the squared equations also satisfy `t_i >= b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Feasibility {
    /// No squared solutions to begin with.
    Empty,
    /// `e > 1`: everything or nothing, depending on whether all satellites lie
    /// on the sheet of the satellite hyperboloid that `u` points to.
    Hyperbolic { solvable: bool },
    /// `e < 1`: one sheet of the solution hyperboloid.
    Sheet {
        which: SheetSign,
        #[serde(with = "crate::serde_vec::vector")]
        center: Vector,
        #[serde(with = "crate::serde_vec::vector")]
        axis: Vector,
    },
    /// `e = 1`: everything or nothing, by the sign of `<u,v> - alpha`.
    Parabolic { solvable: bool },
    /// Rank-deficient branch: everything or nothing, by the sign of `t_i - b0`.
    RankDeficientSign { solvable: bool },
    /// `u = 0`: the root with the minus sign, i.e. `b <= t`.
    MinusRoot { max_bias: f64 },
    /// Two satellites with `|t_1 - t_2| = |s_1 - s_2|`: the line, cut at `b <= min t_i`.
    Collinear { max_bias: f64 },
    /// Finite solution sets: each point checked directly.
    Explicit { points: Vec<ExplicitPoint> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplicitPoint {
    pub b: f64,
    #[serde(with = "crate::serde_vec::vector")]
    pub x: Vector,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibleSolutionSet {
    pub squared: SolutionSet,
    pub feasible: Feasibility,
}

impl FeasibleSolutionSet {
    /// Whether the rule admits the point `(b, x)` of the squared solution set.
    pub fn admits(&self, b: f64, x: &Vector) -> bool {
        match &self.feasible {
            Feasibility::Empty => false,
            Feasibility::Hyperbolic { solvable }
            | Feasibility::Parabolic { solvable }
            | Feasibility::RankDeficientSign { solvable } => *solvable,
            Feasibility::Sheet {
                which,
                center,
                axis,
            } => {
                let s = axis.dot(&(x - center));
                match which {
                    SheetSign::Plus => s >= 0.0,
                    SheetSign::Minus => s <= 0.0,
                }
            }
            Feasibility::MinusRoot { max_bias } | Feasibility::Collinear { max_bias } => {
                b <= *max_bias
            }
            Feasibility::Explicit { points } => points.iter().any(|p| {
                p.feasible
                    && (p.b - b).abs() <= 1e-9 * (1.0 + b.abs())
                    && (&p.x - x).norm() <= 1e-9 * (1.0 + x.norm())
            }),
        }
    }

    /// Number of feasible solutions (`Infinite` for positive-dimensional sets
    /// with a nonempty feasible part).
    pub fn count(&self) -> CountHint {
        match &self.feasible {
            Feasibility::Empty => CountHint::Zero,
            Feasibility::Explicit { points } => {
                match points.iter().filter(|p| p.feasible).count() {
                    0 => CountHint::Zero,
                    1 => CountHint::One,
                    _ => CountHint::Two,
                }
            }
            Feasibility::Hyperbolic { solvable: false }
            | Feasibility::Parabolic { solvable: false }
            | Feasibility::RankDeficientSign { solvable: false } => CountHint::Zero,
            _ => CountHint::Infinite,
        }
    }

    pub fn feasible_points(&self) -> Option<Vec<(f64, Vector)>> {
        match &self.feasible {
            Feasibility::Explicit { points } => Some(
                points
                    .iter()
                    .filter(|p| p.feasible)
                    .map(|p| (p.b, p.x.clone()))
                    .collect(),
            ),
            _ if self.count() == CountHint::Zero => Some(Vec::new()),
            _ => None,
        }
    }
}

/// Restrict the squared solution set to the solutions of the original
/// (unsquared) equations.
pub fn filter_inequalities(sol: &Solution, sc: &Scenario) -> FeasibleSolutionSet {
    let tol = &sol.tol;
    let scale = sol.scale();
    let slack_ok = |b: f64| sc.min_slack(b) >= -tol.geom_abs * scale;
    let squared = sol.set.clone();
    let min_t = sc
        .pseudoranges
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);

    let feasible = match &sol.set {
        SolutionSet::Empty => Feasibility::Empty,
        set if set.count().is_finite() => {
            let points = set.points().unwrap_or_default();
            Feasibility::Explicit {
                points: points
                    .into_iter()
                    .map(|(b, x)| ExplicitPoint {
                        feasible: slack_ok(b),
                        b,
                        x,
                    })
                    .collect(),
            }
        }
        _ => match (&sol.frame, sol.conic()) {
            (Frame::RankDeficient { b0, .. }, _) => Feasibility::RankDeficientSign {
                solvable: slack_ok(*b0),
            },
            (Frame::FullRank { u, v, alpha, .. }, Some(p)) => {
                if p.e <= tol.geom_abs {
                    Feasibility::MinusRoot { max_bias: -alpha }
                } else if p.a > 0.0 {
                    let center = v - u * p.mu.expect("a != 0");
                    let solvable = sc
                        .satellites
                        .iter()
                        .all(|s| u.dot(&(s - &center)) >= -tol.geom_abs * scale * p.e);
                    Feasibility::Hyperbolic { solvable }
                } else if p.a < 0.0 {
                    Feasibility::Sheet {
                        which: SheetSign::Minus,
                        center: v - u * p.mu.expect("a != 0"),
                        axis: u.clone(),
                    }
                } else if p.c.abs() > tol.geom_abs * scale {
                    Feasibility::Parabolic {
                        solvable: p.c > 0.0,
                    }
                } else {
                    Feasibility::Collinear { max_bias: min_t }
                }
            }
            (Frame::FullRank { .. }, None) => {
                unreachable!("full-rank frames always carry conic parameters")
            }
        },
    };
    FeasibleSolutionSet { squared, feasible }
}

/// Closed-form vertices of the solution set for two satellites.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSatellite {
    pub u: Vector,
    pub solutions: [(f64, Vector); 2],
}

pub fn two_satellite_closed_form(
    s1: &Vector,
    t1: f64,
    s2: &Vector,
    t2: f64,
) -> Result<TwoSatellite> {
    if s1.len() != s2.len() {
        return Err(Error::DimensionMismatch {
            what: "second satellite".into(),
            expected: s1.len(),
            found: s2.len(),
        });
    }
    let diff = s1 - s2;
    let d = diff.norm();
    if d == 0.0 {
        return Err(Error::CoincidentSatellites(0, 1));
    }
    let u = &diff * ((t1 - t2) / (d * d));
    let mid = (s1 + s2) / 2.0;
    let solution = |sign: f64| ((t1 + t2 + sign * d) / 2.0, &mid + &u * (sign * d / 2.0));
    Ok(TwoSatellite {
        solutions: [solution(1.0), solution(-1.0)],
        u,
    })
}

/// Two satellites whose pseudorange difference equals their distance.
pub fn is_collinear_degenerate(sc: &Scenario) -> bool {
    if sc.len() != 2 {
        return false;
    }
    let d = (&sc.satellites[0] - &sc.satellites[1]).norm();
    let dt = (sc.pseudoranges[0] - sc.pseudoranges[1]).abs();
    d > 0.0 && (dt - d).abs() <= sc.tol.geom_abs * sc.scale()
}
