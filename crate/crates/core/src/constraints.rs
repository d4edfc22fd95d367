//! Solutions restricted to an affine subspace, such as a floor or the sea
//! surface.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{random_direction, Scenario, SolutionSet};
use crate::numerics::{kernel_orthonormal_basis, particular_solution, Matrix, Tolerance, Vector};
use crate::solver::Solution;

/// `base + span(basis)`, with an orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineConstraint {
    #[serde(with = "crate::serde_vec::vector")]
    pub base: Vector,
    #[serde(with = "crate::serde_vec::vectors")]
    pub basis: Vec<Vector>,
}

impl AffineConstraint {
    pub fn new(base: Vector, basis: Vec<Vector>) -> Result<Self> {
        let c = Self { base, basis };
        c.validate()?;
        Ok(c)
    }

    /// The plane `{x : x_last = height}` in `R^n`, spanned by the other axes.
    pub fn horizontal(n: usize, height: f64) -> Self {
        let mut base = Vector::zeros(n);
        base[n - 1] = height;
        Self {
            base,
            basis: (0..n - 1).map(|i| crate::numerics::unit(n, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_basis()?;
        let n = self.base.len();
        if self.basis.len() >= n {
            return Err(Error::InvalidConstraint(format!(
                "a {}-dimensional constraint does not constrain R^{n}",
                self.basis.len()
            )));
        }
        Ok(())
    }

    /// Finite base and orthonormal basis of the right dimension.
    pub fn validate_basis(&self) -> Result<()> {
        let n = self.base.len();
        if self.base.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("constraint base".into()));
        }
        for (i, b) in self.basis.iter().enumerate() {
            if b.len() != n {
                return Err(Error::DimensionMismatch {
                    what: format!("constraint basis vector {i}"),
                    expected: n,
                    found: b.len(),
                });
            }
            for (j, c) in self.basis.iter().enumerate().take(i + 1) {
                let want = if i == j { 1.0 } else { 0.0 };
                if (b.dot(c) - want).abs() > 1e-9 {
                    return Err(Error::InvalidConstraint("basis is not orthonormal".into()));
                }
            }
        }
        Ok(())
    }

    pub fn point(&self, z: &[f64]) -> Vector {
        let mut p = self.base.clone();
        for (c, b) in z.iter().zip(&self.basis) {
            p.axpy(*c, b, 1.0);
        }
        p
    }

    pub fn distance(&self, x: &Vector) -> f64 {
        let d = x - &self.base;
        let proj = self
            .basis
            .iter()
            .fold(Vector::zeros(d.len()), |acc, b| acc + b * b.dot(&d));
        (d - proj).norm()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    #[serde(with = "crate::serde_vec::vector")]
    pub x: Vector,
    pub b: f64,
    /// `t_i >= b` for all satellites.
    pub feasible: bool,
    /// Largest violation of the squared equations and of the constraint.
    pub residual: f64,
    /// Found as a double root.
    pub tangent: bool,
    /// The other bias at the same position, when both roots of the bias
    /// equation land on one point (equal pseudoranges).
    pub alt_bias: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Intersection {
    pub candidates: Vec<Candidate>,
    /// The intersection has positive dimension; `candidates` are samples.
    pub positive_dimensional: bool,
    pub diagnostic: Option<String>,
}

/// Number of sample candidates returned for positive-dimensional
/// intersections.
const SAMPLES: usize = 16;

fn candidate(
    sc: &Scenario,
    con: &AffineConstraint,
    b: f64,
    x: Vector,
    tangent: bool,
    tol: &Tolerance,
) -> Candidate {
    let scale = sc.scale();
    let residual = (sc.squared_residual(b, &x) / scale).max(con.distance(&x));
    Candidate {
        feasible: sc.min_slack(b) >= -tol.geom_abs * scale,
        residual,
        tangent,
        alt_bias: None,
        b,
        x,
    }
}

/// Merge candidates at the same position, keeping the smaller bias.
fn dedup(mut cands: Vec<Candidate>, eps: f64) -> Vec<Candidate> {
    cands.sort_by(|a, b| a.b.total_cmp(&b.b));
    let mut out: Vec<Candidate> = Vec::new();
    for c in cands {
        match out.iter_mut().find(|o| (&o.x - &c.x).norm() <= eps) {
            Some(o) if (o.b - c.b).abs() > eps => o.alt_bias = Some(c.b),
            Some(o) => o.tangent = true,
            None => out.push(c),
        }
    }
    out
}

/// Intersect the solution set with an affine constraint on the position.
pub fn intersect_with_affine(
    sol: &Solution,
    sc: &Scenario,
    con: &AffineConstraint,
) -> Result<Intersection> {
    con.validate()?;
    if con.base.len() != sc.dim {
        return Err(Error::DimensionMismatch {
            what: "constraint".into(),
            expected: sc.dim,
            found: con.base.len(),
        });
    }
    let tol = sol.tol;
    let scale = sc.scale();
    let par = match &sol.set {
        SolutionSet::Empty => {
            return Ok(Intersection {
                candidates: Vec::new(),
                positive_dimensional: false,
                diagnostic: Some("the solution set is empty".into()),
            })
        }
        SolutionSet::Parametrized(p) => p,
    };
    let n = sc.dim;
    let np = par.poly.nparams();
    let q = con.dim();

    // [lead | basis | -constraint] (p; z) = base - origin.
    let mut dirs: Vec<Vector> = par.lead.iter().cloned().collect();
    dirs.extend(par.basis.iter().cloned());
    dirs.extend(con.basis.iter().map(|b| -b));
    let lin = Matrix::from_fn(n, np + q, |i, j| dirs[j][i]);
    let rhs = &con.base - &par.origin;
    let Some(z0) = particular_solution(&lin, &rhs, &tol)? else {
        return Ok(Intersection {
            candidates: Vec::new(),
            positive_dimensional: false,
            diagnostic: Some("the constraint misses the affine span of the solutions".into()),
        });
    };
    let kernel = kernel_orthonormal_basis(&lin, &tol)?;

    // poly(p0 + K tau) = tau^T H tau + g^T tau + f, restricted to the
    // parameter coordinates.
    let sq = &par.poly.square;
    let lin_c = &par.poly.linear;
    let p0: Vec<f64> = z0.iter().take(np).copied().collect();
    let f = par.poly.eval(&p0);
    let r = kernel.len();
    let h = Matrix::from_fn(r, r, |i, j| {
        (0..np).map(|l| sq[l] * kernel[i][l] * kernel[j][l]).sum()
    });
    let g = Vector::from_fn(r, |i, _| {
        (0..np)
            .map(|l| (2.0 * sq[l] * p0[l] + lin_c[l]) * kernel[i][l])
            .sum()
    });
    let embed = |tau: &[f64]| {
        let mut p = p0.clone();
        for (t, k) in tau.iter().zip(&kernel) {
            for (l, pl) in p.iter_mut().enumerate() {
                *pl += t * k[l];
            }
        }
        par.embed(&p)
    };
    let eps_pos = tol.geom_abs.sqrt() * scale;

    let (cands, positive) = match r {
        0 => {
            let ok = f.abs() <= tol.geom_abs * scale * scale;
            let cands = if ok {
                let (b, x) = embed(&[]);
                vec![candidate(sc, con, b, x, false, &tol)]
            } else {
                Vec::new()
            };
            (cands, false)
        }
        1 => {
            let (qa, qb, qc) = (h[(0, 0)], g[0], f);
            let coef = qa.abs().max(qb.abs()).max(qc.abs() / scale.max(1.0));
            let small = |v: f64| v.abs() <= tol.geom_abs * coef.max(1e-300);
            if small(qa) && small(qb) {
                if qc.abs() <= tol.geom_abs * scale * scale {
                    (sample_line(&embed, sc, con, &tol), true)
                } else {
                    (Vec::new(), false)
                }
            } else if small(qa) {
                let (b, x) = embed(&[-qc / qb]);
                (vec![candidate(sc, con, b, x, false, &tol)], false)
            } else {
                let disc = qb * qb - 4.0 * qa * qc;
                let band = tol.geom_abs * (qb * qb + 4.0 * (qa * qc).abs());
                if disc.abs() <= band {
                    let (b, x) = embed(&[-qb / (2.0 * qa)]);
                    (vec![candidate(sc, con, b, x, true, &tol)], false)
                } else if disc < 0.0 {
                    (Vec::new(), false)
                } else {
                    let s = -0.5 * (qb + qb.signum() * disc.sqrt());
                    let roots = if s == 0.0 {
                        [0.0, 0.0]
                    } else {
                        [s / qa, qc / s]
                    };
                    let cands = roots
                        .iter()
                        .map(|t| {
                            let (b, x) = embed(&[*t]);
                            candidate(sc, con, b, x, false, &tol)
                        })
                        .collect();
                    (cands, false)
                }
            }
        }
        _ => (sample_quadric(&h, &g, f, &embed, sc, con, &tol), true),
    };
    let mut candidates = if positive {
        cands
    } else {
        dedup(cands, eps_pos)
    };
    candidates.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    let diagnostic = match (candidates.is_empty(), positive) {
        (true, _) => Some("the constraint does not meet the solution set".into()),
        (false, true) => {
            Some("the intersection is positive-dimensional; candidates are samples".into())
        }
        _ => None,
    };
    Ok(Intersection {
        candidates,
        positive_dimensional: positive,
        diagnostic,
    })
}

fn sample_line(
    embed: &dyn Fn(&[f64]) -> (f64, Vector),
    sc: &Scenario,
    con: &AffineConstraint,
    tol: &Tolerance,
) -> Vec<Candidate> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (0..SAMPLES)
        .map(|_| {
            let (b, x) = embed(&[rng.random_range(-3.0..=3.0)]);
            candidate(sc, con, b, x, false, tol)
        })
        .collect()
}

/// Samples of `{tau : tau^T H tau + g^T tau + f = 0}` from random lines.
fn sample_quadric(
    h: &Matrix,
    g: &Vector,
    f: f64,
    embed: &dyn Fn(&[f64]) -> (f64, Vector),
    sc: &Scenario,
    con: &AffineConstraint,
    tol: &Tolerance,
) -> Vec<Candidate> {
    let r = g.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = Vec::new();
    let scale = sc.scale();
    for _ in 0..SAMPLES * 16 {
        if out.len() >= SAMPLES {
            break;
        }
        let start = Vector::from_fn(r, |_, _| rng.random_range(-3.0..=3.0) * scale);
        let dir = random_direction(r, &mut rng);
        // Along start + s dir: A s^2 + B s + C.
        let a = dir.dot(&(h * &dir));
        let b = 2.0 * start.dot(&(h * &dir)) + g.dot(&dir);
        let c = start.dot(&(h * &start)) + g.dot(&start) + f;
        let s = if a.abs() <= tol.geom_abs * (b.abs() + c.abs()) {
            if b == 0.0 {
                continue;
            }
            -c / b
        } else {
            let disc = b * b - 4.0 * a * c;
            if disc < 0.0 {
                continue;
            }
            (-b + disc.sqrt()) / (2.0 * a)
        };
        let tau = &start + &dir * s;
        let (bias, x) = embed(tau.as_slice());
        out.push(candidate(sc, con, bias, x, false, tol));
    }
    out
}

/// Candidates that satisfy `t_i >= b` for every satellite, in their original order.
pub fn feasible_candidates(cands: &[Candidate], sc: &Scenario, tol: &Tolerance) -> Vec<Candidate> {
    let scale = sc.scale();
    cands
        .iter()
        .filter(|c| sc.min_slack(c.b) >= -tol.geom_abs * scale)
        .cloned()
        .collect()
}
