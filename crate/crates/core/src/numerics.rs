//! Tolerance-aware dense linear algebra.
//!
//! Everything downstream (branch selection between the full-rank and the
//! rank-deficient frame, kernel bases, particular solutions) goes through the
//! singular value decomposition with a relative cutoff, so a single
//! [`Tolerance`] controls every rank decision in the crate.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Numerical tolerances.
///
/// `rank_rel` is the relative singular-value cutoff; `geom_abs` is the
/// (scale-relative) threshold used for residual and classification tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerance {
    pub rank_rel: f64,
    pub geom_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_rel: 1e-9,
            geom_abs: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(rank_rel: f64, geom_abs: f64) -> Result<Self> {
        let tol = Self { rank_rel, geom_abs };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.rank_rel) || self.rank_rel >= 1.0 || !ok(self.geom_abs) {
            return Err(Error::InvalidTolerance {
                rank_rel: self.rank_rel,
                geom_abs: self.geom_abs,
            });
        }
        Ok(())
    }
}

fn check_finite(m: &Matrix) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("matrix entry".into()))
    }
}

/// Full SVD data: singular values sorted descending and a square `V`
/// (columns are right singular vectors), plus the thin `U`.
struct FullSvd {
    u: Matrix,
    sigma: Vec<f64>,
    v: Matrix,
}

fn full_svd(m: &Matrix) -> FullSvd {
    let (rows, cols) = m.shape();
    // Pad with zero rows so that V comes out square even for wide matrices.
    let padded = if rows < cols {
        let mut p = Matrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, true);
    let u_full = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let mut v = Matrix::zeros(cols, order.len());
    let mut u = Matrix::zeros(rows, order.len());
    for (dst, &src) in order.iter().enumerate() {
        v.set_column(dst, &v_t.row(src).transpose());
        u.set_column(dst, &u_full.column(src).rows(0, rows));
    }
    // A tall matrix only yields `cols` right singular vectors, which is already
    // a basis of R^cols; a padded wide matrix yields exactly `cols` as well.
    FullSvd { u, sigma, v }
}

fn numerical_rank(sigma: &[f64], rank_rel: f64) -> usize {
    let max = sigma.first().copied().unwrap_or(0.0);
    if max == 0.0 {
        return 0;
    }
    sigma.iter().filter(|&&s| s > rank_rel * max).count()
}

/// Number of singular values above `rank_rel` times the largest one.
pub fn rank_with_tolerance(m: &Matrix, tol: &Tolerance) -> Result<usize> {
    check_finite(m)?;
    if m.is_empty() {
        return Ok(0);
    }
    Ok(numerical_rank(&full_svd(m).sigma, tol.rank_rel))
}

/// Orthonormal basis of the numerical kernel of `m`, with the sign of each
/// vector fixed so that its first significant coordinate is positive.
pub fn kernel_orthonormal_basis(m: &Matrix, tol: &Tolerance) -> Result<Vec<Vector>> {
    check_finite(m)?;
    let cols = m.ncols();
    if m.nrows() == 0 {
        return Ok((0..cols).map(|i| unit(cols, i)).collect());
    }
    let svd = full_svd(m);
    let rank = numerical_rank(&svd.sigma, tol.rank_rel);
    Ok((rank..cols)
        .map(|j| canonical_sign(svd.v.column(j).into_owned(), tol))
        .collect())
}

/// Minimum-norm solution of `m x = rhs`, or `None` when `rhs` lies outside the
/// numerical column space.
pub fn particular_solution(m: &Matrix, rhs: &Vector, tol: &Tolerance) -> Result<Option<Vector>> {
    check_finite(m)?;
    if rhs.len() != m.nrows() {
        return Err(Error::DimensionMismatch {
            what: "right-hand side".into(),
            expected: m.nrows(),
            found: rhs.len(),
        });
    }
    if rhs.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("right-hand side".into()));
    }
    let cols = m.ncols();
    if m.nrows() == 0 {
        return Ok(Some(Vector::zeros(cols)));
    }
    let svd = full_svd(m);
    let rank = numerical_rank(&svd.sigma, tol.rank_rel);
    let mut x = Vector::zeros(cols);
    for j in 0..rank {
        let coef = svd.u.column(j).dot(rhs) / svd.sigma[j];
        x.axpy(coef, &svd.v.column(j), 1.0);
    }
    let residual = (m * &x - rhs).norm();
    let bound = tol.geom_abs * (m.norm() * x.norm().max(1.0) + rhs.norm());
    Ok((residual <= bound).then_some(x))
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` in
/// `R^ambient_dim`.
pub fn orthonormal_complement(
    vectors: &[Vector],
    ambient_dim: usize,
    tol: &Tolerance,
) -> Result<Vec<Vector>> {
    for v in vectors {
        if v.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                what: "spanning vector".into(),
                expected: ambient_dim,
                found: v.len(),
            });
        }
    }
    let m = Matrix::from_fn(vectors.len(), ambient_dim, |i, j| vectors[i][j]);
    kernel_orthonormal_basis(&m, tol)
}

/// Orthonormal basis of `span(vectors)` (numerical rank many vectors).
pub fn orthonormal_span(
    vectors: &[Vector],
    ambient_dim: usize,
    tol: &Tolerance,
) -> Result<Vec<Vector>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = Matrix::from_fn(vectors.len(), ambient_dim, |i, j| vectors[i][j]);
    check_finite(&m)?;
    let svd = full_svd(&m);
    let rank = numerical_rank(&svd.sigma, tol.rank_rel);
    Ok((0..rank)
        .map(|j| canonical_sign(svd.v.column(j).into_owned(), tol))
        .collect())
}

/// Flip `v` so that its first coordinate with magnitude above `sqrt(geom_abs)`
/// relative to the largest one is positive.
pub fn canonical_sign(v: Vector, tol: &Tolerance) -> Vector {
    let max = v.amax();
    let cut = max * tol.geom_abs.sqrt();
    match v.iter().find(|c| c.abs() > cut) {
        Some(c) if *c < 0.0 => -v,
        _ => v,
    }
}

pub fn unit(dim: usize, i: usize) -> Vector {
    let mut e = Vector::zeros(dim);
    e[i] = 1.0;
    e
}

/// Rows of `vectors` stacked into a matrix with `vectors.len()` columns.
pub fn columns(vectors: &[Vector], dim: usize) -> Matrix {
    Matrix::from_fn(dim, vectors.len(), |i, j| vectors[j][i])
}
