//! Problem instances and the derived objects shared across modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Matrix, Tolerance, Vector};

/// Satellite (emitter) positions with their pseudoranges.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub dim: usize,
    pub satellites: Vec<Vector>,
    pub pseudoranges: Vec<f64>,
    pub tol: Tolerance,
}

/// Outcome of [`Scenario::validate`]: the scenario is usable, possibly with
/// exact duplicate `(t, s)` pairs that carry no extra information.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Validation {
    /// Pairs `(first, duplicate)` of identical satellites.
    pub duplicates: Vec<(usize, usize)>,
}

impl Scenario {
    pub fn new(satellites: Vec<Vector>, pseudoranges: Vec<f64>) -> Result<Self> {
        let dim = satellites
            .first()
            .map(|s| s.len())
            .ok_or(Error::NoSatellites)?;
        let sc = Self {
            dim,
            satellites,
            pseudoranges,
            tol: Tolerance::default(),
        };
        sc.validate()?;
        Ok(sc)
    }

    /// Convenience constructor from plain coordinate slices.
    pub fn from_slices(points: &[&[f64]], pseudoranges: &[f64]) -> Result<Self> {
        Self::new(
            points
                .iter()
                .map(|p| Vector::from_column_slice(p))
                .collect(),
            pseudoranges.to_vec(),
        )
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn len(&self) -> usize {
        self.satellites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.satellites.is_empty()
    }

    pub fn validate(&self) -> Result<Validation> {
        self.tol.validate()?;
        if self.dim == 0 {
            return Err(Error::DimensionMismatch {
                what: "ambient dimension".into(),
                expected: 1,
                found: 0,
            });
        }
        if self.satellites.is_empty() {
            return Err(Error::NoSatellites);
        }
        if self.pseudoranges.len() != self.satellites.len() {
            return Err(Error::DimensionMismatch {
                what: "pseudorange list".into(),
                expected: self.satellites.len(),
                found: self.pseudoranges.len(),
            });
        }
        for (i, s) in self.satellites.iter().enumerate() {
            if s.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    what: format!("satellite {i}"),
                    expected: self.dim,
                    found: s.len(),
                });
            }
            if s.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite(format!("satellite {i}")));
            }
            if !self.pseudoranges[i].is_finite() {
                return Err(Error::NonFinite(format!("pseudorange {i}")));
            }
        }
        let mut duplicates = Vec::new();
        for j in 1..self.len() {
            if let Some(i) = (0..j).find(|&i| {
                self.satellites[i] == self.satellites[j]
                    && self.pseudoranges[i] == self.pseudoranges[j]
            }) {
                duplicates.push((i, j));
            }
        }
        Ok(Validation { duplicates })
    }

    /// `max(|s_i|, |t_i|, 1)`, the length scale used by residual thresholds.
    pub fn scale(&self) -> f64 {
        self.satellites
            .iter()
            .zip(&self.pseudoranges)
            .fold(1.0_f64, |acc, (s, t)| acc.max(s.norm()).max(t.abs()))
    }

    /// Largest violation of the squared equations at `(b, x)`.
    pub fn squared_residual(&self, b: f64, x: &Vector) -> f64 {
        self.satellites
            .iter()
            .zip(&self.pseudoranges)
            .map(|(s, t)| ((s - x).norm_squared() - (t - b).powi(2)).abs())
            .fold(0.0, f64::max)
    }

    /// Smallest `t_i - b`; nonnegative exactly when `(b, x)` satisfies the
    /// unsquared equations (given it satisfies the squared ones).
    pub fn min_slack(&self, b: f64) -> f64 {
        self.pseudoranges
            .iter()
            .map(|t| t - b)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn lifted_system(&self) -> LiftedSystem {
        LiftedSystem::build(self)
    }
}

/// The linearized system: rows `(-2t_i, 2s_i^T, -1)` of `a`, rows
/// `(2s_i^T, -1)` of `b`, and right-hand side `|s_i|^2 - t_i^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedSystem {
    pub a: Matrix,
    pub b: Matrix,
    pub rhs: Vector,
}

impl LiftedSystem {
    pub fn build(sc: &Scenario) -> Self {
        let (m, n) = (sc.len(), sc.dim);
        let mut a = Matrix::zeros(m, n + 2);
        let mut b = Matrix::zeros(m, n + 1);
        let mut rhs = Vector::zeros(m);
        for (i, (s, &t)) in sc.satellites.iter().zip(&sc.pseudoranges).enumerate() {
            a[(i, 0)] = -2.0 * t;
            for j in 0..n {
                a[(i, j + 1)] = 2.0 * s[j];
                b[(i, j)] = 2.0 * s[j];
            }
            a[(i, n + 1)] = -1.0;
            b[(i, n)] = -1.0;
            rhs[i] = s.norm_squared() - t * t;
        }
        Self { a, b, rhs }
    }

    pub fn rows(&self) -> usize {
        self.a.nrows()
    }
}

/// The canonical vectors and scalars every formula is evaluated in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Frame {
    /// `rank(B) = rank(A)`: `t_i = <u, s_i> - alpha`, `B (v; beta) = rhs`.
    FullRank {
        #[serde(with = "crate::serde_vec::vector")]
        u: Vector,
        alpha: f64,
        #[serde(with = "crate::serde_vec::vector")]
        v: Vector,
        beta: f64,
        #[serde(with = "crate::serde_vec::vectors")]
        w: Vec<Vector>,
        gamma: Vec<f64>,
    },
    /// `rank(B) = rank(A) - 1`: the bias is pinned to `b0`.
    RankDeficient {
        b0: f64,
        #[serde(with = "crate::serde_vec::vector")]
        v: Vector,
        beta: f64,
        #[serde(with = "crate::serde_vec::vectors")]
        w: Vec<Vector>,
        gamma: Vec<f64>,
    },
}

impl Frame {
    pub fn v(&self) -> &Vector {
        match self {
            Frame::FullRank { v, .. } | Frame::RankDeficient { v, .. } => v,
        }
    }

    pub fn beta(&self) -> f64 {
        match self {
            Frame::FullRank { beta, .. } | Frame::RankDeficient { beta, .. } => *beta,
        }
    }

    /// Orthonormal basis of the complement of the satellites' direction space.
    pub fn w(&self) -> &[Vector] {
        match self {
            Frame::FullRank { w, .. } | Frame::RankDeficient { w, .. } => w,
        }
    }

    pub fn gamma(&self) -> &[f64] {
        match self {
            Frame::FullRank { gamma, .. } | Frame::RankDeficient { gamma, .. } => gamma,
        }
    }

    pub fn k(&self) -> usize {
        self.w().len()
    }

    pub fn dim(&self) -> usize {
        self.v().len()
    }

    pub fn u(&self) -> Option<&Vector> {
        match self {
            Frame::FullRank { u, .. } => Some(u),
            Frame::RankDeficient { .. } => None,
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            Frame::FullRank { alpha, .. } => Some(*alpha),
            Frame::RankDeficient { .. } => None,
        }
    }

    pub fn b0(&self) -> Option<f64> {
        match self {
            Frame::RankDeficient { b0, .. } => Some(*b0),
            Frame::FullRank { .. } => None,
        }
    }

    /// Eccentricity parameter `e = |u|` (full-rank branch only).
    pub fn e(&self) -> Option<f64> {
        self.u().map(|u| u.norm())
    }

    /// `<u, v> - alpha`, the linear coefficient shared by `g` and `h`.
    pub fn uv_minus_alpha(&self) -> Option<f64> {
        match self {
            Frame::FullRank { u, alpha, v, .. } => Some(u.dot(v) - alpha),
            Frame::RankDeficient { .. } => None,
        }
    }

    /// Largest violation of `<s, w_j> = gamma_j`.
    pub fn affine_violation(&self, s: &Vector) -> f64 {
        self.w()
            .iter()
            .zip(self.gamma())
            .map(|(w, g)| (w.dot(s) - g).abs())
            .fold(0.0, f64::max)
    }
}

/// Diagonal quadratic polynomial `sum_i square[i] p_i^2 + linear[i] p_i + constant`.
///
/// Every polynomial arising here (`g`, `h`, and the rank-deficient sphere
/// equation) is diagonal in its natural coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub square: Vec<f64>,
    pub linear: Vec<f64>,
    pub constant: f64,
}

impl QuadraticForm {
    pub fn eval(&self, p: &[f64]) -> f64 {
        debug_assert_eq!(p.len(), self.square.len());
        self.square
            .iter()
            .zip(&self.linear)
            .zip(p)
            .map(|((q, l), x)| q * x * x + l * x)
            .sum::<f64>()
            + self.constant
    }

    pub fn gradient(&self, p: &[f64]) -> Vec<f64> {
        self.square
            .iter()
            .zip(&self.linear)
            .zip(p)
            .map(|((q, l), x)| 2.0 * q * x + l)
            .collect()
    }

    pub fn nparams(&self) -> usize {
        self.square.len()
    }
}

/// Eccentricity, with the affine-subspace case kept out of the reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Eccentricity {
    Finite(f64),
    Infinite,
}

impl Eccentricity {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Eccentricity::Finite(e) => Some(*e),
            Eccentricity::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadricKind {
    ProlateSpheroid,
    HyperboloidTwoSheets,
    ParaboloidOfRevolution,
    Sphere,
    AffineSubspace,
    Line,
    PairOfPoints,
    SinglePoint,
    Empty,
    FullSpace,
    HyperboloidOneSheet,
    Cone,
    Cylinder,
}

/// Affine subspace given by a base point and an orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineSpan {
    #[serde(with = "crate::serde_vec::vector")]
    pub base: Vector,
    #[serde(with = "crate::serde_vec::vectors")]
    pub basis: Vec<Vector>,
}

impl AffineSpan {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Distance from `p` to the affine subspace.
    pub fn distance(&self, p: &Vector) -> f64 {
        let d = p - &self.base;
        let proj: Vector = self
            .basis
            .iter()
            .map(|b| b * b.dot(&d))
            .fold(Vector::zeros(d.len()), |a, x| a + x);
        (d - proj).norm()
    }

    pub fn coordinates(&self, p: &Vector) -> Vec<f64> {
        let d = p - &self.base;
        self.basis.iter().map(|b| b.dot(&d)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    #[serde(with = "crate::serde_vec::vector")]
    pub point: Vector,
    /// Unit direction.
    #[serde(with = "crate::serde_vec::vector")]
    pub direction: Vector,
}

/// A classified quadric with its geometric parameters.
///
/// For spheroids and hyperboloids `semiaxis_a` is the distance from the center
/// to the vertices and `semiaxis_b` the transverse one. For the one-sheet
/// hyperboloid `semiaxis_b` is the waist radius and `semiaxis_a` the conjugate
/// semiaxis; for the cone the half-opening slope is `semiaxis_b / semiaxis_a`;
/// for spheres and cylinders `semiaxis_b` is the radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadricDescriptor {
    pub kind: QuadricKind,
    /// For point sets (`PairOfPoints`, `SinglePoint`) that arise as
    /// zero-dimensional members of a family, the kind of that family.
    pub family: Option<QuadricKind>,
    pub ambient: AffineSpan,
    pub axis: Option<Axis>,
    #[serde(with = "crate::serde_vec::opt_vector")]
    pub center: Option<Vector>,
    #[serde(with = "crate::serde_vec::vectors")]
    pub vertices: Vec<Vector>,
    #[serde(with = "crate::serde_vec::vectors")]
    pub foci: Vec<Vector>,
    /// Explicit points for point-set kinds.
    #[serde(with = "crate::serde_vec::vectors")]
    pub points: Vec<Vector>,
    pub semiaxis_a: Option<f64>,
    pub semiaxis_b: Option<f64>,
    pub eccentricity: Option<Eccentricity>,
    pub semilatus_rectum: Option<f64>,
    pub near_parabolic: bool,
}

impl QuadricDescriptor {
    pub(crate) fn bare(kind: QuadricKind, ambient: AffineSpan) -> Self {
        Self {
            kind,
            family: None,
            ambient,
            axis: None,
            center: None,
            vertices: Vec::new(),
            foci: Vec::new(),
            points: Vec::new(),
            semiaxis_a: None,
            semiaxis_b: None,
            eccentricity: None,
            semilatus_rectum: None,
            near_parabolic: false,
        }
    }
}

/// Time assigned to a satellite position on the locus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum TimeMap {
    /// `t = <u, s> - alpha`.
    Affine {
        #[serde(with = "crate::serde_vec::vector")]
        u: Vector,
        alpha: f64,
    },
    /// `(t - b0)^2 = |s - v|^2 + beta - |v|^2`, two-valued.
    TwoValued {
        b0: f64,
        #[serde(with = "crate::serde_vec::vector")]
        v: Vector,
        offset: f64,
    },
    /// `t = b0 +- |s - x0|` for a single solution `(b0, x0)`.
    Cone {
        b0: f64,
        #[serde(with = "crate::serde_vec::vector")]
        x0: Vector,
    },
    /// Every `t` is admissible (empty solution set).
    Any,
}

impl TimeMap {
    /// Admissible times for a position `s`.
    pub fn times(&self, s: &Vector) -> Vec<f64> {
        match self {
            TimeMap::Affine { u, alpha } => vec![u.dot(s) - alpha],
            TimeMap::TwoValued { b0, v, offset } => {
                let sq = (s - v).norm_squared() + offset;
                if sq < 0.0 {
                    Vec::new()
                } else {
                    vec![b0 - sq.sqrt(), b0 + sq.sqrt()]
                }
            }
            TimeMap::Cone { b0, x0 } => {
                let r = (s - x0).norm();
                vec![b0 - r, b0 + r]
            }
            TimeMap::Any => Vec::new(),
        }
    }
}

/// The locus of satellites together with its time map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SatelliteLocus {
    pub descriptor: QuadricDescriptor,
    pub time_map: TimeMap,
    /// True when the descriptor is the exact locus; false when it is only the
    /// subset derived from the frame (fewer than two solutions).
    pub complete: bool,
}

/// Number of points of a solution set, as far as the discriminant analysis
/// of the parametrizing polynomial can tell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountHint {
    Zero,
    One,
    Two,
    Infinite,
}

impl CountHint {
    pub fn is_finite(&self) -> bool {
        !matches!(self, CountHint::Infinite)
    }

    pub fn as_number(&self) -> Option<usize> {
        match self {
            CountHint::Zero => Some(0),
            CountHint::One => Some(1),
            CountHint::Two => Some(2),
            CountHint::Infinite => None,
        }
    }
}

/// Scalars derived from a full-rank frame.
///
/// `a = e^2 - 1` (snapped to zero inside the tolerance band), `c = <u,v> - alpha`
/// and `d = |v|^2 - beta`, so that the solution set is
/// `sum y_j^2 + a b^2 + 2 c b + d = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicParameters {
    pub e: f64,
    pub a: f64,
    pub c: f64,
    pub d: f64,
    /// `c / a`; the center is `v - mu u`.
    pub mu: Option<f64>,
    /// `c^2 / a - d`.
    pub rho: Option<f64>,
    /// `-d / (2c)`.
    pub lambda1: Option<f64>,
    /// `lambda1 - c / 2`.
    pub lambda2: Option<f64>,
    pub near_parabolic: bool,
}

/// Explicit description of a nonempty solution set.
///
/// Parameters are `(b, y_1, .., y_k)` when `lead` is present (full-rank
/// branch) and `(y_1, .., y_k)` otherwise; a parameter vector `p` with
/// `poly(p) = 0` is embedded as `b = bias + p_0`, `x = origin + p_0 lead + sum y_j basis_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parametrization {
    pub bias: f64,
    #[serde(with = "crate::serde_vec::vector")]
    pub origin: Vector,
    #[serde(with = "crate::serde_vec::opt_vector")]
    pub lead: Option<Vector>,
    #[serde(with = "crate::serde_vec::vectors")]
    pub basis: Vec<Vector>,
    pub poly: QuadraticForm,
    pub count: CountHint,
    /// The count was decided inside the tolerance band.
    pub near_degenerate: bool,
}

impl Parametrization {
    pub fn embed(&self, p: &[f64]) -> (f64, Vector) {
        debug_assert_eq!(p.len(), self.poly.nparams());
        let mut x = self.origin.clone();
        let mut b = self.bias;
        let ys = match &self.lead {
            Some(u) => {
                b += p[0];
                x.axpy(p[0], u, 1.0);
                &p[1..]
            }
            None => p,
        };
        for (y, w) in ys.iter().zip(&self.basis) {
            x.axpy(*y, w, 1.0);
        }
        (b, x)
    }

    /// `(a, 2c, d)` of the polynomial restricted to the lead parameter, i.e.
    /// `poly = |y|^2 + a p0^2 + 2c p0 + d`; `(0, 0, constant)` without lead.
    fn lead_quadratic(&self) -> (f64, f64, f64) {
        match self.lead {
            Some(_) => (self.poly.square[0], self.poly.linear[0], self.poly.constant),
            None => (0.0, 0.0, self.poly.constant),
        }
    }

    /// All points when the set is finite.
    pub fn points(&self) -> Option<Vec<(f64, Vector)>> {
        let k = self.basis.len();
        let (qa, qb, qc) = self.lead_quadratic();
        let params: Vec<Vec<f64>> = match (self.count, &self.lead) {
            (CountHint::Infinite, _) => return None,
            (CountHint::Zero, _) => Vec::new(),
            (_, None) => {
                // Sphere of radius^2 = -constant in k dimensions.
                let r2 = (-qc).max(0.0);
                match (self.count, k) {
                    (CountHint::One, _) => vec![vec![0.0; k]],
                    (CountHint::Two, 1) => vec![vec![-r2.sqrt()], vec![r2.sqrt()]],
                    _ => return None,
                }
            }
            (CountHint::One, Some(_)) if k > 0 => {
                let mut p = vec![0.0; k + 1];
                p[0] = -qb / (2.0 * qa);
                vec![p]
            }
            (_, Some(_)) => {
                let roots = quadratic_roots(qa, qb, qc, self.count);
                roots
                    .into_iter()
                    .map(|r| {
                        let mut p = vec![0.0; k + 1];
                        p[0] = r;
                        p
                    })
                    .collect()
            }
        };
        Some(params.iter().map(|p| self.embed(p)).collect())
    }

    /// Random points of the set, drawn from a bounded window of the lead
    /// parameter when the set is unbounded.
    pub fn sample<R: rand::Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Vec<(f64, Vector)> {
        if let Some(points) = self.points() {
            if points.is_empty() {
                return points;
            }
            return (0..count)
                .map(|i| points[i % points.len()].clone())
                .collect();
        }
        let k = self.basis.len();
        let (qa, qb, qc) = self.lead_quadratic();
        (0..count)
            .map(|_| {
                let (p0, rest) = match self.lead {
                    Some(_) => {
                        let p0 = sample_lead(qa, qb, qc, rng);
                        (Some(p0), -(qa * p0 * p0 + qb * p0 + qc))
                    }
                    None => (None, -qc),
                };
                let y = random_direction(k, rng) * rest.max(0.0).sqrt();
                let mut p: Vec<f64> = p0.into_iter().collect();
                p.extend(y.iter());
                self.embed(&p)
            })
            .collect()
    }
}

/// Real roots of `a x^2 + b x + c`, as many as `count` says (`a` may be zero).
fn quadratic_roots(a: f64, b: f64, c: f64, count: CountHint) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { Vec::new() } else { vec![-c / b] };
    }
    let disc = (b * b - 4.0 * a * c).max(0.0);
    if count == CountHint::One {
        return vec![-b / (2.0 * a)];
    }
    // Stable form avoiding cancellation.
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (mut r1, mut r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    vec![r1, r2]
}

/// Lead parameter `p0` with `a p0^2 + b p0 + c <= 0`.
fn sample_lead<R: rand::Rng + ?Sized>(a: f64, b: f64, c: f64, rng: &mut R) -> f64 {
    let disc = b * b - 4.0 * a * c;
    let width = |half: f64| 3.0 * half.max(1.0);
    if a > 0.0 {
        let mid = -b / (2.0 * a);
        let half = disc.max(0.0).sqrt() / (2.0 * a);
        mid + half * rng.random_range(-1.0..=1.0)
    } else if a < 0.0 {
        let mid = -b / (2.0 * a);
        if disc <= 0.0 {
            let w = width((c / a).abs().sqrt());
            mid + w * rng.random_range(-1.0..=1.0)
        } else {
            let half = disc.sqrt() / (2.0 * a.abs());
            let out = width(half) * rng.random::<f64>();
            if rng.random::<bool>() {
                mid + half + out
            } else {
                mid - half - out
            }
        }
    } else if b != 0.0 {
        // b p0 + c <= 0.
        let root = -c / b;
        let w = width((c / b).abs()) * rng.random::<f64>();
        root - b.signum() * w
    } else {
        width(1.0) * rng.random_range(-1.0..=1.0)
    }
}

pub(crate) fn random_direction<R: rand::Rng + ?Sized>(k: usize, rng: &mut R) -> Vector {
    loop {
        let v = Vector::from_fn(k, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
        let n = v.norm();
        if k == 0 {
            return v;
        }
        if n > 1e-12 {
            return v / n;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionSet {
    Empty,
    Parametrized(Parametrization),
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Empty)
    }

    pub fn count(&self) -> CountHint {
        match self {
            SolutionSet::Empty => CountHint::Zero,
            SolutionSet::Parametrized(p) => p.count,
        }
    }

    pub fn parametrization(&self) -> Option<&Parametrization> {
        match self {
            SolutionSet::Empty => None,
            SolutionSet::Parametrized(p) => Some(p),
        }
    }

    pub fn points(&self) -> Option<Vec<(f64, Vector)>> {
        match self {
            SolutionSet::Empty => Some(Vec::new()),
            SolutionSet::Parametrized(p) => p.points(),
        }
    }

    pub fn sample<R: rand::Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Vec<(f64, Vector)> {
        match self {
            SolutionSet::Empty => Vec::new(),
            SolutionSet::Parametrized(p) => p.sample(count, rng),
        }
    }
}
