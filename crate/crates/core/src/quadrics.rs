//! Classification of the quadric of solutions and the quadric of satellites.
//!
//! Both quadrics are surfaces of revolution about the same axis `v + R u`
//! with the common center `c = v - mu u`; the solution quadric lives in
//! `v + span(u, w_1, .., w_k)` and the satellite quadric in the satellites'
//! affine span `v + U`.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    random_direction, AffineSpan, Axis, ConicParameters, CountHint, Eccentricity, Frame,
    QuadricDescriptor, QuadricKind, SatelliteLocus, SolutionSet, TimeMap,
};
use crate::numerics::{orthonormal_complement, orthonormal_span, Tolerance, Vector};
use crate::solver::Solution;

use QuadricKind::*;

fn sign_band(x: f64, eps: f64) -> Ordering {
    if x.abs() <= eps {
        Ordering::Equal
    } else if x > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn solution_ambient(frame: &Frame) -> AffineSpan {
    let mut basis = Vec::new();
    if let Some(u) = frame.u() {
        if u.norm() > 0.0 {
            basis.push(u / u.norm());
        }
    }
    basis.extend(frame.w().iter().cloned());
    let tol = Tolerance::default();
    AffineSpan {
        base: frame.v().clone(),
        basis: orthonormal_span(&basis, frame.dim(), &tol).unwrap_or(basis),
    }
}

fn satellite_ambient(frame: &Frame) -> AffineSpan {
    let tol = Tolerance::default();
    AffineSpan {
        base: frame.v().clone(),
        basis: orthonormal_complement(frame.w(), frame.dim(), &tol)
            .expect("frame vectors are finite"),
    }
}

/// Which of the two dual quadrics a descriptor is built for. The formulas
/// differ only in where the factor `e` goes.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Solutions,
    Satellites,
}

/// Descriptor of a surface of revolution about `v + R u` from the conic
/// parameters, for a full-rank frame with `u != 0`.
fn revolution(
    side: Side,
    p: &ConicParameters,
    u: &Vector,
    v: &Vector,
    transverse: usize,
    eps: (f64, f64),
    ambient: AffineSpan,
) -> QuadricDescriptor {
    let (eps_c, eps_d) = eps;
    let e = p.e;
    let uhat = u / e;
    let mut q = QuadricDescriptor::bare(Empty, ambient);
    q.axis = Some(Axis {
        point: v.clone(),
        direction: uhat.clone(),
    });
    q.near_parabolic = p.near_parabolic;

    if p.a == 0.0 {
        if p.c.abs() > eps_c {
            let (l1, l2) = (p.lambda1.unwrap(), p.lambda2.unwrap());
            let (vertex_at, focus_at) = match side {
                Side::Solutions => (l1, l2),
                Side::Satellites => (l2, l1),
            };
            let vertex = v + u * vertex_at;
            q.kind = ParaboloidOfRevolution;
            q.foci = vec![v + u * focus_at];
            q.eccentricity = Some(Eccentricity::Finite(1.0));
            q.semilatus_rectum = Some(p.c.abs());
            if transverse == 0 {
                q.kind = SinglePoint;
                q.family = Some(ParaboloidOfRevolution);
                q.points = vec![vertex.clone()];
            }
            q.vertices = vec![vertex];
        } else {
            // Solutions: |y|^2 + d = 0. Satellites: |z|^2 = d.
            let d = match side {
                Side::Solutions => -p.d,
                Side::Satellites => p.d,
            };
            match sign_band(d, eps_d) {
                Ordering::Equal => q.kind = Line,
                Ordering::Greater if transverse > 0 => {
                    q.kind = Cylinder;
                    q.semiaxis_b = Some(d.sqrt());
                }
                _ => q.kind = Empty,
            }
        }
        return q;
    }

    let (mu, rho) = (p.mu.unwrap(), p.rho.unwrap());
    let center = v - u * mu;
    q.center = Some(center.clone());
    // Solutions: |y|^2 + (a/e^2) Z^2 = rho. Satellites: |z|^2 - a Z^2 = -rho.
    // Both read |r|^2 + k Z^2 = rhs.
    let (kz, rhs) = match side {
        Side::Solutions => (p.a / (e * e), rho),
        Side::Satellites => (-p.a, -rho),
    };
    let along = |dist: f64| [&center + &uhat * dist, &center - &uhat * dist];
    match (sign_band(rhs, eps_d), kz > 0.0) {
        (Ordering::Greater, true) => {
            // |r|^2 + kz Z^2 = rhs: prolate spheroid.
            let sa = (rhs / kz).sqrt();
            let sb = rhs.sqrt();
            // Equal to sqrt(1 - sb^2/sa^2) without the cancellation near a sphere.
            let ecc = (1.0 - kz).max(0.0).sqrt();
            q.kind = ProlateSpheroid;
            q.semiaxis_a = Some(sa);
            q.semiaxis_b = Some(sb);
            q.eccentricity = Some(Eccentricity::Finite(ecc));
            q.semilatus_rectum = Some(sb * sb / sa);
            q.vertices = along(sa).to_vec();
            q.foci = along(ecc * sa).to_vec();
        }
        (Ordering::Less, false) => {
            // kz Z^2 - |r|^2 = |rhs| with kz < 0 rewritten: |kz| Z^2 - |r|^2 = -rhs.
            let sa = (rhs / kz).sqrt();
            let sb = (-rhs).sqrt();
            let ecc = (1.0 - kz).sqrt();
            q.kind = HyperboloidTwoSheets;
            q.semiaxis_a = Some(sa);
            q.semiaxis_b = Some(sb);
            q.eccentricity = Some(Eccentricity::Finite(ecc));
            q.semilatus_rectum = Some(sb * sb / sa);
            q.vertices = along(sa).to_vec();
            q.foci = along(ecc * sa).to_vec();
        }
        (Ordering::Greater, false) => {
            q.kind = HyperboloidOneSheet;
            q.semiaxis_b = Some(rhs.sqrt());
            q.semiaxis_a = Some((rhs / -kz).sqrt());
        }
        (Ordering::Equal, false) => {
            q.kind = Cone;
            q.vertices = vec![center.clone()];
            q.semiaxis_a = Some(1.0);
            q.semiaxis_b = Some((-kz).sqrt());
        }
        (Ordering::Equal, true) => {
            q.kind = SinglePoint;
            q.points = vec![center.clone()];
            q.vertices = vec![center.clone()];
        }
        (Ordering::Less, true) => q.kind = Empty,
    }
    if transverse == 0 {
        match q.kind {
            ProlateSpheroid | HyperboloidTwoSheets => {
                q.family = Some(q.kind);
                q.kind = PairOfPoints;
                q.points = q.vertices.clone();
            }
            Cone => {
                q.family = Some(Cone);
                q.kind = SinglePoint;
                q.points = vec![center];
            }
            HyperboloidOneSheet => q.kind = Empty,
            _ => {}
        }
    }
    q
}

/// A sphere of squared radius `r2` about `center` inside `ambient`, with the
/// point kinds it degenerates to in dimension 0 and 1.
fn sphere(center: &Vector, r2: f64, eps_d: f64, ambient: AffineSpan) -> QuadricDescriptor {
    let dim = ambient.dim();
    let mut q = QuadricDescriptor::bare(Empty, ambient);
    match sign_band(r2, eps_d) {
        Ordering::Less => return q,
        Ordering::Equal => {
            q.kind = SinglePoint;
            q.family = Some(Sphere);
            q.points = vec![center.clone()];
        }
        Ordering::Greater => {
            let r = r2.sqrt();
            q.kind = Sphere;
            q.semiaxis_a = Some(r);
            q.semiaxis_b = Some(r);
            q.eccentricity = Some(Eccentricity::Finite(0.0));
            if dim == 0 {
                q.kind = Empty;
            } else if dim == 1 {
                let w = &q.ambient.basis[0];
                q.kind = PairOfPoints;
                q.family = Some(Sphere);
                q.points = vec![center + w * r, center - w * r];
            }
        }
    }
    q.center = Some(center.clone());
    q
}

fn affine(ambient: AffineSpan, n: usize) -> QuadricDescriptor {
    let kind = match ambient.dim() {
        0 => SinglePoint,
        d if d == n => FullSpace,
        _ => AffineSubspace,
    };
    let mut q = QuadricDescriptor::bare(kind, ambient);
    q.eccentricity = Some(Eccentricity::Infinite);
    if kind == SinglePoint {
        q.points = vec![q.ambient.base.clone()];
    }
    q
}

fn bands(sol: &Solution) -> (f64, f64) {
    let s = sol.scale();
    (sol.tol.geom_abs * s, sol.tol.geom_abs * s * s)
}

fn is_u_zero(sol: &Solution) -> bool {
    sol.conic().is_some_and(|p| p.e <= sol.tol.geom_abs)
}

/// The quadric of solutions `Q_sol`, the projection of the solution set to
/// position space.
pub fn classify_solution_quadric(sol: &Solution) -> QuadricDescriptor {
    let frame = &sol.frame;
    let n = frame.dim();
    let ambient = solution_ambient(frame);
    if sol.set.is_empty() {
        let mut q = QuadricDescriptor::bare(Empty, ambient);
        q.near_parabolic = sol.conic().is_some_and(|p| p.near_parabolic);
        return q;
    }
    let (eps_c, eps_d) = bands(sol);
    match frame {
        Frame::RankDeficient { v, beta, .. } => sphere(v, beta - v.norm_squared(), eps_d, ambient),
        Frame::FullRank { u, v, .. } => {
            if is_u_zero(sol) {
                // Every point of v + U^perp, with the bias from a quadratic.
                let ambient = AffineSpan {
                    base: v.clone(),
                    basis: frame.w().to_vec(),
                };
                return affine(ambient, n);
            }
            let p = sol.conic().expect("full-rank frame");
            let mut q = revolution(Side::Solutions, p, u, v, frame.k(), (eps_c, eps_d), ambient);
            // Keep the point kinds in step with the count of the solution set.
            if frame.k() == 0 {
                if let Some(pts) = sol.set.points() {
                    let kind = match pts.len() {
                        1 => Some(SinglePoint),
                        2 => Some(PairOfPoints),
                        _ => None,
                    };
                    if let Some(kind) = kind.filter(|k| *k != q.kind) {
                        q.family = q.family.or(Some(q.kind));
                        q.kind = kind;
                    }
                    q.points = pts.into_iter().map(|(_, x)| x).collect();
                }
            }
            q
        }
    }
}

/// The satellite quadric `Q_sat'` derived from the frame, with its time map.
///
/// When the solution set has fewer than two points the true locus of
/// satellites is larger; the descriptor is then flagged incomplete and the
/// time map reflects the exact locus (the cone over the single solution, or
/// no constraint at all for an empty set).
pub fn classify_satellite_quadric(sol: &Solution) -> SatelliteLocus {
    let frame = &sol.frame;
    let n = frame.dim();
    let ambient = satellite_ambient(frame);
    let (eps_c, eps_d) = bands(sol);
    let (descriptor, time_map) = match frame {
        Frame::RankDeficient { b0, v, beta, .. } => (
            affine(ambient, n),
            TimeMap::TwoValued {
                b0: *b0,
                v: v.clone(),
                offset: beta - v.norm_squared(),
            },
        ),
        Frame::FullRank { u, alpha, v, .. } => {
            let map = TimeMap::Affine {
                u: u.clone(),
                alpha: *alpha,
            };
            if is_u_zero(sol) {
                let p = sol.conic().expect("full-rank frame");
                (sphere(v, p.d + p.c * p.c, eps_d, ambient), map)
            } else {
                let p = sol.conic().expect("full-rank frame");
                let transverse = ambient.dim().saturating_sub(1);
                (
                    revolution(
                        Side::Satellites,
                        p,
                        u,
                        v,
                        transverse,
                        (eps_c, eps_d),
                        ambient,
                    ),
                    map,
                )
            }
        }
    };
    let (complete, time_map) = match sol.set.count() {
        CountHint::Two | CountHint::Infinite => (true, time_map),
        CountHint::One => {
            let (b0, x0) = sol.set.points().expect("finite set").remove(0);
            (false, TimeMap::Cone { b0, x0 })
        }
        CountHint::Zero => (false, TimeMap::Any),
    };
    SatelliteLocus {
        descriptor,
        time_map,
        complete,
    }
}

/// Outcome of one duality check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub applicable: bool,
    pub ok: bool,
    pub deviation: f64,
}

impl Check {
    fn na() -> Self {
        Self {
            applicable: false,
            ok: true,
            deviation: 0.0,
        }
    }

    fn of(deviation: f64, limit: f64) -> Self {
        Self {
            applicable: true,
            ok: deviation <= limit,
            deviation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    /// The kinds form one of the dual pairs. Only applicable when `Q_sol`
    /// has more than one point.
    pub kinds_paired: Check,
    pub axis_match: Check,
    /// Foci of one quadric against vertices of the other, both ways (relative).
    pub foci_vertex_swap: Check,
    pub eccentricity_product: Option<f64>,
    /// Directions of the two ambient spaces, with the axis removed, are orthogonal.
    pub spans_perpendicular: Check,
    /// The ambient spaces meet exactly in the axis (or, for the sphere and
    /// affine pair, in the sphere's center).
    pub spans_intersection_is_axis: Check,
    /// At every vertex of `Q_sol` the normal points along the axis.
    pub qsol_meets_asat_perpendicularly: Check,
}

impl DualityReport {
    pub fn all_ok(&self) -> bool {
        [
            self.kinds_paired,
            self.axis_match,
            self.foci_vertex_swap,
            self.spans_perpendicular,
            self.spans_intersection_is_axis,
            self.qsol_meets_asat_perpendicularly,
        ]
        .iter()
        .all(|c| c.ok)
            && self
                .eccentricity_product
                .is_none_or(|p| (p - 1.0).abs() <= 1e-6)
    }
}

fn family(q: &QuadricDescriptor) -> QuadricKind {
    q.family.unwrap_or(q.kind)
}

fn paired(sol: QuadricKind, sat: QuadricKind) -> bool {
    matches!(
        (sol, sat),
        (ProlateSpheroid, HyperboloidTwoSheets)
            | (HyperboloidTwoSheets, ProlateSpheroid)
            | (ParaboloidOfRevolution, ParaboloidOfRevolution)
            | (AffineSubspace | FullSpace | SinglePoint | Line, Sphere)
            | (Sphere, AffineSubspace | SinglePoint | Line)
            | (Line, Line)
    )
}

/// Largest distance between matched points of two small point lists,
/// relative to their magnitude.
fn point_set_deviation(a: &[Vector], b: &[Vector]) -> f64 {
    if a.len() != b.len() {
        return f64::MAX;
    }
    let rel = |p: &Vector, q: &Vector| (p - q).norm() / p.norm().max(q.norm()).max(1.0);
    match a.len() {
        0 => 0.0,
        1 => rel(&a[0], &b[0]),
        2 => {
            let straight = rel(&a[0], &b[0]).max(rel(&a[1], &b[1]));
            let crossed = rel(&a[0], &b[1]).max(rel(&a[1], &b[0]));
            straight.min(crossed)
        }
        _ => a
            .iter()
            .map(|p| b.iter().map(|q| rel(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max),
    }
}

/// Singular values of `P^T Q` for two orthonormal bases, descending.
fn principal_cosines(p: &[Vector], q: &[Vector]) -> Vec<f64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let m = crate::numerics::Matrix::from_fn(p.len(), q.len(), |i, j| p[i].dot(&q[j]));
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Checks the duality between the quadric of solutions and the quadric of
/// satellites. Both descriptors must come from the same scenario; this is not
/// (and cannot be) verified.
pub fn duality_report(
    qsol: &QuadricDescriptor,
    qsat: &QuadricDescriptor,
    tol: &Tolerance,
) -> DualityReport {
    let limit = 10.0 * tol.geom_abs;
    let kinds_paired = if matches!(qsol.kind, Empty | SinglePoint) {
        Check::na()
    } else {
        let ok = paired(family(qsol), family(qsat));
        Check::of(if ok { 0.0 } else { 1.0 }, limit)
    };

    let axis_match = match (&qsol.axis, &qsat.axis) {
        (Some(a), Some(b)) => {
            let dir = 1.0 - a.direction.dot(&b.direction).abs();
            let offset = &b.point - &a.point;
            let perp = (&offset - &a.direction * a.direction.dot(&offset)).norm()
                / a.point.norm().max(1.0);
            Check::of(dir.max(perp), limit)
        }
        _ => Check::na(),
    };

    let has_params = |q: &QuadricDescriptor| !q.foci.is_empty() && !q.vertices.is_empty();
    let foci_vertex_swap = if has_params(qsol) && has_params(qsat) {
        let d1 = point_set_deviation(&qsat.foci, &qsol.vertices);
        let d2 = point_set_deviation(&qsol.foci, &qsat.vertices);
        Check::of(d1.max(d2), limit)
    } else {
        Check::na()
    };

    let eccentricity_product = match (qsol.eccentricity, qsat.eccentricity) {
        (Some(Eccentricity::Finite(a)), Some(Eccentricity::Finite(b)))
            if has_params(qsol) && has_params(qsat) =>
        {
            Some(a * b)
        }
        _ => None,
    };

    let (spans_perpendicular, spans_intersection_is_axis) = span_checks(qsol, qsat, limit);

    let qsol_meets_asat_perpendicularly = match &qsol.axis {
        // Isolated points have no tangent directions. On an ambient line that
        // line must then be the axis itself; a point collapsed inside a
        // larger ambient carries no such condition.
        Some(_) if matches!(qsol.kind, PairOfPoints | SinglePoint) && qsol.ambient.dim() > 1 => {
            Check::na()
        }
        Some(axis) if matches!(qsol.kind, PairOfPoints | SinglePoint) => {
            let dev = qsol
                .ambient
                .basis
                .iter()
                .map(|w| (w - &axis.direction * axis.direction.dot(w)).norm())
                .fold(0.0, f64::max);
            Check::of(dev, limit)
        }
        Some(axis) if !qsol.vertices.is_empty() && qsol.kind != Cone => {
            let dev = qsol
                .vertices
                .iter()
                .map(|x| {
                    let g = implicit_gradient(qsol, x);
                    let gn = g.norm();
                    if gn == 0.0 {
                        0.0
                    } else {
                        (&g - &axis.direction * axis.direction.dot(&g)).norm() / gn
                    }
                })
                .fold(0.0, f64::max);
            Check::of(dev, limit)
        }
        _ => Check::na(),
    };

    DualityReport {
        kinds_paired,
        axis_match,
        foci_vertex_swap,
        eccentricity_product,
        spans_perpendicular,
        spans_intersection_is_axis,
        qsol_meets_asat_perpendicularly,
    }
}

fn span_checks(qsol: &QuadricDescriptor, qsat: &QuadricDescriptor, limit: f64) -> (Check, Check) {
    let (a, b) = (&qsol.ambient, &qsat.ambient);
    let cos = principal_cosines(&a.basis, &b.basis);
    match qsol.axis.as_ref().or(qsat.axis.as_ref()) {
        Some(axis) => {
            // One shared direction (the axis), everything else orthogonal.
            let rest = cos.iter().skip(1).copied().fold(0.0, f64::max);
            let shared = cos.first().map_or(1.0, |c| 1.0 - c);
            let along = a
                .distance(&(&axis.point + &axis.direction))
                .max(b.distance(&(&axis.point + &axis.direction)));
            let base =
                a.distance(&axis.point).max(b.distance(&axis.point)) / axis.point.norm().max(1.0);
            (
                Check::of(rest, limit),
                Check::of(shared.max(along).max(base), limit),
            )
        }
        None => {
            // Sphere and affine subspace: complementary, meeting in the center.
            let perp = cos.first().copied().unwrap_or(0.0);
            let center = qsol.center.as_ref().or(qsat.center.as_ref());
            let meet = match center {
                Some(c) => a.distance(c).max(b.distance(c)) / c.norm().max(1.0),
                None => 0.0,
            };
            (Check::of(perp, limit), Check::of(meet, limit))
        }
    }
}

/// Orthonormal basis of the ambient directions orthogonal to the axis.
fn transverse_basis(q: &QuadricDescriptor) -> Vec<Vector> {
    let n = q.ambient.base.len();
    match &q.axis {
        None => q.ambient.basis.clone(),
        Some(axis) => {
            let reduced: Vec<Vector> = q
                .ambient
                .basis
                .iter()
                .map(|b| b - &axis.direction * axis.direction.dot(b))
                .collect();
            orthonormal_span(&reduced, n, &Tolerance::new(1e-8, 1e-9).expect("valid"))
                .unwrap_or_default()
        }
    }
}

/// Axial coordinate and squared transverse distance of `p` (within the
/// ambient span) relative to `origin` and the axis direction.
fn axial(q: &QuadricDescriptor, origin: &Vector, p: &Vector) -> (f64, f64) {
    let d = p - origin;
    let proj = q
        .ambient
        .basis
        .iter()
        .fold(Vector::zeros(d.len()), |acc, b| acc + b * b.dot(&d));
    match &q.axis {
        Some(axis) => {
            let z = axis.direction.dot(&proj);
            (z, (proj.norm_squared() - z * z).max(0.0))
        }
        None => (0.0, proj.norm_squared()),
    }
}

/// Implicit equation of the quadric inside its ambient span; zero exactly on
/// the quadric (points off the ambient span are measured by their projection).
pub fn implicit(q: &QuadricDescriptor, p: &Vector) -> f64 {
    let center = q.center.clone().unwrap_or_else(|| q.ambient.base.clone());
    let (sa, sb) = (q.semiaxis_a.unwrap_or(1.0), q.semiaxis_b.unwrap_or(0.0));
    match q.kind {
        ProlateSpheroid => {
            let (z, r2) = axial(q, &center, p);
            z * z / (sa * sa) + r2 / (sb * sb) - 1.0
        }
        HyperboloidTwoSheets => {
            let (z, r2) = axial(q, &center, p);
            z * z / (sa * sa) - r2 / (sb * sb) - 1.0
        }
        HyperboloidOneSheet => {
            let (z, r2) = axial(q, &center, p);
            r2 / (sb * sb) - z * z / (sa * sa) - 1.0
        }
        Cone => {
            let (z, r2) = axial(q, &center, p);
            r2 - (sb / sa).powi(2) * z * z
        }
        ParaboloidOfRevolution => {
            let vertex = &q.vertices[0];
            let open = (&q.foci[0] - vertex).normalize();
            let l = q.semilatus_rectum.unwrap_or(1.0);
            let d = p - vertex;
            let proj = q
                .ambient
                .basis
                .iter()
                .fold(Vector::zeros(d.len()), |acc, b| acc + b * b.dot(&d));
            let z = open.dot(&proj);
            (proj.norm_squared() - z * z) - 2.0 * l * z
        }
        Sphere => {
            let (_, r2) = axial(q, &center, p);
            r2 - sa * sa
        }
        Cylinder => {
            let axis_point = &q.axis.as_ref().expect("cylinder axis").point;
            let (_, r2) = axial(q, axis_point, p);
            r2 - sb * sb
        }
        Line => match &q.axis {
            Some(axis) => axial(q, &axis.point, p).1,
            None => 0.0,
        },
        AffineSubspace | FullSpace => 0.0,
        PairOfPoints | SinglePoint => q
            .points
            .iter()
            .map(|x| (p - x).norm_squared())
            .fold(f64::INFINITY, f64::min),
        Empty => 1.0,
    }
}

/// Gradient of [`implicit`].
pub fn implicit_gradient(q: &QuadricDescriptor, p: &Vector) -> Vector {
    let project = |d: &Vector| {
        q.ambient
            .basis
            .iter()
            .fold(Vector::zeros(d.len()), |acc, b| acc + b * b.dot(d))
    };
    let center = q.center.clone().unwrap_or_else(|| q.ambient.base.clone());
    let (sa, sb) = (q.semiaxis_a.unwrap_or(1.0), q.semiaxis_b.unwrap_or(0.0));
    // `cz z^2 + cr r^2` about `origin`, with `z` along `dir`.
    let axial_grad = |origin: &Vector, dir: Option<&Vector>, cz: f64, cr: f64| {
        let proj = project(&(p - origin));
        match dir {
            Some(a) => {
                let z = a.dot(&proj);
                (&proj - a * z) * (2.0 * cr) + a * (2.0 * cz * z)
            }
            None => proj * (2.0 * cr),
        }
    };
    let dir = q.axis.as_ref().map(|a| &a.direction);
    match q.kind {
        ProlateSpheroid => axial_grad(&center, dir, 1.0 / (sa * sa), 1.0 / (sb * sb)),
        HyperboloidTwoSheets => axial_grad(&center, dir, 1.0 / (sa * sa), -1.0 / (sb * sb)),
        HyperboloidOneSheet => axial_grad(&center, dir, -1.0 / (sa * sa), 1.0 / (sb * sb)),
        Cone => axial_grad(&center, dir, -(sb / sa).powi(2), 1.0),
        ParaboloidOfRevolution => {
            let vertex = &q.vertices[0];
            let open = (&q.foci[0] - vertex).normalize();
            let l = q.semilatus_rectum.unwrap_or(1.0);
            let proj = project(&(p - vertex));
            let z = open.dot(&proj);
            (&proj - &open * z) * 2.0 - &open * (2.0 * l)
        }
        Sphere => axial_grad(&center, dir, 1.0, 1.0),
        Cylinder => {
            let axis_point = &q.axis.as_ref().expect("cylinder axis").point;
            axial_grad(axis_point, dir, 0.0, 1.0)
        }
        Line => match &q.axis {
            Some(axis) => axial_grad(&axis.point, dir, 0.0, 1.0),
            None => Vector::zeros(p.len()),
        },
        AffineSubspace | FullSpace | Empty => Vector::zeros(p.len()),
        PairOfPoints | SinglePoint => q
            .points
            .iter()
            .min_by(|a, b| (p - *a).norm_squared().total_cmp(&(p - *b).norm_squared()))
            .map_or_else(|| Vector::zeros(p.len()), |x| (p - x) * 2.0),
    }
}

/// Whether `p` lies on the quadric up to `eps` (relative to the quadric's size).
pub fn contains(q: &QuadricDescriptor, p: &Vector, eps: f64) -> bool {
    if q.kind == Empty {
        return false;
    }
    let size = q
        .semiaxis_a
        .unwrap_or(1.0)
        .max(q.semiaxis_b.unwrap_or(1.0))
        .max(1.0);
    let on_ambient = q.ambient.distance(p) <= eps * size.max(p.norm());
    let f = implicit(q, p);
    let scale = match q.kind {
        ProlateSpheroid | HyperboloidTwoSheets | HyperboloidOneSheet => {
            1.0 + (p.norm() / size).powi(2)
        }
        _ => size * size + p.norm_squared(),
    };
    on_ambient && f.abs() <= eps * scale
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    #[serde(with = "crate::serde_vec::vector")]
    pub point: Vector,
    /// `+1` or `-1` for the two sheets of a hyperboloid of two sheets (sign of
    /// the axial coordinate), otherwise absent.
    pub sheet: Option<i8>,
}

/// Deterministic random points on a quadric.
///
/// Unbounded kinds are sampled in a window of three times the relevant
/// semiaxis (or three length units when no semiaxis is defined).
pub fn sample_points(q: &QuadricDescriptor, count: usize, seed: u64) -> Result<Vec<SamplePoint>> {
    if q.kind == Empty {
        return Err(Error::EmptyQuadric);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let transverse = transverse_basis(q);
    let center = q.center.clone().unwrap_or_else(|| q.ambient.base.clone());
    let axis = q.axis.as_ref().map(|a| a.direction.clone());
    let (sa, sb) = (q.semiaxis_a.unwrap_or(1.0), q.semiaxis_b.unwrap_or(1.0));
    let combine = |base: &Vector, z: f64, r: f64, dir: &Vector| -> Vector {
        let mut p = base.clone();
        if let Some(ax) = &axis {
            p.axpy(z, ax, 1.0);
        }
        for (c, t) in dir.iter().zip(&transverse) {
            p.axpy(r * c, t, 1.0);
        }
        p
    };
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let dir = random_direction(transverse.len(), &mut rng);
        let plain = |point| SamplePoint { point, sheet: None };
        let s = match q.kind {
            ProlateSpheroid => {
                let g = random_direction(transverse.len() + 1, &mut rng);
                let r = g.rows(1, transverse.len()).norm();
                let dir = if r > 0.0 {
                    g.rows(1, transverse.len()) / r
                } else {
                    dir
                };
                plain(combine(&center, sa * g[0], sb * r, &dir))
            }
            HyperboloidTwoSheets => {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                let t: f64 = rng.random_range(0.0..=3.0);
                SamplePoint {
                    point: combine(&center, sign * sa * (1.0 + t * t).sqrt(), sb * t, &dir),
                    sheet: Some(sign as i8),
                }
            }
            HyperboloidOneSheet => {
                let t: f64 = rng.random_range(-3.0..=3.0);
                plain(combine(&center, sa * t, sb * (1.0 + t * t).sqrt(), &dir))
            }
            Cone => {
                let t: f64 = rng.random_range(-3.0..=3.0);
                plain(combine(&center, sa * t, sb * t.abs(), &dir))
            }
            ParaboloidOfRevolution => {
                let vertex = &q.vertices[0];
                let open = (&q.foci[0] - vertex).normalize();
                let l = q.semilatus_rectum.unwrap_or(1.0);
                let r: f64 = rng.random_range(0.0..=3.0 * l);
                let mut p = vertex + &open * (r * r / (2.0 * l));
                for (c, t) in dir.iter().zip(&transverse) {
                    p.axpy(r * c, t, 1.0);
                }
                plain(p)
            }
            Sphere => plain(combine(&center, 0.0, sa, &dir)),
            Cylinder => {
                let base = &q.axis.as_ref().expect("cylinder axis").point;
                let z = rng.random_range(-3.0..=3.0) * sb.max(1.0);
                plain(combine(base, z, sb, &dir))
            }
            Line => {
                let base = q.axis.as_ref().map_or(&q.ambient.base, |a| &a.point);
                let z = rng.random_range(-3.0..=3.0);
                match &axis {
                    Some(_) => plain(combine(base, z, 0.0, &dir)),
                    None => plain(base + &q.ambient.basis[0] * z),
                }
            }
            AffineSubspace | FullSpace => {
                let mut p = q.ambient.base.clone();
                for b in &q.ambient.basis {
                    p.axpy(rng.random_range(-3.0..=3.0), b, 1.0);
                }
                plain(p)
            }
            PairOfPoints | SinglePoint => plain(q.points[i % q.points.len()].clone()),
            Empty => unreachable!(),
        };
        out.push(s);
    }
    Ok(out)
}

/// Convenience: both quadrics and their duality report.
pub fn classify(sol: &Solution) -> (QuadricDescriptor, SatelliteLocus, DualityReport) {
    let qsol = classify_solution_quadric(sol);
    let qsat = classify_satellite_quadric(sol);
    let report = duality_report(&qsol, &qsat.descriptor, &sol.tol);
    (qsol, qsat, report)
}

/// Whether the set of solutions fits the kind reported for `Q_sol`.
pub fn kind_matches_set(q: &QuadricDescriptor, set: &SolutionSet) -> bool {
    match (q.kind, set.count()) {
        (Empty, c) => c == CountHint::Zero,
        (_, CountHint::Zero) => false,
        _ => true,
    }
}
