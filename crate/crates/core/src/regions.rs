//! Regions `K` (disks, half-planes, exteriors of disks), the minimum
//! enclosing disk of a point set, and the containment certificate
//! `Z(Q) ⊂ xi - K * Z(S)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::roots::RootSet;

/// Absolute tolerance on the membership margin used by default.
pub const DEFAULT_CONTAINMENT_TOL: f64 = 1e-6;

/// Smallest admissible modulus for a zero of `S`.
const S_ZERO_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Disk,
    HalfPlane,
    ExteriorDisk,
}

/// A disk, a half-plane or the exterior of a disk.
///
/// For half-planes `center` is a point on the boundary line and `normal`
/// is the unit outward normal. The `closed` flag is carried as metadata;
/// membership is decided on a tolerance band either way.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RegionRepr", into = "RegionRepr")]
pub struct Region {
    pub kind: RegionKind,
    pub center: Complex64,
    pub radius: f64,
    pub normal: Complex64,
    pub closed: bool,
}

#[derive(Serialize, Deserialize)]
struct RegionRepr {
    kind: RegionKind,
    center: Complex64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normal: Option<Complex64>,
    #[serde(default = "default_closed")]
    closed: bool,
}

fn default_closed() -> bool {
    true
}

impl TryFrom<RegionRepr> for Region {
    type Error = Error;

    fn try_from(r: RegionRepr) -> Result<Self> {
        let region = match r.kind {
            RegionKind::Disk | RegionKind::ExteriorDisk => Region {
                kind: r.kind,
                center: r.center,
                radius: r
                    .radius
                    .ok_or_else(|| Error::InvalidRegion("missing radius".into()))?,
                normal: Complex64::new(0.0, 0.0),
                closed: r.closed,
            },
            RegionKind::HalfPlane => Region {
                kind: r.kind,
                center: r.center,
                radius: 0.0,
                normal: r
                    .normal
                    .ok_or_else(|| Error::InvalidRegion("missing normal".into()))?,
                closed: r.closed,
            },
        };
        region.validate()?;
        Ok(region)
    }
}

impl From<Region> for RegionRepr {
    fn from(r: Region) -> Self {
        let half = r.kind == RegionKind::HalfPlane;
        RegionRepr {
            kind: r.kind,
            center: r.center,
            radius: (!half).then_some(r.radius),
            normal: half.then_some(r.normal),
            closed: r.closed,
        }
    }
}

impl Region {
    pub fn disk(center: Complex64, radius: f64, closed: bool) -> Self {
        Region {
            kind: RegionKind::Disk,
            center,
            radius,
            normal: Complex64::new(0.0, 0.0),
            closed,
        }
    }

    pub fn exterior_disk(center: Complex64, radius: f64, closed: bool) -> Self {
        Region {
            kind: RegionKind::ExteriorDisk,
            ..Self::disk(center, radius, closed)
        }
    }

    /// Half-plane through `boundary` whose outward normal is `normal`
    /// (normalized here).
    pub fn half_plane(boundary: Complex64, normal: Complex64, closed: bool) -> Self {
        Region {
            kind: RegionKind::HalfPlane,
            center: boundary,
            radius: 0.0,
            normal: normal / normal.norm(),
            closed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.center.is_finite() {
            return Err(Error::InvalidRegion("non-finite center".into()));
        }
        match self.kind {
            RegionKind::Disk | RegionKind::ExteriorDisk => {
                if !(self.radius >= 0.0 && self.radius.is_finite()) {
                    return Err(Error::InvalidRegion(format!("radius {} < 0", self.radius)));
                }
            }
            RegionKind::HalfPlane => {
                if (self.normal.norm() - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidRegion("normal must have unit modulus".into()));
                }
            }
        }
        Ok(())
    }

    /// Signed membership margin; nonnegative means inside.
    pub fn margin(&self, z: Complex64) -> f64 {
        match self.kind {
            RegionKind::Disk => self.radius - (z - self.center).norm(),
            RegionKind::ExteriorDisk => (z - self.center).norm() - self.radius,
            RegionKind::HalfPlane => -(self.normal.conj() * (z - self.center)).re,
        }
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.margin(z) >= -tol
    }
}

/// Membership margin of `z` in `k`; see [`Region::margin`].
pub fn region_contains(k: &Region, z: Complex64) -> f64 {
    k.margin(z)
}

/// Minimum enclosing closed disk (Welzl's algorithm, incremental form).
pub fn enclosing_disk(points: &[Complex64]) -> Result<Region> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let inside =
        |d: &Circle, p: Complex64| (p - d.center).norm() <= d.radius * (1.0 + 1e-14) + 1e-15;
    let mut disk = Circle::point(points[0]);
    for i in 1..points.len() {
        if inside(&disk, points[i]) {
            continue;
        }
        disk = Circle::point(points[i]);
        for j in 0..i {
            if inside(&disk, points[j]) {
                continue;
            }
            disk = Circle::diameter(points[i], points[j]);
            for l in 0..j {
                if !inside(&disk, points[l]) {
                    disk = Circle::through(points[i], points[j], points[l]);
                }
            }
        }
    }
    // pad so every input is inside up to rounding
    let radius = points
        .iter()
        .map(|p| (p - disk.center).norm())
        .fold(disk.radius, f64::max);
    Ok(Region::disk(disk.center, radius, true))
}

#[derive(Debug, Clone, Copy)]
struct Circle {
    center: Complex64,
    radius: f64,
}

impl Circle {
    fn point(p: Complex64) -> Self {
        Circle {
            center: p,
            radius: 0.0,
        }
    }

    fn diameter(a: Complex64, b: Complex64) -> Self {
        let center = (a + b) * 0.5;
        Circle {
            center,
            radius: (a - center).norm().max((b - center).norm()),
        }
    }

    /// Circumcircle, or the widest diameter circle when the points are
    /// collinear.
    fn through(a: Complex64, b: Complex64, c: Complex64) -> Self {
        let (bx, by) = (b.re - a.re, b.im - a.im);
        let (cx, cy) = (c.re - a.re, c.im - a.im);
        let d = 2.0 * (bx * cy - by * cx);
        let scale = (bx * bx + by * by).max(cx * cx + cy * cy);
        if d.abs() <= 1e-14 * scale {
            let pairs = [
                Self::diameter(a, b),
                Self::diameter(a, c),
                Self::diameter(b, c),
            ];
            return pairs
                .into_iter()
                .max_by(|x, y| x.radius.total_cmp(&y.radius))
                .unwrap();
        }
        let b2 = bx * bx + by * by;
        let c2 = cx * cx + cy * cy;
        let ux = (cy * b2 - by * c2) / d;
        let uy = (bx * c2 - cx * b2) / d;
        let center = a + Complex64::new(ux, uy);
        let radius = [a, b, c]
            .iter()
            .map(|p| (p - center).norm())
            .fold(0.0, f64::max);
        Circle { center, radius }
    }
}

/// Witness for one zero of `Q`: the zero of `S` whose quotient lands
/// deepest inside `K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub zeta: Complex64,
    pub beta: Complex64,
    /// `(xi - zeta) / beta`.
    pub quotient: Complex64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub contained: bool,
    pub witnesses: Vec<Witness>,
    /// Largest amount by which a zero misses `K` (zero when all are inside).
    pub max_violation: f64,
    /// Tolerance the report was evaluated at.
    pub tol: f64,
}

/// Checks `Z(Q) ⊂ xi - K * Z(S)`: every zero `zeta` of `Q` must admit a
/// zero `beta` of `S` with `(xi - zeta) / beta` in `K` up to `tol`.
pub fn localization_check(
    q_zeros: &RootSet,
    xi: Complex64,
    k: &Region,
    s_zeros: &RootSet,
    tol: f64,
) -> Result<LocalizationReport> {
    if s_zeros.is_empty() {
        return Err(Error::EmptyRootSet);
    }
    if let Some(idx) = s_zeros.roots.iter().position(|b| b.norm() <= S_ZERO_FLOOR) {
        return Err(Error::SZeroAtOrigin(idx));
    }
    let witnesses = par::map(&q_zeros.roots, |&zeta| {
        s_zeros
            .roots
            .iter()
            .map(|&beta| {
                let quotient = (xi - zeta) / beta;
                Witness {
                    zeta,
                    beta,
                    quotient,
                    margin: k.margin(quotient),
                }
            })
            .reduce(|best, w| if w.margin > best.margin { w } else { best })
            .expect("S has at least one zero")
    });
    let worst = witnesses
        .iter()
        .map(|w| w.margin)
        .fold(f64::INFINITY, f64::min);
    let contained = witnesses.iter().all(|w| w.margin >= -tol);
    Ok(LocalizationReport {
        contained,
        witnesses,
        max_violation: if worst.is_finite() {
            (-worst).max(0.0)
        } else {
            0.0
        },
        tol,
    })
}

/// Radius `|xi| + (|xi| + 1)(k + 1)` of the disk about the origin that
/// holds every zero of the polar polynomial when the zeros of `P` lie in the
/// unit disk.
pub fn polar_zero_bound(xi: Complex64, k: usize) -> f64 {
    let a = xi.norm();
    a + (a + 1.0) * (k as f64 + 1.0)
}
