//! All zeros of a complex polynomial by simultaneous Aberth–Ehrlich
//! iteration, followed by a short Newton polish of each root.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::poly::Polynomial;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200;
const POLISH_STEPS: usize = 3;
const VIETA_TOL: f64 = 1e-8;

/// Zeros of a polynomial, with multiplicity, in nondecreasing modulus order
/// (ties broken by ascending argument).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `max |p(root)| / ||p||_inf`.
    pub max_residual: f64,
    pub converged: bool,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Residuals of the first and last Vieta relations against `p`, each
    /// paired with its tolerance: `(sum_err, sum_tol, prod_err, prod_tol)`.
    pub fn vieta(&self, p: &Polynomial) -> (f64, f64, f64, f64) {
        let n = p.degree();
        let lead = p.leading();
        let sum: Complex64 = self.roots.iter().sum();
        let prod: Complex64 = self.roots.iter().product();
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let sum_err = (sum + p.coeff(n.wrapping_sub(1)) / lead).norm();
        let prod_err = (prod - sign * p.coeff(0) / lead).norm();
        let abs_sum: f64 = self.roots.iter().map(|r| r.norm()).sum();
        let abs_prod: f64 = self.roots.iter().map(|r| 1.0 + r.norm()).product();
        (
            sum_err,
            VIETA_TOL * (1.0 + abs_sum),
            prod_err,
            VIETA_TOL * (1.0 + abs_prod),
        )
    }

    pub fn vieta_holds(&self, p: &Polynomial) -> bool {
        let (se, st, pe, pt) = self.vieta(p);
        self.roots.len() == p.degree() && se <= st && pe <= pt
    }
}

/// Largest root modulus.
pub fn max_modulus(rs: &RootSet) -> Result<f64> {
    rs.roots
        .iter()
        .map(|r| r.norm())
        .reduce(f64::max)
        .ok_or(Error::EmptyRootSet)
}

/// `find_roots` with the default tolerance and iteration cap.
pub fn roots_of(p: &Polynomial) -> Result<RootSet> {
    find_roots(p, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

/// Unique positive root of `x^n - sum_{j<n} |a_j| x^j` for monic `p`; every
/// zero of `p` lies in the closed disk of this radius.
pub fn cauchy_radius(p: &Polynomial) -> f64 {
    let monic = p.make_monic();
    let n = monic.degree();
    let abs: Vec<f64> = monic.coeffs()[..n].iter().map(|c| c.norm()).collect();
    let hi0 = 1.0 + abs.iter().copied().fold(0.0, f64::max);
    if abs.iter().all(|&a| a == 0.0) {
        return 0.0;
    }
    // f(x)/x^n is increasing on x > 0, so bisection on the sign is safe
    let f = |x: f64| {
        let tail = abs.iter().rev().fold(0.0, |acc, a| acc * x + a);
        x.powi(n as i32) - tail
    };
    let (mut lo, mut hi) = (0.0, hi0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Simultaneous Aberth–Ehrlich iteration.
///
/// Starting points sit on a circle of the Cauchy radius, rotated off the
/// real axis. A root stops moving once its correction drops below
/// `tol * max(1, |z|)`; `converged` reports whether all of them did within
/// `max_iter` sweeps.
pub fn find_roots(p: &Polynomial, tol: f64, max_iter: usize) -> Result<RootSet> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let monic = p.make_monic();
    let radius = cauchy_radius(&monic);
    if radius == 0.0 {
        return Ok(finish(p, vec![Complex64::new(0.0, 0.0); n], true));
    }

    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];

    for _ in 0..max_iter {
        if done.iter().all(|&d| d) {
            break;
        }
        for i in 0..n {
            if done[i] {
                continue;
            }
            let v = monic.eval_compensated(z[i]);
            let (_, dv) = monic.eval_with_derivative(z[i]);
            if v == Complex64::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let newton = v / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= tol * z[i].norm().max(1.0) {
                done[i] = true;
            }
        }
    }
    let converged = done.iter().all(|&d| d) && z.iter().all(|r| r.is_finite());

    let polished = par::map(&z, |&r| polish(&monic, r));
    Ok(finish(p, polished, converged))
}

fn polish(p: &Polynomial, mut z: Complex64) -> Complex64 {
    let mut residual = p.eval_compensated(z).norm();
    for _ in 0..POLISH_STEPS {
        if residual == 0.0 {
            break;
        }
        let v = p.eval_compensated(z);
        let (_, dv) = p.eval_with_derivative(z);
        let step = v / dv;
        if !step.is_finite() {
            break;
        }
        let candidate = z - step;
        let r = p.eval_compensated(candidate).norm();
        if r >= residual {
            break;
        }
        z = candidate;
        residual = r;
    }
    z
}

fn finish(p: &Polynomial, mut roots: Vec<Complex64>, converged: bool) -> RootSet {
    sort_roots(&mut roots);
    let scale = p.norm_inf();
    let max_residual = roots
        .iter()
        .map(|&r| p.eval_compensated(r).norm() / scale)
        .fold(0.0, f64::max);
    RootSet {
        roots,
        max_residual,
        converged,
    }
}

/// Sorts by modulus (quantized to 1e-9 so conjugate pairs tie), then by
/// argument in (-pi, pi].
pub fn sort_roots(roots: &mut [Complex64]) {
    let key = |z: &Complex64| {
        let arg = if z.im == 0.0 && z.re < 0.0 {
            PI
        } else {
            z.arg()
        };
        ((z.norm() * 1e9).round(), arg)
    };
    roots.sort_by(|a, b| {
        key(a)
            .partial_cmp(&key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}
