//! Polar polynomials.
//!
//! Given a monic `P` of degree `n` and a monic `R` of degree `k`, the
//! polar polynomial is the unique monic `Q` of degree `n` with
//!
//! ```text
//! d^k/dz^k ( R(z) Q(z) ) = (n+1)_k P(z).
//! ```
//!
//! The operator `T_R : Q -> d^k/dz^k (R Q)` maps `z^j` to
//! `(j+1)_k z^j + (lower degree terms)`, so its matrix on the monomial basis
//! is triangular with nonzero diagonal and the system is solved by
//! substitution from the top degree down.
//!
//! For `R = (z - xi)^k` the solution is diagonal in the shifted binomial
//! basis, which gives the identity `Q(xi + w) = P(xi + w) *G S(w)` with the
//! Grace convolution `*G` and the S-polynomial from [`s_poly`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{
    binomial_f64, derivative_k, poly_mul, rising_factorial_f64, taylor_shift, BinomialForm,
    DdPolynomial, Polynomial,
};

/// Relative threshold under which a binomial coefficient counts as zero in
/// [`grace_factorize`].
pub const VANISHING_TOLERANCE: f64 = 1e-10;

/// Reconstruction tolerance enforced by [`grace_factorize`].
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-10;

/// The data `(P, R, k)` of `T_R(Q) = (n+1)_k P`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarProblem {
    pub p: Polynomial,
    pub r: Polynomial,
    /// Set when `r` was built as `(z - xi)^k`.
    pub xi: Option<Complex64>,
}

impl PolarProblem {
    pub fn new(p: Polynomial, r: Polynomial) -> Self {
        PolarProblem { p, r, xi: None }
    }

    /// The problem with `R = (z - xi)^k`.
    pub fn shifted(p: Polynomial, xi: Complex64, k: usize) -> Self {
        PolarProblem {
            p,
            r: Polynomial::linear_power(xi, k),
            xi: Some(xi),
        }
    }

    pub fn n(&self) -> usize {
        self.p.degree()
    }

    pub fn k(&self) -> usize {
        self.r.degree()
    }

    pub fn validate(&self) -> Result<()> {
        check_p(&self.p)?;
        if self.r.degree() == 0 {
            return Err(Error::ZeroOrder);
        }
        if !self.r.is_monic() {
            return Err(Error::NotMonic("R"));
        }
        Ok(())
    }
}

fn check_p(p: &Polynomial) -> Result<()> {
    if p.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic("P"));
    }
    Ok(())
}

/// `T_R(Q) = d^k/dz^k (R Q)` with `k = degree(R)`.
pub fn apply_tr(r: &Polynomial, q: &Polynomial) -> Polynomial {
    derivative_k(&poly_mul(r, q), r.degree())
}

/// Matrix of `T_R` on `{1, z, ..., z^n}`: `m[i][j]` is the coefficient of
/// `z^i` in `T_R(z^j)`. Entries with `i > j` vanish.
pub fn tr_matrix(r: &Polynomial, n: usize) -> Vec<Vec<Complex64>> {
    let columns: Vec<Vec<Complex64>> = (0..=n)
        .map(|j| apply_tr(r, &Polynomial::monomial(j)).padded(n + 1))
        .collect();
    (0..=n)
        .map(|i| (0..=n).map(|j| columns[j][i]).collect())
        .collect()
}

/// The unique monic solution of `T_R(Q) = (n+1)_k P`.
pub fn solve_polar(problem: &PolarProblem) -> Result<Polynomial> {
    problem.validate()?;
    let n = problem.n();
    let k = problem.k() as u64;
    let m = tr_matrix(&problem.r, n);
    let scale = rising_factorial_f64(n as u64 + 1, k);
    let rhs: Vec<Complex64> = problem.p.padded(n + 1).iter().map(|a| a * scale).collect();

    let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
    b[n] = Complex64::new(1.0, 0.0);
    for i in (0..n).rev() {
        let acc: Complex64 = ((i + 1)..=n).map(|j| m[i][j] * b[j]).sum();
        // diagonal entry is exactly (i+1)_k
        b[i] = (rhs[i] - acc) / m[i][i];
    }
    Ok(Polynomial::new(b))
}

/// Solution for `R = (z - xi)^k` computed in the shifted binomial basis,
/// where `beta_j = (n+1)_k / (j+1)_k * alpha_j`.
pub fn solve_polar_shifted(p: &Polynomial, xi: Complex64, k: usize) -> Result<Polynomial> {
    check_p(p)?;
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let n = p.degree() as u64;
    let k = k as u64;
    let top = rising_factorial_f64(n + 1, k);
    // C(n,j) beta_j = C(n,j) alpha_j * ratio_j, so the binomial factors
    // cancel. The shifted coefficients grow like (1 + |xi|)^n and cancel on
    // the way back, so the pipeline runs in double-double.
    let mut work = DdPolynomial::from_poly(p);
    work.shift(xi);
    work.scale_ratio(top, |j| rising_factorial_f64(j as u64 + 1, k));
    work.set_leading_one();
    work.shift(-xi);
    work.set_leading_one();
    Ok(work.to_poly())
}

/// `S(w) = sum_{j=0}^n C(n+k, j+k) w^j`.
pub fn s_poly(n: usize, k: usize) -> Polynomial {
    let (n, k) = (n as u64, k as u64);
    Polynomial::new(
        (0..=n)
            .map(|j| Complex64::new(binomial_f64(n + k, j + k), 0.0))
            .collect(),
    )
}

/// Grace (Schur-Szegő) convolution at size `n = max(deg p, deg q)`:
/// `sum C(n,j) a_j b_j w^j` where `a`, `b` are the binomial forms.
pub fn grace_convolve(p: &Polynomial, q: &Polynomial) -> Polynomial {
    grace_convolve_sized(p, q, p.degree().max(q.degree()))
}

/// A polynomial `S_R` with `P(xi + w) *G S_R(w) = Q(xi + w)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraceFactorization {
    pub s_r: Polynomial,
    pub c: BinomialForm,
    /// Max-coefficient residual of the reconvolution, relative to
    /// `||Q(xi + .)||_inf`.
    pub exact_match_error: f64,
}

/// Extracts `S_R` from `P` and `Q` via `c_j = beta_j / alpha_j`, with
/// `c_j = 0` wherever `alpha_j` vanishes. Fails when some `alpha_j` vanishes
/// but the matching `beta_j` does not.
pub fn grace_factorize(
    p: &Polynomial,
    q: &Polynomial,
    xi: Complex64,
) -> Result<GraceFactorization> {
    let n = p.degree();
    if q.degree() != n {
        return Err(Error::DegreeMismatch {
            p: n,
            q: q.degree(),
        });
    }
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let ps = taylor_shift(p, xi);
    let qs = taylor_shift(q, xi);
    let alpha = BinomialForm::of_size(&ps, n);
    let beta = BinomialForm::of_size(&qs, n);
    let max_modulus = |g: &[Complex64]| g.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let alpha_tol = VANISHING_TOLERANCE * max_modulus(&alpha.gamma);
    let beta_tol = VANISHING_TOLERANCE * max_modulus(&beta.gamma);

    let mut c = Vec::with_capacity(n + 1);
    for (j, (a, b)) in alpha.gamma.iter().zip(&beta.gamma).enumerate() {
        if a.norm() <= alpha_tol {
            if b.norm() > beta_tol {
                return Err(Error::FactorizationImpossible {
                    index: j,
                    alpha: *a,
                    beta: *b,
                });
            }
            c.push(Complex64::new(0.0, 0.0));
        } else {
            c.push(b / a);
        }
    }
    let c = BinomialForm { n, gamma: c };
    let s_r = c.to_polynomial();
    let rebuilt = grace_convolve_sized(&ps, &s_r, n);
    let exact_match_error = (&rebuilt - &qs).norm_inf() / qs.norm_inf();
    if exact_match_error.is_nan() || exact_match_error > RECONSTRUCTION_TOLERANCE {
        return Err(Error::ReconstructionFailed(exact_match_error));
    }
    Ok(GraceFactorization {
        s_r,
        c,
        exact_match_error,
    })
}

/// Grace convolution at an explicit size `n` (at least both degrees).
pub fn grace_convolve_sized(p: &Polynomial, q: &Polynomial, n: usize) -> Polynomial {
    debug_assert!(n >= p.degree() && n >= q.degree());
    Polynomial::new(
        (0..=n)
            .map(|j| p.coeff(j) * q.coeff(j) / binomial_f64(n as u64, j as u64))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::binomial_coeffs;

    fn re(c: &[f64]) -> Polynomial {
        Polynomial::from_real(c)
    }

    fn rel_err(a: &Polynomial, b: &Polynomial) -> f64 {
        (a - b).norm_inf() / b.norm_inf()
    }

    const ZERO: Complex64 = Complex64::new(0.0, 0.0);

    #[test]
    fn apply_tr_examples() {
        assert_eq!(
            apply_tr(&re(&[0.0, 1.0]), &Polynomial::monomial(2)),
            re(&[0.0, 0.0, 3.0])
        );
        assert_eq!(
            apply_tr(&Polynomial::monomial(1), &Polynomial::monomial(3)),
            re(&[0.0, 0.0, 0.0, 4.0])
        );
        // (z^2 - z)(z + 1) = z^3 - z, second derivative 6z
        assert_eq!(
            apply_tr(&re(&[0.0, -1.0, 1.0]), &re(&[1.0, 1.0])),
            re(&[0.0, 6.0])
        );
    }

    #[test]
    fn solve_free_case() {
        let pb = PolarProblem::new(Polynomial::monomial(4), Polynomial::monomial(3));
        assert_eq!(solve_polar(&pb).unwrap(), Polynomial::monomial(4));
    }

    #[test]
    fn solve_general_r() {
        let q = solve_polar(&PolarProblem::new(re(&[0.0, 1.0]), re(&[0.0, -1.0, 1.0]))).unwrap();
        assert!(rel_err(&q, &re(&[1.0, 1.0])) < 1e-15);
        let q = solve_polar(&PolarProblem::new(re(&[-0.25, 0.0, 1.0]), re(&[0.0, 1.0]))).unwrap();
        assert!(rel_err(&q, &re(&[-0.75, 0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn solve_errors() {
        let pb = PolarProblem::new(re(&[1.0, 2.0]), Polynomial::monomial(1));
        assert_eq!(solve_polar(&pb), Err(Error::NotMonic("P")));
        let pb = PolarProblem::new(re(&[1.0, 1.0]), re(&[0.0, 3.0]));
        assert_eq!(solve_polar(&pb), Err(Error::NotMonic("R")));
        let pb = PolarProblem::new(re(&[1.0]), Polynomial::monomial(1));
        assert_eq!(solve_polar(&pb), Err(Error::DegreeZero));
        let pb = PolarProblem::new(re(&[1.0, 1.0]), Polynomial::one());
        assert_eq!(solve_polar(&pb), Err(Error::ZeroOrder));
        assert_eq!(
            solve_polar_shifted(&re(&[1.0, 1.0]), ZERO, 0),
            Err(Error::ZeroOrder)
        );
        assert_eq!(
            solve_polar_shifted(&re(&[2.0]), ZERO, 1),
            Err(Error::DegreeZero)
        );
    }

    #[test]
    fn shifted_examples() {
        for k in 1..6 {
            assert_eq!(
                solve_polar_shifted(&Polynomial::monomial(2), ZERO, k).unwrap(),
                Polynomial::monomial(2)
            );
        }
        assert_eq!(
            solve_polar_shifted(&re(&[-0.25, 0.0, 1.0]), ZERO, 1).unwrap(),
            re(&[-0.75, 0.0, 1.0])
        );
        assert_eq!(
            solve_polar_shifted(&Polynomial::monomial(1), ZERO, 1).unwrap(),
            Polynomial::monomial(1)
        );
    }

    #[test]
    fn shifted_matches_general_off_origin() {
        let p = Polynomial::from_roots(&[
            Complex64::new(0.3, -0.2),
            Complex64::new(-0.5, 0.1),
            Complex64::new(0.0, 0.7),
        ]);
        let xi = Complex64::new(1.2, -0.4);
        for k in 1..=4 {
            let fast = solve_polar_shifted(&p, xi, k).unwrap();
            let slow = solve_polar(&PolarProblem::shifted(p.clone(), xi, k)).unwrap();
            assert!(rel_err(&fast, &slow) < 1e-12, "k = {k}");
            assert_eq!(fast.leading(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn s_poly_examples() {
        assert_eq!(s_poly(2, 1), re(&[3.0, 3.0, 1.0]));
        assert_eq!(s_poly(1, 1), re(&[2.0, 1.0]));
        let s = s_poly(2, 2);
        assert_eq!(s, re(&[6.0, 4.0, 1.0]));
        assert_eq!(s.coeff(0).re, 6.0);
    }

    #[test]
    fn grace_convolve_examples() {
        let q = re(&[0.3, -1.0, 2.0, 0.5]);
        let unit = Polynomial::linear_power(Complex64::new(-1.0, 0.0), 3);
        assert!(rel_err(&grace_convolve(&unit, &q), &q) < 1e-15);
        let s_r = binomial_coeffs(&re(&[0.7, 4.0, 2.5])).to_polynomial();
        let c2 = binomial_coeffs(&s_r).gamma[2];
        assert_eq!(
            grace_convolve(&Polynomial::monomial(2), &s_r),
            Polynomial::new(vec![ZERO, ZERO, c2])
        );
        assert_eq!(
            grace_convolve(&re(&[-0.25, 0.0, 1.0]), &re(&[3.0, 0.0, 1.0])),
            re(&[-0.75, 0.0, 1.0])
        );
    }

    #[test]
    fn factorization_counterexample() {
        let err =
            grace_factorize(&Polynomial::monomial(2), &re(&[0.0, 1.0, 1.0]), ZERO).unwrap_err();
        match err {
            Error::FactorizationImpossible { index, alpha, beta } => {
                assert_eq!(index, 1);
                assert_eq!(alpha, ZERO);
                assert_eq!(beta, Complex64::new(0.5, 0.0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn factorization_with_vanishing_pair() {
        let f = grace_factorize(&re(&[-0.25, 0.0, 1.0]), &re(&[-0.75, 0.0, 1.0]), ZERO).unwrap();
        assert_eq!(
            f.c.gamma,
            vec![Complex64::new(3.0, 0.0), ZERO, Complex64::new(1.0, 0.0)]
        );
        assert_eq!(f.s_r, re(&[3.0, 0.0, 1.0]));
        assert!(f.exact_match_error <= 1e-10);
    }

    #[test]
    fn factorization_recovers_s_poly() {
        let p = Polynomial::from_roots(&[Complex64::new(0.5, 0.0), Complex64::new(1.0 / 3.0, 0.0)]);
        let q = solve_polar_shifted(&p, ZERO, 1).unwrap();
        let f = grace_factorize(&p, &q, ZERO).unwrap();
        assert!(rel_err(&f.s_r, &s_poly(2, 1)) < 1e-10);
        assert_eq!(
            grace_factorize(&p, &Polynomial::monomial(3), ZERO),
            Err(Error::DegreeMismatch { p: 2, q: 3 })
        );
    }

    #[test]
    fn tr_diagonal_is_rising_factorial() {
        let r = re(&[0.5, -1.0, 2.0, 1.0]);
        let m = tr_matrix(&r, 6);
        for (i, row) in m.iter().enumerate() {
            assert_eq!(row[i].re, rising_factorial_f64(i as u64 + 1, 3));
            for (j, v) in row.iter().enumerate().take(i) {
                assert_eq!(*v, ZERO, "entry ({i}, {j}) below the diagonal");
            }
        }
    }
}
