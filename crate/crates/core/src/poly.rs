//! Dense complex polynomials in ascending powers, with the handful of
//! operations the polar constructions need: products, k-fold derivatives,
//! Taylor shifts and conversion to the binomial basis.
//!
//! Combinatorial scalars (binomial coefficients, rising factorials) are
//! computed exactly in integers and converted to `f64` once.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used to detect the degree of a coefficient vector.
pub const TRIM_TOLERANCE: f64 = 1e-12;

/// Tolerance of the monic predicate on the leading coefficient.
pub const MONIC_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense polynomial `sum coeffs[j] z^j` with complex coefficients.
///
/// Trailing coefficients below `TRIM_TOLERANCE * max |coeff|` are dropped on
/// construction, so `coeffs.len() == degree + 1` always holds. The zero
/// polynomial is stored as `[0]`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cutoff = TRIM_TOLERANCE * scale;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= cutoff) {
            coeffs.pop();
        }
        if coeffs.is_empty() || scale == 0.0 {
            coeffs = vec![ZERO];
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![ZERO] }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![ONE] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = ONE;
        Polynomial { coeffs }
    }

    /// The monic polynomial `prod (z - r)` over the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![ONE];
        for &r in roots {
            coeffs.push(ZERO);
            for j in (1..coeffs.len()).rev() {
                coeffs[j] = coeffs[j - 1] - r * coeffs[j];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Polynomial { coeffs }
    }

    /// `(z - xi)^k`.
    pub fn linear_power(xi: Complex64, k: usize) -> Self {
        Self::from_roots(&vec![xi; k])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of `z^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or(ZERO)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_monic(&self) -> bool {
        (self.leading() - ONE).norm() <= MONIC_TOLERANCE
    }

    /// Divides through by the leading coefficient; the result has leading
    /// coefficient exactly one. The zero polynomial is returned unchanged.
    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        let mut coeffs: Vec<_> = self.coeffs.iter().map(|c| c / lead).collect();
        *coeffs.last_mut().unwrap() = ONE;
        Polynomial { coeffs }
    }

    /// Max-modulus coefficient norm.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z` in a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Horner evaluation carried out in double-double arithmetic, so the
    /// result is as accurate as if computed with twice the working
    /// precision and rounded once. Used where cancellation between large
    /// coefficients would swamp plain Horner.
    pub fn eval_compensated(&self, z: Complex64) -> Complex64 {
        let mut re = Dd::ZERO;
        let mut im = Dd::ZERO;
        for c in self.coeffs.iter().rev() {
            // (re + i im)(z.re + i z.im) + c
            let new_re = re.mul_f64(z.re).add(im.mul_f64(-z.im)).add_f64(c.re);
            let new_im = re.mul_f64(z.im).add(im.mul_f64(z.re)).add_f64(c.im);
            re = new_re;
            im = new_im;
        }
        Complex64::new(re.value(), im.value())
    }

    /// Coefficients padded with zeros to length `len` (never truncated).
    pub fn padded(&self, len: usize) -> Vec<Complex64> {
        let mut v = self.coeffs.clone();
        if v.len() < len {
            v.resize(len, ZERO);
        }
        v
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

impl TryFrom<Vec<Complex64>> for Polynomial {
    type Error = String;

    fn try_from(coeffs: Vec<Complex64>) -> std::result::Result<Self, String> {
        if coeffs.is_empty() {
            return Err("polynomial must have at least one coefficient".into());
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err("polynomial coefficients must be finite".into());
        }
        Ok(Polynomial::new(coeffs))
    }
}

impl From<Polynomial> for Vec<Complex64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        poly_mul(self, rhs)
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let e = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: e }
    }

    fn quick(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Self::two_sum(self.hi, o.hi);
        let t = Self::two_sum(self.lo, o.lo);
        let hi = Self::quick(s.hi, s.lo + t.hi);
        Self::quick(hi.hi, hi.lo + t.lo)
    }

    fn add_f64(self, b: f64) -> Dd {
        let s = Self::two_sum(self.hi, b);
        Self::quick(s.hi, s.lo + self.lo)
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = self.hi * b;
        let e = self.hi.mul_add(b, -p);
        Self::quick(p, e + self.lo * b)
    }

    fn div_f64(self, b: f64) -> Dd {
        let q = self.hi / b;
        // remainder self - q * b, with q * b split exactly by an fma
        let p = q * b;
        let r = self.add(Dd {
            hi: -p,
            lo: -q.mul_add(b, -p),
        });
        Self::quick(q, r.value() / b)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Complex polynomial with double-double coefficients, for pipelines of
/// shifts and scalings whose intermediate coefficients are much larger than
/// the final ones.
#[derive(Debug, Clone)]
pub(crate) struct DdPolynomial {
    re: Vec<Dd>,
    im: Vec<Dd>,
}

impl DdPolynomial {
    pub(crate) fn from_poly(p: &Polynomial) -> Self {
        DdPolynomial {
            re: p.coeffs.iter().map(|c| Dd { hi: c.re, lo: 0.0 }).collect(),
            im: p.coeffs.iter().map(|c| Dd { hi: c.im, lo: 0.0 }).collect(),
        }
    }

    /// In-place `w -> p(xi + w)`.
    pub(crate) fn shift(&mut self, xi: Complex64) {
        let n = self.re.len() - 1;
        for i in 0..n {
            for j in (i..n).rev() {
                let (a, b) = (self.re[j + 1], self.im[j + 1]);
                let carry_re = a.mul_f64(xi.re).add(b.mul_f64(-xi.im));
                let carry_im = a.mul_f64(xi.im).add(b.mul_f64(xi.re));
                self.re[j] = self.re[j].add(carry_re);
                self.im[j] = self.im[j].add(carry_im);
            }
        }
    }

    /// Multiplies coefficient `j` by `num / den(j)`.
    pub(crate) fn scale_ratio(&mut self, num: f64, den: impl Fn(usize) -> f64) {
        for j in 0..self.re.len() {
            let d = den(j);
            self.re[j] = self.re[j].mul_f64(num).div_f64(d);
            self.im[j] = self.im[j].mul_f64(num).div_f64(d);
        }
    }

    pub(crate) fn set_leading_one(&mut self) {
        let n = self.re.len() - 1;
        self.re[n] = Dd { hi: 1.0, lo: 0.0 };
        self.im[n] = Dd::ZERO;
    }

    pub(crate) fn to_poly(&self) -> Polynomial {
        Polynomial::new(
            self.re
                .iter()
                .zip(&self.im)
                .map(|(r, i)| Complex64::new(r.value(), i.value()))
                .collect(),
        )
    }
}

/// Schoolbook product.
pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![ZERO; p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    Polynomial::new(out)
}

/// The k-fold formal derivative. Returns zero when `k > degree`.
pub fn derivative_k(p: &Polynomial, k: usize) -> Polynomial {
    if k == 0 {
        return p.clone();
    }
    if k > p.degree() {
        return Polynomial::zero();
    }
    // d^k/dz^k z^(i+k) = (i+1)_k z^i
    let coeffs = p.coeffs[k..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * rising_factorial_f64(i as u64 + 1, k as u64))
        .collect();
    Polynomial::new(coeffs)
}

/// Coefficients of `w -> p(xi + w)` by repeated synthetic division.
pub fn taylor_shift(p: &Polynomial, xi: Complex64) -> Polynomial {
    let mut c = p.coeffs.clone();
    if xi == ZERO {
        return p.clone();
    }
    let n = c.len() - 1;
    for i in 0..n {
        for j in (i..n).rev() {
            let carry = xi * c[j + 1];
            c[j] += carry;
        }
    }
    Polynomial::new(c)
}

/// Coefficients of a degree-n polynomial in the basis `{ C(n, j) w^j }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinomialForm {
    pub n: usize,
    pub gamma: Vec<Complex64>,
}

impl BinomialForm {
    /// Binomial form of `p` at size `n >= degree(p)`; missing coefficients
    /// are zero.
    pub fn of_size(p: &Polynomial, n: usize) -> Self {
        assert!(n >= p.degree() || p.is_zero(), "size below degree");
        let gamma = (0..=n)
            .map(|j| p.coeff(j) / binomial_f64(n as u64, j as u64))
            .collect();
        BinomialForm { n, gamma }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        from_binomial(self)
    }
}

/// `gamma_j = coeff_j / C(n, j)` with `n = degree(p)`.
pub fn binomial_coeffs(p: &Polynomial) -> BinomialForm {
    BinomialForm::of_size(p, p.degree())
}

/// Inverse of [`binomial_coeffs`].
pub fn from_binomial(form: &BinomialForm) -> Polynomial {
    let n = form.n as u64;
    Polynomial::new(
        form.gamma
            .iter()
            .enumerate()
            .map(|(j, g)| g * binomial_f64(n, j as u64))
            .collect(),
    )
}

/// Exact rising factorial `a (a+1) ... (a+k-1)`; `(a)_0 = 1`.
pub fn rising_factorial(a: u64, k: u64) -> Result<u128> {
    (0..k).try_fold(1u128, |acc, i| {
        acc.checked_mul((a + i) as u128).ok_or(Error::Overflow)
    })
}

/// Exact binomial coefficient `C(n, j)`, zero when `j > n`.
pub fn binomial(n: u64, j: u64) -> Result<u128> {
    if j > n {
        return Ok(0);
    }
    let j = j.min(n - j);
    // acc = C(n - j + i, i) after step i, so each division is exact.
    (1..=j as u128).try_fold(1u128, |acc, i| {
        acc.checked_mul(n as u128 - j as u128 + i)
            .map(|v| v / i)
            .ok_or(Error::Overflow)
    })
}

/// `(a)_k` as a float; exact whenever the integer fits, otherwise a
/// floating product.
pub fn rising_factorial_f64(a: u64, k: u64) -> f64 {
    match rising_factorial(a, k) {
        Ok(v) => v as f64,
        Err(_) => (0..k).map(|i| (a + i) as f64).product(),
    }
}

/// `C(n, j)` as a float, with the same fallback as [`rising_factorial_f64`].
pub fn binomial_f64(n: u64, j: u64) -> f64 {
    match binomial(n, j) {
        Ok(v) => v as f64,
        Err(_) => {
            let j = j.min(n - j);
            (1..=j).fold(1.0, |acc, i| acc * (n - j + i) as f64 / i as f64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &Polynomial, b: &Polynomial, tol: f64) -> bool {
        let diff = (a - b).norm_inf();
        diff <= tol * (1.0 + a.norm_inf().max(b.norm_inf()))
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 1e-20]);
        assert_eq!(p.degree(), 1);
        assert!(Polynomial::from_real(&[0.0, 0.0]).is_zero());
        assert_eq!(Polynomial::new(vec![]).degree(), 0);
    }

    #[test]
    fn make_monic_forces_unit_leading() {
        let p = Polynomial::new(vec![c(1.0, 1.0), c(0.0, 3.0)]).make_monic();
        assert_eq!(p.leading(), ONE);
        assert!(p.is_monic());
        assert!((p.coeff(0) - c(1.0, 1.0) / c(0.0, 3.0)).norm() < 1e-15);
    }

    #[test]
    fn mul_difference_of_squares() {
        let p = Polynomial::from_real(&[1.0, 1.0]);
        let q = Polynomial::from_real(&[-1.0, 1.0]);
        assert_eq!(poly_mul(&p, &q), Polynomial::from_real(&[-1.0, 0.0, 1.0]));
        assert_eq!(poly_mul(&p, &Polynomial::one()), p);
        assert!(poly_mul(&p, &Polynomial::zero()).is_zero());
    }

    #[test]
    fn mul_matches_pointwise_evaluation() {
        let p = Polynomial::from_real(&[1.0, 2.0]);
        let q = Polynomial::from_real(&[3.0, 4.0]);
        let pq = poly_mul(&p, &q);
        assert_eq!(pq, Polynomial::from_real(&[3.0, 10.0, 8.0]));
        for z in [0.0, 1.0, -1.0] {
            let z = c(z, 0.0);
            assert_eq!(pq.eval(z), p.eval(z) * q.eval(z));
        }
    }

    #[test]
    fn derivatives() {
        assert_eq!(
            derivative_k(&Polynomial::monomial(3), 1),
            Polynomial::from_real(&[0.0, 0.0, 3.0])
        );
        assert!(derivative_k(&Polynomial::monomial(2), 3).is_zero());
        assert_eq!(
            derivative_k(&Polynomial::monomial(4), 2),
            Polynomial::from_real(&[0.0, 0.0, 12.0])
        );
        let p = Polynomial::from_real(&[1.0, 2.0]);
        assert_eq!(derivative_k(&p, 0), p);
    }

    #[test]
    fn shift_examples() {
        let p = Polynomial::monomial(2);
        assert_eq!(
            taylor_shift(&p, ONE),
            Polynomial::from_real(&[1.0, 2.0, 1.0])
        );
        assert_eq!(taylor_shift(&p, ZERO), p);

        let p = Polynomial::from_real(&[1.0, 0.0, 1.0]);
        let i = c(0.0, 1.0);
        let s = taylor_shift(&p, i);
        assert!(close(
            &s,
            &Polynomial::new(vec![ZERO, c(0.0, 2.0), ONE]),
            1e-15
        ));
        for w in [ZERO, ONE, i] {
            assert!((p.eval(i + w) - s.eval(w)).norm() < 1e-14);
        }
    }

    #[test]
    fn binomial_form_examples() {
        let f = binomial_coeffs(&Polynomial::from_real(&[0.0, 1.0, 1.0]));
        assert_eq!(f.gamma, vec![ZERO, c(0.5, 0.0), ONE]);
        let f = binomial_coeffs(&Polynomial::monomial(2));
        assert_eq!(f.gamma, vec![ZERO, ZERO, ONE]);
        // (1 + w)^5
        let p = Polynomial::linear_power(c(-1.0, 0.0), 5);
        assert!(binomial_coeffs(&p)
            .gamma
            .iter()
            .all(|g| (g - ONE).norm() < 1e-15));
    }

    #[test]
    fn combinatorial_scalars() {
        assert_eq!(rising_factorial(3, 1), Ok(3));
        assert_eq!(rising_factorial(7, 0), Ok(1));
        assert_eq!(rising_factorial(4, 3), Ok(120));
        assert_eq!(rising_factorial(1, 40), Err(Error::Overflow));
        assert_eq!(binomial(4, 2), Ok(6));
        assert_eq!(binomial(3, 5), Ok(0));
        assert_eq!(binomial(60, 30), Ok(118_264_581_564_861_424));
        assert_eq!(binomial(200, 100), Err(Error::Overflow));
        let approx = binomial_f64(200, 100);
        assert!((approx / 9.054851465610328e58 - 1.0).abs() < 1e-12);
        assert_eq!(
            rising_factorial_f64(1, 40),
            (1..=40).map(|i| i as f64).product::<f64>()
        );
    }

    #[test]
    fn compensated_eval_beats_cancellation() {
        // ((1 + w)^24 - 1) / w has an exact zero at w = -2
        let s = Polynomial::new((0..24).map(|j| c(binomial_f64(24, j + 1), 0.0)).collect());
        let w = c(-2.0, 0.0);
        assert_eq!(s.eval_compensated(w), ZERO);
        let z = c(0.3, -0.7);
        assert!((s.eval_compensated(z) - s.eval(z)).norm() <= 1e-12 * s.eval(z).norm());
    }

    #[test]
    fn serde_uses_pair_arrays() {
        let p: Polynomial = serde_json::from_str("[[-0.75,0],[0,0],[1,0]]").unwrap();
        assert_eq!(p, Polynomial::from_real(&[-0.75, 0.0, 1.0]));
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            "[[-0.75,0.0],[0.0,0.0],[1.0,0.0]]"
        );
        assert!(serde_json::from_str::<Polynomial>("[]").is_err());
    }

    #[test]
    fn double_double_division_and_shift() {
        let third = Dd { hi: 1.0, lo: 0.0 }.div_f64(3.0);
        let back = third.mul_f64(3.0).add_f64(-1.0);
        assert!(back.value().abs() < 1e-30);

        // (w + 1)^12 shifted by -1 and back is w^12 up to double-double rounding
        let p = Polynomial::monomial(12);
        let mut dd = DdPolynomial::from_poly(&p);
        dd.shift(c(3.0, 4.0));
        dd.shift(c(-3.0, -4.0));
        let q = dd.to_poly();
        assert_eq!(q.degree(), 12);
        assert!(q.coeffs()[..12].iter().all(|x| x.norm() < 1e-20), "{q:?}");
    }
}
