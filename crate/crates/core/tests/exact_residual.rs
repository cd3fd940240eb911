//! Residuals of computed solutions measured in exact big-integer
//! arithmetic, so the check itself contributes no rounding.

use num_bigint::BigInt;
use polar_zeros::verify::*;
use polar_zeros::*;

/// Binary point of the fixed-point representation; covers every finite f64.
const SH: i32 = 1100;

/// `x * 2^SH` exactly.
fn ex(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::from(0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let e = ((bits >> 52) & 0x7ff) as i32;
    let m = if e == 0 {
        (bits & ((1u64 << 52) - 1)) << 1
    } else {
        (bits & ((1u64 << 52) - 1)) | (1u64 << 52)
    };
    let exp = e - 1075 + SH;
    let v = BigInt::from(m) << (exp as usize);
    if sign < 0 {
        -v
    } else {
        v
    }
}
/// `x * 2^-shift`, rounded.
fn to_f(x: &BigInt, shift: i32) -> f64 {
    let bits = x.bits() as i32;
    let drop = (bits - 60).max(0);
    let top: i64 = (x >> (drop as usize)).try_into().unwrap();
    top as f64 * 2f64.powi(drop - shift)
}
/// `||d^k(R Q) - (n+1)_k P||_inf / ||(n+1)_k P||_inf` in exact arithmetic on
/// the f64 inputs.
fn exact_residual(p: &Polynomial, r: &Polynomial, q: &Polynomial) -> f64 {
    let k = r.degree();
    let n = p.degree();
    let (rr, ri): (Vec<_>, Vec<_>) = r.coeffs().iter().map(|c| (ex(c.re), ex(c.im))).unzip();
    let (qr, qi): (Vec<_>, Vec<_>) = q.coeffs().iter().map(|c| (ex(c.re), ex(c.im))).unzip();
    let m = rr.len() + qr.len() - 1;
    let mut pr = vec![BigInt::from(0); m];
    let mut pi = pr.clone();
    for a in 0..rr.len() {
        for b in 0..qr.len() {
            pr[a + b] += &rr[a] * &qr[b] - &ri[a] * &qi[b];
            pi[a + b] += &rr[a] * &qi[b] + &ri[a] * &qr[b];
        }
    }
    let rf: u128 = rising_factorial(n as u64 + 1, k as u64).unwrap();
    let mut worst: f64 = 0.0;
    for j in 0..=n {
        let f: u128 = rising_factorial(j as u64 + 1, k as u64).unwrap();
        let c = p.coeff(j);
        let dr = &pr[j + k] * BigInt::from(f) - (ex(c.re) << (SH as usize)) * BigInt::from(rf);
        let di = &pi[j + k] * BigInt::from(f) - (ex(c.im) << (SH as usize)) * BigInt::from(rf);
        let v = to_f(&dr, 2 * SH).hypot(to_f(&di, 2 * SH));
        worst = worst.max(v);
    }
    worst / (rf as f64 * p.norm_inf())
}

#[test]
fn both_solver_paths_sit_at_the_rounding_floor() {
    let cfg = SuiteConfig {
        n_range: (1, 12),
        cases: 1000,
        ..SuiteConfig::default()
    };
    let mut worst_fast: f64 = 0.0;
    let mut worst_general: f64 = 0.0;
    for case in 0..1000 {
        let i = sample_instance(&cfg, case);
        let r = Polynomial::linear_power(i.xi, i.k);
        let fast = solve_polar_shifted(&i.p, i.xi, i.k).unwrap();
        let general = solve_polar(&PolarProblem::shifted(i.p.clone(), i.xi, i.k)).unwrap();
        worst_fast = worst_fast.max(exact_residual(&i.p, &r, &fast));
        worst_general = worst_general.max(exact_residual(&i.p, &r, &general));
    }
    assert!(worst_fast <= 1e-11, "shifted path {worst_fast:e}");
    assert!(worst_general <= 1e-11, "general path {worst_general:e}");
}

#[test]
fn floating_residual_agrees_with_exact() {
    let cfg = SuiteConfig {
        n_range: (1, 12),
        cases: 200,
        ..SuiteConfig::default()
    };
    for case in 0..200 {
        let i = sample_instance(&cfg, case);
        let q = solve_polar(&PolarProblem::new(i.p.clone(), i.r.clone())).unwrap();
        let exact = exact_residual(&i.p, &i.r, &q);
        let float = relative_residual(&i.p, &i.r, &q);
        assert!(
            (exact - float).abs() <= 1e-12,
            "case {case}: {exact:e} vs {float:e}"
        );
    }
}
