//! Singularity analysis: the critical curve (G_c, g_c, K)(mu), the
//! negative-mu exclusion check, coefficient asymptotics, and numeric
//! exponent fits via Richardson extrapolation.
//!
//! Everything here is double precision; exact arithmetic lives in
//! [`crate::series`].

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// The location of the dominant square-root singularity at a given `mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub mu: f64,
    /// The critical value `G_c` of the 2-point function, the root of
    /// `-3x^3 + 4x^2 - mu x + 2 mu` in `[4/3, 2)`.
    pub big_g: f64,
    /// The critical coupling `g_c = (G_c - 1) / (G_c^2 (G_c^2 + mu))`.
    pub g_c: f64,
    /// The constant `K = sqrt(G_c^2 (G_c^2 + mu) / (6 G_c^2 + mu))` in
    /// `G(g) ~ G_c - K sqrt(1 - g/g_c)`.
    pub k: f64,
    /// Whether the root lies on the admissible branch `[4/3, 2)`.
    pub in_domain: bool,
}

fn cubic(mu: f64, x: f64) -> f64 {
    -3.0 * x * x * x + 4.0 * x * x - mu * x + 2.0 * mu
}

fn cubic_prime(mu: f64, x: f64) -> f64 {
    -9.0 * x * x + 8.0 * x - mu
}

/// Relative residual of the cubic: |f(x)| scaled by the largest term.
fn cubic_residual(mu: f64, x: f64) -> f64 {
    let scale = (3.0 * x * x * x)
        .abs()
        .max((4.0 * x * x).abs())
        .max((mu * x).abs())
        .max((2.0 * mu).abs())
        .max(1.0);
    cubic(mu, x).abs() / scale
}

fn g_from_root(mu: f64, x: f64) -> f64 {
    (x - 1.0) / (x * x * (x * x + mu))
}

/// Solves the characteristic cubic on the branch `[4/3, 2)` and returns
/// the critical data. Requires `mu >= 0`; for negative `mu` the bracket
/// sign change disappears and `NoBracket` is returned.
pub fn critical_point(mu: f64) -> Result<CriticalPoint> {
    let (mut lo, mut hi) = (4.0 / 3.0, 2.0);
    let flo = cubic(mu, lo);
    let fhi = cubic(mu, hi);
    if flo < 0.0 || fhi >= 0.0 {
        return Err(Error::NoBracket(format!(
            "cubic has no sign change on [4/3, 2] at mu = {mu}"
        )));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if cubic(mu, mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let d = cubic_prime(mu, x);
        if d != 0.0 {
            x -= cubic(mu, x) / d;
        }
    }
    let residual = cubic_residual(mu, x);
    if residual > 1e-12 {
        return Err(Error::InternalInconsistency(format!(
            "cubic residual {residual:e} at mu = {mu}"
        )));
    }
    let big_g = x;
    Ok(CriticalPoint {
        mu,
        big_g,
        g_c: g_from_root(mu, big_g),
        k: libm::sqrt(big_g * big_g * (big_g * big_g + mu) / (6.0 * big_g * big_g + mu)),
        in_domain: (4.0 / 3.0..2.0).contains(&big_g),
    })
}

/// Samples [`critical_point`] on an inclusive grid.
pub fn critical_curve(mu_min: f64, mu_max: f64, step: f64) -> Result<Vec<CriticalPoint>> {
    if step <= 0.0 {
        return Err(Error::NonPositiveInput);
    }
    let mut out = Vec::new();
    let mut i = 0u64;
    loop {
        let mu = mu_min + step * i as f64;
        if mu > mu_max + 1e-12 {
            break;
        }
        out.push(critical_point(mu)?);
        i += 1;
    }
    Ok(out)
}

/// All real roots of `-3x^3 + 4x^2 - mu x + 2 mu`, ascending. Uses the
/// trigonometric form when the discriminant gives three real roots,
/// Cardano otherwise; each root is polished by Newton steps.
pub fn cubic_real_roots(mu: f64) -> Vec<f64> {
    // Monic form x^3 + b x^2 + c x + d.
    let b = -4.0 / 3.0;
    let c = mu / 3.0;
    let d = -2.0 * mu / 3.0;
    // Depressed: t^3 + p t + q with x = t - b/3.
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = -4.0 * p * p * p - 27.0 * q * q;
    let mut roots = Vec::new();
    if disc > 0.0 {
        // Three distinct real roots.
        let m = 2.0 * libm::sqrt(-p / 3.0);
        let theta = libm::acos(3.0 * q / (p * m)) / 3.0;
        for k in 0..3 {
            let t = m * libm::cos(theta - 2.0 * core::f64::consts::PI * k as f64 / 3.0);
            roots.push(t - shift);
        }
    } else if disc == 0.0 {
        if p == 0.0 {
            roots.push(-shift);
        } else {
            // A double root and a simple root.
            roots.push(3.0 * q / p - shift);
            roots.push(-3.0 * q / (2.0 * p) - shift);
            roots.push(-3.0 * q / (2.0 * p) - shift);
        }
    } else {
        // One real root, by Cardano.
        let half_q = q / 2.0;
        let s = libm::sqrt(half_q * half_q + p * p * p / 27.0);
        let u = libm::cbrt(-half_q + s);
        let v = libm::cbrt(-half_q - s);
        roots.push(u + v - shift);
    }
    for r in roots.iter_mut() {
        for _ in 0..6 {
            let dp = cubic_prime(mu, *r);
            if dp != 0.0 {
                *r -= cubic(mu, *r) / dp;
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// A real root of the characteristic cubic for `mu < 0`, with the
/// coupling it would pin as a singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularityCandidate {
    pub big_g: f64,
    pub g: f64,
}

/// Outcome of the negative-mu singularity scan.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeMuReport {
    pub mu: f64,
    /// Real roots of the cubic whose would-be coupling is finite and
    /// non-zero.
    pub candidates: Vec<SingularityCandidate>,
    /// The convergence-domain bound `g_c(|mu|)`.
    pub domain_bound: f64,
    /// True when no candidate lies inside the convergence domain
    /// `0 < |g| <= g_c(|mu|)`, i.e. the series has no singular point
    /// there.
    pub excluded: bool,
}

/// Solves the characteristic system for `mu < 0` and reports whether any
/// real root yields a singularity inside the convergence domain. For all
/// negative `mu` the answer is exclusion; at `mu = -1` the excluded pair
/// is `(G_c, g) = (-2/3, 27/4)`.
pub fn negative_mu_check(mu: f64) -> Result<NegativeMuReport> {
    if mu >= 0.0 {
        return Err(Error::NoBracket(format!(
            "negative-mu check called with mu = {mu}"
        )));
    }
    let domain_bound = critical_point(-mu)?.g_c;
    let mut candidates = Vec::new();
    for x in cubic_real_roots(mu) {
        let den = x * x * (x * x + mu);
        if den.abs() < 1e-9 {
            continue;
        }
        let g = (x - 1.0) / den;
        if g.abs() < 1e-12 {
            continue;
        }
        candidates.push(SingularityCandidate { big_g: x, g });
    }
    let excluded = !candidates
        .iter()
        .any(|c| c.g.abs() <= domain_bound * (1.0 + 1e-9));
    Ok(NegativeMuReport {
        mu,
        candidates,
        domain_bound,
        excluded,
    })
}

/// Closed-form estimate `alpha_n(mu) ~ K g_c^{-n} / (2 sqrt(pi) n^{3/2})`.
pub fn asymptotic_alpha(n: u64, mu: f64) -> Result<f64> {
    Ok(libm::exp(ln_asymptotic_alpha(n, mu)?))
}

/// Natural log of [`asymptotic_alpha`], usable far beyond f64 range.
pub fn ln_asymptotic_alpha(n: u64, mu: f64) -> Result<f64> {
    let cp = critical_point(mu)?;
    let nf = n as f64;
    Ok(libm::log(cp.k) - libm::log(2.0 * libm::sqrt(core::f64::consts::PI))
        - nf * libm::log(cp.g_c)
        - 1.5 * libm::log(nf))
}

/// Which index of `C_{p,q}` is held fixed in the Stirling estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `q = q0` fixed, estimate as a function of `p`.
    FixQ(u64),
    /// `p = p0` fixed, estimate as a function of `q`.
    FixP(u64),
}

/// Stirling estimate for `C_{p,q}` with one index fixed:
/// fixed `q0`: `(1/3) sqrt(2/(3 pi)) (16/3)^{q0} / q0! * p^{q0 - 3/2} (256/27)^p`;
/// fixed `p0`: `16^{p0} / (sqrt(pi) p0!) * q^{p0 - 3/2} 4^q`.
pub fn cpq_asymptotic(direction: Direction, index: u64) -> f64 {
    libm::exp(ln_cpq_asymptotic(direction, index))
}

/// Natural log of [`cpq_asymptotic`].
pub fn ln_cpq_asymptotic(direction: Direction, index: u64) -> f64 {
    let ln_factorial = |n: u64| (2..=n).map(|k| libm::log(k as f64)).sum::<f64>();
    let pi = core::f64::consts::PI;
    let idx = index as f64;
    match direction {
        Direction::FixQ(q0) => {
            let q0f = q0 as f64;
            libm::log(1.0 / 3.0) + 0.5 * libm::log(2.0 / (3.0 * pi)) - ln_factorial(q0)
                + q0f * libm::log(16.0 / 3.0)
                + (q0f - 1.5) * libm::log(idx)
                + idx * libm::log(256.0 / 27.0)
        }
        Direction::FixP(p0) => {
            let p0f = p0 as f64;
            -0.5 * libm::log(pi) - ln_factorial(p0)
                + p0f * libm::log(16.0)
                + (p0f - 1.5) * libm::log(idx)
                + idx * libm::log(4.0)
        }
    }
}

/// Result of fitting `a_n ~ C r^n n^s` to a coefficient sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    /// The exponential growth rate `r`.
    pub growth: f64,
    pub ln_growth: f64,
    /// The subexponential power `s`.
    pub power: f64,
    /// Size of the last Richardson correction; a convergence diagnostic,
    /// not a rigorous error bound.
    pub residual: f64,
}

const FIT_MIN_LEN: usize = 50;
const RICHARDSON_DEPTH: usize = 3;

/// Fits growth rate and power to positive coefficients `a_0..a_{len-1}`.
pub fn fit_exponents(coeffs: &[f64]) -> Result<ExponentFit> {
    if coeffs.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::NonPositiveInput);
    }
    let ln: Vec<f64> = coeffs.iter().map(|&a| libm::log(a)).collect();
    fit_exponents_ln(&ln)
}

/// Same fit from natural logs of the coefficients, for sequences whose
/// values overflow f64.
pub fn fit_exponents_ln(ln_coeffs: &[f64]) -> Result<ExponentFit> {
    if ln_coeffs.len() < FIT_MIN_LEN {
        return Err(Error::InsufficientData(FIT_MIN_LEN));
    }
    // d_n = ln a_{n+1} - ln a_n = ln r + s ln(1 + 1/n); differencing two
    // consecutive d's isolates s up to O(1/n) corrections, which the
    // Richardson pass removes.
    let d = |n: usize| ln_coeffs[n + 1] - ln_coeffs[n];
    let lnp = |n: usize| libm::log(1.0 + 1.0 / n as f64);
    let s_at = |n: usize| (d(n) - d(n + 1)) / (lnp(n) - lnp(n + 1));
    let n_max = ln_coeffs.len() - 3;
    let nodes: Vec<usize> = (0..=RICHARDSON_DEPTH).map(|j| n_max >> j).collect();
    let hs: Vec<f64> = nodes.iter().map(|&n| 1.0 / n as f64).collect();
    let (power, s_err) = neville_to_zero(&hs, &nodes.iter().map(|&n| s_at(n)).collect::<Vec<_>>());
    let r_at = |n: usize| d(n) - power * lnp(n);
    let (ln_growth, r_err) =
        neville_to_zero(&hs, &nodes.iter().map(|&n| r_at(n)).collect::<Vec<_>>());
    Ok(ExponentFit {
        growth: libm::exp(ln_growth),
        ln_growth,
        power,
        residual: s_err + r_err,
    })
}

/// Polynomial extrapolation of `(h_j, y_j)` to `h = 0`; returns the value
/// and the magnitude of the final correction.
fn neville_to_zero(hs: &[f64], ys: &[f64]) -> (f64, f64) {
    let m = hs.len();
    let mut y = ys.to_vec();
    let mut previous = ys[0];
    for k in 1..m {
        previous = y[0];
        for j in 0..m - k {
            let num = hs[j + k] * y[j] - hs[j] * y[j + 1];
            y[j] = num / (hs[j + k] - hs[j]);
        }
    }
    (y[0], (y[0] - previous).abs())
}
