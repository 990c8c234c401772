//! Exact arithmetic for the 2-point generating functions of the quartic
//! model: the tree counts `C_{p,q}`, the coefficients `alpha_n(mu)`, the
//! LO and (reduced) NLO series and the free-energy series, together with
//! the algebraic identities among them.
//!
//! Everything here is arbitrary-precision rational; no floating point.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact polynomial in `mu` with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MuPolynomial {
    coeffs: BTreeMap<u32, BigRational>,
}

impl MuPolynomial {
    pub fn zero() -> Self {
        MuPolynomial::default()
    }

    pub fn one() -> Self {
        MuPolynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        MuPolynomial { coeffs }
    }

    /// The monomial `c * mu^q`.
    pub fn monomial(q: u32, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(q, c);
        }
        MuPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of `mu^q` (zero if absent).
    pub fn coefficient(&self, q: u32) -> BigRational {
        self.coeffs.get(&q).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Non-zero terms, ascending in `q`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(&q, c)| (q, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&q, c) in &other.coeffs {
            let e = out.coeffs.entry(q).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                out.coeffs.remove(&q);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MuPolynomial {
            coeffs: self.coeffs.iter().map(|(&q, c)| (q, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MuPolynomial::zero();
        for (&qa, ca) in &self.coeffs {
            for (&qb, cb) in &other.coeffs {
                let e = out
                    .coeffs
                    .entry(qa + qb)
                    .or_insert_with(BigRational::zero);
                *e += ca * cb;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return MuPolynomial::zero();
        }
        MuPolynomial {
            coeffs: self.coeffs.iter().map(|(&q, x)| (q, x * c)).collect(),
        }
    }

    /// Multiplication by `mu`.
    pub fn mul_mu(&self) -> Self {
        MuPolynomial {
            coeffs: self.coeffs.iter().map(|(&q, c)| (q + 1, c.clone())).collect(),
        }
    }

    /// The Euler operator `mu * d/d mu`: scales the `mu^q` term by `q`.
    pub fn mu_d_mu(&self) -> Self {
        let mut out = MuPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&q, c)| (q, c * BigRational::from(BigInt::from(q))))
                .collect(),
        };
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn eval(&self, mu: &BigRational) -> BigRational {
        // Horner over the sparse terms, descending.
        let mut acc = BigRational::zero();
        let mut prev_q: Option<u32> = None;
        for (&q, c) in self.coeffs.iter().rev() {
            if let Some(pq) = prev_q {
                for _ in q..pq {
                    acc *= mu;
                }
            }
            acc += c;
            prev_q = Some(q);
        }
        if let Some(q) = prev_q {
            for _ in 0..q {
                acc *= mu;
            }
        }
        acc
    }
}

/// A power series in `g`, truncated at `order`, with [`MuPolynomial`]
/// coefficients. All ring operations truncate consistently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSeries {
    order: usize,
    coeffs: Vec<MuPolynomial>,
}

impl GSeries {
    pub fn zero(order: usize) -> Self {
        GSeries {
            order,
            coeffs: alloc::vec![MuPolynomial::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = GSeries::zero(order);
        s.coeffs[0] = MuPolynomial::one();
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `g^n`.
    pub fn coeff(&self, n: usize) -> &MuPolynomial {
        &self.coeffs[n]
    }

    pub fn set_coeff(&mut self, n: usize, p: MuPolynomial) {
        self.coeffs[n] = p;
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        GSeries {
            order,
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].add(&other.coeffs[n]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        GSeries {
            order,
            coeffs: (0..=order)
                .map(|n| self.coeffs[n].sub(&other.coeffs[n]))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = GSeries::zero(order);
        for n in 0..=order {
            let mut acc = MuPolynomial::zero();
            for k in 0..=n {
                if !self.coeffs[k].is_zero() && !other.coeffs[n - k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&other.coeffs[n - k]));
                }
            }
            out.coeffs[n] = acc;
        }
        out
    }

    pub fn scale(&self, p: &MuPolynomial) -> Self {
        GSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Multiplication by `g` (shifts coefficients up, truncating).
    pub fn mul_g(&self) -> Self {
        let mut out = GSeries::zero(self.order);
        for n in 1..=self.order {
            out.coeffs[n] = self.coeffs[n - 1].clone();
        }
        out
    }

    /// Multiplicative inverse; the constant term must be the unit
    /// polynomial 1.
    pub fn inverse(&self) -> Option<Self> {
        if self.coeffs[0] != MuPolynomial::one() {
            return None;
        }
        let mut inv = GSeries::zero(self.order);
        inv.coeffs[0] = MuPolynomial::one();
        for n in 1..=self.order {
            // inv_n = -sum_{k=1..n} a_k inv_{n-k}
            let mut acc = MuPolynomial::zero();
            for k in 1..=n {
                acc = acc.add(&self.coeffs[k].mul(&inv.coeffs[n - k]));
            }
            inv.coeffs[n] = acc.neg();
        }
        Some(inv)
    }

    /// `d/dg`, known to one order less.
    pub fn d_dg(&self) -> Self {
        let order = self.order.saturating_sub(1);
        GSeries {
            order,
            coeffs: (0..=order)
                .map(|n| {
                    self.coeffs[n + 1]
                        .scale(&BigRational::from(BigInt::from(n as u64 + 1)))
                })
                .collect(),
        }
    }

    /// `2g d/dg - mu d/dmu`, exact at the same order (the `g` factor
    /// restores what `d/dg` loses).
    pub fn euler_2g_dg_minus_mu_dmu(&self) -> Self {
        GSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, p)| {
                    let two_n = BigRational::from(BigInt::from(2 * n as u64));
                    p.scale(&two_n).sub(&p.mu_d_mu())
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Truncates (or zero-extends) to a new order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = GSeries::zero(order);
        for n in 0..=order.min(self.order) {
            out.coeffs[n] = self.coeffs[n].clone();
        }
        out
    }
}

/// The quartic couplings and the derived series variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Couplings {
    pub lambda1: BigRational,
    pub lambda2: BigRational,
}

impl Couplings {
    /// `g = lambda1^2`.
    pub fn g(&self) -> BigRational {
        &self.lambda1 * &self.lambda1
    }

    /// `mu = -lambda2 / lambda1^2`; `None` when `lambda1 = 0`.
    pub fn mu(&self) -> Option<BigRational> {
        if self.lambda1.is_zero() {
            return None;
        }
        Some(-&self.lambda2 / self.g())
    }
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `C_{p,q} = (4p + 2q)! / (p! q! (3p + q + 1)!)`, the number of
/// binary–quaternary plane trees with `p` quaternary and `q` binary
/// vertices. Divisibility is asserted: the ratio is always an integer.
pub fn c_pq(p: u64, q: u64) -> BigUint {
    let num = factorial(4 * p + 2 * q);
    let den = factorial(p) * factorial(q) * factorial(3 * p + q + 1);
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "C_{{p,q}} must be an integer");
    quot
}

fn big(u: BigUint) -> BigRational {
    BigRational::from(BigInt::from(u))
}

/// `alpha_n(mu) = sum_{p+q=n} C_{p,q} mu^q`, the exact coefficient of
/// `g^n` in the LO 2-point series.
pub fn alpha_n(n: u64) -> MuPolynomial {
    let mut out = MuPolynomial::zero();
    for q in 0..=n {
        out = out.add(&MuPolynomial::monomial(q as u32, big(c_pq(n - q, q))));
    }
    out
}

/// The LO 2-point series: the unique power-series solution of
/// `G = 1 + g G^2 (G^2 + mu)` with constant term 1, by fixed-point
/// iteration (each sweep increases the g-adic valuation of the error).
pub fn glo_series(order: usize) -> GSeries {
    let mu = MuPolynomial::monomial(1, BigRational::one());
    let mut g = GSeries::one(order);
    for _ in 0..=order {
        let g2 = g.mul(&g);
        let inner = g2.mul(&g2).add(&g2.scale(&mu));
        g = GSeries::one(order).add(&inner.mul_g());
    }
    g
}

/// The LO self-energy `Sigma_0 = g G^3 + g mu G` with `G` the LO series;
/// satisfies `G (1 - Sigma_0) = 1` as truncated series.
pub fn sigma0_series(order: usize) -> GSeries {
    let mu = MuPolynomial::monomial(1, BigRational::one());
    let g = glo_series(order);
    let g3 = g.mul(&g).mul(&g);
    g3.add(&g.scale(&mu)).mul_g()
}

/// The reduced NLO 2-point series.
///
/// The NLO 2-point function is `G_NLO = -sqrt(g) * h(g, mu)`; the square
/// root prefactor and the sign are carried as flags, the stored object is
/// the integer-power series `h = G^3 / (1 - g mu G^2 - 3 g G^4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NloReduced {
    pub series: GSeries,
    /// Always true: the full object carries a factor `sqrt(g)`.
    pub sqrt_g_prefactor: bool,
    /// Always true: the full object is `-sqrt(g) * series`.
    pub negated: bool,
}

pub fn gnlo_reduced_series(order: usize) -> NloReduced {
    let mu = MuPolynomial::monomial(1, BigRational::one());
    let g = glo_series(order);
    let g2 = g.mul(&g);
    let g3 = g2.mul(&g);
    let g4 = g2.mul(&g2);
    let three = MuPolynomial::constant(BigRational::from(BigInt::from(3)));
    let den = GSeries::one(order)
        .sub(&g2.scale(&mu).mul_g())
        .sub(&g4.scale(&three).mul_g());
    let inv = den.inverse().expect("denominator is a unit");
    NloReduced {
        series: g3.mul(&inv),
        sqrt_g_prefactor: true,
        negated: true,
    }
}

/// The LO free energy, normalized to `F(0, mu) = 0`: the coefficient of
/// `g^{p+q} mu^q` is `C_{p,q} / (2p + q)`. Satisfies
/// `(2g d/dg - mu d/dmu) F = G_LO - 1` exactly.
pub fn flo_series(order: usize) -> GSeries {
    let mut f = GSeries::zero(order);
    for n in 1..=order as u64 {
        let mut poly = MuPolynomial::zero();
        for q in 0..=n {
            let p = n - q;
            let weight = 2 * p + q; // non-zero since (p,q) != (0,0)
            let c = big(c_pq(p, q)) / BigRational::from(BigInt::from(weight));
            poly = poly.add(&MuPolynomial::monomial(q as u32, c));
        }
        f.set_coeff(n as usize, poly);
    }
    f
}

// ---------------------------------------------------------------------------
// Fixed-mu coefficient sequences (for asymptotics at high order)
// ---------------------------------------------------------------------------

// The fixed-mu recurrences run over plain big integers: with mu = P/Q the
// scaled coefficients alpha_n Q^n are integers, and BigInt products avoid
// the per-operation gcd reduction of rational arithmetic (prohibitive at
// n ~ 2000, where coefficients reach thousands of bits).

fn conv(x: &[BigInt], y: &[BigInt], n: usize) -> BigInt {
    (0..=n).map(|k| &x[k] * &y[n - k]).sum()
}

/// Scaled integer sequences A_n = alpha_n Q^n, B_n = (G^2)_n Q^n,
/// C_n = (G^4)_n Q^n for mu = P/Q.
fn scaled_alpha(p: &BigInt, q: &BigInt, n_max: usize) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let mut a = Vec::with_capacity(n_max + 1);
    let mut b = Vec::with_capacity(n_max + 1);
    let mut c = Vec::with_capacity(n_max + 1);
    a.push(BigInt::one());
    for n in 0..=n_max {
        b.push(conv(&a, &a, n));
        c.push(conv(&b, &b, n));
        if n < n_max {
            a.push(q * &c[n] + p * &b[n]);
        }
    }
    (a, b, c)
}

fn unscale(scaled: Vec<BigInt>, q: &BigInt) -> Vec<BigRational> {
    let mut qn = BigInt::one();
    scaled
        .into_iter()
        .map(|v| {
            let r = BigRational::new(v, qn.clone());
            qn *= q;
            r
        })
        .collect()
}

/// Exact coefficients `alpha_n(mu)` at a fixed rational `mu`, for
/// `n = 0..=n_max`, via the convolution recurrence of
/// `G = 1 + g G^2 (G^2 + mu)`. Quadratic in `n_max`; practical well past
/// `n_max = 2000`.
pub fn alpha_coeffs_at(mu: &BigRational, n_max: usize) -> Vec<BigRational> {
    let (a, _, _) = scaled_alpha(mu.numer(), mu.denom(), n_max);
    unscale(a, mu.denom())
}

/// Exact coefficients of the reduced NLO series `h` at a fixed rational
/// `mu`, for `n = 0..=n_max`.
pub fn nlo_h_coeffs_at(mu: &BigRational, n_max: usize) -> Vec<BigRational> {
    let (p, q) = (mu.numer(), mu.denom());
    let (a, b, c) = scaled_alpha(p, q, n_max);
    // num = G^3; den = 1 - g mu G^2 - 3 g G^4, all scaled by Q^n.
    let num: Vec<BigInt> = (0..=n_max).map(|n| conv(&b, &a, n)).collect();
    let three = BigInt::from(3);
    let mut den = Vec::with_capacity(n_max + 1);
    den.push(BigInt::one());
    for n in 1..=n_max {
        den.push(-(p * &b[n - 1]) - &three * q * &c[n - 1]);
    }
    let mut h: Vec<BigInt> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut v = num[n].clone();
        for k in 1..=n {
            v -= &den[k] * &h[n - k];
        }
        h.push(v);
    }
    unscale(h, q)
}

/// Natural log of a positive rational, safe for values far beyond the f64
/// range.
pub fn ln_rational(x: &BigRational) -> f64 {
    assert!(x.is_positive(), "ln of a non-positive rational");
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        let v: u64 = x.try_into().expect("fits in u64");
        return libm::log(v as f64);
    }
    let shift = bits - 53;
    let top: u64 = (x >> shift).try_into().expect("53 bits fit in u64");
    libm::log(top as f64) + shift as f64 * core::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int_poly(coeffs: &[(u32, i64)]) -> MuPolynomial {
        coeffs.iter().fold(MuPolynomial::zero(), |acc, &(q, c)| {
            acc.add(&MuPolynomial::monomial(q, rat(c, 1)))
        })
    }

    #[test]
    fn c_pq_values() {
        assert_eq!(c_pq(0, 0), BigUint::from(1u32));
        assert_eq!(c_pq(1, 0), BigUint::from(1u32));
        assert_eq!(c_pq(0, 1), BigUint::from(1u32));
        assert_eq!(c_pq(2, 0), BigUint::from(4u32));
        assert_eq!(c_pq(1, 1), BigUint::from(6u32));
        assert_eq!(c_pq(0, 2), BigUint::from(2u32));
    }

    #[test]
    fn alpha_small() {
        assert_eq!(alpha_n(0), MuPolynomial::one());
        assert_eq!(alpha_n(1), int_poly(&[(0, 1), (1, 1)]));
        assert_eq!(alpha_n(2), int_poly(&[(0, 4), (1, 6), (2, 2)]));
    }

    /// Independent oracle for alpha_n: the displayed single sum
    /// `sum_q mu^q / (3n - 2q + 1) C(n, q) C(4n - 2q, n)`.
    fn alpha_n_binomial(n: u64) -> MuPolynomial {
        let binom = |n: u64, k: u64| -> BigUint {
            if k > n {
                return BigUint::default();
            }
            let (q, r) = (factorial(n)).div_rem(&(factorial(k) * factorial(n - k)));
            assert!(r.is_zero());
            q
        };
        let mut out = MuPolynomial::zero();
        for q in 0..=n {
            let c = big(binom(n, q) * binom(4 * n - 2 * q, n))
                / BigRational::from(BigInt::from(3 * n - 2 * q + 1));
            out = out.add(&MuPolynomial::monomial(q as u32, c));
        }
        out
    }

    #[test]
    fn alpha_matches_binomial_sum() {
        for n in 0..=12 {
            assert_eq!(alpha_n(n), alpha_n_binomial(n), "n = {n}");
        }
    }

    #[test]
    fn glo_coefficients_are_alpha() {
        let g = glo_series(20);
        for n in 0..=20 {
            assert_eq!(*g.coeff(n), alpha_n(n as u64), "n = {n}");
        }
    }

    #[test]
    fn glo_coefficients_are_nonnegative_integers() {
        let g = glo_series(16);
        for n in 0..=16 {
            for (_, c) in g.coeff(n).terms() {
                assert!(c.is_integer());
                assert!(!c.is_negative());
            }
        }
    }

    #[test]
    fn sigma0_relation() {
        let order = 20;
        let g = glo_series(order);
        let s = sigma0_series(order);
        assert!(s.coeff(0).is_zero());
        assert_eq!(*s.coeff(1), int_poly(&[(0, 1), (1, 1)]));
        // (1 - Sigma_0) G = 1
        let lhs = GSeries::one(order).sub(&s).mul(&g);
        assert_eq!(lhs, GSeries::one(order));
    }

    #[test]
    fn glo_satisfies_its_equation() {
        let order = 20;
        let mu = MuPolynomial::monomial(1, BigRational::one());
        let g = glo_series(order);
        let g2 = g.mul(&g);
        let rhs = GSeries::one(order).add(&g2.mul(&g2).add(&g2.scale(&mu)).mul_g());
        assert_eq!(g, rhs);
    }

    #[test]
    fn nlo_reduced_small_coefficients() {
        let h = gnlo_reduced_series(20);
        assert!(h.sqrt_g_prefactor && h.negated);
        assert_eq!(*h.series.coeff(0), MuPolynomial::one());
        assert_eq!(*h.series.coeff(1), int_poly(&[(0, 6), (1, 4)]));
    }

    #[test]
    fn nlo_reduced_matches_dg_identity() {
        // h (G^2 + mu) = dG/dg through one order less than the truncation.
        let order = 21;
        let mu = MuPolynomial::monomial(1, BigRational::one());
        let g = glo_series(order);
        let h = gnlo_reduced_series(order).series;
        let g2 = g.mul(&g);
        let lhs = h.mul(&g2.add(&GSeries::zero(order).add(&{
            let mut m = GSeries::zero(order);
            m.set_coeff(0, mu.clone());
            m
        })));
        let rhs = g.d_dg();
        assert_eq!(lhs.truncate(order - 1), rhs);
    }

    #[test]
    fn flo_relation() {
        let order = 20;
        let f = flo_series(order);
        assert!(f.coeff(0).is_zero());
        assert_eq!(f.coeff(1).coefficient(0), rat(1, 2)); // C_{1,0}/2
        assert_eq!(f.coeff(1).coefficient(1), rat(1, 1)); // C_{0,1}/1
        // (2g d/dg - mu d/dmu) F + 1 = G_LO
        let lhs = f.euler_2g_dg_minus_mu_dmu().add(&GSeries::one(order));
        assert_eq!(lhs, glo_series(order));
    }

    #[test]
    fn couplings_parametrization() {
        let c = Couplings {
            lambda1: rat(3, 1),
            lambda2: rat(-18, 1),
        };
        assert_eq!(c.g(), rat(9, 1));
        assert_eq!(c.mu(), Some(rat(2, 1)));
        let degenerate = Couplings {
            lambda1: rat(0, 1),
            lambda2: rat(1, 1),
        };
        assert_eq!(degenerate.mu(), None);
    }

    #[test]
    fn fixed_mu_coeffs_match_symbolic() {
        for mu in [rat(0, 1), rat(1, 1), rat(3, 1), rat(-1, 2)] {
            let a = alpha_coeffs_at(&mu, 12);
            for n in 0..=12 {
                assert_eq!(a[n], alpha_n(n as u64).eval(&mu), "mu={mu} n={n}");
            }
            let h = nlo_h_coeffs_at(&mu, 12);
            let hs = gnlo_reduced_series(12).series;
            for n in 0..=12 {
                assert_eq!(h[n], hs.coeff(n).eval(&mu), "mu={mu} n={n}");
            }
        }
    }

    #[test]
    fn ln_rational_large_values() {
        let mu = rat(1, 1);
        let a = alpha_coeffs_at(&mu, 60);
        let ln60 = ln_rational(&a[60]);
        let ln59 = ln_rational(&a[59]);
        // Ratio of consecutive coefficients approaches 1/g_c(1) ~ 14.5.
        let ratio = libm::exp(ln60 - ln59);
        assert!(ratio > 12.5 && ratio < 15.0, "ratio {ratio}");
    }
}
