//! Truncated q-series: the Euler function, the root multiplicity series
//! `c(n)`, the denominator series `a(n)`, the partition trace identity and
//! the asymptotic growth of the root multiplicities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A formal power series in `q` truncated at order `n`: coefficients of
/// `q^0 .. q^n` as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn zero(n: usize) -> Self {
        QSeries {
            coeffs: vec![BigRational::zero(); n + 1],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The monomial `c q^k`, truncated at order `n` (zero if `k > n`).
    pub fn monomial(n: usize, k: usize, c: BigRational) -> Self {
        let mut s = Self::zero(n);
        if k <= n {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Self {
        let n = self.order();
        assert!(!self.coeffs[0].is_zero(), "series not invertible");
        let c0 = self.coeffs[0].recip();
        let mut out = Self::zero(n);
        out.coeffs[0] = c0.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out.coeffs[k - j];
            }
            out.coeffs[k] = -acc * &c0;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitute `q -> q^k`, truncating at the same order.
    pub fn compose_power(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * k <= n {
                out.coeffs[i * k] = a.clone();
            }
        }
        out
    }
}

/// The Euler function `phi(q) = prod_{m>=1} (1 - q^m)` to order `n`.
pub fn euler_phi(n: usize) -> QSeries {
    let mut out = QSeries::one(n);
    for m in 1..=n {
        let mut f = QSeries::one(n);
        f.coeffs[m] = -BigRational::one();
        out = out.mul(&f);
    }
    out
}

/// The root multiplicity series `8 prod_{m>=1} ((1+q^m)/(1-q^m))^8
/// = sum c(n) q^n = 8 + 128q + 1152q^2 + ...`.
pub fn c_series(n: usize) -> QSeries {
    let phi = euler_phi(n);
    let phi2 = euler_phi(n).compose_power(2);
    // (1+q^m) terms: phi(q^2)/phi(q); hence the product is (phi(q^2)/phi^2)^8.
    let ratio = phi2.mul(&phi.pow(2).inv()).pow(8);
    let mut out = ratio;
    for c in out.coeffs.iter_mut() {
        *c *= BigRational::from_integer(BigInt::from(8));
    }
    out
}

/// The denominator series `prod_{m>=1} ((1-q^m)/(1+q^m))^8
/// = sum a(n) q^n = 1 - 16q + 112q^2 - 448q^3 + ...`.
pub fn a_series(n: usize) -> QSeries {
    let phi = euler_phi(n);
    let phi2 = euler_phi(n).compose_power(2);
    phi.pow(2).mul(&phi2.inv()).pow(8)
}

/// The exact coefficient `c(n)` as a big integer.
pub fn c_coeff(n: usize) -> BigInt {
    let s = c_series(n);
    let v = s.coeff(n);
    assert!(v.is_integer());
    v.to_integer()
}

/// Report for the asymptotic approximation
/// `c(n) ~ 1/2 n^{-11/4} e^{2 pi sqrt(2n)}`.  The transcendental part is the
/// only non-exact computation in the crate.
///
/// Note: a saddle-point analysis of the underlying eta quotient
/// `8 eta(2 tau)^8 / eta(tau)^16` gives the leading asymptotic
/// `c(n) ~ 1/2 (2n)^{-11/4} e^{2 pi sqrt(2n)}`, i.e. the quoted constant is
/// too large by `2^{11/4}`, and the corrections decay only like
/// `1/sqrt(n)`.  The report divides by the formula exactly as quoted.
#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub n: usize,
    pub exact: BigInt,
    pub approx: f64,
    pub ratio: f64,
}

pub fn asymptotic_ratio(n: usize) -> AsymptoticReport {
    let exact = c_coeff(n);
    let nf = n as f64;
    let approx = 0.5 * nf.powf(-11.0 / 4.0) * (2.0 * std::f64::consts::PI * (2.0 * nf).sqrt()).exp();
    let ratio = exact.to_f64().expect("c(n) fits in f64 range") / approx;
    AsymptoticReport {
        n,
        exact,
        approx,
        ratio,
    }
}

/// The lattice-sum side of the partition trace identity:
/// `sum (-1)^m q^{lambda^2/2 - p^2/2 + m(m+1)/2 + 1/2}` over
/// `(lambda, -p-1)` in the even sublattice of the fermion-superghost
/// momentum lattice (integral entries with even coordinate sum) and
/// `m >= |p|`, truncated at order `n`.
pub fn trace_lattice_side(n: usize) -> QSeries {
    let n_i = n as i64;
    let mut out = QSeries::zero(n);
    // Minimal exponent for fixed (lambda, p) is lambda^2/2 + |p|/2 + 1/2,
    // so the sums over lambda and p are finite.
    let mut lam = [0i64; 5];
    enumerate_lambda(&mut lam, 0, 2 * n_i, &mut |lam| {
        let l2: i64 = lam.iter().map(|x| x * x).sum();
        let lam_sum: i64 = lam.iter().sum();
        for p in -(2 * n_i)..=(2 * n_i) {
            // Parity: lambda_sum + (-p-1) must be even.
            if (lam_sum - p - 1).rem_euclid(2) != 0 {
                continue;
            }
            if l2 + p.abs() + 1 > 2 * n_i + 1 {
                continue;
            }
            let mut m = p.abs();
            loop {
                let twice = l2 - p * p + m * (m + 1) + 1;
                if twice > 2 * n_i {
                    break;
                }
                assert!(twice >= 0 && twice % 2 == 0, "non-integral exponent");
                let e = (twice / 2) as usize;
                let sign = if m % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                };
                out.coeffs[e] += sign;
                m += 1;
            }
        }
    });
    out
}

fn enumerate_lambda(lam: &mut [i64; 5], i: usize, budget: i64, f: &mut impl FnMut(&[i64; 5])) {
    if i == 5 {
        f(lam);
        return;
    }
    let r = budget.isqrt();
    for v in -r..=r {
        if v * v <= budget {
            lam[i] = v;
            enumerate_lambda(lam, i + 1, budget - v * v, f);
        }
    }
    lam[i] = 0;
}

/// The closed-form side of the trace identity: `8 q phi(q^2)^8 / phi(q)`.
pub fn trace_closed_side(n: usize) -> QSeries {
    let phi = euler_phi(n);
    let phi2 = euler_phi(n).compose_power(2);
    let s = phi2.pow(8).mul(&phi.inv());
    let mut out = QSeries::zero(n);
    for k in 1..=n {
        out.coeffs[k] = s.coeffs[k - 1].clone() * BigRational::from_integer(BigInt::from(8));
    }
    out
}
