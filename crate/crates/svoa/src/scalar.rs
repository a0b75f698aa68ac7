//! Exact scalars in the cyclotomic field Q(zeta_8).
//!
//! Every structure constant appearing in the algebra lies in the field
//! generated over Q by a primitive eighth root of unity `z = zeta_8 =
//! exp(i pi/4)`.  An element is stored on the power basis `{1, z, z^2, z^3}`
//! with `z^4 = -1`; in particular `i = z^2` and `sqrt(2) = z - z^3`.
//!
//! Coefficients are arbitrary-precision rationals so that all computations in
//! the crate are exact.  The companion type [`Frac`] is a small machine
//! rational used for mode indices, conformal weights and lattice inner
//! products, all of which live in `(1/4)Z` in this application.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Small exact rational for gradings, mode indices and inner products.
pub type Frac = Ratio<i64>;

/// Convenience constructor for [`Frac`].
pub fn frac(num: i64, den: i64) -> Frac {
    Ratio::new(num, den)
}

/// True if the rational is an integer.
pub fn frac_is_int(f: Frac) -> bool {
    f.is_integer()
}

/// Binomial coefficient `binom(x, k)` with rational (possibly negative) upper
/// argument and non-negative integer lower argument, as a rational.
pub fn binom_frac(x: Frac, k: u32) -> Frac {
    let mut out = Frac::one();
    for t in 0..k {
        out *= x - Frac::from_integer(t as i64);
        out /= Frac::from_integer((t + 1) as i64);
    }
    out
}

/// Integer binomial coefficient with a possibly negative upper argument.
pub fn binom_i64(n: i64, k: u32) -> BigRational {
    let b = binom_frac(Frac::from_integer(n), k);
    BigRational::new(BigInt::from(*b.numer()), BigInt::from(*b.denom()))
}

/// An element of Q(zeta_8) on the basis `{1, z, z^2, z^3}`, `z^4 = -1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    c: [BigRational; 4],
}

impl Scalar {
    /// The zero element.
    pub fn zero() -> Self {
        Scalar {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    /// The unit element.
    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// Construct from the four basis coefficients.
    pub fn from_coeffs(c: [BigRational; 4]) -> Self {
        Scalar { c }
    }

    /// Borrow the basis coefficients.
    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    /// Embed an integer.
    pub fn from_int(n: i64) -> Self {
        let mut s = Scalar::zero();
        s.c[0] = BigRational::from_integer(BigInt::from(n));
        s
    }

    /// Embed a small rational.
    pub fn from_frac(f: Frac) -> Self {
        let mut s = Scalar::zero();
        s.c[0] = BigRational::new(BigInt::from(*f.numer()), BigInt::from(*f.denom()));
        s
    }

    /// Embed a big rational.
    pub fn from_big(q: BigRational) -> Self {
        let mut s = Scalar::zero();
        s.c[0] = q;
        s
    }

    /// `zeta_8^k` for any integer `k` (negative allowed).
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8);
        let (idx, sign) = if k < 4 { (k, 1) } else { (k - 4, -1) };
        let mut s = Scalar::zero();
        s.c[idx as usize] = BigRational::from_integer(BigInt::from(sign));
        s
    }

    /// The imaginary unit `i = z^2`.
    pub fn i() -> Self {
        Scalar::zeta_pow(2)
    }

    /// `sqrt(2) = z - z^3`.
    pub fn sqrt2() -> Self {
        Scalar::zeta_pow(1) - Scalar::zeta_pow(3)
    }

    /// `1/sqrt(2) = (z - z^3)/2`.
    pub fn inv_sqrt2() -> Self {
        let mut s = Scalar::sqrt2();
        for c in &mut s.c {
            *c /= BigRational::from_integer(BigInt::from(2));
        }
        s
    }

    /// `exp(i pi x)` for rational `x` with `4x` integral; panics otherwise.
    ///
    /// All phases occurring in the algebra (commutation factors, branch
    /// factors `(-1)^n` for half-integral `n`) are of this form.
    pub fn e_ipi(x: Frac) -> Self {
        let k = x * Frac::from_integer(4);
        assert!(
            k.is_integer(),
            "exp(i pi x) requires x in (1/4)Z, got {}",
            x
        );
        Scalar::zeta_pow(*k.numer())
    }

    /// True if this is the zero element.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// True if this element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    /// The element as a rational number, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// The element as a small rational, if it lies in Q and fits in `i64`.
    pub fn as_frac(&self) -> Option<Frac> {
        let q = self.as_rational()?;
        let n = i64::try_from(q.numer()).ok()?;
        let d = i64::try_from(q.denom()).ok()?;
        Some(Ratio::new(n, d))
    }

    /// Complex conjugation: `z -> z^-1`.
    pub fn conj(&self) -> Self {
        Scalar {
            c: [
                self.c[0].clone(),
                -self.c[3].clone(),
                -self.c[2].clone(),
                -self.c[1].clone(),
            ],
        }
    }

    /// Multiplicative inverse; `None` for zero.
    ///
    /// Solves the 4x4 linear system `self * x = 1` over Q by Gaussian
    /// elimination on the multiplication matrix of `self`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Column j of the multiplication matrix is self * z^j; augmented
        // with the right-hand side e_0 = 1.
        let mut a = vec![vec![BigRational::zero(); 5]; 4];
        for j in 0..4usize {
            let col = self.clone() * Scalar::zeta_pow(j as i64);
            for i in 0..4 {
                a[i][j] = col.c[i].clone();
            }
        }
        a[0][4] = BigRational::one();
        // Gaussian elimination with partial (first nonzero) pivoting.
        let mut row = 0usize;
        for col in 0..4 {
            let piv = (row..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(row, piv);
            let p = a[row][col].clone();
            for x in &mut a[row] {
                *x /= p.clone();
            }
            for r in 0..4 {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for cidx in 0..5 {
                        let sub = f.clone() * a[row][cidx].clone();
                        a[r][cidx] -= sub;
                    }
                }
            }
            row += 1;
        }
        let mut out = Scalar::zero();
        for i in 0..4 {
            out.c[i] = a[i][4].clone();
        }
        Some(out)
    }

    /// Multiply by a small rational in place.
    pub fn scale_frac(&mut self, f: Frac) {
        let q = BigRational::new(BigInt::from(*f.numer()), BigInt::from(*f.denom()));
        for c in &mut self.c {
            *c *= q.clone();
        }
    }

    /// `self * f` for a small rational `f`.
    pub fn times_frac(&self, f: Frac) -> Self {
        let mut s = self.clone();
        s.scale_frac(f);
        s
    }

    /// Integer power (negative exponents via [`Scalar::inv`]).
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 {
            self.inv().expect("pow of zero with negative exponent")
        } else {
            self.clone()
        };
        let mut out = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            out *= base.clone();
        }
        out
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        for i in 0..4 {
            self.c[i] += rhs.c[i].clone();
        }
        self
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: &'a Scalar) -> Scalar {
        for i in 0..4 {
            self.c[i] += rhs.c[i].clone();
        }
        self
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        for i in 0..4 {
            self.c[i] += rhs.c[i].clone();
        }
    }
}

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &'a Scalar) {
        for i in 0..4 {
            self.c[i] += rhs.c[i].clone();
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        for i in 0..4 {
            self.c[i] -= rhs.c[i].clone();
        }
        self
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        for i in 0..4 {
            self.c[i] -= rhs.c[i].clone();
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in &mut self.c {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl<'b> Mul<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'b Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                let p = self.c[i].clone() * rhs.c[j].clone();
                let k = i + j;
                if k < 4 {
                    out.c[k] += p;
                } else {
                    out.c[k - 4] -= p;
                }
            }
        }
        out
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = &*self * &rhs;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    // Division in Q(zeta_8) is multiplication by the field inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Scalar) -> Scalar {
        &self * &rhs.inv().expect("division by zero scalar")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}z", if unit_coeff { "" } else { "*" })?,
                k => write!(f, "{}z^{}", if unit_coeff { "" } else { "*" }, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(seed: u64, n: usize) -> Vec<Scalar> {
        // Deterministic small pseudo-random scalars (xorshift64*).
        let mut s = seed.max(1);
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        (0..n)
            .map(|_| {
                let mut v = Scalar::zero();
                for i in 0..4 {
                    let num = (next() % 11) as i64 - 5;
                    let den = (next() % 4) as i64 + 1;
                    v.c[i] = BigRational::new(BigInt::from(num), BigInt::from(den));
                }
                v
            })
            .collect()
    }

    #[test]
    fn basic_identities() {
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        assert_eq!(Scalar::sqrt2() * Scalar::sqrt2(), Scalar::from_int(2));
        assert_eq!(
            Scalar::sqrt2() * Scalar::inv_sqrt2(),
            Scalar::one()
        );
        // zeta = (1 + i)/sqrt(2).
        let lhs = (Scalar::one() + Scalar::i()) * Scalar::inv_sqrt2();
        assert_eq!(lhs, Scalar::zeta_pow(1));
        // zeta^8 = 1, zeta^4 = -1.
        assert_eq!(Scalar::zeta_pow(1).pow(8), Scalar::one());
        assert_eq!(Scalar::zeta_pow(1).pow(4), Scalar::from_int(-1));
        assert_eq!(Scalar::zeta_pow(-1), Scalar::zeta_pow(7));
    }

    #[test]
    fn e_ipi_values() {
        assert_eq!(Scalar::e_ipi(frac(1, 2)), Scalar::i());
        assert_eq!(Scalar::e_ipi(frac(1, 1)), Scalar::from_int(-1));
        assert_eq!(Scalar::e_ipi(frac(-1, 2)), -Scalar::i());
        assert_eq!(Scalar::e_ipi(frac(0, 1)), Scalar::one());
        assert_eq!(Scalar::e_ipi(frac(1, 4)), Scalar::zeta_pow(1));
    }

    #[test]
    fn field_axioms_on_samples() {
        let xs = sample(42, 8);
        for a in &xs {
            for b in &xs {
                // Commutativity.
                assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
                for c in &xs {
                    // Associativity and distributivity.
                    assert_eq!(
                        (a.clone() * b.clone()) * c.clone(),
                        a.clone() * (b.clone() * c.clone())
                    );
                    assert_eq!(
                        a.clone() * (b.clone() + c.clone()),
                        a.clone() * b.clone() + a.clone() * c.clone()
                    );
                }
            }
        }
    }

    #[test]
    fn inverses() {
        let xs = sample(7, 12);
        for a in &xs {
            if a.is_zero() {
                continue;
            }
            let inv = a.inv().unwrap();
            assert_eq!(a.clone() * inv, Scalar::one());
        }
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn conjugation() {
        let xs = sample(99, 8);
        for a in &xs {
            for b in &xs {
                assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
            }
            // a * conj(a) is real, i.e. fixed by conjugation.
            let n = a.clone() * a.conj();
            assert_eq!(n.conj(), n);
        }
        assert_eq!(Scalar::i().conj(), -Scalar::i());
        assert_eq!(Scalar::sqrt2().conj(), Scalar::sqrt2());
    }

    #[test]
    fn display_format() {
        let x = Scalar::one() + Scalar::zeta_pow(2).times_frac(frac(3, 2));
        assert_eq!(x.to_string(), "1 + 3/2*z^2");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-Scalar::one()).to_string(), "-1");
        assert_eq!(Scalar::zeta_pow(3).to_string(), "z^3");
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_frac(frac(5, 1), 2), frac(10, 1));
        assert_eq!(binom_frac(frac(-1, 1), 3), frac(-1, 1));
        assert_eq!(binom_frac(frac(-3, 1), 2), frac(6, 1));
        assert_eq!(binom_frac(frac(1, 2), 2), frac(-1, 8));
        assert_eq!(binom_frac(frac(3, 1), 0), frac(1, 1));
    }
}
