//! Exact coefficients: arbitrary-precision rationals and the cyclotomic field
//! Q(zeta_12).
//!
//! An element of Q(zeta_12) is stored in the power basis {1, z, z^2, z^3}
//! with z = exp(2 pi i / 12), reduced by z^4 = z^2 - 1. The field contains
//! `i = z^3` and `omega = z^4 = z^2 - 1`, which covers every constant the
//! identity bank needs.
//!
//! Elements whose irrational part vanishes are kept in a separate rational
//! variant, so purely rational work never touches the four-term product.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`, reducing to lowest terms.
///
/// Panics if `den == 0`; use [`try_rational`] for untrusted input.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn try_rational(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::DivisionByZero("rational with zero denominator".into()));
    }
    Ok(rational(num, den))
}

/// `z^m` for `m` in 0..6 in the reduced basis; `z^(m+6) = -z^m`.
const ZETA_POWERS: [[i8; 4]; 6] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 0, 1, 0],
    [0, -1, 0, 1],
];

fn zeta_power(m: i64) -> [i8; 4] {
    let m = m.rem_euclid(12) as usize;
    let base = ZETA_POWERS[m % 6];
    if m < 6 {
        base
    } else {
        base.map(|c| -c)
    }
}

/// An exact element of Q(zeta_12).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CycNumber {
    /// Rational element.
    Rat(Rational),
    /// Element with a nonzero irrational part, coefficients of
    /// `1, z, z^2, z^3`. At least one of the last three is nonzero.
    Cyc(Box<[Rational; 4]>),
}

impl CycNumber {
    pub fn zero() -> Self {
        CycNumber::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        CycNumber::Rat(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        CycNumber::Rat(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        CycNumber::Rat(rational(num, den))
    }

    /// Builds `c0 + c1 z + c2 z^2 + c3 z^3`.
    pub fn from_basis(coeffs: [Rational; 4]) -> Self {
        if coeffs[1].is_zero() && coeffs[2].is_zero() && coeffs[3].is_zero() {
            let [c0, ..] = coeffs;
            CycNumber::Rat(c0)
        } else {
            CycNumber::Cyc(Box::new(coeffs))
        }
    }

    /// The primitive twelfth root of unity `z`.
    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// `z^m` for any integer `m`.
    pub fn zeta_pow(m: i64) -> Self {
        let p = zeta_power(m);
        Self::from_basis(p.map(|c| Rational::from_integer(BigInt::from(c))))
    }

    /// `i`, the element `z^3` with `i^2 = -1`.
    pub fn i() -> Self {
        Self::zeta_pow(3)
    }

    /// `omega = exp(2 pi i / 3) = z^4`.
    pub fn omega() -> Self {
        Self::zeta_pow(4)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CycNumber::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, CycNumber::Rat(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, CycNumber::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            CycNumber::Rat(r) => Some(r),
            CycNumber::Cyc(_) => None,
        }
    }

    /// Coefficients in the basis `1, z, z^2, z^3`.
    pub fn basis_coeffs(&self) -> [Rational; 4] {
        match self {
            CycNumber::Rat(r) => [r.clone(), Rational::zero(), Rational::zero(), Rational::zero()],
            CycNumber::Cyc(c) => (**c).clone(),
        }
    }

    /// Product through the four-term basis even when both operands are
    /// rational. Kept public so the rational fast path can be checked
    /// against it.
    pub fn mul_generic(&self, other: &Self) -> Self {
        let x = self.basis_coeffs();
        let y = other.basis_coeffs();
        let mut p: [Rational; 7] = Default::default();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    p[i + j] += xi * yj;
                }
            }
        }
        // z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
        let [p0, p1, p2, p3, p4, p5, p6] = p;
        Self::from_basis([p0 - &p4 - p6, p1 - &p5, p2 + p4, p3 + p5])
    }

    /// Image under the automorphism `z -> z^j` (`j` coprime to 12).
    fn galois(&self, j: i64) -> Self {
        let c = self.basis_coeffs();
        let mut out: [Rational; 4] = Default::default();
        for (m, cm) in c.iter().enumerate() {
            if cm.is_zero() {
                continue;
            }
            let zp = zeta_power(j * m as i64);
            for (slot, &v) in out.iter_mut().zip(zp.iter()) {
                match v {
                    0 => {}
                    1 => *slot += cm,
                    -1 => *slot -= cm,
                    _ => unreachable!(),
                }
            }
        }
        Self::from_basis(out)
    }

    /// Multiplicative inverse; the product of the three nontrivial Galois
    /// conjugates divided by the (rational) field norm.
    pub fn inv(&self) -> Result<Self> {
        match self {
            CycNumber::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero("inverse of zero".into()))
                } else {
                    Ok(CycNumber::Rat(r.recip()))
                }
            }
            CycNumber::Cyc(_) => {
                let conj = self.galois(5).mul_generic(&self.galois(7)).mul_generic(&self.galois(11));
                let norm = self.mul_generic(&conj);
                let n = norm
                    .as_rational()
                    .expect("field norm is rational")
                    .clone();
                Ok(conj.scale(&n.recip()))
            }
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        match self {
            CycNumber::Rat(x) => CycNumber::Rat(x * r),
            CycNumber::Cyc(c) => {
                if r.is_zero() {
                    Self::zero()
                } else {
                    CycNumber::Cyc(Box::new([&c[0] * r, &c[1] * r, &c[2] * r, &c[3] * r]))
                }
            }
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Coordinates in the basis `1, omega, i, i*omega`, which is how
    /// values are rendered. Uses `z = -i*omega`.
    pub fn omega_i_coords(&self) -> [Rational; 4] {
        let [c0, c1, c2, c3] = self.basis_coeffs();
        [&c0 + &c2, c2, c3, -c1]
    }
}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for CycNumber {
    fn from(r: Rational) -> Self {
        CycNumber::Rat(r)
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        CycNumber::from_int(n)
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        match (self, rhs) {
            (CycNumber::Rat(a), CycNumber::Rat(b)) => CycNumber::Rat(a + b),
            _ => {
                let a = self.basis_coeffs();
                let b = rhs.basis_coeffs();
                CycNumber::from_basis([&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2], &a[3] + &b[3]])
            }
        }
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        match (self, rhs) {
            (CycNumber::Rat(a), CycNumber::Rat(b)) => CycNumber::Rat(a - b),
            _ => {
                let a = self.basis_coeffs();
                let b = rhs.basis_coeffs();
                CycNumber::from_basis([&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2], &a[3] - &b[3]])
            }
        }
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        match (self, rhs) {
            (CycNumber::Rat(a), CycNumber::Rat(b)) => CycNumber::Rat(a * b),
            (CycNumber::Rat(a), other) | (other, CycNumber::Rat(a)) => other.scale(a),
            _ => self.mul_generic(rhs),
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        match self {
            CycNumber::Rat(a) => CycNumber::Rat(-a),
            CycNumber::Cyc(c) => CycNumber::Cyc(Box::new([-&c[0], -&c[1], -&c[2], -&c[3]])),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Div<&CycNumber> for &CycNumber {
    type Output = CycNumber;
    /// Panics on division by zero; prefer [`CycNumber::checked_div`].
    fn div(self, rhs: &CycNumber) -> CycNumber {
        self.checked_div(rhs).expect("division by zero in Q(zeta_12)")
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNumber {
    /// Exact rendering in the basis `1, ω, i, iω`, e.g. `-4/3+2ω`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let CycNumber::Rat(r) = self {
            return f.write_str(&fmt_rational(r));
        }
        let coords = self.omega_i_coords();
        let names = ["", "ω", "i", "iω"];
        let mut out = String::new();
        for (c, name) in coords.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if name.is_empty() {
                out.push_str(&fmt_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rational(&mag));
                }
                out.push_str(name);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(c: [i64; 4]) -> CycNumber {
        CycNumber::from_basis(c.map(|v| rational(v, 1)))
    }

    /// Brute-force reduction of a polynomial in z modulo z^4 - z^2 + 1 by
    /// repeated substitution of the top term.
    fn reduce_poly(mut p: Vec<i64>) -> [i64; 4] {
        while p.len() > 4 {
            let top = p.pop().unwrap();
            let d = p.len();
            // z^d = z^(d-2) - z^(d-4)
            p[d - 2] += top;
            p[d - 4] -= top;
        }
        p.resize(4, 0);
        [p[0], p[1], p[2], p[3]]
    }

    #[test]
    fn basis_addition() {
        assert_eq!(&basis([1, 0, 0, 0]) + &basis([0, 1, 0, 0]), basis([1, 1, 0, 0]));
        let x = basis([3, -1, 2, 5]);
        assert_eq!(&x + &CycNumber::zero(), x);
    }

    #[test]
    fn omega_plus_omega_squared_is_minus_one() {
        let w = CycNumber::omega();
        let w2 = &w * &w;
        assert_eq!(&w + &w2, CycNumber::from_int(-1));
        // oracle: omega = z^4, omega^2 = z^8
        let mut p = vec![0i64; 9];
        p[4] += 1;
        p[8] += 1;
        assert_eq!(reduce_poly(p), [-1, 0, 0, 0]);
    }

    #[test]
    fn roots_of_unity() {
        let i = CycNumber::i();
        assert_eq!(&i * &i, CycNumber::from_int(-1));
        let w = CycNumber::omega();
        assert_eq!(&(&w * &w) * &w, CycNumber::one());
        let z3 = CycNumber::zeta_pow(3);
        assert_eq!(&z3 * &z3, CycNumber::from_int(-1));
        assert_eq!(reduce_poly(vec![0, 0, 0, 0, 0, 0, 1]), [-1, 0, 0, 0]);
        assert_eq!(CycNumber::zeta().pow(12).unwrap(), CycNumber::one());
    }

    #[test]
    fn inverses() {
        assert_eq!(CycNumber::one().inv().unwrap(), CycNumber::one());
        assert_eq!(CycNumber::i().inv().unwrap(), -CycNumber::i());
        let x = &CycNumber::one() - &CycNumber::omega();
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycNumber::one());
        assert!(CycNumber::zero().inv().is_err());
    }

    #[test]
    fn product_matches_polynomial_oracle() {
        let a = [2i64, -3, 1, 4];
        let b = [-1i64, 5, 0, 2];
        let mut p = vec![0i64; 7];
        for i in 0..4 {
            for j in 0..4 {
                p[i + j] += a[i] * b[j];
            }
        }
        assert_eq!(&basis(a) * &basis(b), basis(reduce_poly(p)));
    }

    #[test]
    fn rendering() {
        let x = &CycNumber::from_ratio(-4, 3) + &(&CycNumber::from_int(2) * &CycNumber::omega());
        assert_eq!(x.to_string(), "-4/3+2ω");
        assert_eq!(CycNumber::i().to_string(), "i");
        assert_eq!((-CycNumber::zeta()).to_string(), "iω");
        assert_eq!(CycNumber::from_ratio(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn rational_reduction_idempotent() {
        let r = rational(12, -18);
        assert_eq!(r, rational(-2, 3));
        let again = Rational::new(r.numer().clone(), r.denom().clone());
        assert_eq!(again, r);
        assert!(try_rational(1, 0).is_err());
    }
}
