//! Truncated formal Laurent series in one variable `t` with exact
//! coefficients in Q(zeta_12).
//!
//! A series stores its coefficients densely on `[lower, order]`. Exponents
//! above `order` are unknown, never assumed zero. Leading zeros are stripped
//! on construction, so `lower` is the true valuation of a nonzero series and
//! the number of stored coefficients is its relative precision. Every
//! operation computes the order it can actually guarantee.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeff::CycNumber;
use crate::error::{Error, Result};

/// Guard against runaway summation when a bound grows too slowly.
const MAX_TERMS: i64 = 1_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    lower: i64,
    order: i64,
    coeffs: Vec<CycNumber>,
}

/// First disagreement found by [`LaurentSeries::first_mismatch`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub left: CycNumber,
    pub right: CycNumber,
}

impl LaurentSeries {
    /// Builds a series from coefficients of `t^lower, t^(lower+1), ...`,
    /// dropping anything above `order`.
    pub fn from_coeffs(lower: i64, mut coeffs: Vec<CycNumber>, order: i64) -> Self {
        let keep = (order - lower + 1).max(0) as usize;
        coeffs.resize(keep, CycNumber::zero());
        let mut s = LaurentSeries { lower, order, coeffs };
        s.normalize();
        s
    }

    /// The zero series known up to `order`.
    pub fn zero(order: i64) -> Self {
        LaurentSeries { lower: order + 1, order, coeffs: Vec::new() }
    }

    pub fn one(order: i64) -> Self {
        Self::constant(CycNumber::one(), order)
    }

    pub fn constant(c: CycNumber, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    /// `c t^exp`, known up to `order`.
    pub fn monomial(c: CycNumber, exp: i64, order: i64) -> Self {
        Self::from_coeffs(exp, vec![c], order)
    }

    /// Builds `sum c_e t^e` from sparse `(e, c_e)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, CycNumber)>>(terms: I, order: i64) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(e, _)| *e <= order).collect();
        let Some(lower) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(order);
        };
        let mut coeffs = vec![CycNumber::zero(); (order - lower + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lower) as usize];
            *slot = &*slot + &c;
        }
        Self::from_coeffs(lower, coeffs, order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lower += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lower = self.order + 1;
        }
    }

    /// Lowest exponent that may carry a nonzero coefficient. For a nonzero
    /// series this is the valuation; for zero it is `order + 1`.
    pub fn lower(&self) -> i64 {
        self.lower
    }

    /// Coefficients are exact for every exponent `<= order`.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Valuation, or `None` for a series that is zero on its known range.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.lower)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^e`, or `None` when `e > order`.
    pub fn coeff(&self, e: i64) -> Option<CycNumber> {
        if e > self.order {
            None
        } else if e < self.lower {
            Some(CycNumber::zero())
        } else {
            Some(self.coeffs[(e - self.lower) as usize].clone())
        }
    }

    fn at(&self, e: i64) -> &CycNumber {
        &self.coeffs[(e - self.lower) as usize]
    }

    /// Iterates `(exponent, coefficient)` over the stored range.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycNumber)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.lower + i as i64, c))
    }

    /// Forgets coefficients above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::from_coeffs(self.lower, self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        LaurentSeries {
            lower: self.lower,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `c t^e`.
    pub fn mul_monomial(&self, c: &CycNumber, e: i64) -> Self {
        let mut s = self.scale(c);
        s.lower += e;
        s.order += e;
        if s.coeffs.is_empty() {
            s.lower = s.order + 1;
        }
        s
    }

    pub fn shift(&self, e: i64) -> Self {
        self.mul_monomial(&CycNumber::one(), e)
    }

    /// Multiplies by `1 - c t^e` in linear time.
    pub fn mul_binomial(&self, c: &CycNumber, e: i64) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        match e.signum() {
            0 => self.scale(&(&CycNumber::one() - c)),
            1 => {
                let mut out = self.coeffs.clone();
                let e = e as usize;
                for r in e..out.len() {
                    let d = c * &self.coeffs[r - e];
                    out[r] = &out[r] - &d;
                }
                Self::from_coeffs(self.lower, out, self.order)
            }
            _ => {
                let cinv = c.inv().expect("nonzero");
                self.mul_monomial(&-c, e).mul_binomial(&cinv, -e)
            }
        }
    }

    /// Divides by `1 - c t^e` in linear time.
    pub fn div_binomial(&self, c: &CycNumber, e: i64) -> Result<Self> {
        if c.is_zero() {
            return Ok(self.clone());
        }
        match e.signum() {
            0 => {
                let d = &CycNumber::one() - c;
                if d.is_zero() {
                    return Err(Error::DivisionByZero("factor 1 - 1".into()));
                }
                Ok(self.scale(&d.inv()?))
            }
            1 => {
                let mut out = self.coeffs.clone();
                let e = e as usize;
                for r in e..out.len() {
                    let d = c * &out[r - e];
                    out[r] = &out[r] + &d;
                }
                Ok(Self::from_coeffs(self.lower, out, self.order))
            }
            _ => {
                let cinv = c.inv()?;
                let lead = (-c).inv()?;
                Ok(self.div_binomial(&cinv, -e)?.mul_monomial(&lead, -e))
            }
        }
    }

    /// Cauchy product. The result is exact up to
    /// `min(x.order + y.lower, y.order + x.lower)`.
    pub fn mul_series(&self, other: &Self) -> Self {
        let order = (self.order + other.lower).min(other.order + self.lower);
        let lower = self.lower + other.lower;
        if self.is_zero() || other.is_zero() || order < lower {
            return Self::zero(order);
        }
        let len = (order - lower + 1) as usize;
        let mut out = vec![CycNumber::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate().take(len - i) {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                out[i + j] = &out[i + j] + &p;
            }
        }
        Self::from_coeffs(lower, out, order)
    }

    /// Multiplicative inverse. The leading coefficient must be nonzero on
    /// the known range; relative precision is preserved.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "series vanishing to order {} has no inverse",
                self.order
            )));
        }
        let n = self.coeffs.len();
        let c0inv = self.coeffs[0].inv()?;
        let mut out: Vec<CycNumber> = Vec::with_capacity(n);
        out.push(c0inv.clone());
        for r in 1..n {
            let mut acc = CycNumber::zero();
            for i in 1..=r {
                let x = &self.coeffs[i];
                if !x.is_zero() && !out[r - i].is_zero() {
                    acc = &acc + &(x * &out[r - i]);
                }
            }
            out.push(-(&acc * &c0inv));
        }
        let lower = -self.lower;
        Ok(Self::from_coeffs(lower, out, lower + n as i64 - 1))
    }

    pub fn div_series(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_series(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one(self.order - self.lower);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul_series(self);
        }
        acc
    }

    /// Substitutes `t -> c t^m`: exponent `e` becomes `m e` and its
    /// coefficient is multiplied by `c^e`.
    pub fn subst_monomial(&self, c: &CycNumber, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidArgument(format!("substitution exponent {m} < 1")));
        }
        if c.is_zero() {
            return Err(Error::InvalidArgument("substitution coefficient is zero".into()));
        }
        let order = m * self.order + (m - 1);
        if self.is_zero() {
            return Ok(Self::zero(order));
        }
        let lower = m * self.lower;
        let mut out = vec![CycNumber::zero(); (order - lower + 1) as usize];
        let mut power = c.pow(self.lower)?;
        for (i, x) in self.coeffs.iter().enumerate() {
            out[i * m as usize] = x * &power;
            power = &power * c;
        }
        Ok(Self::from_coeffs(lower, out, order))
    }

    /// Compares on the jointly known range `[min lower, min order]`.
    /// Returns the first exponent where the coefficients differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch> {
        let top = self.order.min(other.order);
        let start = self.lower.min(other.lower);
        (start..=top).find_map(|e| {
            let l = self.coeff(e).unwrap();
            let r = other.coeff(e).unwrap();
            (l != r).then_some(Mismatch { exponent: e, left: l, right: r })
        })
    }

    /// Equality on the overlap of the known ranges.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (order {})", self.order)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = c.to_string();
            let c = if c.contains(['+', 'ω', 'i']) || c[1..].contains('-') {
                format!("({c})")
            } else {
                c
            };
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl<'a> Add<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let order = self.order.min(rhs.order);
        let lower = self.lower.min(rhs.lower);
        if order < lower {
            return LaurentSeries::zero(order);
        }
        let out = (lower..=order)
            .map(|e| {
                let x = (e >= self.lower).then(|| self.at(e));
                let y = (e >= rhs.lower).then(|| rhs.at(e));
                match (x, y) {
                    (Some(x), Some(y)) => x + y,
                    (Some(x), None) => x.clone(),
                    (None, Some(y)) => y.clone(),
                    (None, None) => CycNumber::zero(),
                }
            })
            .collect();
        LaurentSeries::from_coeffs(lower, out, order)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        self.scale(&CycNumber::from_int(-1))
    }
}

impl<'a> Sub<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.mul_series(rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Lower bound `n -> v(n)` on the valuation of the `n`-th term of an
/// infinite sum or the `n`-th factor (minus one) of an infinite product.
/// Must be nondecreasing and unbounded; both properties and the bound itself
/// are checked while summing.
#[derive(Clone)]
pub struct ValuationBound {
    f: Arc<dyn Fn(i64) -> i64 + Send + Sync>,
}

impl ValuationBound {
    pub fn new(f: impl Fn(i64) -> i64 + Send + Sync + 'static) -> Self {
        ValuationBound { f: Arc::new(f) }
    }

    /// `slope * n + offset`; `slope` must be positive.
    pub fn linear(slope: i64, offset: i64) -> Self {
        assert!(slope > 0, "linear valuation bound needs a positive slope");
        Self::new(move |n| slope * n + offset)
    }

    pub fn at(&self, n: i64) -> i64 {
        (self.f)(n)
    }
}

impl fmt::Debug for ValuationBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ValuationBound({}, {}, {}, ...)", self.at(0), self.at(1), self.at(2))
    }
}

/// Result of an infinite summation: the series and how many terms were
/// actually evaluated.
#[derive(Debug, Clone)]
pub struct Summed {
    pub series: LaurentSeries,
    pub terms: usize,
}

/// `sum_{n >= 1} term(n)` exact to `order`.
pub fn sum_terms(
    term: impl FnMut(i64) -> Result<LaurentSeries>,
    bound: &ValuationBound,
    order: i64,
) -> Result<LaurentSeries> {
    Ok(sum_terms_from(1, term, bound, order)?.series)
}

/// `sum_{n >= start} term(n)`. Terms are generated in increasing `n` until
/// the bound passes `order`; each term's valuation is checked against its
/// bound.
pub fn sum_terms_from(
    start: i64,
    mut term: impl FnMut(i64) -> Result<LaurentSeries>,
    bound: &ValuationBound,
    order: i64,
) -> Result<Summed> {
    let mut acc = LaurentSeries::zero(order);
    let mut count = 0usize;
    let mut prev = i64::MIN;
    let mut n = start;
    loop {
        let b = bound.at(n);
        if b < prev {
            return Err(Error::NonMonotoneBound(n));
        }
        prev = b;
        if b > order {
            break;
        }
        if n - start > MAX_TERMS {
            return Err(Error::InvalidArgument("valuation bound grows too slowly".into()));
        }
        let t = term(n)?;
        if let Some(v) = t.valuation() {
            if v < b {
                return Err(Error::ValuationViolation { index: n, bound: b, actual: v });
            }
        }
        acc = &acc + &t.truncate(order);
        count += 1;
        n += 1;
    }
    Ok(Summed { series: acc, terms: count })
}

/// `prod_{j >= 1} factor(j)` exact to `order`; each factor must be
/// `1 + O(t^bound(j))` with `bound(j) >= 1`.
pub fn product_terms(
    factor: impl FnMut(i64) -> Result<LaurentSeries>,
    bound: &ValuationBound,
    order: i64,
) -> Result<LaurentSeries> {
    product_terms_from(1, factor, bound, order)
}

pub fn product_terms_from(
    start: i64,
    mut factor: impl FnMut(i64) -> Result<LaurentSeries>,
    bound: &ValuationBound,
    order: i64,
) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::one(order);
    let mut prev = i64::MIN;
    let mut j = start;
    loop {
        let b = bound.at(j);
        if b < prev {
            return Err(Error::NonMonotoneBound(j));
        }
        prev = b;
        if b > order {
            break;
        }
        if j - start > MAX_TERMS {
            return Err(Error::InvalidArgument("valuation bound grows too slowly".into()));
        }
        let f = factor(j)?;
        if f.coeff(0) != Some(CycNumber::one()) || f.lower() < 0 {
            return Err(Error::NonUnitFactor { index: j });
        }
        let rest = &f - &LaurentSeries::one(f.order());
        if let Some(v) = rest.valuation() {
            if v < b || v < 1 {
                return Err(Error::ValuationViolation { index: j, bound: b, actual: v });
            }
        }
        acc = acc.mul_series(&f).truncate(order);
        j += 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lower: i64, c: &[i64], order: i64) -> LaurentSeries {
        LaurentSeries::from_coeffs(lower, c.iter().map(|&v| CycNumber::from_int(v)).collect(), order)
    }

    fn k(v: i64) -> CycNumber {
        CycNumber::from_int(v)
    }

    #[test]
    fn addition() {
        assert!((&s(0, &[1, 1], 5) + &s(0, &[1, -1], 5)).agrees_with(&s(0, &[2], 5)));
        let x = s(-1, &[1, 1], 4);
        assert_eq!(&x + &LaurentSeries::zero(4), x);
        let r = &s(-1, &[1, 1], 3) + &s(0, &[1, 1], 3);
        assert_eq!(r, s(-1, &[1, 2, 1, 0, 0], 3));
        assert_eq!((&s(0, &[1], 3) + &s(0, &[1], 7)).order(), 3);
    }

    #[test]
    fn multiplication() {
        let geo = s(0, &[1; 9], 8);
        let p = &s(0, &[1, -1], 8) * &geo;
        assert_eq!(p, s(0, &[1], 8));
        let p = &s(0, &[1, -1], 10) * &s(0, &[1, 0, -1], 10);
        assert_eq!(p, s(0, &[1, -1, -1, 1], 10));
        let p = &s(-1, &[1], 10) * &s(1, &[1, 1], 10);
        assert_eq!(p, s(0, &[1, 1], 9));
    }

    #[test]
    fn mul_order_rule() {
        let x = s(-2, &[1, 3], 5);
        let y = s(1, &[2], 4);
        let p = &x * &y;
        assert_eq!(p.lower(), -1);
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn inversion() {
        let inv = s(0, &[1, -1], 6).inv().unwrap();
        assert_eq!(inv, s(0, &[1; 7], 6));
        let inv = s(1, &[1], 6).inv().unwrap();
        assert_eq!(inv.lower(), -1);
        assert_eq!(inv.coeff(-1), Some(k(1)));
        let x = s(0, &[1, -3], 8);
        let inv = x.inv().unwrap();
        assert_eq!(inv.coeff(2), Some(k(9)));
        assert!((&x * &inv).agrees_with(&LaurentSeries::one(8)));
        assert!(LaurentSeries::zero(5).inv().is_err());
    }

    #[test]
    fn substitution() {
        let x = s(0, &[1, 1], 5);
        assert!(x.subst_monomial(&k(1), 2).unwrap().agrees_with(&s(0, &[1, 0, 1], 11)));
        let y = s(0, &[1, 1, 1], 5).subst_monomial(&k(-1), 1).unwrap();
        assert_eq!(y, s(0, &[1, -1, 1, 0, 0, 0], 5));
        let z = s(-1, &[1], 5).subst_monomial(&k(2), 1).unwrap();
        assert_eq!(z.coeff(-1), Some(CycNumber::from_ratio(1, 2)));
        assert!(x.subst_monomial(&k(1), 0).is_err());
    }

    #[test]
    fn binomials_match_generic_product() {
        let x = s(-1, &[2, 5, -1, 3, 7, 1, 1, 4], 6);
        for (c, e) in [(3, 2), (1, 1), (-2, 0), (5, -2), (2, -1)] {
            let c = k(c);
            let bin = LaurentSeries::from_terms([(0, k(1)), (e, -&c)], 40);
            let fast = x.mul_binomial(&c, e);
            assert!(fast.agrees_with(&(&x * &bin)), "mul e={e}");
            assert!(fast.order() >= (&x * &bin).order());
            let q = fast.div_binomial(&c, e).unwrap();
            assert!(q.agrees_with(&x), "div e={e}");
        }
        assert!(x.div_binomial(&k(1), 0).is_err());
    }

    #[test]
    fn sums() {
        let r = sum_terms(|n| Ok(LaurentSeries::monomial(k(1), n, 3)), &ValuationBound::linear(1, 0), 3).unwrap();
        assert_eq!(r, s(1, &[1, 1, 1], 3));
        // k q^n / (1 - k^2 q^2n) at k = 2
        let r = sum_terms(
            |n| LaurentSeries::monomial(k(2), n, 2).div_binomial(&k(4), 2 * n),
            &ValuationBound::linear(1, 0),
            2,
        )
        .unwrap();
        assert_eq!(r, s(1, &[2, 2], 2));
        let r = sum_terms(|_| Ok(LaurentSeries::zero(9)), &ValuationBound::linear(1, 0), 9).unwrap();
        assert!(r.is_zero());
        let bad = sum_terms(|n| Ok(LaurentSeries::monomial(k(1), n - 1, 5)), &ValuationBound::linear(1, 0), 5);
        assert!(matches!(bad, Err(Error::ValuationViolation { index: 1, .. })));
    }

    #[test]
    fn products() {
        let r = product_terms(
            |j| Ok(LaurentSeries::one(5).mul_binomial(&k(1), j)),
            &ValuationBound::linear(1, 0),
            5,
        )
        .unwrap();
        assert_eq!(r, s(0, &[1, -1, -1, 0, 0, 1], 5));
        let r = product_terms(|_| Ok(LaurentSeries::one(5)), &ValuationBound::linear(1, 0), 5).unwrap();
        assert_eq!(r, LaurentSeries::one(5));
        // (3q;q)_inf to order 2: (1 - 3q)(1 - 3q^2)
        let r = product_terms(
            |j| Ok(LaurentSeries::one(2).mul_binomial(&k(3), j)),
            &ValuationBound::linear(1, 0),
            2,
        )
        .unwrap();
        assert_eq!(r, s(0, &[1, -3, -3], 2));
        let bad = product_terms(|_| Ok(s(0, &[2, 1], 4)), &ValuationBound::linear(1, 0), 4);
        assert!(matches!(bad, Err(Error::NonUnitFactor { .. })));
    }

    #[test]
    fn mismatch_window() {
        let a = s(0, &[1, 2, 3], 2);
        let b = s(0, &[1, 2, 3, 4], 3);
        assert!(a.agrees_with(&b));
        let c = s(0, &[1, 5], 5);
        let m = a.first_mismatch(&c).unwrap();
        assert_eq!(m.exponent, 1);
        assert_eq!((m.left, m.right), (k(2), k(5)));
    }
}
