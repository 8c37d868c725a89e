//! q-objects on top of [`crate::fps`]: Pochhammer symbols, the theta
//! functions psi and phi, the cubic theta series a(q), the product M(k,q),
//! and Lambert-series builders.
//!
//! Unless stated otherwise the formal variable is `q` itself; rescaled
//! variants are obtained with [`LaurentSeries::subst_monomial`].

use crate::coeff::CycNumber;
use crate::error::{Error, Result};
use crate::fps::{product_terms_from, sum_terms, LaurentSeries, ValuationBound};
use crate::mono::{poch_infinite, Mono};

/// Length of a Pochhammer symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLen {
    Finite(i64),
    Infinite,
}

/// `(head; q^m)_n` for a general series head, truncated at `order`.
///
/// Infinite products accept heads of any valuation: the finitely many
/// factors `1 - head q^(m j)` of nonpositive valuation are multiplied in
/// directly and the rest go through [`product_terms_from`].
pub fn poch(head: &LaurentSeries, base_exp: i64, len: PochLen, order: i64) -> Result<LaurentSeries> {
    if base_exp < 1 {
        return Err(Error::InvalidArgument(format!("base exponent {base_exp} < 1")));
    }
    let factor = |j: i64| &LaurentSeries::one(order) - &head.shift(base_exp * j);
    match len {
        PochLen::Finite(n) => {
            let mut acc = LaurentSeries::one(order);
            for j in 0..n.max(0) {
                acc = acc.mul_series(&factor(j));
            }
            Ok(acc)
        }
        PochLen::Infinite => {
            let Some(v) = head.valuation() else {
                return Ok(LaurentSeries::one(order));
            };
            let mut acc = LaurentSeries::one(order);
            let mut j = 0;
            while v + base_exp * j <= 0 {
                acc = acc.mul_series(&factor(j));
                j += 1;
            }
            // unit factors are 1 + O(q^(v + m j)); the product of the
            // explicit ones has valuation acc.lower()
            let target = order - acc.lower().min(0);
            let tail = product_terms_from(
                j,
                |j| Ok(factor(j).truncate(target)),
                &ValuationBound::linear(base_exp, v),
                target,
            )?;
            Ok(acc.mul_series(&tail).truncate(order))
        }
    }
}

/// `psi(q) = sum_{n >= 0} q^(n(n+1)/2)`.
pub fn theta_psi(order: i64) -> LaurentSeries {
    let terms = (0..)
        .map(|n: i64| n * (n + 1) / 2)
        .take_while(|&e| e <= order)
        .map(|e| (e, CycNumber::one()));
    LaurentSeries::from_terms(terms, order)
}

/// `(q^2; q^2)_inf / (q; q^2)_inf`.
pub fn theta_psi_product(order: i64) -> Result<LaurentSeries> {
    let num = poch_infinite(&Mono::var(2), &Mono::var(2), order)?;
    let den = poch_infinite(&Mono::var(1), &Mono::var(2), order)?;
    num.div_series(&den)
}

/// `phi(q) = sum_{n in Z} q^(n^2)`.
pub fn theta_phi(order: i64) -> LaurentSeries {
    let mut terms = vec![(0, CycNumber::one())];
    for n in 1.. {
        if n * n > order {
            break;
        }
        terms.push((n * n, CycNumber::from_int(2)));
    }
    LaurentSeries::from_terms(terms, order)
}

/// `(-q, -q, q^2; q^2)_inf`.
pub fn theta_phi_product(order: i64) -> Result<LaurentSeries> {
    let q2 = Mono::var(2);
    let minus_q = -Mono::var(1);
    let a = poch_infinite(&minus_q, &q2, order)?;
    let b = poch_infinite(&q2, &q2, order)?;
    Ok(a.mul_series(&a).mul_series(&b))
}

/// `a(q) = sum_{m,n in Z} q^(m^2 + m n + n^2)` by direct lattice enumeration.
pub fn a_of_q(order: i64) -> LaurentSeries {
    if order < 0 {
        return LaurentSeries::zero(order);
    }
    // m^2 + mn + n^2 >= 3/4 max(|m|,|n|)^2
    let r = ((4 * order) as f64 / 3.0).sqrt() as i64 + 1;
    let mut counts = vec![0i64; (order + 1) as usize];
    for m in -r..=r {
        for n in -r..=r {
            let e = m * m + m * n + n * n;
            if e <= order {
                counts[e as usize] += 1;
            }
        }
    }
    LaurentSeries::from_coeffs(0, counts.into_iter().map(CycNumber::from_int).collect(), order)
}

/// Principal character modulo 3.
pub fn chi0(n: i64) -> i64 {
    i64::from(n % 3 != 0)
}

/// `M(k,q) = (k^2 q, q/k^2, q^2, q^2; q^2)_inf / (k^2, q^2/k^2, q, q; q^2)_inf`
/// for a constant `k` with `k^2 != 1`.
pub fn m_product(k: &CycNumber, order: i64) -> Result<LaurentSeries> {
    if k.is_zero() {
        return Err(Error::Constraint("M(k,q) needs k != 0".into()));
    }
    let k2 = k * k;
    if k2.is_one() {
        return Err(Error::Constraint("M(k,q) needs k^2 != 1".into()));
    }
    let k2 = Mono::constant(k2)?;
    m_product_general(&k2, &Mono::var(1), order)
}

/// `M` with `k^2` and the base given as monomials; covers the q-power
/// instances such as `M(q, q^3)`.
pub fn m_product_general(k2: &Mono, q: &Mono, order: i64) -> Result<LaurentSeries> {
    let q2 = q.pow(2);
    let num = [k2 * q, q / k2, q2.clone(), q2.clone()];
    let den = [k2.clone(), &q2 / k2, q.clone(), q.clone()];
    poch_quotient(&num, &den, &q2, order)
}

/// `prod (num_i; base)_inf / prod (den_j; base)_inf`.
pub fn poch_quotient(num: &[Mono], den: &[Mono], base: &Mono, prec: i64) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::one(prec);
    for h in num {
        acc = acc.mul_series(&poch_infinite(h, base, prec)?);
    }
    for h in den {
        acc = acc.div_series(&poch_infinite(h, base, prec)?)?;
    }
    Ok(acc)
}

/// `sum_{n >= 1} c_num q^(m_num n) / (1 - c_den q^(m_den n))`.
pub fn lambert(
    c_num: &LaurentSeries,
    m_num: i64,
    c_den: &LaurentSeries,
    m_den: i64,
    order: i64,
) -> Result<LaurentSeries> {
    let Some(v) = c_num.valuation() else {
        return Ok(LaurentSeries::zero(order));
    };
    if m_num < 1 {
        return Err(Error::InvalidArgument(format!("numerator step {m_num} < 1")));
    }
    let work = order - v.min(0);
    sum_terms(
        |n| {
            let num = c_num.shift(m_num * n).truncate(work);
            let den = &LaurentSeries::one(work) - &c_den.shift(m_den * n).truncate(work);
            num.div_series(&den)
        },
        &ValuationBound::linear(m_num, v),
        order,
    )
}

/// One Lambert series `sum_{n >= 1} w(n) C X^n / (1 - D Y^n)` with monomial
/// data.
pub struct LambertSpec<'w> {
    pub weight: Box<dyn Fn(i64) -> CycNumber + 'w>,
    pub coeff: Mono,
    pub ratio: Mono,
    pub den_coeff: Mono,
    pub den_ratio: Mono,
}

impl<'w> LambertSpec<'w> {
    /// `sum C X^n / (1 - D Y^n)`.
    pub fn new(coeff: Mono, ratio: Mono, den_coeff: Mono, den_ratio: Mono) -> Self {
        LambertSpec { weight: Box::new(|_| CycNumber::one()), coeff, ratio, den_coeff, den_ratio }
    }

    /// `sum x q^n / (1 - x q^n)` style: numerator and denominator share
    /// the monomial.
    pub fn simple(x: Mono, q: &Mono) -> Self {
        Self::new(x.clone(), q.clone(), x, q.clone())
    }

    pub fn weighted(mut self, w: impl Fn(i64) -> CycNumber + 'w) -> Self {
        self.weight = Box::new(w);
        self
    }

    pub fn eval(&self, order: i64) -> Result<LaurentSeries> {
        if self.ratio.exp() < 1 {
            return Err(Error::InvalidArgument("Lambert ratio needs positive valuation".into()));
        }
        sum_terms(
            |n| {
                let w = (self.weight)(n);
                if w.is_zero() {
                    return Ok(LaurentSeries::zero(order));
                }
                let num = self.coeff.step(&self.ratio, n);
                let den = self.den_coeff.step(&self.den_ratio, n);
                LaurentSeries::monomial(&w * num.coeff(), num.exp(), order).div_binomial(den.coeff(), den.exp())
            },
            &ValuationBound::linear(self.ratio.exp(), self.coeff.exp()),
            order,
        )
    }
}

/// `sum_{n >= 1} n x^n q^n / (1 - q^n)`.
pub fn lambert_weighted(x: &CycNumber, order: i64) -> Result<LaurentSeries> {
    if x.is_zero() {
        return Ok(LaurentSeries::zero(order));
    }
    let q = Mono::var(1);
    let xm = Mono::constant(x.clone())?;
    LambertSpec::new(Mono::one(), &xm * &q, Mono::one(), q)
        .weighted(CycNumber::from_int)
        .eval(order)
}

/// `sum_{n >= 1} x q^n / (1 - x q^n)^2`, the squared-denominator form of
/// [`lambert_weighted`].
pub fn lambert_squared(x: &CycNumber, order: i64) -> Result<LaurentSeries> {
    if x.is_zero() {
        return Ok(LaurentSeries::zero(order));
    }
    sum_terms(
        |n| {
            LaurentSeries::monomial(x.clone(), n, order)
                .div_binomial(x, n)?
                .div_binomial(x, n)
        },
        &ValuationBound::linear(1, 0),
        order,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_series(c: &[i64], order: i64) -> LaurentSeries {
        LaurentSeries::from_coeffs(0, c.iter().map(|&v| CycNumber::from_int(v)).collect(), order)
    }

    fn divisor_sum(n: i64, pow: u32) -> i64 {
        (1..=n).filter(|d| n % d == 0).map(|d| d.pow(pow)).sum()
    }

    #[test]
    fn poch_examples() {
        let q = LaurentSeries::monomial(CycNumber::one(), 1, 10);
        assert_eq!(poch(&q, 1, PochLen::Finite(0), 10).unwrap(), LaurentSeries::one(10));
        assert_eq!(poch(&q, 1, PochLen::Finite(2), 10).unwrap(), int_series(&[1, -1, -1, 1], 10));
        let head = LaurentSeries::monomial(CycNumber::from_int(4), -1, 10);
        let p = poch(&head, 1, PochLen::Finite(1), 10).unwrap();
        assert_eq!(p.coeff(-1), Some(CycNumber::from_int(-4)));
        assert_eq!(p.coeff(0), Some(CycNumber::one()));
        assert_eq!(p.coeff(1), Some(CycNumber::zero()));
    }

    #[test]
    fn general_poch_matches_monomial_fast_path() {
        for (c, e, m) in [(3i64, 1i64, 1i64), (2, 0, 2), (-5, -1, 2), (7, -2, 1)] {
            let head = Mono::new(CycNumber::from_int(c), e).unwrap();
            let slow = poch(&head.to_series(30), m, PochLen::Infinite, 20).unwrap();
            let fast = poch_infinite(&head, &Mono::var(m), 30).unwrap();
            assert!(slow.agrees_with(&fast), "head {head}, base q^{m}");
            assert!(slow.order() >= 20 + e.min(0) - 1);
        }
    }

    #[test]
    fn psi_values() {
        assert_eq!(theta_psi(6), int_series(&[1, 1, 0, 1, 0, 0, 1], 6));
        assert_eq!(theta_psi(0), LaurentSeries::one(0));
        assert!(theta_psi(6).agrees_with(&theta_psi_product(6).unwrap()));
    }

    #[test]
    fn phi_values() {
        assert_eq!(theta_phi(4), int_series(&[1, 2, 0, 0, 2], 4));
        assert_eq!(theta_phi(0), LaurentSeries::one(0));
        assert!(theta_phi(4).agrees_with(&theta_phi_product(4).unwrap()));
    }

    #[test]
    fn a_of_q_small() {
        assert_eq!(a_of_q(1), int_series(&[1, 6], 1));
        assert_eq!(a_of_q(0), LaurentSeries::one(0));
    }

    #[test]
    fn a_of_q_lambert_form_small() {
        let q = Mono::var(1);
        let six = CycNumber::from_int(6);
        let s1 = LambertSpec::simple(Mono::var(-2), &Mono::var(3)).eval(4).unwrap();
        let s2 = LambertSpec::simple(Mono::var(-1), &Mono::var(3)).eval(4).unwrap();
        let _ = q;
        let rhs = &(&LaurentSeries::one(4) + &s1.scale(&six)) - &s2.scale(&six);
        assert_eq!(rhs, a_of_q(4));
    }

    #[test]
    fn m_product_at_i() {
        let m = m_product(&CycNumber::i(), 4).unwrap();
        let phi = theta_phi(4);
        assert!(m.scale(&CycNumber::from_int(2)).agrees_with(&phi.mul_series(&phi)));
        assert_eq!(m.scale(&CycNumber::from_int(2)).truncate(4), int_series(&[1, 4, 4, 0, 4], 4));
        assert!(m_product(&CycNumber::one(), 4).is_err());
        assert!(m_product(&CycNumber::from_int(-1), 4).is_err());
    }

    #[test]
    fn m_product_constant_term() {
        // constant term: k^2 q^0 pieces: 1/(1-k^2) from (k^2;q^2) and nothing else
        let k = CycNumber::from_int(3);
        let m = m_product(&k, 0).unwrap();
        assert_eq!(m.coeff(0), Some(CycNumber::from_ratio(1, 1 - 9)));
    }

    #[test]
    fn lambert_examples() {
        let one = LaurentSeries::one(10);
        let d = lambert(&one, 1, &one, 1, 3).unwrap();
        assert_eq!(d, int_series(&[0, 1, 2, 2], 3));
        let two = LaurentSeries::constant(CycNumber::from_int(2), 10);
        let four = LaurentSeries::constant(CycNumber::from_int(4), 10);
        assert_eq!(lambert(&two, 1, &four, 2, 2).unwrap(), int_series(&[0, 2, 2], 2));
        assert!(lambert(&LaurentSeries::zero(10), 1, &one, 1, 5).unwrap().is_zero());
    }

    #[test]
    fn weighted_lambert() {
        let s = lambert_weighted(&CycNumber::one(), 3).unwrap();
        assert_eq!(s, int_series(&[0, 1, 3, 4], 3));
        let want: Vec<i64> = (0..=20).map(|n| if n == 0 { 0 } else { divisor_sum(n, 1) }).collect();
        assert_eq!(lambert_weighted(&CycNumber::one(), 20).unwrap(), int_series(&want, 20));
        assert!(lambert_weighted(&CycNumber::zero(), 5).unwrap().is_zero());
        let x = CycNumber::from_int(2);
        assert_eq!(lambert_weighted(&x, 10).unwrap(), lambert_squared(&x, 10).unwrap());
    }
}
