//! Nonzero monomials `c t^e` and fast Pochhammer products with monomial
//! heads.
//!
//! Every parameter specialization in the identity bank is a constant or a
//! constant times a power of the formal variable, so Pochhammer factors are
//! binomials `1 - c t^e` and can be applied in linear time.

use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_integer::Integer;

use crate::coeff::CycNumber;
use crate::error::{Error, Result};
use crate::fps::{LaurentSeries, ValuationBound};

/// `coeff * t^exp` with `coeff != 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    coeff: CycNumber,
    exp: i64,
}

impl Mono {
    pub fn new(coeff: CycNumber, exp: i64) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::InvalidArgument("monomial with zero coefficient".into()));
        }
        Ok(Mono { coeff, exp })
    }

    pub fn constant(coeff: CycNumber) -> Result<Self> {
        Self::new(coeff, 0)
    }

    pub fn one() -> Self {
        Mono { coeff: CycNumber::one(), exp: 0 }
    }

    /// The bare variable `t^exp`.
    pub fn var(exp: i64) -> Self {
        Mono { coeff: CycNumber::one(), exp }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(CycNumber::from_int(n)).expect("nonzero integer")
    }

    pub fn coeff(&self) -> &CycNumber {
        &self.coeff
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_constant(&self) -> bool {
        self.exp == 0
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0 && self.coeff.is_one()
    }

    pub fn inv(&self) -> Self {
        Mono { coeff: self.coeff.inv().expect("nonzero"), exp: -self.exp }
    }

    pub fn pow(&self, e: i64) -> Self {
        Mono { coeff: self.coeff.pow(e).expect("nonzero"), exp: self.exp * e }
    }

    pub fn scale(&self, c: &CycNumber) -> Result<Self> {
        Self::new(&self.coeff * c, self.exp)
    }

    /// `self * base^j`.
    pub fn step(&self, base: &Mono, j: i64) -> Self {
        self * &base.pow(j)
    }

    pub fn to_series(&self, order: i64) -> LaurentSeries {
        LaurentSeries::monomial(self.coeff.clone(), self.exp, order)
    }

    /// `1 - self` as a series.
    pub fn one_minus(&self, order: i64) -> LaurentSeries {
        LaurentSeries::one(order).mul_binomial(&self.coeff, self.exp)
    }

    /// Whether some factor `1 - self * base^j`, `j >= 0` (and `j < len` when
    /// given) is identically zero.
    pub fn poch_vanishes(&self, base: &Mono, len: Option<i64>) -> bool {
        match vanishing_index(self, base) {
            Some(j) => len.is_none_or(|n| j < n),
            None => false,
        }
    }
}

/// Index `j >= 0` with `head * base^j == 1`, if any.
fn vanishing_index(head: &Mono, base: &Mono) -> Option<i64> {
    if base.exp == 0 {
        // constant base: scan a bounded window, enough for roots of unity
        return (0..24).find(|&j| head.step(base, j).is_one());
    }
    if head.exp % base.exp != 0 {
        return None;
    }
    let j = -head.exp / base.exp;
    (j >= 0 && head.step(base, j).is_one()).then_some(j)
}

impl<'a> Mul<&'a Mono> for &'a Mono {
    type Output = Mono;
    fn mul(self, rhs: &Mono) -> Mono {
        Mono { coeff: &self.coeff * &rhs.coeff, exp: self.exp + rhs.exp }
    }
}

impl<'a> Div<&'a Mono> for &'a Mono {
    type Output = Mono;
    fn div(self, rhs: &Mono) -> Mono {
        self * &rhs.inv()
    }
}

impl Mul for Mono {
    type Output = Mono;
    fn mul(self, rhs: Mono) -> Mono {
        &self * &rhs
    }
}

impl Div for Mono {
    type Output = Mono;
    fn div(self, rhs: Mono) -> Mono {
        &self / &rhs
    }
}

impl Neg for &Mono {
    type Output = Mono;
    fn neg(self) -> Mono {
        Mono { coeff: -&self.coeff, exp: self.exp }
    }
}

impl Neg for Mono {
    type Output = Mono;
    fn neg(self) -> Mono {
        -&self
    }
}

impl fmt::Display for Mono {
    /// `2/3`, `q`, `-q^2`, `(1+i)q^-1`; the variable is printed as `q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeff.to_string();
        if self.exp == 0 {
            return f.write_str(&c);
        }
        let var = if self.exp == 1 { "q".to_string() } else { format!("q^{}", self.exp) };
        if self.coeff.is_one() {
            write!(f, "{var}")
        } else if c == "-1" {
            write!(f, "-{var}")
        } else if c.contains(['+', 'ω', 'i', '/']) || c[1..].contains('-') {
            write!(f, "({c}){var}")
        } else {
            write!(f, "{c}{var}")
        }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multiplies `acc` by the factor `1 - head * base^j`.
fn apply_factor(acc: &LaurentSeries, head: &Mono, base: &Mono, j: i64, inverse: bool) -> Result<LaurentSeries> {
    let m = head.step(base, j);
    if inverse {
        acc.div_binomial(&m.coeff, m.exp)
    } else {
        Ok(acc.mul_binomial(&m.coeff, m.exp))
    }
}

/// Multiplies `acc` by `(head; base)_n`, or divides when `inverse`.
pub fn apply_poch(acc: &LaurentSeries, head: &Mono, base: &Mono, n: i64, inverse: bool) -> Result<LaurentSeries> {
    let mut acc = acc.clone();
    for j in 0..n {
        acc = apply_factor(&acc, head, base, j, inverse)?;
    }
    Ok(acc)
}

/// `(head; base)_n = prod_{j < n} (1 - head base^j)` with relative
/// precision `prec`.
pub fn poch_finite(head: &Mono, base: &Mono, n: i64, prec: i64) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::one(prec);
    for j in 0..n {
        acc = apply_factor(&acc, head, base, j, false)?;
    }
    Ok(acc)
}

/// `(head; base)_inf` for a base of positive valuation. Factors whose
/// exponent is at most zero are applied exactly; the remaining unit part is
/// exact to relative precision `prec`.
pub fn poch_infinite(head: &Mono, base: &Mono, prec: i64) -> Result<LaurentSeries> {
    if base.exp < 1 {
        return Err(Error::InvalidArgument(format!("infinite product needs base of positive valuation, got {base}")));
    }
    let mut acc = LaurentSeries::one(prec);
    let mut j = 0;
    loop {
        let e = head.exp + j * base.exp;
        if e > prec {
            break;
        }
        acc = apply_factor(&acc, head, base, j, false)?;
        j += 1;
    }
    Ok(acc)
}

/// One Pochhammer symbol inside a [`HyperTerm`]: `(head; base)_L(n)` with
/// `L(n) = max(0, mult * n + offset)`, in the numerator or the denominator.
#[derive(Clone, Debug)]
struct PochSlot {
    head: Mono,
    base: Mono,
    mult: i64,
    offset: i64,
    inverse: bool,
}

impl PochSlot {
    fn len(&self, n: i64) -> i64 {
        (self.mult * n + self.offset).max(0)
    }

    fn factor_exp(&self, j: i64) -> i64 {
        self.head.exp + j * self.base.exp
    }
}

/// A factor `(1 - x B^n)^{+-1}` whose head moves with `n`.
#[derive(Clone, Debug)]
struct LinearFactor {
    head: Mono,
    base: Mono,
    inverse: bool,
}

/// Hypergeometric term in monomial data:
///
/// `c X^n Y^(n(n-1)/2) prod (1 - x B^n)^{+-1} prod (x; Q)_{L(n)}^{+-1}`.
///
/// Values are produced for increasing `n`; the Pochhammer part is updated
/// incrementally so a whole sequence of terms costs one binomial step per
/// new factor. The exact valuation of each term is available without
/// computing it, which is how summation bounds are obtained.
#[derive(Clone, Debug)]
pub struct HyperTerm {
    slots: Vec<PochSlot>,
    linear: Vec<LinearFactor>,
    ratio: Mono,
    quad: Mono,
    scalar: Mono,
    at_zero: Option<CycNumber>,
    current: Option<(i64, LaurentSeries)>,
    prec: i64,
}

impl HyperTerm {
    /// The constant term `1`; `prec` is the relative precision of values.
    pub fn new(prec: i64) -> Self {
        HyperTerm {
            slots: Vec::new(),
            linear: Vec::new(),
            ratio: Mono::one(),
            quad: Mono::one(),
            scalar: Mono::one(),
            at_zero: None,
            current: None,
            prec,
        }
    }

    /// Numerator factor `(head; base)_n`.
    pub fn num(self, head: Mono, base: &Mono) -> Self {
        self.num_len(head, base, 1, 0)
    }

    /// Denominator factor `(head; base)_n`.
    pub fn den(self, head: Mono, base: &Mono) -> Self {
        self.den_len(head, base, 1, 0)
    }

    /// Numerator factor `(head; base)_{mult n + offset}`.
    pub fn num_len(mut self, head: Mono, base: &Mono, mult: i64, offset: i64) -> Self {
        self.slots.push(PochSlot { head, base: base.clone(), mult, offset, inverse: false });
        self
    }

    pub fn den_len(mut self, head: Mono, base: &Mono, mult: i64, offset: i64) -> Self {
        self.slots.push(PochSlot { head, base: base.clone(), mult, offset, inverse: true });
        self
    }

    /// Numerator factor `1 - head base^n`.
    pub fn num_linear(mut self, head: Mono, base: &Mono) -> Self {
        self.linear.push(LinearFactor { head, base: base.clone(), inverse: false });
        self
    }

    pub fn den_linear(mut self, head: Mono, base: &Mono) -> Self {
        self.linear.push(LinearFactor { head, base: base.clone(), inverse: true });
        self
    }

    /// Geometric factor `X^n`.
    pub fn power(mut self, ratio: Mono) -> Self {
        self.ratio = &self.ratio * &ratio;
        self
    }

    /// Factor `Y^(n(n-1)/2)`.
    pub fn quadratic(mut self, y: Mono) -> Self {
        self.quad = &self.quad * &y;
        self
    }

    /// Constant prefactor.
    pub fn times(mut self, c: CycNumber) -> Self {
        self.scalar = self.scalar.scale(&c).expect("nonzero prefactor");
        self
    }

    /// Monomial prefactor.
    pub fn times_mono(mut self, m: Mono) -> Self {
        self.scalar = &self.scalar * &m;
        self
    }

    /// Divides by the constant-length factor `1 - x`.
    pub fn den_once(self, x: Mono) -> Self {
        let base = Mono::var(1);
        self.den_len(x, &base, 0, 1)
    }

    /// Replaces the value at `n = 0` by a constant.
    pub fn with_value_at_zero(mut self, c: CycNumber) -> Self {
        self.at_zero = Some(c);
        self
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn has_value_at_zero(&self) -> bool {
        self.at_zero.is_some()
    }

    /// The term `n -> self(mult n + offset)`.
    pub fn reindexed(&self, mult: i64, offset: i64) -> HyperTerm {
        let slots = self
            .slots
            .iter()
            .map(|s| PochSlot { mult: s.mult * mult, offset: s.mult * offset + s.offset, ..s.clone() })
            .collect();
        let linear = self
            .linear
            .iter()
            .map(|l| LinearFactor { head: l.head.step(&l.base, offset), base: l.base.pow(mult), inverse: l.inverse })
            .collect();
        // N(N-1)/2 with N = mult n + offset, split into n(n-1)/2, n and 1 parts
        let y = &self.quad;
        let ratio = &self.ratio.pow(mult) * &y.pow(mult * (mult + 2 * offset - 1) / 2);
        let scalar = &(&self.scalar * &self.ratio.pow(offset)) * &y.pow(offset * (offset - 1) / 2);
        HyperTerm {
            slots,
            linear,
            ratio,
            quad: y.pow(mult * mult),
            scalar,
            at_zero: if offset == 0 { self.at_zero.clone() } else { None },
            current: None,
            prec: self.prec,
        }
    }

    /// The product term `self(n) other(n)`. Values at zero set by
    /// [`HyperTerm::with_value_at_zero`] are dropped; the caller handles
    /// that index separately.
    pub fn merged(mut self, other: &HyperTerm) -> HyperTerm {
        self.slots.extend(other.slots.iter().cloned());
        self.linear.extend(other.linear.iter().cloned());
        self.ratio = &self.ratio * &other.ratio;
        self.quad = &self.quad * &other.quad;
        self.scalar = &self.scalar * &other.scalar;
        self.at_zero = None;
        self.current = None;
        self.prec = self.prec.min(other.prec);
        self
    }

    /// Value at `n >= 0`. Calls should use nondecreasing `n`; moving
    /// backwards recomputes from scratch.
    pub fn at(&mut self, n: i64) -> Result<LaurentSeries> {
        if n == 0 {
            if let Some(c) = &self.at_zero {
                return Ok(LaurentSeries::constant(c.clone(), self.prec));
            }
        }
        let (from, mut acc) = match self.current.take() {
            Some((m, v)) if m <= n => (Some(m), v),
            _ => (None, LaurentSeries::one(self.prec)),
        };
        for slot in &self.slots {
            let done = from.map_or(0, |m| slot.len(m));
            for j in done..slot.len(n) {
                acc = apply_factor(&acc, &slot.head, &slot.base, j, slot.inverse)?;
            }
        }
        self.current = Some((n, acc.clone()));
        for lf in &self.linear {
            let m = lf.head.step(&lf.base, n);
            acc = if lf.inverse {
                acc.div_binomial(&m.coeff, m.exp)?
            } else {
                acc.mul_binomial(&m.coeff, m.exp)
            };
        }
        let g = &self.ratio.pow(n) * &self.quad.pow(n * (n - 1) / 2);
        let g = &g * &self.scalar;
        Ok(acc.mul_monomial(&g.coeff, g.exp))
    }

    /// Exact valuation of the value at `n`, or `None` when it is zero.
    /// Relies on every factor `1 - c t^e` having valuation `min(0, e)`
    /// unless it is identically zero.
    pub fn valuation(&self, n: i64) -> Option<i64> {
        if n == 0 {
            if let Some(c) = &self.at_zero {
                return (!c.is_zero()).then_some(0);
            }
        }
        let mut v = self.scalar.exp + self.ratio.exp * n + self.quad.exp * (n * (n - 1) / 2);
        for slot in &self.slots {
            for j in 0..slot.len(n) {
                let m = slot.head.step(&slot.base, j);
                if m.is_one() {
                    return None;
                }
                let e = m.exp.min(0);
                v += if slot.inverse { -e } else { e };
            }
        }
        for lf in &self.linear {
            let m = lf.head.step(&lf.base, n);
            if m.is_one() {
                return None;
            }
            let e = m.exp.min(0);
            v += if lf.inverse { -e } else { e };
        }
        Some(v)
    }

    /// An index from which the valuation is nondecreasing in `n`, and from
    /// which every factor has nonnegative exponent.
    pub fn settle_index(&self) -> Result<i64> {
        if self.quad.exp < 0 {
            return Err(Error::InvalidArgument("quadratic factor with negative valuation".into()));
        }
        let mut s = 1i64;
        for slot in &self.slots {
            if slot.mult < 0 || (slot.mult > 0 && slot.base.exp < 0) {
                return Err(Error::InvalidArgument(format!("Pochhammer base {} cannot settle", slot.base)));
            }
            if slot.mult == 0 || slot.base.exp == 0 {
                continue;
            }
            // first j with factor_exp(j) >= 0, then the n where L(n) passes it
            let j0 = Integer::div_ceil(&(-slot.head.exp).max(0), &slot.base.exp);
            let n0 = Integer::div_ceil(&(j0 - slot.offset).max(0), &slot.mult);
            s = s.max(n0 + 1);
        }
        for lf in &self.linear {
            if lf.base.exp < 0 {
                return Err(Error::InvalidArgument(format!("moving factor base {} cannot settle", lf.base)));
            }
            if lf.base.exp > 0 {
                s = s.max(Integer::div_ceil(&(-lf.head.exp).max(0), &lf.base.exp) + 1);
            }
        }
        debug_assert!(self.slots.iter().all(|sl| sl.base.exp == 0 || sl.factor_exp(sl.len(s)) >= 0));
        Ok(s)
    }

    /// Eventual growth of the valuation per step once settled, ignoring the
    /// quadratic factor.
    pub fn settled_slope(&self) -> i64 {
        let mut slope = self.ratio.exp;
        for slot in &self.slots {
            if slot.base.exp == 0 {
                let e = slot.head.exp.min(0) * slot.mult;
                slope += if slot.inverse { -e } else { e };
            }
        }
        slope
    }

    /// Smallest `n0` such that the value vanishes identically for every
    /// `n >= n0`, if any numerator symbol eventually hits a zero factor.
    pub fn zero_from(&self) -> Option<i64> {
        let mut best: Option<i64> = None;
        for slot in self.slots.iter().filter(|s| !s.inverse && s.mult > 0) {
            if let Some(j) = vanishing_index(&slot.head, &slot.base) {
                // need mult * n + offset > j
                let mut n0 = (Integer::div_floor(&(j - slot.offset), &slot.mult) + 1).max(0);
                if n0 == 0 && self.at_zero.is_some() {
                    n0 = 1;
                }
                best = Some(best.map_or(n0, |b| b.min(n0)));
            }
        }
        best
    }

    pub fn has_quadratic_growth(&self) -> bool {
        self.quad.exp > 0
    }
}

/// Sum-term bound for `term(n) = prod_i part_i(mult_i n + offset_i)`.
///
/// Each part's valuation is exact, so `min_{m >= n} v(m)` is a valid and
/// nondecreasing bound; it is computed over the finite window up to the
/// index where every part has settled. Fails when the terms do not tend to
/// zero q-adically.
pub fn product_bound(parts: &[(&HyperTerm, i64, i64)]) -> Result<ValuationBound> {
    let mut settle = 0i64;
    let mut slope = 0i64;
    let mut quad = false;
    let mut zero: Option<i64> = None;
    let mut owned = Vec::with_capacity(parts.len());
    for (t, mult, offset) in parts {
        if *mult < 1 {
            return Err(Error::InvalidArgument("index map needs a positive multiplier".into()));
        }
        if let Some(z) = t.zero_from() {
            let n0 = Integer::div_ceil(&(z - offset), mult).max(0);
            zero = Some(zero.map_or(n0, |b: i64| b.min(n0)));
        }
        let s = t.settle_index()?;
        settle = settle.max(Integer::div_ceil(&(s - offset).max(0), mult));
        slope += mult * t.settled_slope();
        quad |= t.has_quadratic_growth();
        let mut bare = (*t).clone();
        bare.current = None;
        owned.push((bare, *mult, *offset));
    }
    const NEVER: i64 = i64::MAX / 4;
    if zero.is_none() && slope <= 0 && !quad {
        return Err(Error::InvalidArgument(format!("terms do not converge (valuation slope {slope})")));
    }
    let v = move |n: i64| -> i64 {
        let mut total = 0i64;
        for (t, mult, offset) in &owned {
            match t.valuation(mult * n + offset) {
                Some(x) => total += x,
                None => return NEVER,
            }
        }
        total
    };
    Ok(ValuationBound::new(move |n| match zero {
        Some(z) if n >= z => NEVER,
        Some(z) => (n..z).map(&v).min().unwrap(),
        None => (n..=n.max(settle)).map(&v).min().unwrap(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycNumber {
        CycNumber::from_int(n)
    }

    #[test]
    fn finite_poch() {
        let q = Mono::var(1);
        let p = poch_finite(&q, &q, 2, 10).unwrap();
        let want = LaurentSeries::from_terms([(0, c(1)), (1, c(-1)), (2, c(-1)), (3, c(1))], 10);
        assert!(p.agrees_with(&want));
        assert_eq!(poch_finite(&q, &q, 0, 10).unwrap(), LaurentSeries::one(10));
        // (4/q; q)_1 = 1 - 4 q^-1
        let head = Mono::new(c(4), -1).unwrap();
        let p = poch_finite(&head, &q, 1, 10).unwrap();
        assert_eq!(p.coeff(-1), Some(c(-4)));
        assert_eq!(p.coeff(0), Some(c(1)));
    }

    #[test]
    fn infinite_poch_is_euler_product() {
        let q = Mono::var(1);
        let p = poch_infinite(&q, &q, 12).unwrap();
        let pentagonal = [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1)];
        let want = LaurentSeries::from_terms(pentagonal.map(|(e, v)| (e, c(v))), 12);
        assert_eq!(p, want);
    }

    #[test]
    fn vanishing_detection() {
        let q = Mono::var(1);
        assert!(Mono::var(-2).poch_vanishes(&q, None));
        assert!(!Mono::var(-2).poch_vanishes(&q, Some(2)));
        assert!(Mono::one().poch_vanishes(&q, Some(1)));
        assert!(!Mono::int(2).poch_vanishes(&q, None));
        assert!(!Mono::var(1).poch_vanishes(&Mono::var(2), None));
    }

    #[test]
    fn hyper_term_matches_direct() {
        let q = Mono::var(1);
        let k = Mono::int(3);
        let mut run = HyperTerm::new(15)
            .num(k.clone(), &q)
            .den_len(Mono::var(1), &q, 1, -1)
            .num_len(&k * &q, &Mono::var(2), 2, 0)
            .power(Mono::new(c(-1), 1).unwrap());
        for n in 1..6 {
            let got = run.at(n).unwrap();
            let direct = poch_finite(&k, &q, n, 15)
                .unwrap()
                .div_series(&poch_finite(&q, &q, n - 1, 15).unwrap())
                .unwrap()
                .mul_series(&poch_finite(&(&k * &q), &Mono::var(2), 2 * n, 15).unwrap())
                .mul_monomial(&c(-1).pow(n).unwrap(), n);
            assert!(got.agrees_with(&direct), "n = {n}");
        }
    }

    #[test]
    fn reindexed_and_merged_match_products() {
        let q = Mono::var(1);
        let x = Mono::new(c(2), 1).unwrap();
        let base = HyperTerm::new(20)
            .num(Mono::int(3), &q)
            .den_linear(x.clone(), &q)
            .power(Mono::new(c(-2), 1).unwrap())
            .quadratic(q.clone())
            .times(c(5));
        let other = HyperTerm::new(20).den_len(q.clone(), &q, 2, 1).num_linear(Mono::int(7), &Mono::var(2));
        let mut merged = base.reindexed(3, 2).merged(&other.reindexed(2, 1));
        for n in 0..5 {
            let want = base.clone().at(3 * n + 2).unwrap().mul_series(&other.clone().at(2 * n + 1).unwrap());
            assert!(merged.at(n).unwrap().agrees_with(&want), "n = {n}");
            let v = base.valuation(3 * n + 2).unwrap() + other.valuation(2 * n + 1).unwrap();
            assert_eq!(merged.valuation(n), Some(v));
        }
    }
}
