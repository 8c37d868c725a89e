//! WP-Bailey pairs: sequences `(alpha_n, beta_n)` depending on `a`, `k` and
//! a base `Q` with
//!
//! `beta_n = sum_{j=0}^{n} (k/a; Q)_{n-j} (k; Q)_{n+j} / ((Q; Q)_{n-j} (aQ; Q)_{n+j}) alpha_j`.
//!
//! Pairs are instantiated at monomial parameters and produce their terms as
//! [`HyperTerm`]s. Quotients like `(Q sqrt(a), -Q sqrt(a); Q)_n / (sqrt(a), -sqrt(a); Q)_n`
//! are stored in the collapsed form `(1 - a Q^(2n)) / (1 - a)`, and the
//! factor `(a; Q)_n / (1 - a)` as `(aQ; Q)_{n-1}`, so no square roots are
//! ever needed.

use std::fmt;

use crate::coeff::CycNumber;
use crate::error::{Error, Result};
use crate::fps::LaurentSeries;
use crate::mono::{apply_poch, HyperTerm, Mono};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairKind {
    Trivial,
    Unit,
    Pr4,
    Mz01,
    Singh,
    SinghLimit,
}

impl PairKind {
    pub const ALL: [PairKind; 6] =
        [PairKind::Trivial, PairKind::Unit, PairKind::Pr4, PairKind::Mz01, PairKind::Singh, PairKind::SinghLimit];

    pub fn name(self) -> &'static str {
        match self {
            PairKind::Trivial => "trivial",
            PairKind::Unit => "unit",
            PairKind::Pr4 => "pr4",
            PairKind::Mz01 => "mz01",
            PairKind::Singh => "singh",
            PairKind::SinghLimit => "singh-limit",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn def(self) -> WpPairDef {
        WpPairDef { kind: self }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters a pair is instantiated at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairParams {
    pub a: Mono,
    pub k: Mono,
    /// The base `Q`: `q`, `q^2`, `-q`, ...
    pub base: Mono,
    /// `(rho_1, rho_2)` for Singh's pair.
    pub rho: Option<(Mono, Mono)>,
}

impl PairParams {
    pub fn new(a: Mono, k: Mono) -> Self {
        PairParams { a, k, base: Mono::var(1), rho: None }
    }

    pub fn with_base(mut self, base: Mono) -> Self {
        self.base = base;
        self
    }

    pub fn with_rho(mut self, r1: Mono, r2: Mono) -> Self {
        self.rho = Some((r1, r2));
        self
    }
}

/// A pair sequence. Most are hypergeometric in `n`; pr4's alpha vanishes
/// at odd `n` and is hypergeometric in `n / 2` otherwise.
#[derive(Debug, Clone)]
pub enum PairSeq {
    Hyper(HyperTerm),
    EvenOnly(HyperTerm),
}

impl PairSeq {
    pub fn at(&mut self, n: i64) -> Result<LaurentSeries> {
        match self {
            PairSeq::Hyper(t) => t.at(n),
            PairSeq::EvenOnly(t) => {
                if n % 2 != 0 {
                    Ok(LaurentSeries::zero(t.prec()))
                } else {
                    t.at(n / 2)
                }
            }
        }
    }

    /// The term `n -> self(mult n + offset)` as a hypergeometric term in `n`
    /// with its own index map, or `None` if it is identically zero. An
    /// even-only sequence needs an even multiplier; split sums by parity
    /// first.
    pub fn indexed(&self, mult: i64, offset: i64) -> Result<Option<(HyperTerm, i64, i64)>> {
        match self {
            PairSeq::Hyper(t) => Ok(Some((t.clone(), mult, offset))),
            PairSeq::EvenOnly(t) => {
                if mult % 2 != 0 {
                    Err(Error::InvalidArgument("even-only sequence indexed with an odd multiplier".into()))
                } else if offset % 2 != 0 {
                    Ok(None)
                } else {
                    Ok(Some((t.clone(), mult / 2, offset / 2)))
                }
            }
        }
    }

    /// Whether the sequence vanishes at every odd index.
    pub fn is_even_only(&self) -> bool {
        matches!(self, PairSeq::EvenOnly(_))
    }
}

/// An instantiated pair.
#[derive(Debug, Clone)]
pub struct PairEval {
    pub alpha: PairSeq,
    pub beta: PairSeq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WpPairDef {
    pub kind: PairKind,
}

pub fn pair_trivial() -> WpPairDef {
    PairKind::Trivial.def()
}

pub fn pair_unit() -> WpPairDef {
    PairKind::Unit.def()
}

pub fn pair_pr4() -> WpPairDef {
    PairKind::Pr4.def()
}

pub fn pair_mz01() -> WpPairDef {
    PairKind::Mz01.def()
}

pub fn pair_singh() -> WpPairDef {
    PairKind::Singh.def()
}

pub fn pair_singh_limit() -> WpPairDef {
    PairKind::SinghLimit.def()
}

/// Whether `(head; base)_inf` has an identically vanishing factor.
fn vanishes(head: &Mono, base: &Mono) -> bool {
    head.poch_vanishes(base, None)
}

/// Kronecker delta as a term: `(1; Q)_n`.
fn delta(base: &Mono, prec: i64) -> HyperTerm {
    HyperTerm::new(prec).num(Mono::one(), base)
}

impl WpPairDef {
    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    fn rho(p: &PairParams) -> Result<(Mono, Mono)> {
        p.rho.clone().ok_or_else(|| Error::InvalidArgument("Singh's pair needs rho_1 and rho_2".into()))
    }

    /// Heads of all denominator Pochhammer symbols, with their bases.
    fn denominators(&self, p: &PairParams) -> Result<Vec<(Mono, Mono)>> {
        let (a, k, q) = (&p.a, &p.k, &p.base);
        let q2 = q.pow(2);
        Ok(match self.kind {
            PairKind::Trivial => vec![(a * q, q.clone()), (q.clone(), q.clone())],
            PairKind::Unit => vec![(q.clone(), q.clone()), (k * q, q.clone())],
            PairKind::Pr4 => vec![
                (q2.clone(), q2.clone()),
                (&(&q2 * &k.pow(2)) / a, q2.clone()),
                (a * q, q2.clone()),
                (&(q * &k.pow(2)) / a, q.clone()),
                (q.clone(), q.clone()),
            ],
            PairKind::Mz01 => vec![(q.clone(), q.clone()), (&k.pow(2) / a, q.clone()), (a * q, q.clone())],
            PairKind::Singh => {
                let (r1, r2) = Self::rho(p)?;
                vec![
                    (q.clone(), q.clone()),
                    (&(a * q) / &r1, q.clone()),
                    (&(a * q) / &r2, q.clone()),
                    (&(&(k * &r1) * &r2) / a, q.clone()),
                ]
            }
            PairKind::SinghLimit => vec![(q.clone(), q.clone())],
        })
    }

    /// Admissibility predicates as `(name, holds)`.
    pub fn constraints(&self, p: &PairParams) -> Vec<(&'static str, bool)> {
        let mut out = vec![("nonzero-base-valuation", p.base.exp() >= 1)];
        match self.denominators(p) {
            Ok(dens) => out.push(("vanishing-denominator", !dens.iter().any(|(h, b)| vanishes(h, b)))),
            Err(_) => out.push(("missing-rho", false)),
        }
        match self.kind {
            PairKind::Trivial => out.push(("a-equals-k", p.a != p.k)),
            PairKind::Unit | PairKind::Pr4 | PairKind::Singh => out.push(("a-equals-1", !p.a.is_one())),
            PairKind::Mz01 => {}
            PairKind::SinghLimit => {
                out.push(("singh-limit-needs-a=1,k=-1", p.a.is_one() && p.k == -Mono::one()));
            }
        }
        out
    }

    /// The first failing predicate, if any.
    pub fn check(&self, p: &PairParams) -> Result<()> {
        match self.constraints(p).into_iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(Error::Constraint(name.into())),
            None => Ok(()),
        }
    }

    /// Instantiates the pair; terms carry relative precision `prec`.
    pub fn instantiate(&self, p: &PairParams, prec: i64) -> Result<PairEval> {
        self.check(p)?;
        let (a, k, q) = (&p.a, &p.k, &p.base);
        let q2 = q.pow(2);
        let one = CycNumber::one();
        let h = || HyperTerm::new(prec);
        let (alpha, beta) = match self.kind {
            PairKind::Trivial => (
                PairSeq::Hyper(delta(q, prec)),
                PairSeq::Hyper(h().num(k.clone(), q).num(k / a, q).den(a * q, q).den(q.clone(), q)),
            ),
            PairKind::Unit => (
                PairSeq::Hyper(
                    h().num_linear(a.clone(), &q2)
                        .num_len(a * q, q, 1, -1)
                        .num(a / k, q)
                        .den(q.clone(), q)
                        .den(k * q, q)
                        .power(k / a)
                        .with_value_at_zero(one),
                ),
                PairSeq::Hyper(delta(q, prec)),
            ),
            PairKind::Pr4 => {
                let k2 = k.pow(2);
                (
                    PairSeq::EvenOnly(
                        h().num_linear(a.clone(), &q.pow(4))
                            .num_len(a * &q2, &q2, 1, -1)
                            .num(&a.pow(2) / &k2, &q2)
                            .den(q2.clone(), &q2)
                            .den(&(&q2 * &k2) / a, &q2)
                            .power((k / a).pow(2))
                            .with_value_at_zero(one),
                    ),
                    PairSeq::Hyper(
                        h().num(k.clone(), q)
                            .num(a / k, q)
                            .num(&(&k2 * q) / a, &q2)
                            .den(a * q, &q2)
                            .den(&(q * &k2) / a, q)
                            .den(q.clone(), q)
                            .power(-(k / a)),
                    ),
                )
            }
            PairKind::Mz01 => {
                let k2a = &k.pow(2) / a;
                (
                    PairSeq::Hyper(h().num(&(q * &a.pow(2)) / &k.pow(2), q).den(q.clone(), q).power(k / a)),
                    PairSeq::Hyper(
                        h().num(&(q * a) / k, q)
                            .num(k.clone(), q)
                            .den(k2a.clone(), q)
                            .den(q.clone(), q)
                            .num_len(k2a, q, 2, 0)
                            .den_len(a * q, q, 2, 0),
                    ),
                )
            }
            PairKind::Singh => {
                let (r1, r2) = Self::rho(p)?;
                let r12 = &r1 * &r2;
                let aq = a * q;
                (
                    PairSeq::Hyper(
                        h().num_linear(a.clone(), &q2)
                            .num_len(aq.clone(), q, 1, -1)
                            .num(r1.clone(), q)
                            .num(r2.clone(), q)
                            .num(&(&a.pow(2) * q) / &(k * &r12), q)
                            .den(q.clone(), q)
                            .den(&aq / &r1, q)
                            .den(&aq / &r2, q)
                            .den(&(k * &r12) / a, q)
                            .power(k / a)
                            .with_value_at_zero(one),
                    ),
                    PairSeq::Hyper(
                        h().num(&(k * &r1) / a, q)
                            .num(&(k * &r2) / a, q)
                            .num(k.clone(), q)
                            .num(&aq / &r12, q)
                            .den(&aq / &r1, q)
                            .den(&aq / &r2, q)
                            .den(&(k * &r12) / a, q)
                            .den(q.clone(), q),
                    ),
                )
            }
            PairKind::SinghLimit => (
                PairSeq::Hyper(
                    h().num_linear(-Mono::one(), q)
                        .power(-Mono::one())
                        .quadratic(q.clone())
                        .with_value_at_zero(one),
                ),
                PairSeq::Hyper(h().num(-Mono::one(), q).den(q.clone(), q).quadratic(q.clone())),
            ),
        };
        Ok(PairEval { alpha, beta })
    }
}

/// Multiplies `x` by the defining-relation kernel
/// `(k/a;Q)_{n-j}(k;Q)_{n+j} / ((Q;Q)_{n-j}(aQ;Q)_{n+j})`.
pub fn apply_wp_kernel(x: &LaurentSeries, p: &PairParams, n: i64, j: i64) -> Result<LaurentSeries> {
    let (a, k, q) = (&p.a, &p.k, &p.base);
    let x = apply_poch(x, &(k / a), q, n - j, false)?;
    let x = apply_poch(&x, k, q, n + j, false)?;
    let x = apply_poch(&x, q, q, n - j, true)?;
    apply_poch(&x, &(a * q), q, n + j, true)
}

/// Residuals `beta_n - sum_j kernel(n, j) alpha_j` for `1 <= n <= n_max`,
/// truncated at `order`. A genuine pair gives all zeros.
pub fn wp_check(pair: &WpPairDef, p: &PairParams, n_max: i64, order: i64) -> Result<Vec<LaurentSeries>> {
    // the defining relation divides by (aQ; Q)_{n+j}
    if vanishes(&(&p.a * &p.base), &p.base) {
        return Err(Error::Constraint("relation-denominator".into()));
    }
    let mut eval = pair.instantiate(p, order + 8 + 4 * n_max)?;
    let alphas: Vec<_> = (0..=n_max).map(|j| eval.alpha.at(j)).collect::<Result<_>>()?;
    let betas: Vec<_> = (0..=n_max).map(|j| eval.beta.at(j)).collect::<Result<_>>()?;
    wp_residuals(p, &alphas, &betas, order)
}

/// Residuals of the defining relation for precomputed `alpha_0..alpha_m`
/// and `beta_0..beta_m`.
pub fn wp_residuals(p: &PairParams, alphas: &[LaurentSeries], betas: &[LaurentSeries], order: i64) -> Result<Vec<LaurentSeries>> {
    let n_max = alphas.len().min(betas.len()) as i64 - 1;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let mut rhs = LaurentSeries::zero(order);
        for (j, alpha) in alphas.iter().enumerate().take(n as usize + 1) {
            if alpha.is_zero() {
                continue;
            }
            let term = apply_wp_kernel(alpha, p, n, j as i64)?;
            rhs = &rhs + &term.truncate(order);
        }
        let r = &betas[n as usize].truncate(order) - &rhs;
        if r.order() < order {
            return Err(Error::InvalidArgument(format!(
                "residual at n = {n} only known to order {}; raise the precision",
                r.order()
            )));
        }
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycNumber {
        CycNumber::from_int(n)
    }

    fn cm(n: i64, d: i64) -> Mono {
        Mono::constant(CycNumber::from_ratio(n, d)).unwrap()
    }

    fn all_zero(res: &[LaurentSeries]) -> bool {
        res.iter().all(|r| r.is_zero())
    }

    fn params(a: Mono, k: Mono) -> PairParams {
        PairParams::new(a, k)
    }

    #[test]
    fn trivial_pair_values() {
        let p = params(Mono::int(2), Mono::int(3));
        let mut e = pair_trivial().instantiate(&p, 10).unwrap();
        assert_eq!(e.beta.at(0).unwrap(), LaurentSeries::one(10));
        assert!(e.alpha.at(3).unwrap().is_zero());
        let b1 = e.beta.at(1).unwrap();
        let want = LaurentSeries::constant(&c(-2) * &CycNumber::from_ratio(-1, 2), 10)
            .div_binomial(&c(2), 1)
            .unwrap()
            .div_binomial(&c(1), 1)
            .unwrap();
        assert!(b1.agrees_with(&want));
        assert!(b1.order() >= 2);
    }

    #[test]
    fn unit_pair_values() {
        let p = params(Mono::int(4), Mono::int(2));
        let mut e = pair_unit().instantiate(&p, 10).unwrap();
        assert_eq!(e.alpha.at(0).unwrap(), LaurentSeries::one(10));
        assert!(e.beta.at(2).unwrap().is_zero());
        // (1-4q^2)/(1-4) * (1-4)(1-2) / ((1-q)(1-2q)) * (1/2)
        let want = LaurentSeries::constant(CycNumber::from_ratio(-1, 2), 10)
            .mul_binomial(&c(4), 2)
            .div_binomial(&c(1), 1)
            .unwrap()
            .div_binomial(&c(2), 1)
            .unwrap();
        assert!(e.alpha.at(1).unwrap().agrees_with(&want));
        assert!(pair_unit().check(&params(Mono::one(), Mono::int(2))).is_err());
    }

    #[test]
    fn pr4_pair_values() {
        let p = params(Mono::int(3), Mono::int(2));
        let mut e = pair_pr4().instantiate(&p, 10).unwrap();
        assert!(e.alpha.at(1).unwrap().is_zero());
        assert_eq!(e.beta.at(0).unwrap(), LaurentSeries::one(10));
        for m in 0..=10 {
            assert!(e.alpha.at(2 * m + 1).unwrap().is_zero());
        }
        let res = wp_check(&pair_pr4(), &p, 2, 12).unwrap();
        assert!(res[1].is_zero());
    }

    #[test]
    fn mz01_pair_values() {
        let p = params(Mono::int(2), Mono::int(3));
        let mut e = pair_mz01().instantiate(&p, 10).unwrap();
        assert_eq!(e.alpha.at(0).unwrap(), LaurentSeries::one(10));
        assert_eq!(e.beta.at(0).unwrap(), LaurentSeries::one(10));
        let want = LaurentSeries::constant(CycNumber::from_ratio(3, 2), 10)
            .mul_binomial(&CycNumber::from_ratio(4, 9), 1)
            .div_binomial(&c(1), 1)
            .unwrap();
        assert!(e.alpha.at(1).unwrap().agrees_with(&want));
        let res = wp_check(&pair_mz01(), &params(Mono::int(5), Mono::int(2)), 4, 12).unwrap();
        assert!(all_zero(&res), "{res:?}");
    }

    #[test]
    fn singh_pairs() {
        let mut e = pair_singh_limit().instantiate(&params(Mono::one(), -Mono::one()), 10).unwrap();
        assert_eq!(e.alpha.at(0).unwrap(), LaurentSeries::one(10));
        let a1 = e.alpha.at(1).unwrap();
        assert!(a1.agrees_with(&LaurentSeries::from_terms([(0, c(-1)), (1, c(-1))], 10)));
        let b1 = e.beta.at(1).unwrap();
        assert!(b1.agrees_with(&LaurentSeries::constant(c(2), 10).div_binomial(&c(1), 1).unwrap()));
        let p = params(Mono::int(3), Mono::int(2)).with_rho(Mono::int(5), Mono::int(7));
        assert!(all_zero(&wp_check(&pair_singh(), &p, 4, 12).unwrap()));
        let lim = params(Mono::one(), -Mono::one());
        assert!(all_zero(&wp_check(&pair_singh_limit(), &lim, 6, 15).unwrap()));
        let lim_neg = lim.with_base(-Mono::var(1));
        assert!(all_zero(&wp_check(&pair_singh_limit(), &lim_neg, 6, 15).unwrap()));
    }

    #[test]
    fn every_pair_satisfies_the_relation() {
        let a = cm(2, 3);
        let k = cm(-5, 7);
        for kind in [PairKind::Trivial, PairKind::Unit, PairKind::Pr4, PairKind::Mz01, PairKind::Singh] {
            let p = params(a.clone(), k.clone()).with_rho(cm(5, 2), cm(-3, 4));
            let res = wp_check(&kind.def(), &p, 6, 12).unwrap();
            assert!(all_zero(&res), "{kind}: {res:?}");
        }
        let res = wp_check(&pair_trivial(), &params(Mono::int(2), Mono::int(5)), 6, 12).unwrap();
        assert!(all_zero(&res));
        let res = wp_check(&pair_unit(), &params(Mono::int(2), Mono::int(5)), 6, 12).unwrap();
        assert!(all_zero(&res));
    }

    #[test]
    fn pairs_at_other_bases() {
        let a = cm(2, 3);
        let k = cm(-5, 7);
        for base in [Mono::var(2), -Mono::var(1)] {
            for kind in [PairKind::Trivial, PairKind::Unit, PairKind::Pr4, PairKind::Mz01] {
                let p = params(a.clone(), k.clone()).with_base(base.clone());
                let res = wp_check(&kind.def(), &p, 4, 12).unwrap();
                assert!(all_zero(&res), "{kind} at base {base}");
            }
        }
    }

    #[test]
    fn corrupted_beta_is_detected() {
        let p = params(Mono::int(2), Mono::int(5));
        let mut eval = pair_trivial().instantiate(&p, 20).unwrap();
        let alphas: Vec<_> = (0..=3).map(|j| eval.alpha.at(j).unwrap()).collect();
        let mut betas: Vec<_> = (0..=3).map(|j| eval.beta.at(j).unwrap()).collect();
        betas[2] = &betas[2] + &LaurentSeries::monomial(c(1), 1, 20);
        let res = wp_residuals(&p, &alphas, &betas, 10).unwrap();
        assert!(res[0].is_zero() && res[2].is_zero());
        assert_eq!(res[1], LaurentSeries::monomial(c(1), 1, 10));
    }
}
