//! The identity bank: every identity as an [`IdentityCase`] with builders for
//! both sides, admissibility predicates and the WP-Bailey pairs it accepts.
//!
//! Builders work at a relative precision `prec` above the target order and
//! never assume anything past what they can prove; the verifier compares on
//! the jointly known window.

use std::collections::BTreeMap;

use crate::coeff::CycNumber;
use crate::error::{Error, Result};
use crate::fps::{sum_terms_from, LaurentSeries, ValuationBound};
use crate::mono::{product_bound, HyperTerm, Mono};
use crate::qkit::{a_of_q, chi0, m_product_general, poch_quotient, theta_phi, theta_psi, LambertSpec};
use crate::wppairs::{PairEval, PairKind, PairParams, PairSeq};

/// Parameter values and the pair plugged into a case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub params: BTreeMap<String, Mono>,
    pub pair: Option<PairKind>,
    pub seed: u64,
}

impl Specialization {
    pub fn new(pair: Option<PairKind>) -> Self {
        Specialization { params: BTreeMap::new(), pair, seed: 0 }
    }

    pub fn with(mut self, name: &str, value: Mono) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Result<&Mono> {
        self.params.get(name).ok_or_else(|| Error::InvalidArgument(format!("parameter {name} is not set")))
    }

    fn p(&self, name: &str) -> Mono {
        self.params[name].clone()
    }
}

/// One checked equality `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct Equality {
    pub label: String,
    pub lhs: LaurentSeries,
    pub rhs: LaurentSeries,
}

/// A named admissibility predicate.
#[derive(Clone, Copy)]
pub struct Predicate {
    pub name: &'static str,
    pub holds: fn(&Specialization) -> bool,
}

type Builder = fn(&Specialization, &mut Ctx) -> Result<Vec<Equality>>;
/// Where a case instantiates pairs: at the specialization's pair, or at a
/// fixed pair per point.
#[derive(Clone, Copy)]
enum PairPoints {
    Slot(fn(&Specialization) -> Vec<PairParams>),
    Fixed(fn(&Specialization) -> Vec<(PairKind, PairParams)>),
}

pub struct IdentityCase {
    pub id: &'static str,
    /// Equation tag of the identity.
    pub equation: &'static str,
    pub free_params: &'static [&'static str],
    pub pair_slots: &'static [PairKind],
    /// 2 when the case is built in `t` with `q = t^2`.
    pub subst_exp: i64,
    pub predicates: Vec<Predicate>,
    pair_points: Option<PairPoints>,
    build: Builder,
}

impl std::fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityCase").field("id", &self.id).field("equation", &self.equation).finish()
    }
}

/// Build state: target order, working precision and term counts.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub order: i64,
    pub prec: i64,
    pub terms: BTreeMap<String, usize>,
}

impl IdentityCase {
    /// Parameters drawn at random: the free ones plus Singh's `rho`s.
    pub fn drawn_params(&self, pair: Option<PairKind>) -> Vec<&'static str> {
        let mut v = self.free_params.to_vec();
        if pair == Some(PairKind::Singh) {
            v.extend(["rho1", "rho2"]);
        }
        v
    }

    /// The first violated predicate, if any.
    pub fn check(&self, spec: &Specialization) -> std::result::Result<(), String> {
        for p in &self.predicates {
            if !(p.holds)(spec) {
                return Err(p.name.to_string());
            }
        }
        let drawn: Vec<Mono> = self
            .drawn_params(spec.pair)
            .iter()
            .filter_map(|n| spec.params.get(*n).cloned())
            .collect();
        if !generic_position(&drawn) {
            return Err("generic-position".into());
        }
        let points = match (self.pair_points, spec.pair) {
            (Some(PairPoints::Fixed(f)), _) => f(spec),
            (Some(PairPoints::Slot(f)), Some(kind)) => {
                let mut v = Vec::new();
                for mut pp in f(spec) {
                    if kind == PairKind::Singh {
                        let (Some(r1), Some(r2)) = (spec.params.get("rho1"), spec.params.get("rho2")) else {
                            return Err("missing-rho".into());
                        };
                        pp = pp.with_rho(r1.clone(), r2.clone());
                    }
                    v.push((kind, pp));
                }
                v
            }
            _ => Vec::new(),
        };
        for (kind, pp) in points {
            if let Some((name, _)) = kind.def().constraints(&pp).into_iter().find(|(_, ok)| !ok) {
                return Err(format!("pair-{name}"));
            }
        }
        Ok(())
    }

    /// Builds all equalities at target order `order` (in the case's own
    /// variable) with working precision `prec`.
    pub fn build(&self, spec: &Specialization, order: i64, prec: i64) -> Result<(Vec<Equality>, BTreeMap<String, usize>)> {
        if !self.pair_slots.is_empty() {
            match spec.pair {
                Some(p) if self.pair_slots.contains(&p) => {}
                Some(p) => return Err(Error::Constraint(format!("pair {p} not accepted"))),
                None => return Err(Error::Constraint("pair missing".into())),
            }
        }
        let mut ctx = Ctx { order, prec, terms: BTreeMap::new() };
        let eqs = (self.build)(spec, &mut ctx)?;
        Ok((eqs, ctx.terms))
    }
}

/// No product of the given constants with exponents in `[-2, 2]` (not all
/// zero) equals `+1` or `-1`. Rules out every coincidence that makes a
/// constant Pochhammer factor vanish in the bank.
pub fn generic_position(params: &[Mono]) -> bool {
    let consts: Vec<&CycNumber> = params.iter().filter(|m| m.is_constant()).map(|m| m.coeff()).collect();
    let n = consts.len();
    let mut exps = vec![-2i64; n];
    loop {
        if exps.iter().any(|&e| e != 0) {
            let mut v = CycNumber::one();
            for (c, &e) in consts.iter().zip(&exps) {
                v = &v * &c.pow(e).expect("nonzero");
            }
            if v.is_one() || (-&v).is_one() {
                return false;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            exps[i] += 1;
            if exps[i] <= 2 {
                break;
            }
            exps[i] = -2;
            i += 1;
        }
    }
}

fn q() -> Mono {
    Mono::var(1)
}

fn qp(e: i64) -> Mono {
    Mono::var(e)
}

fn int(n: i64) -> CycNumber {
    CycNumber::from_int(n)
}

/// Product of monomials.
fn mm(xs: &[&Mono]) -> Mono {
    xs.iter().fold(Mono::one(), |acc, x| &acc * x)
}

/// `num / den` for lists of monomials.
fn mq(num: &[&Mono], den: &[&Mono]) -> Mono {
    &mm(num) / &mm(den)
}

impl Ctx {
    fn h(&self) -> HyperTerm {
        HyperTerm::new(self.prec)
    }

    /// A monomial as a series.
    fn s(&self, m: &Mono) -> LaurentSeries {
        m.to_series(self.prec)
    }

    fn c(&self, c: CycNumber) -> LaurentSeries {
        LaurentSeries::constant(c, self.prec)
    }

    /// `1 - m`.
    fn om(&self, m: &Mono) -> LaurentSeries {
        m.one_minus(self.prec)
    }

    fn pq(&self, num: &[Mono], den: &[Mono], base: &Mono) -> Result<LaurentSeries> {
        poch_quotient(num, den, base, self.prec)
    }

    fn lam(&self, spec: LambertSpec) -> Result<LaurentSeries> {
        spec.eval(self.prec)
    }

    /// `sum x Q^n / (1 - x Q^n)`.
    fn lam1(&self, x: Mono, base: &Mono) -> Result<LaurentSeries> {
        LambertSpec::simple(x, base).eval(self.prec)
    }

    fn count(&mut self, label: &str, n: usize) {
        *self.terms.entry(label.to_string()).or_default() += n;
    }

    /// `sum_{n >= start} pre(n) seq(mult n + offset)`, or `sum pre(n)`.
    fn hsum(&mut self, label: &str, start: i64, pre: HyperTerm, seq: Option<(&PairSeq, i64, i64)>) -> Result<LaurentSeries> {
        let Some((seq, mult, offset)) = seq else {
            return self.sum_parts(label, start, vec![(pre, 1, 0)]);
        };
        if seq.is_even_only() && mult % 2 != 0 {
            // split by the parity of n so the index into seq is even-stepped
            let mut total = LaurentSeries::zero(self.prec);
            for r in 0..2 {
                let Some(part) = seq.indexed(2 * mult, mult * r + offset)? else {
                    continue;
                };
                let from = (start - r + 1).div_euclid(2);
                let s = self.sum_parts(label, from, vec![(pre.clone(), 2, r), part])?;
                total = &total + &s;
            }
            return Ok(total);
        }
        match seq.indexed(mult, offset)? {
            Some(part) => self.sum_parts(label, start, vec![(pre, 1, 0), part]),
            None => Ok(LaurentSeries::zero(self.prec)),
        }
    }

    fn sum_parts(&mut self, label: &str, start: i64, mut parts: Vec<(HyperTerm, i64, i64)>) -> Result<LaurentSeries> {
        let bound = {
            let refs: Vec<(&HyperTerm, i64, i64)> = parts.iter().map(|(t, m, o)| (t, *m, *o)).collect();
            product_bound(&refs)?
        };
        // one incremental term for the whole product; indices where a part
        // has an overridden value at zero go through the parts instead
        let mut merged = parts
            .iter()
            .map(|(t, m, o)| t.reindexed(*m, *o))
            .reduce(|acc, t| acc.merged(&t))
            .unwrap_or_else(|| HyperTerm::new(self.prec));
        let prec = self.prec;
        let summed = sum_terms_from(
            start,
            |n| {
                if parts.iter().any(|(t, m, o)| t.valuation(m * n + o).is_none()) {
                    return Ok(LaurentSeries::zero(prec));
                }
                if !parts.iter().any(|(t, m, o)| t.has_value_at_zero() && m * n + o == 0) {
                    return merged.at(n);
                }
                let mut acc = LaurentSeries::one(prec);
                for (t, m, o) in parts.iter_mut() {
                    acc = acc.mul_series(&t.at(*m * n + *o)?);
                }
                Ok(acc)
            },
            &bound,
            prec,
        )?;
        self.count(label, summed.terms);
        Ok(summed.series)
    }

    fn pair(&self, spec: &Specialization, a: &Mono, k: &Mono, base: &Mono) -> Result<PairEval> {
        let kind = spec.pair.ok_or_else(|| Error::Constraint("pair missing".into()))?;
        let mut p = PairParams::new(a.clone(), k.clone()).with_base(base.clone());
        if kind == PairKind::Singh {
            p = p.with_rho(spec.get("rho1")?.clone(), spec.get("rho2")?.clone());
        }
        kind.def().instantiate(&p, self.prec)
    }
}

fn eq(label: &str, lhs: LaurentSeries, rhs: LaurentSeries) -> Equality {
    Equality { label: label.to_string(), lhs, rhs }
}

/// Multiplies a series by a monomial.
fn ms(x: &LaurentSeries, m: &Mono) -> LaurentSeries {
    x.mul_monomial(m.coeff(), m.exp())
}

fn dv(x: &LaurentSeries, y: &LaurentSeries) -> Result<LaurentSeries> {
    x.div_series(y)
}

// ---------------------------------------------------------------------------
// shared builders

/// `F(a, k, q)` from a pair instantiated at `(a, k)`.
fn big_f(ctx: &mut Ctx, tag: &str, a: &Mono, k: &Mono, pair: &PairEval) -> Result<LaurentSeries> {
    let (q, q2, q3) = (q(), qp(2), qp(3));
    let k2 = k.pow(2);
    let a2 = a.pow(2);
    let k2a = &k2 / a;
    let x = mq(&[&q, a], &[k]);
    let pre1 = ctx
        .h()
        .num_linear(k.clone(), &q2)
        .den_once(k.clone())
        .num_len(q.clone(), &q, 1, -1)
        .num(k2a.clone(), &q)
        .num(&q * a, &q2)
        .den(x.clone(), &q)
        .den(k * &q, &q)
        .den(&k2a * &q, &q2)
        .power(-&x);
    let s1 = ctx.hsum(&format!("{tag}.S1"), 1, pre1, Some((&pair.beta, 1, 0)))?;
    let pre2 = ctx
        .h()
        .num_len(q2.clone(), &q2, 1, -1)
        .num(k2a.clone(), &q2)
        .den(mq(&[&q2, &a2], &[&k2]), &q2)
        .den(&q2 * a, &q2)
        .power(x.pow(2));
    let s2 = ctx.hsum(&format!("{tag}.S2"), 1, pre2, Some((&pair.alpha, 2, 0)))?;
    let p3 = ctx.pq(
        &[k2a.clone(), mq(&[&q3, &a2], &[&k2]), &q3 * a, q2.clone()],
        &[&k2a * &q, mq(&[&q2, &a2], &[&k2]), &q2 * a, q.clone()],
        &q2,
    )?;
    let pre3 = ctx
        .h()
        .num(&k2a * &q, &q2)
        .num(q.clone(), &q2)
        .den(mq(&[&q3, &a2], &[&k2]), &q2)
        .den(&q3 * a, &q2)
        .power(x.pow(2))
        .times_mono(x.clone());
    let s3 = ctx.hsum(&format!("{tag}.S3"), 0, pre3, Some((&pair.alpha, 2, 1)))?;
    Ok(&(&s1 - &s2) + &p3.mul_series(&s3))
}

/// `G(k, Q)` from a pair instantiated at `(k^2, k, Q)`.
fn big_g(ctx: &mut Ctx, tag: &str, k: &Mono, base: &Mono, pair: &PairEval) -> Result<LaurentSeries> {
    let q = base.clone();
    let (q2, q3) = (q.pow(2), q.pow(3));
    let k2 = k.pow(2);
    let qk = &q * k;
    let pre1 = ctx
        .h()
        .num_linear(k.clone(), &q2)
        .den_once(k.clone())
        .num_len(q.clone(), &q, 1, -1)
        .num_len(q.clone(), &q, 1, -1)
        .num(&q * &k2, &q2)
        .den(qk.clone(), &q)
        .den(qk.clone(), &q)
        .den(q.clone(), &q2)
        .power(-&qk);
    let s1 = ctx.hsum(&format!("{tag}.S1"), 1, pre1, Some((&pair.beta, 1, 0)))?;
    let pre2 = ctx
        .h()
        .num_len(q2.clone(), &q2, 1, -1)
        .num_len(q2.clone(), &q2, 1, -1)
        .den(&q2 * &k2, &q2)
        .den(&q2 * &k2, &q2)
        .power(qk.pow(2));
    let s2 = ctx.hsum(&format!("{tag}.S2"), 1, pre2, Some((&pair.alpha, 2, 0)))?;
    let p3 = ctx.pq(
        &[&q3 * &k2, &q3 * &k2, q2.clone(), q2.clone()],
        &[&q2 * &k2, &q2 * &k2, q.clone(), q.clone()],
        &q2,
    )?;
    let pre3 = ctx
        .h()
        .num(q.clone(), &q2)
        .num(q.clone(), &q2)
        .den(&q3 * &k2, &q2)
        .den(&q3 * &k2, &q2)
        .power(qk.pow(2))
        .times_mono(qk.clone());
    let s3 = ctx.hsum(&format!("{tag}.S3"), 0, pre3, Some((&pair.alpha, 2, 1)))?;
    Ok(&(&s1 - &s2) + &p3.mul_series(&s3))
}

/// `f(a, k, z, Q)` in its first (very-well-poised) representation.
fn f_first(ctx: &mut Ctx, tag: &str, a: &Mono, k: &Mono, z: &Mono, base: &Mono) -> Result<LaurentSeries> {
    let q = base;
    let pre = ctx
        .h()
        .num_linear(k.clone(), &q.pow(2))
        .den_once(k.clone())
        .num(k.clone(), q)
        .num(z.clone(), q)
        .num(k / a, q)
        .den(k * q, q)
        .den(mq(&[q, k], &[z]), q)
        .den(q * a, q)
        .den_linear(Mono::one(), q)
        .power(mq(&[q, a], &[z]));
    ctx.hsum(tag, 1, pre, None)
}

/// `f(a, k, z, Q)` in its second representation.
fn f_second(ctx: &mut Ctx, tag: &str, a: &Mono, k: &Mono, z: &Mono, base: &Mono) -> Result<LaurentSeries> {
    let q = base;
    let pre = ctx
        .h()
        .num_linear(a.clone(), &q.pow(2))
        .den_once(a.clone())
        .num(a.clone(), q)
        .num(z.clone(), q)
        .num(a / k, q)
        .den(q * a, q)
        .den(mq(&[q, a], &[z]), q)
        .den(q * k, q)
        .den_linear(Mono::one(), q)
        .power(mq(&[q, k], &[z]))
        .times(int(-1));
    ctx.hsum(tag, 1, pre, None)
}

/// `f(a, k, z, Q)` as four Lambert series.
fn f_lambert(ctx: &Ctx, a: &Mono, k: &Mono, z: &Mono, base: &Mono) -> Result<LaurentSeries> {
    let s = &(&ctx.lam1(k.clone(), base)? + &ctx.lam1(a / z, base)?) - &ctx.lam1(a.clone(), base)?;
    Ok(&s - &ctx.lam1(k / z, base)?)
}

/// The reciprocity right side shared by `f` and the first older theorem.
fn f_recip_rhs(ctx: &Ctx, a: &Mono, k: &Mono, z: &Mono) -> Result<LaurentSeries> {
    let q = q();
    let num = (&ctx.s(a) - &ctx.s(k)).mul_series(&ctx.om(&z.inv())).mul_series(&ctx.om(&mq(&[a, k], &[z])));
    let den = ctx.om(a).mul_series(&ctx.om(k)).mul_series(&ctx.om(&(a / z))).mul_series(&ctx.om(&(k / z)));
    let r = dv(&num, &den)?;
    let prod = ctx.pq(
        &[z.clone(), &q / z, k / a, mq(&[&q, a], &[k]), mq(&[a, k], &[z]), mq(&[&q, z], &[a, k]), q.clone(), q.clone()],
        &[z / k, mq(&[&q, k], &[z]), z / a, mq(&[&q, a], &[z]), a.clone(), &q / a, k.clone(), &q / k],
        &q,
    )?;
    Ok(&r + &ms(&prod, &(z / k)))
}

/// Right side of the main reciprocity theorem.
fn thm1_rhs(ctx: &Ctx, a: &Mono, k: &Mono) -> Result<LaurentSeries> {
    let (q, q2, q3) = (q(), qp(2), qp(3));
    let k2 = k.pow(2);
    let a2 = a.pow(2);
    let p1 = ctx.pq(
        &[
            a * &q,
            &q / a,
            &k2 / a,
            mq(&[&q2, a], &[&k2]),
            &k2 / &q,
            &q3 / &k2,
            q2.clone(),
            q2.clone(),
        ],
        &[
            mq(&[a, &q], &[&k2]),
            mq(&[&k2, &q], &[a]),
            a.clone(),
            &q2 / a,
            k2.clone(),
            &q2 / &k2,
            q.clone(),
            q.clone(),
        ],
        &q2,
    )?;
    let p2 = ctx
        .pq(&[&k2 / a, mq(&[&q, a], &[&k2]), -a, -(&q / a)], &[], &q)?
        .mul_series(&ctx.pq(&[q2.clone(), q2.clone()], &[k2.clone(), &q2 / &k2, &a2 / &k2, mq(&[&q2, &k2], &[&a2])], &q2)?);
    let num = (&ctx.s(&a2) - &ctx.s(k)).mul_series(&(&ctx.s(a) - &ctx.s(&k2)));
    let den = ctx.om(a).mul_series(&ctx.om(k)).mul_series(&(&ctx.s(&a2) - &ctx.s(&k2)));
    let r = dv(&num, &den)?;
    let t1 = ms(&p1, &mq(&[a, &q], &[&k2]));
    let t2 = ms(&p2, &(a / k));
    Ok(&(&t1 - &t2) + &r)
}

/// `k M(k, q)` for a monomial `k`.
fn k_m(ctx: &Ctx, k: &Mono) -> Result<LaurentSeries> {
    Ok(ms(&m_product_general(&k.pow(2), &q(), ctx.prec)?, k))
}

/// `psi(c q^m)` as a series in the case variable.
fn psi_at(ctx: &Ctx, c: i64, m: i64) -> Result<LaurentSeries> {
    theta_psi(ctx.prec / m + 1).subst_monomial(&int(c), m)
}

fn weighted(coeff: Mono, ratio: Mono, den_coeff: Mono, den_ratio: Mono, w: fn(i64) -> i64) -> LambertSpec<'static> {
    LambertSpec::new(coeff, ratio, den_coeff, den_ratio).weighted(move |n| int(w(n)))
}

// ---------------------------------------------------------------------------
// cases

fn wp_def(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let n_max = 8;
    let mut out = Vec::new();
    for kind in PairKind::ALL {
        let mut p = match kind {
            PairKind::SinghLimit => PairParams::new(Mono::one(), -Mono::one()),
            _ => PairParams::new(spec.p("a"), spec.p("k")),
        };
        if kind == PairKind::Singh {
            p = p.with_rho(spec.p("rho1"), spec.p("rho2"));
        }
        let def = kind.def();
        def.check(&p)?;
        let mut eval = def.instantiate(&p, ctx.prec)?;
        let alphas = (0..=n_max).map(|j| eval.alpha.at(j)).collect::<Result<Vec<_>>>()?;
        for n in 1..=n_max {
            let beta = eval.beta.at(n)?;
            let mut rhs = LaurentSeries::zero(ctx.prec);
            for (j, alpha) in alphas.iter().enumerate().take(n as usize + 1) {
                if !alpha.is_zero() {
                    rhs = &rhs + &crate::wppairs::apply_wp_kernel(alpha, &p, n, j as i64)?;
                }
            }
            out.push(eq(&format!("{kind} beta_{n}"), beta, rhs));
        }
        ctx.count(kind.name(), n_max as usize);
    }
    Ok(out)
}

fn f_eq_lambert(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k) = (spec.p("a"), spec.p("k"));
    let pair = ctx.pair(spec, &a, &k, &q())?;
    let f = big_f(ctx, "F", &a, &k, &pair)?;
    let half = CycNumber::from_ratio(1, 2);
    let l1 = f_lambert(ctx, &(&a / &k), &k, &-Mono::one(), &q())?.scale(&half);
    let l2 = f_lambert(ctx, &a, &k.pow(2), &(&a * &q()), &qp(2))?;
    Ok(vec![eq("F=lambert", f, &l1 + &l2)])
}

fn thm1(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k) = (spec.p("a"), spec.p("k"));
    let p1 = ctx.pair(spec, &a, &k, &q())?;
    let p2 = ctx.pair(spec, &a.inv(), &k.inv(), &q())?;
    let f1 = big_f(ctx, "F(a,k)", &a, &k, &p1)?;
    let f2 = big_f(ctx, "F(1/a,1/k)", &a.inv(), &k.inv(), &p2)?;
    Ok(vec![eq("reciprocity", &f1 - &f2, thm1_rhs(ctx, &a, &k)?)])
}

fn cor_c1(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k) = (spec.p("a"), spec.p("k"));
    let q = q();
    let q2 = qp(2);
    let k2 = k.pow(2);
    let t1 = ctx
        .h()
        .num_linear(k.clone(), &q2)
        .den_once(k.clone())
        .num_len(q.clone(), &q, 1, -1)
        .num(&k2 / &a, &q)
        .num(k.clone(), &q)
        .num(&k / &a, &q)
        .num(&q * &a, &q2)
        .den(mq(&[&q, &a], &[&k]), &q)
        .den(&k * &q, &q)
        .den(&a * &q, &q)
        .den(q.clone(), &q)
        .den(mq(&[&k2, &q], &[&a]), &q2)
        .power(-mq(&[&q, &a], &[&k]));
    let ki = k.inv();
    let t2 = ctx
        .h()
        .num_linear(ki.clone(), &q2)
        .den_once(ki.clone())
        .num_len(q.clone(), &q, 1, -1)
        .num(&a / &k2, &q)
        .num(ki.clone(), &q)
        .num(&a / &k, &q)
        .num(&q / &a, &q2)
        .den(mq(&[&q, &k], &[&a]), &q)
        .den(&q / &k, &q)
        .den(&q / &a, &q)
        .den(q.clone(), &q)
        .den(mq(&[&a, &q], &[&k2]), &q2)
        .power(-mq(&[&q, &k], &[&a]));
    let s1 = ctx.hsum("S1", 1, t1, None)?;
    let s2 = ctx.hsum("S2", 1, t2, None)?;
    Ok(vec![eq("summation", &s1 - &s2, thm1_rhs(ctx, &a, &k)?)])
}

/// `(1 - k Q^(2n)) / (1 - k)` prefix shared by the older theorems.
fn wp_prefix(ctx: &Ctx, k: &Mono, base: &Mono) -> HyperTerm {
    ctx.h().num_linear(k.clone(), &base.pow(2)).den_once(k.clone())
}

fn wpeq8(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k, z) = (spec.p("a"), spec.p("k"), spec.p("z"));
    let q = q();
    let (ai, ki, zi) = (a.inv(), k.inv(), z.inv());
    let p1 = ctx.pair(spec, &a, &k, &q)?;
    let p2 = ctx.pair(spec, &ai, &ki, &q)?;
    let t1 = wp_prefix(ctx, &k, &q)
        .num(z.clone(), &q)
        .num_len(q.clone(), &q, 1, -1)
        .den(&q * &k, &q)
        .den(mq(&[&q, &k], &[&z]), &q)
        .power(mq(&[&q, &a], &[&z]));
    let t2 = wp_prefix(ctx, &ki, &q)
        .num(zi.clone(), &q)
        .num_len(q.clone(), &q, 1, -1)
        .den(&q / &k, &q)
        .den(mq(&[&q, &z], &[&k]), &q)
        .power(mq(&[&q, &z], &[&a]));
    let t3 = ctx
        .h()
        .num(z.clone(), &q)
        .num_len(q.clone(), &q, 1, -1)
        .den(&q * &a, &q)
        .den(mq(&[&q, &a], &[&z]), &q)
        .power(mq(&[&q, &a], &[&z]));
    let t4 = ctx
        .h()
        .num(zi.clone(), &q)
        .num_len(q.clone(), &q, 1, -1)
        .den(&q / &a, &q)
        .den(mq(&[&q, &z], &[&a]), &q)
        .power(mq(&[&q, &z], &[&a]));
    let s1 = ctx.hsum("S1", 1, t1, Some((&p1.beta, 1, 0)))?;
    let s2 = ctx.hsum("S2", 1, t2, Some((&p2.beta, 1, 0)))?;
    let s3 = ctx.hsum("S3", 1, t3, Some((&p1.alpha, 1, 0)))?;
    let s4 = ctx.hsum("S4", 1, t4, Some((&p2.alpha, 1, 0)))?;
    let lhs = &(&(&s1 - &s2) - &s3) + &s4;
    Ok(vec![eq("transformation", lhs, f_recip_rhs(ctx, &a, &k, &z)?)])
}

fn wpeq2n(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k, z) = (spec.p("a"), spec.p("k"), spec.p("z"));
    let q = q();
    let q2 = qp(2);
    let two = int(2);
    let pa = ctx.pair(spec, &a, &k, &q)?;
    let pm = ctx.pair(spec, &-&a, &-&k, &q)?;
    let p2 = ctx.pair(spec, &a.pow(2), &k.pow(2), &q2)?;
    // beta side
    let b1 = wp_prefix(ctx, &k, &q)
        .num(z.clone(), &q)
        .num_len(q.clone(), &q, 1, -1)
        .den(&q * &k, &q)
        .den(mq(&[&q, &k], &[&z]), &q)
        .power(mq(&[&q, &a], &[&z]));
    let b2 = wp_prefix(ctx, &-&k, &q)
        .num(z.clone(), &q)
        .num_len(q.clone(), &q, 1, -1)
        .den(-(&q * &k), &q)
        .den(-mq(&[&q, &k], &[&z]), &q)
        .power(-mq(&[&q, &a], &[&z]));
    let (k2, a2, z2) = (k.pow(2), a.pow(2), z.pow(2));
    let b3 = wp_prefix(ctx, &k2, &q2)
        .num(z2.clone(), &q2)
        .num_len(q2.clone(), &q2, 1, -1)
        .den(&q2 * &k2, &q2)
        .den(mq(&[&q2, &k2], &[&z2]), &q2)
        .power(mq(&[&q2, &a2], &[&z2]))
        .times(two.clone());
    let lhs = {
        let s1 = ctx.hsum("B1", 1, b1, Some((&pa.beta, 1, 0)))?;
        let s2 = ctx.hsum("B2", 1, b2, Some((&pm.beta, 1, 0)))?;
        let s3 = ctx.hsum("B3", 1, b3, Some((&p2.beta, 1, 0)))?;
        &(&s1 + &s2) - &s3
    };
    let a1 = ctx
        .h()
        .num(z.clone(), &q)
        .num_len(q.clone(), &q, 1, -1)
        .den(&q * &a, &q)
        .den(mq(&[&q, &a], &[&z]), &q)
        .power(mq(&[&q, &a], &[&z]));
    let am = ctx
        .h()
        .num(z.clone(), &q)
        .num_len(q.clone(), &q, 1, -1)
        .den(-(&q * &a), &q)
        .den(-mq(&[&q, &a], &[&z]), &q)
        .power(-mq(&[&q, &a], &[&z]));
    let a3 = ctx
        .h()
        .num(z2.clone(), &q2)
        .num_len(q2.clone(), &q2, 1, -1)
        .den(&q2 * &a2, &q2)
        .den(mq(&[&q2, &a2], &[&z2]), &q2)
        .power(mq(&[&q2, &a2], &[&z2]))
        .times(two);
    let rhs = {
        let s1 = ctx.hsum("A1", 1, a1, Some((&pa.alpha, 1, 0)))?;
        let s2 = ctx.hsum("A2", 1, am, Some((&pm.alpha, 1, 0)))?;
        let s3 = ctx.hsum("A3", 1, a3, Some((&p2.alpha, 1, 0)))?;
        &(&s1 + &s2) - &s3
    };
    Ok(vec![eq("transformation", lhs, rhs)])
}

fn chain(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k, b) = (spec.p("a"), spec.p("k"), spec.p("b"));
    let (q, q2, q3) = (q(), qp(2), qp(3));
    let pair = ctx.pair(spec, &a, &k, &q)?;
    let (k2, a2) = (k.pow(2), a.pow(2));
    let lhs_prod = ctx.pq(&[mq(&[&q, &a, &b], &[&k]), mq(&[&k, &q], &[&b])], &[&k * &q, mq(&[&q, &a], &[&k])], &q)?;
    let t = wp_prefix(ctx, &k, &q)
        .num(mq(&[&k2], &[&a, &b]), &q)
        .num(b.clone(), &q)
        .num(&q * &a, &q2)
        .den(mq(&[&q, &a, &b], &[&k]), &q)
        .den(mq(&[&k, &q], &[&b]), &q)
        .den(mq(&[&k2, &q], &[&a]), &q2)
        .power(-mq(&[&q, &a], &[&k]));
    let lhs = lhs_prod.mul_series(&ctx.hsum("LHS", 0, t, Some((&pair.beta, 1, 0)))?);
    let den = [q.clone(), mq(&[&k2, &q], &[&a]), &q2 * &a, mq(&[&q2, &a2], &[&k2])];
    let c1 = ctx.pq(
        &[mq(&[&q, &k2], &[&a, &b]), &b * &q, mq(&[&q2, &a2, &b], &[&k2]), mq(&[&q2, &a], &[&b])],
        &den,
        &q2,
    )?;
    let c2 = ctx.pq(
        &[mq(&[&k2], &[&a, &b]), b.clone(), mq(&[&q3, &a2, &b], &[&k2]), mq(&[&q3, &a], &[&b])],
        &den,
        &q2,
    )?;
    let x = mq(&[&q, &a], &[&k]);
    let e = ctx
        .h()
        .num(mq(&[&k2], &[&a, &b]), &q2)
        .num(b.clone(), &q2)
        .den(mq(&[&q2, &a2, &b], &[&k2]), &q2)
        .den(mq(&[&q2, &a], &[&b]), &q2)
        .power(x.pow(2));
    let o = ctx
        .h()
        .num(mq(&[&k2, &q], &[&a, &b]), &q2)
        .num(&b * &q, &q2)
        .den(mq(&[&q3, &a2, &b], &[&k2]), &q2)
        .den(mq(&[&q3, &a], &[&b]), &q2)
        .power(x.pow(2))
        .times_mono(-&x);
    let se = ctx.hsum("even", 0, e, Some((&pair.alpha, 2, 0)))?;
    let so = ctx.hsum("odd", 0, o, Some((&pair.alpha, 2, 1)))?;
    let rhs = &c1.mul_series(&se) + &c2.mul_series(&so);
    Ok(vec![eq("chain", lhs, rhs)])
}

fn f3rep(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k, z) = (spec.p("a"), spec.p("k"), spec.p("z"));
    let q = q();
    let r1 = f_first(ctx, "R1", &a, &k, &z, &q)?;
    let r2 = f_second(ctx, "R2", &a, &k, &z, &q)?;
    let r3 = f_lambert(ctx, &a, &k, &z, &q)?;
    Ok(vec![eq("R1=R2", r1.clone(), r2.clone()), eq("R1=R3", r1, r3.clone()), eq("R2=R3", r2, r3)])
}

fn frecip(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k, z) = (spec.p("a"), spec.p("k"), spec.p("z"));
    let q = q();
    let f1 = f_first(ctx, "f(a,k,z)", &a, &k, &z, &q)?;
    let f2 = f_first(ctx, "f(1/a,1/k,1/z)", &a.inv(), &k.inv(), &z.inv(), &q)?;
    Ok(vec![eq("reciprocity", &f1 - &f2, f_recip_rhs(ctx, &a, &k, &z)?)])
}

fn fspec_a(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k) = (spec.p("a"), spec.p("k"));
    let q = q();
    let f = f_first(ctx, "f", &(&a / &k), &k, &-Mono::one(), &q)?;
    let two = int(2);
    let l1 = ctx.lam(LambertSpec::new(k.clone(), q.clone(), k.pow(2), qp(2)))?;
    let l2 = ctx.lam(LambertSpec::new(&a / &k, q.clone(), (&a / &k).pow(2), qp(2)))?;
    Ok(vec![eq("lambert", f, (&l1 - &l2).scale(&two))])
}

fn frecip_a(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k) = (spec.p("a"), spec.p("k"));
    let (q, q2) = (q(), qp(2));
    let m1 = -Mono::one();
    let f1 = f_first(ctx, "f(a/k,k,-1)", &(&a / &k), &k, &m1, &q)?;
    let f2 = f_first(ctx, "f(k/a,1/k,-1)", &(&k / &a), &k.inv(), &m1, &q)?;
    let ak = &a / &k;
    let k2 = k.pow(2);
    let num = (&ctx.s(&ak) - &ctx.s(&k)).mul_series(&ctx.om(&-&a));
    let den = ctx.om(&ak.pow(2)).mul_series(&ctx.om(&k2));
    let r = dv(&num, &den)?.scale(&int(2));
    let p = ctx
        .pq(&[&k2 / &a, mq(&[&q, &a], &[&k2]), -&a, -(&q / &a)], &[], &q)?
        .mul_series(&ctx.pq(&[q2.clone(), q2.clone()], &[k2.clone(), &q2 / &k2, ak.pow(2), mq(&[&q2, &k2], &[&a.pow(2)])], &q2)?);
    let rhs = &r - &ms(&p, &ak).scale(&int(2));
    Ok(vec![eq("reciprocity", &f1 - &f2, rhs)])
}

fn fspec_b(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k) = (spec.p("a"), spec.p("k"));
    let (q, q2) = (q(), qp(2));
    let k2 = k.pow(2);
    let f = f_first(ctx, "f", &a, &k2, &(&a * &q), &q2)?;
    let l = &(&ctx.lam1(k2.clone(), &q2)? + &ctx.lam1(q.inv(), &q2)?) - &ctx.lam1(a.clone(), &q2)?;
    let l = &l - &ctx.lam1(mq(&[&k2], &[&a, &q]), &q2)?;
    Ok(vec![eq("lambert", f, l)])
}

fn frecip_b(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k) = (spec.p("a"), spec.p("k"));
    let (q, q2, q3) = (q(), qp(2), qp(3));
    let k2 = k.pow(2);
    let aq = &a * &q;
    let f1 = f_first(ctx, "f(a,k^2,aq)", &a, &k2, &aq, &q2)?;
    let f2 = f_first(ctx, "f(1/a,1/k^2,1/aq)", &a.inv(), &k2.inv(), &aq.inv(), &q2)?;
    let num = (&ctx.s(&a) - &ctx.s(&k2)).mul_series(&ctx.om(&aq.inv())).mul_series(&ctx.om(&(&k2 / &q)));
    let den = ctx
        .om(&a)
        .mul_series(&ctx.om(&k2))
        .mul_series(&ctx.om(&q.inv()))
        .mul_series(&ctx.om(&(&k2 / &aq)));
    let r = dv(&num, &den)?;
    let p = ctx.pq(
        &[aq.clone(), &q / &a, &k2 / &a, mq(&[&q2, &a], &[&k2]), &k2 / &q, &q3 / &k2, q2.clone(), q2.clone()],
        &[&aq / &k2, mq(&[&k2, &q], &[&a]), q.clone(), q.clone(), a.clone(), &q2 / &a, k2.clone(), &q2 / &k2],
        &q2,
    )?;
    Ok(vec![eq("reciprocity", &f1 - &f2, &r + &ms(&p, &(&aq / &k2)))])
}

fn gprime(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (a, k) = (spec.p("a"), spec.p("k"));
    let (q, q2) = (q(), qp(2));
    let k2 = k.pow(2);
    let ak = &a / &k;
    let tail = {
        let t = &ctx.lam1(q.inv(), &q2)? - &ctx.lam1(a.clone(), &q2)?;
        &t - &ctx.lam1(mq(&[&k2], &[&a, &q]), &q2)?
    };
    let l1 = &(&(&ctx.lam1(k.clone(), &q)? - &ctx.lam1(ak.clone(), &q)?) + &ctx.lam1(ak.pow(2), &q2)?) + &tail;
    let l2 = {
        let x = ctx.lam(LambertSpec::new(k.clone(), q.clone(), k2.clone(), q2.clone()))?;
        let y = ctx.lam(LambertSpec::new(ak.clone(), q.clone(), ak.pow(2), q2.clone()))?;
        &(&(&x - &y) + &ctx.lam1(k2.clone(), &q2)?) + &tail
    };
    let half = CycNumber::from_ratio(1, 2);
    let fa = f_first(ctx, "f(a/k,k,-1)", &ak, &k, &-Mono::one(), &q)?.scale(&half);
    let fb = f_first(ctx, "f(a,k^2,aq)", &a, &k2, &(&a * &q), &q2)?;
    Ok(vec![eq("split", l1, l2.clone()), eq("f-form", l2, &fa + &fb)])
}

fn cor_c1_unit(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    thm1(spec, ctx)
}

/// `(k^2 - q)(q^2 - k) / ((1 - k)(1 - q)(k^2 - q^2))`.
fn lamb1_rational(ctx: &Ctx, k: &Mono) -> Result<LaurentSeries> {
    let q = q();
    let k2 = k.pow(2);
    let num = (&ctx.s(&k2) - &ctx.s(&q)).mul_series(&(&ctx.s(&qp(2)) - &ctx.s(k)));
    let den = ctx.om(k).mul_series(&ctx.om(&q)).mul_series(&(&ctx.s(&k2) - &ctx.s(&qp(2))));
    dv(&num, &den)
}

fn lamb1(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let k = spec.p("k");
    let (q, q2) = (q(), qp(2));
    let k2 = k.pow(2);
    let pair = ctx.pair(spec, &q, &k, &q)?;
    let f = big_f(ctx, "F(q,k)", &q, &k, &pair)?;
    let first = ctx.lam(LambertSpec::new(k.clone(), q.clone(), k2.clone(), q2.clone()))?;
    let tail = &dv(&ctx.s(&q), &ctx.om(&q))? - &dv(&ctx.s(&k2), &ctx.om(&k2))?;
    let la = {
        let s = ctx.lam(LambertSpec::new(&q / &k, q.clone(), &q2 / &k2, q2.clone()))?;
        &(&first - &s) + &tail
    };
    let shifted = ctx.lam(LambertSpec::new((&q * &k).inv(), q.clone(), (&q2 * &k2).inv(), q2.clone()))?;
    let lb = {
        let ki = k.inv();
        let c1 = dv(&ctx.s(&ki), &ctx.om(&ki.pow(2)))?;
        let c2 = dv(&ctx.s(&(&q / &k)), &ctx.om(&(&q2 / &k2)))?;
        &(&(&(&first - &shifted) + &c1) + &c2) + &tail
    };
    let rat = lamb1_rational(ctx, &k)?;
    let lc = &(&first - &shifted) + &rat;
    let prod = &k_m(ctx, &k)? + &rat;
    Ok(vec![eq("F=La", f, la.clone()), eq("La=Lb", la, lb.clone()), eq("Lb=Lc", lb, lc.clone()), eq("Lc=product", lc, prod)])
}

/// Left side `R(q)` of the corollary at `a = q`, and the bracketed series
/// `S(q)` on its right side.
fn cor_rs_parts(ctx: &mut Ctx, k: &Mono, pair: &PairEval) -> Result<(LaurentSeries, LaurentSeries)> {
    let (q, q2, q3, q4) = (q(), qp(2), qp(3), qp(4));
    let k2 = k.pow(2);
    let t1 = wp_prefix(ctx, k, &q)
        .num_len(q.clone(), &q, 1, -1)
        .num(&k2 / &q, &q)
        .num(q2.clone(), &q2)
        .den(&q2 / k, &q)
        .den(k * &q, &q)
        .den(k2.clone(), &q2)
        .power(-(&q2 / k));
    let t2 = ctx
        .h()
        .num_len(q2.clone(), &q2, 1, -1)
        .num(&k2 / &q, &q2)
        .den(&q4 / &k2, &q2)
        .den(q3.clone(), &q2)
        .power(&q4 / &k2);
    let s1 = ctx.hsum("R.S1", 1, t1, Some((&pair.beta, 1, 0)))?;
    let s2 = ctx.hsum("R.S2", 1, t2, Some((&pair.alpha, 2, 0)))?;
    let r = &(&s1 - &s2) + &lamb1_rational_rs(ctx, k)?;
    let t3 = ctx
        .h()
        .num_len(&k2 / &q2, &q2, 1, 1)
        .num_len(q.inv(), &q2, 1, 1)
        .den_len(&q3 / &k2, &q2, 1, 1)
        .den_len(q2.clone(), &q2, 1, 1)
        .power(&q4 / &k2)
        .times_mono(&q4 / &k2);
    let s3 = ctx.hsum("S", 0, t3, Some((&pair.alpha, 2, 1)))?;
    Ok((r, &ctx.c(CycNumber::one()) + &s3))
}

/// `(k^2 - q)(k - q^2) / ((1 - k)(1 - q)(k^2 - q^2))`.
fn lamb1_rational_rs(ctx: &Ctx, k: &Mono) -> Result<LaurentSeries> {
    Ok(-&lamb1_rational(ctx, k)?)
}

fn cor_rs(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let k = spec.p("k");
    let pair = ctx.pair(spec, &q(), &k, &q())?;
    let (r, s) = cor_rs_parts(ctx, &k, &pair)?;
    Ok(vec![eq("corollary", r, k_m(ctx, &k)?.mul_series(&s))])
}

fn ratio_inv(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let k = spec.p("k");
    let ki = k.inv();
    let ratio = |ctx: &mut Ctx, k: &Mono| -> Result<LaurentSeries> {
        let pair = ctx.pair(spec, &q(), k, &q())?;
        let (r, s) = cor_rs_parts(ctx, k, &pair)?;
        let num = ctx.om(&k.pow(2)).mul_series(&r);
        dv(&num, &ms(&s, k))
    };
    let at_k = ratio(ctx, &k)?;
    let at_ki = ratio(ctx, &ki)?;
    Ok(vec![eq("k->1/k", at_k, at_ki)])
}

fn cor_rs2_mz(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    cor_rs2_mz_with(spec, ctx, false, false)
}

/// `printed_first` takes `(k^2 q; q)_n` in the first sum, `printed_rhs`
/// drops the factor `k` from the bracketed sum; both as typeset.
fn cor_rs2_mz_with(spec: &Specialization, ctx: &mut Ctx, printed_first: bool, printed_rhs: bool) -> Result<Vec<Equality>> {
    // k = c / q places the identity in its convergent regime |k| > 1
    let c = spec.p("c");
    let (q, q2) = (q(), qp(2));
    let k = &c / &q;
    let k2 = k.pow(2);
    let t1 = ctx
        .h()
        .num_linear(k.clone(), &q2)
        .num(&k2 * &q, if printed_first { &q } else { &q2 })
        .den_linear(Mono::one(), &q)
        .den_linear(k.clone(), &q)
        .den(q.clone(), &q2)
        .power(-k.inv());
    let t2 = ctx
        .h()
        .num(&k2 * &q, &q2)
        .num((&k2 * &q).inv(), &q2)
        .den_linear(Mono::one(), &q2)
        .den(q.clone(), &q2)
        .den(q.clone(), &q2)
        .power(q2.clone());
    let lhs = &ctx.hsum("S1", 1, t1, None)? - &ctx.hsum("S2", 1, t2, None)?;
    let t3 = ctx
        .h()
        .num_len((&k2 * &q).inv(), &q, 0, 1)
        .num(&k2 * &q2, &q2)
        .num(k2.inv(), &q2)
        .den_linear(q.clone(), &q2)
        .den(q2.clone(), &q2)
        .den(q2.clone(), &q2)
        .power(q2.clone())
        .times_mono(if printed_rhs { q.clone() } else { &q * &k });
    let s = &ctx.c(CycNumber::one()) + &ctx.hsum("S3", 0, t3, None)?;
    Ok(vec![eq("corollary", lhs, k_m(ctx, &k)?.mul_series(&s))])
}

fn cor_rs2_pr4(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    cor_rs2_pr4_with(spec, ctx, false)
}

fn cor_rs2_pr4_with(spec: &Specialization, ctx: &mut Ctx, printed: bool) -> Result<Vec<Equality>> {
    let k = spec.p("k");
    let (q, q2) = (q(), qp(2));
    let k2 = k.pow(2);
    let t1 = if printed {
        ctx.h()
            .num_linear(k.clone(), &q2)
            .num_len(q.clone(), &q, 1, -1)
            .num(&k2 * &q, &q)
            .num(k.clone(), &q)
            .num((&k * &q).inv(), &q)
            .den(q.clone(), &q2)
            .den(&k2 * &q2, &q2)
            .den(k.inv(), &q2)
            .den(&k * &q, &q2)
            .power(q.clone())
    } else {
        ctx
        .h()
        .num_linear(k.clone(), &q2)
        .num_len(q.clone(), &q, 1, -1)
        .num(&k2 * &q, &q)
        .num((&k * &q).inv(), &q)
        .den_linear(k.clone(), &q)
        .den(k.inv(), &q)
        .den(&k2 * &q2, &q)
        .den(q.clone(), &q)
        .power(q.clone())
    };
    let t2 = ctx
        .h()
        .num_linear(q.inv(), &qp(4))
        .num_len(q2.clone(), &q2, 1, -1)
        .num(&k2 * &q, &q2)
        .num((&k2 * &q2).inv(), &q2)
        .num(q.inv(), &q2)
        .den_once(q.inv())
        .den(&k2 * &qp(3), &q2)
        .den(k2.inv(), &q2)
        .den(q.clone(), &q2)
        .den(q2.clone(), &q2)
        .power(q2.clone());
    let lhs = &ctx.hsum("S1", 1, t1, None)? - &ctx.hsum("S2", 1, t2, None)?;
    Ok(vec![eq("corollary", lhs, k_m(ctx, &k)?)])
}

/// Right side of the Lambert form of `G`.
fn g_lambert_rhs(ctx: &Ctx, k: &Mono, base: &Mono) -> Result<LaurentSeries> {
    let q = base;
    let q2 = q.pow(2);
    let one = Mono::one();
    let l1 = ctx.lam(weighted(one.clone(), q.clone(), one.clone(), q2.clone(), |n| n))?;
    let l2 = ctx.lam(weighted(one.clone(), &k.pow(2) * &q2, one.clone(), q2.clone(), |n| n))?;
    let l3 = ctx.lam(weighted(one.clone(), k * q, one.clone(), q.clone(), |n| n))?;
    Ok(&(&l1 + &l2) - &l3)
}

fn g_lambert(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let k = spec.p("k");
    let pair = ctx.pair(spec, &k.pow(2), &k, &q())?;
    let g = big_g(ctx, "G", &k, &q(), &pair)?;
    Ok(vec![eq("lambert", g, g_lambert_rhs(ctx, &k, &q())?)])
}

fn fg_link(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let k = spec.p("k");
    let a = k.pow(2);
    let pair = ctx.pair(spec, &a, &k, &q())?;
    let f = big_f(ctx, "F(k^2,k)", &a, &k, &pair)?;
    Ok(vec![eq("F(k^2,k,q)=0", f, LaurentSeries::zero(ctx.prec))])
}

fn sumid(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let x = spec.p("x");
    let q = q();
    let lhs = sum_terms_from(
        1,
        |n| {
            let m = x.step(&q, n);
            ctx.s(&m).div_binomial(m.coeff(), m.exp())?.div_binomial(m.coeff(), m.exp())
        },
        &ValuationBound::linear(1, 0),
        ctx.prec,
    )?;
    let rhs = ctx.lam(
        LambertSpec::new(Mono::one(), &x * &q, Mono::one(), q.clone()).weighted(int),
    )?;
    ctx.count("squared", lhs.terms);
    Ok(vec![eq("identity", lhs.series, rhs)])
}

/// `q psi(q^2)^4`.
fn q_psi4_q2(ctx: &Ctx) -> Result<LaurentSeries> {
    Ok(psi_at(ctx, 1, 2)?.pow(4).shift(1))
}

fn odd_lambert(ctx: &Ctx) -> Result<LaurentSeries> {
    // sum_{n>=1} (2n-1) q^(2n-1) / (1 - q^(4n-2))
    ctx.lam(weighted(q().inv(), qp(2), qp(-2), qp(4), |n| 2 * n - 1))
}

fn psi4(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let lhs = q_psi4_q2(ctx)?;
    let lam = odd_lambert(ctx)?;
    let (k, base) = (q().inv(), qp(2));
    let pair = ctx.pair(spec, &k.pow(2), &k, &base)?;
    let g = big_g(ctx, "G(1/q,q^2)", &k, &base, &pair)?;
    Ok(vec![eq("product=lambert", lhs.clone(), lam), eq("product=-G", lhs, -&g)])
}

fn wac(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (q, q2, q4) = (q(), qp(2), qp(4));
    let t = ctx
        .h()
        .num_linear(qp(3), &q4)
        .num(q2.clone(), &q2)
        .num(q4.clone(), &q4)
        .den_linear(q.clone(), &q2)
        .den_len(q2.clone(), &q2, 1, 1)
        .den_len(q2.clone(), &q4, 1, 1)
        .power(-&q);
    let lhs = ctx.hsum("sum", 0, t, None)?;
    Ok(vec![eq("psi^4(q^2)", lhs, psi_at(ctx, 1, 2)?.pow(4))])
}

fn min1(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (q, q2) = (q(), qp(2));
    let nq = -&q;
    let one = Mono::one();
    let half = CycNumber::from_ratio(1, 2);
    let pq_ = ctx.pair(spec, &one, &-&one, &q)?;
    let pn = ctx.pair(spec, &one, &-&one, &nq)?;
    let t1 = ctx
        .h()
        .num_linear(-&one, &q2)
        .times(half.clone())
        .num_len(q.clone(), &q, 1, -1)
        .num_len(q.clone(), &q, 1, -1)
        .den(nq.clone(), &q)
        .den(nq.clone(), &q)
        .power(q.clone());
    let t2 = ctx
        .h()
        .num_linear(-&one, &q2)
        .times(half)
        .num_len(nq.clone(), &nq, 1, -1)
        .num_len(nq.clone(), &nq, 1, -1)
        .den(q.clone(), &nq)
        .den(q.clone(), &nq)
        .power(nq.clone());
    let t3 = ctx.h().den_linear(one.clone(), &q).den_linear(one.clone(), &q).power(q.clone());
    let t4 = ctx.h().den_linear(one.clone(), &nq).den_linear(one.clone(), &nq).power(nq.clone());
    let s1 = ctx.hsum("S1", 1, t1, Some((&pq_.beta, 1, 0)))?;
    let s2 = ctx.hsum("S2", 1, t2, Some((&pn.beta, 1, 0)))?;
    let s3 = ctx.hsum("S3", 1, t3, Some((&pq_.alpha, 1, 0)))?;
    let s4 = ctx.hsum("S4", 1, t4, Some((&pn.alpha, 1, 0)))?;
    let lhs = &(&(&s1 - &s2) - &s3) + &s4;
    Ok(vec![eq("4q psi^4(q^2)", lhs, q_psi4_q2(ctx)?.scale(&int(4)))])
}

fn min2(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let (q, q2) = (q(), qp(2));
    let nq = -&q;
    let one = Mono::one();
    let t1 = ctx
        .h()
        .num_linear(-&one, &q2)
        .den_linear(one.clone(), &q2)
        .num_len(q.clone(), &q, 1, -1)
        .den(nq.clone(), &q)
        .power(q.clone())
        .quadratic(q.clone());
    let t2 = ctx
        .h()
        .num_linear(-&one, &q2)
        .den_linear(one.clone(), &q2)
        .num_len(nq.clone(), &nq, 1, -1)
        .den(q.clone(), &nq)
        .power(nq.clone())
        .quadratic(nq.clone());
    let s1 = ctx.hsum("S1", 1, t1, None)?;
    let s2 = ctx.hsum("S2", 1, t2, None)?;
    let order = ctx.prec;
    let frac = |num: LaurentSeries, d: i64| -> Result<LaurentSeries> {
        num.div_binomial(&CycNumber::one(), d)?.div_binomial(&CycNumber::one(), d)
    };
    let third = sum_terms_from(
        1,
        |n| {
            let lead = 8 * n * n - 4 * n;
            // inner orders are raised so the leading factor leaves `order` intact
            let o = order - lead + 8 * n;
            let s = |terms: &[(i64, i64)]| LaurentSeries::from_terms(terms.iter().map(|&(e, c)| (e, int(c))), o);
            let a = frac(s(&[(14 * n - 4, 1), (6 * n - 2, 3)]), 8 * n - 2)?;
            let b = frac(s(&[(2 * n - 2, 1), (-2 * n, 1)]), 4 * n - 2)?;
            let c = frac(s(&[(2 * n - 4, 3), (2 - 6 * n, 1)]), 8 * n - 6)?;
            Ok((&(&a - &b) + &c).shift(lead))
        },
        &ValuationBound::new(|n| 8 * n * n - 10 * n + 2),
        order,
    )?;
    ctx.count("S3", third.terms);
    let lhs = &(&s1 - &s2) + &third.series.shift(1).scale(&int(2));
    Ok(vec![eq("4q psi^4(q^2)", lhs, q_psi4_q2(ctx)?.scale(&int(4)))])
}

fn g_recip(spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let k = spec.p("k");
    let ki = k.inv();
    let (q, q2) = (q(), qp(2));
    let p1 = ctx.pair(spec, &k.pow(2), &k, &q)?;
    let p2 = ctx.pair(spec, &ki.pow(2), &ki, &q)?;
    let g = &big_g(ctx, "G(k)", &k, &q, &p1)? + &big_g(ctx, "G(1/k)", &ki, &q, &p2)?;
    let one = Mono::one();
    let k2 = k.pow(2);
    let lam = {
        let l1 = ctx.lam(weighted(one.clone(), q.clone(), one.clone(), q2.clone(), |n| 2 * n))?;
        let l2 = ctx.lam(weighted(one.clone(), &k2 * &q2, one.clone(), q2.clone(), |n| n))?;
        let l3 = ctx.lam(weighted(one.clone(), &q2 / &k2, one.clone(), q2.clone(), |n| n))?;
        let l4 = ctx.lam(weighted(one.clone(), &k * &q, one.clone(), q.clone(), |n| n))?;
        let l5 = ctx.lam(weighted(one.clone(), &q / &k, one.clone(), q.clone(), |n| n))?;
        &(&(&(&l1 + &l2) + &l3) - &l4) - &l5
    };
    let prod = {
        let r = dv(
            &ms(&ctx.om(&k.pow(3)), &k),
            &ctx.om(&k).mul_series(&ctx.om(&k2)).mul_series(&ctx.om(&k2)),
        )?;
        let p1 = ctx
            .pq(&[q.clone(), q.clone(), -&k2, -(&q / &k2)], &[], &q)?
            .mul_series(&ctx.pq(&[q2.clone(), q2.clone()], &[k2.clone(), k2.clone(), &q2 / &k2, &q2 / &k2], &q2)?);
        let p2 = ctx.pq(
            &[&k2 * &q, &k2 * &q, &q / &k2, &q / &k2, q2.clone(), q2.clone(), q2.clone(), q2.clone()],
            &[k2.clone(), k2.clone(), &q2 / &k2, &q2 / &k2, q.clone(), q.clone(), q.clone(), q.clone()],
            &q2,
        )?;
        &(&r - &ms(&p1, &k)) - &ms(&p2, &k2)
    };
    Ok(vec![eq("G=lambert", g, lam.clone()), eq("lambert=product", lam, prod)])
}

/// `sum_{w,x,y,z} q^(w^2+x^2+y^2+z^2)` by enumerating quadruples.
fn four_squares(order: i64) -> LaurentSeries {
    let r = (order as f64).sqrt() as i64 + 1;
    let mut counts = vec![0i64; (order + 1).max(0) as usize];
    for w in -r..=r {
        for x in -r..=r {
            for y in -r..=r {
                for z in -r..=r {
                    let e = w * w + x * x + y * y + z * z;
                    if e <= order {
                        counts[e as usize] += 1;
                    }
                }
            }
        }
    }
    LaurentSeries::from_coeffs(0, counts.into_iter().map(int).collect(), order)
}

fn phi4(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let q = q();
    let i = CycNumber::i();
    let one = ctx.c(CycNumber::one());
    let jacobi = &one + &ctx.lam(weighted(Mono::one(), q.clone(), -Mono::one(), -&q, |n| 8 * n))?;
    let phi = theta_phi(ctx.prec);
    let phi4 = phi.pow(4);
    let side = |ctx: &mut Ctx, c: CycNumber, label: &str| -> Result<LaurentSeries> {
        let cm = Mono::constant(c.clone())?;
        let t = ctx
            .h()
            .num_linear(cm.clone(), &qp(2))
            .den_once(cm.clone())
            .num_len(q.clone(), &q, 1, -1)
            .num_len(q.clone(), &q, 1, -1)
            .num_len(-Mono::one(), &q, 2, 0)
            .den(&cm * &q, &q)
            .den(&cm * &q, &q)
            .den_len(q.clone(), &q, 2, 0)
            .power(-(&cm * &q))
            .times(int(4));
        ctx.hsum(label, 1, t, None)
    };
    let s1 = side(ctx, i.clone(), "S(i)")?;
    let s2 = side(ctx, -&i, "S(-i)")?;
    let pairs_form = &(&one + &s1) + &s2;
    Ok(vec![
        eq("jacobi", jacobi, phi4.clone()),
        eq("pair-series", phi4.clone(), pairs_form),
        eq("four-squares", phi4, four_squares(ctx.order)),
    ])
}

fn chi3(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    // built in t with q = t^2
    let q = qp(2);
    let w = CycNumber::omega();
    let w2 = &w * &w;
    let lhs = ctx.lam(weighted(Mono::one(), q.clone(), Mono::one(), qp(4), |n| 9 * chi0(n) * n))?;
    let theta = {
        let a = dv(&psi_at(ctx, 1, 2)?.pow(6), &psi_at(ctx, 1, 6)?.pow(2))?;
        let num = psi_at(ctx, 1, 1)?.pow(3).mul_series(&psi_at(ctx, -1, 1)?.pow(3));
        let den = psi_at(ctx, 1, 3)?.mul_series(&psi_at(ctx, -1, 3)?);
        &a - &dv(&num, &den)?
    };
    let side = |ctx: &mut Ctx, c: &CycNumber, label: &str| -> Result<LaurentSeries> {
        let cm = Mono::constant(c.clone())?;
        let cc = Mono::constant(c * c)?;
        let pref = &(&CycNumber::one() - &(c * c)) * &int(3);
        let t = ctx
            .h()
            .num_linear(cm.clone(), &q.pow(2))
            .num_len(q.clone(), &q, 1, -1)
            .num(&cc * &q, &q.pow(2))
            .den_linear(Mono::one(), &q.pow(3))
            .den(&cm * &q, &q)
            .den(q.clone(), &q.pow(2))
            .power(-(&cm * &q))
            .times(pref);
        ctx.hsum(label, 1, t, None)
    };
    let rhs = &side(ctx, &w, "S(omega)")? + &side(ctx, &w2, "S(omega^2)")?;
    Ok(vec![eq("lambert=theta", lhs, theta.clone()), eq("theta=pair-series", theta, rhs)])
}

/// `a(q)` by lattice enumeration at the working precision.
fn aq(ctx: &Ctx) -> LaurentSeries {
    a_of_q(ctx.prec)
}

fn aq_lambert(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let q3 = qp(3);
    let six = int(6);
    let l1 = ctx.lam1(qp(-2), &q3)?.scale(&six);
    let l2 = ctx.lam1(qp(-1), &q3)?.scale(&six);
    let rhs = &(&ctx.c(CycNumber::one()) + &l1) - &l2;
    Ok(vec![eq("lambert", aq(ctx), rhs)])
}

fn aq_diff(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let q6 = qp(6);
    let six = int(6);
    let lhs = &aq(ctx) - &a_of_q(ctx.prec / 2 + 1).subst_monomial(&CycNumber::one(), 2)?;
    let prod = ms(&ctx.pq(&[q(), qp(5), q6.clone(), q6.clone()], &[qp(2), qp(4), qp(3), qp(3)], &q6)?, &q()).scale(&six);
    let theta = dv(&psi_at(ctx, 1, 3)?.pow(3), &psi_at(ctx, 1, 1)?)?.shift(1).scale(&six);
    let m = ms(&m_product_general(&qp(2), &qp(3), ctx.prec)?, &q()).scale(&six);
    Ok(vec![eq("difference=product", lhs, prod.clone()), eq("product=theta", prod.clone(), theta), eq("product=M(q,q^3)", prod, m)])
}

fn psi26(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let lhs = psi_at(ctx, 1, 2)?.mul_series(&psi_at(ctx, 1, 6)?).shift(1);
    let l1 = ctx.lam(LambertSpec::new(qp(-5), qp(6), qp(-10), qp(12)))?;
    let l2 = ctx.lam(LambertSpec::new(qp(-1), qp(6), qp(-2), qp(12)))?;
    let m = ms(&m_product_general(&qp(2), &qp(6), ctx.prec)?, &q());
    Ok(vec![eq("lambert", lhs.clone(), &l1 - &l2), eq("M(q,q^6)", lhs, m)])
}

fn phi2_lambert(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let phi = theta_phi(ctx.prec);
    let phi2 = phi.mul_series(&phi);
    let four = int(4);
    let l1 = ctx.lam(LambertSpec::new(qp(-3), qp(4), qp(-3), qp(4)))?.scale(&four);
    let l2 = ctx.lam(LambertSpec::new(qp(-1), qp(4), qp(-1), qp(4)))?.scale(&four);
    let lam = &(&ctx.c(CycNumber::one()) + &l1) - &l2;
    let m = crate::qkit::m_product(&CycNumber::i(), ctx.prec)?.scale(&int(2));
    Ok(vec![eq("lambert", phi2.clone(), lam), eq("2M(i,q)", phi2, m)])
}

fn a2q(_spec: &Specialization, ctx: &mut Ctx) -> Result<Vec<Equality>> {
    let a = aq(ctx);
    let lam = ctx.lam(weighted(Mono::one(), q(), Mono::one(), q(), |n| 12 * chi0(n) * n))?;
    Ok(vec![eq("lambert", a.mul_series(&a), &ctx.c(CycNumber::one()) + &lam)])
}

// ---------------------------------------------------------------------------
// the table

use PairKind::{Mz01, Pr4, Singh, SinghLimit, Trivial, Unit};

const GENERAL: &[PairKind] = &[Trivial, Unit, Pr4, Mz01, Singh];
const AT_K2: &[PairKind] = &[Trivial, Unit, Pr4, Singh];

fn pts_ak(s: &Specialization) -> Vec<PairParams> {
    vec![PairParams::new(s.p("a"), s.p("k"))]
}

fn pts_ak_recip(s: &Specialization) -> Vec<PairParams> {
    let (a, k) = (s.p("a"), s.p("k"));
    vec![PairParams::new(a.inv(), k.inv()), PairParams::new(a, k)]
}

fn pts_2n(s: &Specialization) -> Vec<PairParams> {
    let (a, k) = (s.p("a"), s.p("k"));
    vec![
        PairParams::new(a.clone(), k.clone()),
        PairParams::new(-&a, -&k),
        PairParams::new(a.pow(2), k.pow(2)).with_base(qp(2)),
    ]
}

fn pts_qk(s: &Specialization) -> Vec<PairParams> {
    vec![PairParams::new(q(), s.p("k"))]
}

fn pts_qk_recip(s: &Specialization) -> Vec<PairParams> {
    let k = s.p("k");
    vec![PairParams::new(q(), k.clone()), PairParams::new(q(), k.inv())]
}

fn pts_k2(s: &Specialization) -> Vec<PairParams> {
    let k = s.p("k");
    vec![PairParams::new(k.pow(2), k)]
}

fn pts_k2_recip(s: &Specialization) -> Vec<PairParams> {
    let k = s.p("k");
    let ki = k.inv();
    vec![PairParams::new(k.pow(2), k), PairParams::new(ki.pow(2), ki)]
}

fn pts_psi4(_: &Specialization) -> Vec<PairParams> {
    let k = q().inv();
    vec![PairParams::new(k.pow(2), k).with_base(qp(2))]
}

fn pts_min1(_: &Specialization) -> Vec<PairParams> {
    let (one, m1) = (Mono::one(), -Mono::one());
    vec![PairParams::new(one.clone(), m1.clone()), PairParams::new(one, m1).with_base(-q())]
}

/// Every pair at `(a, k)` except Singh's limit, which has its own point.
fn pts_wp_def(s: &Specialization) -> Vec<(PairKind, PairParams)> {
    PairKind::ALL
        .into_iter()
        .map(|kind| match kind {
            SinghLimit => (kind, PairParams::new(Mono::one(), -Mono::one())),
            Singh => (kind, PairParams::new(s.p("a"), s.p("k")).with_rho(s.p("rho1"), s.p("rho2"))),
            _ => (kind, PairParams::new(s.p("a"), s.p("k"))),
        })
        .collect()
}

fn pred(name: &'static str, holds: fn(&Specialization) -> bool) -> Predicate {
    Predicate { name, holds }
}

fn k_ne_one() -> Predicate {
    pred("k-equals-1", |s| !s.params.get("k").is_some_and(|k| k.is_one()))
}

#[allow(clippy::too_many_arguments)]
fn case(
    id: &'static str,
    equation: &'static str,
    free_params: &'static [&'static str],
    pair_slots: &'static [PairKind],
    pair_points: Option<PairPoints>,
    predicates: Vec<Predicate>,
    build: Builder,
) -> IdentityCase {
    IdentityCase { id, equation, free_params, pair_slots, subst_exp: 1, predicates, pair_points, build }
}

/// All identity cases.
pub fn bank() -> Vec<IdentityCase> {
    let ak: &'static [&'static str] = &["a", "k"];
    let akz: &'static [&'static str] = &["a", "k", "z"];
    let k: &'static [&'static str] = &["k"];
    let none: &'static [&'static str] = &[];
    let mut v = vec![
        case("WP-DEF", "WPpair", &["a", "k", "rho1", "rho2"], &[], Some(PairPoints::Fixed(pts_wp_def)), vec![], wp_def),
        case("F-EQ-LAMBERT", "Ffeq", ak, GENERAL, Some(PairPoints::Slot(pts_ak)), vec![], f_eq_lambert),
        case("THM1", "6psi6eq1aa", ak, GENERAL, Some(PairPoints::Slot(pts_ak_recip)), vec![], thm1),
        case("WPEQ8", "wpeq8", akz, GENERAL, Some(PairPoints::Slot(pts_ak_recip)), vec![], wpeq8),
        case("WPEQ2N", "wpeq2n", akz, GENERAL, Some(PairPoints::Slot(pts_2n)), vec![], wpeq2n),
        case("CHAIN", "simsuma3", &["a", "k", "b"], GENERAL, Some(PairPoints::Slot(pts_ak)), vec![], chain),
        case("F3REP", "fakzqeq", akz, &[], None, vec![], f3rep),
        case("FRECIP", "wpeq7", akz, &[], None, vec![], frecip),
        case("FRECIP-A", "wpeq7a", ak, &[], None, vec![], frecip_a),
        case("FSPEC-A", "fakzeqa", ak, &[], None, vec![], fspec_a),
        case("FRECIP-B", "wpeq7b", ak, &[], None, vec![], frecip_b),
        case("FSPEC-B", "fakzeqb", ak, &[], None, vec![], fspec_b),
        case("GPRIME", "G'eq", ak, &[], None, vec![], gprime),
        case("COR-C1", "c1eq", ak, &[], None, vec![pred("a-equals-k", |s| s.params["a"] != s.params["k"])], cor_c1),
        case("COR-C1-UNIT", "c1eq", ak, &[Unit], Some(PairPoints::Slot(pts_ak_recip)), vec![], cor_c1_unit),
        case("LAMB1", "lambeq1", k, GENERAL, Some(PairPoints::Slot(pts_qk)), vec![k_ne_one()], lamb1),
        case("COR-RS", "lambertrameq", k, GENERAL, Some(PairPoints::Slot(pts_qk)), vec![k_ne_one()], cor_rs),
        case("COR-RS2-MZ", "lambertrameq21", &["c"], &[], None, vec![], cor_rs2_mz),
        case("COR-RS2-PR4", "lambertrameq22", k, &[], None, vec![], cor_rs2_pr4),
        case("G-LAMBERT", "GLambeq", k, AT_K2, Some(PairPoints::Slot(pts_k2)), vec![k_ne_one()], g_lambert),
        case("FG-LINK", "FGeq", k, AT_K2, Some(PairPoints::Slot(pts_k2)), vec![k_ne_one()], fg_link),
        case("SUMID", "sumid", &["x"], &[], None, vec![], sumid),
        case("PSI4", "rampsieq", none, &[Unit], Some(PairPoints::Slot(pts_psi4)), vec![], psi4),
        case("WAC", "waceq2", none, &[], None, vec![], wac),
        case("MIN1", "GLambeqmin1", none, &[SinghLimit, Trivial], Some(PairPoints::Slot(pts_min1)), vec![], min1),
        case("MIN2", "GLambeqmin2", none, &[], None, vec![], min2),
        case("G-RECIP", "Geq2", k, AT_K2, Some(PairPoints::Slot(pts_k2_recip)), vec![k_ne_one()], g_recip),
        case("PHI4", "phi4eq", none, &[], None, vec![], phi4),
        case("CHI3", "chi3eq", none, &[], None, vec![], chi3),
        case("AQ-LAMBERT", "corlameq2", none, &[], None, vec![], aq_lambert),
        case("AQ-DIFF", "aq2eq", none, &[], None, vec![], aq_diff),
        case("PSI26", "rqp2p6", none, &[], None, vec![], psi26),
        case("PHI2-LAMBERT", "entry8i", none, &[], None, vec![], phi2_lambert),
        case("A2Q", "entry18.2.9", none, &[], None, vec![], a2q),
        case("RATIO-INV", "lambertrameq-remark", k, GENERAL, Some(PairPoints::Slot(pts_qk_recip)), vec![k_ne_one()], ratio_inv),
    ];
    for c in &mut v {
        if c.id == "CHI3" {
            c.subst_exp = 2;
        }
    }
    v
}

/// The two corollaries exactly as typeset, kept out of the bank: both fail,
/// and the bank carries the rederived forms.
pub fn printed_variants() -> Vec<IdentityCase> {
    vec![
        case("COR-RS2-MZ-PRINTED", "lambertrameq21", &["c"], &[], None, vec![], |s, c| cor_rs2_mz_with(s, c, true, true)),
        case("COR-RS2-MZ-PRINTED-SUM", "lambertrameq21", &["c"], &[], None, vec![], |s, c| cor_rs2_mz_with(s, c, true, false)),
        case("COR-RS2-MZ-PRINTED-RHS", "lambertrameq21", &["c"], &[], None, vec![], |s, c| cor_rs2_mz_with(s, c, false, true)),
        case("COR-RS2-PR4-PRINTED", "lambertrameq22", &["k"], &[], None, vec![], |s, c| cor_rs2_pr4_with(s, c, true)),
    ]
}

/// Looks a case up by id.
pub fn find(id: &str) -> Option<IdentityCase> {
    bank().into_iter().find(|c| c.id == id)
}
