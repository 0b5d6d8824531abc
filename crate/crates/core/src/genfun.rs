//! Generating functions for class counts, on two sides: infinite products
//! whose exponents come from the census, and the rational functions they are
//! claimed to equal.
//!
//! Everything is expanded in the full variable `u`. Series that are naturally
//! functions of `u^2` (the orthogonal ones) are compared and read off at even
//! degrees.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{prime_power, AlgebraError};
use crate::census::{CensusCache, CensusError, CensusKind, CensusMethod};
use crate::closedform::{ClosedFormError, Family, GroupSpec, Parity};
use crate::series::{series_binomial_power, series_from_rational, upoly, upoly_product, QPoly, SeriesError, TruncatedSeries, UPoly};

/// Per-census enumeration budget used when verifying identities. Larger
/// census values come from the root-counting formula and are marked as such in
/// reports.
pub const DEFAULT_VERIFY_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenfunError {
    #[error("{lemma} requires {required} characteristic")]
    WrongCharacteristic { lemma: LemmaId, required: &'static str },
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("coefficient {coeff} is not divisible by {divisor} for {group}")]
    InexactDivision { group: String, coeff: BigInt, divisor: BigInt },
    #[error("the {0} series needs a concrete q")]
    NeedsIntegerQ(Family),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

impl From<AlgebraError> for GenfunError {
    fn from(e: AlgebraError) -> Self {
        GenfunError::Census(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    Lem1,
    Lem2,
    Lem3,
    Lem4,
    Lem5,
    OgenoddSum,
    OgenoddDiff,
    OgenevenPlus,
    OgenevenMinus,
    SolvedRSo,
    SolvedRSoPlus,
    SolvedRSoMinus,
}

impl LemmaId {
    pub const ALL: [LemmaId; 12] = [
        LemmaId::Lem1,
        LemmaId::Lem2,
        LemmaId::Lem3,
        LemmaId::Lem4,
        LemmaId::Lem5,
        LemmaId::OgenoddSum,
        LemmaId::OgenoddDiff,
        LemmaId::OgenevenPlus,
        LemmaId::OgenevenMinus,
        LemmaId::SolvedRSo,
        LemmaId::SolvedRSoPlus,
        LemmaId::SolvedRSoMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Lem1 => "lem1",
            LemmaId::Lem2 => "lem2",
            LemmaId::Lem3 => "lem3",
            LemmaId::Lem4 => "lem4",
            LemmaId::Lem5 => "lem5",
            LemmaId::OgenoddSum => "ogenodd_sum",
            LemmaId::OgenoddDiff => "ogenodd_diff",
            LemmaId::OgenevenPlus => "ogeneven_plus",
            LemmaId::OgenevenMinus => "ogeneven_minus",
            LemmaId::SolvedRSo => "solved_R_SO",
            LemmaId::SolvedRSoPlus => "solved_R_SO_plus",
            LemmaId::SolvedRSoMinus => "solved_R_SO_minus",
        }
    }

    /// Characteristic the identity is stated for, if restricted.
    pub fn required_parity(self) -> Option<Parity> {
        match self {
            LemmaId::Lem4 | LemmaId::OgenoddSum | LemmaId::OgenoddDiff => Some(Parity::Odd),
            LemmaId::Lem5 | LemmaId::OgenevenPlus | LemmaId::OgenevenMinus => Some(Parity::Even),
            _ => None,
        }
    }

    pub fn admits(self, parity: Parity) -> bool {
        self.required_parity().is_none_or(|p| p == parity)
    }

    fn check(self, parity: Parity) -> Result<(), GenfunError> {
        match self.required_parity() {
            Some(p) if p != parity => Err(GenfunError::WrongCharacteristic {
                lemma: self,
                required: if p == Parity::Even { "even" } else { "odd" },
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = GenfunError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| GenfunError::UnknownLemma(s.to_string()))
    }
}

impl Serialize for LemmaId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Value of `q` for the rational side: a concrete integer, or the symbol `Q`
/// with a known characteristic parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QValue {
    Int(u64),
    Symbolic(Parity),
}

impl QValue {
    fn parity(self) -> Parity {
        match self {
            QValue::Int(q) => Parity::of(q),
            QValue::Symbolic(p) => p,
        }
    }
}

/// Process-wide census cache with the verification budget.
pub fn shared_cache() -> &'static CensusCache {
    static CACHE: OnceLock<CensusCache> = OnceLock::new();
    CACHE.get_or_init(|| CensusCache::new(DEFAULT_VERIFY_CAP))
}

/// One census value consumed by a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusUse {
    pub kind: CensusKind,
    pub d: usize,
    #[serde(serialize_with = "ser_u128")]
    pub count: u128,
    pub method: CensusMethod,
}

fn ser_u128<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(*v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

struct Product<'a> {
    cache: &'a CensusCache,
    q: u64,
    order: usize,
    acc: TruncatedSeries,
    used: Vec<CensusUse>,
}

impl<'a> Product<'a> {
    fn new(cache: &'a CensusCache, q: u64, order: usize) -> Self {
        Product {
            cache,
            q,
            order,
            acc: TruncatedSeries::one(order),
            used: Vec::new(),
        }
    }

    fn census(&mut self, kind: CensusKind, d: usize) -> Result<BigInt, GenfunError> {
        let e = self.cache.get(kind, self.q, d)?;
        if !self.used.iter().any(|u| u.kind == kind && u.d == d) {
            self.used.push(CensusUse {
                kind,
                d,
                count: e.count,
                method: e.method,
            });
        }
        Ok(BigInt::from(e.count))
    }

    /// Multiplies by `(1 + sign u^deg)^{±count}` with `count` from the census.
    fn factor(&mut self, deg: usize, sign: i8, kind: CensusKind, d: usize, invert: bool) -> Result<(), GenfunError> {
        if deg > self.order {
            return Ok(());
        }
        let mut e = self.census(kind, d)?;
        if e.is_zero() {
            return Ok(());
        }
        if invert {
            e = -e;
        }
        self.acc = self.acc.mul(&series_binomial_power(deg, sign, &e, self.order))?;
        Ok(())
    }
}

/// `∏_d (1 + u^{2d})^{N*(2d) + M*(d)}` (`twisted = false`) or
/// `∏_d (1 - u^{2d})^{N*(2d)} (1 + u^{2d})^{M*(d)}` (`twisted = true`).
fn orthogonal_core(product: &mut Product<'_>, twisted: bool) -> Result<(), GenfunError> {
    for d in 1..=product.order / 2 {
        product.factor(2 * d, if twisted { -1 } else { 1 }, CensusKind::NStar, 2 * d, false)?;
        product.factor(2 * d, 1, CensusKind::MStar, d, false)?;
    }
    Ok(())
}

fn ints(order: usize, c: &[i64]) -> TruncatedSeries {
    TruncatedSeries::from_integers(order, c)
}

/// Product side of `id` at `q`, with the census values it consumed.
pub fn product_side_with(cache: &CensusCache, id: LemmaId, q: u64, order: usize) -> Result<(TruncatedSeries, Vec<CensusUse>), GenfunError> {
    if prime_power(q).is_none() {
        return Err(GenfunError::NotPrimePower(q));
    }
    let parity = Parity::of(q);
    id.check(parity)?;
    let t = order;
    let mut p = Product::new(cache, q, t);
    let series = match id {
        LemmaId::Lem1 => {
            for d in 1..=t {
                p.factor(d, 1, CensusKind::N, d, true)?;
            }
            p.acc.clone()
        }
        LemmaId::Lem2 => {
            for d in 1..=t {
                p.factor(d, 1, CensusKind::NTilde, d, true)?;
                p.factor(2 * d, 1, CensusKind::MTilde, d, true)?;
            }
            p.acc.clone()
        }
        LemmaId::Lem3 | LemmaId::Lem4 | LemmaId::Lem5 => {
            let sign = if id == LemmaId::Lem3 { 1 } else { -1 };
            for d in 1..=t {
                p.factor(d, sign, CensusKind::NStar, 2 * d, true)?;
                p.factor(d, 1, CensusKind::MStar, d, true)?;
            }
            p.acc.clone()
        }
        _ => {
            let plain = {
                orthogonal_core(&mut p, false)?;
                std::mem::replace(&mut p.acc, TruncatedSeries::one(t))
            };
            let twisted = {
                orthogonal_core(&mut p, true)?;
                p.acc.clone()
            };
            let one = TruncatedSeries::one(t);
            let odd = parity == Parity::Odd;
            match id {
                LemmaId::OgenoddSum => {
                    // z+1 contributes 1 + 2u^2, z-1 contributes 1 + 2u + 2u^2.
                    let pre = ints(t, &[1, 0, 2]).mul(&ints(t, &[1, 2, 2]))?;
                    pre.mul(&plain)?.add(&plain)?.sub(&one)?
                }
                LemmaId::OgenoddDiff => twisted.add(&twisted)?.sub(&one)?,
                LemmaId::OgenevenPlus => ints(t, &[1, 0, 1]).mul(&plain)?.add(&twisted)?.sub(&one)?,
                LemmaId::OgenevenMinus => ints(t, &[1, 0, 1]).mul(&plain)?.sub(&twisted)?,
                LemmaId::SolvedRSo if odd => ints(t, &[1, 0, 2]).mul(&plain)?,
                LemmaId::SolvedRSo => plain,
                LemmaId::SolvedRSoPlus | LemmaId::SolvedRSoMinus => {
                    let pre = if odd { ints(t, &[1, 0, 2, 0, 2]) } else { ints(t, &[1, 0, 1]) };
                    let base = pre.mul(&plain)?;
                    if id == LemmaId::SolvedRSoPlus {
                        base.add(&twisted)?.sub(&one)?
                    } else {
                        base.sub(&twisted)?
                    }
                }
                _ => unreachable!("handled above"),
            }
        }
    };
    Ok((series, p.used))
}

pub fn product_side(id: LemmaId, q: u64, order: usize) -> Result<TruncatedSeries, GenfunError> {
    Ok(product_side_with(shared_cache(), id, q, order)?.0)
}

fn c(x: i64) -> QPoly {
    QPoly::constant(x)
}

/// `1 - Q u^k`.
fn one_minus_q(k: usize) -> UPoly {
    upoly(&[(0, c(1)), (k, -&QPoly::q())])
}

fn binom(k: usize, s: i64) -> UPoly {
    upoly(&[(0, c(1)), (k, c(s))])
}

fn ratio(num: &[UPoly], den: &[UPoly], t: usize) -> Result<TruncatedSeries, SeriesError> {
    series_from_rational(&upoly_product(num), &upoly_product(den), t)
}

/// Rational side of `id`, symbolic in `Q` unless `q` is an integer.
pub fn closed_side(id: LemmaId, q: QValue, order: usize) -> Result<TruncatedSeries, GenfunError> {
    let parity = q.parity();
    id.check(parity)?;
    let t = order;
    let one = TruncatedSeries::one(t);
    let odd = parity == Parity::Odd;
    let (p1, m1, p2, m2) = (binom(1, 1), binom(1, -1), binom(2, 1), binom(2, -1));
    let (q1, q2, q4) = (one_minus_q(1), one_minus_q(2), one_minus_q(4));
    // (1 - Qu^4) / ((1 + u^2)^k (1 - Q u^2)) and the same over (1 - u^2).
    let over_q = |k: usize| ratio(std::slice::from_ref(&q4), &[vec![p2.clone(); k], vec![q2.clone()]].concat(), t);
    let over_1 = |k: usize| ratio(std::slice::from_ref(&q4), &[vec![p2.clone(); k], vec![m2.clone()]].concat(), t);
    let s = match id {
        LemmaId::Lem1 => ratio(&[p1.clone(), q1.clone()], std::slice::from_ref(&q2), t)?,
        LemmaId::Lem2 => ratio(&[p2.clone(), q1.clone()], &[p1.clone(), q2.clone()], t)?,
        LemmaId::Lem3 => {
            let e = if odd { 2 } else { 1 };
            ratio(&[vec![p1.clone(); e], vec![q1.clone()]].concat(), std::slice::from_ref(&q2), t)?
        }
        LemmaId::Lem4 => ratio(&[m1.clone(), p1.clone(), p1.clone()], std::slice::from_ref(&q2), t)?,
        LemmaId::Lem5 => ratio(std::slice::from_ref(&p1), std::slice::from_ref(&q2), t)?,
        LemmaId::OgenoddSum => {
            // [(1+2u^2)(1+2u+2u^2) + 1] = 2 + 2u + 4u^2 + 4u^3 + 4u^4
            let pre = ints(t, &[2, 2, 4, 4, 4]);
            pre.mul(&over_q(2)?)?.sub(&one)?
        }
        LemmaId::OgenoddDiff => over_1(2)?.scale(&c(2)).sub(&one)?,
        LemmaId::OgenevenPlus => ogeneven(t, true)?,
        LemmaId::OgenevenMinus => ogeneven(t, false)?,
        LemmaId::SolvedRSo if odd => ints(t, &[1, 0, 2]).mul(&over_q(2)?)?,
        LemmaId::SolvedRSo => over_q(1)?,
        LemmaId::SolvedRSoPlus | LemmaId::SolvedRSoMinus if odd => {
            let a = ints(t, &[1, 0, 2, 0, 2]).mul(&over_q(2)?)?;
            let b = over_1(2)?;
            if id == LemmaId::SolvedRSoPlus {
                a.add(&b)?.sub(&one)?
            } else {
                a.sub(&b)?
            }
        }
        LemmaId::SolvedRSoPlus => ogeneven(t, true)?,
        LemmaId::SolvedRSoMinus => ogeneven(t, false)?,
    };
    Ok(match q {
        QValue::Int(q) => s.eval_q(&BigInt::from(q)),
        QValue::Symbolic(_) => s,
    })
}

/// `(1 - Qu^4)/(1 - Qu^2) ± (1 - Qu^4)/(1 + u^2)`, minus 1 for the plus sign.
fn ogeneven(t: usize, plus: bool) -> Result<TruncatedSeries, SeriesError> {
    let q4 = one_minus_q(4);
    let a = ratio(std::slice::from_ref(&q4), &[one_minus_q(2)], t)?;
    let b = ratio(&[q4], &[binom(2, 1)], t)?;
    if plus {
        a.add(&b)?.sub(&TruncatedSeries::one(t))
    } else {
        a.sub(&b)
    }
}

fn coeff_at(s: &TruncatedSeries, n: usize, q: u64) -> Result<BigInt, GenfunError> {
    let c = s.coeff(n)?;
    Ok(c.eval(&BigInt::from(q)))
}

fn divide(group: &GroupSpec, coeff: BigInt, divisor: BigInt) -> Result<BigInt, GenfunError> {
    let (quot, rem) = coeff.div_rem(&divisor);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(GenfunError::InexactDivision {
            group: group.name(),
            coeff,
            divisor,
        })
    }
}

/// Generating function of `family` indexed by rank: coefficient `n` is the
/// class count at rank `n`, coefficient 0 is 1 (0 for `SO-`).
///
/// SL and SU involve exact division by `q ∓ 1`, so they need an integer `q`.
pub fn group_series(family: Family, q: QValue, order: usize) -> Result<TruncatedSeries, GenfunError> {
    let parity = q.parity();
    let odd = parity == Parity::Odd;
    let t = order;
    let (p1, p2, m2) = (binom(1, 1), binom(2, 1), binom(2, -1));
    let (q1, q2) = (one_minus_q(1), one_minus_q(2));
    let specialize = |s: TruncatedSeries| match q {
        QValue::Int(q) => s.eval_q(&BigInt::from(q)),
        QValue::Symbolic(_) => s,
    };
    let even_part = |id: LemmaId| -> Result<TruncatedSeries, GenfunError> {
        let s = closed_side(id, q, 2 * t)?;
        Ok(TruncatedSeries::from_upoly(t, &s.coeffs().iter().step_by(2).cloned().collect::<Vec<_>>()))
    };
    let gl = || ratio(std::slice::from_ref(&q2), &[p1.clone(), q1.clone()], t);
    let u = || ratio(&[p1.clone(), q2.clone()], &[p2.clone(), q1.clone()], t);
    Ok(match family {
        Family::Gl => specialize(gl()?),
        Family::U => specialize(u()?),
        Family::Sp => {
            let e = if odd { 2 } else { 1 };
            specialize(ratio(std::slice::from_ref(&q2), &[vec![p1.clone(); e], vec![q1.clone()]].concat(), t)?)
        }
        Family::Sl | Family::Su => {
            let QValue::Int(qi) = q else {
                return Err(GenfunError::NeedsIntegerQ(family));
            };
            let (mut s, divisor) = if family == Family::Sl {
                (gl()?, BigInt::from(qi - 1))
            } else {
                (u()?, BigInt::from(qi + 1))
            };
            if odd {
                let extra = if family == Family::Sl { m2.clone() } else { p2.clone() };
                s = s.add(&ratio(std::slice::from_ref(&q2), &[extra], t)?)?;
            }
            let g = GroupSpec::new(family, 1, qi)?;
            let mut out = vec![QPoly::one()];
            for n in 1..=t {
                let c = divide(&g, coeff_at(&s, n, qi)?, divisor.clone())?;
                out.push(QPoly::constant(c));
            }
            TruncatedSeries::from_upoly(t, &out)
        }
        Family::SoOdd => even_part(LemmaId::SolvedRSo)?,
        Family::SoPlus => even_part(LemmaId::SolvedRSoPlus)?,
        Family::SoMinus => even_part(LemmaId::SolvedRSoMinus)?,
    })
}

/// The class count as a coefficient of the rational generating function.
pub fn gf_count(g: &GroupSpec) -> Result<BigInt, GenfunError> {
    let GroupSpec { family, n, q } = *g;
    let n = n as usize;
    let qb = BigInt::from(q);
    let qv = QValue::Int(q);
    let odd = q % 2 == 1;
    let (p1, p2, m2) = (binom(1, 1), binom(2, 1), binom(2, -1));
    let (q1, q2) = (one_minus_q(1), one_minus_q(2));
    let gl = || ratio(std::slice::from_ref(&q2), &[p1.clone(), q1.clone()], n);
    let u = || ratio(&[p1.clone(), q2.clone()], &[p2.clone(), q1.clone()], n);
    match family {
        Family::Gl => coeff_at(&gl()?, n, q),
        Family::Sl => {
            // Only u^n with n >= 1 is read, so the constant terms drop out.
            let mut s = gl()?;
            if odd {
                s = s.add(&ratio(std::slice::from_ref(&q2), std::slice::from_ref(&m2), n)?)?;
            }
            divide(g, coeff_at(&s, n, q)?, &qb - 1)
        }
        Family::U => coeff_at(&u()?, n, q),
        Family::Su => {
            let mut s = u()?;
            if odd {
                s = s.add(&ratio(std::slice::from_ref(&q2), std::slice::from_ref(&p2), n)?)?;
            }
            divide(g, coeff_at(&s, n, q)?, &qb + 1)
        }
        Family::Sp => {
            let e = if odd { 2 } else { 1 };
            coeff_at(&ratio(std::slice::from_ref(&q2), &[vec![p1.clone(); e], vec![q1.clone()]].concat(), n)?, n, q)
        }
        Family::SoOdd if odd => {
            let s = closed_side(LemmaId::OgenoddSum, qv, 2 * n + 1)?;
            divide(g, coeff_at(&s, 2 * n + 1, q)?, BigInt::from(2))
        }
        Family::SoOdd => coeff_at(&closed_side(LemmaId::SolvedRSo, qv, 2 * n)?, 2 * n, q),
        Family::SoPlus => coeff_at(&closed_side(LemmaId::SolvedRSoPlus, qv, 2 * n)?, 2 * n, q),
        Family::SoMinus => coeff_at(&closed_side(LemmaId::SolvedRSoMinus, qv, 2 * n)?, 2 * n, q),
    }
}

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// Coefficientwise comparison of both sides of an identity. Coefficients
/// outside the `i64` range serialize as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub lemma: LemmaId,
    pub q: u64,
    #[serde(rename = "T")]
    pub order: usize,
    pub pass: bool,
    pub first_mismatch: Option<usize>,
    #[serde(serialize_with = "ser_bigints")]
    pub lhs_coeffs: Vec<BigInt>,
    #[serde(serialize_with = "ser_bigints")]
    pub rhs_coeffs: Vec<BigInt>,
    pub census: Vec<CensusUse>,
}

impl VerificationReport {
    /// True when every census value came from enumeration.
    pub fn fully_enumerated(&self) -> bool {
        self.census.iter().all(|c| c.method == CensusMethod::Enumerate)
    }
}

pub fn verify_lemma_with(cache: &CensusCache, id: LemmaId, q: u64, order: usize) -> Result<VerificationReport, GenfunError> {
    let (lhs, census) = product_side_with(cache, id, q, order)?;
    let rhs = closed_side(id, QValue::Int(q), order)?;
    let lhs_coeffs = lhs.integer_coeffs();
    let rhs_coeffs = rhs.integer_coeffs();
    let first_mismatch = lhs_coeffs.iter().zip(&rhs_coeffs).position(|(a, b)| a != b);
    Ok(VerificationReport {
        lemma: id,
        q,
        order,
        pass: first_mismatch.is_none(),
        first_mismatch,
        lhs_coeffs,
        rhs_coeffs,
        census,
    })
}

pub fn verify_lemma(id: LemmaId, q: u64, order: usize) -> Result<VerificationReport, GenfunError> {
    verify_lemma_with(shared_cache(), id, q, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::rs;

    fn coeffs(s: &TruncatedSeries) -> Vec<i64> {
        s.integer_coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn lemma_names_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
        }
        assert!("lem6".parse::<LemmaId>().is_err());
    }

    #[test]
    fn product_examples() {
        let t = 6;
        let lem1 = product_side(LemmaId::Lem1, 2, t).unwrap();
        let expect = ratio(&[binom(1, 1), binom(1, -2)], &[binom(2, -2)], t).unwrap();
        assert_eq!(lem1, expect);
        assert_eq!(product_side(LemmaId::Lem3, 2, t).unwrap(), expect);
        let lem4 = product_side(LemmaId::Lem4, 3, 4).unwrap();
        let expect4 = ratio(&[binom(1, -1), binom(1, 1), binom(1, 1)], &[binom(2, -3)], 4).unwrap();
        assert_eq!(lem4, expect4);
    }

    #[test]
    fn closed_examples() {
        let sym = closed_side(LemmaId::Lem1, QValue::Symbolic(Parity::Odd), 5).unwrap();
        // (1+u)(1-Qu)/(1-Qu^2) = 1 + (1-Q)u + 0u^2 + (Q-Q^2)u^3 + ...
        assert_eq!(sym.coeff(1).unwrap().to_string(), "-q + 1");
        assert!(sym.coeff(2).unwrap().is_zero());
        assert_eq!(sym.coeff(3).unwrap().to_string(), "-q^2 + q");
        let plus = closed_side(LemmaId::OgenevenPlus, QValue::Int(2), 4).unwrap();
        assert_eq!(coeffs(&plus)[4], 1);
        let so = closed_side(LemmaId::SolvedRSo, QValue::Int(3), 2).unwrap();
        assert_eq!(coeffs(&so)[2], 3);
    }

    #[test]
    fn characteristic_restrictions() {
        assert_eq!(
            verify_lemma(LemmaId::Lem5, 3, 10).unwrap_err().to_string(),
            "lem5 requires even characteristic"
        );
        assert!(matches!(
            closed_side(LemmaId::OgenoddSum, QValue::Int(4), 4),
            Err(GenfunError::WrongCharacteristic { .. })
        ));
        assert_eq!(product_side(LemmaId::Lem1, 6, 3).unwrap_err(), GenfunError::NotPrimePower(6));
    }

    #[test]
    fn small_verifications() {
        for (id, q, t) in [
            (LemmaId::Lem1, 2, 10),
            (LemmaId::Lem5, 2, 10),
            (LemmaId::OgenoddDiff, 3, 8),
            (LemmaId::Lem2, 2, 8),
            (LemmaId::SolvedRSoPlus, 3, 10),
        ] {
            let r = verify_lemma(id, q, t).unwrap();
            assert!(r.pass, "{id} q={q}: {r:?}");
            assert!(r.fully_enumerated());
        }
    }

    #[test]
    fn gf_count_examples() {
        let g = |f, n, q| gf_count(&GroupSpec::new(f, n, q).unwrap()).unwrap().to_i64().unwrap();
        assert_eq!(g(Family::Gl, 4, 2), 5);
        assert_eq!(g(Family::Sp, 2, 3), 3);
        assert_eq!(g(Family::SoMinus, 3, 3), 18);
        assert_eq!(g(Family::SoOdd, 1, 5), 5);
    }

    #[test]
    fn gf_count_matches_closed_forms() {
        for f in Family::ALL {
            for q in [2u64, 3, 4, 5, 7, 8, 9] {
                for n in 1..=9 {
                    let spec = GroupSpec::new(f, n, q).unwrap();
                    assert_eq!(gf_count(&spec).unwrap(), rs(&spec).unwrap(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn group_series_matches_counts() {
        for f in Family::ALL {
            for q in [2u64, 3, 4, 5, 9] {
                let s = group_series(f, QValue::Int(q), 8).unwrap();
                for n in 1..=8u32 {
                    assert_eq!(coeff_at(&s, n as usize, q).unwrap(), rs(&GroupSpec::new(f, n, q).unwrap()).unwrap(), "{f} q={q} n={n}");
                }
                if !matches!(f, Family::Sl | Family::Su) {
                    let sym = group_series(f, QValue::Symbolic(Parity::of(q)), 8).unwrap();
                    assert_eq!(sym.eval_q(&BigInt::from(q)), s);
                }
            }
        }
        assert_eq!(
            group_series(Family::Sl, QValue::Symbolic(Parity::Odd), 3).unwrap_err(),
            GenfunError::NeedsIntegerQ(Family::Sl)
        );
        let so_minus = group_series(Family::SoMinus, QValue::Int(3), 2).unwrap();
        assert!(so_minus.coeff(0).unwrap().is_zero());
    }

    #[test]
    fn report_json_shape() {
        let r = verify_lemma(LemmaId::Lem1, 2, 3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["lemma"], "lem1");
        assert_eq!(v["T"], 3);
        assert_eq!(v["pass"], true);
        assert_eq!(v["first_mismatch"], serde_json::Value::Null);
        assert_eq!(v["lhs_coeffs"], serde_json::json!([1, -1, 0, -2]));
        assert_eq!(v["census"][0]["method"], "enumerate");
    }
}
