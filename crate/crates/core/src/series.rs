//! Truncated power series in `u` whose coefficients are integer polynomials in
//! a symbol `Q`.
//!
//! Specializing `Q` to an integer is a ring homomorphism, so the same code path
//! serves symbolic closed forms and the integer series built from censuses.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("constant term {0} is not a unit")]
    NonUnit(String),
    #[error("coefficient {n} requested beyond truncation order {order}")]
    BeyondOrder { n: usize, order: usize },
}

/// An integer polynomial in `Q`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> QPoly {
        QPoly::constant(1)
    }

    /// The symbol `Q`.
    pub fn q() -> QPoly {
        QPoly::from_coeffs(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> QPoly {
        QPoly::new(vec![c.into()])
    }

    /// `c * Q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        QPoly::new(coeffs)
    }

    pub fn from_coeffs(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> QPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value as an integer, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        QPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl fmt::Display for QPoly {
    /// Highest power first, e.g. `q^2 - 2q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let coef = if mag.is_one() && k > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}q")?,
                _ => write!(f, "{coef}q^{k}")?,
            }
        }
        Ok(())
    }
}

/// A polynomial in `u` with [`QPoly`] coefficients, lowest degree first. Used
/// to enter numerators and denominators of rational closed forms.
pub type UPoly = Vec<QPoly>;

/// Builds a [`UPoly`] from `(power of u, coefficient)` terms.
pub fn upoly(terms: &[(usize, QPoly)]) -> UPoly {
    let len = terms.iter().map(|(k, _)| k + 1).max().unwrap_or(0);
    let mut out = vec![QPoly::zero(); len];
    for (k, c) in terms {
        out[*k] = &out[*k] + c;
    }
    out
}

/// Multiplies [`UPoly`] factors exactly (no truncation).
pub fn upoly_product(factors: &[UPoly]) -> UPoly {
    factors.iter().fold(vec![QPoly::one()], |acc, f| {
        if acc.is_empty() || f.is_empty() {
            return Vec::new();
        }
        let mut out = vec![QPoly::zero(); acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        out
    })
}

/// Coefficients `c_0..=c_T` of a power series in `u`, exact below `u^{T+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<QPoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: vec![QPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> TruncatedSeries {
        TruncatedSeries::constant(order, QPoly::one())
    }

    pub fn constant(order: usize, c: QPoly) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Truncates (or zero-pads) a polynomial in `u` to the given order.
    pub fn from_upoly(order: usize, p: &[QPoly]) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(p) {
            *slot = c.clone();
        }
        s
    }

    /// Integer coefficients, lowest first.
    pub fn from_integers(order: usize, c: &[i64]) -> TruncatedSeries {
        let p: Vec<QPoly> = c.iter().map(|&x| QPoly::constant(x)).collect();
        TruncatedSeries::from_upoly(order, &p)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    /// `[u^n]` of the series.
    pub fn coeff(&self, n: usize) -> Result<&QPoly, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::BeyondOrder {
            n,
            order: self.order(),
        })
    }

    fn check(&self, other: &TruncatedSeries) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check(other)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &QPoly) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
        self.check(other)?;
        let t = self.order();
        let mut out = TruncatedSeries::zero(t);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=t - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse modulo `u^{T+1}`; the constant term must be `±1`.
    pub fn inv(&self) -> Result<TruncatedSeries, SeriesError> {
        let c0 = &self.coeffs[0];
        let unit = match c0.as_constant() {
            Some(c) if c.abs().is_one() => c,
            _ => return Err(SeriesError::NonUnit(c0.to_string())),
        };
        let t = self.order();
        let unit = QPoly::constant(unit);
        let mut out = TruncatedSeries::zero(t);
        out.coeffs[0] = unit.clone();
        for n in 1..=t {
            let mut acc = QPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &out.coeffs[n - k]);
                }
            }
            // c0 * b_n = -acc, and 1/c0 = c0 for c0 = ±1.
            out.coeffs[n] = &(-&acc) * &unit;
        }
        Ok(out)
    }

    /// Specializes `Q` to an integer in every coefficient.
    pub fn eval_q(&self, q: &BigInt) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| QPoly::constant(c.eval(q))).collect(),
        }
    }

    /// Integer coefficients; panics if any coefficient still involves `Q`.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| c.as_constant().expect("coefficient is not an integer"))
            .collect()
    }

    /// `f(u^2)` truncated at the same order.
    pub fn substitute_square(&self) -> TruncatedSeries {
        let t = self.order();
        let mut out = TruncatedSeries::zero(t);
        for (i, c) in self.coeffs.iter().enumerate() {
            if 2 * i <= t {
                out.coeffs[2 * i] = c.clone();
            }
        }
        out
    }
}

/// Binomial coefficient `C(e, k)` for any integer `e`.
fn generalized_binomial(e: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= e - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `(1 + sign * u^d)^exponent` modulo `u^{T+1}`, for any integer exponent.
pub fn series_binomial_power(d: usize, sign: i8, exponent: &BigInt, order: usize) -> TruncatedSeries {
    assert!(d >= 1, "degree must be positive");
    let mut s = TruncatedSeries::zero(order);
    let sign = BigInt::from(sign.signum());
    let mut k = 0;
    while k * d <= order {
        let mut c = generalized_binomial(exponent, k);
        if k % 2 == 1 {
            c *= &sign;
        }
        s.coeffs[k * d] = QPoly::constant(c);
        k += 1;
    }
    s
}

/// Expands `numerator / denominator` to order T.
pub fn series_from_rational(numerator: &[QPoly], denominator: &[QPoly], order: usize) -> Result<TruncatedSeries, SeriesError> {
    let num = TruncatedSeries::from_upoly(order, numerator);
    let den = TruncatedSeries::from_upoly(order, denominator);
    num.mul(&den.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: i64) -> QPoly {
        QPoly::constant(x)
    }

    #[test]
    fn mul_examples() {
        let a = TruncatedSeries::from_integers(4, &[1, 1]);
        let b = TruncatedSeries::from_integers(4, &[1, -1]);
        assert_eq!(a.mul(&b).unwrap(), TruncatedSeries::from_integers(4, &[1, 0, -1]));
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), TruncatedSeries::one(4));

        // (1 - Qu) * sum Q^n u^n = 1, term by term.
        let t = 8;
        let geometric = TruncatedSeries::from_upoly(t, &(0..=t).map(|n| QPoly::monomial(1, n)).collect::<Vec<_>>());
        let lin = TruncatedSeries::from_upoly(t, &upoly(&[(0, c(1)), (1, -&QPoly::q())]));
        assert_eq!(lin.mul(&geometric).unwrap(), TruncatedSeries::one(t));

        let short = TruncatedSeries::one(3);
        assert_eq!(a.mul(&short), Err(SeriesError::OrderMismatch(4, 3)));
    }

    #[test]
    fn inverse_examples() {
        let t = 7;
        let lin = TruncatedSeries::from_upoly(t, &upoly(&[(0, c(1)), (1, -&QPoly::q())]));
        let inv = lin.inv().unwrap();
        for n in 0..=t {
            assert_eq!(inv.coeff(n).unwrap(), &QPoly::monomial(1, n));
        }
        let one_plus_u = TruncatedSeries::from_integers(t, &[1, 1]);
        let alt: Vec<i64> = (0..=t as i64).map(|n| if n % 2 == 0 { 1 } else { -1 }).collect();
        assert_eq!(one_plus_u.inv().unwrap(), TruncatedSeries::from_integers(t, &alt));
        let sq = one_plus_u.mul(&one_plus_u).unwrap().inv().unwrap();
        for j in 0..=t {
            let expected = if j % 2 == 0 { j as i64 + 1 } else { -(j as i64 + 1) };
            assert_eq!(sq.coeff(j).unwrap(), &c(expected));
        }
        let bad = TruncatedSeries::from_integers(3, &[2, 1]);
        assert!(matches!(bad.inv(), Err(SeriesError::NonUnit(_))));
        assert_eq!(
            TruncatedSeries::from_integers(3, &[-1, 1]).inv().unwrap(),
            TruncatedSeries::from_integers(3, &[-1, -1, -1, -1])
        );
    }

    #[test]
    fn binomial_power_examples() {
        assert_eq!(
            series_binomial_power(1, 1, &BigInt::from(2), 3),
            TruncatedSeries::from_integers(3, &[1, 2, 1])
        );
        assert_eq!(
            series_binomial_power(2, 1, &BigInt::from(-1), 6),
            TruncatedSeries::from_integers(6, &[1, 0, -1, 0, 1, 0, -1])
        );
        // Stars and bars: [u^2] (1-u)^{-3} = C(4,2) = 6.
        let s = series_binomial_power(1, -1, &BigInt::from(-3), 4);
        assert_eq!(s.coeff(2).unwrap(), &c(6));
        // Negative exponent agrees with inverting the positive power.
        let pos = series_binomial_power(3, -1, &BigInt::from(5), 12);
        let neg = series_binomial_power(3, -1, &BigInt::from(-5), 12);
        assert_eq!(pos.inv().unwrap(), neg);
    }

    #[test]
    fn rational_examples() {
        let q = QPoly::q();
        let t = 8;
        // (1 - Qu^2) / ((1+u)(1-Qu)): [u^n] (q^{n+1} - q^n + (-1)^{n+1}(q-1)) / (q+1).
        let num = upoly(&[(0, c(1)), (2, -&q)]);
        let den = upoly_product(&[upoly(&[(0, c(1)), (1, c(1))]), upoly(&[(0, c(1)), (1, -&q)])]);
        let s = series_from_rational(&num, &den, t).unwrap();
        assert_eq!(s.coeff(2).unwrap().eval(&BigInt::from(2)), BigInt::from(1));
        for n in 1..=t {
            for qv in [2i64, 3, 5, 7] {
                let sign = if n % 2 == 1 { 1 } else { -1 };
                let expected = (qv.pow(n as u32 + 1) - qv.pow(n as u32) + sign * (qv - 1)) / (qv + 1);
                assert_eq!(s.coeff(n).unwrap().eval(&BigInt::from(qv)), BigInt::from(expected));
            }
        }

        let geo = series_from_rational(&[c(1)], &upoly(&[(0, c(1)), (1, -&q)]), 6).unwrap();
        assert_eq!(geo.coeff(5).unwrap(), &QPoly::monomial(1, 5));

        // (1+u)(1-Qu^2) / ((1+u^2)(1-Qu)) = 1 + (Q+1) u + ...
        let num = upoly_product(&[upoly(&[(0, c(1)), (1, c(1))]), upoly(&[(0, c(1)), (2, -&q)])]);
        let den = upoly_product(&[upoly(&[(0, c(1)), (2, c(1))]), upoly(&[(0, c(1)), (1, -&q)])]);
        let s = series_from_rational(&num, &den, 4).unwrap();
        assert_eq!(s.coeff(1).unwrap(), &QPoly::from_coeffs(&[1, 1]));

        // (1 - Qu^2) / ((1+u)^2 (1-Qu)) at u^2 is Q^2 - 3Q + 3.
        let num = upoly(&[(0, c(1)), (2, -&q)]);
        let den = upoly_product(&[
            upoly(&[(0, c(1)), (1, c(1))]),
            upoly(&[(0, c(1)), (1, c(1))]),
            upoly(&[(0, c(1)), (1, -&q)]),
        ]);
        let s = series_from_rational(&num, &den, 4).unwrap();
        assert_eq!(s.coeff(2).unwrap(), &QPoly::from_coeffs(&[3, -3, 1]));
        assert!(matches!(s.coeff(5), Err(SeriesError::BeyondOrder { n: 5, order: 4 })));
        assert_eq!(s.coeff(0).unwrap(), &c(1));
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_coeffs(&[1, -2, 1]).to_string(), "q^2 - 2q + 1");
        assert_eq!(QPoly::from_coeffs(&[-4, 2, -1, 1]).to_string(), "q^3 - q^2 + 2q - 4");
        assert_eq!(QPoly::from_coeffs(&[0, -1]).to_string(), "-q");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::constant(-3).to_string(), "-3");
    }

    fn arb_series(t: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(prop::collection::vec(-4i64..=4, 0..3), t + 1).prop_map(move |cs| {
            let p: Vec<QPoly> = cs.iter().map(|c| QPoly::from_coeffs(c)).collect();
            TruncatedSeries::from_upoly(t, &p)
        })
    }

    fn arb_unit_series(t: usize) -> impl Strategy<Value = TruncatedSeries> {
        (arb_series(t), prop::bool::ANY).prop_map(|(s, neg)| {
            let mut p = s.coeffs().to_vec();
            p[0] = QPoly::constant(if neg { -1 } else { 1 });
            TruncatedSeries::from_upoly(s.order(), &p)
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(12), b in arb_series(12), c in arb_series(12)) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn inverse_is_two_sided(a in arb_unit_series(10)) {
            let inv = a.inv().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), TruncatedSeries::one(10));
            prop_assert_eq!(inv.mul(&a).unwrap(), TruncatedSeries::one(10));
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_series(8), b in arb_unit_series(8), q in prop::sample::select(vec![2i64, 3, 5])) {
            let q = BigInt::from(q);
            let symbolic = a.mul(&b.inv().unwrap()).unwrap().eval_q(&q);
            let numeric = a.eval_q(&q).mul(&b.eval_q(&q).inv().unwrap()).unwrap();
            prop_assert_eq!(symbolic, numeric);
        }
    }
}
