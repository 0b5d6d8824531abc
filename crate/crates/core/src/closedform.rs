//! Exact counts of regular semisimple classes as explicit functions of `n`
//! and `q`.
//!
//! Every division is checked; a nonzero remainder is reported as an error
//! rather than rounded away. The formulas are polynomial in `q`, so any
//! `q >= 2` is accepted here and prime-power validation is left to callers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::series::QPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("q must be at least 2, got {0}")]
    FieldTooSmall(u64),
    #[error("{family} formula leaves a remainder at n={n}, q={q}")]
    InexactDivision { family: Family, n: u32, q: u64 },
    #[error("no symbolic form for {0}")]
    NoSymbolicForm(Family),
    #[error("the symbolic form for {family} needs {requirement}")]
    OutsideSymbolicRange { family: Family, requirement: &'static str },
    #[error("unknown group family {0:?}")]
    UnknownFamily(String),
}

/// Group families, indexed by rank: `Sp(2n)`, `SO(2n+1)`, `SO±(2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "gl")]
    Gl,
    #[serde(rename = "sl")]
    Sl,
    #[serde(rename = "u")]
    U,
    #[serde(rename = "su")]
    Su,
    #[serde(rename = "sp")]
    Sp,
    #[serde(rename = "so-odd")]
    SoOdd,
    #[serde(rename = "so+")]
    SoPlus,
    #[serde(rename = "so-")]
    SoMinus,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Gl,
        Family::Sl,
        Family::U,
        Family::Su,
        Family::Sp,
        Family::SoOdd,
        Family::SoPlus,
        Family::SoMinus,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::U => "u",
            Family::Su => "su",
            Family::Sp => "sp",
            Family::SoOdd => "so-odd",
            Family::SoPlus => "so+",
            Family::SoMinus => "so-",
        }
    }

    /// Human-readable group name at rank `n`, e.g. `SO+(4,3)`.
    pub fn group_name(self, n: u32, q: u64) -> String {
        match self {
            Family::Gl => format!("GL({n},{q})"),
            Family::Sl => format!("SL({n},{q})"),
            Family::U => format!("U({n},{q})"),
            Family::Su => format!("SU({n},{q})"),
            Family::Sp => format!("Sp({},{q})", 2 * n),
            Family::SoOdd => format!("SO({},{q})", 2 * n + 1),
            Family::SoPlus => format!("SO+({},{q})", 2 * n),
            Family::SoMinus => format!("SO-({},{q})", 2 * n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Family {
    type Err = ClosedFormError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase().replace('\u{2212}', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.token() == t)
            .ok_or_else(|| ClosedFormError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(q: u64) -> Parity {
        if q.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A group `family` of rank `n` over GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupSpec {
    pub family: Family,
    pub n: u32,
    pub q: u64,
}

impl GroupSpec {
    pub fn new(family: Family, n: u32, q: u64) -> Result<GroupSpec, ClosedFormError> {
        if n == 0 {
            return Err(ClosedFormError::ZeroRank);
        }
        if q < 2 {
            return Err(ClosedFormError::FieldTooSmall(q));
        }
        Ok(GroupSpec { family, n, q })
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.q)
    }

    pub fn name(&self) -> String {
        self.family.group_name(self.n, self.q)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn qpow(q: u64, k: u32) -> BigInt {
    Pow::pow(BigInt::from(q), k)
}

fn sign(k: u32) -> BigInt {
    if k.is_multiple_of(2) {
        big(1)
    } else {
        big(-1)
    }
}

fn exact_div(num: BigInt, den: BigInt, family: Family, n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    let (quot, rem) = num.div_rem(&den);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(ClosedFormError::InexactDivision { family, n, q })
    }
}

fn check(n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    GroupSpec::new(Family::Gl, n, q)?;
    Ok(BigInt::from(q))
}

/// `q^{n+1} - q^n + (-1)^{n+1}(q-1)`.
fn linear_numerator(n: u32, q: u64) -> BigInt {
    let qb = BigInt::from(q);
    qpow(q, n + 1) - qpow(q, n) + sign(n + 1) * (qb - 1)
}

/// `q^{n+1} - q^n + (-1)^{n+1}(-1)^{floor(n/2)}(q - (-1)^n)`.
fn unitary_numerator(n: u32, q: u64) -> BigInt {
    let qb = BigInt::from(q);
    qpow(q, n + 1) - qpow(q, n) + sign(n + 1) * sign(n / 2) * (qb - sign(n))
}

pub fn rs_gl(n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    let qb = check(n, q)?;
    exact_div(linear_numerator(n, q), qb + 1, Family::Gl, n, q)
}

pub fn rs_sl(n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    let qb = check(n, q)?;
    let den = &qb * &qb - 1;
    if n % 2 == 1 || q.is_multiple_of(2) {
        exact_div(linear_numerator(n, q), den, Family::Sl, n, q)
    } else {
        let num = qpow(q, n + 1) - qpow(q, n) - (qb - 1);
        Ok(exact_div(num, den, Family::Sl, n, q)? - 1)
    }
}

pub fn rs_u(n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    let qb = check(n, q)?;
    let num = (&qb + 1) * unitary_numerator(n, q);
    exact_div(num, &qb * &qb + 1, Family::U, n, q)
}

pub fn rs_su(n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    let qb = check(n, q)?;
    let den = &qb * &qb + 1;
    if n % 2 == 1 || q.is_multiple_of(2) {
        exact_div(unitary_numerator(n, q), den, Family::Su, n, q)
    } else {
        let eps = sign(n / 2);
        let num = qpow(q, n + 1) - qpow(q, n) - &eps * (qb - 1);
        Ok(exact_div(num, den, Family::Su, n, q)? + eps)
    }
}

/// `Sp(2n, q)`.
pub fn rs_sp(n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    let qb = check(n, q)?;
    if q.is_multiple_of(2) {
        let num = (&qb - 1) * (qpow(q, n) + sign(n - 1));
        exact_div(num, qb + 1, Family::Sp, n, q)
    } else {
        let tail: BigInt = (0..n).map(|i| sign(i) * big(2 * i as i64 + 1) * qpow(q, n - i)).sum();
        Ok(sign(n) * big(n as i64 + 1) + tail)
    }
}

/// `SO(2n+1, q)`. In even characteristic this group is isomorphic to `Sp(2n, q)`.
pub fn rs_so_odd_dim(n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    let qb = check(n, q)?;
    if q.is_multiple_of(2) {
        return rs_sp(n, q);
    }
    Ok(match n {
        1 => qb,
        2 => &qb * &qb - &qb - 1,
        _ => {
            // q^n - q^{n-1} - q^{n-2} + 3q^{n-3} - 5q^{n-4} + ... + (-1)^n (2n-5) q
            let interior: BigInt = (2..n)
                .map(|j| -sign(j) * big(2 * j as i64 - 3) * qpow(q, n - j))
                .sum();
            qpow(q, n) - qpow(q, n - 1) + interior - sign(n) * big(n as i64 - 1)
        }
    })
}

/// `SO+(2n, q)` for `plus`, `SO-(2n, q)` otherwise.
pub fn rs_so_even_dim(plus: bool, n: u32, q: u64) -> Result<BigInt, ClosedFormError> {
    let qb = check(n, q)?;
    let pm = if plus { big(1) } else { big(-1) };
    if q.is_multiple_of(2) {
        return Ok(if n == 1 {
            qb - pm
        } else {
            qpow(q, n) - qpow(q, n - 1) - pm * sign(n) * (qb - 1)
        });
    }
    let q2 = &qb * &qb;
    let q3 = &q2 * &qb;
    Ok(match (n, plus) {
        (1, _) => qb - pm,
        (2, true) => q2 - 2 * &qb + 3,
        (2, false) => q2 - 1,
        (3, true) => q3 - q2 + 2 * &qb - 4,
        (3, false) => q3 - q2,
        _ => {
            // q^n - q^{n-1} + q^{n-2} - 3q^{n-3} + 5q^{n-4} - ... ± (2n-7) q^2
            let head: BigInt = qpow(q, n) - qpow(q, n - 1)
                + (2..=n - 2)
                    .map(|j| sign(j) * big(2 * j as i64 - 3) * qpow(q, n - j))
                    .sum::<BigInt>();
            let m = n as i64;
            // Linear and constant tails; every numerator below is even in its case.
            let (lin2, con2) = match (n.is_multiple_of(2), plus) {
                (true, true) => (-(5 * m - 10), 3 * m),
                (false, true) => (5 * m - 11, -(3 * m - 1)),
                (true, false) => (-(3 * m - 10), m - 4),
                (false, false) => (3 * m - 9, -(m - 3)),
            };
            head + big(lin2 / 2) * &qb + big(con2 / 2)
        }
    })
}

pub fn rs(g: &GroupSpec) -> Result<BigInt, ClosedFormError> {
    let GroupSpec { family, n, q } = *g;
    match family {
        Family::Gl => rs_gl(n, q),
        Family::Sl => rs_sl(n, q),
        Family::U => rs_u(n, q),
        Family::Su => rs_su(n, q),
        Family::Sp => rs_sp(n, q),
        Family::SoOdd => rs_so_odd_dim(n, q),
        Family::SoPlus => rs_so_even_dim(true, n, q),
        Family::SoMinus => rs_so_even_dim(false, n, q),
    }
}

/// `Σ_{j=lo}^{hi} (-1)^{j-lo} Q^{n-step*j}`.
fn alternating(n: u32, step: u32, lo: u32, hi: u32) -> QPoly {
    (lo..=hi).fold(QPoly::zero(), |acc, j| {
        let c = if (j - lo).is_multiple_of(2) { 1 } else { -1 };
        &acc + &QPoly::monomial(c, (n - step * j) as usize)
    })
}

/// The count as an explicit polynomial in `Q`, for GL, SL and U.
///
/// SL at even `n` depends on the parity of `q`; the other forms ignore it.
pub fn rs_symbolic(family: Family, n: u32, parity: Parity) -> Result<QPoly, ClosedFormError> {
    if n == 0 {
        return Err(ClosedFormError::ZeroRank);
    }
    let s = sign(n);
    match family {
        Family::Gl => {
            // Q^n - 2(Q^{n-1} - Q^{n-2} + ... ± Q) + (-1)^n
            let inner = if n > 1 { alternating(n, 1, 1, n - 1) } else { QPoly::zero() };
            Ok(&(&QPoly::monomial(1, n as usize) - &inner.scale(&big(2))) + &QPoly::constant(s))
        }
        Family::Sl => {
            let body = if n > 1 { alternating(n, 1, 1, n - 1) } else { QPoly::zero() };
            let constant = if n.is_multiple_of(2) && parity == Parity::Odd { big(-2) } else { -s };
            Ok(&body + &QPoly::constant(constant))
        }
        Family::U if n.is_multiple_of(2) => {
            let inner = if n >= 4 { alternating(n, 2, 1, n / 2 - 1) } else { QPoly::zero() };
            let top = &QPoly::monomial(1, n as usize) - &inner.scale(&big(2));
            Ok(&top + &QPoly::constant(sign(n / 2)))
        }
        Family::U if n >= 3 => {
            let inner = if n >= 5 { alternating(n, 2, 1, (n - 3) / 2) } else { QPoly::zero() };
            let top = &QPoly::monomial(1, n as usize) - &inner.scale(&big(2));
            Ok(&top + &QPoly::from_coeffs(&[1, 2]).scale(&sign((n - 1) / 2)))
        }
        Family::U => Err(ClosedFormError::OutsideSymbolicRange {
            family,
            requirement: "n >= 2",
        }),
        _ => Err(ClosedFormError::NoSymbolicForm(family)),
    }
}
