//! Counts of the irreducible-polynomial families that appear as exponents in
//! the class-counting products:
//!
//! | kind      | counts                                                        |
//! |-----------|---------------------------------------------------------------|
//! | `N`       | monic irreducibles over GF(q) with nonzero constant term      |
//! | `N_tilde` | `~`-self-conjugate monic irreducibles over GF(q²)             |
//! | `M_tilde` | unordered pairs `{φ, φ~}`, `φ != φ~`, over GF(q²)              |
//! | `N_star`  | `*`-self-conjugate monic irreducibles over GF(q)              |
//! | `M_star`  | unordered pairs `{φ, φ*}`, `φ != φ*`, over GF(q)               |
//!
//! Two independent routes are provided: exhaustive enumeration (with
//! witnesses) and a closed count of Frobenius orbits of roots.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{is_irreducible, prime_power, AlgebraError, Elem, FieldSpec, Poly};
use crate::dual::{is_star_self_conjugate, is_tilde_self_conjugate};

/// Default bound on the number of candidate polynomials an enumeration may test.
pub const DEFAULT_ENUM_CAP: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("enumeration needs {needed} candidates, above the cap {cap}")]
    BoundExceeded { needed: u128, cap: u64 },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("count overflows for q={q}, d={d}")]
    Overflow { q: u64, d: usize },
    #[error("enumeration ({enumerated}) and formula ({formula}) disagree for {kind} q={q} d={d}")]
    MethodsDisagree {
        kind: CensusKind,
        q: u64,
        d: usize,
        enumerated: u128,
        formula: u128,
    },
    #[error("unknown census kind {0:?}")]
    UnknownKind(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CensusKind {
    #[serde(rename = "N")]
    N,
    #[serde(rename = "N_tilde")]
    NTilde,
    #[serde(rename = "M_tilde")]
    MTilde,
    #[serde(rename = "N_star")]
    NStar,
    #[serde(rename = "M_star")]
    MStar,
}

impl CensusKind {
    pub const ALL: [CensusKind; 5] = [
        CensusKind::N,
        CensusKind::NTilde,
        CensusKind::MTilde,
        CensusKind::NStar,
        CensusKind::MStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CensusKind::N => "N",
            CensusKind::NTilde => "N_tilde",
            CensusKind::MTilde => "M_tilde",
            CensusKind::NStar => "N_star",
            CensusKind::MStar => "M_star",
        }
    }

    /// True for the censuses counted over GF(q^2).
    pub fn over_quadratic_extension(self) -> bool {
        matches!(self, CensusKind::NTilde | CensusKind::MTilde)
    }
}

impl fmt::Display for CensusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CensusKind {
    type Err = CensusError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CensusKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CensusError::UnknownKind(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMethod {
    Enumerate,
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusCount {
    pub kind: CensusKind,
    pub q: u64,
    pub d: usize,
    pub count: u128,
    /// One polynomial per counted object (the lesser member of each pair);
    /// present only for enumeration.
    pub witnesses: Option<Vec<Poly>>,
}

fn index_order(a: &Poly, b: &Poly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

fn checked_pow(q: u64, e: usize) -> Option<u128> {
    (q as u128).checked_pow(e as u32)
}

fn require_cap(needed: Option<u128>, cap: u64) -> Result<(), CensusError> {
    match needed {
        Some(n) if n <= cap as u128 => Ok(()),
        Some(n) => Err(CensusError::BoundExceeded { needed: n, cap }),
        None => Err(CensusError::BoundExceeded {
            needed: u128::MAX,
            cap,
        }),
    }
}

/// All monic irreducibles of degree `d` in index order, optionally excluding
/// `z` itself.
pub fn irreducibles(field: &FieldSpec, d: usize, nonzero_constant: bool, cap: u64) -> Result<Vec<Poly>, CensusError> {
    if d == 0 {
        return Err(CensusError::ZeroDegree);
    }
    let total = checked_pow(field.q() as u64, d);
    require_cap(total, cap)?;
    let mut out = Vec::new();
    for idx in 0..total.expect("checked above") as u64 {
        let f = Poly::monic_from_index(field, d, idx);
        if nonzero_constant && f.constant_term().is_zero() {
            continue;
        }
        if is_irreducible(field, &f)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Number of candidates [`census_count`] tests when enumerating.
///
/// Pair kinds scan every monic polynomial of degree `d` (over GF(q²) for
/// `M_tilde`). Self-conjugate kinds only scan polynomials whose upper
/// coefficients are forced by the lower half.
pub fn enumeration_size(kind: CensusKind, q: u64, d: usize) -> Option<u128> {
    let half = d / 2;
    match kind {
        CensusKind::N | CensusKind::MStar => checked_pow(q, d),
        CensusKind::MTilde => checked_pow(q.checked_mul(q)?, d),
        CensusKind::NStar => checked_pow(q, half)?.checked_mul(2),
        CensusKind::NTilde => checked_pow(q.checked_mul(q)?, half)?.checked_mul(q as u128 + 1),
    }
}

/// Monic `*`-self-conjugate polynomials of degree `d`, generated from their
/// lower halves.
pub fn star_self_conjugates(field: &FieldSpec, d: usize) -> Vec<Poly> {
    let one = Elem::ONE;
    let mut constants = vec![one];
    if !field.is_even_characteristic() {
        constants.push(field.neg(one));
    }
    let mirror = |c: Elem, a0: Elem| field.mul(c, a0);
    generate_half_determined(field, d, &constants, mirror)
        .into_iter()
        .filter(|f| is_star_self_conjugate(field, f))
        .collect()
}

/// Monic `~`-self-conjugate polynomials of degree `d` over GF(q²).
pub fn tilde_self_conjugates(field: &FieldSpec, base_q: u64, d: usize) -> Vec<Poly> {
    let constants: Vec<Elem> = field
        .nonzero_elements()
        .filter(|&c| field.pow(c, base_q + 1) == Elem::ONE)
        .collect();
    let mirror = |c: Elem, a0: Elem| {
        let inv = field.inv(a0).expect("nonzero constant");
        field.pow(field.mul(c, inv), base_q)
    };
    generate_half_determined(field, d, &constants, mirror)
        .into_iter()
        .filter(|f| is_tilde_self_conjugate(field, base_q, f))
        .collect()
}

/// For each admissible constant `a0` and each choice of `a_1..a_{d/2}`, sets
/// `a_{d-i} = mirror(a_i, a0)` for `i < d - i`.
fn generate_half_determined(
    field: &FieldSpec,
    d: usize,
    constants: &[Elem],
    mirror: impl Fn(Elem, Elem) -> Elem,
) -> Vec<Poly> {
    let q = field.q() as u64;
    let half = d / 2;
    let mut out = Vec::new();
    for &a0 in constants {
        for idx in 0..q.pow(half as u32) {
            let mut coeffs = vec![Elem::ZERO; d + 1];
            coeffs[0] = a0;
            coeffs[d] = Elem::ONE;
            let mut rest = idx;
            for i in 1..=half {
                coeffs[i] = Elem((rest % q) as u32);
                rest /= q;
            }
            for i in 1..=half {
                if i < d - i {
                    coeffs[d - i] = mirror(coeffs[i], a0);
                }
            }
            out.push(Poly::new(coeffs));
        }
    }
    out
}

/// Exhaustive census with witnesses.
fn enumerate(kind: CensusKind, q: u64, d: usize, cap: u64) -> Result<Vec<Poly>, CensusError> {
    require_cap(enumeration_size(kind, q, d), cap)?;
    let base = FieldSpec::cached(q)?;
    let witnesses = match kind {
        CensusKind::N => irreducibles(&base, d, true, cap)?,
        CensusKind::MStar => irreducibles(&base, d, true, cap)?
            .into_iter()
            .filter(|f| {
                let conj = crate::dual::star_conjugate(&base, f).expect("nonzero constant");
                index_order(f, &conj).is_lt()
            })
            .collect(),
        CensusKind::NStar => {
            let mut v: Vec<Poly> = star_self_conjugates(&base, d)
                .into_iter()
                .filter(|f| is_irreducible(&base, f).unwrap_or(false))
                .collect();
            v.sort_by(index_order);
            v
        }
        CensusKind::NTilde => {
            let ext = FieldSpec::cached(q * q)?;
            let mut v: Vec<Poly> = tilde_self_conjugates(&ext, q, d)
                .into_iter()
                .filter(|f| is_irreducible(&ext, f).unwrap_or(false))
                .collect();
            v.sort_by(index_order);
            v
        }
        CensusKind::MTilde => {
            let ext = FieldSpec::cached(q * q)?;
            irreducibles(&ext, d, true, cap)?
                .into_iter()
                .filter(|f| {
                    let conj = crate::dual::tilde_conjugate(&ext, q, f).expect("nonzero constant");
                    index_order(f, &conj).is_lt()
                })
                .collect()
        }
    };
    Ok(witnesses)
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |e| n.is_multiple_of(*e))
}

fn mobius(n: usize) -> i128 {
    let (mut n, mut p, mut sign) = (n, 2, 1);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `Σ_{j | m} μ(m/j) size(j)`: elements of exact degree `m` among nested sets
/// whose intersection with GF(base^j) has `size(j)` elements.
fn exact_degree_elements(m: usize, size: impl Fn(usize) -> Option<u128>) -> Option<u128> {
    let mut acc: i128 = 0;
    for j in divisors(m) {
        let s = i128::try_from(size(j)?).ok()?;
        acc = acc.checked_add(mobius(m / j).checked_mul(s)?)?;
    }
    u128::try_from(acc).ok()
}

/// Monic irreducibles of degree `d` over GF(q) (including `z`).
fn necklace(q: u64, d: usize) -> Option<u128> {
    Some(exact_degree_elements(d, |j| checked_pow(q, j))? / d as u128)
}

fn formula(kind: CensusKind, q: u64, d: usize) -> Option<u128> {
    let nonzero = |q: u64| Some(necklace(q, d)? - u128::from(d == 1));
    // Elements α with α^{q^h + 1} = 1 lying in GF(q^j): gcd(q^h + 1, q^j - 1).
    let in_twisted = |h: usize, j: usize| -> Option<u128> {
        Some(gcd_u128(checked_pow(q, h)?.checked_add(1)?, checked_pow(q, j)? - 1))
    };
    let n_star = |d: usize| -> Option<u128> {
        match d {
            1 => Some(if q.is_multiple_of(2) { 1 } else { 2 }),
            _ if d % 2 == 1 => Some(0),
            _ => {
                let h = d / 2;
                Some(exact_degree_elements(d, |j| in_twisted(h, j))? / d as u128)
            }
        }
    };
    // Roots of a ~-self-conjugate irreducible of degree d over GF(q²) satisfy
    // α^{q^d + 1} = 1, which forces d odd.
    let n_tilde = |d: usize| -> Option<u128> {
        if d.is_multiple_of(2) {
            return Some(0);
        }
        Some(exact_degree_elements(d, |j| in_twisted(d, 2 * j))? / d as u128)
    };
    match kind {
        CensusKind::N => nonzero(q),
        CensusKind::NStar => n_star(d),
        CensusKind::MStar => Some((nonzero(q)? - n_star(d)?) / 2),
        CensusKind::NTilde => n_tilde(d),
        CensusKind::MTilde => Some((nonzero(q.checked_mul(q)?)? - n_tilde(d)?) / 2),
    }
}

/// Exact size of one census family.
pub fn census_count(kind: CensusKind, q: u64, d: usize, method: CensusMethod, cap: u64) -> Result<CensusCount, CensusError> {
    if d == 0 {
        return Err(CensusError::ZeroDegree);
    }
    if prime_power(q).is_none() {
        return Err(AlgebraError::NotPrimePower(q).into());
    }
    if kind.over_quadratic_extension() && q.checked_mul(q).is_none() {
        return Err(CensusError::Overflow { q, d });
    }
    match method {
        CensusMethod::Enumerate => {
            let witnesses = enumerate(kind, q, d, cap)?;
            Ok(CensusCount {
                kind,
                q,
                d,
                count: witnesses.len() as u128,
                witnesses: Some(witnesses),
            })
        }
        CensusMethod::Formula => Ok(CensusCount {
            kind,
            q,
            d,
            count: formula(kind, q, d).ok_or(CensusError::Overflow { q, d })?,
            witnesses: None,
        }),
    }
}

/// How a cached census value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub count: u128,
    pub method: CensusMethod,
}

/// Read-mostly memo of census values.
///
/// Values within the enumeration cap are enumerated and checked against the
/// formula; larger ones come from the formula alone and are marked as such.
/// Concurrent fills of the same key compute the same value, so inserts are
/// idempotent.
pub struct CensusCache {
    cap: u64,
    map: RwLock<HashMap<(CensusKind, u64, usize), CensusEntry>>,
}

impl CensusCache {
    pub fn new(cap: u64) -> CensusCache {
        CensusCache {
            cap,
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn get(&self, kind: CensusKind, q: u64, d: usize) -> Result<CensusEntry, CensusError> {
        let key = (kind, q, d);
        if let Some(e) = self.map.read().expect("census cache poisoned").get(&key) {
            return Ok(*e);
        }
        let formula = census_count(kind, q, d, CensusMethod::Formula, self.cap)?.count;
        let within = enumeration_size(kind, q, d).is_some_and(|n| n <= self.cap as u128);
        let entry = if within {
            let enumerated = census_count(kind, q, d, CensusMethod::Enumerate, self.cap)?.count;
            if enumerated != formula {
                return Err(CensusError::MethodsDisagree {
                    kind,
                    q,
                    d,
                    enumerated,
                    formula,
                });
            }
            CensusEntry {
                count: enumerated,
                method: CensusMethod::Enumerate,
            }
        } else {
            CensusEntry {
                count: formula,
                method: CensusMethod::Formula,
            }
        };
        let mut map = self.map.write().expect("census cache poisoned");
        Ok(*map.entry(key).or_insert(entry))
    }
}
