//! Table-driven arithmetic in GF(p^k).
//!
//! An element is stored as its index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
//! where `c_i` are the coordinates in the polynomial basis `1, z, ..., z^{k-1}`
//! modulo the defining polynomial. Index order is the deterministic element
//! order used everywhere (generator choice, enumeration order, text form).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::poly::{is_irreducible, Poly};
use super::AlgebraError;

/// Largest field size that [`FieldSpec::new`] will build tables for.
pub const DEFAULT_MAX_FIELD_SIZE: u32 = 1024;

/// An element of a finite field, identified by its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field GF(p^k) together with its addition and log/antilog tables.
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Defining polynomial over GF(p), lowest degree first, monic of degree k.
    modulus: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    /// `exp[i] = g^i` for the generator `g`, `0 <= i < q - 1`.
    exp: Vec<u16>,
    /// Discrete log base `g`; `log[0]` is unused.
    log: Vec<u32>,
    generator: Elem,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl FieldSpec {
    /// Builds GF(p^k) with the least irreducible modulus and the default size bound.
    pub fn new(p: u32, k: u32) -> Result<FieldSpec, AlgebraError> {
        FieldSpec::with_bound(p, k, DEFAULT_MAX_FIELD_SIZE)
    }

    pub fn with_bound(p: u32, k: u32, max_size: u32) -> Result<FieldSpec, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        if k < 1 {
            return Err(AlgebraError::ZeroExtensionDegree);
        }
        let bound = max_size.min(u16::MAX as u32 + 1);
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= bound as u64)
            .ok_or(AlgebraError::FieldTooLarge { p, k, bound })? as u32;

        let prime = FieldSpec::prime(p);
        if k == 1 {
            return Ok(prime);
        }
        let modulus = least_irreducible(&prime, k as usize);
        Ok(FieldSpec::extension(p, k, q, modulus))
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn from_order(q: u64) -> Result<FieldSpec, AlgebraError> {
        let (p, k) = prime_power(q).ok_or(AlgebraError::NotPrimePower(q))?;
        if p > u32::MAX as u64 {
            return Err(AlgebraError::FieldTooLarge {
                p: u32::MAX,
                k,
                bound: DEFAULT_MAX_FIELD_SIZE,
            });
        }
        FieldSpec::new(p as u32, k)
    }

    /// Shared, lazily built field of order `q`.
    pub fn cached(q: u64) -> Result<Arc<FieldSpec>, AlgebraError> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldSpec>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().expect("field cache poisoned").get(&q) {
            return Ok(Arc::clone(f));
        }
        let built = Arc::new(FieldSpec::from_order(q)?);
        let mut guard = cache.lock().expect("field cache poisoned");
        Ok(Arc::clone(guard.entry(q).or_insert(built)))
    }

    fn prime(p: u32) -> FieldSpec {
        let q = p as usize;
        let mut add = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = ((a + b) % q) as u16;
            }
        }
        let neg = (0..q).map(|a| ((q - a) % q) as u16).collect();
        let mul = |a: u32, b: u32| ((a as u64 * b as u64) % p as u64) as u32;
        let generator = (1..p)
            .find(|&g| multiplicative_order(g, 1, mul) == p - 1)
            .expect("prime field has a primitive element");
        let (exp, log) = power_tables(p, generator, mul);
        FieldSpec {
            p,
            k: 1,
            q: p,
            modulus: vec![0, 1],
            add,
            neg,
            exp,
            log,
            generator: Elem(generator),
        }
    }

    fn extension(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> FieldSpec {
        let qs = q as usize;
        let digits = |mut x: u32| {
            let mut d = vec![0u32; k as usize];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);

        let mut add = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..q {
            let da = digits(a);
            neg[a as usize] = undigits(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as u16;
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&s) as u16;
            }
        }

        // Schoolbook product of coordinate vectors reduced by the monic modulus.
        let mul = |a: u32, b: u32| {
            let (da, db) = (digits(a), digits(b));
            let kk = k as usize;
            let mut prod = vec![0u64; 2 * kk - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
                }
            }
            for top in (kk..prod.len()).rev() {
                let c = prod[top];
                if c == 0 {
                    continue;
                }
                prod[top] = 0;
                for (i, &m) in modulus[..kk].iter().enumerate() {
                    let idx = top - kk + i;
                    prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
                }
            }
            let red: Vec<u32> = prod[..kk].iter().map(|&c| c as u32).collect();
            undigits(&red)
        };
        let generator = (1..q)
            .find(|&g| multiplicative_order(g, 1, mul) == q - 1)
            .expect("finite field has a primitive element");
        let (exp, log) = power_tables(q, generator, mul);
        FieldSpec {
            p,
            k,
            q,
            modulus,
            add,
            neg,
            exp,
            log,
            generator: Elem(generator),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial over GF(p), lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_even_characteristic(&self) -> bool {
        self.p == 2
    }

    /// Least element (by index) of multiplicative order `q - 1`.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(Elem)
    }

    pub fn element(&self, index: u32) -> Result<Elem, AlgebraError> {
        if index < self.q {
            Ok(Elem(index))
        } else {
            Err(AlgebraError::ElementOutOfRange { index, q: self.q })
        }
    }

    /// Coordinates over GF(p) in the polynomial basis, lowest first.
    pub fn coordinates(&self, x: Elem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coordinates(&self, coords: &[u32]) -> Result<Elem, AlgebraError> {
        if coords.len() != self.k as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(AlgebraError::BadCoordinates);
        }
        Ok(Elem(coords.iter().rev().fold(0, |acc, &c| acc * self.p + c)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.0 as usize * self.q as usize + b.0 as usize] as u32)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize] as u32)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(if s >= n { s - n } else { s }) as usize] as u32)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, AlgebraError> {
        if a.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((n - l) % n) as usize] as u32))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, AlgebraError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        Elem(self.exp[l as usize] as u32)
    }

    /// Discrete logarithm base the generator, for nonzero `a`.
    pub fn log(&self, a: Elem) -> Result<u32, AlgebraError> {
        if a.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u32, AlgebraError> {
        let l = self.log(a)?;
        let n = self.q - 1;
        Ok(n / gcd_u32(n, l))
    }

    /// Quadratic character on nonzero elements: `true` for squares.
    pub fn is_square(&self, a: Elem) -> Result<bool, AlgebraError> {
        let l = self.log(a)?;
        Ok(self.p == 2 || l % 2 == 0)
    }

    /// The relative Frobenius `x -> x^{q0}` for a subfield of order `q0`.
    pub fn frobenius(&self, sub_order: u64, x: Elem) -> Result<Elem, AlgebraError> {
        match prime_power(sub_order) {
            Some((p, j)) if p == self.p as u64 && self.k.is_multiple_of(j) => Ok(self.pow(x, sub_order)),
            _ => Err(AlgebraError::NotASubfield {
                sub_order,
                q: self.q,
            }),
        }
    }
}

fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn multiplicative_order(g: u32, one: u32, mul: impl Fn(u32, u32) -> u32) -> u32 {
    let mut x = g;
    let mut n = 1;
    while x != one {
        x = mul(x, g);
        n += 1;
    }
    n
}

fn power_tables(q: u32, g: u32, mul: impl Fn(u32, u32) -> u32) -> (Vec<u16>, Vec<u32>) {
    let n = (q - 1) as usize;
    let mut exp = vec![0u16; n];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = x as u16;
        log[x as usize] = i as u32;
        x = mul(x, g);
    }
    (exp, log)
}

/// Least monic irreducible of degree `k` over the prime field, ordered by the
/// index of its lower coefficients.
fn least_irreducible(prime: &FieldSpec, k: usize) -> Vec<u32> {
    let total = (prime.q() as u64).pow(k as u32);
    (0..total)
        .map(|idx| Poly::monic_from_index(prime, k, idx))
        .find(|f| is_irreducible(prime, f).unwrap_or(false))
        .map(|f| f.coeffs().iter().map(|c| c.index()).collect())
        .expect("irreducible polynomials exist in every degree")
}
