//! Univariate polynomials over a [`FieldSpec`].

use std::fmt;

use super::field::{Elem, FieldSpec};
use super::AlgebraError;

/// Polynomial with coefficients lowest degree first. The zero polynomial has
/// no coefficients; otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Elem::ONE)
    }

    /// The indeterminate `z`.
    pub fn z() -> Poly {
        Poly {
            coeffs: vec![Elem::ZERO, Elem::ONE],
        }
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from coefficient indices, lowest degree first.
    pub fn from_indices(field: &FieldSpec, indices: &[u32]) -> Result<Poly, AlgebraError> {
        let coeffs = indices
            .iter()
            .map(|&i| field.element(i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }

    /// `z - a`.
    pub fn linear(field: &FieldSpec, root: Elem) -> Poly {
        Poly::new(vec![field.neg(root), Elem::ONE])
    }

    /// The monic polynomial of the given degree whose lower coefficients are the
    /// base-q digits of `index` (constant term least significant).
    pub fn monic_from_index(field: &FieldSpec, degree: usize, mut index: u64) -> Poly {
        let q = field.q() as u64;
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(Elem((index % q) as u32));
            index /= q;
        }
        coeffs.push(Elem::ONE);
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    pub fn constant_term(&self) -> Elem {
        self.coeff(0)
    }

    pub fn add(&self, field: &FieldSpec, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, field: &FieldSpec) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, field: &FieldSpec, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, field: &FieldSpec, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&x| field.mul(x, c)).collect())
    }

    pub fn mul(&self, field: &FieldSpec, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, field: &FieldSpec, divisor: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let inv_lead = field.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = field.mul(c, inv_lead);
            quot[top - dd] = factor;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = field.sub(rem[idx], field.mul(factor, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, field: &FieldSpec, divisor: &Poly) -> Result<Poly, AlgebraError> {
        Ok(self.div_rem(field, divisor)?.1)
    }

    /// Scales a nonzero polynomial to leading coefficient 1.
    pub fn monic(&self, field: &FieldSpec) -> Result<Poly, AlgebraError> {
        let inv = field.inv(self.lead())?;
        Ok(self.scale(field, inv))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, field: &FieldSpec, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("b is nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(field).expect("a is nonzero")
        }
    }

    pub fn derivative(&self, field: &FieldSpec) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.mul(field.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, field: &FieldSpec, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, field: &FieldSpec, mut e: u64, modulus: &Poly) -> Result<Poly, AlgebraError> {
        let mut base = self.rem(field, modulus)?;
        let mut acc = Poly::one().rem(field, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base).rem(field, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Text form `q=<q>: c0,c1,...` with coefficient indices lowest first.
    pub fn to_text(&self, field: &FieldSpec) -> String {
        let body: Vec<String> = if self.is_zero() {
            vec!["0".into()]
        } else {
            self.coeffs.iter().map(|c| c.index().to_string()).collect()
        };
        format!("q={}: {}", field.q(), body.join(","))
    }

    /// Parses the text form produced by [`Poly::to_text`], returning the field
    /// order from the header and the polynomial.
    pub fn parse_text(text: &str) -> Result<(u64, Vec<u32>), AlgebraError> {
        let bad = || AlgebraError::BadPolynomialText(text.to_string());
        let (header, body) = text.split_once(':').ok_or_else(bad)?;
        let q = header
            .trim()
            .strip_prefix("q=")
            .and_then(|s| s.trim().parse::<u64>().ok())
            .ok_or_else(bad)?;
        let coeffs = body
            .split(',')
            .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((q, coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.index()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "z")?,
                (1, v) => write!(f, "{v}z")?,
                (_, 1) => write!(f, "z^{i}")?,
                (_, v) => write!(f, "{v}z^{i}")?,
            }
        }
        Ok(())
    }
}

fn require_monic_nonconstant(f: &Poly) -> Result<usize, AlgebraError> {
    match f.degree() {
        None => Err(AlgebraError::ZeroPolynomial),
        Some(0) => Err(AlgebraError::ConstantPolynomial),
        Some(_) if !f.is_monic() => Err(AlgebraError::NotMonic),
        Some(d) => Ok(d),
    }
}

/// `gcd(f, f') = 1`. A vanishing derivative gives `gcd = f`, so p-th powers
/// are correctly reported as not squarefree.
pub fn is_squarefree(field: &FieldSpec, f: &Poly) -> Result<bool, AlgebraError> {
    require_monic_nonconstant(f)?;
    Ok(f.gcd(field, &f.derivative(field)).degree() == Some(0))
}

/// Distinct-degree test: `f` of degree n is irreducible iff it shares no factor
/// with `z^{q^i} - z` for `1 <= i <= n/2`.
pub fn is_irreducible(field: &FieldSpec, f: &Poly) -> Result<bool, AlgebraError> {
    let n = require_monic_nonconstant(f)?;
    if n == 1 {
        return Ok(true);
    }
    if f.constant_term().is_zero() {
        return Ok(false);
    }
    let q = field.q() as u64;
    let z = Poly::z();
    let mut h = z.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(field, q, f)?;
        let g = h.sub(field, &z).gcd(field, f);
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}
