//! Conjugation operators on polynomials with nonzero constant term.
//!
//! The `*`-conjugate over GF(q) inverts roots (`α -> α^{-1}`); the `~`-conjugate
//! over GF(q²) sends `α -> α^{-q}`. Fixed points of these involutions are the
//! characteristic polynomials of symplectic/orthogonal and unitary elements.

use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FieldSpec, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("polynomial must be monic with nonzero constant term")]
    NotAdmissible,
    #[error("GF({field_q}) is not the quadratic extension of GF({base_q})")]
    NotQuadratic { field_q: u32, base_q: u64 },
    #[error("{value} is not in the cyclic subgroup generated by {base}")]
    NotInSubgroup { value: u32, base: u32 },
    #[error("z-1 and z+1 carry no fixed type sign")]
    EigenvalueBlock,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_admissible(f: &Poly) -> Result<usize, DualError> {
    match f.degree() {
        Some(d) if d >= 1 && f.is_monic() && !f.constant_term().is_zero() => Ok(d),
        _ => Err(DualError::NotAdmissible),
    }
}

fn check_quadratic(field: &FieldSpec, base_q: u64) -> Result<(), DualError> {
    if base_q.checked_mul(base_q) == Some(field.q() as u64) {
        Ok(())
    } else {
        Err(DualError::NotQuadratic {
            field_q: field.q(),
            base_q,
        })
    }
}

/// `f(0)^{-1} z^n f(1/z)`: the coefficient of `z^{n-i}` is `a_i / a_0`.
pub fn star_conjugate(field: &FieldSpec, f: &Poly) -> Result<Poly, DualError> {
    check_admissible(f)?;
    let inv0 = field.inv(f.constant_term())?;
    Ok(Poly::new(
        f.coeffs().iter().rev().map(|&c| field.mul(c, inv0)).collect(),
    ))
}

/// `f(0)^{-σ} z^n f^σ(1/z)` with `σ: x -> x^{base_q}`.
pub fn tilde_conjugate(field: &FieldSpec, base_q: u64, f: &Poly) -> Result<Poly, DualError> {
    check_quadratic(field, base_q)?;
    check_admissible(f)?;
    let inv0 = field.inv(f.constant_term())?;
    let coeffs = f
        .coeffs()
        .iter()
        .rev()
        .map(|&c| field.frobenius(base_q, field.mul(c, inv0)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

pub fn is_star_self_conjugate(field: &FieldSpec, f: &Poly) -> bool {
    star_conjugate(field, f).is_ok_and(|g| &g == f)
}

pub fn is_tilde_self_conjugate(field: &FieldSpec, base_q: u64, f: &Poly) -> bool {
    tilde_conjugate(field, base_q, f).is_ok_and(|g| &g == f)
}

/// A monic polynomial over GF(q) with nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarPoly(Poly);

impl StarPoly {
    pub fn new(poly: Poly) -> Result<StarPoly, DualError> {
        check_admissible(&poly)?;
        Ok(StarPoly(poly))
    }

    pub fn conjugate(&self, field: &FieldSpec) -> StarPoly {
        StarPoly(star_conjugate(field, &self.0).expect("admissible by construction"))
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }
}

/// A monic polynomial over GF(q²) with nonzero constant term, together with q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TildePoly {
    poly: Poly,
    base_q: u64,
}

impl TildePoly {
    pub fn new(field: &FieldSpec, base_q: u64, poly: Poly) -> Result<TildePoly, DualError> {
        check_quadratic(field, base_q)?;
        check_admissible(&poly)?;
        Ok(TildePoly { poly, base_q })
    }

    pub fn conjugate(&self, field: &FieldSpec) -> TildePoly {
        TildePoly {
            poly: tilde_conjugate(field, self.base_q, &self.poly).expect("admissible by construction"),
            base_q: self.base_q,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn base_q(&self) -> u64 {
        self.base_q
    }
}

/// A residue class modulo `q - 1` or `q + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharacterIndex {
    pub modulus: u64,
    pub value: u64,
}

impl CharacterIndex {
    pub fn new(modulus: u64, value: u64) -> CharacterIndex {
        CharacterIndex {
            modulus,
            value: value % modulus,
        }
    }

    pub fn add(self, other: CharacterIndex) -> CharacterIndex {
        debug_assert_eq!(self.modulus, other.modulus);
        CharacterIndex::new(self.modulus, self.value + other.value)
    }
}

/// Least `e` in `[0, order)` with `base^e = target`, by linear scan.
pub fn discrete_log(field: &FieldSpec, base: Elem, target: Elem, order: u64) -> Result<u64, DualError> {
    let mut x = Elem::ONE;
    for e in 0..order {
        if x == target {
            return Ok(e);
        }
        x = field.mul(x, base);
    }
    Err(DualError::NotInSubgroup {
        value: target.index(),
        base: base.index(),
    })
}

/// `(-1)^{deg f} f(0)`, the quantity both labels are logarithms of.
fn signed_constant(field: &FieldSpec, f: &Poly) -> Elem {
    let c = f.constant_term();
    if f.degree().unwrap_or(0) % 2 == 1 {
        field.neg(c)
    } else {
        c
    }
}

/// `r(f)`: discrete log base `zeta` of `(-1)^{deg f} f(0)`, modulo `q - 1`.
pub fn r_label(field: &FieldSpec, f: &Poly, zeta: Elem) -> Result<CharacterIndex, DualError> {
    check_admissible(f)?;
    let modulus = field.q() as u64 - 1;
    let value = discrete_log(field, zeta, signed_constant(field, f), modulus)?;
    Ok(CharacterIndex::new(modulus, value))
}

/// Generator of the order-(q+1) subgroup of GF(q²)*: `g^{q-1}` for the field
/// generator `g`.
pub fn unitary_zeta(field: &FieldSpec, base_q: u64) -> Result<Elem, DualError> {
    check_quadratic(field, base_q)?;
    Ok(field.pow(field.generator(), base_q - 1))
}

/// `s(f)` modulo `q + 1`: the log of `(-1)^{deg f} f(0)` when `f` is
/// `~`-self-conjugate and of `f(0) f~(0)` otherwise.
pub fn s_label(field: &FieldSpec, base_q: u64, f: &Poly, zeta: Elem) -> Result<CharacterIndex, DualError> {
    let conj = tilde_conjugate(field, base_q, f)?;
    let value = if &conj == f {
        signed_constant(field, f)
    } else {
        field.mul(f.constant_term(), conj.constant_term())
    };
    let modulus = base_q + 1;
    Ok(CharacterIndex::new(modulus, discrete_log(field, zeta, value, modulus)?))
}

/// A building block of an orthogonal characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// A `*`-self-conjugate irreducible.
    SelfConjugate(Poly),
    /// An unordered pair `{φ, φ*}` with `φ != φ*`.
    Pair(Poly, Poly),
}

impl Block {
    pub fn dimension(&self) -> usize {
        match self {
            Block::SelfConjugate(f) => f.degree().unwrap_or(0),
            Block::Pair(f, g) => f.degree().unwrap_or(0) + g.degree().unwrap_or(0),
        }
    }
}

/// Quadratic-space type of the summand attached to a block: `-1` for a
/// self-conjugate irreducible, `+1` for a conjugate pair.
pub fn type_sign(block: &Block) -> Result<i8, DualError> {
    match block {
        Block::SelfConjugate(f) if f.degree() == Some(1) => Err(DualError::EigenvalueBlock),
        Block::SelfConjugate(_) => Ok(-1),
        Block::Pair(..) => Ok(1),
    }
}
