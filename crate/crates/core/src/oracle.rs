//! Ground-truth class counts by exhaustive enumeration of characteristic
//! polynomial data.
//!
//! Nothing here uses a generating function. Linear, unitary and symplectic
//! counts scan squarefree polynomials under the appropriate constraint;
//! orthogonal counts assemble decorated data from self-conjugate irreducibles,
//! conjugate pairs and the `z ∓ 1` eigenspaces.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{is_squarefree, AlgebraError, Elem, FieldSpec, Poly};
use crate::census::{census_count, enumeration_size, star_self_conjugates, tilde_self_conjugates, CensusError, CensusKind, CensusMethod};
use crate::closedform::{ClosedFormError, Family, GroupSpec, Parity};
use crate::dual::{is_star_self_conjugate, star_conjugate, type_sign, Block, DualError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration needs {needed} candidates, above the cap {cap}")]
    BoundExceeded { needed: u128, cap: u64 },
    #[error("odd dimension {0} has no plus/minus type; use the odd-dimension target")]
    OddDimensionWithType(usize),
    #[error("SO({m},{q}) in even characteristic is isomorphic to Sp({},{q}); use the symplectic oracle", m - 1)]
    EvenCharacteristicOddDimension { m: usize, q: u64 },
    #[error("even dimension {0} needs a plus or minus target")]
    EvenDimensionWithoutType(usize),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("constant {index} is not an admissible value in GF({q})")]
    BadConstant { index: u32, q: u64 },
    #[error("enumerated datum violates an invariant: {0}")]
    Invariant(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Dual(#[from] DualError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

/// Constraint on the constant term of the enumerated polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantConstraint {
    Nonzero,
    Equals(Elem),
}

/// Outcome of one oracle run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub group: GroupSpec,
    pub count: u128,
    /// Candidates or decorated data examined.
    pub enumerated: u64,
    pub method: &'static str,
}

fn require(needed: Option<u128>, cap: u64) -> Result<(), OracleError> {
    match needed {
        Some(n) if n <= cap as u128 => Ok(()),
        Some(n) => Err(OracleError::BoundExceeded { needed: n, cap }),
        None => Err(OracleError::BoundExceeded { needed: u128::MAX, cap }),
    }
}

fn pow(q: u64, e: usize) -> Option<u128> {
    (q as u128).checked_pow(e as u32)
}

fn signed_one(field: &FieldSpec, n: usize) -> Elem {
    if n.is_multiple_of(2) {
        Elem::ONE
    } else {
        field.neg(Elem::ONE)
    }
}

fn accepts(field: &FieldSpec, c: ConstantConstraint, f: &Poly) -> Result<bool, OracleError> {
    let a0 = f.constant_term();
    match c {
        ConstantConstraint::Nonzero => Ok(!a0.is_zero()),
        ConstantConstraint::Equals(e) if e.is_zero() || e.index() >= field.q() => Err(OracleError::BadConstant {
            index: e.index(),
            q: field.q() as u64,
        }),
        ConstantConstraint::Equals(e) => Ok(a0 == e),
    }
}

/// Monic squarefree polynomials of degree `n` over GF(q) meeting the
/// constraint. GL uses `Nonzero`, SL uses `Equals((-1)^n)`.
pub fn oracle_linear(n: usize, q: u64, constraint: ConstantConstraint, cap: u64) -> Result<OracleResult, OracleError> {
    if n == 0 {
        return Err(OracleError::ZeroDimension);
    }
    let total = pow(q, n);
    require(total, cap)?;
    let field = FieldSpec::cached(q)?;
    let mut count = 0u128;
    for idx in 0..total.expect("bounded") as u64 {
        let f = Poly::monic_from_index(&field, n, idx);
        if accepts(&field, constraint, &f)? && is_squarefree(&field, &f)? {
            count += 1;
        }
    }
    let family = match constraint {
        ConstantConstraint::Nonzero => Family::Gl,
        ConstantConstraint::Equals(_) => Family::Sl,
    };
    Ok(OracleResult {
        group: GroupSpec::new(family, n as u32, q)?,
        count,
        enumerated: total.expect("bounded") as u64,
        method: "squarefree monic polynomials over GF(q)",
    })
}

/// Monic squarefree `~`-self-conjugate polynomials of degree `n` over GF(q²).
/// U uses `Nonzero`, SU uses `Equals((-1)^n)`.
pub fn oracle_unitary(n: usize, q: u64, constraint: ConstantConstraint, cap: u64) -> Result<OracleResult, OracleError> {
    if n == 0 {
        return Err(OracleError::ZeroDimension);
    }
    require(pow(q, 2 * n), cap)?;
    let ext = FieldSpec::cached(q.checked_mul(q).ok_or(AlgebraError::NotPrimePower(q))?)?;
    let candidates = tilde_self_conjugates(&ext, q, n);
    let mut count = 0u128;
    for f in &candidates {
        if accepts(&ext, constraint, f)? && is_squarefree(&ext, f)? {
            count += 1;
        }
    }
    let family = match constraint {
        ConstantConstraint::Nonzero => Family::U,
        ConstantConstraint::Equals(_) => Family::Su,
    };
    Ok(OracleResult {
        group: GroupSpec::new(family, n as u32, q)?,
        count,
        enumerated: candidates.len() as u64,
        method: "squarefree ~-self-conjugate polynomials over GF(q^2)",
    })
}

/// Monic squarefree `*`-self-conjugate polynomials of degree `2n` over GF(q)
/// with constant term 1 and no root at `±1`.
pub fn oracle_symplectic(n: usize, q: u64, cap: u64) -> Result<OracleResult, OracleError> {
    if n == 0 {
        return Err(OracleError::ZeroDimension);
    }
    require(pow(q, 2 * n), cap)?;
    let field = FieldSpec::cached(q)?;
    let minus_one = field.neg(Elem::ONE);
    let candidates = star_self_conjugates(&field, 2 * n);
    let mut count = 0u128;
    for f in &candidates {
        if f.constant_term() == Elem::ONE
            && !f.eval(&field, Elem::ONE).is_zero()
            && !f.eval(&field, minus_one).is_zero()
            && is_squarefree(&field, f)?
        {
            count += 1;
        }
    }
    Ok(OracleResult {
        group: GroupSpec::new(Family::Sp, n as u32, q)?,
        count,
        enumerated: candidates.len() as u64,
        method: "squarefree *-self-conjugate polynomials with constant term 1",
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrthogonalTarget {
    Plus,
    Minus,
    OddDim,
}

/// A decorated characteristic-polynomial datum of an orthogonal class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyDatum {
    /// Multiplicity of `z - 1`: 0, 1 or 2 (0 or 2 in even characteristic).
    pub a_minus: usize,
    /// Multiplicity of `z + 1`: 0 or 2, odd characteristic only.
    pub b_plus: usize,
    pub a_type: Option<i8>,
    pub b_type: Option<i8>,
    pub blocks: Vec<Poly>,
    pub pairs: Vec<(Poly, Poly)>,
}

impl ConjugacyDatum {
    pub fn total_dim(&self) -> usize {
        self.a_minus
            + self.b_plus
            + self.blocks.iter().map(|b| b.degree().unwrap_or(0)).sum::<usize>()
            + self.pairs.iter().map(|(f, _)| 2 * f.degree().unwrap_or(0)).sum::<usize>()
    }
}

/// A product of distinct blocks and pairs.
struct Core {
    dim: usize,
    sign: i8,
    items: Vec<usize>,
}

/// Self-conjugate irreducibles of even degree and conjugate pairs, up to
/// total dimension `m`.
fn building_blocks(field: &FieldSpec, q: u64, m: usize, cap: u64) -> Result<Vec<Block>, OracleError> {
    let mut out = Vec::new();
    for d in 1..=m / 2 {
        require(enumeration_size(CensusKind::NStar, q, 2 * d), cap)?;
        require(enumeration_size(CensusKind::MStar, q, d), cap)?;
        let selfc = census_count(CensusKind::NStar, q, 2 * d, CensusMethod::Enumerate, cap)?;
        out.extend(selfc.witnesses.unwrap_or_default().into_iter().map(Block::SelfConjugate));
        let pairs = census_count(CensusKind::MStar, q, d, CensusMethod::Enumerate, cap)?;
        for f in pairs.witnesses.unwrap_or_default() {
            let g = star_conjugate(field, &f)?;
            out.push(Block::Pair(f, g));
        }
    }
    Ok(out)
}

fn block_poly(field: &FieldSpec, b: &Block) -> Poly {
    match b {
        Block::SelfConjugate(f) => f.clone(),
        Block::Pair(f, g) => f.mul(field, g),
    }
}

/// Every subset of distinct blocks with total dimension at most `m`, with the
/// structural checks applied to each product.
fn cores(field: &FieldSpec, blocks: &[Block], m: usize) -> Result<Vec<Core>, OracleError> {
    fn walk(
        field: &FieldSpec,
        blocks: &[Block],
        m: usize,
        start: usize,
        current: &mut Vec<usize>,
        dim: usize,
        sign: i8,
        poly: &Poly,
        out: &mut Vec<Core>,
    ) -> Result<(), OracleError> {
        if poly.constant_term() != Elem::ONE {
            return Err(OracleError::Invariant(format!("block product {poly} has constant term other than 1")));
        }
        if !current.is_empty() && !is_star_self_conjugate(field, poly) {
            return Err(OracleError::Invariant(format!("block product {poly} is not self-conjugate")));
        }
        out.push(Core {
            dim,
            sign,
            items: current.clone(),
        });
        for i in start..blocks.len() {
            let bd = blocks[i].dimension();
            if dim + bd > m {
                continue;
            }
            current.push(i);
            let next = poly.mul(field, &block_poly(field, &blocks[i]));
            walk(field, blocks, m, i + 1, current, dim + bd, sign * type_sign(&blocks[i])?, &next, out)?;
            current.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(field, blocks, m, 0, &mut Vec::new(), 0, 1, &Poly::one(), &mut out)?;
    Ok(out)
}

/// Admissible `(a_minus, b_plus)` multiplicities.
fn eigen_parts(parity: Parity) -> Vec<(usize, usize)> {
    match parity {
        Parity::Odd => [0, 1, 2].iter().flat_map(|&a| [(a, 0), (a, 2)]).collect(),
        Parity::Even => vec![(0, 0), (2, 0)],
    }
}

/// Type labels for a nonempty eigenspace (either type), or none.
fn labels(mult: usize) -> Vec<Option<i8>> {
    if mult == 0 {
        vec![None]
    } else {
        vec![Some(1), Some(-1)]
    }
}

/// All decorated data of total dimension `m`, by callback.
fn for_each_datum(
    field: &FieldSpec,
    q: u64,
    m: usize,
    cap: u64,
    mut visit: impl FnMut(&ConjugacyDatum, i8) -> Result<(), OracleError>,
) -> Result<(), OracleError> {
    let parity = Parity::of(q);
    let blocks = building_blocks(field, q, m, cap)?;
    let cores = cores(field, &blocks, m)?;
    let minus_one = field.neg(Elem::ONE);
    let z_minus_1 = Poly::linear(field, Elem::ONE);
    let z_plus_1 = Poly::linear(field, minus_one);
    for core in &cores {
        for (a, b) in eigen_parts(parity) {
            if core.dim + a + b != m {
                continue;
            }
            let core_poly = core
                .items
                .iter()
                .fold(Poly::one(), |acc, &i| acc.mul(field, &block_poly(field, &blocks[i])));
            let mut full = core_poly;
            for _ in 0..a {
                full = full.mul(field, &z_minus_1);
            }
            for _ in 0..b {
                full = full.mul(field, &z_plus_1);
            }
            if full.constant_term() != signed_one(field, a) {
                return Err(OracleError::Invariant(format!("characteristic polynomial {full} has the wrong constant term")));
            }
            for a_type in labels(a) {
                for b_type in labels(b) {
                    let mut datum = ConjugacyDatum {
                        a_minus: a,
                        b_plus: b,
                        a_type,
                        b_type,
                        blocks: Vec::new(),
                        pairs: Vec::new(),
                    };
                    for &i in &core.items {
                        match &blocks[i] {
                            Block::SelfConjugate(f) => datum.blocks.push(f.clone()),
                            Block::Pair(f, g) => datum.pairs.push((f.clone(), g.clone())),
                        }
                    }
                    if datum.total_dim() != m {
                        return Err(OracleError::Invariant("datum dimension mismatch".into()));
                    }
                    visit(&datum, core.sign)?;
                }
            }
        }
    }
    Ok(())
}

/// Regular semisimple classes of `SO±(m, q)` (even `m`) or `SO(m, q)` (odd
/// `m`, odd `q`), from decorated data.
///
/// Data without `z ∓ 1` parts split into two classes in SO. The signed sum
/// over those data separates the plus and minus types.
pub fn oracle_orthogonal(m: usize, q: u64, target: OrthogonalTarget, cap: u64) -> Result<OracleResult, OracleError> {
    if m == 0 {
        return Err(OracleError::ZeroDimension);
    }
    let odd_m = m % 2 == 1;
    if odd_m && q.is_multiple_of(2) {
        return Err(OracleError::EvenCharacteristicOddDimension { m, q });
    }
    match target {
        OrthogonalTarget::Plus | OrthogonalTarget::Minus if odd_m => return Err(OracleError::OddDimensionWithType(m)),
        OrthogonalTarget::OddDim if !odd_m => return Err(OracleError::EvenDimensionWithoutType(m)),
        _ => {}
    }
    let field = FieldSpec::cached(q)?;
    let (mut s, mut d, mut enumerated) = (0i128, 0i128, 0u64);
    for_each_datum(&field, q, m, cap, |datum, sign| {
        enumerated += 1;
        if datum.a_minus == 0 && datum.b_plus == 0 {
            s += 2;
            d += 2 * sign as i128;
        } else {
            s += 1;
        }
        Ok(())
    })?;
    let twice = match target {
        OrthogonalTarget::Plus => s + d,
        OrthogonalTarget::Minus => s - d,
        OrthogonalTarget::OddDim => s,
    };
    if twice % 2 != 0 || twice < 0 {
        return Err(OracleError::Invariant(format!("class total {twice} is not twice a count")));
    }
    let (family, n) = match target {
        OrthogonalTarget::Plus => (Family::SoPlus, m / 2),
        OrthogonalTarget::Minus => (Family::SoMinus, m / 2),
        OrthogonalTarget::OddDim => (Family::SoOdd, (m - 1) / 2),
    };
    if n == 0 {
        return Err(OracleError::ZeroDimension);
    }
    Ok(OracleResult {
        group: GroupSpec::new(family, n as u32, q)?,
        count: (twice / 2) as u128,
        enumerated,
        method: "decorated orthogonal data",
    })
}

/// Number of monic squarefree degree-`n` polynomials over GF(q) with each
/// nonzero constant term, in index order of the constant.
pub fn oracle_constant_histogram(n: usize, q: u64, cap: u64) -> Result<Vec<(Elem, u128)>, OracleError> {
    if n == 0 {
        return Err(OracleError::ZeroDimension);
    }
    let total = pow(q, n);
    require(total, cap)?;
    let field = FieldSpec::cached(q)?;
    let mut hist = vec![0u128; q as usize];
    for idx in 0..total.expect("bounded") as u64 {
        let f = Poly::monic_from_index(&field, n, idx);
        let a0 = f.constant_term();
        if !a0.is_zero() && is_squarefree(&field, &f)? {
            hist[a0.index() as usize] += 1;
        }
    }
    Ok(field.nonzero_elements().map(|a| (a, hist[a.index() as usize])).collect())
}

/// Squarefree `~`-self-conjugate degree-`n` polynomials over GF(q²), grouped
/// by constant term (always a `(q+1)`-th root of unity).
pub fn oracle_unitary_constant_histogram(n: usize, q: u64, cap: u64) -> Result<Vec<(Elem, u128)>, OracleError> {
    if n == 0 {
        return Err(OracleError::ZeroDimension);
    }
    require(pow(q, 2 * n), cap)?;
    let ext = FieldSpec::cached(q * q)?;
    let roots: Vec<Elem> = ext.nonzero_elements().filter(|&c| ext.pow(c, q + 1) == Elem::ONE).collect();
    let mut hist: Vec<(Elem, u128)> = roots.iter().map(|&r| (r, 0)).collect();
    for f in tilde_self_conjugates(&ext, q, n) {
        if is_squarefree(&ext, &f)? {
            let slot = hist
                .iter_mut()
                .find(|(r, _)| *r == f.constant_term())
                .ok_or_else(|| OracleError::Invariant(format!("constant of {f} is not a root of unity of order q+1")))?;
            slot.1 += 1;
        }
    }
    Ok(hist)
}

/// Dispatches a group to its oracle.
pub fn oracle_count(g: &GroupSpec, cap: u64) -> Result<OracleResult, OracleError> {
    let GroupSpec { family, n, q } = *g;
    let n = n as usize;
    let parity = g.parity();
    let base = FieldSpec::cached(q)?;
    let mut result = match family {
        Family::Gl => oracle_linear(n, q, ConstantConstraint::Nonzero, cap)?,
        Family::Sl => oracle_linear(n, q, ConstantConstraint::Equals(signed_one(&base, n)), cap)?,
        Family::U => oracle_unitary(n, q, ConstantConstraint::Nonzero, cap)?,
        Family::Su => {
            let ext = FieldSpec::cached(q * q)?;
            oracle_unitary(n, q, ConstantConstraint::Equals(signed_one(&ext, n)), cap)?
        }
        Family::Sp => oracle_symplectic(n, q, cap)?,
        Family::SoOdd if parity == Parity::Even => oracle_symplectic(n, q, cap)?,
        Family::SoOdd => oracle_orthogonal(2 * n + 1, q, OrthogonalTarget::OddDim, cap)?,
        Family::SoPlus => oracle_orthogonal(2 * n, q, OrthogonalTarget::Plus, cap)?,
        Family::SoMinus => oracle_orthogonal(2 * n, q, OrthogonalTarget::Minus, cap)?,
    };
    result.group = *g;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::DEFAULT_ENUM_CAP;
    use crate::dual::is_tilde_self_conjugate;

    const CAP: u64 = DEFAULT_ENUM_CAP;

    fn lin(n: usize, q: u64, c: ConstantConstraint) -> u128 {
        oracle_linear(n, q, c, CAP).unwrap().count
    }

    fn orth(m: usize, q: u64, t: OrthogonalTarget) -> u128 {
        oracle_orthogonal(m, q, t, CAP).unwrap().count
    }

    #[test]
    fn linear_examples() {
        assert_eq!(lin(2, 2, ConstantConstraint::Nonzero), 1);
        assert_eq!(lin(3, 2, ConstantConstraint::Nonzero), 3);
        assert_eq!(lin(2, 3, ConstantConstraint::Equals(Elem::ONE)), 1);
        assert_eq!(lin(1, 5, ConstantConstraint::Nonzero), 4);
        assert!(matches!(
            oracle_linear(2, 3, ConstantConstraint::Equals(Elem::ZERO), CAP),
            Err(OracleError::BadConstant { .. })
        ));
        assert!(matches!(
            oracle_linear(5, 3, ConstantConstraint::Nonzero, 100),
            Err(OracleError::BoundExceeded { needed: 243, cap: 100 })
        ));
    }

    #[test]
    fn unitary_examples() {
        let u = |n, q, c| oracle_unitary(n, q, c, CAP).unwrap().count;
        assert_eq!(u(1, 2, ConstantConstraint::Nonzero), 3);
        assert_eq!(u(2, 2, ConstantConstraint::Nonzero), 3);
        assert_eq!(u(2, 3, ConstantConstraint::Equals(Elem::ONE)), 1);
    }

    /// The half-determined generator against a scan of every polynomial.
    #[test]
    fn unitary_matches_full_scan() {
        for q in [2u64, 3] {
            let ext = FieldSpec::cached(q * q).unwrap();
            for n in 1..=3usize {
                let brute = (0..(q * q).pow(n as u32))
                    .map(|i| Poly::monic_from_index(&ext, n, i))
                    .filter(|f| is_tilde_self_conjugate(&ext, q, f) && is_squarefree(&ext, f).unwrap())
                    .count() as u128;
                assert_eq!(oracle_unitary(n, q, ConstantConstraint::Nonzero, CAP).unwrap().count, brute);
            }
        }
    }

    #[test]
    fn symplectic_examples() {
        assert_eq!(oracle_symplectic(1, 3, CAP).unwrap().count, 1);
        assert_eq!(oracle_symplectic(1, 2, CAP).unwrap().count, 1);
        assert_eq!(oracle_symplectic(2, 3, CAP).unwrap().count, 3);
    }

    #[test]
    fn orthogonal_examples() {
        assert_eq!(orth(3, 3, OrthogonalTarget::OddDim), 3);
        assert_eq!(orth(4, 3, OrthogonalTarget::Plus), 6);
        assert_eq!(orth(4, 3, OrthogonalTarget::Minus), 8);
        assert_eq!(orth(4, 2, OrthogonalTarget::Plus), 1);
        assert_eq!(orth(4, 2, OrthogonalTarget::Minus), 3);
        assert_eq!(orth(2, 5, OrthogonalTarget::Plus), 4);
        assert_eq!(orth(2, 5, OrthogonalTarget::Minus), 6);
        assert_eq!(orth(6, 2, OrthogonalTarget::Minus), 3);
    }

    #[test]
    fn orthogonal_errors() {
        assert_eq!(
            oracle_orthogonal(5, 3, OrthogonalTarget::Plus, CAP),
            Err(OracleError::OddDimensionWithType(5))
        );
        assert_eq!(
            oracle_orthogonal(5, 4, OrthogonalTarget::OddDim, CAP),
            Err(OracleError::EvenCharacteristicOddDimension { m: 5, q: 4 })
        );
        assert_eq!(
            oracle_orthogonal(4, 3, OrthogonalTarget::OddDim, CAP),
            Err(OracleError::EvenDimensionWithoutType(4))
        );
        assert!(matches!(
            oracle_orthogonal(8, 3, OrthogonalTarget::Plus, 10),
            Err(OracleError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn histogram_consistency() {
        for q in [2u64, 3, 4, 5] {
            for n in 1..=4 {
                let hist = oracle_constant_histogram(n, q, CAP).unwrap();
                assert_eq!(hist.len() as u64, q - 1);
                let total: u128 = hist.iter().map(|(_, c)| c).sum();
                assert_eq!(total, lin(n, q, ConstantConstraint::Nonzero));
                for (a, c) in hist {
                    assert_eq!(c, lin(n, q, ConstantConstraint::Equals(a)));
                }
            }
        }
        assert!(oracle_constant_histogram(1, 5, CAP).unwrap().iter().all(|&(_, c)| c == 1));
    }

    #[test]
    fn symplectic_matches_linear_in_even_characteristic() {
        for q in [2u64, 4] {
            for n in 1..=4 {
                assert_eq!(oracle_symplectic(n, q, CAP).unwrap().count, lin(n, q, ConstantConstraint::Nonzero));
            }
        }
    }

    #[test]
    fn data_are_well_formed() {
        for (m, q) in [(6usize, 3u64), (7, 3), (6, 2), (4, 5)] {
            let field = FieldSpec::cached(q).unwrap();
            let mut seen = std::collections::HashSet::new();
            for_each_datum(&field, q, m, CAP, |d, _| {
                assert_eq!(d.total_dim(), m);
                assert_eq!(d.a_type.is_some(), d.a_minus > 0);
                assert_eq!(d.b_type.is_some(), d.b_plus > 0);
                if q % 2 == 0 {
                    assert!(d.b_plus == 0 && d.a_minus != 1);
                }
                assert!(d.blocks.iter().all(|b| b.degree().unwrap() % 2 == 0));
                assert!(d.pairs.iter().all(|(f, g)| f != g));
                assert!(seen.insert(format!("{d:?}")), "duplicate datum");
                Ok(())
            })
            .unwrap();
        }
    }

    #[test]
    fn dispatch() {
        let r = oracle_count(&GroupSpec::new(Family::SoOdd, 2, 2).unwrap(), CAP).unwrap();
        assert_eq!(r.count, oracle_symplectic(2, 2, CAP).unwrap().count);
        assert_eq!(r.group.family, Family::SoOdd);
        let su = oracle_count(&GroupSpec::new(Family::Su, 1, 5).unwrap(), CAP).unwrap();
        assert_eq!(su.count, 1);
        let sl = oracle_count(&GroupSpec::new(Family::Sl, 3, 4).unwrap(), CAP).unwrap();
        assert_eq!(sl.count, 13);
    }
}
