//! Closed formulas for surfaces in projective space and for first-order
//! congruences of trisecant lines in P^4, with the enumeration of the
//! admissible invariant rows.
//!
//! Formula evaluation is exact (`BigRational` where a division appears);
//! integrality is checked, never rounded.

mod classify;
mod parasitic;
pub mod symbolic;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classify::{
    classify_p4, classify_p4_audited, AuditEntry, Classification, ClassifiedRow, Exclusion, InvariantRow,
};
pub use parasitic::{decompose_x, parasitic_multiplicity, ParasiticDecomposition, ParasiticPart};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("formula value {0} is not an integer; the invariants are inconsistent")]
    NonIntegral(String),
    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: i64,
        expected: &'static str,
    },
    #[error("negative parasitic excess x = {0}; the configuration is infeasible")]
    NegativeExcess(i64),
    #[error("the apparent-double-point formula does not apply to m = {0}")]
    FormulaInapplicable(i64),
    #[error("identity check failed: {0}")]
    IdentityViolated(String),
}

fn out_of_range(name: &'static str, value: i64, expected: &'static str) -> InvariantsError {
    InvariantsError::OutOfRange { name, value, expected }
}

/// Binomial coefficient `C(n, k)` for `n >= 0`, zero when `k > n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Invariants of a (desingularized) surface: ambient dimension `n`, degree
/// `m`, sectional genus `pi`, `K^2` and Euler-Poincaré characteristic `chi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub n: u32,
    pub m: i64,
    pub pi: i64,
    pub k2: i64,
    pub chi: i64,
}

impl SurfaceInvariants {
    pub fn new(n: u32, m: i64, pi: i64, k2: i64, chi: i64) -> Result<Self, InvariantsError> {
        if m < 1 {
            return Err(out_of_range("m", m, "m >= 1"));
        }
        Ok(Self { n, m, pi, k2, chi })
    }

    /// `H.K`, from adjunction on the hyperplane section: `2 pi - 2 = m + H.K`.
    pub fn hk(&self) -> i64 {
        2 * self.pi - 2 - self.m
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn general_triple_point_value(inv: &SurfaceInvariants) -> BigRational {
    let m = rat(inv.m);
    let pi = rat(inv.pi);
    let frac = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    &m * &m * &m * frac(1, 6) - &m * &m * frac(3, 2) + &m * frac(13, 3) - &m * &pi + rat(inv.k2) + pi * rat(8)
        - rat(4 * inv.chi)
        - rat(8)
}

fn to_integer(v: BigRational) -> Result<i64, InvariantsError> {
    if !v.is_integer() {
        return Err(InvariantsError::NonIntegral(v.to_string()));
    }
    v.to_integer()
        .to_i64()
        .ok_or_else(|| InvariantsError::NonIntegral(v.to_string()))
}

/// Number of apparent triple points of a smooth surface in P^n, n >= 4 (the
/// order of the trisecant congruence of a general projection to P^4).
pub fn triple_points_general(inv: &SurfaceInvariants) -> Result<i64, InvariantsError> {
    if inv.n < 4 {
        return Err(out_of_range("n", inv.n as i64, "n >= 4"));
    }
    to_integer(general_triple_point_value(inv))
}

/// Trisecant lines through a general point for a smooth surface in P^4.
pub fn triple_points_p4(m: i64, pi: i64, chi: i64) -> i64 {
    // C(m-1, 3) as the polynomial (m-1)(m-2)(m-3)/6, always integral
    (m - 1) * (m - 2) * (m - 3) / 6 - pi * (m - 3) + 2 * chi - 2
}

/// `2 (chi - pi + 1)`, the P^4 triple-point count specialized to smooth
/// quintics; always even.
pub fn smooth_quintic_parity(chi: i64, pi: i64) -> i64 {
    2 * (chi - pi + 1)
}

/// Relation between the general and the P^4 triple-point formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublePointConsistency {
    /// `m^2 - 10m - 5 H.K - 2 K^2 + 12 chi`; zero for smooth surfaces of P^4.
    pub residual: i64,
    /// General formula minus the P^4 formula, both at `(m, pi, K^2, chi)`.
    pub delta: i64,
}

/// Checks `delta = -residual / 2`, which makes the two triple-point formulas
/// agree exactly on surfaces satisfying the double-point relation.
pub fn double_point_consistency(inv: &SurfaceInvariants) -> Result<DoublePointConsistency, InvariantsError> {
    let residual = inv.m * inv.m - 10 * inv.m - 5 * inv.hk() - 2 * inv.k2 + 12 * inv.chi;
    let delta = general_triple_point_value(inv) - rat(triple_points_p4(inv.m, inv.pi, inv.chi));
    if delta.clone() * rat(2) + rat(residual) != BigRational::zero() {
        return Err(InvariantsError::IdentityViolated(format!(
            "delta = {delta}, residual = {residual}"
        )));
    }
    Ok(DoublePointConsistency {
        residual,
        delta: to_integer(delta)?,
    })
}

/// Class of the trisecant congruence from the apparent double points `h` of
/// the hyperplane section: `a = h (m - 2) - C(m, 3)`.
pub fn cayley_class(h: i64, m: i64) -> Result<i64, InvariantsError> {
    if m < 3 {
        return Err(out_of_range("m", m, "m >= 3"));
    }
    if h < 0 {
        return Err(out_of_range("h", h, "h >= 0"));
    }
    Ok(h * (m - 2) - binomial(m, 3))
}

/// Algebraic multiplicity of the surface on the scroll hypersurface:
/// `k = h - m + 2`.
pub fn multiplicity_k(h: i64, m: i64) -> i64 {
    h - m + 2
}

/// Apparent double points of a degree-`m` space curve of genus `pi`
/// (Clebsch): `h = C(m-1, 2) - pi`.
pub fn clebsch_h(m: i64, pi: i64) -> Result<i64, InvariantsError> {
    if m < 3 {
        return Err(out_of_range("m", m, "m >= 3"));
    }
    let max = binomial(m - 1, 2);
    if pi < 0 || pi > max {
        return Err(out_of_range("pi", pi, "0 <= pi <= C(m-1, 2)"));
    }
    Ok(max - pi)
}

/// `h = m (m + 2) / 6 - 1` when this is a nonnegative integer, `None`
/// otherwise. Valid for `3 < m < 9`, `m != 5`.
pub fn integrality_gate(m: i64) -> Result<Option<i64>, InvariantsError> {
    if m == 5 {
        return Err(InvariantsError::FormulaInapplicable(5));
    }
    if !(4..=8).contains(&m) {
        return Err(out_of_range("m", m, "3 < m < 9"));
    }
    let num = m * (m + 2);
    if num % 6 != 0 {
        return Ok(None);
    }
    let h = num / 6 - 1;
    Ok((h >= 0).then_some(h))
}

/// Parasitic excess `x = (n-1)^2 k^2 - k^2 m - 1 - 2a`, which must be
/// nonnegative.
pub fn parasitic_excess(m: i64, k: i64, a: i64, n: u32) -> Result<i64, InvariantsError> {
    if k < 1 {
        return Err(out_of_range("k", k, "k >= 1"));
    }
    let e = (n as i64 - 1).pow(2);
    let x = e * k * k - k * k * m - 1 - 2 * a;
    if x < 0 {
        return Err(InvariantsError::NegativeExcess(x));
    }
    Ok(x)
}

/// `sum l_j k_j <= a0 + a1` over the components `(l_j, k_j)`, with equality
/// when the fundamental locus is pure of dimension n-2.
pub fn check_agen(components: &[(u64, u64)], a0: u64, a1: u64, pure_dim: bool) -> bool {
    let lhs: u64 = components.iter().map(|&(l, k)| l * k).sum();
    if pure_dim {
        lhs == a0 + a1
    } else {
        lhs <= a0 + a1
    }
}

/// `(a0 + a1)^2 = x + sum k_j^2 m_j + a0 + 2 a1 + a2` over components `(k_j, m_j)`.
pub fn check_bgen(a0: u64, a1: u64, a2: u64, x: u64, components: &[(u64, u64)]) -> bool {
    let rhs: u64 = x + components.iter().map(|&(k, m)| k * k * m).sum::<u64>() + a0 + 2 * a1 + a2;
    (a0 + a1).pow(2) == rhs
}

/// One focal contact of a congruence line: a fat point of length `length` on
/// a component of the fundamental locus of codimension index `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocalContact {
    pub index: u32,
    pub length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocalBudget {
    pub n: u32,
    pub contacts: Vec<FocalContact>,
}

impl FocalBudget {
    /// Contacts on the fundamental (n-2)-locus, i.e. index 1.
    pub fn from_lengths(n: u32, lengths: &[u32]) -> Self {
        FocalBudget {
            n,
            contacts: lengths
                .iter()
                .map(|&length| FocalContact { index: 1, length })
                .collect(),
        }
    }
}

/// The lengths of the focal contacts along a congruence line add up to
/// `n - 1`, and a contact with a component of index `i` has length `>= i`.
pub fn focal_budget_check(budget: &FocalBudget) -> bool {
    let total: u64 = budget.contacts.iter().map(|c| c.length as u64).sum();
    total + 1 == budget.n as u64
        && budget
            .contacts
            .iter()
            .all(|c| c.index >= 1 && c.index < budget.n && c.length >= c.index)
}

/// Open interval `((n-1)/k', (n-1)^2)` containing the degree of an
/// irreducible fundamental surface.
pub fn degree_bounds(n: u32, kprime: u32) -> Result<(BigRational, BigRational), InvariantsError> {
    if kprime < 1 {
        return Err(out_of_range("k'", kprime as i64, "k' >= 1"));
    }
    let e = n as i64 - 1;
    Ok((BigRational::new(BigInt::from(e), BigInt::from(kprime)), rat(e * e)))
}

/// Integers strictly inside the open degree interval.
pub fn admissible_degrees(n: u32, kprime: u32) -> Result<Vec<i64>, InvariantsError> {
    let (lo, hi) = degree_bounds(n, kprime)?;
    let start = lo.floor().to_integer().to_i64().unwrap() + 1;
    let end = hi.ceil().to_integer().to_i64().unwrap();
    Ok((start..end).filter(|&m| rat(m) > lo && rat(m) < hi).collect())
}

/// Sectional genus of the congruence in its Plücker embedding from the
/// arithmetic genus of the curve `C_a` and the class `a`.
pub fn congruence_sectional_genus(p_a: i64, a: i64) -> Result<i64, InvariantsError> {
    if p_a < 0 {
        return Err(out_of_range("p_a", p_a, "p_a >= 0"));
    }
    if a < 0 {
        return Err(out_of_range("a", a, "a >= 0"));
    }
    Ok(p_a + a - 1)
}

/// Is `v` divisible by 2? Used by tests of the parity formula.
pub fn is_even(v: i64) -> bool {
    v.is_even()
}
