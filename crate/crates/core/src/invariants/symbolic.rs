//! Polynomials with rational coefficients in the surface invariants
//! `(m, pi, K^2, chi)`, used to check the triple-point identity symbolically.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub const M: usize = 0;
pub const PI: usize = 1;
pub const K2: usize = 2;
pub const CHI: usize = 3;
const NAMES: [&str; 4] = ["m", "pi", "K2", "chi"];

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    terms: BTreeMap<[u32; 4], BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(num: i64, den: i64) -> Self {
        let mut p = Self::zero();
        p.insert([0; 4], BigRational::new(BigInt::from(num), BigInt::from(den)));
        p
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        let mut p = Self::zero();
        p.insert(e, BigRational::one());
        p
    }

    fn insert(&mut self, e: [u32; 4], c: BigRational) {
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1, 1))
    }

    pub fn scale(&self, num: i64, den: i64) -> Self {
        let s = BigRational::new(BigInt::from(num), BigInt::from(den));
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.insert(*e, c * &s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.insert(e, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, point: [i64; 4]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                t *= BigRational::from_integer(BigInt::from(point[i]).pow(k));
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut mono: Vec<String> = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(NAMES[i].to_string()),
                    _ => mono.push(format!("{}^{}", NAMES[i], k)),
                }
            }
            if mono.is_empty() {
                parts.push(format!("({c})"));
            } else {
                parts.push(format!("({c})*{}", mono.join("*")));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn m() -> QPoly {
    QPoly::var(M)
}

fn c(v: i64) -> QPoly {
    QPoly::constant(v, 1)
}

/// General triple-point count as a polynomial.
pub fn general_triple_points() -> QPoly {
    let m = m();
    let m2 = m.mul(&m);
    let m3 = m2.mul(&m);
    m3.scale(1, 6)
        .sub(&m2.scale(3, 2))
        .add(&m.scale(13, 3))
        .sub(&m.mul(&QPoly::var(PI)))
        .add(&QPoly::var(K2))
        .add(&QPoly::var(PI).scale(8, 1))
        .sub(&QPoly::var(CHI).scale(4, 1))
        .sub(&c(8))
}

/// P^4 triple-point count with `C(m-1, 3)` expanded.
pub fn p4_triple_points() -> QPoly {
    let m = m();
    let binom = m.sub(&c(1)).mul(&m.sub(&c(2))).mul(&m.sub(&c(3))).scale(1, 6);
    binom
        .sub(&QPoly::var(PI).mul(&m.sub(&c(3))))
        .add(&QPoly::var(CHI).scale(2, 1))
        .sub(&c(2))
}

/// Double-point residual with `H.K = 2 pi - 2 - m` substituted.
pub fn double_point_residual() -> QPoly {
    let m = m();
    let hk = QPoly::var(PI).scale(2, 1).sub(&c(2)).sub(&m);
    m.mul(&m)
        .sub(&m.scale(10, 1))
        .sub(&hk.scale(5, 1))
        .sub(&QPoly::var(K2).scale(2, 1))
        .add(&QPoly::var(CHI).scale(12, 1))
}

/// `general - p4 + residual / 2`, which vanishes identically.
pub fn identity_defect() -> QPoly {
    general_triple_points()
        .sub(&p4_triple_points())
        .add(&double_point_residual().scale(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{double_point_consistency, triple_points_general, triple_points_p4, SurfaceInvariants};
    use proptest::prelude::*;

    #[test]
    fn identity_holds_symbolically() {
        let d = identity_defect();
        assert!(d.is_zero(), "defect = {d}");
    }

    #[test]
    fn difference_is_linear_in_invariants() {
        let diff = general_triple_points().sub(&p4_triple_points());
        let expected = QPoly::constant(-1, 2).mul(&double_point_residual());
        assert_eq!(diff, expected);
    }

    proptest! {
        #[test]
        fn symbolic_matches_numeric(m in 1i64..60, pi in -30i64..30, k2 in -30i64..30, chi in -30i64..30) {
            let inv = SurfaceInvariants::new(5, m, pi, k2, chi).unwrap();
            let p = [m, pi, k2, chi];
            let g = general_triple_points().eval(p);
            prop_assert_eq!(g.to_integer(), BigInt::from(triple_points_general(&inv).unwrap()));
            prop_assert_eq!(p4_triple_points().eval(p).to_integer(), BigInt::from(triple_points_p4(m, pi, chi)));
            let c = double_point_consistency(&inv).unwrap();
            prop_assert_eq!(double_point_residual().eval(p).to_integer(), BigInt::from(c.residual));
        }
    }
}
