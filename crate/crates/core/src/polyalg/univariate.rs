use super::field::{Elem, PrimeField};
use super::PolyError;

/// Dense univariate polynomial over F_q, coefficients low degree first, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<Elem>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= field.modulus();
        }
        let mut p = UniPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `t - root`
    pub fn linear_root(field: PrimeField, root: Elem) -> Self {
        Self::new(field, vec![field.neg(root), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficients padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<Elem> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), 0);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, t: Elem) -> Elem {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, t), c))
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        UniPoly::new(f, v)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: Elem) -> UniPoly {
        let f = self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, v)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()).unwrap())
    }

    pub fn derivative(&self) -> UniPoly {
        let f = self.field;
        UniPoly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let f = self.field;
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let inv_lc = f.inv(divisor.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(f), self.clone()));
        }
        let mut quot = vec![0; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + dd], inv_lc);
            quot[i] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = f.sub(rem[i + j], f.mul(c, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((UniPoly::new(f, quot), UniPoly::new(f, rem)))
    }

    /// Lagrange interpolation through `(nodes[i], values[i])`; nodes distinct.
    pub fn interpolate(field: PrimeField, nodes: &[Elem], values: &[Elem]) -> Result<UniPoly, PolyError> {
        let f = field;
        let mut acc = UniPoly::zero(f);
        for (i, (&xi, &yi)) in nodes.iter().zip(values).enumerate() {
            if yi == 0 {
                continue;
            }
            let mut basis = UniPoly::constant(f, 1);
            let mut denom = 1;
            for (j, &xj) in nodes.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&UniPoly::linear_root(f, xj));
                    denom = f.mul(denom, f.sub(xi, xj));
                }
            }
            let inv = f.inv(denom).ok_or(PolyError::RepeatedNodes)?;
            acc = acc.add(&basis.scale(f.mul(yi, inv)));
        }
        Ok(acc)
    }

    /// Resultant via the Euclidean recursion
    /// `res(a, b) = (-1)^{mn} lc(b)^{m-k} res(b, a mod b)`.
    pub fn resultant(&self, other: &UniPoly) -> Elem {
        let f = self.field;
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return 0;
        };
        if n == 0 {
            return f.pow(other.leading(), m as u64);
        }
        if m == 0 {
            return f.pow(self.leading(), n as u64);
        }
        let (_, r) = self.div_rem(other).unwrap();
        let Some(k) = r.degree() else {
            return 0;
        };
        let mut res = f.mul(f.pow(other.leading(), (m - k) as u64), other.resultant(&r));
        if (m * n) % 2 == 1 {
            res = f.neg(res);
        }
        res
    }
}

/// Monic gcd over F_q.
pub fn gcd_univariate(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, PolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::GcdOfZeros);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// Degree of the squarefree part `f / gcd(f, f')`. Exact as long as the degree
/// is below the characteristic.
pub fn squarefree_degree(p: &UniPoly) -> Option<usize> {
    let d = p.degree()?;
    let dp = p.derivative();
    if dp.is_zero() {
        return Some(if d == 0 { 0 } else { 1 });
    }
    let g = gcd_univariate(p, &dp).ok()?;
    Some(d - g.degree().unwrap_or(0))
}

/// Degree of the common factor of a family of binary forms of degree `d`, each
/// given by its coefficients in the affine parameter `t` (index = power of
/// `t`). Roots at `t = infinity` count through the drop in affine degree.
/// Returns `None` when every form is zero.
pub fn binary_gcd_degree(field: PrimeField, forms: &[Vec<Elem>], d: usize) -> Option<usize> {
    let mut g: Option<UniPoly> = None;
    let mut at_infinity = usize::MAX;
    for c in forms {
        let p = UniPoly::new(field, c.clone());
        let Some(deg) = p.degree() else { continue };
        at_infinity = at_infinity.min(d - deg);
        g = Some(match g {
            None => p.monic(),
            Some(acc) => gcd_univariate(&acc, &p).unwrap(),
        });
    }
    g.map(|g| g.degree().unwrap() + at_infinity)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let f = f101();
        let a = UniPoly::new(f, vec![f.neg(1), 0, 1]); // t^2 - 1
        let b = UniPoly::new(f, vec![f.neg(1), 1]); // t - 1
        assert_eq!(gcd_univariate(&a, &b).unwrap(), b);
        let p = UniPoly::new(f, vec![4, 0, 6]);
        assert_eq!(gcd_univariate(&p, &UniPoly::zero(f)).unwrap(), p.monic());
        assert_eq!(gcd_univariate(&p, &p).unwrap(), p.monic());
        assert!(matches!(
            gcd_univariate(&UniPoly::zero(f), &UniPoly::zero(f)),
            Err(PolyError::GcdOfZeros)
        ));
    }

    fn sylvester_resultant(a: &UniPoly, b: &UniPoly) -> Elem {
        let f = a.field();
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        let size = m + n;
        let mut rows = Vec::new();
        for i in 0..n {
            let mut r = vec![0; size];
            for (j, &c) in a.coeffs().iter().rev().enumerate() {
                r[i + j] = c;
            }
            rows.push(r);
        }
        for i in 0..m {
            let mut r = vec![0; size];
            for (j, &c) in b.coeffs().iter().rev().enumerate() {
                r[i + j] = c;
            }
            rows.push(r);
        }
        crate::polyalg::Matrix::from_rows(f, rows).determinant()
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        use rand::{Rng, SeedableRng};
        let f = f101();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let da = rng.gen_range(1..6);
            let db = rng.gen_range(1..6);
            let mut ca: Vec<Elem> = (0..=da).map(|_| f.random(&mut rng)).collect();
            let mut cb: Vec<Elem> = (0..=db).map(|_| f.random(&mut rng)).collect();
            ca[da] = f.random_nonzero(&mut rng);
            cb[db] = f.random_nonzero(&mut rng);
            let a = UniPoly::new(f, ca);
            let b = UniPoly::new(f, cb);
            assert_eq!(a.resultant(&b), sylvester_resultant(&a, &b));
        }
    }

    #[test]
    fn binary_gcd_counts_roots_at_infinity() {
        let f = f101();
        // t (deg-2 form s*t) and t^2: common factor t, plus one root at
        // infinity from the first form only -> gcd degree 1
        assert_eq!(binary_gcd_degree(f, &[vec![0, 1, 0], vec![0, 0, 1]], 2), Some(1));
        // s^2 t and s t: both forms of degree 3 with affine degrees 1 and 1
        assert_eq!(binary_gcd_degree(f, &[vec![0, 1, 0, 0], vec![0, 2, 0, 0]], 3), Some(3));
        assert_eq!(binary_gcd_degree(f, &[vec![0; 4]], 3), None);
    }

    #[test]
    fn squarefree_part() {
        let f = f101();
        let p = UniPoly::linear_root(f, 3)
            .mul(&UniPoly::linear_root(f, 3))
            .mul(&UniPoly::linear_root(f, 7));
        assert_eq!(squarefree_degree(&p), Some(2));
    }
}
