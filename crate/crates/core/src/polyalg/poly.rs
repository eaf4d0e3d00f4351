use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{Elem, PrimeField};
use super::PolyError;

/// Exponent vector ordered graded-lexicographically (total degree first, then
/// lexicographic with `x0 > x1 > ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Variable indices with repetition, e.g. `x0^2 x3 -> [0, 0, 3]`.
    pub fn support_with_multiplicity(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                out.push(i);
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `nvars` variables, in increasing
/// graded-lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out.sort();
    out
}

/// Sparse multivariate polynomial over a prime field. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl MultiPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Self {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: Elem) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(nvars, i), 1);
        p
    }

    /// The linear form `sum coeffs[i] * x_i`.
    pub fn linear(field: PrimeField, coeffs: &[Elem]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c);
        }
        p
    }

    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Elem)>,
    {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(PolyError::Arity {
                    expected: nvars,
                    got: m.nvars(),
                });
            }
            p.add_term(m, field.reduce(c as u64));
        }
        Ok(p)
    }

    /// Dense coefficient vector against an explicit monomial list.
    pub fn from_dense(field: PrimeField, nvars: usize, monos: &[Monomial], coeffs: &[Elem]) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, &c) in monos.iter().zip(coeffs) {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Elem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var] as u32).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Elem) {
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = f.add(*v, c);
                if *v == 0 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: Elem) -> MultiPoly {
        let f = self.field;
        let mut out = Self::zero(f, self.nvars);
        if c == 0 {
            return out;
        }
        for (m, &v) in &self.terms {
            out.terms.insert(m.clone(), f.mul(v, c));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let f = self.field;
        let mut out = Self::zero(f, self.nvars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), f.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::constant(self.field, self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at a coordinate vector (affine or homogeneous; callers fix the
    /// scaling convention).
    pub fn eval(&self, point: &[Elem]) -> Result<Elem, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let f = self.field;
        let maxdeg = self.terms.keys().flat_map(|m| m.0.iter()).copied().max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Elem>> = point
            .iter()
            .map(|&x| {
                let mut row = Vec::with_capacity(maxdeg + 1);
                let mut acc = 1 % f.modulus();
                for _ in 0..=maxdeg {
                    row.push(acc);
                    acc = f.mul(acc, x);
                }
                row
            })
            .collect();
        let mut sum = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, powers[i][e as usize]);
                }
            }
            sum = f.add(sum, t);
        }
        Ok(sum)
    }

    /// Composition `self(images[0], ..., images[n-1])`; all images must live in
    /// one common ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::Arity {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        let f = self.field;
        let mut cache: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant(f, target_vars, 1), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(f, target_vars);
        for (m, &c) in &self.terms {
            let mut t = MultiPoly::constant(f, target_vars, c);
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(&images[i]);
                    cache[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&cache[i][e]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Homogeneous part of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let mut out = Self::zero(self.field, self.nvars);
        for (m, &c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(m.clone(), c);
            }
        }
        out
    }

    /// Splits by the exponent of variable `var`, dropping that variable:
    /// returns `parts` with `self = sum parts[k] * x_var^k`.
    pub fn split_by_var(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut parts = vec![MultiPoly::zero(self.field, self.nvars - 1); deg + 1];
        for (m, &c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e.remove(var);
            parts[k].terms.insert(Monomial(e), c);
        }
        parts
    }

    /// Coefficient vector against the supplied monomial list.
    pub fn to_dense(&self, monos: &[Monomial]) -> Vec<Elem> {
        monos.iter().map(|m| self.coeff(m)).collect()
    }

    /// Normalizes so the leading (graded-lex largest) coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, &lc)) => self.scale(self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Serializable image of a polynomial: exponent-vector/coefficient pairs in
/// increasing term order. The modulus lives with the enclosing document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub nvars: usize,
    pub terms: Vec<(Vec<u16>, Elem)>,
}

impl From<&MultiPoly> for PolyDoc {
    fn from(p: &MultiPoly) -> Self {
        PolyDoc {
            nvars: p.nvars,
            terms: p.terms.iter().map(|(m, &c)| (m.0.clone(), c)).collect(),
        }
    }
}

impl PolyDoc {
    pub fn into_poly(self, field: PrimeField) -> Result<MultiPoly, PolyError> {
        for (_, c) in &self.terms {
            if *c >= field.modulus() || *c == 0 {
                return Err(PolyError::BadCoefficient(*c));
            }
        }
        MultiPoly::from_terms(field, self.nvars, self.terms.into_iter().map(|(e, c)| (Monomial(e), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = f101();
        let x0 = MultiPoly::var(f, 5, 0);
        assert_eq!(x0.eval(&[1, 0, 0, 0, 0]).unwrap(), 1);
        let m = x0.mul(&MultiPoly::var(f, 5, 1)).mul(&MultiPoly::var(f, 5, 2));
        assert_eq!(m.eval(&[1, 1, 1, 0, 0]).unwrap(), 1);
        assert_eq!(MultiPoly::zero(f, 5).eval(&[3, 4, 5, 6, 7]).unwrap(), 0);
        assert!(matches!(x0.eval(&[1, 2]), Err(PolyError::Arity { .. })));
    }

    #[test]
    fn monomial_counts_and_order() {
        assert_eq!(monomials_of_degree(5, 3).len(), 35);
        assert_eq!(monomials_of_degree(5, 4).len(), 70);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
        let ms = monomials_of_degree(3, 2);
        // x0^2 is the largest quadric monomial in graded-lex
        assert_eq!(ms.last().unwrap().exponents(), &[2, 0, 0]);
    }

    #[test]
    fn substitution_matches_evaluation() {
        let f = f101();
        // (x0 + 2 x1)^2 x2 with x0 = s + t, x1 = s, x2 = 3t
        let p = MultiPoly::var(f, 3, 0)
            .add(&MultiPoly::var(f, 3, 1).scale(2))
            .pow(2)
            .mul(&MultiPoly::var(f, 3, 2));
        let s = MultiPoly::var(f, 2, 0);
        let t = MultiPoly::var(f, 2, 1);
        let q = p.substitute(&[s.add(&t), s.clone(), t.scale(3)]).unwrap();
        for (a, b) in [(1, 2), (5, 7), (100, 3)] {
            let direct = p.eval(&[f.add(a, b), a, f.mul(3, b)]).unwrap();
            assert_eq!(q.eval(&[a, b]).unwrap(), direct);
        }
    }

    #[test]
    fn doc_roundtrip_keeps_order() {
        let f = f101();
        let p = MultiPoly::linear(f, &[1, 0, 7, 100]).pow(3);
        let doc = PolyDoc::from(&p);
        let json = serde_json::to_string(&doc).unwrap();
        let back: PolyDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.clone().into_poly(f).unwrap(), p);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
