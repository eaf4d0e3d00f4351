use serde::{Deserialize, Serialize};

use super::field::{Elem, PrimeField};
use super::matrix::Matrix;
use super::poly::{Monomial, MultiPoly};
use super::univariate::UniPoly;
use super::PolyError;

/// A point of P^n(F_q), normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint(Vec<Elem>);

impl ProjPoint {
    pub fn new(field: PrimeField, mut coords: Vec<Elem>) -> Result<Self, PolyError> {
        for c in coords.iter_mut() {
            *c %= field.modulus();
        }
        let lead = coords.iter().copied().find(|&c| c != 0).ok_or(PolyError::ZeroPoint)?;
        let inv = field.inv(lead).unwrap();
        for c in coords.iter_mut() {
            *c = field.mul(*c, inv);
        }
        Ok(ProjPoint(coords))
    }

    pub fn random<R: rand::Rng + ?Sized>(field: PrimeField, dim: usize, rng: &mut R) -> Self {
        loop {
            let v: Vec<Elem> = (0..=dim).map(|_| field.random(rng)).collect();
            if let Ok(p) = Self::new(field, v) {
                return p;
            }
        }
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    /// Ambient projective dimension.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Index of the leading (normalized to 1) coordinate.
    pub fn pivot(&self) -> usize {
        self.0.iter().position(|&c| c != 0).unwrap()
    }
}

/// The line through `base` and `direction`, parametrized affinely as
/// `base + t * direction` (the point `direction` sits at `t = infinity`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjLine {
    base: ProjPoint,
    direction: ProjPoint,
}

impl ProjLine {
    pub fn new(field: PrimeField, base: ProjPoint, direction: ProjPoint) -> Result<Self, PolyError> {
        if base.0.len() != direction.0.len() {
            return Err(PolyError::Arity {
                expected: base.0.len(),
                got: direction.0.len(),
            });
        }
        let m = Matrix::from_rows(field, vec![base.0.clone(), direction.0.clone()]);
        if m.rank() < 2 {
            return Err(PolyError::DegenerateSpan { expected: 2 });
        }
        Ok(ProjLine { base, direction })
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn direction(&self) -> &ProjPoint {
        &self.direction
    }

    /// Coordinates of `base + t * direction` (not normalized).
    pub fn point_at(&self, field: PrimeField, t: Elem) -> Vec<Elem> {
        self.base
            .0
            .iter()
            .zip(&self.direction.0)
            .map(|(&b, &d)| field.add(b, field.mul(t, d)))
            .collect()
    }
}

/// A projective plane spanned by three independent points, parametrized by
/// `(u : v : w) -> u*p0 + v*p1 + w*p2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plane {
    points: [ProjPoint; 3],
}

impl Plane {
    pub fn new(field: PrimeField, points: [ProjPoint; 3]) -> Result<Self, PolyError> {
        let n = points[0].0.len();
        if points.iter().any(|p| p.0.len() != n) {
            return Err(PolyError::Arity {
                expected: n,
                got: points.iter().map(|p| p.0.len()).find(|&l| l != n).unwrap(),
            });
        }
        let m = Matrix::from_rows(field, points.iter().map(|p| p.0.clone()).collect());
        if m.rank() < 3 {
            return Err(PolyError::DegenerateSpan { expected: 3 });
        }
        Ok(Plane { points })
    }

    /// The plane cut out by the linear forms whose coefficient rows are given
    /// (two independent forms in P^4).
    pub fn from_equations(field: PrimeField, equations: Vec<Vec<Elem>>) -> Result<Self, PolyError> {
        let basis = Matrix::from_rows(field, equations).nullspace();
        if basis.len() != 3 {
            return Err(PolyError::DegenerateSpan { expected: 3 });
        }
        let pts: Vec<ProjPoint> = basis
            .into_iter()
            .map(|v| ProjPoint::new(field, v))
            .collect::<Result<_, _>>()?;
        Self::new(field, pts.try_into().unwrap())
    }

    pub fn random<R: rand::Rng + ?Sized>(field: PrimeField, dim: usize, rng: &mut R) -> Self {
        loop {
            let pts = [
                ProjPoint::random(field, dim, rng),
                ProjPoint::random(field, dim, rng),
                ProjPoint::random(field, dim, rng),
            ];
            if let Ok(p) = Self::new(field, pts) {
                return p;
            }
        }
    }

    pub fn points(&self) -> &[ProjPoint; 3] {
        &self.points
    }

    pub fn point_at(&self, field: PrimeField, uvw: [Elem; 3]) -> Vec<Elem> {
        let n = self.points[0].0.len();
        (0..n)
            .map(|i| (0..3).fold(0, |acc, k| field.add(acc, field.mul(uvw[k], self.points[k].0[i]))))
            .collect()
    }

    /// The line of the plane through the plane-coordinate points `a` and `b`.
    pub fn line_through(&self, field: PrimeField, a: [Elem; 3], b: [Elem; 3]) -> Result<ProjLine, PolyError> {
        let pa = ProjPoint::new(field, self.point_at(field, a))?;
        let pb = ProjPoint::new(field, self.point_at(field, b))?;
        ProjLine::new(field, pa, pb)
    }
}

fn interpolation_nodes(field: PrimeField, d: u32) -> Result<Vec<Elem>, PolyError> {
    if field.modulus() <= d {
        return Err(PolyError::ModulusTooSmall {
            q: field.modulus(),
            degree: d,
        });
    }
    Ok((0..=d).collect())
}

/// Restriction of a form of degree `d` to a line: coefficients (in powers of
/// the affine parameter `t`) of `f(base + t * direction)`, length `d + 1`.
/// Computed by evaluating at `t = 0..=d` and interpolating.
pub fn restrict_to_line(f: &MultiPoly, line: &ProjLine) -> Result<Vec<Elem>, PolyError> {
    let field = f.field();
    let d = f.total_degree().unwrap_or(0);
    let nodes = interpolation_nodes(field, d)?;
    let values = nodes
        .iter()
        .map(|&t| f.eval(&line.point_at(field, t)))
        .collect::<Result<Vec<_>, _>>()?;
    let p = UniPoly::interpolate(field, &nodes, &values)?;
    Ok(p.padded(d as usize + 1))
}

/// Restriction of a homogeneous form of degree `d` to a plane, as a ternary
/// form in the plane coordinates `(u, v, w)`. Computed by interpolation on the
/// grid `{0..=d}^2` of the chart `w = 1`, then rehomogenized.
pub fn restrict_to_plane(f: &MultiPoly, plane: &Plane) -> Result<MultiPoly, PolyError> {
    let field = f.field();
    let d = f.total_degree().unwrap_or(0);
    let nodes = interpolation_nodes(field, d)?;
    // values[i][j] = f(u = i, v = j, w = 1)
    let mut rows_in_v: Vec<UniPoly> = Vec::with_capacity(nodes.len());
    for &u in &nodes {
        let vals = nodes
            .iter()
            .map(|&v| f.eval(&plane.point_at(field, [u, v, 1])))
            .collect::<Result<Vec<_>, _>>()?;
        rows_in_v.push(UniPoly::interpolate(field, &nodes, &vals)?);
    }
    let mut out = MultiPoly::zero(field, 3);
    let mut terms = Vec::new();
    for j in 0..=d as usize {
        let vals: Vec<Elem> = rows_in_v.iter().map(|p| p.padded(d as usize + 1)[j]).collect();
        let in_u = UniPoly::interpolate(field, &nodes, &vals)?;
        for (i, &c) in in_u.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if i + j > d as usize {
                // a form of degree d cannot produce these; only reachable for
                // inhomogeneous input
                return Err(PolyError::NotHomogeneous);
            }
            let w = d as usize - i - j;
            terms.push((Monomial::new(vec![i as u16, j as u16, w as u16]), c));
        }
    }
    if !terms.is_empty() {
        out = MultiPoly::from_terms(field, 3, terms)?;
    }
    Ok(out)
}

/// Restriction of a ternary form to the line through plane points `a`, `b`
/// (affine parameter `t`, `a + t b`), length `d + 1`.
pub fn restrict_ternary_to_line(f: &MultiPoly, a: [Elem; 3], b: [Elem; 3]) -> Result<Vec<Elem>, PolyError> {
    let field = f.field();
    let d = f.total_degree().unwrap_or(0);
    let nodes = interpolation_nodes(field, d)?;
    let values = nodes
        .iter()
        .map(|&t| {
            let p: Vec<Elem> = (0..3).map(|k| field.add(a[k], field.mul(t, b[k]))).collect();
            f.eval(&p)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UniPoly::interpolate(field, &nodes, &values)?.padded(d as usize + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn pt(f: PrimeField, v: &[Elem]) -> ProjPoint {
        ProjPoint::new(f, v.to_vec()).unwrap()
    }

    #[test]
    fn normalization() {
        let f = f101();
        assert_eq!(pt(f, &[0, 2, 4]).coords(), &[0, 1, 2]);
        assert!(ProjPoint::new(f, vec![0, 0]).is_err());
    }

    #[test]
    fn line_restriction_examples() {
        let f = f101();
        let x0 = MultiPoly::var(f, 5, 0);
        let line = ProjLine::new(f, pt(f, &[0, 0, 0, 0, 1]), pt(f, &[1, 0, 0, 0, 0])).unwrap();
        assert_eq!(restrict_to_line(&x0, &line).unwrap(), vec![0, 1]);

        // x0 * x1 * x2 vanishes on that line
        let cubic = x0.mul(&MultiPoly::var(f, 5, 1)).mul(&MultiPoly::var(f, 5, 2));
        assert_eq!(restrict_to_line(&cubic, &line).unwrap(), vec![0, 0, 0, 0]);

        // x0^3 on L(t) = (t : 1 : 0 : 0 : 0)
        let line2 = ProjLine::new(f, pt(f, &[0, 1, 0, 0, 0]), pt(f, &[1, 0, 0, 0, 0])).unwrap();
        assert_eq!(restrict_to_line(&x0.pow(3), &line2).unwrap(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn modulus_too_small_for_degree() {
        let f = PrimeField::new(5).unwrap();
        let p = MultiPoly::var(f, 2, 0).pow(5);
        let line = ProjLine::new(f, pt(f, &[1, 0]), pt(f, &[0, 1])).unwrap();
        assert!(matches!(
            restrict_to_line(&p, &line),
            Err(PolyError::ModulusTooSmall { .. })
        ));
    }

    #[test]
    fn plane_restriction_examples() {
        let f = f101();
        // coordinate plane x3 = x4 = 0 with its standard basis
        let plane = Plane::from_equations(f, vec![vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]]).unwrap();
        let x3 = MultiPoly::var(f, 5, 3);
        assert!(restrict_to_plane(&x3.pow(3), &plane).unwrap().is_zero());

        // a linear form restricts to a linear form in (u, v, w)
        let l = MultiPoly::linear(f, &[1, 2, 3, 4, 5]);
        let r = restrict_to_plane(&l, &plane).unwrap();
        assert_eq!(r.total_degree(), Some(1));
        for uvw in [[1, 0, 0], [0, 1, 0], [3, 5, 7]] {
            assert_eq!(r.eval(&uvw).unwrap(), l.eval(&plane.point_at(f, uvw)).unwrap());
        }

        // x0^2 x1 on the plane (u : v : w) -> (u : w : v : 0 : 0)
        let p = Plane::new(
            f,
            [
                pt(f, &[1, 0, 0, 0, 0]),
                pt(f, &[0, 0, 1, 0, 0]),
                pt(f, &[0, 1, 0, 0, 0]),
            ],
        )
        .unwrap();
        let c = MultiPoly::var(f, 5, 0).pow(2).mul(&MultiPoly::var(f, 5, 1));
        let r = restrict_to_plane(&c, &p).unwrap();
        let expected = MultiPoly::var(f, 3, 0).pow(2).mul(&MultiPoly::var(f, 3, 2));
        assert_eq!(r, expected);
    }

    #[test]
    fn degenerate_plane_rejected() {
        let f = f101();
        let a = pt(f, &[1, 0, 0, 0, 0]);
        let b = pt(f, &[0, 1, 0, 0, 0]);
        let c = pt(f, &[1, 1, 0, 0, 0]);
        assert!(Plane::new(f, [a, b, c]).is_err());
    }

    #[test]
    fn line_restriction_is_exact_on_random_cubics() {
        use rand::Rng;
        let f = f101();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let monos = super::super::poly::monomials_of_degree(5, 3);
        for _ in 0..1000 {
            let coeffs: Vec<Elem> = monos.iter().map(|_| f.random(&mut rng)).collect();
            let cubic = MultiPoly::from_dense(f, 5, &monos, &coeffs);
            let line = loop {
                let a = ProjPoint::random(f, 4, &mut rng);
                let b = ProjPoint::random(f, 4, &mut rng);
                if let Ok(l) = ProjLine::new(f, a, b) {
                    break l;
                }
            };
            let r = UniPoly::new(f, restrict_to_line(&cubic, &line).unwrap());
            let t = rng.gen_range(4..101);
            assert_eq!(r.eval(t), cubic.eval(&line.point_at(f, t)).unwrap());
        }
    }
}
