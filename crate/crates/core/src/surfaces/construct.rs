use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyalg::{
    binary_gcd_degree, monomials_of_degree, restrict_to_line, squarefree_degree, Elem, Matrix, MultiPoly, Plane,
    PrimeField, ProjLine, ProjPoint, UniPoly,
};

use super::implicit::{implicitize, projection_forms};
use super::section::section_degree_on_plane;
use super::{Family, Parametrization, SurfaceError, SurfaceModel};

const MAX_ATTEMPTS: usize = 8;
const SECTION_TRIES: usize = 3;

/// A 3x4 matrix of linear forms on P^4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatrix34 {
    entries: Vec<Vec<MultiPoly>>,
}

impl LinearMatrix34 {
    pub fn new(entries: Vec<Vec<MultiPoly>>) -> Result<Self, SurfaceError> {
        if entries.len() != 3 || entries.iter().any(|r| r.len() != 4) {
            return Err(SurfaceError::GeneratorCount {
                expected: 12,
                got: entries.iter().map(Vec::len).sum(),
            });
        }
        let field = entries[0][0].field();
        let mut rows = Vec::new();
        for e in entries.iter().flatten() {
            if e.nvars() != 5 || !(e.is_zero() || e.total_degree() == Some(1)) {
                return Err(SurfaceError::MixedDegrees);
            }
            rows.push((0..5).map(|i| e.coeff(&crate::polyalg::Monomial::var(5, i))).collect());
        }
        let span = Matrix::from_rows(field, rows).rank();
        if span < 2 {
            return Err(SurfaceError::DegenerateMatrix(span));
        }
        Ok(LinearMatrix34 { entries })
    }

    /// Entries drawn uniformly from the linear forms of P^4.
    pub fn random<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> Self {
        loop {
            let entries = (0..3)
                .map(|_| (0..4).map(|_| random_linear(field, 5, rng)).collect())
                .collect();
            if let Ok(m) = Self::new(entries) {
                return m;
            }
        }
    }

    /// Random first three columns, last column `(x3, x4, 0)`; the plane
    /// `x3 = x4 = 0` then meets the degeneracy locus in a cubic curve.
    pub fn random_with_parasitic_column<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> Self {
        loop {
            let entries = (0..3)
                .map(|i| {
                    let mut row: Vec<MultiPoly> = (0..3).map(|_| random_linear(field, 5, rng)).collect();
                    row.push(match i {
                        0 => MultiPoly::var(field, 5, 3),
                        1 => MultiPoly::var(field, 5, 4),
                        _ => MultiPoly::zero(field, 5),
                    });
                    row
                })
                .collect();
            if let Ok(m) = Self::new(entries) {
                return m;
            }
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    /// The four 3x3 minors, the `c`-th omitting column `c`.
    pub fn minors(&self) -> Vec<MultiPoly> {
        maximal_minors(&self.entries)
    }
}

fn random_linear<R: Rng + ?Sized>(field: PrimeField, nvars: usize, rng: &mut R) -> MultiPoly {
    let coeffs: Vec<Elem> = (0..nvars).map(|_| field.random(rng)).collect();
    MultiPoly::linear(field, &coeffs)
}

fn det3(m: [[&MultiPoly; 3]; 3]) -> MultiPoly {
    let minor = |a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, d: &MultiPoly| a.mul(b).sub(&c.mul(d));
    m[0][0]
        .mul(&minor(m[1][1], m[2][2], m[1][2], m[2][1]))
        .sub(&m[0][1].mul(&minor(m[1][0], m[2][2], m[1][2], m[2][0])))
        .add(&m[0][2].mul(&minor(m[1][0], m[2][1], m[1][1], m[2][0])))
}

fn maximal_minors(entries: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    (0..4)
        .map(|skip| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let pick = |i: usize, k: usize| &entries[i][cols[k]];
            det3([
                [pick(0, 0), pick(0, 1), pick(0, 2)],
                [pick(1, 0), pick(1, 1), pick(1, 2)],
                [pick(2, 0), pick(2, 1), pick(2, 2)],
            ])
        })
        .collect()
}

/// Accepts when one of a few random planes meets the model in `expected`
/// points.
fn check_section<R: Rng + ?Sized>(model: &SurfaceModel, expected: usize, rng: &mut R) -> Result<(), SurfaceError> {
    let mut last = None;
    for _ in 0..SECTION_TRIES {
        let plane = Plane::random(model.field(), model.ambient_dim(), rng);
        last = section_degree_on_plane(model, &plane, rng)?;
        if last == Some(expected) {
            return Ok(());
        }
    }
    Err(SurfaceError::SectionDegree { expected, got: last })
}

fn retry<T>(family: Family, mut attempt: impl FnMut() -> Result<T, SurfaceError>) -> Result<T, SurfaceError> {
    let mut reason = String::new();
    for _ in 0..MAX_ATTEMPTS {
        match attempt() {
            Ok(v) => return Ok(v),
            Err(e @ SurfaceError::GridTooSmall { .. }) => return Err(e),
            Err(e) => reason = e.to_string(),
        }
    }
    Err(SurfaceError::RetriesExhausted {
        family,
        attempts: MAX_ATTEMPTS,
        reason,
    })
}

fn model_from_minors<R: Rng + ?Sized>(
    family: Family,
    seed: u64,
    minors: Vec<MultiPoly>,
    rng: &mut R,
) -> Result<SurfaceModel, SurfaceError> {
    let gens: Vec<MultiPoly> = minors.into_iter().filter(|m| !m.is_zero()).collect();
    if gens.is_empty() {
        return Err(SurfaceError::ZeroMinors);
    }
    let model = SurfaceModel::new(family, seed, gens, None)?;
    check_section(&model, 6, rng)?;
    Ok(model)
}

/// Degeneracy locus of `m`: the surface cut by its four maximal minors.
pub fn bordiga_from_matrix(m: &LinearMatrix34, seed: u64) -> Result<SurfaceModel, SurfaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    model_from_minors(Family::Bordiga, seed, m.minors(), &mut rng)
}

pub fn bordiga_random(field: PrimeField, seed: u64) -> Result<SurfaceModel, SurfaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    retry(Family::Bordiga, || {
        let m = LinearMatrix34::random(field, &mut rng);
        model_from_minors(Family::Bordiga, seed, m.minors(), &mut rng)
    })
}

/// A Bordiga surface together with the plane `x3 = x4 = 0`, which meets it
/// in the cubic curve `det(A) = 0` of the first three columns.
pub fn bordiga_with_parasitic_plane(field: PrimeField, seed: u64) -> Result<(SurfaceModel, Plane), SurfaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = retry(Family::Bordiga, || {
        let m = LinearMatrix34::random_with_parasitic_column(field, &mut rng);
        model_from_minors(Family::Bordiga, seed, m.minors(), &mut rng)
    })?;
    let e = |i: usize| (0..5).map(|j| (i == j) as Elem).collect::<Vec<_>>();
    let plane = Plane::from_equations(field, vec![e(3), e(4)])?;
    Ok((model, plane))
}

/// A hyperplane section of the secant variety of the rational normal quintic
/// curve, with the hyperplane and the quintic whose roots are the parameters
/// of the points where the hyperplane meets the curve.
#[derive(Clone, Debug)]
pub struct ZakSurface {
    pub model: SurfaceModel,
    pub hyperplane: Vec<Elem>,
    pub parameter_polynomial: UniPoly,
}

pub fn zak_bordiga(field: PrimeField, seed: u64) -> Result<ZakSurface, SurfaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = |i: usize| MultiPoly::var(field, 6, i);
    let catalecticant: Vec<Vec<MultiPoly>> = (0..3).map(|i| (0..4).map(|j| z(i + j)).collect()).collect();
    let minors = maximal_minors(&catalecticant);
    retry(Family::Zak, || {
        let h: Vec<Elem> = (0..6).map(|_| field.random(&mut rng)).collect();
        let quintic = UniPoly::new(field, h.clone());
        if quintic.degree() != Some(5) || squarefree_degree(&quintic) != Some(5) {
            return Err(SurfaceError::SectionDegree {
                expected: 5,
                got: squarefree_degree(&quintic),
            });
        }
        let basis = projection_forms(field, std::slice::from_ref(&h));
        // z_j = sum_i y_i basis[i][j]
        let images: Vec<MultiPoly> = (0..6)
            .map(|j| {
                let coeffs: Vec<Elem> = basis.iter().map(|b| b[j]).collect();
                MultiPoly::linear(field, &coeffs)
            })
            .collect();
        let sliced = minors
            .iter()
            .map(|m| m.substitute(&images))
            .collect::<Result<Vec<_>, _>>()?;
        let model = model_from_minors(Family::Zak, seed, sliced, &mut rng)?;
        Ok(ZakSurface {
            model,
            hyperplane: h,
            parameter_polynomial: quintic,
        })
    })
}

fn veronese_parametrization(field: PrimeField) -> Parametrization {
    let x = |i| MultiPoly::var(field, 3, i);
    let forms = vec![
        x(0).mul(&x(0)),
        x(0).mul(&x(1)),
        x(0).mul(&x(2)),
        x(1).mul(&x(1)),
        x(1).mul(&x(2)),
        x(2).mul(&x(2)),
    ];
    Parametrization::new(3, vec![0], forms)
}

fn symmetric_det(field: PrimeField, c: &[Elem]) -> Elem {
    Matrix::from_rows(
        field,
        vec![vec![c[0], c[1], c[2]], vec![c[1], c[3], c[4]], vec![c[2], c[4], c[5]]],
    )
    .determinant()
}

/// Projection of the Veronese surface of P^5 to P^4. The center is off the
/// secant variety (a smooth surface cut by cubics) unless `degenerate`, in
/// which case it lies on a secant line and the image is cut by two quadrics.
pub fn veronese_projection(field: PrimeField, seed: u64, degenerate: bool) -> Result<SurfaceModel, SurfaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let par = veronese_parametrization(field);
    let family = if degenerate {
        Family::VeroneseDegenerate
    } else {
        Family::Veronese
    };
    retry(family, || {
        let center: Vec<Elem> = if degenerate {
            let p1 = ProjPoint::random(field, 2, &mut rng);
            let p2 = ProjPoint::random(field, 2, &mut rng);
            let lambda = field.random_nonzero(&mut rng);
            let a = par.forms.iter().map(|f| f.eval(p1.coords()).unwrap());
            let b = par.forms.iter().map(|f| f.eval(p2.coords()).unwrap());
            a.zip(b).map(|(x, y)| field.add(x, field.mul(lambda, y))).collect()
        } else {
            (0..6).map(|_| field.random(&mut rng)).collect()
        };
        let rank = Matrix::from_rows(
            field,
            vec![
                vec![center[0], center[1], center[2]],
                vec![center[1], center[3], center[4]],
                vec![center[2], center[4], center[5]],
            ],
        )
        .rank();
        let ok = if degenerate {
            rank == 2
        } else {
            symmetric_det(field, &center) != 0
        };
        if !ok {
            return Err(SurfaceError::NotOnImage);
        }
        let projected = par.compose_linear(&projection_forms(field, &[center]));
        let model = if degenerate {
            let quadrics = implicitize(&projected, 2)?;
            if quadrics.len() != 2 {
                return Err(SurfaceError::GeneratorCount {
                    expected: 2,
                    got: quadrics.len(),
                });
            }
            SurfaceModel::new(family, seed, quadrics, Some(projected))?
        } else {
            let quadrics = implicitize(&projected, 2)?;
            if !quadrics.is_empty() {
                return Err(SurfaceError::GeneratorCount {
                    expected: 0,
                    got: quadrics.len(),
                });
            }
            SurfaceModel::new(family, seed, implicitize(&projected, 3)?, Some(projected))?
        };
        check_section(&model, 4, &mut rng)?;
        Ok(model)
    })
}

fn collinear(field: PrimeField, a: &[Elem], b: &[Elem], c: &[Elem]) -> bool {
    Matrix::from_rows(field, vec![a.to_vec(), b.to_vec(), c.to_vec()]).determinant() == 0
}

/// Anticanonical Del Pezzo surface of degree 5 in P^5: the plane cubics
/// through the given points.
fn delpezzo_parametrization(field: PrimeField, points: &[ProjPoint]) -> Parametrization {
    let monos = monomials_of_degree(3, 3);
    let rows: Vec<Vec<Elem>> = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|m| {
                    MultiPoly::from_dense(field, 3, std::slice::from_ref(m), &[1])
                        .eval(p.coords())
                        .unwrap()
                })
                .collect()
        })
        .collect();
    let forms = Matrix::from_rows(field, rows)
        .nullspace()
        .into_iter()
        .map(|c| MultiPoly::from_dense(field, 3, &monos, &c))
        .collect();
    Parametrization::new(3, vec![0], forms)
}

fn random_point_off<R: Rng + ?Sized>(field: PrimeField, dim: usize, equations: &[MultiPoly], rng: &mut R) -> Vec<Elem> {
    loop {
        let p = ProjPoint::random(field, dim, rng);
        if equations.iter().any(|g| g.eval(p.coords()).unwrap() != 0) {
            return p.coords().to_vec();
        }
    }
}

/// Projection to P^4 of the quintic Del Pezzo surface of P^5 from a random
/// point off the surface.
pub fn delpezzo_projection(field: PrimeField, seed: u64) -> Result<SurfaceModel, SurfaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    retry(Family::Delpezzo, || {
        let pts: Vec<ProjPoint> = (0..4).map(|_| ProjPoint::random(field, 2, &mut rng)).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    if collinear(field, pts[i].coords(), pts[j].coords(), pts[k].coords()) {
                        return Err(SurfaceError::NotOnImage);
                    }
                }
            }
        }
        let par = delpezzo_parametrization(field, &pts);
        if par.forms.len() != 6 {
            return Err(SurfaceError::GeneratorCount {
                expected: 6,
                got: par.forms.len(),
            });
        }
        let quadrics = implicitize(&par, 2)?;
        if quadrics.len() != 5 {
            return Err(SurfaceError::GeneratorCount {
                expected: 5,
                got: quadrics.len(),
            });
        }
        let center = random_point_off(field, 5, &quadrics, &mut rng);
        let projected = par.compose_linear(&projection_forms(field, &[center]));
        let model = SurfaceModel::new(Family::Delpezzo, seed, implicitize(&projected, 3)?, Some(projected))?;
        check_section(&model, 5, &mut rng)?;
        Ok(model)
    })
}

/// The plane of a conic of a projected Del Pezzo model: the image of a line
/// through one of the four base points of its parametrization.
pub fn delpezzo_conic_plane<R: Rng + ?Sized>(model: &SurfaceModel, rng: &mut R) -> Result<Plane, SurfaceError> {
    let field = model.field();
    let par = model.parametrization().ok_or(SurfaceError::NotOnImage)?;
    let q = field.modulus();
    let mut base = None;
    'search: for a in 0..=1 {
        for b in 0..q {
            for c in 0..q {
                let p = if a == 1 { [1, b, c] } else { [0, 1, b] };
                if a == 0 && c > 0 {
                    break;
                }
                if par.forms.iter().all(|f| f.eval(&p).unwrap() == 0) {
                    base = Some(p);
                    break 'search;
                }
            }
        }
    }
    let base = base.ok_or(SurfaceError::NotOnImage)?;
    loop {
        let dir = ProjPoint::random(field, 2, rng);
        let on_line = |t: Elem| -> Vec<Elem> {
            let src: Vec<Elem> = (0..3)
                .map(|i| field.add(base[i], field.mul(t, dir.coords()[i])))
                .collect();
            par.forms.iter().map(|f| f.eval(&src).unwrap()).collect()
        };
        let pts: Result<Vec<ProjPoint>, _> = [1, 2, 3].iter().map(|&t| ProjPoint::new(field, on_line(t))).collect();
        if let Ok(pts) = pts {
            if let Ok(plane) = Plane::new(field, pts.try_into().unwrap()) {
                return Ok(plane);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScrollKind {
    S14,
    S23,
}

/// Rational normal scroll `S(a, b)` in P^(a+b+1) in the source variables
/// `(s, t, u, v)`.
fn scroll_parametrization(field: PrimeField, a: u16, b: u16) -> Parametrization {
    let mono = |s: u16, t: u16, u: u16, v: u16| {
        MultiPoly::from_dense(field, 4, &[crate::polyalg::Monomial::new(vec![s, t, u, v])], &[1])
    };
    let mut forms = Vec::new();
    for i in 0..=a {
        forms.push(mono(a - i, i, 1, 0));
    }
    for j in 0..=b {
        forms.push(mono(b - j, j, 0, 1));
    }
    Parametrization::new(4, vec![0, 2], forms)
}

/// Projection to P^4 of a quintic rational normal scroll of P^6 from a line
/// disjoint from it.
pub fn scroll_projection(kind: ScrollKind, field: PrimeField, seed: u64) -> Result<SurfaceModel, SurfaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b, family) = match kind {
        ScrollKind::S14 => (1, 4, Family::Scroll14),
        ScrollKind::S23 => (2, 3, Family::Scroll23),
    };
    let par = scroll_parametrization(field, a, b);
    let quadrics = implicitize(&par, 2)?;
    retry(family, || {
        let line = loop {
            let p = ProjPoint::random(field, 6, &mut rng);
            let d = ProjPoint::random(field, 6, &mut rng);
            if let Ok(l) = ProjLine::new(field, p, d) {
                break l;
            }
        };
        let restricted = quadrics
            .iter()
            .map(|g| restrict_to_line(g, &line))
            .collect::<Result<Vec<_>, _>>()?;
        if binary_gcd_degree(field, &restricted, 2) != Some(0) {
            return Err(SurfaceError::NotOnImage);
        }
        let center = vec![line.base().coords().to_vec(), line.direction().coords().to_vec()];
        let projected = par.compose_linear(&projection_forms(field, &center));
        // the cubics through a quintic scroll of P^4 also contain a plane
        let model = SurfaceModel::new(family, seed, implicitize(&projected, 4)?, Some(projected))?;
        check_section(&model, 5, &mut rng)?;
        Ok(model)
    })
}

/// Projection to P^4 of the quartic scroll `S(2, 2)` of P^5 from a point off
/// the scroll.
pub fn quartic_scroll_projection(field: PrimeField, seed: u64) -> Result<SurfaceModel, SurfaceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let par = scroll_parametrization(field, 2, 2);
    let quadrics = implicitize(&par, 2)?;
    retry(Family::QuarticScroll, || {
        let center = random_point_off(field, 5, &quadrics, &mut rng);
        let projected = par.compose_linear(&projection_forms(field, &[center]));
        let model = SurfaceModel::new(
            Family::QuarticScroll,
            seed,
            implicitize(&projected, 3)?,
            Some(projected),
        )?;
        check_section(&model, 4, &mut rng)?;
        Ok(model)
    })
}

/// The ruling line over the parameter `(1 : t)` of a projected scroll model.
pub fn quartic_scroll_ruling(model: &SurfaceModel, t: Elem) -> Result<ProjLine, SurfaceError> {
    let field = model.field();
    let par = model.parametrization().ok_or(SurfaceError::NotOnImage)?;
    let image = |u: Elem, v: Elem| -> Vec<Elem> { par.forms.iter().map(|f| f.eval(&[1, t, u, v]).unwrap()).collect() };
    let p = ProjPoint::new(field, image(1, 0))?;
    let d = ProjPoint::new(field, image(0, 1))?;
    Ok(ProjLine::new(field, p, d)?)
}
