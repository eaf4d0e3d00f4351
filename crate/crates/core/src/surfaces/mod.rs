//! Surfaces of P^4 over a prime field: determinantal (Bordiga) models and
//! implicitized projections of Veronese, Del Pezzo and scroll surfaces.

mod construct;
mod implicit;
mod section;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyalg::{Elem, MultiPoly, PolyDoc, PolyError, PrimeField};

pub use construct::{
    bordiga_from_matrix, bordiga_random, bordiga_with_parasitic_plane, delpezzo_conic_plane, delpezzo_projection,
    quartic_scroll_projection, quartic_scroll_ruling, scroll_projection, veronese_projection, zak_bordiga,
    LinearMatrix34, ScrollKind, ZakSurface,
};
pub use implicit::{implicitize, projection_forms};
pub use section::{section_degree, section_degree_on_plane};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("matrix entries span a space of linear forms of dimension {0} < 2")]
    DegenerateMatrix(usize),
    #[error("all maximal minors vanish identically")]
    ZeroMinors,
    #[error("generators must be nonzero forms of one common degree")]
    MixedDegrees,
    #[error("plane sections have degree {got:?}, expected {expected}")]
    SectionDegree { expected: usize, got: Option<usize> },
    #[error("evaluation grid of size {grid} does not fit in F_{q}")]
    GridTooSmall { grid: u32, q: u32 },
    #[error("a generator does not vanish on the parametrized image")]
    NotOnImage,
    #[error("construction of {family} failed after {attempts} attempts: {reason}")]
    RetriesExhausted {
        family: Family,
        attempts: usize,
        reason: String,
    },
    #[error("unexpected number of generators: {got}, expected {expected}")]
    GeneratorCount { expected: usize, got: usize },
}

/// Which construction produced a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Bordiga,
    Veronese,
    VeroneseDegenerate,
    Delpezzo,
    #[serde(rename = "scroll-14")]
    Scroll14,
    #[serde(rename = "scroll-23")]
    Scroll23,
    QuarticScroll,
    Zak,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Bordiga => "bordiga",
            Family::Veronese => "veronese",
            Family::VeroneseDegenerate => "veronese-degenerate",
            Family::Delpezzo => "delpezzo",
            Family::Scroll14 => "scroll-14",
            Family::Scroll23 => "scroll-23",
            Family::QuarticScroll => "quartic-scroll",
            Family::Zak => "zak",
        }
    }

    /// Degree of the surface in P^4.
    pub fn degree(self) -> usize {
        match self {
            Family::Bordiga | Family::Zak => 6,
            Family::Delpezzo | Family::Scroll14 | Family::Scroll23 => 5,
            Family::Veronese | Family::VeroneseDegenerate | Family::QuarticScroll => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A rational map into projective space given by forms in the source
/// variables. Points are sampled on the affine chart where the `chart`
/// variables equal 1; the remaining variables are the free parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub source_vars: usize,
    pub chart: Vec<usize>,
    pub forms: Vec<MultiPoly>,
}

impl Parametrization {
    pub fn new(source_vars: usize, chart: Vec<usize>, forms: Vec<MultiPoly>) -> Self {
        assert!(chart.iter().all(|&c| c < source_vars));
        assert!(forms.iter().all(|f| f.nvars() == source_vars));
        Parametrization {
            source_vars,
            chart,
            forms,
        }
    }

    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.source_vars).filter(|v| !self.chart.contains(v)).collect()
    }

    /// Image of the chart point with the given free parameter values.
    pub fn point(&self, params: &[Elem]) -> Vec<Elem> {
        let mut src = vec![1; self.source_vars];
        for (&v, &p) in self.free_vars().iter().zip(params) {
            src[v] = p;
        }
        self.forms.iter().map(|f| f.eval(&src).unwrap()).collect()
    }

    /// Composes with a linear map given by coefficient rows.
    pub fn compose_linear(&self, rows: &[Vec<Elem>]) -> Parametrization {
        let field = self.forms[0].field();
        let forms = rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.forms)
                    .fold(MultiPoly::zero(field, self.source_vars), |acc, (&c, f)| {
                        acc.add(&f.scale(c))
                    })
            })
            .collect();
        Parametrization::new(self.source_vars, self.chart.clone(), forms)
    }
}

/// A surface in P^n cut out by forms of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    field: PrimeField,
    ambient_dim: usize,
    degree: u32,
    generators: Vec<MultiPoly>,
    parametrization: Option<Parametrization>,
    family: Family,
    seed: u64,
}

impl SurfaceModel {
    pub fn new(
        family: Family,
        seed: u64,
        generators: Vec<MultiPoly>,
        parametrization: Option<Parametrization>,
    ) -> Result<Self, SurfaceError> {
        let first = generators.first().ok_or(SurfaceError::MixedDegrees)?;
        let field = first.field();
        let nvars = first.nvars();
        let degree = first.total_degree().ok_or(SurfaceError::MixedDegrees)?;
        for g in &generators {
            if g.nvars() != nvars || g.total_degree() != Some(degree) || !g.is_homogeneous() {
                return Err(SurfaceError::MixedDegrees);
            }
        }
        if let Some(p) = &parametrization {
            if p.forms.len() != nvars {
                return Err(PolyError::Arity {
                    expected: nvars,
                    got: p.forms.len(),
                }
                .into());
            }
        }
        Ok(SurfaceModel {
            field,
            ambient_dim: nvars - 1,
            degree,
            generators,
            parametrization,
            family,
            seed,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Common degree of the generators.
    pub fn generator_degree(&self) -> u32 {
        self.degree
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn parametrization(&self) -> Option<&Parametrization> {
        self.parametrization.as_ref()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Does every generator vanish at `p`?
    pub fn contains_point(&self, p: &[Elem]) -> bool {
        self.generators.iter().all(|g| g.eval(p).unwrap() == 0)
    }

    /// Checks that every generator vanishes at `samples` random image points.
    pub fn vanishes_on_image<R: rand::Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> bool {
        let Some(par) = &self.parametrization else {
            return true;
        };
        let k = par.free_vars().len();
        (0..samples).all(|_| {
            let params: Vec<Elem> = (0..k).map(|_| self.field.random(rng)).collect();
            self.contains_point(&par.point(&params))
        })
    }

    /// Same model with each generator multiplied by the given nonzero scalar.
    pub fn scaled(&self, factors: &[Elem]) -> SurfaceModel {
        let mut out = self.clone();
        for (g, &c) in out.generators.iter_mut().zip(factors) {
            *g = g.scale(c);
        }
        out
    }

    pub fn to_doc(&self) -> SurfaceDoc {
        SurfaceDoc {
            modulus: self.field.modulus(),
            family: self.family,
            seed: self.seed,
            ambient_dim: self.ambient_dim,
            generators: self.generators.iter().map(PolyDoc::from).collect(),
            parametrization: self.parametrization.as_ref().map(|p| ParametrizationDoc {
                source_vars: p.source_vars,
                chart: p.chart.clone(),
                forms: p.forms.iter().map(PolyDoc::from).collect(),
            }),
        }
    }

    pub fn from_doc(doc: SurfaceDoc) -> Result<Self, SurfaceError> {
        let field = PrimeField::new(doc.modulus)?;
        let generators = doc
            .generators
            .into_iter()
            .map(|d| d.into_poly(field))
            .collect::<Result<Vec<_>, _>>()?;
        let parametrization = match doc.parametrization {
            None => None,
            Some(p) => {
                let forms = p
                    .forms
                    .into_iter()
                    .map(|d| d.into_poly(field))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(Parametrization::new(p.source_vars, p.chart, forms))
            }
        };
        let model = SurfaceModel::new(doc.family, doc.seed, generators, parametrization)?;
        if model.ambient_dim != doc.ambient_dim {
            return Err(PolyError::Arity {
                expected: doc.ambient_dim + 1,
                got: model.ambient_dim + 1,
            }
            .into());
        }
        Ok(model)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametrizationDoc {
    pub source_vars: usize,
    pub chart: Vec<usize>,
    pub forms: Vec<PolyDoc>,
}

/// JSON form of a [`SurfaceModel`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub modulus: u32,
    pub family: Family,
    pub seed: u64,
    pub ambient_dim: usize,
    pub generators: Vec<PolyDoc>,
    pub parametrization: Option<ParametrizationDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{Monomial, Plane};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    fn mode_section(model: &SurfaceModel) -> Option<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        section_degree(model, 5, &mut rng).unwrap()
    }

    #[test]
    fn bordiga_has_four_cubic_minors() {
        let m = bordiga_random(f101(), 3).unwrap();
        assert_eq!(m.generators().len(), 4);
        assert_eq!(m.generator_degree(), 3);
        assert_eq!(mode_section(&m), Some(6));
        assert_eq!(m, bordiga_random(f101(), 3).unwrap());
    }

    #[test]
    fn cone_and_zero_minor_rejection() {
        let f = f101();
        let x0 = MultiPoly::var(f, 5, 0);
        let cone: Vec<Vec<MultiPoly>> = (0..3)
            .map(|i| (0..4).map(|j| x0.scale((1 + i * 4 + j) as Elem)).collect())
            .collect();
        assert_eq!(LinearMatrix34::new(cone), Err(SurfaceError::DegenerateMatrix(1)));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = LinearMatrix34::random(f, &mut rng);
        let row: Vec<MultiPoly> = (0..4).map(|j| m.entry(0, j).clone()).collect();
        let repeated =
            LinearMatrix34::new(vec![row.clone(), row, (0..4).map(|j| m.entry(2, j).clone()).collect()]).unwrap();
        assert_eq!(bordiga_from_matrix(&repeated, 0), Err(SurfaceError::ZeroMinors));
    }

    #[test]
    fn parasitic_column_minor_is_plane_cubic() {
        let f = f101();
        let (model, plane) = bordiga_with_parasitic_plane(f, 2).unwrap();
        let on_plane: Vec<MultiPoly> = model
            .generators()
            .iter()
            .map(|g| crate::polyalg::restrict_to_plane(g, &plane).unwrap())
            .collect();
        // only the minor avoiding the special column survives on the plane
        assert_eq!(on_plane.iter().filter(|g| !g.is_zero()).count(), 1);
        assert_eq!(mode_section(&model), Some(6));
    }

    #[test]
    fn zak_slice() {
        let z = zak_bordiga(f101(), 4).unwrap();
        assert_eq!(z.model.generators().len(), 4);
        assert_eq!(z.model.generator_degree(), 3);
        assert_eq!(z.parameter_polynomial.degree(), Some(5));
        assert_eq!(crate::polyalg::squarefree_degree(&z.parameter_polynomial), Some(5));
        assert_eq!(mode_section(&z.model), Some(6));
    }

    #[test]
    fn veronese_generic_and_degenerate() {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let generic = veronese_projection(f, 1, false).unwrap();
        assert_eq!(generic.generator_degree(), 3);
        assert_eq!(generic.generators().len(), 7);
        assert!(implicitize(generic.parametrization().unwrap(), 2).unwrap().is_empty());
        assert!(generic.vanishes_on_image(50, &mut rng));
        assert_eq!(mode_section(&generic), Some(4));

        let degenerate = veronese_projection(f, 1, true).unwrap();
        assert_eq!(degenerate.generator_degree(), 2);
        assert_eq!(degenerate.generators().len(), 2);
        assert!(degenerate.vanishes_on_image(50, &mut rng));
        assert_eq!(mode_section(&degenerate), Some(4));
    }

    #[test]
    fn delpezzo_cubic_count_is_stable() {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for seed in 0..3 {
            let m = delpezzo_projection(f, seed).unwrap();
            assert_eq!(m.generators().len(), 5);
            assert!(m.vanishes_on_image(200, &mut rng));
            assert_eq!(mode_section(&m), Some(5));
        }
    }

    #[test]
    fn quintic_scrolls_need_quartics() {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for kind in [ScrollKind::S14, ScrollKind::S23] {
            let m = scroll_projection(kind, f, 0).unwrap();
            assert_eq!(m.generator_degree(), 4);
            assert_eq!(m.generators().len(), 18);
            assert!(m.vanishes_on_image(200, &mut rng));
            assert_eq!(mode_section(&m), Some(5));
            // the cubic generators alone also cut out a plane
            let cubics = implicitize(m.parametrization().unwrap(), 3).unwrap();
            let cubic_model = SurfaceModel::new(m.family(), 0, cubics, None).unwrap();
            assert_eq!(mode_section(&cubic_model), Some(6));
        }
    }

    #[test]
    fn quartic_scroll() {
        let f = f101();
        let m = quartic_scroll_projection(f, 5).unwrap();
        assert_eq!(m.generator_degree(), 3);
        assert_eq!(mode_section(&m), Some(4));
        let ruling = quartic_scroll_ruling(&m, 17).unwrap();
        for t in 0..10 {
            assert!(m.contains_point(&ruling.point_at(f, t)));
        }
    }

    #[test]
    fn json_round_trip() {
        let f = f101();
        for m in [bordiga_random(f, 1).unwrap(), veronese_projection(f, 2, false).unwrap()] {
            let json = serde_json::to_string(&m.to_doc()).unwrap();
            let back = SurfaceModel::from_doc(serde_json::from_str(&json).unwrap()).unwrap();
            assert_eq!(back, m);
            assert_eq!(serde_json::to_string(&back.to_doc()).unwrap(), json);
        }
    }

    #[test]
    fn mixed_degrees_rejected() {
        let f = f101();
        let x = |i| MultiPoly::var(f, 5, i);
        let gens = vec![x(0).mul(&x(1)), x(2).mul(&x(3)).mul(&x(4))];
        assert_eq!(
            SurfaceModel::new(Family::Bordiga, 0, gens, None),
            Err(SurfaceError::MixedDegrees)
        );
        let inhom = MultiPoly::from_terms(f, 5, vec![(Monomial::var(5, 0), 1), (Monomial::one(5), 1)]).unwrap();
        assert!(SurfaceModel::new(Family::Bordiga, 0, vec![inhom], None).is_err());
    }

    #[test]
    fn generic_plane_has_finite_section() {
        let f = f101();
        let m = bordiga_random(f, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut seen = 0;
        for _ in 0..10 {
            let plane = Plane::random(f, 4, &mut rng);
            if let Some(d) = section_degree_on_plane(&m, &plane, &mut rng).unwrap() {
                assert!(d >= 6);
                seen += (d == 6) as usize;
            }
        }
        assert!(seen >= 7);
    }
}
