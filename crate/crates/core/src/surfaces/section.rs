use std::collections::BTreeMap;

use rand::Rng;

use crate::polyalg::{
    binary_gcd_degree, gcd_univariate, restrict_ternary_to_line, restrict_to_plane, Elem, MultiPoly, Plane, UniPoly,
};

use super::{SurfaceError, SurfaceModel};

fn random_combination<R: Rng + ?Sized>(forms: &[MultiPoly], rng: &mut R) -> MultiPoly {
    let field = forms[0].field();
    forms
        .iter()
        .fold(MultiPoly::zero(field, 3), |acc, f| acc.add(&f.scale(field.random(rng))))
}

/// Number of points, with multiplicity over the algebraic closure, in which
/// `plane` meets the surface. `Ok(None)` when the plane is unsuitable (points
/// on the line `w = 0`, a curve in the section, or an unlucky combination).
///
/// The count is the degree of `gcd(Res(A,B), Res(A,C), Res(B,C))` for three
/// random combinations of the restricted generators, resultants taken in `v`
/// on the chart `w = 1`.
pub fn section_degree_on_plane<R: Rng + ?Sized>(
    model: &SurfaceModel,
    plane: &Plane,
    rng: &mut R,
) -> Result<Option<usize>, SurfaceError> {
    let field = model.field();
    let d = model.generator_degree() as usize;
    let restricted: Vec<MultiPoly> = model
        .generators()
        .iter()
        .map(|g| restrict_to_plane(g, plane))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|f| !f.is_zero())
        .collect();
    if restricted.len() < 2 {
        return Ok(None);
    }
    let at_infinity: Vec<Vec<Elem>> = restricted
        .iter()
        .map(|f| restrict_ternary_to_line(f, [1, 0, 0], [0, 1, 0]))
        .collect::<Result<_, _>>()?;
    if binary_gcd_degree(field, &at_infinity, d) != Some(0) {
        return Ok(None);
    }
    let combos: Vec<MultiPoly> = (0..3).map(|_| random_combination(&restricted, rng)).collect();
    if combos.iter().any(|c| c.eval(&[0, 1, 0]).unwrap() == 0) {
        return Ok(None);
    }
    let bound = d * d;
    if field.modulus() as usize <= bound {
        return Err(SurfaceError::GridTooSmall {
            grid: bound as u32 + 1,
            q: field.modulus(),
        });
    }
    let nodes: Vec<Elem> = (0..=bound as Elem).collect();
    let mut values: Vec<Vec<Elem>> = (0..3).map(|_| Vec::with_capacity(nodes.len())).collect();
    for &u in &nodes {
        let in_v: Vec<UniPoly> = combos
            .iter()
            .map(|c| restrict_ternary_to_line(c, [u, 0, 1], [0, 1, 0]).map(|cs| UniPoly::new(field, cs)))
            .collect::<Result<_, _>>()?;
        values[0].push(in_v[0].resultant(&in_v[1]));
        values[1].push(in_v[0].resultant(&in_v[2]));
        values[2].push(in_v[1].resultant(&in_v[2]));
    }
    let mut g: Option<UniPoly> = None;
    for vals in &values {
        let r = UniPoly::interpolate(field, &nodes, vals)?;
        if r.is_zero() {
            return Ok(None);
        }
        g = Some(match g {
            None => r.monic(),
            Some(acc) => gcd_univariate(&acc, &r)?,
        });
    }
    Ok(g.and_then(|g| g.degree()))
}

/// Most frequent section degree over `planes` random planes (smallest value
/// on ties); `None` if no suitable plane was found.
pub fn section_degree<R: Rng + ?Sized>(
    model: &SurfaceModel,
    planes: usize,
    rng: &mut R,
) -> Result<Option<usize>, SurfaceError> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut found = 0;
    for _ in 0..planes * 4 {
        if found == planes {
            break;
        }
        let plane = Plane::random(model.field(), model.ambient_dim(), rng);
        if let Some(deg) = section_degree_on_plane(model, &plane, rng)? {
            *counts.entry(deg).or_default() += 1;
            found += 1;
        }
    }
    let best = counts.values().copied().max();
    Ok(best.and_then(|b| counts.iter().find(|(_, &c)| c == b).map(|(&d, _)| d)))
}
