use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::polyalg::{
    binary_gcd_degree, restrict_ternary_to_line, restrict_to_plane, Elem, MultiPoly, Plane, ProjPoint,
};
use crate::surfaces::SurfaceModel;

use super::search::trisecants_through_point;
use super::TrisecantError;

pub const SCHEMA_VERSION: &str = "v1";

const MAX_SAMPLES_PER_TRIAL: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCount {
    pub point: ProjPoint,
    /// F_q-rational trisecant lines through the point.
    pub count: u64,
    pub contained: u64,
}

/// Counts of trisecant lines through sampled points. `wall_time_ms` is only
/// filled on request, so reports are reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrisecantReport {
    pub schema: String,
    pub family: String,
    pub q: u32,
    pub seed: u64,
    pub trials: usize,
    pub counts: Vec<PointCount>,
    pub mode: u64,
    /// Indices into `counts` of points whose count differs from the mode.
    pub anomalies: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl TrisecantReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Most frequent value, smallest on ties.
fn mode(values: &[u64]) -> u64 {
    let mut freq: BTreeMap<u64, usize> = BTreeMap::new();
    for &v in values {
        *freq.entry(v).or_default() += 1;
    }
    let best = freq.values().copied().max().unwrap_or(0);
    freq.into_iter().find(|&(_, c)| c == best).map(|(v, _)| v).unwrap_or(0)
}

/// Samples `trials` random points off the surface (from a generator seeded
/// with `seed`) and counts the trisecant lines through each.
pub fn estimate_order(
    model: &SurfaceModel,
    trials: usize,
    seed: u64,
    timing: bool,
) -> Result<TrisecantReport, TrisecantError> {
    if trials == 0 {
        return Err(TrisecantError::NoTrials);
    }
    if model.ambient_dim() != 4 {
        return Err(TrisecantError::WrongAmbient(model.ambient_dim()));
    }
    let start = Instant::now();
    let field = model.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut point = None;
        for _ in 0..MAX_SAMPLES_PER_TRIAL {
            let p = ProjPoint::random(field, 4, &mut rng);
            if !model.contains_point(p.coords()) {
                point = Some(p);
                break;
            }
        }
        let p = point.ok_or(TrisecantError::NoPointOffSurface(MAX_SAMPLES_PER_TRIAL))?;
        let found = trisecants_through_point(model, &p)?;
        counts.push(PointCount {
            count: found.count(),
            contained: found.contained.len() as u64,
            point: p,
        });
    }
    let values: Vec<u64> = counts.iter().map(|c| c.count).collect();
    let m = mode(&values);
    let anomalies = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != m)
        .map(|(i, _)| i)
        .collect();
    Ok(TrisecantReport {
        schema: SCHEMA_VERSION.to_string(),
        family: model.family().label().to_string(),
        q: field.modulus(),
        seed,
        trials,
        counts,
        mode: m,
        anomalies,
        wall_time_ms: timing.then(|| start.elapsed().as_millis() as u64),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneSectionReport {
    pub schema: String,
    pub plane: Plane,
    /// Degree of the plane curve common to all restricted generators.
    pub gcd_degree: u32,
    /// Degree left in each generator after removing that curve; `None` for
    /// generators vanishing on the whole plane.
    pub residual_degrees: Vec<Option<u32>>,
}

const PENCIL_LINES: usize = 4;

fn random_plane_point<R: Rng + ?Sized>(field: crate::polyalg::PrimeField, rng: &mut R) -> [Elem; 3] {
    loop {
        let p = [field.random(rng), field.random(rng), field.random(rng)];
        if p.iter().any(|&c| c != 0) {
            return p;
        }
    }
}

/// Degree of the curve the surface cuts on `plane`: the smallest common
/// factor of the restricted generators along a few random lines of the plane,
/// confirmed on one more line.
pub fn plane_section<R: Rng + ?Sized>(
    model: &SurfaceModel,
    plane: &Plane,
    rng: &mut R,
) -> Result<PlaneSectionReport, TrisecantError> {
    let field = model.field();
    let d = model.generator_degree();
    let restricted: Vec<MultiPoly> = model
        .generators()
        .iter()
        .map(|g| restrict_to_plane(g, plane))
        .collect::<Result<_, _>>()?;
    let nonzero: Vec<&MultiPoly> = restricted.iter().filter(|f| !f.is_zero()).collect();
    let g = if nonzero.is_empty() {
        d
    } else {
        let along = |rng: &mut R| -> Result<u32, TrisecantError> {
            loop {
                let a = random_plane_point(field, rng);
                let b = random_plane_point(field, rng);
                let independent = (0..3).any(|i| (0..3).any(|j| field.mul(a[i], b[j]) != field.mul(a[j], b[i])));
                if !independent {
                    continue;
                }
                let forms = nonzero
                    .iter()
                    .map(|f| restrict_ternary_to_line(f, a, b))
                    .collect::<Result<Vec<_>, _>>()?;
                // a form vanishing on the line bounds nothing; skip that line
                if let Some(deg) = binary_gcd_degree(field, &forms, d as usize) {
                    if forms.iter().all(|c| c.iter().any(|&x| x != 0)) {
                        return Ok(deg as u32);
                    }
                }
            }
        };
        let mut best = u32::MAX;
        for _ in 0..PENCIL_LINES {
            best = best.min(along(rng)?);
        }
        loop {
            let confirm = along(rng)?;
            if confirm >= best {
                break;
            }
            best = confirm;
        }
        best
    };
    let residual_degrees = restricted.iter().map(|f| (!f.is_zero()).then(|| d - g)).collect();
    Ok(PlaneSectionReport {
        schema: SCHEMA_VERSION.to_string(),
        plane: plane.clone(),
        gcd_degree: g,
        residual_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::mode;

    #[test]
    fn mode_prefers_smallest_on_ties() {
        assert_eq!(mode(&[1, 1, 0, 2]), 1);
        assert_eq!(mode(&[0, 1]), 0);
        assert_eq!(mode(&[3]), 3);
        assert_eq!(mode(&[]), 0);
    }
}
