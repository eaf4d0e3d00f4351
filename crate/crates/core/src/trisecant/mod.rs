//! Trisecant lines of surfaces in P^4 over F_q: the line test, exhaustive
//! counts through a point, order estimates and plane-section certificates.

mod report;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyalg::{binary_gcd_degree, restrict_to_line, PolyError, ProjLine};
use crate::surfaces::SurfaceModel;

pub use report::{estimate_order, plane_section, PlaneSectionReport, PointCount, TrisecantReport, SCHEMA_VERSION};
pub use search::{
    count_trisecants_through_point, trisecants_through_point, trisecants_through_point_unfiltered, PointSearch,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrisecantError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the point lies on the surface")]
    PointOnSurface,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("no point off the surface found after {0} samples")]
    NoPointOffSurface(usize),
    #[error("model lives in P^{0}; expected P^4")]
    WrongAmbient(usize),
}

/// Outcome of the line test. A line contained in the surface is not a
/// trisecant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineVerdict {
    Trisecant,
    Not,
    Contained,
}

/// Length of the scheme in which the generators cut `line`, or `None` when
/// they all vanish on it.
pub fn intersection_length(model: &SurfaceModel, line: &ProjLine) -> Result<Option<usize>, TrisecantError> {
    let restricted = model
        .generators()
        .iter()
        .map(|g| restrict_to_line(g, line))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(binary_gcd_degree(
        model.field(),
        &restricted,
        model.generator_degree() as usize,
    ))
}

/// Restricts every generator to `line` and compares the common factor of the
/// restrictions against 3. For cubic generators this is the rank-one test on
/// the coefficient matrix; quadric models never certify a trisecant.
pub fn is_trisecant(model: &SurfaceModel, line: &ProjLine) -> Result<LineVerdict, TrisecantError> {
    Ok(match intersection_length(model, line)? {
        None => LineVerdict::Contained,
        Some(_) if model.generator_degree() < 3 => LineVerdict::Not,
        Some(len) if len >= 3 => LineVerdict::Trisecant,
        Some(_) => LineVerdict::Not,
    })
}

pub fn line_in_surface(model: &SurfaceModel, line: &ProjLine) -> Result<bool, TrisecantError> {
    Ok(intersection_length(model, line)?.is_none())
}
