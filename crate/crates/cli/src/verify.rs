use clap::ValueEnum;
use congruence_core::polyalg::PrimeField;
use congruence_core::surfaces::{
    bordiga_random, delpezzo_projection, quartic_scroll_projection, scroll_projection, veronese_projection, Family,
    ScrollKind, SurfaceError, SurfaceModel,
};
use congruence_core::trisecant::estimate_order;

use crate::{write_out, Output, RunConfig, EXIT_CONSTRUCTION, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyFamily {
    Bordiga,
    Veronese,
    VeroneseDegenerate,
    Delpezzo,
    Scroll14,
    Scroll23,
    QuarticScroll,
}

impl VerifyFamily {
    pub fn family(self) -> Family {
        match self {
            VerifyFamily::Bordiga => Family::Bordiga,
            VerifyFamily::Veronese => Family::Veronese,
            VerifyFamily::VeroneseDegenerate => Family::VeroneseDegenerate,
            VerifyFamily::Delpezzo => Family::Delpezzo,
            VerifyFamily::Scroll14 => Family::Scroll14,
            VerifyFamily::Scroll23 => Family::Scroll23,
            VerifyFamily::QuarticScroll => Family::QuarticScroll,
        }
    }
}

/// Order of the trisecant congruence of each family over the complex numbers.
pub fn expected_order(family: Family) -> Option<u64> {
    match family {
        // degeneracy locus of a general 3x4 matrix of linear forms
        Family::Bordiga => Some(1),
        // smooth projected Veronese: one apparent triple point
        Family::Veronese => Some(1),
        // complete intersection of two quadrics: no trisecants at all
        Family::VeroneseDegenerate => Some(0),
        Family::Delpezzo => Some(1),
        Family::Scroll14 | Family::Scroll23 => Some(1),
        // quartic scrolls have no apparent triple points
        Family::QuarticScroll => Some(0),
        Family::Zak => None,
    }
}

pub fn build_model(family: VerifyFamily, field: PrimeField, seed: u64) -> Result<SurfaceModel, SurfaceError> {
    match family {
        VerifyFamily::Bordiga => bordiga_random(field, seed),
        VerifyFamily::Veronese => veronese_projection(field, seed, false),
        VerifyFamily::VeroneseDegenerate => veronese_projection(field, seed, true),
        VerifyFamily::Delpezzo => delpezzo_projection(field, seed),
        VerifyFamily::Scroll14 => scroll_projection(ScrollKind::S14, field, seed),
        VerifyFamily::Scroll23 => scroll_projection(ScrollKind::S23, field, seed),
        VerifyFamily::QuarticScroll => quartic_scroll_projection(field, seed),
    }
}

pub(crate) fn cmd_verify(family: VerifyFamily, config: &RunConfig) -> Output {
    let field = match PrimeField::new(config.q) {
        Ok(f) => f,
        Err(e) => return Output::fail(EXIT_USAGE, format!("--q {}: {e}\n", config.q)),
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Output::fail(EXIT_USAGE, format!("cannot start thread pool: {e}\n")),
    };
    let mut stderr = String::new();
    let model = match build_model(family, field, config.seed) {
        Ok(m) => m,
        Err(e) => return Output::fail(EXIT_CONSTRUCTION, format!("construction failed: {e}\n")),
    };
    if config.verbose > 0 {
        stderr.push_str(&format!(
            "{}: {} generators of degree {} over F_{}\n",
            model.family(),
            model.generators().len(),
            model.generator_degree(),
            config.q
        ));
    }
    let report = match pool.install(|| estimate_order(&model, config.trials as usize, config.seed, config.timing)) {
        Ok(r) => r,
        Err(e) => return Output::fail(EXIT_CONSTRUCTION, format!("search failed: {e}\n")),
    };
    let json = report.to_json() + "\n";
    if let Err(e) = write_out(&config.out, &json) {
        return e;
    }
    let expected = expected_order(family.family()).expect("every verify family has an expected order");
    let code = if report.mode == expected {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let stdout = if config.json {
        json
    } else {
        format!(
            "{} q={} seed={} trials={}: mode {} (expected {}), {} anomalies: {}\n",
            report.family,
            report.q,
            report.seed,
            report.trials,
            report.mode,
            expected,
            report.anomalies.len(),
            if code == EXIT_OK { "match" } else { "MISMATCH" }
        )
    };
    Output { code, stdout, stderr }
}
