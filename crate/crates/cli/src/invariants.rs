use congruence_core::invariants::{
    cayley_class, clebsch_h, congruence_sectional_genus, decompose_x, degree_bounds, double_point_consistency,
    integrality_gate, multiplicity_k, parasitic_excess, parasitic_multiplicity, smooth_quintic_parity,
    triple_points_general, triple_points_p4, SurfaceInvariants,
};
use serde_json::json;

use crate::{Output, EXIT_USAGE};

const FORMULAS: &str = "3ple m pi K2 chi [n=N] | au m pi chi | parity chi pi | residual m pi K2 chi | \
cayley h m | k h m | clebsch m pi | gate m | excess m k a [n=N] | decompose x [n=N] | \
multiplicity mu.. [n=N] | bounds n k' | genus p_a a";

struct Args {
    values: Vec<i64>,
    n: Option<u32>,
}

fn parse_args(raw: &[String]) -> Result<Args, String> {
    let mut values = Vec::new();
    let mut n = None;
    for a in raw {
        if let Some(v) = a.strip_prefix("n=") {
            n = Some(v.parse().map_err(|_| format!("bad dimension '{a}'"))?);
        } else {
            values.push(a.parse().map_err(|_| format!("'{a}' is not an integer"))?);
        }
    }
    Ok(Args { values, n })
}

fn arity(name: &str, args: &Args, k: usize) -> Result<(), String> {
    if args.values.len() != k {
        return Err(format!("{name} takes {k} integer arguments, got {}", args.values.len()));
    }
    Ok(())
}

fn nonneg(v: i64) -> Result<u64, String> {
    u64::try_from(v).map_err(|_| format!("{v} must be nonnegative"))
}

fn evaluate(name: &str, args: &Args) -> Result<(String, serde_json::Value), String> {
    let v = &args.values;
    let e = |err: congruence_core::invariants::InvariantsError| err.to_string();
    let scalar = |x: i64| (x.to_string(), json!(x));
    Ok(match name {
        "3ple" => {
            arity(name, args, 4)?;
            let inv = SurfaceInvariants::new(args.n.unwrap_or(4), v[0], v[1], v[2], v[3]).map_err(e)?;
            scalar(triple_points_general(&inv).map_err(e)?)
        }
        "au" => {
            arity(name, args, 3)?;
            scalar(triple_points_p4(v[0], v[1], v[2]))
        }
        "parity" => {
            arity(name, args, 2)?;
            scalar(smooth_quintic_parity(v[0], v[1]))
        }
        "residual" => {
            arity(name, args, 4)?;
            let inv = SurfaceInvariants::new(4, v[0], v[1], v[2], v[3]).map_err(e)?;
            let c = double_point_consistency(&inv).map_err(e)?;
            (
                format!("residual {}, delta {}", c.residual, c.delta),
                json!({ "residual": c.residual, "delta": c.delta }),
            )
        }
        "cayley" => {
            arity(name, args, 2)?;
            scalar(cayley_class(v[0], v[1]).map_err(e)?)
        }
        "k" => {
            arity(name, args, 2)?;
            scalar(multiplicity_k(v[0], v[1]))
        }
        "clebsch" => {
            arity(name, args, 2)?;
            scalar(clebsch_h(v[0], v[1]).map_err(e)?)
        }
        "gate" => {
            arity(name, args, 1)?;
            match integrality_gate(v[0]).map_err(e)? {
                Some(h) => scalar(h),
                None => ("non-integral".to_string(), serde_json::Value::Null),
            }
        }
        "excess" => {
            arity(name, args, 3)?;
            scalar(parasitic_excess(v[0], v[1], v[2], args.n.unwrap_or(4)).map_err(e)?)
        }
        "decompose" => {
            arity(name, args, 1)?;
            let ds = decompose_x(nonneg(v[0])?, args.n.unwrap_or(4));
            let text: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
            (text.join("\n"), serde_json::to_value(&ds).unwrap())
        }
        "multiplicity" => {
            let mus = v
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| format!("bad mu {x}")))
                .collect::<Result<Vec<_>, _>>()?;
            let i = parasitic_multiplicity(&mus, args.n.unwrap_or(4));
            (i.to_string(), json!(i))
        }
        "bounds" => {
            arity(name, args, 2)?;
            let n = u32::try_from(v[0]).map_err(|_| "bad n".to_string())?;
            let k = u32::try_from(v[1]).map_err(|_| "bad k'".to_string())?;
            let (lo, hi) = degree_bounds(n, k).map_err(e)?;
            (
                format!("({lo},{hi})"),
                json!({ "lower": lo.to_string(), "upper": hi.to_string() }),
            )
        }
        "genus" => {
            arity(name, args, 2)?;
            scalar(congruence_sectional_genus(v[0], v[1]).map_err(e)?)
        }
        _ => return Err(format!("unknown formula '{name}'; available: {FORMULAS}")),
    })
}

pub(crate) fn cmd_invariants(name: &str, raw: &[String], json_out: bool) -> Output {
    let result = parse_args(raw).and_then(|args| evaluate(name, &args));
    match result {
        Err(msg) => Output::fail(EXIT_USAGE, format!("{msg}\n")),
        Ok((text, value)) => {
            if json_out {
                let doc = json!({ "formula": name, "args": raw, "value": value });
                Output::ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
            } else {
                Output::ok(format!("{text}\n"))
            }
        }
    }
}
