use serde::{Deserialize, Serialize};

use super::{
    admissible_degrees, binomial, cayley_class, clebsch_h, integrality_gate, multiplicity_k, parasitic_excess,
    InvariantsError,
};

/// Numerical type of an irreducible fundamental surface of a first-order
/// congruence of lines in P^4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantRow {
    pub m: i64,
    pub h: i64,
    pub k: i64,
    pub a: i64,
    pub x: i64,
    pub pi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub field: String,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedRow {
    pub row: InvariantRow,
    pub audit: Vec<AuditEntry>,
}

/// A candidate `(m, h)` that was discarded, with the failing constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub m: i64,
    pub h: Option<i64>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub rows: Vec<ClassifiedRow>,
    pub exclusions: Vec<Exclusion>,
}

impl Classification {
    pub fn invariant_rows(&self) -> Vec<InvariantRow> {
        self.rows.iter().map(|r| r.row).collect()
    }
}

fn audit(field: &str, rule: &str) -> AuditEntry {
    AuditEntry {
        field: field.to_string(),
        rule: rule.to_string(),
    }
}

/// The admissible rows, sorted by `(m, h)`.
pub fn classify_p4() -> Vec<InvariantRow> {
    classify_p4_audited().invariant_rows()
}

pub fn classify_p4_audited() -> Classification {
    let mut rows = Vec::new();
    let mut exclusions = Vec::new();
    for m in admissible_degrees(4, 1).expect("k' = 1 is valid") {
        let hs: Vec<(i64, &str)> = if m == 5 {
            (0..=binomial(m - 1, 2))
                .map(|h| (h, "Clebsch range 0 <= h <= C(m-1, 2)"))
                .collect()
        } else {
            match integrality_gate(m).expect("m != 5 inside the degree interval") {
                Some(h) => vec![(h, "integrality gate h = m(m+2)/6 - 1")],
                None => {
                    exclusions.push(Exclusion {
                        m,
                        h: None,
                        reason: format!("m(m+2)/6 - 1 = {}/6 - 1 is not an integer", m * (m + 2)),
                    });
                    continue;
                }
            }
        };
        for (h, h_rule) in hs {
            match classify_candidate(m, h, h_rule) {
                Ok(row) => rows.push(row),
                Err(reason) => exclusions.push(Exclusion { m, h: Some(h), reason }),
            }
        }
    }
    rows.sort_by_key(|r| (r.row.m, r.row.h));
    Classification { rows, exclusions }
}

fn classify_candidate(m: i64, h: i64, h_rule: &str) -> Result<ClassifiedRow, String> {
    let k = multiplicity_k(h, m);
    if k < 1 {
        return Err(format!("k = h - m + 2 = {k} < 1"));
    }
    let a = cayley_class(h, m).map_err(|e| e.to_string())?;
    if a < 0 {
        return Err(format!("class a = {a} < 0"));
    }
    let x = match parasitic_excess(m, k, a, 4) {
        Ok(x) => x,
        Err(InvariantsError::NegativeExcess(x)) => return Err(format!("parasitic excess x = {x} < 0")),
        Err(e) => return Err(e.to_string()),
    };
    let pi = binomial(m - 1, 2) - h;
    debug_assert_eq!(clebsch_h(m, pi), Ok(h));
    Ok(ClassifiedRow {
        row: InvariantRow { m, h, k, a, x, pi },
        audit: vec![
            audit("m", "open degree interval (3, 9)"),
            audit("h", h_rule),
            audit("k", "k = h - m + 2"),
            audit("a", "a = h(m-2) - C(m,3)"),
            audit("x", "x = 9k^2 - k^2 m - 1 - 2a >= 0"),
            audit("pi", "pi = C(m-1,2) - h"),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_four_rows() {
        let rows: Vec<(i64, i64, i64, i64, i64, i64)> = classify_p4()
            .into_iter()
            .map(|r| (r.m, r.h, r.k, r.a, r.x, r.pi))
            .collect();
        assert_eq!(
            rows,
            vec![
                (4, 3, 1, 2, 0, 0),
                (5, 5, 2, 5, 5, 1),
                (5, 6, 3, 8, 19, 0),
                (6, 7, 3, 8, 10, 3),
            ]
        );
    }

    #[test]
    fn exclusions_cover_the_rest() {
        let c = classify_p4_audited();
        let excluded: Vec<(i64, Option<i64>)> = c.exclusions.iter().map(|e| (e.m, e.h)).collect();
        assert!(excluded.contains(&(7, None)));
        assert!(excluded.contains(&(8, None)));
        for h in 0..=4 {
            assert!(excluded.contains(&(5, Some(h))), "h = {h}");
        }
        let m5h4 = c.exclusions.iter().find(|e| e.m == 5 && e.h == Some(4)).unwrap();
        assert!(m5h4.reason.contains("x = -1"));
        assert!(c.rows.iter().all(|r| r.audit.len() == 6));
    }
}
