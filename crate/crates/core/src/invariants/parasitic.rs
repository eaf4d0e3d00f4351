use serde::{Deserialize, Serialize};

use super::binomial;

/// `count` parasitic planes, each a `mu`-secant plane of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParasiticPart {
    pub mu: u32,
    pub count: u32,
}

/// A multiset of parasitic planes, parts sorted by decreasing `mu`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParasiticDecomposition {
    pub n: u32,
    pub parts: Vec<ParasiticPart>,
}

impl ParasiticDecomposition {
    /// Contribution of each part to the excess is `C(mu, n-1)^2` per plane.
    pub fn excess(&self) -> u64 {
        self.parts.iter().map(|p| weight(p.mu, self.n) * p.count as u64).sum()
    }

    pub fn plane_count(&self) -> u32 {
        self.parts.iter().map(|p| p.count).sum()
    }

    /// Multiplicity of the congruence on each plane, in the order of `parts`.
    pub fn multiplicities(&self) -> Vec<u64> {
        self.parts
            .iter()
            .map(|p| binomial(p.mu as i64, self.n as i64 - 1) as u64)
            .collect()
    }
}

impl std::fmt::Display for ParasiticDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "none");
        }
        let items: Vec<String> = self.parts.iter().map(|p| format!("{}x mu={}", p.count, p.mu)).collect();
        write!(f, "{}", items.join(" + "))
    }
}

fn weight(mu: u32, n: u32) -> u64 {
    let c = binomial(mu as i64, n as i64 - 1) as u64;
    c * c
}

/// Multiplicity `i = sum C(mu, n-1)` of the congruence on a parasitic plane
/// meeting the surface in the given `mu` values.
pub fn parasitic_multiplicity(mus: &[u32], n: u32) -> u64 {
    mus.iter().map(|&mu| binomial(mu as i64, n as i64 - 1) as u64).sum()
}

/// All multisets of planes with `mu >= n - 1` whose excess
/// `sum C(mu, n-1)^2` equals `x`. Sorted lexicographically by parts.
pub fn decompose_x(x: u64, n: u32) -> Vec<ParasiticDecomposition> {
    assert!(n >= 2, "ambient dimension must be at least 2");
    let min_mu = n - 1;
    let mut mus = Vec::new();
    let mut mu = min_mu;
    while weight(mu, n) <= x {
        mus.push(mu);
        mu += 1;
    }
    mus.reverse();
    let mut out = Vec::new();
    let mut current = Vec::new();
    split(x, &mus, n, &mut current, &mut out);
    out.sort();
    out
}

fn split(rest: u64, mus: &[u32], n: u32, current: &mut Vec<ParasiticPart>, out: &mut Vec<ParasiticDecomposition>) {
    if rest == 0 {
        out.push(ParasiticDecomposition {
            n,
            parts: current.clone(),
        });
        return;
    }
    let Some((&mu, tail)) = mus.split_first() else {
        return;
    };
    let w = weight(mu, n);
    for count in (0..=rest / w).rev() {
        if count > 0 {
            current.push(ParasiticPart {
                mu,
                count: count as u32,
            });
        }
        split(rest - count * w, tail, n, current, out);
        if count > 0 {
            current.pop();
        }
    }
}
