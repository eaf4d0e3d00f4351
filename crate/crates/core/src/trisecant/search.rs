use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polyalg::{Elem, MultiPoly, PrimeField, ProjLine, ProjPoint};
use crate::surfaces::SurfaceModel;

use super::{is_trisecant, LineVerdict, TrisecantError};

/// Lines through one point, found by exhaustive search over directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSearch {
    pub point: ProjPoint,
    /// Directions enumerated: one per line through the point.
    pub directions: u64,
    /// Directions passing the polar prefilter and given the full line test.
    pub candidates: u64,
    /// Second points of the trisecant lines, sorted.
    pub trisecants: Vec<ProjPoint>,
    pub contained: Vec<ProjPoint>,
}

impl PointSearch {
    pub fn count(&self) -> u64 {
        self.trisecants.len() as u64
    }
}

/// Necessary condition for `g_j(s P + t D)` to share a factor of degree 3,
/// written in the coefficients `F_{j,i}(D)` of `s^(d-i) t^i`.
///
/// With `v = g(P)` and a pivot `j0` (`v_j0 != 0`), the forms
/// `v_j0 g_j - v_j g_j0` vanish at `t = 0`; after removing that factor they
/// still share the common cubic. For `d = 3` they must vanish, so their
/// linear coefficients `L_j(D)` do. For `d = 4` they are proportional, so the
/// 2x2 minors of `(L_j(D), Q_j(D))` vanish.
enum Prefilter {
    Never,
    Always,
    Linear(Vec<Vec<Elem>>),
    Quadric(Vec<(Vec<Elem>, SparseQuadric)>),
}

/// Terms `(i, k, c)` of `sum c D_i D_k`.
type SparseQuadric = Vec<(usize, usize, Elem)>;

fn dot(field: PrimeField, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

fn quad(field: PrimeField, terms: &[(usize, usize, Elem)], d: &[Elem]) -> Elem {
    terms
        .iter()
        .fold(0, |acc, &(a, b, c)| field.add(acc, field.mul(c, field.mul(d[a], d[b]))))
}

/// `F_{j,i}` for `i = 1, 2` as a dense linear form and a quadratic term list.
fn polar_parts(g: &MultiPoly, p: &[Elem]) -> (Vec<Elem>, Vec<(usize, usize, Elem)>) {
    let field = g.field();
    let n = p.len();
    let d = g.total_degree().unwrap_or(0) as usize;
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut c = vec![0; n + 1];
            c[i] = 1;
            c[n] = p[i];
            MultiPoly::linear(field, &c)
        })
        .collect();
    let parts = g.substitute(&images).unwrap().split_by_var(n);
    let part = |i: usize| -> Option<&MultiPoly> { d.checked_sub(i).and_then(|k| parts.get(k)) };
    let mut lin = vec![0; n];
    if let Some(f1) = part(1) {
        for (m, c) in f1.terms() {
            let idx = m.support_with_multiplicity();
            lin[idx[0]] = c;
        }
    }
    let mut q = Vec::new();
    if let Some(f2) = part(2) {
        for (m, c) in f2.terms() {
            let idx = m.support_with_multiplicity();
            q.push((idx[0], idx[1], c));
        }
    }
    (lin, q)
}

impl Prefilter {
    fn new(model: &SurfaceModel, p: &[Elem]) -> Self {
        let field = model.field();
        let d = model.generator_degree();
        if d < 3 {
            return Prefilter::Never;
        }
        if d > 4 {
            return Prefilter::Always;
        }
        let gens = model.generators();
        let v: Vec<Elem> = gens.iter().map(|g| g.eval(p).unwrap()).collect();
        let j0 = v.iter().position(|&x| x != 0).expect("point off the surface");
        let parts: Vec<_> = gens.iter().map(|g| polar_parts(g, p)).collect();
        let combine = |a: &[Elem], b: &[Elem], j: usize| -> Vec<Elem> {
            a.iter()
                .zip(b)
                .map(|(&x, &y)| field.sub(field.mul(v[j0], x), field.mul(v[j], y)))
                .collect()
        };
        let n = p.len();
        let mut rows = Vec::new();
        for j in (0..gens.len()).filter(|&j| j != j0) {
            let lin = combine(&parts[j].0, &parts[j0].0, j);
            if d == 3 {
                if lin.iter().any(|&c| c != 0) {
                    rows.push((lin, Vec::new()));
                }
                continue;
            }
            // dense upper-triangular quadratic coefficients
            let mut qa = vec![0; n * n];
            let mut qb = vec![0; n * n];
            for &(a, b, c) in &parts[j].1 {
                qa[a * n + b] = c;
            }
            for &(a, b, c) in &parts[j0].1 {
                qb[a * n + b] = c;
            }
            let qc = combine(&qa, &qb, j);
            let terms: Vec<(usize, usize, Elem)> = qc
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k / n, k % n, c))
                .collect();
            if lin.iter().any(|&c| c != 0) || !terms.is_empty() {
                rows.push((lin, terms));
            }
        }
        if d == 3 {
            Prefilter::Linear(rows.into_iter().map(|r| r.0).collect())
        } else {
            Prefilter::Quadric(rows)
        }
    }

    fn passes(&self, field: PrimeField, dir: &[Elem]) -> bool {
        match self {
            Prefilter::Never => false,
            Prefilter::Always => true,
            Prefilter::Linear(rows) => rows.iter().all(|r| dot(field, r, dir) == 0),
            Prefilter::Quadric(rows) => {
                let mut reference: Option<(Elem, Elem)> = None;
                for (lin, q) in rows {
                    let l = dot(field, lin, dir);
                    let c = quad(field, q, dir);
                    match reference {
                        None => {
                            if l != 0 || c != 0 {
                                reference = Some((l, c));
                            }
                        }
                        Some((lr, cr)) => {
                            if field.mul(l, cr) != field.mul(c, lr) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
        }
    }
}

/// One task of the direction enumeration: directions whose leading free
/// coordinate is `lead`, with the next free coordinate fixed to `next`.
#[derive(Clone, Copy)]
struct Task {
    lead: usize,
    next: Elem,
}

#[derive(Default)]
struct TaskResult {
    directions: u64,
    candidates: u64,
    trisecants: Vec<ProjPoint>,
    contained: Vec<ProjPoint>,
}

/// Exhaustive search over the lines through `p`.
///
/// Each line through `p` meets the hyperplane `x_k = 0`, `k` the pivot of
/// `p`, in exactly one point; these points, normalized, are the directions.
/// Directions passing the polar prefilter get the full line test. The
/// enumeration is split into independent tasks run on the current rayon pool
/// and reassembled in task order, so the result does not depend on the
/// number of threads.
pub fn trisecants_through_point(model: &SurfaceModel, p: &ProjPoint) -> Result<PointSearch, TrisecantError> {
    search(model, p, true)
}

/// Same enumeration with the full line test on every direction.
pub fn trisecants_through_point_unfiltered(model: &SurfaceModel, p: &ProjPoint) -> Result<PointSearch, TrisecantError> {
    search(model, p, false)
}

fn search(model: &SurfaceModel, p: &ProjPoint, filtered: bool) -> Result<PointSearch, TrisecantError> {
    let field = model.field();
    let n = model.ambient_dim() + 1;
    if p.coords().len() != n {
        return Err(crate::polyalg::PolyError::Arity {
            expected: n,
            got: p.coords().len(),
        }
        .into());
    }
    if model.contains_point(p.coords()) {
        return Err(TrisecantError::PointOnSurface);
    }
    let prefilter = if filtered {
        Prefilter::new(model, p.coords())
    } else {
        Prefilter::Always
    };
    let q = field.modulus();
    let pivot = p.pivot();
    let free: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let mut tasks = Vec::new();
    for lead in 0..free.len() {
        if lead + 1 < free.len() {
            tasks.extend((0..q).map(|next| Task { lead, next }));
        } else {
            tasks.push(Task { lead, next: 0 });
        }
    }
    let results: Vec<Result<TaskResult, TrisecantError>> = tasks
        .par_iter()
        .map(|task| {
            let mut out = TaskResult::default();
            let mut dir = vec![0; n];
            dir[free[task.lead]] = 1;
            if task.lead + 1 < free.len() {
                dir[free[task.lead + 1]] = task.next;
            }
            let rest: Vec<usize> = free.iter().skip(task.lead + 2).copied().collect();
            loop {
                out.directions += 1;
                if prefilter.passes(field, &dir) {
                    out.candidates += 1;
                    let d = ProjPoint::new(field, dir.clone())?;
                    let line = ProjLine::new(field, p.clone(), d.clone())?;
                    match is_trisecant(model, &line)? {
                        LineVerdict::Trisecant => out.trisecants.push(d),
                        LineVerdict::Contained => out.contained.push(d),
                        LineVerdict::Not => {}
                    }
                }
                // odometer over the remaining free coordinates
                let mut k = 0;
                while k < rest.len() {
                    dir[rest[k]] += 1;
                    if dir[rest[k]] < q {
                        break;
                    }
                    dir[rest[k]] = 0;
                    k += 1;
                }
                if k == rest.len() {
                    break;
                }
            }
            Ok(out)
        })
        .collect();
    let mut total = PointSearch {
        point: p.clone(),
        directions: 0,
        candidates: 0,
        trisecants: Vec::new(),
        contained: Vec::new(),
    };
    for r in results {
        let r = r?;
        total.directions += r.directions;
        total.candidates += r.candidates;
        total.trisecants.extend(r.trisecants);
        total.contained.extend(r.contained);
    }
    total.trisecants.sort();
    total.contained.sort();
    Ok(total)
}

/// Number of F_q-rational trisecant lines through `p`.
pub fn count_trisecants_through_point(model: &SurfaceModel, p: &ProjPoint) -> Result<u64, TrisecantError> {
    Ok(trisecants_through_point(model, p)?.count())
}
