use crate::polyalg::{monomials_of_degree, Elem, Matrix, Monomial, MultiPoly, PrimeField};

use super::{Parametrization, SurfaceError};

fn monomial_value(field: PrimeField, m: &Monomial, point: &[Elem]) -> Elem {
    m.exponents()
        .iter()
        .zip(point)
        .fold(1, |acc, (&e, &x)| field.mul(acc, field.pow(x, e as u64)))
}

/// Basis of the degree-`d` forms vanishing on the image of `par`.
///
/// The forms are evaluated on a tensor grid in the free parameters whose size
/// in each direction exceeds the degree of the composed polynomial in that
/// parameter, so vanishing on the grid is vanishing on the image.
pub fn implicitize(par: &Parametrization, d: u32) -> Result<Vec<MultiPoly>, SurfaceError> {
    let field = par.forms[0].field();
    let q = field.modulus();
    let free = par.free_vars();
    let mut sizes = Vec::with_capacity(free.len());
    for &v in &free {
        let deg = par.forms.iter().map(|f| f.degree_in(v)).max().unwrap_or(0);
        let grid = d * deg + 1;
        if grid > q {
            return Err(SurfaceError::GridTooSmall { grid, q });
        }
        sizes.push(grid);
    }
    let monos = monomials_of_degree(par.forms.len(), d);
    let mut rows = Vec::new();
    let mut idx = vec![0u32; free.len()];
    loop {
        let point = par.point(&idx);
        rows.push(monos.iter().map(|m| monomial_value(field, m, &point)).collect());
        // odometer over the grid
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    let kernel = Matrix::from_rows(field, rows).nullspace();
    Ok(kernel
        .into_iter()
        .map(|c| MultiPoly::from_dense(field, par.forms.len(), &monos, &c))
        .collect())
}

/// Coefficient rows of the linear forms vanishing on the span of `center`:
/// the linear projection of P^n away from that span.
pub fn projection_forms(field: PrimeField, center: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    Matrix::from_rows(field, center.to_vec()).nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn veronese(field: PrimeField) -> Parametrization {
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

    #[test]
    fn veronese_quadrics_at_two_primes() {
        for q in [101, 131] {
            let field = PrimeField::new(q).unwrap();
            let par = veronese(field);
            let quadrics = implicitize(&par, 2).unwrap();
            assert_eq!(quadrics.len(), 6);
            assert!(implicitize(&par, 1).unwrap().is_empty());
            for g in &quadrics {
                for a in 0..5 {
                    for b in 0..5 {
                        assert_eq!(g.eval(&par.point(&[a, b])).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn grid_must_fit_in_field() {
        let field = PrimeField::new(7).unwrap();
        let par = veronese(field);
        assert!(matches!(implicitize(&par, 4), Err(SurfaceError::GridTooSmall { .. })));
    }

    #[test]
    fn projection_forms_annihilate_center() {
        let field = PrimeField::new(101).unwrap();
        let center = vec![vec![1, 2, 3, 4, 5, 6], vec![0, 1, 0, 7, 0, 1]];
        let forms = projection_forms(field, &center);
        assert_eq!(forms.len(), 4);
        for f in &forms {
            for c in &center {
                let v = f.iter().zip(c).fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)));
                assert_eq!(v, 0);
            }
        }
    }
}
