use std::ops::{Index, IndexMut};

use super::field::{Elem, PrimeField};

/// Dense row-major matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(field: PrimeField, rows: Vec<Vec<Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.into_iter().map(|v| v % field.modulus()));
        }
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self[(r, c)]).unwrap();
            for j in c..self.cols {
                self[(r, j)] = f.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.mul(factor, self[(r, j)]);
                    self[(i, j)] = f.sub(self[(i, j)], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Kernel basis in reduced echelon shape: one vector per free column, with
    /// a 1 in that column and zeros in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m[(r, free)]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Determinant of a square matrix by elimination.
    pub fn determinant(&self) -> Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m[(i, c)] != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = m[(c, c)];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m[(i, c)], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.mul(factor, m[(c, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], v);
                }
            }
        }
        det
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn nullspace_examples() {
        let f = f101();
        assert!(Matrix::identity(f, 3).nullspace().is_empty());
        assert_eq!(Matrix::zeros(f, 2, 3).nullspace().len(), 3);
        let equal_rows = Matrix::from_rows(f, vec![vec![1, 2, 3, 4]; 4]);
        assert_eq!(equal_rows.nullspace().len(), 3);
        assert_eq!(equal_rows.rank(), 1);
    }

    #[test]
    fn rank_examples() {
        let f = f101();
        assert_eq!(Matrix::identity(f, 6).rank(), 6);
        assert_eq!(Matrix::zeros(f, 4, 5).rank(), 0);
        let u = [3, 0, 5, 7];
        let v = [1, 9, 2];
        let outer = Matrix::from_rows(f, u.iter().map(|&a| v.iter().map(|&b| f.mul(a, b)).collect()).collect());
        assert_eq!(outer.rank(), 1);
    }

    proptest! {
        #[test]
        fn kernel_annihilates_and_rank_nullity(
            rows in 1usize..7,
            cols in 1usize..8,
            seed in any::<u64>(),
        ) {
            use rand::SeedableRng;
            let f = f101();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            // low-rank-ish matrices: combine a few random rows
            let k = 1 + (seed as usize % rows);
            let base: Vec<Vec<Elem>> = (0..k).map(|_| (0..cols).map(|_| f.random(&mut rng)).collect()).collect();
            let data: Vec<Vec<Elem>> = (0..rows).map(|_| {
                let w: Vec<Elem> = (0..k).map(|_| f.random(&mut rng)).collect();
                (0..cols).map(|c| (0..k).fold(0, |acc, i| f.add(acc, f.mul(w[i], base[i][c])))).collect()
            }).collect();
            let m = Matrix::from_rows(f, data);
            let ker = m.nullspace();
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
            prop_assert_eq!(m.rank() + ker.len(), cols);
        }
    }
}
