//! Exact linear algebra over the rationals: dense row reduction for small
//! systems, an incremental sparse echelon form for rank of wide families.

use super::rational::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of `{x : m x = 0}` for an `r x ncols` matrix.
pub fn kernel(m: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, if any.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][ncols].clone();
    }
    Some(x)
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Rational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    let t = &a[i][l] * &b[l][j];
                    out[i][j] += t;
                }
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

/// Characteristic polynomial `det(x I - a)`, coefficients from `x^0` up,
/// by the Faddeev-LeVerrier recursion.
pub fn charpoly(a: &Matrix) -> Vec<Rational> {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mat_mul(a, &mk);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / Rational::from_integer((k as i64).into());
    }
    c
}

/// `p(a)` for a polynomial given from the constant term up.
pub fn poly_at(p: &[Rational], a: &Matrix) -> Matrix {
    let n = a.len();
    let mut acc = vec![vec![Rational::zero(); n]; n];
    for c in p.iter().rev() {
        acc = mat_mul(&acc, a);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

/// Incremental echelon form for sparse rows keyed by any ordered index.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<K: Ord + Clone> {
    pivots: BTreeMap<K, BTreeMap<K, Rational>>,
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        SparseEchelon { pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the stored pivots; the remainder.
    pub fn reduce(&self, mut row: BTreeMap<K, Rational>) -> BTreeMap<K, Rational> {
        row.retain(|_, v| !v.is_zero());
        let mut done: BTreeMap<K, Rational> = BTreeMap::new();
        while let Some((k, v)) = row.pop_first() {
            match self.pivots.get(&k) {
                Some(p) => {
                    for (pk, pv) in p.iter().skip(1) {
                        let e = row.entry(pk.clone()).or_insert_with(Rational::zero);
                        *e -= &v * pv;
                        if e.is_zero() {
                            row.remove(pk);
                        }
                    }
                }
                None => {
                    done.insert(k, v);
                }
            }
        }
        done
    }

    /// Insert a row; true if it was independent of the rows so far.
    pub fn insert(&mut self, row: BTreeMap<K, Rational>) -> bool {
        let red = self.reduce(row);
        let Some((lead, lv)) = red.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            return false;
        };
        let inv = Rational::one() / lv;
        let norm = red.into_iter().map(|(k, v)| (k, v * &inv)).collect();
        self.pivots.insert(lead, norm);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_kernel_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let col: Matrix = k[0].iter().map(|x| vec![x.clone()]).collect();
        assert!(mat_mul(&a, &col).iter().all(|r| r[0].is_zero()));
        let x = solve(&a, &[int(4), int(8), int(2)]).unwrap();
        assert_eq!(mat_mul(&a, &x.iter().map(|v| vec![v.clone()]).collect()), m(&[&[4], &[8], &[2]]));
        assert!(solve(&a, &[int(1), int(0), int(0)]).is_none());
    }

    #[test]
    fn charpoly_of_triangular() {
        // eigenvalues 2, 2, -1
        let a = m(&[&[2, 1, 0], &[0, 2, 5], &[0, 0, -1]]);
        let c = charpoly(&a);
        // (x-2)^2 (x+1) = x^3 - 3x^2 + 0x + 4
        assert_eq!(c, vec![int(4), int(0), int(-3), int(1)]);
        assert!(poly_at(&c, &a).iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn sparse_rank() {
        let mut e = SparseEchelon::new();
        let row = |v: &[(u32, i64)]| v.iter().map(|&(k, x)| (k, int(x))).collect::<BTreeMap<_, _>>();
        assert!(e.insert(row(&[(0, 1), (3, 2)])));
        assert!(e.insert(row(&[(3, 1)])));
        assert!(!e.insert(row(&[(0, 2), (3, 7)])));
        assert!(e.insert(row(&[(1, 1)])));
        assert_eq!(e.rank(), 3);
    }
}
