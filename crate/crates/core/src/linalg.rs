//! Dense linear algebra over any [`Field`] context.
//!
//! Matrices are row-major `Vec<Vec<E>>`. Vectors act as columns.

use crate::field::Field;

pub type Mat<E> = Vec<Vec<E>>;

pub fn zeros<F: Field>(f: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    vec![vec![f.zero(); cols]; rows]
}

pub fn identity<F: Field>(f: &F, n: usize) -> Mat<F::Elem> {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

pub fn transpose<E: Clone>(m: &[Vec<E>]) -> Mat<E> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Mat<F::Elem> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(f.zero(), |acc, (x, brow)| {
                        if f.is_zero(x) {
                            acc
                        } else {
                            f.add(&acc, &f.mul(x, &brow[j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(f: &F, a: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(&m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut a = m.to_vec();
    rref(f, &mut a).len()
}

/// A basis of {v : m v = 0}.
pub fn nullspace<F: Field>(f: &F, m: &[Vec<F::Elem>], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.to_vec();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[r][fc]);
            }
            v
        })
        .collect()
}

/// Solves `a x = b`; `None` when inconsistent. Free variables are set to zero.
pub fn solve<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Mat<F::Elem> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(f: &F, a: &[Vec<F::Elem>]) -> Option<Mat<F::Elem>> {
    let n = a.len();
    let mut aug: Mat<F::Elem> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coordinates of `v` in the basis given by the rows of `basis`, if `v` lies
/// in their span.
pub fn coordinates<F: Field>(
    f: &F,
    basis: &[Vec<F::Elem>],
    v: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    solve(f, &transpose(basis), v)
}

/// Characteristic polynomial det(x I - a), low degree first, via
/// reduction to upper Hessenberg form.
pub fn charpoly<F: Field>(f: &F, a: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let n = a.len();
    let mut h = a.to_vec();
    for k in 1..n.saturating_sub(1) {
        let Some(piv) = (k..n).find(|&i| !f.is_zero(&h[i][k - 1])) else {
            continue;
        };
        if piv != k {
            h.swap(piv, k);
            for row in h.iter_mut() {
                row.swap(piv, k);
            }
        }
        let inv = f.inv(&h[k][k - 1]).expect("pivot is nonzero");
        for i in (k + 1)..n {
            if f.is_zero(&h[i][k - 1]) {
                continue;
            }
            let t = f.mul(&h[i][k - 1], &inv);
            for j in 0..n {
                let v = f.mul(&t, &h[k][j]);
                h[i][j] = f.sub(&h[i][j], &v);
            }
            for row in h.iter_mut() {
                let v = f.mul(&t, &row[i]);
                row[k] = f.add(&row[k], &v);
            }
        }
    }
    // p[k] = charpoly of the leading k x k block.
    let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for k in 0..n {
        let mut next = crate::poly::mul(f, &polys[k], &[f.neg(&h[k][k]), f.one()]);
        let mut prod = f.one();
        for i in (0..k).rev() {
            prod = f.mul(&prod, &h[i + 1][i]);
            let c = f.mul(&prod, &h[i][k]);
            let term: Vec<F::Elem> = polys[i].iter().map(|x| f.mul(x, &c)).collect();
            next = crate::poly::sub(f, &next, &term);
        }
        let mut next = next;
        next.resize(k + 2, f.zero());
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        RationalField.from_int(n)
    }

    #[test]
    fn solve_and_inverse() {
        let f = RationalField;
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&f, &a, &[q(3), q(5)]).unwrap();
        assert_eq!(mat_vec(&f, &a, &x), vec![q(3), q(5)]);
        let ai = inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &ai), identity(&f, 2));
        let sing = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&f, &sing).is_none());
        assert_eq!(nullspace(&f, &sing, 2).len(), 1);
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let f = PrimeField::new(101);
        let a = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        let cp = charpoly(&f, &a);
        // x^3 - 16x^2 - 12x + 3 mod 101 (trace 16, det -3).
        assert_eq!(cp, vec![3, f.from_int(-12), f.from_int(-16), 1]);
    }
}
