//! Dixon–Schneider: common eigenvectors of the class matrices over F_l,
//! lifted to cyclotomic values through eigenvalue multiplicities.

use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg;
use crate::perm::Group;
use crate::{Cyclotomic, Rational};

const PRIME_SEARCH_BOUND: u64 = 1 << 40;

/// Class multiplication coefficients a[j][i][k]: the number of pairs
/// (x, y) in C_j x C_i with x y = g_k.
pub fn class_constants(g: &Group) -> Vec<Vec<Vec<u32>>> {
    let r = g.class_count();
    let mut a = vec![vec![vec![0u32; r]; r]; r];
    for (k, ck) in g.classes().iter().enumerate() {
        let gk = ck.representative;
        for x in 0..g.order() {
            let y = g.mul(g.inv(x), gk);
            a[g.class_of(x)][g.class_of(y)][k] += 1;
        }
    }
    a
}

/// Smallest prime l = 1 mod `exponent` with l > 2 sqrt(order).
pub fn dixon_prime(exponent: u64, order: u64) -> Result<u64> {
    let mut l = exponent + 1;
    while l < PRIME_SEARCH_BOUND {
        if l * l > 4 * order && arith::is_prime(l) {
            return Ok(l);
        }
        l += exponent;
    }
    Err(Error::NoDixonPrime(PRIME_SEARCH_BOUND))
}

fn primitive_root(l: u64) -> u64 {
    let factors = arith::prime_divisors(l - 1);
    (2..l)
        .find(|&g| factors.iter().all(|&q| arith::mod_pow(g, (l - 1) / q, l) != 1))
        .unwrap_or(1)
}

/// Splits F_l^r into the common eigenspaces of the class matrices. Returns
/// one eigenvector per irreducible character, normalized to w_0 = 1.
fn common_eigenvectors(f: &PrimeField, consts: &[Vec<Vec<u32>>]) -> Result<Vec<Vec<u64>>> {
    let r = consts.len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![linalg::identity(f, r)];
    for a_j in consts.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            next.extend(split_space(f, a_j, basis)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::TableVerification(
            "class matrices do not separate the characters".into(),
        ));
    }
    spaces
        .into_iter()
        .map(|s| {
            let v = &s[0];
            let inv = f
                .inv(&v[0])
                .ok_or_else(|| Error::TableVerification("eigenvector with w_0 = 0".into()))?;
            Ok(v.iter().map(|x| f.mul(x, &inv)).collect())
        })
        .collect()
}

/// Splits the span of `basis` (rows, in reduced echelon form) into
/// eigenspaces of the matrix (M)_{ik} = a[i][k] acting on columns.
fn split_space(f: &PrimeField, a: &[Vec<u32>], mut basis: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let pivots = linalg::rref(f, &mut basis);
    let d = basis.len();
    let r = a.len();
    // Restricted matrix: column c = coordinates of M b_c.
    let mut restricted = vec![vec![0u64; d]; d];
    for (c, b) in basis.iter().enumerate() {
        let image: Vec<u64> = (0..r)
            .map(|i| {
                (0..r).fold(0u64, |acc, k| {
                    f.add(&acc, &f.mul(&(a[i][k] as u64 % f.p()), &b[k]))
                })
            })
            .collect();
        for (row, &pc) in pivots.iter().enumerate() {
            restricted[row][c] = image[pc];
        }
    }
    let cp = linalg::charpoly(f, &restricted);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..f.p() {
        if !f.is_zero(&crate::poly::eval(f, &cp, &lambda)) {
            continue;
        }
        let mut shifted = restricted.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = f.sub(&row[i], &lambda);
        }
        let kernel = linalg::nullspace(f, &shifted, d);
        total += kernel.len();
        let vecs: Vec<Vec<u64>> = kernel
            .iter()
            .map(|coords| {
                (0..r)
                    .map(|k| {
                        coords.iter().zip(&basis).fold(0u64, |acc, (c, b)| {
                            f.add(&acc, &f.mul(c, &b[k]))
                        })
                    })
                    .collect()
            })
            .collect();
        out.push(vecs);
    }
    if total != d {
        return Err(Error::TableVerification(
            "class matrix is not diagonalizable over the Dixon prime field".into(),
        ));
    }
    Ok(out)
}

/// Computes the irreducible characters as rows of cyclotomic values with
/// conductor exp(G). Rows are unsorted.
pub fn compute_values(g: &Arc<Group>, consts: &[Vec<Vec<u32>>]) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = g.exponent();
    let order = g.order() as u64;
    let l = dixon_prime(n, order)?;
    let f = PrimeField::new(l);
    let big_z = arith::mod_pow(primitive_root(l), (l - 1) / n, l);
    let sizes: Vec<u64> = g.classes().iter().map(|c| c.size as u64).collect();
    let inverse_class: Vec<usize> = g
        .classes()
        .iter()
        .map(|c| g.class_of(g.inv(c.representative)))
        .collect();
    let vectors = common_eigenvectors(&f, consts)?;
    let mut rows = Vec::with_capacity(vectors.len());
    for w in vectors {
        // |G| / chi(1)^2 = sum_k w_k w_k' / |C_k|
        let s = (0..w.len()).fold(0u64, |acc, k| {
            let t = f.mul(&w[k], &w[inverse_class[k]]);
            f.add(&acc, &f.div(&t, &(sizes[k] % l)).expect("l does not divide |G|"))
        });
        let d2 = f
            .div(&(order % l), &s)
            .ok_or_else(|| Error::TableVerification("degree equation degenerate".into()))?;
        let deg = (1..=l / 2)
            .find(|&d| d * d % l == d2)
            .ok_or_else(|| Error::TableVerification("degree square root missing".into()))?;
        let modular: Vec<u64> = (0..w.len())
            .map(|k| f.div(&f.mul(&w[k], &deg), &(sizes[k] % l)).expect("l does not divide |G|"))
            .collect();
        let mut row = Vec::with_capacity(w.len());
        for c in g.classes() {
            let o = c.rep_order;
            let z_o = arith::mod_pow(big_z, n / o, l);
            let inv_o = f.inv(&(o % l)).expect("o < l");
            let mut terms = Vec::new();
            for s in 0..o {
                let mut acc = 0u64;
                for t in 0..o {
                    let val = modular[g.class_of(g.pow(c.representative, t as i64))];
                    let root = arith::mod_pow(z_o, (o - (s * t) % o) % o, l);
                    acc = f.add(&acc, &f.mul(&val, &root));
                }
                let m = f.mul(&acc, &inv_o);
                if m > deg {
                    return Err(Error::TableVerification(format!(
                        "eigenvalue multiplicity {m} exceeds degree {deg}"
                    )));
                }
                if m != 0 {
                    terms.push(((s * (n / o)) as i64, Rational::from_integer(m.into())));
                }
            }
            row.push(Cyclotomic::from_powers(n, &terms));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dixon_primes() {
        assert_eq!(dixon_prime(6, 6).unwrap(), 7);
        assert_eq!(dixon_prime(30, 60).unwrap(), 31);
        assert_eq!(dixon_prime(1, 1).unwrap(), 3);
    }
}
