//! Dense univariate polynomials over a [`Field`] context, coefficients
//! stored low degree first. The zero polynomial is the empty vector.

use num_bigint::BigUint;

use crate::field::Field;

pub fn trim<F: Field>(f: &F, a: &mut Vec<F::Elem>) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub fn degree<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

/// Quotient and remainder; panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(f, b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r: Vec<F::Elem> = a.to_vec();
    trim(f, &mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, bc));
        }
        q[shift] = c;
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

pub fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match degree(f, a) {
        None => Vec::new(),
        Some(d) => {
            let li = f.inv(&a[d]).expect("nonzero leading coefficient");
            a[..=d].iter().map(|c| f.mul(c, &li)).collect()
        }
    }
}

pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

/// Inverse of `a` modulo `m`, if they are coprime.
pub fn inverse_mod<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Option<Vec<F::Elem>> {
    // Extended Euclid tracking only the coefficient of `a`.
    let mut r0 = m.to_vec();
    let mut r1 = rem(f, a, m);
    let mut s0: Vec<F::Elem> = Vec::new();
    let mut s1: Vec<F::Elem> = vec![f.one()];
    trim(f, &mut r0);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if degree(f, &r0) != Some(0) {
        return None;
    }
    let c = f.inv(&r0[0])?;
    let out: Vec<F::Elem> = s0.iter().map(|x| f.mul(x, &c)).collect();
    Some(rem(f, &out, m))
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, a: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let base = rem(f, a, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(f, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(f, &acc, &base, m);
        }
    }
    acc
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Rabin's irreducibility test for a monic `g` over a field with `q` elements.
pub fn is_irreducible<F: Field>(f: &F, g: &[F::Elem], q: &BigUint) -> bool {
    let Some(n) = degree(f, g) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![f.zero(), f.one()];
    // frob[i] = x^(q^i) mod g
    let mut frob = vec![rem(f, &x, g)];
    for i in 0..n {
        let next = powmod(f, &frob[i], q, g);
        frob.push(next);
    }
    if sub(f, &frob[n], &rem(f, &x, g)).iter().any(|c| !f.is_zero(c)) {
        return false;
    }
    for r in crate::arith::prime_divisors(n as u64) {
        let k = n / r as usize;
        let h = sub(f, &frob[k], &x);
        if degree(f, &gcd(f, &h, g)) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn irreducibility_over_f2() {
        let f = PrimeField::new(2);
        let q = BigUint::from(2u32);
        assert!(is_irreducible(&f, &[1, 1, 1], &q));
        assert!(!is_irreducible(&f, &[1, 0, 1], &q));
        assert!(is_irreducible(&f, &[1, 1, 0, 1], &q));
        assert!(!is_irreducible(&f, &[1, 1, 1, 1], &q));
    }

    #[test]
    fn inverse_mod_f3() {
        let f = PrimeField::new(3);
        let m = vec![1, 0, 1];
        let a = vec![1, 1];
        let inv = inverse_mod(&f, &a, &m).unwrap();
        assert_eq!(mulmod(&f, &a, &inv, &m), vec![1]);
    }
}
