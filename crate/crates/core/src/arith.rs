//! Small integer helpers shared by the group, field and table code.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Exponent of `p` in `n` (n > 0).
pub fn vp(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Splits `n` as (p-part, p'-part).
pub fn split_p(n: u64, p: u64) -> (u64, u64) {
    let pp = p.pow(vp(n, p));
    (pp, n / pp)
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// Multiplicative order of `a` modulo `m` (gcd(a, m) = 1).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

/// Solves x = a mod m, x = b mod n for coprime m, n; result in [0, mn).
pub fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    let mn = (m * n) as i128;
    let inv = mod_inv(m as i64, n as i64).expect("moduli must be coprime") as i128;
    let diff = (b as i128 - a as i128).rem_euclid(n as i128);
    let x = a as i128 + (m as i128) * (diff * inv % n as i128);
    x.rem_euclid(mn) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_and_orders() {
        assert_eq!(crt(2, 3, 1, 4), 5);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(3, 20), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(split_p(24, 2), (8, 3));
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(mod_inv(3, 7), Some(5));
    }
}
