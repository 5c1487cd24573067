mod common;

use blockcert::descent::{
    basis_independence, brauer_feit_check, broue_central_iso, center_of_block, descend,
    fixed_points, SemilinearMap,
};
use blockcert::field::{Field, FiniteField};
use blockcert::gf::GfElem;
use blockcert::linalg;
use blockcert::session::{Session, SessionOptions};
use blockcert::{Cyclotomic, Error, Rational};

fn session(name: &str, p: u64) -> Session {
    Session::new(common::load(name), p, SessionOptions::default()).unwrap()
}

fn primes(n: usize) -> Vec<u64> {
    (2..=n as u64)
        .filter(|&p| n as u64 % p == 0 && (2..p).all(|d| p % d != 0))
        .collect()
}

fn omega_block(s: &Session) -> usize {
    let t = &s.table;
    let g = &s.group;
    let x = (0..g.order()).find(|&x| g.element_order(x) == 3).unwrap();
    let chi = (0..t.len())
        .find(|&i| t.value_at(i, x) == &Cyclotomic::zeta(3, 1))
        .unwrap();
    s.system.block_of[chi]
}

/// f̄ on class coordinates from the character idempotents:
/// f(z) = sum_chi omega_{sigma^n chi}(z) e_chi, reduced mod P.
fn oracle_image(s: &Session, b: usize, n: u64, class: usize) -> Vec<GfElem> {
    let t = &s.table;
    let sigma = t.sigma_permutation(s.p, n).unwrap();
    let order = Rational::from_integer(s.group.order().into());
    let mut w = vec![Cyclotomic::zero(t.conductor()); t.len()];
    for &chi in &s.system.blocks[b].irr {
        let omega = t.central_character(sigma[chi], class);
        let d = Rational::from_integer(t.degree(chi).into());
        for (k, slot) in w.iter_mut().enumerate() {
            let inv = t.inverse_map()[k];
            let e = t.value(chi, inv).scale(&(d.clone() / order.clone()));
            *slot = &*slot + &(&omega * &e);
        }
    }
    w.iter().map(|x| s.local.reduce_p_integral(x).unwrap()).collect()
}

#[test]
fn small_centers() {
    let s = session("C6", 2);
    let c = center_of_block(&s.system, omega_block(&s)).unwrap();
    assert_eq!(c.dimension(), 2);
    let s = session("S3", 3);
    let c = center_of_block(&s.system, 0).unwrap();
    assert_eq!(c.dimension(), 3);
    let s = session("S3", 2);
    for b in 0..s.system.len() {
        let c = center_of_block(&s.system, b).unwrap();
        if s.system.blocks[b].defect == 0 {
            assert_eq!(c.dimension(), 1);
            let f = &s.system.field;
            assert!(f.is_one(&c.structure[0][0][0]));
        }
    }
}

#[test]
fn power_zero_is_identity() {
    for name in common::CORPUS {
        let g = common::load(name);
        for p in primes(g.order()) {
            let s = Session::new(g.clone(), p, SessionOptions::default()).unwrap();
            let f = &s.system.field;
            for b in 0..s.system.len() {
                let c = center_of_block(&s.system, b).unwrap();
                let iso = broue_central_iso(&s.system, &s.local, b, 0, &c, &c).unwrap();
                assert_eq!(iso.matrix, linalg::identity(f, c.dimension()), "{name} p={p} b={b}");
            }
        }
    }
}

#[test]
fn central_iso_matches_idempotent_oracle() {
    for name in common::CORPUS {
        let g = common::load(name);
        for p in primes(g.order()) {
            let s = Session::new(g.clone(), p, SessionOptions::default()).unwrap();
            let f = &s.system.field;
            for b in 0..s.system.len() {
                let target = s.system.sigma_power(b, 1);
                let src = center_of_block(&s.system, b).unwrap();
                let tgt = center_of_block(&s.system, target).unwrap();
                let iso = broue_central_iso(&s.system, &s.local, b, 1, &src, &tgt).unwrap();
                assert!(iso.min_valuation.map_or(true, |v| v >= 0));
                for (col, &j) in tgt.classes.iter().enumerate() {
                    let expect = oracle_image(&s, b, 1, j);
                    let got = src
                        .basis
                        .iter()
                        .zip(iso.matrix.iter().map(|r| &r[col]))
                        .fold(vec![f.zero(); s.table.len()], |acc, (v, c)| {
                            acc.iter().zip(v).map(|(x, y)| f.add(x, &f.mul(c, y))).collect()
                        });
                    assert_eq!(got, expect, "{name} p={p} b={b} class {j}");
                }
            }
        }
    }
}

#[test]
fn c6_theta_has_order_two() {
    let s = session("C6", 2);
    let b = omega_block(&s);
    let r = descend(&s.system, &s.local, b).unwrap();
    let f = &s.system.field;
    assert_eq!(f.degree(), 2);
    let m = &r.theta.matrix;
    let mp: Vec<Vec<GfElem>> = m.iter().map(|row| row.iter().map(|x| f.frobenius(x)).collect()).collect();
    assert_eq!(linalg::mat_mul(f, m, &mp), linalg::identity(f, 2));
    assert_eq!(r.form.dimension, 2);
    assert_eq!(r.form.span_rank, 2);
    assert_eq!(r.brauer_feit.m, "2");
    assert_eq!(r.brauer_feit.characters, 2);
}

#[test]
fn plain_frobenius_fixes_the_prime_lattice() {
    let s = session("S3", 3);
    let f = &s.system.field;
    let c = center_of_block(&s.system, 0).unwrap();
    let theta = SemilinearMap {
        block: 0,
        matrix: linalg::identity(f, 3),
        twist: 3,
    };
    let form = fixed_points(f, &theta, &c).unwrap();
    assert_eq!(form.extension_degree, 1);
    assert_eq!(form.dimension, 3);
    assert_eq!(form.basis, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    for a in 0..3 {
        for b in 0..3 {
            let expect: Vec<u64> = c.structure[a][b].iter().map(|x| f.prime_coords(x)[0]).collect();
            assert_eq!(form.structure[a][b], expect);
        }
    }
}

#[test]
fn corpus_descent() {
    for name in common::CORPUS {
        let g = common::load(name);
        for p in primes(g.order()) {
            let s = Session::new(g.clone(), p, SessionOptions::default()).unwrap();
            for b in 0..s.system.len() {
                let r = descend(&s.system, &s.local, b).unwrap();
                let n = s.system.blocks[b].irr.len();
                assert_eq!(r.form.dimension, n, "{name} p={p} b={b}");
                assert_eq!(r.form.span_rank, n);
                assert!(r.form.structure.iter().flatten().flatten().all(|&c| c < p));
                assert!(r.basis_independent, "{name} p={p} b={b}");
                assert!(r.brauer_feit.holds);
            }
        }
    }
}

#[test]
fn independence_under_random_change() {
    let s = session("C7xC3", 3);
    let f = &s.system.field;
    for b in 0..s.system.len() {
        let r = descend(&s.system, &s.local, b).unwrap();
        let n = r.image.dimension();
        let u = f.generator();
        // lower-triangular with a unit diagonal
        let change: Vec<Vec<GfElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| if i == k { u.clone() } else if k < i { f.add(&u, &f.one()) } else { f.zero() })
                    .collect()
            })
            .collect();
        assert!(basis_independence(f, s.table.class_constants(), &r.theta, &r.image, Some(&change)).unwrap());
    }
}

#[test]
fn brauer_feit_examples() {
    let r = brauer_feit_check(2, 1, 2).unwrap();
    assert_eq!((r.m.as_str(), r.m_floor, r.count_bound.as_str()), ("2", 2, "256"));
    let r = brauer_feit_check(2, 0, 1).unwrap();
    assert_eq!((r.m.as_str(), r.m_floor), ("5/4", 1));
    let r = brauer_feit_check(3, 1, 3).unwrap();
    assert_eq!((r.m.as_str(), r.m_floor), ("13/4", 3));
    assert_eq!(r.count_bound, "7625597484987");
    assert!(matches!(brauer_feit_check(2, 1, 3), Err(Error::Counterexample(_))));
}
