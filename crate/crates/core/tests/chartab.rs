mod common;

use std::sync::Arc;

use blockcert::chartab::{cache, decompose, inner_product, CharacterTable, ClassFunction};
use blockcert::{Cyclotomic, Rational};

const CLASS_COUNTS: [(&str, usize); 11] = [
    ("C6", 6),
    ("S3", 3),
    ("S4", 5),
    ("A4", 4),
    ("A5", 5),
    ("D8", 5),
    ("D10", 4),
    ("Q8", 5),
    ("SL23", 7),
    ("C7xC3", 5),
    ("C5xC4", 5),
];

#[test]
fn corpus_tables_are_orthogonal() {
    for name in common::CORPUS {
        let g = common::load(name);
        let t = CharacterTable::compute(g.clone()).unwrap();
        t.verify_orthogonality().unwrap();
        t.verify_central_characters().unwrap();
        let sum_sq: u64 = (0..t.len()).map(|i| t.degree(i).pow(2)).sum();
        assert_eq!(sum_sq, g.order() as u64, "{name}");
        let expect = CLASS_COUNTS.iter().find(|(n, _)| *n == name).unwrap().1;
        assert_eq!(t.len(), expect, "{name}");
    }
}

/// The fixed-point character decomposes with nonnegative integer
/// multiplicities and contains the trivial character once per orbit.
#[test]
fn permutation_character_decomposes() {
    for name in common::CORPUS {
        let g = common::load(name);
        let t = Arc::new(CharacterTable::compute(g.clone()).unwrap());
        let values: Vec<Cyclotomic> = g
            .classes()
            .iter()
            .map(|c| {
                let x = g.element(c.representative);
                let fixed = (0..x.degree()).filter(|&i| x.image(i) == i).count();
                Cyclotomic::from_int(t.conductor(), fixed as i64)
            })
            .collect();
        let pi = ClassFunction::new(t.clone(), values);
        let mult = decompose(&pi).unwrap();
        let mut total = 0;
        for (i, m) in mult.iter().enumerate() {
            let m = m.to_scalar().expect("rational multiplicity");
            assert!(m.is_integer() && m >= Rational::from_integer(0.into()), "{name}");
            total += m.to_integer().to_string().parse::<u64>().unwrap() * t.degree(i);
        }
        assert_eq!(total as usize, g.degree(), "{name}");
    }
}

/// sum_chi nu(chi) chi(1) counts square roots of the identity, with nu the
/// Frobenius-Schur indicator.
#[test]
fn frobenius_schur_counts_involutions() {
    for name in common::CORPUS {
        let g = common::load(name);
        let t = CharacterTable::compute(g.clone()).unwrap();
        let roots = (0..g.order()).filter(|&x| g.mul(x, x) == 0).count() as i64;
        let mut sum = Rational::from_integer(0.into());
        let mut indicators = Vec::new();
        for i in 0..t.len() {
            let s = (0..g.order()).fold(Cyclotomic::zero(t.conductor()), |acc, x| {
                &acc + t.value_at(i, g.mul(x, x))
            });
            let nu = s.to_scalar().unwrap() / Rational::from_integer((g.order() as i64).into());
            assert!(nu.is_integer() && nu.clone() * nu.clone() <= Rational::from_integer(1.into()));
            indicators.push(nu.to_integer().to_string());
            sum += nu * Rational::from_integer((t.degree(i) as i64).into());
        }
        assert_eq!(sum, Rational::from_integer(roots.into()), "{name}");
        if name == "Q8" {
            assert!(indicators.iter().any(|s| s == "-1"));
        }
    }
}

#[test]
fn a5_golden_ratio_values() {
    let g = common::load("A5");
    let t = Arc::new(CharacterTable::compute(g.clone()).unwrap());
    // (1 + sqrt 5)/2 = -(zeta_5^2 + zeta_5^3)
    let phi = -(&Cyclotomic::zeta(5, 2) + &Cyclotomic::zeta(5, 3));
    let five = g.classes().iter().position(|c| c.rep_order == 5).unwrap();
    assert!((0..t.len()).any(|i| t.value(i, five) == &phi));
    let chi = t.character(t.len() - 1);
    assert_eq!(inner_product(&chi, &chi).unwrap(), Cyclotomic::one(1));
}

#[test]
fn cache_round_trip_and_tamper() {
    let dir = std::env::temp_dir().join(format!("blockcert-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let g = common::load("SL23");
    let store = cache::TableCache::new(Some(dir.clone()));
    let cold = store.table(&g).unwrap();
    let warm = store.load(&g).expect("stored");
    assert_eq!(cold.values(), warm.values());
    assert_eq!(cache::to_json(&cold).unwrap(), cache::to_json(&warm).unwrap());

    let mut file: cache::TableFile = serde_json::from_str(&cache::to_json(&cold).unwrap()).unwrap();
    file.values[1][0] = Cyclotomic::from_int(cold.conductor(), 2);
    let text = serde_json::to_string(&file).unwrap();
    assert!(cache::from_json(g.clone(), &text).is_err());
    std::fs::write(dir.join(format!("{}.json", g.hash())), text).unwrap();
    assert!(store.load(&g).is_none());
    assert_eq!(store.table(&g).unwrap().values(), cold.values());
    std::fs::remove_dir_all(&dir).unwrap();
}
