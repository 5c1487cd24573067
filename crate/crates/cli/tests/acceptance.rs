//! One line per acceptance criterion over the whole corpus and every prime
//! dividing each group order.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use blockcert::chartab::CharacterTable;
use blockcert::cyclo::sigma_k0;
use blockcert::descent::{self, brauer_feit_check};
use blockcert::field::FiniteField;
use blockcert::isotypy::{prepare, verify, verify_isotypy, IsotypyOptions, Verdict};
use blockcert::session::{Session, SessionOptions};
use blockcert::{arith, Cyclotomic};

type Outcome = Result<String, String>;

fn sessions() -> Vec<(&'static str, Session)> {
    let mut out = Vec::new();
    for name in common::CORPUS {
        let g = common::load(name);
        for p in arith::prime_divisors(g.order() as u64) {
            out.push((name, Session::new(g.clone(), p, SessionOptions::default()).unwrap()));
        }
    }
    out
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for name in common::CORPUS {
        let t = CharacterTable::compute(common::load(name)).map_err(|e| format!("{name}: {e}"))?;
        t.verify_orthogonality().map_err(|e| format!("{name}: {e}"))?;
        t.verify_central_characters().map_err(|e| format!("{name}: {e}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 600.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} tables, row and column orthogonality exact, {secs:.2}s", common::CORPUS.len()))
}

fn criterion_2(all: &[(&str, Session)]) -> Outcome {
    let mut n = 0;
    for (name, s) in all {
        if s.group.order() > 72 {
            continue;
        }
        let oracle = common::oracle::CenterOracle::new(&s.group, &s.system.field);
        let expect = oracle.primitive_idempotents(common::oracle::seed_from_hash(s.group.hash()));
        let mut got: Vec<_> = s.system.blocks.iter().map(|b| b.residue.clone()).collect();
        got.sort();
        ensure(got == expect, || format!("{name} p={}", s.p))?;
        n += got.len();
    }
    Ok(format!("{n} block idempotents equal the splitting oracle"))
}

fn criterion_3(all: &[(&str, Session)]) -> Outcome {
    let mut n = 0;
    for (name, s) in all {
        let p = s.p;
        let f = &s.system.field;
        let npp = arith::split_p(s.conductor(), p).1;
        let sigma = sigma_k0(p, s.conductor());
        for (b, blk) in s.system.blocks.iter().enumerate() {
            let at = || format!("{name} p={p} block {b}");
            for (k, c) in blk.coeffs.iter().enumerate() {
                if !s.group.classes()[k].is_p_regular(p) {
                    ensure(c.is_zero(), || format!("{}: p-singular support", at()))?;
                }
                ensure(c.lies_in_subfield(npp), || format!("{}: not in Q(zeta_{npp})", at()))?;
                let v = s.local.valuation_of(c).map_err(|e| e.to_string())?;
                ensure(v.map_or(true, |v| v >= 0), || format!("{}: negative valuation", at()))?;
                let r = s.local.reduce_p_integral(&sigma.apply(c)).map_err(|e| e.to_string())?;
                ensure(r == f.frobenius(&blk.residue[k]), || format!("{}: residue of sigma(b)", at()))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} blocks: p-regular support, Q(zeta_N') coefficients, integral, Frobenius residues"))
}

fn criterion_4(all: &[(&str, Session)]) -> Outcome {
    let mut n = 0;
    for (name, s) in all {
        for b in 0..s.system.len() {
            for k in 1..=s.system.orbit_length(b) as u64 {
                for strict in [false, true] {
                    let opts = IsotypyOptions {
                        strict,
                        all_maximal_pairs: false,
                    };
                    let c = verify_isotypy(s, b, k, opts).map_err(|e| format!("{name}: {e}"))?;
                    ensure(c.verdict == Verdict::Pass && c.signs_positive, || {
                        format!("{name} p={} b={b} n={k} strict={strict}: {:?}", s.p, c.witness)
                    })?;
                    n += 1;
                }
            }
        }
    }
    let (_, c6) = all.iter().find(|(name, s)| *name == "C6" && s.p == 2).unwrap();
    let b = omega_block(c6);
    let pin = verify_isotypy(c6, b, 1, IsotypyOptions::default()).map_err(|e| e.to_string())?;
    ensure(
        pin.verdict == Verdict::Pass && pin.defect_group.len() == 2 && pin.signs_positive,
        || "C6 p=2 b_omega pin".into(),
    )?;
    Ok(format!("{n} certificates pass (both integrality modes); C6 p=2 b_omega: |P| = 2, signs +1"))
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

fn criterion_5(all: &[(&str, Session)]) -> Outcome {
    let (mut tables, mut chars) = (0, 0);
    for (name, s) in all {
        let p = s.p;
        let mut list = vec![s.table.clone()];
        list.extend(s.subgroup_tables());
        for t in list {
            let h = t.group();
            let sigma = sigma_k0(p, t.conductor());
            for i in 0..t.len() {
                for x in 0..h.order() {
                    let (xp, xpp) = h.p_decompose(x, p);
                    let y = h.mul(xp, h.pow(xpp, p as i64));
                    ensure(&sigma.apply(t.value_at(i, x)) == t.value_at(i, y), || {
                        format!("{name} p={p}: table of order {} row {i}", h.order())
                    })?;
                }
                t.sigma_character(i, p).map_err(|e| e.to_string())?;
                chars += 1;
            }
            tables += 1;
        }
    }
    Ok(format!("{chars} characters on {tables} tables (groups and centralizers)"))
}

fn criterion_6(all: &[(&str, Session)]) -> Outcome {
    let mut n = 0;
    let mut max_j = 1;
    for (name, s) in all {
        for b in 0..s.system.len() {
            let at = || format!("{name} p={} block {b}", s.p);
            let r = descent::descend(&s.system, &s.local, b).map_err(|e| format!("{}: {e}", at()))?;
            let irr = s.system.blocks[b].irr.len();
            ensure(r.form.dimension == irr && r.form.span_rank == irr, || format!("{}: dimension", at()))?;
            ensure(r.form.structure.iter().flatten().flatten().all(|&c| c < s.p), || at())?;
            ensure(r.iso.min_valuation.map_or(true, |v| v >= 0), || format!("{}: non-integral", at()))?;
            ensure(r.basis_independent, || format!("{}: basis dependence", at()))?;
            max_j = max_j.max(r.form.extension_degree);
            n += 1;
        }
    }
    Ok(format!("{n} F_p-forms of full dimension, constants in F_p, spans full, largest j = {max_j}"))
}

fn criterion_7(all: &[(&str, Session)]) -> Outcome {
    let mut n = 0;
    let mut sample = String::new();
    for (name, s) in all {
        for blk in &s.system.blocks {
            let r = brauer_feit_check(s.p, blk.defect, blk.irr.len()).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.holds && 4 * blk.irr.len() as u64 <= (s.p).pow(2 * blk.defect) + 4, || name.to_string())?;
            if *name == "C6" && blk.defect == 1 && sample.is_empty() {
                sample = format!("C6 p=2 d=1: |Irr| = {}, m = {}, p^(m^3) = {}", r.characters, r.m, r.count_bound);
            }
            n += 1;
        }
    }
    Ok(format!("{n} blocks within the bound; {sample}"))
}

fn criterion_8(all: &[(&str, Session)]) -> Outcome {
    let (_, s) = all.iter().find(|(name, s)| *name == "C6" && s.p == 2).unwrap();
    let b = omega_block(s);
    let mut witnesses = Vec::new();
    let check = |inputs, what: &str, witnesses: &mut Vec<String>| -> Result<(), String> {
        let c = verify(s, &inputs).map_err(|e| e.to_string())?;
        let w = c.witness.clone().ok_or_else(|| format!("{what}: no witness"))?;
        ensure(c.verdict == Verdict::Fail && c.verdict.exit_code() == 1, || format!("{what}: not a failure"))?;
        witnesses.push(w.check);
        Ok(())
    };
    let mut inputs = prepare(s, b, 1, false).map_err(|e| e.to_string())?;
    let qi = inputs.cyclic.iter_mut().find(|q| q.q.order() == 2).unwrap();
    let k = qi.e_coeffs.iter().position(|c| !c.is_zero()).unwrap();
    qi.e_coeffs[k] = &qi.e_coeffs[k] + &Cyclotomic::one(1);
    check(inputs, "perturbed e_Q", &mut witnesses)?;

    let mut inputs = prepare(s, b, 1, false).map_err(|e| e.to_string())?;
    inputs.global.signs[0] = -1;
    check(inputs, "flipped sign", &mut witnesses)?;

    let mut inputs = prepare(s, b, 1, false).map_err(|e| e.to_string())?;
    let qi = inputs.cyclic.iter_mut().find(|q| q.q.order() == 2).unwrap();
    qi.mu.values[0][0] = &qi.mu.values[0][0] + &Cyclotomic::one(1);
    check(inputs, "altered mu", &mut witnesses)?;

    // the same three through the binary, via a tampered certificate
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let c6 = corpus("C6");
    let cert = dir.path().join("cert.json");
    let out = blocktool(&["isotypy", &c6, "-p", "2", "--block", &b.to_string(), "--out", cert.to_str().unwrap()]);
    ensure(out == Some(0), || "certificate run".into())?;
    let text = std::fs::read_to_string(&cert).map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let edits: [(&str, fn(&mut serde_json::Value)); 2] = [
        ("sign", |v| v["result"]["globalIsometry"]["signs"][0] = (-1).into()),
        ("mu", |v| {
            let pairs = v["result"]["cyclic"][1]["perfectIsometry"].as_array_mut().unwrap();
            pairs[0]["mu"]["coeffs"][0] = serde_json::json!(["7", "1"]);
        }),
    ];
    for (what, edit) in edits {
        let mut forged = v.clone();
        edit(&mut forged);
        let file = dir.path().join(format!("{what}.json"));
        std::fs::write(&file, forged.to_string()).map_err(|e| e.to_string())?;
        let code = blocktool(&["recheck", &c6, file.to_str().unwrap()]);
        ensure(code == Some(1), || format!("recheck with altered {what} exited {code:?}"))?;
    }
    Ok(format!("witnesses [{}]; tampered certificates exit 1", witnesses.join(", ")))
}

fn corpus(name: &str) -> String {
    common::corpus_dir().join(format!("{name}.json")).to_str().unwrap().to_string()
}

fn blocktool(args: &[&str]) -> Option<i32> {
    Command::new(env!("CARGO_BIN_EXE_blocktool"))
        .args(args)
        .env_remove("BLOCKTOOL_CACHE")
        .output()
        .ok()?
        .status
        .code()
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().join("cache");
    let groups: Vec<String> = common::CORPUS.iter().map(|n| corpus(n)).collect();
    let run = |tag: &str, jobs: &str, cache: Option<&PathBuf>| -> Result<Vec<u8>, String> {
        let out = dir.path().join(format!("{tag}.json"));
        let mut args: Vec<String> = vec!["verify-all".into()];
        args.extend(groups.iter().cloned());
        args.extend(["--jobs".into(), jobs.into(), "--out".into(), out.to_str().unwrap().into()]);
        if let Some(c) = cache {
            args.extend(["--cache-dir".into(), c.to_str().unwrap().into()]);
        }
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let code = blocktool(&refs);
        ensure(code == Some(0), || format!("{tag}: exit {code:?}"))?;
        std::fs::read(out).map_err(|e| e.to_string())
    };
    let cold = run("cold", "1", Some(&cache))?;
    let warm = run("warm", "4", Some(&cache))?;
    let nocache = run("nocache", "3", None)?;
    ensure(cold == warm, || "cold and warm cache reports differ".into())?;
    ensure(cold == nocache, || "reports differ across --jobs".into())?;
    Ok(format!("{} bytes identical across cold/warm cache and --jobs 1/3/4", cold.len()))
}

fn main() {
    let all = sessions();
    let results: Vec<(&str, Outcome)> = vec![
        ("character tables", criterion_1()),
        ("block oracle equivalence", criterion_2(&all)),
        ("block idempotent properties", criterion_3(&all)),
        ("Galois conjugate isotypy", criterion_4(&all)),
        ("dual-path sigma on characters", criterion_5(&all)),
        ("F_p-forms of block centers", criterion_6(&all)),
        ("Brauer-Feit bound", criterion_7(&all)),
        ("negative controls", criterion_8(&all)),
        ("determinism", criterion_9()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
