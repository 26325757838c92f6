//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use whcalc::document::{Document, Payload};
use whcalc_core::ahss::{build_e2, einf_valuation, run_differentials, ChartTarget, ClassLabel};
use whcalc_core::arith::is_regular;
use whcalc_core::stems::StemName;
use whcalc_core::steenrod::{
    act_combo_on_projective, act_word_on_projective, admissible_basis, annihilator_basis, milnor_dual_dims,
    Generator, Monomial, SteenrodAlgebra, Word,
};
use whcalc_core::torsion::{
    concordance_first_torsion, first_p_torsion, max_profile_degree, sigma_c_torsion, wh_torsion_profile,
    Hypotheses,
};
use whcalc_core::whcohomology::PieceBlock;
use whcalc_core::OddPrime;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn prime(n: u64) -> OddPrime {
    OddPrime::new(n).unwrap()
}

fn whcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whcalc"))
        .args(args)
        .env_remove("WHCALC_MAX_DEGREE_CAP")
        .output()
        .unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap_or_default()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    check(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

/// Runs `pi-wh`, compares with the golden file and returns degree -> valuation.
fn pi_wh_profile(p: u64, max: i64, golden_file: &str) -> Result<BTreeMap<i64, u32>, String> {
    let out = whcalc(&["pi-wh", "--p", &p.to_string(), "--max-degree", &max.to_string()]);
    check(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    check(text == golden(golden_file), || format!("output differs from {golden_file}"))?;
    let doc = Document::from_json(&text).map_err(|e| e.to_string())?;
    let Payload::TorsionProfile(profile) = doc.payload else {
        return Err("unexpected payload".into());
    };
    Ok(profile.entries.iter().map(|e| (e.degree, e.valuation)).collect())
}

fn table(groups: &[(u32, &[i64])]) -> BTreeMap<i64, u32> {
    groups
        .iter()
        .flat_map(|(v, ds)| ds.iter().map(move |&d| (d, *v)))
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let got = pi_wh_profile(3, 24, "pi_wh_p3.json")?;
    within(start, Duration::from_secs(1))?;
    let want = table(&[(1, &[11, 16, 18, 20, 21, 22]), (2, &[24]), (3, &[14])]);
    check(got == want, || format!("got {got:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let got = pi_wh_profile(5, 84, "pi_wh_p5.json")?;
    within(start, Duration::from_secs(2))?;
    let want = table(&[
        (
            1,
            &[
                18, 26, 28, 34, 36, 39, 41, 43, 48, 50, 52, 54, 58, 60, 62, 64, 68, 70, 72, 77, 78, 79, 80, 81,
            ],
        ),
        (2, &[42, 44, 56, 74, 76]),
        (3, &[46, 66, 82]),
        (4, &[84]),
    ]);
    check(got == want, || format!("got {got:?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    for pr in [3u64, 5, 7, 11] {
        let p = prime(pr);
        let top = max_profile_degree(p);
        let profile = wh_torsion_profile(p, top, Hypotheses::default()).map_err(|e| e.to_string())?;
        let chart = build_e2(p, ChartTarget::SOfCpbar, top - 1)
            .and_then(|e2| run_differentials(&e2))
            .map_err(|e| e.to_string())?;
        for d in 0..=top {
            let sigma_c = sigma_c_torsion(p, d).map_err(|e| e.to_string())?.map_or(0, |c| c.valuation);
            let from_chart = if d >= 1 {
                einf_valuation(&chart, d - 1).map_err(|e| e.to_string())?
            } else {
                0
            };
            let closed = profile.valuation_at(d);
            check(closed == sigma_c + from_chart, || {
                format!("p={pr} degree {d}: closed form {closed}, chart {sigma_c} + {from_chart}")
            })?;
        }
    }
    within(start, Duration::from_secs(30))
}

fn criterion_4() -> Outcome {
    for pr in [3u64, 5, 7] {
        let p = prime(pr);
        let pi = pr as i64;
        let max = ChartTarget::SOfCpbar.total_degree_bound(p) - 1;
        let einf = |target| {
            build_e2(p, target, max)
                .and_then(|e2| run_differentials(&e2))
                .map_err(|e| e.to_string())
        };
        let cpbar = einf(ChartTarget::SOfCpbar)?;
        let j = einf(ChartTarget::JOfCp)?;
        let cell = |stem: StemName, k: i64| (2 * k, stem.degree(p), ClassLabel::Torsion { stem, k });
        let in_window = |stem: StemName, k: i64| 2 * k + stem.degree(p) <= max;

        let mut want: BTreeSet<_> = j.torsion_labels();
        for m in 1..=pi - 3 {
            for (stem, k) in [
                (StemName::Beta1, m),
                (StemName::Alpha1Beta1, m * pi),
                (StemName::Beta1Sq, m),
            ] {
                if in_window(stem, k) {
                    want.insert(cell(stem, k));
                }
            }
        }
        let mut m = pi - 2;
        while in_window(StemName::AlphaBar(1), m * pi) {
            want.remove(&cell(StemName::AlphaBar(1), m * pi));
            m += 1;
        }
        let got = cpbar.torsion_labels();
        check(got == want, || {
            let extra: Vec<_> = got.difference(&want).collect();
            let missing: Vec<_> = want.difference(&got).collect();
            format!("p={pr}: extra {extra:?}, missing {missing:?}")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let hyp = Hypotheses::default();
    let first = first_p_torsion(prime(3), hyp).map_err(|e| e.to_string())?;
    check(
        first.degree == 11 && first.label.as_deref() == Some("Sigma beta_1"),
        || format!("p=3: {first:?}"),
    )?;
    for pr in [5u64, 7, 11] {
        let first = first_p_torsion(prime(pr), hyp).map_err(|e| e.to_string())?;
        check(first.degree == 4 * pr as i64 - 2 && first.valuation == 1, || {
            format!("p={pr}: {first:?}")
        })?;
    }
    for (pr, c, h) in [(3u64, 9, 10), (5, 16, 17)] {
        let t = concordance_first_torsion(prime(pr), hyp).map_err(|e| e.to_string())?;
        check((t.pi_degree_c, t.pi_degree_h) == (c, h), || format!("p={pr}: {t:?}"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    for (pr, max) in [(3u64, 120), (5, 200)] {
        let p = prime(pr);
        let alg = SteenrodAlgebra::new(p);
        let dual = milnor_dual_dims(p, max);
        for d in 0..=max {
            let n = alg.basis(d).len() as u64;
            check(n == dual.get(d), || format!("p={pr} degree {d}: {n} vs {}", dual.get(d)))?;
        }
    }
    within(start, Duration::from_secs(60))
}

fn criterion_7() -> Outcome {
    let p = prime(3);
    let alg = SteenrodAlgebra::new(p);
    let max = 60;
    let mut gens = vec![Generator::Bockstein];
    gens.extend((1..=(max / p.q()) as u64).map(Generator::Power));
    let mut words = 0;
    for &x in &gens {
        for &y in &gens {
            if x.degree(p) + y.degree(p) > max {
                continue;
            }
            words += 1;
            let w = Word(vec![x, y]);
            let e = alg.normalize(&w);
            for a in -1..=40 {
                let (lit, norm) = (act_word_on_projective(p, &w, a), act_combo_on_projective(p, &e, a));
                check(lit == norm, || format!("{w} on y^{a}: {lit:?} vs {norm:?}"))?;
            }
        }
    }
    check(words > 100, || format!("only {words} words"))
}

fn criterion_8() -> Outcome {
    let alg = SteenrodAlgebra::new(prime(3));
    let got = annihilator_basis(&alg, -1, 120).map_err(|e| e.to_string())?;
    let is_unit_or_power = |m: &Monomial| !m.has_bockstein() && m.pairs.len() <= 1;
    let want: Vec<Monomial> = admissible_basis(&alg, 120)
        .into_iter()
        .filter(|m| !is_unit_or_power(m))
        .collect();
    check(got == want, || format!("{} vs {} monomials", got.len(), want.len()))
}

fn criterion_9() -> Outcome {
    let p = 5u64;
    let alg = SteenrodAlgebra::new(prime(p));
    let got = annihilator_basis(&alg, 1, 200).map_err(|e| e.to_string())?;
    let staircase = |m: &Monomial| {
        let n = m.pairs.len();
        !m.has_bockstein()
            && m.pairs
                .iter()
                .enumerate()
                .all(|(i, &(s, _))| s == p.pow((n - 1 - i) as u32))
    };
    let want: Vec<Monomial> = admissible_basis(&alg, 200)
        .into_iter()
        .filter(|m| !staircase(m))
        .collect();
    check(got == want, || format!("{} vs {} monomials", got.len(), want.len()))
}

fn criterion_10() -> Outcome {
    let out = whcalc(&["cohomology", "--p", "3", "--piece", "all", "--max-degree", "40"]);
    check(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let doc = Document::from_json(&String::from_utf8_lossy(&out.stdout)).map_err(|e| e.to_string())?;
    let Payload::Cohomology(report) = doc.payload else {
        return Err("unexpected payload".into());
    };
    let names: Vec<&str> = report.pieces.iter().map(|x| x.name.as_str()).collect();
    check(
        names == ["H(Sigma c)", "H(Sigma HP^inf)", "Sigma^-2 C/A(b,Q1)"],
        || format!("pieces {names:?}"),
    )?;
    check(report.block(PieceBlock::Ker).count() == 0, || "ker block is not empty".into())?;
    let sigma_c = &report.pieces[0].dims;
    for d in 1..=10 {
        check(sigma_c.get(d) == 0, || format!("H(Sigma c) nonzero in degree {d}"))?;
    }
    check(sigma_c.get(11) == 1 && sigma_c.get(12) == 1, || {
        format!("H(Sigma c) in degrees 11, 12: {}, {}", sigma_c.get(11), sigma_c.get(12))
    })
}

/// Exact `B_0..=B_n` from `sum_{j<=m} C(m+1, j) B_j = 0`.
fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    let mut row = vec![BigInt::one(), BigInt::one()];
    for m in 1..=n {
        // advance to row m+1 of Pascal's triangle
        let mut next = vec![BigInt::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(row[j].clone()) * bj;
        }
        b.push(-s / BigRational::from_integer(row[m].clone()));
    }
    b
}

fn criterion_11() -> Outcome {
    let b = bernoulli(100);
    let exact_regular = |p: u64| {
        (2..=p as usize - 3)
            .step_by(2)
            .all(|k| !(b[k].numer() % BigInt::from(p)).is_zero())
    };
    for p in (3..=101u64).filter(|&n| OddPrime::new(n).is_ok()) {
        let engine = is_regular(prime(p)).map_err(|e| e.to_string())?;
        check(engine == exact_regular(p), || format!("p={p}: engine says {engine}"))?;
        let want = ![37, 59, 67, 101].contains(&p);
        check(engine == want, || format!("p={p}: regular = {engine}"))?;
    }
    let out = whcalc(&["pi-wh", "--p", "37"]);
    check(out.status.code() == Some(2), || format!("pi-wh --p 37 exited with {:?}", out.status.code()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("torsion profile at p = 3 below degree 25", criterion_1),
        ("torsion profile at p = 5 below degree 85", criterion_2),
        ("closed forms agree with the chart engine", criterion_3),
        ("CPbar chart against the J chart", criterion_4),
        ("first torsion and concordance degrees", criterion_5),
        ("admissible basis against the dual series", criterion_6),
        ("Adem expansions act like their words", criterion_7),
        ("annihilator of Sigma y^-1 at p = 3", criterion_8),
        ("annihilator of Sigma y at p = 5", criterion_9),
        ("cohomology pieces at p = 3", criterion_10),
        ("regularity gate", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
