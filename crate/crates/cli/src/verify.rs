//! The oracle cross-checks behind `whcalc verify`.

use std::fmt;

use whcalc_core::steenrod::{
    act_combo_on_projective, act_word_on_projective, admissible_basis, annihilator_basis, annihilator_check,
    milnor_dual_dims, milnor_dual_dims_mod_a1, milnor_dual_dims_mod_e1, quotient_module_dims, Generator, Monomial,
    QuotientSpec, SteenrodAlgebra, Word,
};
use whcalc_core::torsion::{
    check_hypotheses, first_p_torsion, max_profile_degree, wh_torsion_profile, wh_torsion_profile_from_chart,
    Hypotheses,
};
use whcalc_core::whcohomology::eigen_indices;
use whcalc_core::OddPrime;

use crate::commands::pi_wh;
use crate::error::CliError;

pub const GOLDEN_PI_WH_P3: &str = include_str!("../tests/golden/pi_wh_p3.json");
pub const GOLDEN_PI_WH_P5: &str = include_str!("../tests/golden/pi_wh_p5.json");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRow {
    pub p: u64,
    pub check: &'static str,
    /// `None` on success, otherwise what went wrong.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.failure.is_none())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>4}  {:<20}  result", "p", "check")?;
        for r in &self.rows {
            match &r.failure {
                None => writeln!(f, "{:>4}  {:<20}  pass", r.p, r.check)?,
                Some(why) => writeln!(f, "{:>4}  {:<20}  FAIL  {why}", r.p, r.check)?,
            }
        }
        let failed = self.rows.iter().filter(|r| r.failure.is_some()).count();
        writeln!(f, "{} checks, {} failed", self.rows.len(), failed)
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: whcalc_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Bounds {
    basis: i64,
    adem: i64,
    quotient: i64,
    annihilator: i64,
}

fn bounds(p: OddPrime, deep: bool) -> Bounds {
    match (p.get(), deep) {
        (3, false) => Bounds { basis: 60, adem: 40, quotient: 40, annihilator: 60 },
        (3, true) => Bounds { basis: 120, adem: 60, quotient: 80, annihilator: 120 },
        (_, false) => Bounds { basis: 100, adem: 80, quotient: 80, annihilator: 100 },
        (_, true) => Bounds { basis: 200, adem: 120, quotient: 120, annihilator: 200 },
    }
}

fn torsion_oracle(p: OddPrime) -> Check {
    let top = max_profile_degree(p);
    let closed = core(wh_torsion_profile(p, top, Hypotheses::default()))?;
    let chart = core(wh_torsion_profile_from_chart(p, top, Hypotheses::default()))?;
    for d in 0..=top {
        let (a, b) = (closed.valuation_at(d), chart.valuation_at(d));
        ensure(a == b, || format!("degree {d}: closed form {a}, chart {b}"))?;
    }
    Ok(())
}

fn first_torsion(p: OddPrime) -> Check {
    let first = core(first_p_torsion(p, Hypotheses::default()))?;
    let expected = if p.get() == 3 { 11 } else { 4 * p.as_i64() - 2 };
    ensure(first.degree == expected && first.valuation == 1, || {
        format!("got degree {} valuation {}, expected degree {expected}", first.degree, first.valuation)
    })
}

fn basis_count(alg: &SteenrodAlgebra, max: i64) -> Check {
    let dual = milnor_dual_dims(alg.p(), max);
    for d in 0..=max {
        let n = alg.basis(d).len() as u64;
        ensure(n == dual.get(d), || format!("degree {d}: {n} admissibles, dual series {}", dual.get(d)))?;
    }
    Ok(())
}

fn adem_action(alg: &SteenrodAlgebra, max: i64) -> Check {
    let p = alg.p();
    let mut gens = vec![Generator::Bockstein];
    gens.extend((1..=(max / p.q()) as u64).map(Generator::Power));
    for &x in &gens {
        for &y in &gens {
            if x.degree(p) + y.degree(p) > max {
                continue;
            }
            let w = Word(vec![x, y]);
            let e = alg.normalize(&w);
            for a in -1..=40 {
                let (lit, norm) = (act_word_on_projective(p, &w, a), act_combo_on_projective(p, &e, a));
                ensure(lit == norm, || format!("{w} on y^{a}: {lit:?} vs {norm:?}"))?;
            }
        }
    }
    Ok(())
}

fn staircase(p: u64, m: &Monomial) -> bool {
    let n = m.pairs.len();
    !m.has_bockstein()
        && m.pairs
            .iter()
            .enumerate()
            .all(|(i, &(s, _))| s == p.pow((n - 1 - i) as u32))
}

fn annihilators(alg: &SteenrodAlgebra, max: i64) -> Check {
    let p = alg.p();
    let basis = admissible_basis(alg, max);
    let c = core(annihilator_basis(alg, -1, max))?;
    let expected: Vec<Monomial> = basis
        .iter()
        .filter(|m| m.has_bockstein() || m.pairs.len() >= 2)
        .cloned()
        .collect();
    ensure(c == expected, || "C differs from all admissibles except 1 and P^i".into())?;
    if p.get() >= 5 {
        let c1 = core(annihilator_basis(alg, 1, max))?;
        let expected: Vec<Monomial> = basis.iter().filter(|m| !staircase(p.get(), m)).cloned().collect();
        ensure(c1 == expected, || "C_1 differs from all admissibles except 1 and P^(p^e,...,p,1)".into())?;
    }
    for a in std::iter::once(-1).chain(eigen_indices(p)) {
        let check = core(annihilator_check(alg, a, max))?;
        ensure(check.counterexamples.is_empty(), || {
            format!("C_{a} is not monomial in degrees {:?}", check.counterexamples)
        })?;
    }
    Ok(())
}

fn ideal_containment(alg: &SteenrodAlgebra, max: i64) -> Check {
    for a in std::iter::once(-1).chain(eigen_indices(alg.p())) {
        core(quotient_module_dims(alg, QuotientSpec::CaModAbetaQ1(a), max))?;
    }
    Ok(())
}

fn quotient_duals(alg: &SteenrodAlgebra, max: i64) -> Check {
    let p = alg.p();
    let e1 = core(quotient_module_dims(alg, QuotientSpec::AModE1, max))?;
    ensure(e1 == milnor_dual_dims_mod_e1(p, max), || "A//E1 differs from its dual series".into())?;
    let a1 = core(quotient_module_dims(alg, QuotientSpec::AModA1, max))?;
    ensure(a1 == milnor_dual_dims_mod_a1(p, max), || "A//A1 differs from its dual series".into())
}

fn golden(p: OddPrime) -> Option<Check> {
    let (expected, max) = match p.get() {
        3 => (GOLDEN_PI_WH_P3, 24),
        5 => (GOLDEN_PI_WH_P5, 84),
        _ => return None,
    };
    let got = pi_wh(p.get(), Some(max), false).and_then(|d| d.to_json());
    Some(match got {
        Ok(json) => ensure(json == expected, || "pi-wh output differs from the golden file".into()),
        Err(e) => Err(e.to_string()),
    })
}

/// Runs every check for every prime. Primes failing the regularity gate
/// abort the whole run before any check executes.
pub fn run_verify(primes: &[u64], deep: bool) -> Result<VerifyReport, CliError> {
    let mut checked = Vec::new();
    for &p in primes {
        let p = OddPrime::new(p)?;
        check_hypotheses(p, Hypotheses::default())?;
        checked.push(p);
    }
    let mut report = VerifyReport::default();
    for p in checked {
        let b = bounds(p, deep);
        let alg = SteenrodAlgebra::new(p);
        let mut push = |check: &'static str, result: Check| {
            report.rows.push(CheckRow {
                p: p.get(),
                check,
                failure: result.err(),
            })
        };
        push("torsion-oracle", torsion_oracle(p));
        push("first-torsion", first_torsion(p));
        push("basis-count", basis_count(&alg, b.basis));
        push("adem-action", adem_action(&alg, b.adem));
        push("annihilators", annihilators(&alg, b.annihilator));
        push("ideal-containment", ideal_containment(&alg, b.quotient));
        push("quotient-duals", quotient_duals(&alg, b.quotient));
        if let Some(result) = golden(p) {
            push("golden", result);
        }
    }
    Ok(report)
}
