//! The action on `H^*(CP^infty_{-1})`, annihilator ideals, left ideals and
//! quotient modules, all as graded dimensions.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::algebra::{FpCombo, SteenrodAlgebra};
use super::linalg::Echelon;
use super::monomial::{Generator, Monomial, Word};
use super::GradedDims;
use crate::arith::{binom_mod_p, OddPrime};
use crate::error::{Error, Result};

/// Applies a word (right to left) to `y^a`, where `P^i(y^k) = C(k,i)
/// y^{k+(p-1)i}` and `b(y^k) = 0`. Returns `None` when the result is zero.
///
/// Operations commute with suspension, so the same answer describes the
/// action on `Sigma^n y^a` for every `n`.
pub fn act_word_on_projective(p: OddPrime, word: &Word, a: i64) -> Option<(u64, i64)> {
    let mut coeff = 1u64;
    let mut k = a;
    for g in word.0.iter().rev() {
        match *g {
            Generator::Bockstein => return None,
            Generator::Power(i) => {
                let c = binom_mod_p(p, k, i);
                if c == 0 {
                    return None;
                }
                coeff = coeff * c % p.get();
                k += (p.as_i64() - 1) * i as i64;
            }
        }
    }
    Some((coeff, k))
}

/// The action of an admissible monomial on `y^a`; see
/// [`act_word_on_projective`].
pub fn act_on_projective(p: OddPrime, mono: &Monomial, a: i64) -> Option<(u64, i64)> {
    act_word_on_projective(p, &mono.word(), a)
}

/// The action of a homogeneous combination on `y^a`.
pub fn act_combo_on_projective(p: OddPrime, x: &FpCombo, a: i64) -> Option<(u64, i64)> {
    let mut total = 0u64;
    let mut target = None;
    for (m, c) in x.terms() {
        if let Some((v, k)) = act_on_projective(p, m, a) {
            total = (total + v * c) % p.get();
            target = Some(k);
        }
    }
    match target {
        Some(k) if total != 0 => Some((total, k)),
        _ => None,
    }
}

fn check_class(a: i64) -> Result<()> {
    if a < -1 {
        return Err(Error::out_of_range("projective exponent a", a, "a >= -1"));
    }
    Ok(())
}

fn check_max(max_degree: i64) -> Result<()> {
    if max_degree < 0 {
        return Err(Error::out_of_range("max_degree", max_degree, "max_degree >= 0"));
    }
    Ok(())
}

/// All admissible monomials of degree `<= max_degree`, by degree and then
/// in monomial order.
pub fn admissible_basis(alg: &SteenrodAlgebra, max_degree: i64) -> Vec<Monomial> {
    (0..=max_degree)
        .flat_map(|d| alg.basis(d).to_vec())
        .collect()
}

/// Admissible monomials of degree `<= max_degree` that kill `y^a`.
pub fn annihilator_basis(alg: &SteenrodAlgebra, a: i64, max_degree: i64) -> Result<Vec<Monomial>> {
    check_class(a)?;
    check_max(max_degree)?;
    let p = alg.p();
    Ok(admissible_basis(alg, max_degree)
        .into_iter()
        .filter(|m| act_on_projective(p, m, a).is_none())
        .collect())
}

/// Comparison of the monomial filter with the exact annihilator of `y^a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorCheck {
    pub a: i64,
    pub max_degree: i64,
    /// Dimension of the kernel of `A_d -> F_p{y^{a + d/2}}`.
    pub exact: GradedDims,
    /// Number of admissible monomials of degree `d` acting as zero.
    pub monomial: GradedDims,
    /// Degrees where the two differ, i.e. the annihilator is not spanned
    /// by monomials there.
    pub counterexamples: Vec<i64>,
}

/// Exact annihilator dimensions of `y^a` next to the monomial count.
pub fn annihilator_check(alg: &SteenrodAlgebra, a: i64, max_degree: i64) -> Result<AnnihilatorCheck> {
    check_class(a)?;
    check_max(max_degree)?;
    let p = alg.p();
    let mut exact = GradedDims::new();
    let mut monomial = GradedDims::new();
    let mut counterexamples = Vec::new();
    for d in 0..=max_degree {
        let basis = alg.basis(d);
        let mut nonzero = 0u64;
        for m in basis.iter() {
            if act_on_projective(p, m, a).is_some() {
                nonzero += 1;
            }
        }
        // the image is at most the line spanned by y^{a + d/2}
        let image_rank = u64::from(nonzero > 0);
        let n = basis.len() as u64;
        exact.set(d, n - image_rank);
        monomial.set(d, n - nonzero);
        if nonzero > 1 {
            counterexamples.push(d);
        }
    }
    Ok(AnnihilatorCheck {
        a,
        max_degree,
        exact,
        monomial,
        counterexamples,
    })
}

fn coordinates(alg: &SteenrodAlgebra, x: &FpCombo, degree: i64) -> Vec<u64> {
    let basis = alg.basis(degree);
    let mut v = vec![0u64; basis.len()];
    for (m, c) in x.terms() {
        let i = basis.binary_search(m).expect("products stay in the admissible basis");
        v[i] = c;
    }
    v
}

/// Spanning sets of `A g_1 + ... + A g_r` per degree, reduced to echelon
/// form.
fn left_ideal_echelons(
    alg: &SteenrodAlgebra,
    generators: &[FpCombo],
    max_degree: i64,
) -> Result<Vec<Echelon>> {
    check_max(max_degree)?;
    let p = alg.p();
    let mut gens = Vec::new();
    for g in generators {
        let Some(dg) = g.degree(p) else { continue };
        if g.terms().any(|(m, _)| m.degree(p) != dg) {
            return Err(Error::Precondition(format!("ideal generator {g} is not homogeneous")));
        }
        gens.push((g, dg));
    }
    let mut out = Vec::with_capacity(max_degree as usize + 1);
    for d in 0..=max_degree {
        let mut e = Echelon::new(p, alg.basis(d).len());
        'gens: for (g, dg) in &gens {
            if *dg > d {
                continue;
            }
            for x in alg.basis(d - dg).iter() {
                if e.is_full() {
                    break 'gens;
                }
                let prod = alg.word_times(&x.word(), g);
                e.insert(coordinates(alg, &prod, d));
            }
        }
        out.push(e);
    }
    Ok(out)
}

/// Dimensions of the left ideal generated by `generators`, per degree.
pub fn left_ideal_dims(alg: &SteenrodAlgebra, generators: &[FpCombo], max_degree: i64) -> Result<GradedDims> {
    Ok(left_ideal_echelons(alg, generators, max_degree)?
        .iter()
        .enumerate()
        .map(|(d, e)| (d as i64, e.rank() as u64))
        .collect())
}

/// Named quotient modules. Degrees are internal to the module: the
/// algebra grading for quotients of `A` or of an ideal, and `2(k - a)` for
/// the class `Sigma y^k` of the projective summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientSpec {
    /// `C / A(b)` with `C` the annihilator of `y^{-1}`.
    CModAbeta,
    /// `C / A(b, Q_1)`.
    CModAbetaQ1,
    /// `C_a / A(b, Q_1)` with `C_a` the annihilator of `y^a`.
    CaModAbetaQ1(i64),
    /// `A // E_1 = A / A(b, Q_1)`.
    AModE1,
    /// `A // A_1 = A / A(b, P^1)`.
    AModA1,
    /// `I(A) / A(b, P^1)`.
    IaModAbetaP1,
    /// `F_p{Sigma y^k | k = a mod p-1, k >= a}` modulo the submodule
    /// generated by `Sigma y^a`.
    CpSummandModTopClass(i64),
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSpec::CModAbeta => f.write_str("C/A(b)"),
            QuotientSpec::CModAbetaQ1 => f.write_str("C/A(b,Q1)"),
            QuotientSpec::CaModAbetaQ1(a) => write!(f, "C_{a}/A(b,Q1)"),
            QuotientSpec::AModE1 => f.write_str("A//E1"),
            QuotientSpec::AModA1 => f.write_str("A//A1"),
            QuotientSpec::IaModAbetaP1 => f.write_str("I(A)/A(b,P1)"),
            QuotientSpec::CpSummandModTopClass(a) => write!(f, "H(Sigma CP[{a}])/A(Sigma y^{a})"),
        }
    }
}

fn ideal_beta() -> Vec<FpCombo> {
    vec![FpCombo::monomial(Monomial::bockstein())]
}

fn ideal_beta_q1(alg: &SteenrodAlgebra) -> Vec<FpCombo> {
    vec![FpCombo::monomial(Monomial::bockstein()), alg.milnor_primitive(1)]
}

fn ideal_beta_p1() -> Vec<FpCombo> {
    vec![
        FpCombo::monomial(Monomial::bockstein()),
        FpCombo::monomial(Monomial::power(1)),
    ]
}

/// `C_a / (ideal)`, after checking that every generator of the ideal kills
/// `y^a` (so the ideal lies in `C_a`).
fn annihilator_quotient(
    alg: &SteenrodAlgebra,
    a: i64,
    ideal: &[FpCombo],
    max_degree: i64,
) -> Result<GradedDims> {
    let p = alg.p();
    for g in ideal {
        if let Some((c, k)) = act_combo_on_projective(p, g, a) {
            return Err(Error::Inconsistency(format!(
                "ideal generator {g} maps y^{a} to {c} y^{k}, so the ideal is not inside C_{a}"
            )));
        }
    }
    let ann = annihilator_check(alg, a, max_degree)?;
    let ideal_dims = left_ideal_dims(alg, ideal, max_degree)?;
    difference(&ann.exact, &ideal_dims, max_degree, "annihilator quotient")
}

fn difference(num: &GradedDims, den: &GradedDims, max_degree: i64, what: &str) -> Result<GradedDims> {
    let mut out = GradedDims::new();
    for d in 0..=max_degree {
        let (n, m) = (num.get(d), den.get(d));
        if m > n {
            return Err(Error::Inconsistency(format!(
                "{what}: submodule of dimension {m} inside dimension {n} in degree {d}"
            )));
        }
        out.set(d, n - m);
    }
    Ok(out)
}

fn algebra_dims(alg: &SteenrodAlgebra, max_degree: i64) -> GradedDims {
    (0..=max_degree).map(|d| (d, alg.basis(d).len() as u64)).collect()
}

/// Graded dimensions of a quotient module in degrees `0..=max_degree`.
pub fn quotient_module_dims(alg: &SteenrodAlgebra, spec: QuotientSpec, max_degree: i64) -> Result<GradedDims> {
    check_max(max_degree)?;
    let p = alg.p();
    match spec {
        QuotientSpec::CModAbeta => annihilator_quotient(alg, -1, &ideal_beta(), max_degree),
        QuotientSpec::CModAbetaQ1 => annihilator_quotient(alg, -1, &ideal_beta_q1(alg), max_degree),
        QuotientSpec::CaModAbetaQ1(a) => annihilator_quotient(alg, a, &ideal_beta_q1(alg), max_degree),
        QuotientSpec::AModE1 => {
            let ideal = left_ideal_dims(alg, &ideal_beta_q1(alg), max_degree)?;
            difference(&algebra_dims(alg, max_degree), &ideal, max_degree, "A//E1")
        }
        QuotientSpec::AModA1 => {
            let ideal = left_ideal_dims(alg, &ideal_beta_p1(), max_degree)?;
            difference(&algebra_dims(alg, max_degree), &ideal, max_degree, "A//A1")
        }
        QuotientSpec::IaModAbetaP1 => {
            let ideal = left_ideal_dims(alg, &ideal_beta_p1(), max_degree)?;
            let mut aug = algebra_dims(alg, max_degree);
            aug.set(0, 0);
            difference(&aug, &ideal, max_degree, "I(A)/A(b,P1)")
        }
        QuotientSpec::CpSummandModTopClass(a) => {
            check_class(a)?;
            let step = 2 * (p.as_i64() - 1);
            let mut out = GradedDims::new();
            let mut d = 0;
            while d <= max_degree {
                // Sigma y^{a + d/2} is hit iff some monomial carries y^a to it
                let hit = alg.basis(d).iter().any(|m| act_on_projective(p, m, a).is_some());
                out.set(d, u64::from(!hit));
                d += step;
            }
            Ok(out)
        }
    }
}
