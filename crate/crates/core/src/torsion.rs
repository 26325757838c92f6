//! Closed-form torsion orders for `pi_*(Wh(*))` and their assembly.
//!
//! `tors pi_*(Wh(*)) = pi_*(Sigma c) + tors pi_*(Sigma CPbar^inf_{-1})`, where
//! the first summand is `Z/p` on four suspended cokernel-of-J classes and the
//! second is given degreewise by [`cpbar_even_valuation`] and
//! [`cpbar_odd_valuation`]. The results are orders only; group extensions are
//! not determined here, apart from the one stored annotation at `p = 3`.

use serde::{Deserialize, Serialize};

use crate::ahss::{build_e2, einf_valuation, run_differentials, ChartTarget};
use crate::arith::{is_regular, OddPrime};
use crate::error::{Error, Result};

pub const ASSUMPTION_REGULAR: &str = "odd regular prime";
pub const ASSUMPTION_LQ: &str = "Lichtenbaum-Quillen for Z[1/p]";
pub const ASSUMPTION_REGULAR_UNVERIFIED: &str = "regularity assumed by the caller, not verified";

/// Degree constants derived from `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingConstants {
    pub q: i64,
    pub beta2_degree: i64,
    /// Degrees of `Sigma beta_1`, `Sigma alpha_1 beta_1`, `Sigma beta_1^2`,
    /// `Sigma alpha_1 beta_1^2`.
    pub sigma_c_degrees: [i64; 4],
}

impl SplittingConstants {
    pub fn new(p: OddPrime) -> Self {
        let (pp, q) = (p.as_i64(), p.q());
        SplittingConstants {
            q,
            beta2_degree: p.beta2_degree(),
            sigma_c_degrees: [pp * q - 1, (pp + 1) * q - 2, 2 * pp * q - 3, (2 * pp + 1) * q - 4],
        }
    }
}

const SIGMA_C_LABELS: [&str; 4] = [
    "Sigma beta_1",
    "Sigma alpha_1 beta_1",
    "Sigma beta_1^2",
    "Sigma alpha_1 beta_1^2",
];

/// Exclusive bound on degrees where `tors pi_*(Sigma CPbar^inf_{-1})` is
/// determined: `(2p+1)q - 3`.
pub fn cpbar_degree_bound(p: OddPrime) -> i64 {
    p.beta2_degree() - 1
}

/// Largest degree of `Wh(*)` for which the torsion profile is determined.
pub fn max_profile_degree(p: OddPrime) -> i64 {
    cpbar_degree_bound(p) - 1
}

/// p-adic valuation of `|tors pi_{2n}(Sigma CPbar^inf_{-1})|`.
pub fn cpbar_even_valuation(p: OddPrime, n: i64) -> Result<u32> {
    if n < 1 || 2 * n >= cpbar_degree_bound(p) {
        return Err(Error::out_of_range(
            "n",
            n,
            format!("n >= 1 and 2n < (2p+1)q-3 = {}", cpbar_degree_bound(p)),
        ));
    }
    let pp = p.as_i64();
    let mut v = ((n - 1) / (pp - 1) + (n - 1) / (pp * (pp - 1))) - (n / pp + n / (pp * pp));
    let offset = n - (pp * pp - 2);
    if offset > 0 && offset % pp == 0 && offset / pp <= pp - 3 {
        v += 1;
    }
    let offset = n - (pp - 1);
    if offset > 0 && offset % pp == 0 && offset / pp >= pp - 2 {
        v -= 1;
    }
    u32::try_from(v).map_err(|_| {
        Error::Inconsistency(format!("negative valuation {v} for pi_{} at p = {p}", 2 * n))
    })
}

/// p-adic valuation of `|tors pi_{2n+1}(Sigma CPbar^inf_{-1})|`.
pub fn cpbar_odd_valuation(p: OddPrime, n: i64) -> Result<u32> {
    if n < 0 || 2 * n + 1 >= cpbar_degree_bound(p) {
        return Err(Error::out_of_range(
            "n",
            n,
            format!("n >= 0 and 2n+1 < (2p+1)q-3 = {}", cpbar_degree_bound(p)),
        ));
    }
    let pp = p.as_i64();
    let in_window = |start: i64| (1..=pp - 3).contains(&(n - start));
    Ok(u32::from(in_window(pp * pp - pp - 1) || in_window(2 * pp * pp - 2 * pp - 2)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaCClass {
    pub label: String,
    pub degree: i64,
    pub valuation: u32,
}

/// The generator of `pi_degree(Sigma c)`, if any, for `degree < (2p+1)q - 1`.
pub fn sigma_c_torsion(p: OddPrime, degree: i64) -> Result<Option<SigmaCClass>> {
    let bound = p.beta2_degree() + 1;
    if degree < 0 || degree >= bound {
        return Err(Error::out_of_range(
            "degree",
            degree,
            format!("0 <= degree < (2p+1)q-1 = {bound}"),
        ));
    }
    let constants = SplittingConstants::new(p);
    Ok(constants
        .sigma_c_degrees
        .iter()
        .zip(SIGMA_C_LABELS)
        .find(|(d, _)| **d == degree)
        .map(|(&degree, label)| SigmaCClass {
            label: label.to_string(),
            degree,
            valuation: 1,
        }))
}

/// Caller overrides for the standing hypotheses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Hypotheses {
    /// Proceed for primes beyond the range the regularity test certifies.
    pub assume_regular: bool,
}

/// Checks that `p` is regular and returns the assumption list to record.
///
/// A prime the test shows to be irregular is always rejected. A prime the
/// test cannot certify is rejected unless `assume_regular` is set.
pub fn check_hypotheses(p: OddPrime, hyp: Hypotheses) -> Result<Vec<String>> {
    let mut assumptions = vec![ASSUMPTION_REGULAR.to_string(), ASSUMPTION_LQ.to_string()];
    match is_regular(p) {
        Ok(true) => Ok(assumptions),
        Ok(false) => Err(Error::Precondition(format!(
            "p = {p} is irregular; the standing hypothesis requires an odd regular prime"
        ))),
        Err(Error::Unverified { .. }) if hyp.assume_regular => {
            assumptions.push(ASSUMPTION_REGULAR_UNVERIFIED.to_string());
            Ok(assumptions)
        }
        Err(Error::Unverified { p, bound }) => Err(Error::Precondition(format!(
            "regularity of p = {p} cannot be verified above {bound}; pass assume-regular to proceed"
        ))),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub degree: i64,
    pub valuation: u32,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionProfile {
    pub p: u64,
    pub max_degree: i64,
    pub assumptions: Vec<String>,
    pub entries: Vec<TorsionEntry>,
}

impl TorsionProfile {
    pub fn valuation_at(&self, degree: i64) -> u32 {
        self.entries
            .iter()
            .find(|e| e.degree == degree)
            .map_or(0, |e| e.valuation)
    }
}

fn check_profile_window(p: OddPrime, max_degree: i64) -> Result<()> {
    let top = max_profile_degree(p);
    if max_degree > top {
        return Err(Error::out_of_range(
            "max degree",
            max_degree,
            format!("the torsion of Wh(*) is determined in degrees <= (2p+1)q-4 = {top}"),
        ));
    }
    Ok(())
}

/// Valuation of `tors pi_degree(Sigma CPbar^inf_{-1})`.
fn cpbar_valuation(p: OddPrime, degree: i64) -> Result<u32> {
    match degree {
        d if d <= 0 => Ok(0),
        d if d % 2 == 0 => cpbar_even_valuation(p, d / 2),
        d => cpbar_odd_valuation(p, (d - 1) / 2),
    }
}

/// Group structure stored as given data rather than computed.
fn known_structure(p: OddPrime, degree: i64) -> Option<&'static str> {
    (p.get() == 3 && degree == 14).then_some("Z/3{Sigma alpha_1 beta_1} + Z/9")
}

fn entry(p: OddPrime, degree: i64, sigma_c: Option<SigmaCClass>, cpbar: u32) -> Option<TorsionEntry> {
    let valuation = sigma_c.as_ref().map_or(0, |c| c.valuation) + cpbar;
    (valuation > 0).then(|| TorsionEntry {
        degree,
        valuation,
        generators: sigma_c.into_iter().map(|c| c.label).collect(),
        structure: known_structure(p, degree).map(str::to_string),
    })
}

/// The torsion profile of `pi_*(Wh(*))` in degrees `0..=max_degree`.
pub fn wh_torsion_profile(p: OddPrime, max_degree: i64, hyp: Hypotheses) -> Result<TorsionProfile> {
    let assumptions = check_hypotheses(p, hyp)?;
    check_profile_window(p, max_degree)?;
    let mut entries = Vec::new();
    for degree in 0..=max_degree {
        let sigma_c = sigma_c_torsion(p, degree)?;
        if let Some(e) = entry(p, degree, sigma_c, cpbar_valuation(p, degree)?) {
            entries.push(e);
        }
    }
    Ok(TorsionProfile {
        p: p.get(),
        max_degree,
        assumptions,
        entries,
    })
}

/// The same profile computed from the `S_OF_CPBAR` chart instead of the
/// closed forms: `pi_d(Sigma CPbar) = pi_{d-1}(CPbar)`.
pub fn wh_torsion_profile_from_chart(p: OddPrime, max_degree: i64, hyp: Hypotheses) -> Result<TorsionProfile> {
    let assumptions = check_hypotheses(p, hyp)?;
    check_profile_window(p, max_degree)?;
    let chart = run_differentials(&build_e2(p, ChartTarget::SOfCpbar, max_degree - 1)?)?;
    let mut entries = Vec::new();
    for degree in 0..=max_degree {
        let sigma_c = sigma_c_torsion(p, degree)?;
        if let Some(e) = entry(p, degree, sigma_c, einf_valuation(&chart, degree - 1)?) {
            entries.push(e);
        }
    }
    Ok(TorsionProfile {
        p: p.get(),
        max_degree,
        assumptions,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstTorsion {
    pub degree: i64,
    pub valuation: u32,
    pub label: Option<String>,
}

/// The lowest degree carrying p-torsion in `pi_*(Wh(*))`.
pub fn first_p_torsion(p: OddPrime, hyp: Hypotheses) -> Result<FirstTorsion> {
    let profile = wh_torsion_profile(p, max_profile_degree(p), hyp)?;
    let first = profile.entries.first().ok_or_else(|| {
        Error::Inconsistency(format!("no p-torsion below degree {}", profile.max_degree + 1))
    })?;
    Ok(FirstTorsion {
        degree: first.degree,
        valuation: first.valuation,
        label: first.generators.first().cloned(),
    })
}

/// Igusa's stability bound: `C(M) -> C(I x M)` is `k`-connected once
/// `dim M >= max(2k + 7, 3k + 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilityBound {
    pub terms: [(i64, i64); 2],
}

impl Default for StabilityBound {
    fn default() -> Self {
        StabilityBound {
            terms: [(2, 7), (3, 4)],
        }
    }
}

impl StabilityBound {
    pub fn min_dimension(&self, k: i64) -> i64 {
        self.terms.iter().map(|(a, b)| a * k + b).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcordanceTorsion {
    pub pi_degree_c: i64,
    pub pi_degree_h: i64,
    pub group_valuation: u32,
    pub connectivity_hypothesis: String,
    pub dimension_hypothesis: String,
    /// Consequence for diffeomorphism groups of discs.
    pub disc_statement: String,
}

/// The first p-torsion in `pi_*` of the concordance and h-cobordism spaces of
/// a highly connected manifold in the concordance stable range.
///
/// Uses `pi_{*-2} C(M) = pi_{*-1} H(M) = pi_* Wh(M)` in the stable range.
pub fn concordance_first_torsion(p: OddPrime, hyp: Hypotheses) -> Result<ConcordanceTorsion> {
    concordance_first_torsion_with(p, hyp, StabilityBound::default())
}

pub fn concordance_first_torsion_with(
    p: OddPrime,
    hyp: Hypotheses,
    bound: StabilityBound,
) -> Result<ConcordanceTorsion> {
    let first = first_p_torsion(p, hyp)?;
    let c_degree = first.degree - 2;
    let min_dim = bound.min_dimension(c_degree + 1);
    Ok(ConcordanceTorsion {
        pi_degree_c: c_degree,
        pi_degree_h: first.degree - 1,
        group_valuation: first.valuation,
        connectivity_hypothesis: format!("{}-connected", first.degree),
        dimension_hypothesis: format!("n >= {min_dim}"),
        disc_statement: format!(
            "for n >= {min_dim}, pi_{c_degree} DIFF(D^(n+1)) or pi_{c_degree} DIFF(D^n) contains an element of order {p}"
        ),
    })
}
