//! Class-level bookkeeping for three Atiyah-Hirzebruch spectral sequences:
//!
//! * `J_OF_CP`: `H_s(CP^inf; pi_t(j)) => j_{s+t}(CP^inf)`
//! * `S_OF_CP`: `H_s(CP^inf; pi_t(S)) => pi_{s+t}(CP^inf)`
//! * `S_OF_CPBAR`: `H_s(CPbar^inf_{-1}; pi_t(S)) => pi_{s+t}(CPbar^inf_{-1})`
//!
//! Only orders are tracked. Differentials are known up to unit multiples, so
//! a page is a set of labelled cyclic classes with p-adic valuations.
//!
//! The axis differentials are only known in aggregate: in total degree
//! `2n - 1` they absorb exactly `v_p(n!)` from the image-of-J classes, with no
//! statement about which columns are hit. When the absorbed amount is less
//! than what is available, the affected classes stay on the page flagged
//! `aggregate_only` and the absorbed amount is kept as an axis deficit for
//! that total degree. Per-total-degree valuations are exact; per-cell data
//! for flagged classes is not.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{vp_factorial, OddPrime};
use crate::error::{Error, Result};
use crate::stems::{StemName, StemTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChartTarget {
    /// `j_*(CP^inf)`
    JOfCp,
    /// `pi_*(CP^inf)`
    SOfCp,
    /// `pi_*(CPbar^inf_{-1})`
    SOfCpbar,
}

impl ChartTarget {
    pub const ALL: [ChartTarget; 3] = [ChartTarget::JOfCp, ChartTarget::SOfCp, ChartTarget::SOfCpbar];

    /// Exclusive bound on total degrees for which the chart is accounted for:
    /// `|beta_2 b_1| = (2p+1)q` for the `CP^inf` charts and
    /// `|beta_2 b_{-1}| = (2p+1)q - 4` for `CPbar^inf_{-1}`.
    pub fn total_degree_bound(self, p: OddPrime) -> i64 {
        let top = (2 * p.as_i64() + 1) * p.q();
        match self {
            ChartTarget::JOfCp | ChartTarget::SOfCp => top,
            ChartTarget::SOfCpbar => top - 4,
        }
    }

    fn min_column(self) -> i64 {
        match self {
            ChartTarget::SOfCpbar => -1,
            _ => 1,
        }
    }

    fn has_cokernel_of_j(self) -> bool {
        !matches!(self, ChartTarget::JOfCp)
    }
}

impl fmt::Display for ChartTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartTarget::JOfCp => "J_OF_CP",
            ChartTarget::SOfCp => "S_OF_CP",
            ChartTarget::SOfCpbar => "S_OF_CPBAR",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PageLabel {
    E2,
    #[serde(rename = "EINF")]
    Einf,
}

/// The p-adic valuation of a cyclic summand, or `Infinite` for the integral
/// classes on the horizontal axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("INFINITE"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Valuation::Finite(v)),
            Raw::Str(s) if s == "INFINITE" => Ok(Valuation::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}

/// Which multiple of `b_k` survives on the axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisMultiplier {
    One,
    Factorial,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassLabel {
    Axis { k: i64, multiplier: AxisMultiplier },
    Torsion { stem: StemName, k: i64 },
}

impl ClassLabel {
    pub fn column(self) -> i64 {
        match self {
            ClassLabel::Axis { k, .. } | ClassLabel::Torsion { k, .. } => k,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Axis { k, multiplier } => match multiplier {
                AxisMultiplier::One => write!(f, "b_{k}"),
                AxisMultiplier::Factorial => write!(f, "{k}! b_{k}"),
                AxisMultiplier::Undetermined => write!(f, "N b_{k}"),
            },
            ClassLabel::Torsion { stem, k } => write!(f, "{stem} b_{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChartClass {
    pub label: ClassLabel,
    pub valuation: Valuation,
    pub aggregate_only: bool,
}

/// The differential families applied by [`run_differentials`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// Axis differentials: `E^inf_{2n,0} = Z{n! b_n}`.
    R1,
    /// `d^q(theta b_{k+p-1}) = alpha_1 theta b_k`, `k != 0 mod p`.
    R2,
    /// Toda bracket: `d^{(p-1)q}(theta alpha_1 b_{mp}) = theta beta_1 b_{mp-(p-1)^2}`.
    R3,
    /// Differentials crossing into the `b_{-1}` column.
    R4,
    /// Image-of-J in the `b_{-1}` column is hit from the axis.
    R5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Removal {
    pub rule: Rule,
    pub s: i64,
    pub t: i64,
    pub label: ClassLabel,
    pub valuation: u32,
}

/// One page of a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPage {
    target: ChartTarget,
    p: OddPrime,
    page: PageLabel,
    max_total_degree: i64,
    cells: BTreeMap<(i64, i64), Vec<ChartClass>>,
    axis_deficit: BTreeMap<i64, u32>,
    removed: Vec<Removal>,
}

impl ChartPage {
    pub fn target(&self) -> ChartTarget {
        self.target
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    pub fn page(&self) -> PageLabel {
        self.page
    }

    pub fn max_total_degree(&self) -> i64 {
        self.max_total_degree
    }

    /// Nonempty cells keyed by `(s, t)`.
    pub fn cells(&self) -> &BTreeMap<(i64, i64), Vec<ChartClass>> {
        &self.cells
    }

    pub fn cell(&self, s: i64, t: i64) -> &[ChartClass] {
        self.cells.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Valuation absorbed by axis differentials without being attributed to
    /// specific classes, per odd total degree.
    pub fn axis_deficit(&self) -> &BTreeMap<i64, u32> {
        &self.axis_deficit
    }

    pub fn removed(&self) -> &[Removal] {
        &self.removed
    }

    /// All classes strictly above the horizontal axis as `(s, t, label)`.
    pub fn torsion_labels(&self) -> BTreeSet<(i64, i64, ClassLabel)> {
        self.cells
            .iter()
            .filter(|((_, t), _)| *t > 0)
            .flat_map(|(&(s, t), v)| v.iter().map(move |c| (s, t, c.label)))
            .collect()
    }

    /// Sum of the valuations above the axis in one total degree, less any
    /// axis deficit recorded there.
    pub fn torsion_valuation(&self, total_degree: i64) -> Result<u32> {
        let raw: u64 = self
            .cells
            .iter()
            .filter(|(&(s, t), _)| t > 0 && s + t == total_degree)
            .flat_map(|(_, v)| v.iter())
            .filter_map(|c| c.valuation.finite())
            .map(u64::from)
            .sum();
        let deficit = u64::from(self.axis_deficit.get(&total_degree).copied().unwrap_or(0));
        raw.checked_sub(deficit).map(|v| v as u32).ok_or_else(|| {
            Error::Inconsistency(format!(
                "{} total degree {total_degree}: axis deficit {deficit} exceeds available {raw}",
                self.target
            ))
        })
    }

    fn insert(&mut self, s: i64, t: i64, class: ChartClass) {
        let cell = self.cells.entry((s, t)).or_default();
        cell.push(class);
        cell.sort();
    }

    fn remove(&mut self, rule: Rule, stem: StemName, k: i64) -> Result<()> {
        let s = 2 * k;
        let t = stem.degree(self.p);
        if s + t > self.max_total_degree {
            return Ok(());
        }
        let label = ClassLabel::Torsion { stem, k };
        let cell = self.cells.get_mut(&(s, t));
        let pos = cell
            .as_ref()
            .and_then(|c| c.iter().position(|c| c.label == label));
        let (Some(cell), Some(pos)) = (cell, pos) else {
            return Err(Error::Inconsistency(format!(
                "{} rule {rule:?}: class {label} at ({s}, {t}) is not on the page",
                self.target
            )));
        };
        let class = cell.remove(pos);
        if cell.is_empty() {
            self.cells.remove(&(s, t));
        }
        let valuation = class.valuation.finite().ok_or_else(|| {
            Error::Inconsistency(format!("rule {rule:?} tried to remove integral class {label}"))
        })?;
        self.removed.push(Removal {
            rule,
            s,
            t,
            label,
            valuation,
        });
        Ok(())
    }

    /// Flat records for serialization, one per nonempty cell.
    pub fn records(&self) -> Vec<ChartRecord> {
        self.cells
            .iter()
            .map(|(&(s, t), classes)| {
                let valuation = if classes.iter().any(|c| c.valuation == Valuation::Infinite) {
                    Valuation::Infinite
                } else {
                    Valuation::Finite(classes.iter().filter_map(|c| c.valuation.finite()).sum())
                };
                ChartRecord {
                    s,
                    t,
                    labels: classes.iter().map(|c| c.label.to_string()).collect(),
                    valuation,
                    aggregate_only: classes.iter().any(|c| c.aggregate_only),
                }
            })
            .collect()
    }

    pub fn to_document(&self) -> ChartDocument {
        ChartDocument {
            p: self.p.get(),
            target: self.target,
            page_label: self.page,
            max_total_degree: self.max_total_degree,
            axis_deficit: self
                .axis_deficit
                .iter()
                .map(|(&total_degree, &valuation)| AxisDeficit {
                    total_degree,
                    valuation,
                })
                .collect(),
            records: self.records(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartRecord {
    pub s: i64,
    pub t: i64,
    pub labels: Vec<String>,
    pub valuation: Valuation,
    pub aggregate_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisDeficit {
    pub total_degree: i64,
    pub valuation: u32,
}

/// Serialized form of a [`ChartPage`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDocument {
    pub p: u64,
    pub target: ChartTarget,
    pub page_label: PageLabel,
    pub max_total_degree: i64,
    pub axis_deficit: Vec<AxisDeficit>,
    pub records: Vec<ChartRecord>,
}

fn check_window(p: OddPrime, target: ChartTarget, max_total_degree: i64) -> Result<()> {
    let bound = target.total_degree_bound(p);
    if max_total_degree >= bound {
        return Err(Error::out_of_range(
            "max total degree",
            max_total_degree,
            format!("{target} is accounted for in total degrees < {bound}"),
        ));
    }
    Ok(())
}

/// The `E^2` page in total degrees `<= max_total_degree`.
pub fn build_e2(p: OddPrime, target: ChartTarget, max_total_degree: i64) -> Result<ChartPage> {
    check_window(p, target, max_total_degree)?;
    let table = StemTable::new(p);
    let mut page = ChartPage {
        target,
        p,
        page: PageLabel::E2,
        max_total_degree,
        cells: BTreeMap::new(),
        axis_deficit: BTreeMap::new(),
        removed: Vec::new(),
    };
    let mut k = target.min_column();
    while 2 * k <= max_total_degree {
        if k != 0 {
            let s = 2 * k;
            page.insert(
                s,
                0,
                ChartClass {
                    label: ClassLabel::Axis {
                        k,
                        multiplier: AxisMultiplier::One,
                    },
                    valuation: Valuation::Infinite,
                    aggregate_only: false,
                },
            );
            for class in table.classes() {
                if s + class.degree > max_total_degree {
                    continue;
                }
                if !target.has_cokernel_of_j() && !class.name.is_image_of_j() {
                    continue;
                }
                page.insert(
                    s,
                    class.degree,
                    ChartClass {
                        label: ClassLabel::Torsion {
                            stem: class.name,
                            k,
                        },
                        valuation: Valuation::Finite(class.order_valuation),
                        aggregate_only: false,
                    },
                );
            }
        }
        k += 1;
    }
    Ok(page)
}

/// Applies the differential families R1..R5 and returns the `E^inf` page.
pub fn run_differentials(page: &ChartPage) -> Result<ChartPage> {
    if page.page != PageLabel::E2 {
        return Err(Error::Precondition(
            "differentials are run on an E2 page".to_string(),
        ));
    }
    check_window(page.p, page.target, page.max_total_degree)?;
    let mut out = page.clone();
    out.page = PageLabel::Einf;
    apply_axis_rule(&mut out)?;
    if page.target.has_cokernel_of_j() {
        apply_dq_rule(&mut out)?;
        apply_toda_rule(&mut out)?;
    }
    if page.target == ChartTarget::SOfCpbar {
        apply_crossing_rule(&mut out)?;
        apply_transfer_rule(&mut out)?;
    }
    for total in out.axis_deficit.keys().copied().collect::<Vec<_>>() {
        out.torsion_valuation(total)?;
    }
    Ok(out)
}

/// R1: in total degree `2n - 1` the axis differentials absorb `v_p(n!)` from
/// the image-of-J classes in columns `k >= 1`.
fn apply_axis_rule(page: &mut ChartPage) -> Result<()> {
    let p = page.p;
    let axis_multiplier = match page.target {
        ChartTarget::SOfCpbar => AxisMultiplier::Undetermined,
        _ => AxisMultiplier::Factorial,
    };
    for ((_, t), classes) in page.cells.iter_mut() {
        if *t != 0 {
            continue;
        }
        for c in classes.iter_mut() {
            if let ClassLabel::Axis { k, multiplier } = &mut c.label {
                if *k >= 1 {
                    *multiplier = axis_multiplier;
                    c.aggregate_only = axis_multiplier == AxisMultiplier::Undetermined;
                }
            }
        }
    }

    let mut n = 1;
    while 2 * n - 1 <= page.max_total_degree {
        let total = 2 * n - 1;
        let budget = vp_factorial(p, n as u64);
        let pool: Vec<(i64, i64, ClassLabel, u32)> = page
            .cells
            .iter()
            .filter(|(&(s, t), _)| t > 0 && s >= 2 && s + t == total)
            .flat_map(|(&(s, t), v)| {
                v.iter().filter_map(move |c| match c.label {
                    ClassLabel::Torsion { stem, .. } if stem.is_image_of_j() => {
                        Some((s, t, c.label, c.valuation.finite()?))
                    }
                    _ => None,
                })
            })
            .collect();
        let available: u32 = pool.iter().map(|x| x.3).sum();
        if available < budget {
            return Err(Error::Inconsistency(format!(
                "{} total degree {total}: v_p({n}!) = {budget} exceeds the image-of-J valuation {available}",
                page.target
            )));
        }
        if budget > 0 {
            if available == budget {
                for (s, t, label, valuation) in pool {
                    let cell = page.cells.get_mut(&(s, t)).expect("pool cell");
                    cell.retain(|c| c.label != label);
                    if cell.is_empty() {
                        page.cells.remove(&(s, t));
                    }
                    page.removed.push(Removal {
                        rule: Rule::R1,
                        s,
                        t,
                        label,
                        valuation,
                    });
                }
            } else {
                for (s, t, label, _) in pool {
                    let cell = page.cells.get_mut(&(s, t)).expect("pool cell");
                    for c in cell.iter_mut().filter(|c| c.label == label) {
                        c.aggregate_only = true;
                    }
                }
                page.axis_deficit.insert(total, budget);
            }
        }
        n += 1;
    }
    Ok(())
}

/// R2: `d^q(theta b_{k+p-1}) = alpha_1 theta b_k` for `theta` in
/// `{beta_1, beta_1^2}`, `k >= 1`, `k != 0 mod p`.
fn apply_dq_rule(page: &mut ChartPage) -> Result<()> {
    let p = page.p.as_i64();
    for (theta, alpha_theta) in [
        (StemName::Beta1, StemName::Alpha1Beta1),
        (StemName::Beta1Sq, StemName::Alpha1Beta1Sq),
    ] {
        let mut k = 1;
        while 2 * k + alpha_theta.degree(page.p) <= page.max_total_degree {
            if k % p != 0 {
                page.remove(Rule::R2, theta, k + p - 1)?;
                page.remove(Rule::R2, alpha_theta, k)?;
            }
            k += 1;
        }
    }
    Ok(())
}

/// R3: `d^{(p-1)q}(theta alpha_1 b_{mp}) = theta beta_1 b_{mp-(p-1)^2}` for
/// `theta` in `{1, beta_1}` and `m >= p - 1`.
fn apply_toda_rule(page: &mut ChartPage) -> Result<()> {
    let p = page.p.as_i64();
    for (source, target) in [
        (StemName::AlphaBar(1), StemName::Beta1),
        (StemName::Alpha1Beta1, StemName::Beta1Sq),
    ] {
        let mut m = p - 1;
        loop {
            let k_target = m * p - (p - 1) * (p - 1);
            if 2 * k_target + target.degree(page.p) > page.max_total_degree {
                break;
            }
            page.remove(Rule::R3, source, m * p)?;
            page.remove(Rule::R3, target, k_target)?;
            m += 1;
        }
    }
    Ok(())
}

/// R4: the four differentials that hit cokernel-of-J classes on `b_{-1}`.
fn apply_crossing_rule(page: &mut ChartPage) -> Result<()> {
    let p = page.p.as_i64();
    let pairs = [
        ((StemName::Beta1, p - 2), StemName::Alpha1Beta1),
        ((StemName::Beta1Sq, p - 2), StemName::Alpha1Beta1Sq),
        ((StemName::AlphaBar(1), (p - 2) * p), StemName::Beta1),
        ((StemName::Alpha1Beta1, (p - 2) * p), StemName::Beta1Sq),
    ];
    for ((source, k), target) in pairs {
        page.remove(Rule::R4, source, k)?;
        page.remove(Rule::R4, target, -1)?;
    }
    Ok(())
}

/// R5: every image-of-J class on `b_{-1}` is hit from the axis.
fn apply_transfer_rule(page: &mut ChartPage) -> Result<()> {
    let doomed: Vec<StemName> = page
        .cells
        .iter()
        .filter(|((s, t), _)| *s == -2 && *t > 0)
        .flat_map(|(_, v)| v.iter())
        .filter_map(|c| match c.label {
            ClassLabel::Torsion { stem, .. } if stem.is_image_of_j() => Some(stem),
            _ => None,
        })
        .collect();
    for stem in doomed {
        page.remove(Rule::R5, stem, -1)?;
    }
    Ok(())
}

/// Torsion order of the abutment in `total_degree`, as a p-adic valuation.
pub fn einf_valuation(page: &ChartPage, total_degree: i64) -> Result<u32> {
    if page.page != PageLabel::Einf {
        return Err(Error::Precondition(
            "einf_valuation needs an EINF page".to_string(),
        ));
    }
    if total_degree > page.max_total_degree {
        return Err(Error::out_of_range(
            "total degree",
            total_degree,
            format!("page computed through total degree {}", page.max_total_degree),
        ));
    }
    page.torsion_valuation(total_degree)
}

/// p-adic valuation of the order of `j_{2n-1}(CP^inf)`:
/// `sum_{e>=0} [(n-1) / p^e(p-1)] - v_p(n!)`.
pub fn j_order_valuation(p: OddPrime, n: i64) -> Result<u32> {
    if n <= 0 {
        return Err(Error::out_of_range("n", n, "n >= 1"));
    }
    let pp = p.as_i64();
    let mut sum = 0;
    let mut modulus = pp - 1;
    while modulus < n {
        sum += (n - 1) / modulus;
        modulus *= pp;
    }
    let v = sum - i64::from(vp_factorial(p, n as u64));
    u32::try_from(v).map_err(|_| Error::Inconsistency(format!("j_{{2n-1}} valuation {v} < 0 at n = {n}")))
}
