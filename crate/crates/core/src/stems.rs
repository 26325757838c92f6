//! p-torsion of the stable stems below `|beta_2| = (2p+1)q - 2`.
//!
//! The table is generated from degree formulas: the image-of-J classes
//! `abar_i` in degree `qi - 1` of order `p^{1 + v_p(i)}`, and the four
//! cokernel-of-J classes `beta_1`, `alpha_1 beta_1`, `beta_1^2`,
//! `alpha_1 beta_1^2`, each of order `p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{vp, OddPrime};
use crate::error::{Error, Result};

/// Symbolic name of a p-torsion generator (or the unit) of `pi_*(S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StemName {
    Unit,
    AlphaBar(u64),
    Beta1,
    Alpha1Beta1,
    Beta1Sq,
    Alpha1Beta1Sq,
}

impl StemName {
    /// Image-of-J classes (the `abar_i`; `alpha_1 = abar_1`).
    pub fn is_image_of_j(self) -> bool {
        matches!(self, StemName::AlphaBar(_))
    }

    pub fn is_cokernel_of_j(self) -> bool {
        matches!(
            self,
            StemName::Beta1 | StemName::Alpha1Beta1 | StemName::Beta1Sq | StemName::Alpha1Beta1Sq
        )
    }

    pub fn degree(self, p: OddPrime) -> i64 {
        let (pp, q) = (p.as_i64(), p.q());
        match self {
            StemName::Unit => 0,
            StemName::AlphaBar(i) => q * i as i64 - 1,
            StemName::Beta1 => pp * q - 2,
            StemName::Alpha1Beta1 => (pp + 1) * q - 3,
            StemName::Beta1Sq => 2 * pp * q - 4,
            StemName::Alpha1Beta1Sq => (2 * pp + 1) * q - 5,
        }
    }
}

impl fmt::Display for StemName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StemName::Unit => write!(f, "1"),
            StemName::AlphaBar(i) => write!(f, "abar_{i}"),
            StemName::Beta1 => write!(f, "beta_1"),
            StemName::Alpha1Beta1 => write!(f, "alpha_1 beta_1"),
            StemName::Beta1Sq => write!(f, "beta_1^2"),
            StemName::Alpha1Beta1Sq => write!(f, "alpha_1 beta_1^2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StemClass {
    pub name: StemName,
    pub degree: i64,
    pub order_valuation: u32,
}

/// The p-torsion of `pi_t(S)` for all `0 <= t < (2p+1)q - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemTable {
    p: OddPrime,
    classes: Vec<StemClass>,
}

impl StemTable {
    pub fn new(p: OddPrime) -> Self {
        let bound = p.beta2_degree();
        let mut classes = Vec::new();
        let mut i = 1;
        while p.q() * i as i64 - 1 < bound {
            classes.push(StemClass {
                name: StemName::AlphaBar(i),
                degree: StemName::AlphaBar(i).degree(p),
                order_valuation: 1 + vp(p, i).expect("i >= 1"),
            });
            i += 1;
        }
        for name in [
            StemName::Beta1,
            StemName::Alpha1Beta1,
            StemName::Beta1Sq,
            StemName::Alpha1Beta1Sq,
        ] {
            classes.push(StemClass {
                name,
                degree: name.degree(p),
                order_valuation: 1,
            });
        }
        classes.sort_by_key(|c| (c.degree, c.name));
        StemTable { p, classes }
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    /// Exclusive upper bound on the degrees this table describes.
    pub fn bound(&self) -> i64 {
        self.p.beta2_degree()
    }

    pub fn classes(&self) -> &[StemClass] {
        &self.classes
    }

    pub fn in_degree(&self, t: i64) -> Result<Vec<StemClass>> {
        if t < 0 || t >= self.bound() {
            return Err(Error::out_of_range(
                "stem degree t",
                t,
                format!("0 <= t < |beta_2| = (2p+1)q-2 = {}", self.bound()),
            ));
        }
        Ok(self
            .classes
            .iter()
            .filter(|c| c.degree == t)
            .copied()
            .collect())
    }
}

/// The p-torsion classes of `pi_t(S)`, ordered by name.
pub fn stem_torsion(p: OddPrime, t: i64) -> Result<Vec<StemClass>> {
    StemTable::new(p).in_degree(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn p(n: u64) -> OddPrime {
        OddPrime::new(n).unwrap()
    }

    #[test]
    fn examples() {
        let c = stem_torsion(p(3), 3).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].name, StemName::AlphaBar(1));
        assert_eq!(c[0].order_valuation, 1);

        let c = stem_torsion(p(3), 10).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].name, StemName::Beta1);

        let c = stem_torsion(p(5), 39).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].name, StemName::AlphaBar(5));
        assert_eq!(c[0].order_valuation, 2);

        assert!(stem_torsion(p(5), 1).unwrap().is_empty());
    }

    #[test]
    fn range_is_enforced() {
        assert!(stem_torsion(p(3), 25).is_ok());
        assert!(matches!(
            stem_torsion(p(3), 26),
            Err(Error::OutOfRange { .. })
        ));
        assert!(stem_torsion(p(3), -1).is_err());
    }

    #[test]
    fn shared_degree_is_ordered_by_name() {
        // |alpha_1 beta_1^2| = 23 = |abar_6| at p = 3
        let c = stem_torsion(p(3), 23).unwrap();
        let names: Vec<_> = c.iter().map(|c| c.name).collect();
        assert_eq!(names, vec![StemName::AlphaBar(6), StemName::Alpha1Beta1Sq]);
    }

    #[test]
    fn table_properties() {
        for pr in [3, 5, 7, 11, 13] {
            let table = StemTable::new(p(pr));
            let q = p(pr).q();
            let mut binned: BTreeMap<i64, Vec<StemClass>> = BTreeMap::new();
            for t in 0..table.bound() {
                let here = table.in_degree(t).unwrap();
                let abar = here.iter().filter(|c| c.name.is_image_of_j()).count();
                let expect = if (t + 1) % q == 0 { 1 } else { 0 };
                assert_eq!(abar, expect, "p={pr} t={t}");
                if !here.is_empty() {
                    binned.insert(t, here);
                }
            }
            let flattened: Vec<_> = binned.into_values().flatten().collect();
            assert_eq!(flattened, table.classes());
            for name in [
                StemName::Beta1,
                StemName::Alpha1Beta1,
                StemName::Beta1Sq,
                StemName::Alpha1Beta1Sq,
            ] {
                assert_eq!(table.classes().iter().filter(|c| c.name == name).count(), 1);
            }
            assert!(table.classes().iter().all(|c| c.degree < table.bound()));
        }
    }
}
