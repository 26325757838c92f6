//! The mod p Steenrod algebra for odd p: admissible basis, Adem
//! normalization, the action on stunted projective classes, and graded
//! dimensions of the quotient modules built from it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::OddPrime;

mod algebra;
mod linalg;
mod modules;
mod monomial;

pub use algebra::{FpCombo, SteenrodAlgebra};
pub use linalg::{rank_mod_p, Echelon};
pub use modules::{
    act_combo_on_projective, act_on_projective, act_word_on_projective, admissible_basis,
    annihilator_basis, annihilator_check, left_ideal_dims, quotient_module_dims, AnnihilatorCheck,
    QuotientSpec,
};
pub use monomial::{Generator, Monomial, Word};

/// Dimensions by degree. Only nonzero entries are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i64, u64>);

impl GradedDims {
    pub fn new() -> Self {
        GradedDims::default()
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i64, dim: u64) {
        if dim == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, dim);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &n)| (d, n))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first_nonzero(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    /// The suspension `Sigma^offset`, truncated to degrees `<= max_degree`.
    pub fn shifted(&self, offset: i64, max_degree: i64) -> GradedDims {
        self.iter()
            .map(|(d, n)| (d + offset, n))
            .filter(|&(d, _)| d <= max_degree)
            .collect()
    }

    pub fn add(&mut self, other: &GradedDims) {
        for (d, n) in other.iter() {
            self.set(d, self.get(d) + n);
        }
    }
}

impl FromIterator<(i64, u64)> for GradedDims {
    fn from_iter<I: IntoIterator<Item = (i64, u64)>>(iter: I) -> Self {
        let mut out = GradedDims::new();
        for (d, n) in iter {
            out.set(d, out.get(d) + n);
        }
        out
    }
}

/// Coefficients up to `max_degree` of the Poincare series of a polynomial
/// algebra tensor an exterior algebra with generators in the given degrees.
pub fn poincare_series(poly: &[i64], exterior: &[i64], max_degree: i64) -> Vec<u64> {
    let n = max_degree.max(-1) + 1;
    let mut c = vec![0u64; n as usize];
    if n == 0 {
        return c;
    }
    c[0] = 1;
    for &g in poly.iter().filter(|&&g| g > 0 && g <= max_degree) {
        let g = g as usize;
        for d in g..c.len() {
            c[d] += c[d - g];
        }
    }
    for &g in exterior.iter().filter(|&&g| g > 0 && g <= max_degree) {
        let g = g as usize;
        for d in (g..c.len()).rev() {
            c[d] += c[d - g];
        }
    }
    c
}

fn powers_below(p: OddPrime, from: u32, max_degree: i64, degree: impl Fn(i64) -> i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut i = from;
    loop {
        let d = degree(p.as_i64().pow(i));
        if d > max_degree {
            return out;
        }
        out.push(d);
        i += 1;
    }
}

fn series_dims(c: Vec<u64>) -> GradedDims {
    c.into_iter().enumerate().map(|(d, n)| (d as i64, n)).collect()
}

/// Dimensions of `A` from its dual: polynomial on degrees `2(p^i - 1)`,
/// `i >= 1`, tensor exterior on degrees `2p^i - 1`, `i >= 0`.
pub fn milnor_dual_dims(p: OddPrime, max_degree: i64) -> GradedDims {
    let xi = powers_below(p, 1, max_degree, |pi| 2 * (pi - 1));
    let tau = powers_below(p, 0, max_degree, |pi| 2 * pi - 1);
    series_dims(poincare_series(&xi, &tau, max_degree))
}

/// Dimensions of `A//E_1`: polynomial on the `xi_i`, exterior on `tau_i`
/// for `i >= 2`.
pub fn milnor_dual_dims_mod_e1(p: OddPrime, max_degree: i64) -> GradedDims {
    let xi = powers_below(p, 1, max_degree, |pi| 2 * (pi - 1));
    let tau = powers_below(p, 2, max_degree, |pi| 2 * pi - 1);
    series_dims(poincare_series(&xi, &tau, max_degree))
}

/// Dimensions of `A//A_1`: polynomial on `xi_1^p, xi_2, ...`, exterior on
/// `tau_2, ...`.
pub fn milnor_dual_dims_mod_a1(p: OddPrime, max_degree: i64) -> GradedDims {
    let mut xi = vec![p.as_i64() * p.q()];
    xi.extend(powers_below(p, 2, max_degree, |pi| 2 * (pi - 1)));
    let tau = powers_below(p, 2, max_degree, |pi| 2 * pi - 1);
    series_dims(poincare_series(&xi, &tau, max_degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_dims_examples() {
        let p = OddPrime::new(3).unwrap();
        let d = milnor_dual_dims(p, 10);
        assert_eq!(d.get(0), 1);
        assert_eq!(d.get(1), 1);
        assert_eq!(d.get(4), 1);
        assert_eq!(d.get(5), 2);
        assert_eq!(d.get(2), 0);
    }

    #[test]
    fn graded_dims_drop_zeros() {
        let mut g: GradedDims = [(1, 0), (2, 3)].into_iter().collect();
        assert_eq!(g.iter().collect::<Vec<_>>(), vec![(2, 3)]);
        g.set(2, 0);
        assert!(g.is_empty());
        let g: GradedDims = [(5, 1), (9, 2)].into_iter().collect();
        assert_eq!(g.shifted(-2, 5).iter().collect::<Vec<_>>(), vec![(3, 1)]);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"5":1,"9":2}"#);
    }
}
