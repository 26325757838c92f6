use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::monomial::{Generator, Monomial, Word};
use crate::arith::{binom_mod_p, OddPrime};

/// An `F_p`-linear combination of admissible monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpCombo {
    terms: BTreeMap<Monomial, u64>,
}

impl FpCombo {
    pub fn zero() -> Self {
        FpCombo::default()
    }

    pub fn unit() -> Self {
        FpCombo::monomial(Monomial::unit())
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        FpCombo { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Common degree of the terms, `None` for zero.
    pub fn degree(&self, p: OddPrime) -> Option<i64> {
        self.terms.keys().next().map(|m| m.degree(p))
    }

    pub fn add_term(&mut self, m: Monomial, c: u64, p: OddPrime) {
        let c = c % p.get();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = (*entry + c) % p.get();
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn add_scaled(&mut self, other: &FpCombo, c: u64, p: OddPrime) {
        for (m, v) in other.terms() {
            self.add_term(m.clone(), v * (c % p.get()), p);
        }
    }

    pub fn scaled(&self, c: u64, p: OddPrime) -> FpCombo {
        let mut out = FpCombo::zero();
        out.add_scaled(self, c, p);
        out
    }

    pub fn sub(&self, other: &FpCombo, p: OddPrime) -> FpCombo {
        let mut out = self.clone();
        out.add_scaled(other, p.get() - 1, p);
        out
    }
}

impl fmt::Display for FpCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c != 1 {
                write!(f, "{c} ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn sign(n: u64, p: OddPrime) -> u64 {
    if n.is_multiple_of(2) {
        1
    } else {
        p.get() - 1
    }
}

/// `C(top, bottom) mod p` with the convention that a negative bottom gives 0.
fn binom(p: OddPrime, top: i64, bottom: i64) -> u64 {
    if bottom < 0 {
        0
    } else {
        binom_mod_p(p, top, bottom as u64)
    }
}

/// The mod p Steenrod algebra in the admissible basis.
///
/// Bases and products by single generators are cached; the caches are
/// behind locks so one instance can be shared across threads.
#[derive(Debug)]
pub struct SteenrodAlgebra {
    p: OddPrime,
    bases: RwLock<HashMap<i64, Arc<Vec<Monomial>>>>,
    products: RwLock<HashMap<(Generator, Monomial), FpCombo>>,
}

impl SteenrodAlgebra {
    pub fn new(p: OddPrime) -> Self {
        SteenrodAlgebra {
            p,
            bases: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
        }
    }

    pub fn p(&self) -> OddPrime {
        self.p
    }

    /// Admissible monomials of exactly `degree`, sorted.
    pub fn basis(&self, degree: i64) -> Arc<Vec<Monomial>> {
        if let Some(b) = self.bases.read().unwrap().get(&degree) {
            return Arc::clone(b);
        }
        let b = Arc::new(enumerate_admissible(self.p, degree));
        self.bases
            .write()
            .unwrap()
            .entry(degree)
            .or_insert_with(|| Arc::clone(&b));
        b
    }

    /// `g * m` for a single generator and an admissible monomial.
    pub fn gen_times(&self, g: Generator, m: &Monomial) -> FpCombo {
        let key = (g, m.clone());
        if let Some(hit) = self.products.read().unwrap().get(&key) {
            return hit.clone();
        }
        let value = self.gen_times_uncached(g, m);
        self.products.write().unwrap().insert(key, value.clone());
        value
    }

    fn gen_times_uncached(&self, g: Generator, m: &Monomial) -> FpCombo {
        let p = self.p;
        let pp = p.get();
        match g {
            Generator::Bockstein => {
                if m.epsilon_0 {
                    FpCombo::zero()
                } else {
                    FpCombo::monomial(Monomial {
                        epsilon_0: true,
                        pairs: m.pairs.clone(),
                    })
                }
            }
            Generator::Power(0) => FpCombo::monomial(m.clone()),
            Generator::Power(a) => {
                let Some(&(s1, _)) = m.pairs.first() else {
                    // P^a or P^a b
                    return FpCombo::monomial(Monomial {
                        epsilon_0: false,
                        pairs: vec![(a, m.epsilon_0)],
                    });
                };
                let needed = pp * s1 + u64::from(m.epsilon_0);
                if a >= needed {
                    return FpCombo::monomial(m.prepend_power(a));
                }
                let tail = m.tail();
                let (ai, bi, pi) = (a as i64, s1 as i64, pp as i64);
                let mut out = FpCombo::zero();
                if !m.epsilon_0 {
                    // P^a P^b = sum (-1)^{a+i} C((p-1)(b-i)-1, a-pi) P^{a+b-i} P^i
                    for i in 0..=(a / pp) {
                        let ii = i as i64;
                        let c = binom(p, (pi - 1) * (bi - ii) - 1, ai - pi * ii) * sign(a + i, p) % pp;
                        if c == 0 {
                            continue;
                        }
                        let inner = self.gen_times(Generator::Power(i), &tail);
                        let outer = self.gen_times_combo(Generator::Power(a + s1 - i), &inner);
                        out.add_scaled(&outer, c, p);
                    }
                } else {
                    // P^a b P^b = sum (-1)^{a+i} C((p-1)(b-i), a-pi) b P^{a+b-i} P^i
                    //           + sum (-1)^{a+i+1} C((p-1)(b-i)-1, a-pi-1) P^{a+b-i} b P^i
                    for i in 0..=(a / pp) {
                        let ii = i as i64;
                        let c1 = binom(p, (pi - 1) * (bi - ii), ai - pi * ii) * sign(a + i, p) % pp;
                        let c2 = binom(p, (pi - 1) * (bi - ii) - 1, ai - pi * ii - 1) * sign(a + i + 1, p) % pp;
                        if c1 == 0 && c2 == 0 {
                            continue;
                        }
                        let inner = self.gen_times(Generator::Power(i), &tail);
                        if c1 != 0 {
                            let x = self.gen_times_combo(Generator::Power(a + s1 - i), &inner);
                            let x = self.gen_times_combo(Generator::Bockstein, &x);
                            out.add_scaled(&x, c1, p);
                        }
                        if c2 != 0 {
                            let x = self.gen_times_combo(Generator::Bockstein, &inner);
                            let x = self.gen_times_combo(Generator::Power(a + s1 - i), &x);
                            out.add_scaled(&x, c2, p);
                        }
                    }
                }
                out
            }
        }
    }

    pub fn gen_times_combo(&self, g: Generator, x: &FpCombo) -> FpCombo {
        let mut out = FpCombo::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.gen_times(g, m), c, self.p);
        }
        out
    }

    /// Product of a word of generators (left to right) with `x`.
    pub fn word_times(&self, word: &Word, x: &FpCombo) -> FpCombo {
        word.0
            .iter()
            .rev()
            .fold(x.clone(), |acc, &g| self.gen_times_combo(g, &acc))
    }

    pub fn mul_monomials(&self, x: &Monomial, y: &Monomial) -> FpCombo {
        self.word_times(&x.word(), &FpCombo::monomial(y.clone()))
    }

    pub fn mul(&self, x: &FpCombo, y: &FpCombo) -> FpCombo {
        let mut out = FpCombo::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.word_times(&m.word(), y), c, self.p);
        }
        out
    }

    /// The expansion of a word in the admissible basis.
    pub fn normalize(&self, word: &Word) -> FpCombo {
        self.word_times(word, &FpCombo::unit())
    }

    /// `Q_0 = b` and `Q_{n+1} = P^{p^n} Q_n - Q_n P^{p^n}`.
    pub fn milnor_primitive(&self, n: u32) -> FpCombo {
        let p = self.p;
        let mut q = FpCombo::monomial(Monomial::bockstein());
        for k in 0..n {
            let power = FpCombo::monomial(Monomial::power(p.get().pow(k)));
            q = self.mul(&power, &q).sub(&self.mul(&q, &power), p);
        }
        q
    }
}

/// All admissible monomials of the given degree, sorted.
pub(crate) fn enumerate_admissible(p: OddPrime, degree: i64) -> Vec<Monomial> {
    fn rec(
        p: OddPrime,
        rem: i64,
        max_s: Option<u64>,
        current: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if rem == 0 {
            out.push(current.clone());
            return;
        }
        let q = p.q();
        let mut top = (rem / q) as u64;
        if let Some(m) = max_s {
            top = top.min(m);
        }
        for s in 1..=top {
            for e in [false, true] {
                let d = q * s as i64 + i64::from(e);
                if d > rem || (e && s == 0) {
                    continue;
                }
                current.pairs.push((s, e));
                rec(p, rem - d, Some((s - u64::from(e)) / p.get()), current, out);
                current.pairs.pop();
            }
        }
    }

    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    for e0 in [false, true] {
        let mut current = Monomial {
            epsilon_0: e0,
            pairs: Vec::new(),
        };
        rec(p, degree - i64::from(e0), None, &mut current, &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> OddPrime {
        OddPrime::new(n).unwrap()
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn low_degree_basis_at_three() {
        let a = SteenrodAlgebra::new(p(3));
        let all: Vec<String> = (0..=5)
            .flat_map(|d| a.basis(d).iter().map(|m| m.to_string()).collect::<Vec<_>>())
            .collect();
        assert_eq!(all, vec!["1", "b", "P1", "P1 b", "b P1"]);
        assert!(a.basis(6).iter().any(|m| m.to_string() == "b P1 b"));
    }

    #[test]
    fn basis_is_admissible_and_homogeneous() {
        for pr in [3, 5, 7] {
            for d in 0..80 {
                for m in enumerate_admissible(p(pr), d).iter() {
                    assert!(m.is_admissible(p(pr)), "{m}");
                    assert_eq!(m.degree(p(pr)), d);
                }
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let a = SteenrodAlgebra::new(p(3));
        assert!(a.normalize(&word("b b")).is_zero());
        let pp = a.normalize(&word("P1 P1"));
        assert_eq!(pp.to_string(), "2 P2");
        let adm = a.normalize(&word("P3 P1"));
        assert_eq!(adm, FpCombo::monomial(Monomial::powers(&[3, 1])));
        assert_eq!(a.normalize(&word("")), FpCombo::unit());
        assert_eq!(a.normalize(&word("P0 b")), FpCombo::monomial(Monomial::bockstein()));
    }

    #[test]
    fn normalize_is_idempotent_on_basis() {
        for pr in [3, 5] {
            let a = SteenrodAlgebra::new(p(pr));
            for d in 0..60 {
                for m in a.basis(d).iter() {
                    assert_eq!(a.normalize(&m.word()), FpCombo::monomial(m.clone()));
                }
            }
        }
    }

    #[test]
    fn p1_power_relations() {
        // P^1 P^1 = 2 P^2 for every odd p; P^1 ... P^1 (p times) = 0.
        for pr in [3, 5, 7] {
            let a = SteenrodAlgebra::new(p(pr));
            let two = a.normalize(&word("P1 P1"));
            assert_eq!(two, FpCombo::monomial(Monomial::power(2)).scaled(2, p(pr)));
            let ones = Word(vec![Generator::Power(1); pr as usize]);
            assert!(a.normalize(&ones).is_zero(), "p={pr}");
        }
    }

    #[test]
    fn milnor_primitives() {
        let a = SteenrodAlgebra::new(p(3));
        let q1 = a.milnor_primitive(1);
        // Q_1 = P^1 b - b P^1
        let mut expect = FpCombo::monomial(Monomial {
            epsilon_0: false,
            pairs: vec![(1, true)],
        });
        expect.add_term(
            Monomial {
                epsilon_0: true,
                pairs: vec![(1, false)],
            },
            2,
            p(3),
        );
        assert_eq!(q1, expect);
        for pr in [3, 5] {
            let a = SteenrodAlgebra::new(p(pr));
            for n in 0..=3 {
                let q = a.milnor_primitive(n);
                assert!(!q.is_zero());
                assert_eq!(q.degree(p(pr)), Some(2 * (pr as i64).pow(n) - 1));
                assert!(q.terms().all(|(m, _)| m.is_admissible(p(pr)) && m.has_bockstein()));
                // Q_n^2 = 0
                assert!(a.mul(&q, &q).is_zero());
            }
        }
    }

    #[test]
    fn associativity_on_small_monomials() {
        let a = SteenrodAlgebra::new(p(3));
        let small: Vec<Monomial> = (0..=13).flat_map(|d| a.basis(d).to_vec()).collect();
        for x in &small {
            for y in &small {
                let xy = a.mul_monomials(x, y);
                for z in small.iter().take(8) {
                    let left = a.mul(&xy, &FpCombo::monomial(z.clone()));
                    let right = a.mul(&FpCombo::monomial(x.clone()), &a.mul_monomials(y, z));
                    assert_eq!(left, right, "({x})({y})({z})");
                }
            }
        }
    }
}
