use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::OddPrime;
use crate::error::Error;

/// A raw generator of the Steenrod algebra: the Bockstein `b` or `P^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Bockstein,
    Power(u64),
}

impl Generator {
    pub fn degree(self, p: OddPrime) -> i64 {
        match self {
            Generator::Bockstein => 1,
            Generator::Power(s) => p.q() * s as i64,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Bockstein => f.write_str("b"),
            Generator::Power(s) => write!(f, "P{s}"),
        }
    }
}

/// A word in the generators, not necessarily admissible.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Generator>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses space-separated tokens such as `"b P3 b P1"`; `"1"` or the
    /// empty string is the unit.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut gens = Vec::new();
        for tok in s.split_whitespace() {
            match tok {
                "1" => {}
                "b" => gens.push(Generator::Bockstein),
                t if t.starts_with('P') => {
                    let s = t[1..]
                        .parse()
                        .map_err(|_| Error::Precondition(format!("bad Steenrod token {t:?}")))?;
                    gens.push(Generator::Power(s));
                }
                t => return Err(Error::Precondition(format!("bad Steenrod token {t:?}"))),
            }
        }
        Ok(Word(gens))
    }
}

/// `b^{e_0} P^{s_1} b^{e_1} ... P^{s_k} b^{e_k}`, stored as `e_0` and the
/// pairs `(s_i, e_i)`. Instances built by this crate are admissible:
/// `s_i >= p s_{i+1} + e_i` and every `s_i >= 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub epsilon_0: bool,
    pub pairs: Vec<(u64, bool)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn bockstein() -> Self {
        Monomial {
            epsilon_0: true,
            pairs: Vec::new(),
        }
    }

    pub fn power(s: u64) -> Self {
        if s == 0 {
            return Monomial::unit();
        }
        Monomial {
            epsilon_0: false,
            pairs: vec![(s, false)],
        }
    }

    /// `P^{s_1} ... P^{s_k}` with no Bocksteins.
    pub fn powers(seq: &[u64]) -> Self {
        Monomial {
            epsilon_0: false,
            pairs: seq.iter().map(|&s| (s, false)).collect(),
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.epsilon_0 && self.pairs.is_empty()
    }

    pub fn has_bockstein(&self) -> bool {
        self.epsilon_0 || self.pairs.iter().any(|&(_, e)| e)
    }

    pub fn degree(&self, p: OddPrime) -> i64 {
        i64::from(self.epsilon_0)
            + self
                .pairs
                .iter()
                .map(|&(s, e)| p.q() * s as i64 + i64::from(e))
                .sum::<i64>()
    }

    pub fn is_admissible(&self, p: OddPrime) -> bool {
        self.pairs.iter().all(|&(s, _)| s >= 1)
            && self
                .pairs
                .windows(2)
                .all(|w| w[0].0 >= p.get() * w[1].0 + u64::from(w[0].1))
    }

    /// The generators left to right.
    pub fn word(&self) -> Word {
        let mut gens = Vec::with_capacity(2 * self.pairs.len() + 1);
        if self.epsilon_0 {
            gens.push(Generator::Bockstein);
        }
        for &(s, e) in &self.pairs {
            gens.push(Generator::Power(s));
            if e {
                gens.push(Generator::Bockstein);
            }
        }
        Word(gens)
    }

    /// The part after the leading `b^{e_0} P^{s_1}`, as a monomial starting
    /// with `b^{e_1}`.
    pub(crate) fn tail(&self) -> Monomial {
        match self.pairs.split_first() {
            None => Monomial::unit(),
            Some((&(_, e1), rest)) => Monomial {
                epsilon_0: e1,
                pairs: rest.to_vec(),
            },
        }
    }

    /// `P^s` followed by `self`, without any admissibility check.
    pub(crate) fn prepend_power(&self, s: u64) -> Monomial {
        let mut pairs = Vec::with_capacity(self.pairs.len() + 1);
        pairs.push((s, self.epsilon_0));
        pairs.extend_from_slice(&self.pairs);
        Monomial {
            epsilon_0: false,
            pairs,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word().fmt(f)
    }
}
