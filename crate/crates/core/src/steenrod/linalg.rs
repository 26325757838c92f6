//! Row reduction over F_p.

use crate::arith::{inv_mod, OddPrime};

/// A reduced row-echelon basis of a subspace of `F_p^n`, built one vector
/// at a time.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u64,
    width: usize,
    // (pivot column, row normalized to 1 at the pivot)
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(p: OddPrime, width: usize) -> Self {
        Echelon {
            p: p.get(),
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` against the current rows; the residue is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.width);
        let p = self.p;
        for (col, row) in &self.rows {
            let c = v[*col] % p;
            if c == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + (p - c) * r) % p;
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<u64>) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[col], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        // keep earlier rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            let c = row[col];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        self.rows.push((col, v));
        true
    }
}

/// Rank over F_p of the given rows.
pub fn rank_mod_p(p: OddPrime, width: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> usize {
    let mut e = Echelon::new(p, width);
    for r in rows {
        e.insert(r);
        if e.is_full() {
            break;
        }
    }
    e.rank()
}
