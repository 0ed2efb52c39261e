//! Exact linear algebra on sparse vectors.
//!
//! [`Echelon`] keeps an incremental row echelon form whose pivot is the
//! smallest column key of each row, so the column order decides which
//! coordinates are eliminated first. [`bareiss_rank`] is an independent
//! fraction-free rank over the Gaussian integers, used to re-check results.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type SparseRow<K> = BTreeMap<K, Scalar>;

#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<SparseRow<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows in insertion order; each has leading coefficient one.
    pub fn rows(&self) -> &[SparseRow<K>] {
        &self.rows
    }

    pub fn pivot_of(&self, row: usize) -> &K {
        self.rows[row].keys().next().expect("rows are nonzero")
    }

    /// The remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseRow<K>) -> SparseRow<K> {
        let mut v = v.clone();
        let mut floor: Option<K> = None;
        loop {
            let next = v
                .iter()
                .filter(|(k, _)| floor.as_ref().is_none_or(|f| *k > f))
                .find(|(k, _)| self.pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((key, c)) = next else { break };
            for (k, rc) in &self.rows[self.pivots[&key]] {
                let entry = v.entry(k.clone()).or_insert_with(Scalar::zero);
                *entry = &*entry - &(&c * rc);
                if entry.is_zero() {
                    v.remove(k);
                }
            }
            floor = Some(key);
        }
        v
    }

    pub fn contains(&self, v: &SparseRow<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns true when the rank grew.
    pub fn insert(&mut self, v: &SparseRow<K>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        let row = r.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }
}

/// A Gaussian integer.
#[derive(Clone, PartialEq, Eq, Debug)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        GaussInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Division that must be exact.
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        let norm = &d.re * &d.re + &d.im * &d.im;
        let conj = GaussInt {
            re: d.re.clone(),
            im: -d.im.clone(),
        };
        let p = self.mul(&conj);
        let (re, r1) = p.re.div_rem(&norm);
        let (im, r2) = p.im.div_rem(&norm);
        assert!(r1.is_zero() && r2.is_zero(), "fraction-free step was not exact");
        GaussInt { re, im }
    }
}

/// Clears denominators of one row, giving Gaussian integers.
fn integer_row(row: &[Scalar]) -> Vec<GaussInt> {
    let mut l = BigInt::one();
    for c in row {
        l = l.lcm(c.re().denom()).lcm(c.im().denom());
    }
    row.iter()
        .map(|c| GaussInt {
            re: (c.re() * &l).to_integer(),
            im: (c.im() * &l).to_integer(),
        })
        .collect()
}

/// Rank of a dense matrix of scalars by fraction-free elimination over
/// `Z[i]`. Rows are scaled to integers first, which does not change the rank.
pub fn bareiss_rank(rows: &[Vec<Scalar>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<GaussInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut prev = GaussInt::one();
    let mut rank = 0;
    for col in 0..width {
        if rank == m.len() {
            break;
        }
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..m.len() {
            let factor = m[i][col].clone();
            for j in col + 1..width {
                let v = pivot.mul(&m[i][j]).sub(&factor.mul(&m[rank][j]));
                m[i][j] = v.div_exact(&prev);
            }
            m[i][col] = GaussInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Lays sparse rows out densely over the union of their columns.
pub fn densify<K: Ord + Clone>(rows: &[SparseRow<K>]) -> Vec<Vec<Scalar>> {
    let cols: Vec<K> = {
        let mut all: Vec<K> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
        all.sort();
        all.dedup();
        all
    };
    rows.iter()
        .map(|r| {
            cols.iter()
                .map(|k| r.get(k).cloned().unwrap_or_else(Scalar::zero))
                .collect()
        })
        .collect()
}
