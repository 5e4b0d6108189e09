//! Exact row spaces over the rationals using fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Incrementally built row space. Rows are stored as primitive integer
/// vectors in echelon order: every stored row vanishes on the pivots of the
/// rows stored before it.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `v` to the spanning set; returns true if the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim, "row length mismatch");
        let reduced = self.reduce_integral(integral(v));
        match reduced.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, reduced));
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce_integral(integral(v)).iter().all(Zero::is_zero)
    }

    fn reduce_integral(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let scale_v = row[*pivot].clone();
            let scale_row = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &scale_v - &scale_row * r;
            }
            make_primitive(&mut v);
        }
        v
    }

    /// The stored basis, as rational vectors.
    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|(_, row)| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect()
    }
}

/// Clears denominators and divides out the content.
fn integral(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Rank of a list of rational vectors of equal length.
pub fn rank_of(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut space = RowSpace::new(first.len());
    for r in rows {
        space.insert(r);
    }
    space.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn ranks_of_small_matrices() {
        assert_eq!(rank_of(&[]), 0);
        assert_eq!(rank_of(&[v(&[0, 0, 0])]), 0);
        assert_eq!(rank_of(&[v(&[1, 2, 3]), v(&[2, 4, 6])]), 1);
        assert_eq!(rank_of(&[v(&[1, 2, 3]), v(&[0, 1, 1]), v(&[1, 3, 4])]), 2);
        assert_eq!(rank_of(&[v(&[1, 0, 0]), v(&[1, 1, 0]), v(&[1, 1, 1])]), 3);
    }

    #[test]
    fn fractional_rows_and_membership() {
        let mut space = RowSpace::new(2);
        assert!(space.insert(&[frac(1, 2), frac(1, 3)]));
        assert!(space.contains(&[int(3), int(2)]));
        assert!(!space.contains(&[int(3), int(1)]));
        assert!(!space.insert(&[frac(-3, 7), frac(-2, 7)]));
        assert!(space.insert(&[int(0), int(5)]));
        assert_eq!(space.rank(), 2);
    }
}
