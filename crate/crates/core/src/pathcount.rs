//! Counting saturated descending paths `d(x, y)`.
//!
//! [`d_paths_dp`] walks the graph level by level and is the oracle for the
//! closed formula in [`d_paths_formula`].

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::harmonic::{f_row, g_all};
use crate::rational::{Rational, Scalar};
use crate::word::{common_suffix_len, enumerate_level, Word};

/// Number of descending paths from `top` to every vertex of rank
/// `min_rank..=rank(top)`, one frontier map per level (highest first).
pub fn down_path_counts(top: &Word, min_rank: usize) -> Vec<HashMap<Word, BigUint>> {
    let mut frontier: HashMap<Word, BigUint> = HashMap::from([(top.clone(), BigUint::one())]);
    let mut out = Vec::new();
    let mut rank = top.rank();
    loop {
        if rank == min_rank || rank == 0 {
            out.push(frontier);
            break;
        }
        let mut next: HashMap<Word, BigUint> = HashMap::new();
        for (w, c) in &frontier {
            for lower in w.down_neighbors() {
                *next.entry(lower).or_insert_with(BigUint::zero) += c;
            }
        }
        out.push(std::mem::replace(&mut frontier, next));
        rank -= 1;
    }
    out
}

/// `d(x, y)` by dynamic programming over levels.
pub fn d_paths_dp(x: &Word, y: &Word) -> BigUint {
    let (rx, ry) = (x.rank(), y.rank());
    if ry < rx {
        return BigUint::zero();
    }
    if ry == rx {
        return if x == y { BigUint::one() } else { BigUint::zero() };
    }
    down_path_counts(y, rx)
        .pop()
        .and_then(|mut last| last.remove(x))
        .unwrap_or_default()
}

/// `Σ_{i=0}^{rank x} f(x, i, h(x, y)) Π_j (g(y, j) - i)`.
pub fn d_paths_formula(x: &Word, y: &Word) -> Result<BigUint> {
    if y.rank() < x.rank() {
        return Err(Error::RankOrder {
            lower: x.to_string(),
            upper: y.to_string(),
        });
    }
    let h = common_suffix_len(x, y);
    let row = f_row::<Rational>(x, h)?;
    let gs = g_all(y);
    let mut total = Rational::zero();
    for (i, fv) in row.iter().enumerate() {
        if fv.is_zero() {
            continue;
        }
        let prod = gs
            .iter()
            .fold(BigInt::one(), |acc, &g| acc * (BigInt::from(g) - BigInt::from(i)));
        total += fv * Rational::from_integer(prod);
    }
    assert!(
        total.is_integer() && !total.is_negative(),
        "path-count formula produced {total} for ({x:?}, {y:?})"
    );
    Ok(total.to_integer().to_biguint().expect("non-negative"))
}

/// `d(ε, y) = Π_j g(y, j)`.
pub fn d_from_empty(y: &Word) -> BigUint {
    g_all(y).iter().map(|&g| BigUint::from(g)).product()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Plancherel weight `d(ε, v)² / n!`.
pub fn plancherel(n: usize, v: &Word) -> Result<Rational> {
    if v.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            actual: v.rank(),
        });
    }
    let d = d_from_empty(v);
    Ok(<Rational as Scalar>::from_biguint(&(&d * &d)) / <Rational as Scalar>::from_biguint(&factorial(n)))
}

/// `Σ_{v ∈ YF_n} d(ε, v)²`.
pub fn sum_squares(n: usize) -> BigUint {
    enumerate_level(n)
        .words
        .iter()
        .map(|v| {
            let d = d_from_empty(v);
            &d * &d
        })
        .sum()
}
