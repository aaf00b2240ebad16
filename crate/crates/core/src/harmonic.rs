//! The scalar functions on words: the three-argument kernel `f(x, y, z)`,
//! the 2-position weights `g`, `q`, the β-polynomial `d_β`, and `π`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational, Scalar};
use crate::word::Word;

/// `q(x) = 1 / Π_{i=1..len} rank(suffix(x, i))`.
pub fn q(x: &Word) -> Rational {
    let ranks = x.suffix_ranks();
    <Rational as Scalar>::inv_product(&ranks[1..])
}

/// `f(x, y, 0)`: the closed-form base case.
///
/// With `x = prefix · suffix` and `rank(suffix) = y`, the suffix contributes
/// the negated running sums read rightward from the split and the prefix the
/// running sums read leftward from the split. Zero when no such split exists.
pub fn f_base(x: &Word, y: usize) -> Rational {
    let Some(a) = x.suffix_len_with_rank(y) else {
        return Rational::zero();
    };
    let digits = x.digits();
    let cut = digits.len() - a;
    let mut den = BigInt::one();
    let mut acc = 0i64;
    for &d in &digits[cut..] {
        acc += d as i64;
        den *= -acc;
    }
    acc = 0;
    for &d in digits[..cut].iter().rev() {
        acc += d as i64;
        den *= acc;
    }
    Rational::new(BigInt::one(), den)
}

fn check_f_args(x: &Word, y: usize, z: usize) -> Result<()> {
    if y > x.rank() {
        return Err(Error::OutOfRange {
            what: "y",
            value: y as i64,
            max: x.rank() as i64,
        });
    }
    if z > x.len() {
        return Err(Error::OutOfRange {
            what: "z",
            value: z as i64,
            max: x.len() as i64,
        });
    }
    Ok(())
}

/// Memo table for `f`, keyed on the exact triple `(x, y, z)`.
///
/// Owned by one caller; share results, not the table.
#[derive(Default, Debug)]
pub struct FMemo {
    cache: HashMap<(Word, usize, usize), Rational>,
}

impl FMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }

    pub fn f(&mut self, x: &Word, y: usize, z: usize) -> Result<Rational> {
        check_f_args(x, y, z)?;
        Ok(self.eval(x, y, z))
    }

    fn eval(&mut self, x: &Word, y: usize, z: usize) -> Rational {
        if z == 0 {
            return f_base(x, y);
        }
        let key = (x.clone(), y, z);
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        // z > 0 implies x is non-empty
        let value = match x.last() {
            Some(1) if y == 0 => f_base(x, 0),
            Some(1) => f_base(x, y) + self.eval(&x.drop_last(), y - 1, z - 1),
            Some(2) if y == 1 => Rational::zero(),
            Some(2) => {
                let widened = x.drop_last().append(1).append(1);
                self.eval(&widened, y, z + 1) / int(1 - y as i64)
            }
            _ => unreachable!("z <= len(x) and z > 0"),
        };
        self.cache.insert(key, value.clone());
        value
    }
}

/// `f(x, y, z)` with a fresh memo.
pub fn f(x: &Word, y: usize, z: usize) -> Result<Rational> {
    FMemo::new().f(x, y, z)
}

/// `f(u·a, ·, 0)` from `f(u, ·, 0)`: entry `y ≥ a` is `-f(u, y-a, 0) / y`,
/// entry `0` is `q(u·a)`, and entry `1` vanishes when `a = 2`.
fn extend_base_row<S: Scalar>(row: &[S], a: u8, q_ext: S) -> Vec<S> {
    let a = a as usize;
    let mut out = Vec::with_capacity(row.len() + a);
    out.push(q_ext);
    if a == 2 {
        out.push(S::zero());
    }
    for (k, v) in row.iter().enumerate() {
        let y = k + a;
        if v.is_zero() {
            out.push(S::zero());
        } else {
            out.push(-(v.clone() / S::from_i64(y as i64)));
        }
    }
    out
}

/// `q(u · tail)` given the suffix ranks of `u` (starting with 0).
fn q_with_tail<S: Scalar>(u_ranks: &[usize], tail: &[u8], scratch: &mut Vec<usize>) -> S {
    scratch.clear();
    let mut acc = 0;
    for &d in tail.iter().rev() {
        acc += d as usize;
        scratch.push(acc);
    }
    scratch.extend(u_ranks[1..].iter().map(|r| r + acc));
    S::inv_product(scratch)
}

/// The full row `[f(x, 0, z), …, f(x, rank(x), z)]`.
///
/// Evaluates the same recursion as [`FMemo::f`] but walks the prefix chain
/// once, reusing each prefix's base row, so a whole row costs
/// `O(len · rank)` field operations.
pub fn f_row<S: Scalar>(x: &Word, z: usize) -> Result<Vec<S>> {
    check_f_args(x, 0, z)?;
    let digits = x.digits();
    let len = digits.len();
    let start = len - z;
    let mut scratch = Vec::with_capacity(len + 2);

    // suffix ranks of the current prefix, with the leading 0
    let mut ranks: Vec<usize> = vec![0];
    let mut base: Vec<S> = vec![S::one()];
    for &a in &digits[..start] {
        let q_ext = q_with_tail::<S>(&ranks, &[a], &mut scratch);
        base = extend_base_row(&base, a, q_ext);
        ranks = push_digit_ranks(&ranks, a);
    }

    let mut row = base.clone();
    for &a in &digits[start..] {
        let u_base = base;
        let u_ranks = ranks;
        let b1 = extend_base_row(&u_base, 1, q_with_tail::<S>(&u_ranks, &[1], &mut scratch));
        let next = if a == 1 {
            shifted_sum(&b1, &row)
        } else {
            let t1 = shifted_sum(&b1, &row);
            let b11 = extend_base_row(&b1, 1, q_with_tail::<S>(&u_ranks, &[1, 1], &mut scratch));
            let t2 = shifted_sum(&b11, &t1);
            t2.into_iter()
                .enumerate()
                .map(|(y, v)| match y {
                    1 => S::zero(),
                    _ if v.is_zero() => S::zero(),
                    _ => v / S::from_i64(1 - y as i64),
                })
                .collect()
        };
        base = if a == 1 {
            b1
        } else {
            extend_base_row(&u_base, 2, q_with_tail::<S>(&u_ranks, &[2], &mut scratch))
        };
        ranks = push_digit_ranks(&u_ranks, a);
        row = next;
    }
    Ok(row)
}

/// `out[0] = base[0]`, `out[y] = base[y] + prev[y-1]`.
fn shifted_sum<S: Scalar>(base: &[S], prev: &[S]) -> Vec<S> {
    debug_assert_eq!(base.len(), prev.len() + 1);
    let mut out = Vec::with_capacity(base.len());
    out.push(base[0].clone());
    for y in 1..base.len() {
        let p = &prev[y - 1];
        out.push(if p.is_zero() {
            base[y].clone()
        } else if base[y].is_zero() {
            p.clone()
        } else {
            base[y].clone() + p.clone()
        });
    }
    out
}

fn push_digit_ranks(ranks: &[usize], a: u8) -> Vec<usize> {
    let mut out = Vec::with_capacity(ranks.len() + 1);
    out.push(0);
    out.push(a as usize);
    out.extend(ranks[1..].iter().map(|r| r + a as usize));
    out
}

/// All `g(x, j)`, `j = 1..=twos(x)`: rank of the suffix ending at the `j`-th
/// 2 from the right, minus one.
pub fn g_all(x: &Word) -> Vec<u64> {
    let mut out = Vec::with_capacity(x.count_twos());
    let mut acc = 0u64;
    for &d in x.digits().iter().rev() {
        acc += d as u64;
        if d == 2 {
            out.push(acc - 1);
        }
    }
    debug_assert_eq!(out, g_all_from_runs(x));
    out
}

/// `g(x, j) = β_0 + … + β_{j-1} + 2j - 1` with `β_i` the 1-run lengths
/// between consecutive 2s, counted from the right.
pub fn g_all_from_runs(x: &Word) -> Vec<u64> {
    let mut runs = Vec::new();
    let mut run = 0u64;
    for &d in x.digits().iter().rev() {
        if d == 1 {
            run += 1;
        } else {
            runs.push(run);
            run = 0;
        }
    }
    let mut out = Vec::with_capacity(runs.len());
    let mut total = 0u64;
    for (m, b) in runs.iter().enumerate() {
        total += b;
        out.push(total + 2 * (m as u64 + 1) - 1);
    }
    out
}

/// `g(x, j)` for `1 ≤ j ≤ twos(x)`.
pub fn g(x: &Word, j: usize) -> Result<u64> {
    let all = g_all(x);
    if j == 0 || j > all.len() {
        return Err(Error::OutOfRange {
            what: "j",
            value: j as i64,
            max: all.len() as i64,
        });
    }
    Ok(all[j - 1])
}

fn pi_from_g(gs: &[u64], k: u64) -> Rational {
    gs.iter()
        .filter(|&&g| g > k)
        .fold(Rational::one(), |acc, &g| {
            acc * ratio((g - k) as i64, g as i64)
        })
}

/// `π(x) = Π_{g(x,i) > 1} (g - 1) / g`.
pub fn pi(x: &Word) -> Rational {
    pi_from_g(&g_all(x), 1)
}

/// `π_k(x) = Π_{g(x,i) > k} (g - k) / g`, `k ≥ 2`.
pub fn pi_k(x: &Word, k: u64) -> Result<Rational> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("pi_k needs k >= 2, got {k}")));
    }
    Ok(pi_from_g(&g_all(x), k))
}

/// `(π(v(y) · 1^y), π(v'(y)))` when `v` has a suffix of rank `y`.
pub fn pi_split(v: &Word, y: usize) -> Result<Option<(Rational, Rational)>> {
    Ok(v.split_by_rank(y)?
        .map(|(head, tail)| (pi(&head.concat(&Word::ones(y))), pi(&tail))))
}

/// Polynomial in β with exact coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaPolynomial {
    coeffs: Vec<Rational>,
}

impl BetaPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BetaPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, beta: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * beta + c)
    }

    /// Exact quotient by `(1 - β)`, or `None` when the remainder is nonzero.
    pub fn div_one_minus_beta(&self) -> Option<BetaPolynomial> {
        if self.is_zero() {
            return Some(self.clone());
        }
        // p(β) = (1 - β) s(β)  ⇔  p(β) = -(β - 1) s(β); synthetic division by (β - 1)
        let n = self.coeffs.len();
        let mut s = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + carry;
            s[i - 1] = carry.clone();
        }
        let remainder = &self.coeffs[0] + carry;
        if !remainder.is_zero() {
            return None;
        }
        Some(BetaPolynomial::new(s.into_iter().map(|c| -c).collect()))
    }

    /// Largest `k` with `(1 - β)^k` dividing `self`, and the quotient.
    pub fn one_minus_beta_multiplicity(&self) -> (usize, BetaPolynomial) {
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.div_one_minus_beta() {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => break,
            }
        }
        (k, cur)
    }

    /// Coefficients as `c0,c1,…`.
    pub fn to_csv_field(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `d_β(x) = Σ_i β^i f(x, i, 0)`.
pub fn d_beta(x: &Word) -> BetaPolynomial {
    BetaPolynomial::new((0..=x.rank()).map(|i| f_base(x, i)).collect())
}

pub fn d_beta_eval(x: &Word, beta: &Rational) -> Result<Rational> {
    crate::rational::check_beta(beta)?;
    Ok(d_beta(x).eval(beta))
}
