//! Infinite words of the form `1^∞ · core`, the kernels `d'_β`, and the
//! central measures `μ_{w,β}`.

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::error::Result;
use crate::harmonic::{f_row, g_all, pi};
use crate::pathcount::{d_from_empty, d_paths_dp};
use crate::rational::{check_beta, Rational, Scalar};
use crate::word::{common_suffix_len, common_suffix_rank, enumerate_level, Word};

/// `w = 1^∞ · core`, with leading 1s of the core absorbed into the tail.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TailOnesWord {
    core: Word,
}

impl TailOnesWord {
    pub fn new(core: Word) -> Self {
        let lead = core.digits().iter().take_while(|&&d| d == 1).count();
        let core = if lead == 0 {
            core
        } else {
            Word::from_digits(core.digits()[lead..].to_vec()).expect("digits already valid")
        };
        TailOnesWord { core }
    }

    /// `1^∞`.
    pub fn all_ones() -> Self {
        TailOnesWord { core: Word::empty() }
    }

    /// Parses a core string; `eps` is the empty core.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(crate::word::parse_word_arg(s)?))
    }

    pub fn core(&self) -> &Word {
        &self.core
    }

    pub fn count_twos(&self) -> usize {
        self.core.count_twos()
    }

    /// `g(w, j)` for every 2 of `w`; all of them sit in the core.
    pub fn g_all(&self) -> Vec<u64> {
        g_all(&self.core)
    }

    pub fn pi(&self) -> Rational {
        pi(&self.core)
    }

    /// `w_m`: the last `m` digits.
    pub fn suffix(&self, m: usize) -> Word {
        let len = self.core.len();
        if m <= len {
            self.core.suffix(m).expect("m <= len")
        } else {
            Word::ones(m - len).concat(&self.core)
        }
    }
}

impl fmt::Display for TailOnesWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1^inf.{}", crate::word::render_word_arg(&self.core))
    }
}

impl fmt::Debug for TailOnesWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn suffix_of_infinite(w: &TailOnesWord, m: usize) -> Word {
    w.suffix(m)
}

/// `(h, h')`: length and rank of the longest common suffix of `x` and `w`.
pub fn h_infinite(x: &Word, w: &TailOnesWord) -> (usize, usize) {
    let wm = w.suffix(x.len());
    (common_suffix_len(x, &wm), common_suffix_rank(x, &wm))
}

/// The factors `Π_j (g(w, j) - i) / g(w, j)` for `i = 0..=max_i`, scaled by
/// `β^i`. Shared by every word of a level.
#[derive(Clone, Debug)]
pub struct KernelWeights<S> {
    weights: Vec<S>,
}

impl<S: Scalar> KernelWeights<S> {
    pub fn new(w: &TailOnesWord, beta: &S, max_i: usize) -> Self {
        let gs = w.g_all();
        let mut weights = Vec::with_capacity(max_i + 1);
        let mut beta_pow = S::one();
        for i in 0..=max_i {
            let mut p = beta_pow.clone();
            for &g in &gs {
                if g as usize == i {
                    p = S::zero();
                    break;
                }
                p = p * S::from_i64(g as i64 - i as i64) / S::from_i64(g as i64);
            }
            weights.push(p);
            beta_pow = beta_pow * beta.clone();
        }
        KernelWeights { weights }
    }

    /// `d'_β(x, w)`.
    pub fn d_prime(&self, x: &Word, w: &TailOnesWord) -> S {
        assert!(x.rank() < self.weights.len(), "weights too short for {x:?}");
        let (h, _) = h_infinite(x, w);
        let row = f_row::<S>(x, h).expect("h <= len(x)");
        row.into_iter()
            .zip(&self.weights)
            .filter(|(v, _)| !v.is_zero())
            .fold(S::zero(), |acc, (v, p)| {
                if p.is_zero() {
                    acc
                } else {
                    acc + v * p.clone()
                }
            })
    }
}

/// `d'_1(x, w)`.
pub fn d1_prime(x: &Word, w: &TailOnesWord) -> Rational {
    KernelWeights::new(w, &Rational::one(), x.rank()).d_prime(x, w)
}

/// `d'_β(x, w) = Σ_i β^i f(x, i, h(x, w)) Π_j (g(w, j) - i) / g(w, j)`.
pub fn d_beta_prime(x: &Word, w: &TailOnesWord, beta: &Rational) -> Result<Rational> {
    check_beta(beta)?;
    Ok(KernelWeights::new(w, beta, x.rank()).d_prime(x, w))
}

/// `μ_{w,β}(v) = d(ε, v) · d'_β(v, w)`.
pub fn mu(w: &TailOnesWord, beta: &Rational, v: &Word) -> Result<Rational> {
    let dp = d_beta_prime(v, w, beta)?;
    Ok(<Rational as Scalar>::from_biguint(&d_from_empty(v)) * dp)
}

/// `d(ε, v) · d(v, w'_m) / d(ε, w'_m)` for a finite word `w'_m`.
pub fn mu_prelimit(wm: &Word, v: &Word) -> Rational {
    let num = d_from_empty(v) * d_paths_dp(v, wm);
    <Rational as Scalar>::from_biguint(&num) / <Rational as Scalar>::from_biguint(&d_from_empty(wm))
}

/// The measure `μ_{w,β}` restricted to one level.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelDistribution<S = Rational> {
    pub n: usize,
    pub w: TailOnesWord,
    pub beta: Rational,
    /// Masses in level order.
    pub masses: Vec<(Word, S)>,
}

impl<S: Scalar> LevelDistribution<S> {
    pub fn get(&self, v: &Word) -> Option<&S> {
        self.masses.iter().find(|(u, _)| u == v).map(|(_, m)| m)
    }

    pub fn total(&self) -> S {
        self.masses
            .iter()
            .fold(S::zero(), |acc, (_, m)| acc + m.clone())
    }
}

fn compute_masses<S: Scalar>(w: &TailOnesWord, beta: &S, words: Vec<Word>, n: usize) -> Vec<(Word, S)> {
    let weights = KernelWeights::new(w, beta, n);
    words
        .into_par_iter()
        .map(|v| {
            let d = S::from_biguint(&d_from_empty(&v));
            let m = d * weights.d_prime(&v, w);
            (v, m)
        })
        .collect()
}

/// Exact masses over `YF_n`; the total is checked to be exactly 1.
pub fn level_distribution(w: &TailOnesWord, beta: &Rational, n: usize) -> Result<LevelDistribution> {
    check_beta(beta)?;
    let masses = compute_masses(w, beta, enumerate_level(n).words, n);
    let dist = LevelDistribution {
        n,
        w: w.clone(),
        beta: beta.clone(),
        masses,
    };
    assert!(
        dist.total().is_one(),
        "masses of μ over level {n} sum to {} (w={w}, β={beta})",
        dist.total()
    );
    Ok(dist)
}

/// Floating-point masses over `YF_n`. Not authoritative.
pub fn level_distribution_f64(w: &TailOnesWord, beta: &Rational, n: usize) -> Result<LevelDistribution<f64>> {
    check_beta(beta)?;
    let b = <f64 as Scalar>::from_rational(beta);
    let masses = compute_masses(w, &b, enumerate_level(n).words, n);
    Ok(LevelDistribution {
        n,
        w: w.clone(),
        beta: beta.clone(),
        masses,
    })
}
