//! Words over `{1,2}` and the Young-Fibonacci graph structure.
//!
//! A word is stored left to right exactly as printed; "suffix" always refers
//! to the rightmost digits. The rank of a word is its digit sum, the length
//! its digit count.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A vertex of the Young-Fibonacci lattice: a finite word over `{1,2}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    digits: Vec<u8>,
}

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word { digits: Vec::new() }
    }

    /// Builds a word from raw digits, rejecting anything outside `{1,2}`.
    pub fn from_digits(digits: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d != 1 && d != 2) {
            return Err(Error::InvalidDigit(char::from(b'0'.wrapping_add(bad))));
        }
        Ok(Word { digits })
    }

    /// `1^k`.
    pub fn ones(k: usize) -> Self {
        Word { digits: vec![1; k] }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit sum.
    pub fn rank(&self) -> usize {
        self.digits.iter().map(|&d| d as usize).sum()
    }

    /// Number of digits.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn count_ones(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 1).count()
    }

    pub fn count_twos(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 2).count()
    }

    pub fn last(&self) -> Option<u8> {
        self.digits.last().copied()
    }

    /// The last `a` digits.
    pub fn suffix(&self, a: usize) -> Result<Word> {
        self.check_count(a)?;
        Ok(Word {
            digits: self.digits[self.len() - a..].to_vec(),
        })
    }

    /// The first `len - a` digits, i.e. what remains after removing the
    /// suffix of length `a`.
    pub fn prefix(&self, a: usize) -> Result<Word> {
        self.check_count(a)?;
        Ok(Word {
            digits: self.digits[..self.len() - a].to_vec(),
        })
    }

    fn check_count(&self, a: usize) -> Result<()> {
        if a > self.len() {
            return Err(Error::OutOfRange {
                what: "suffix length",
                value: a as i64,
                max: self.len() as i64,
            });
        }
        Ok(())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = Vec::with_capacity(self.len() + other.len());
        digits.extend_from_slice(&self.digits);
        digits.extend_from_slice(&other.digits);
        Word { digits }
    }

    /// `alpha · self`.
    pub fn prepend(&self, alpha: u8) -> Word {
        debug_assert!(alpha == 1 || alpha == 2);
        let mut digits = Vec::with_capacity(self.len() + 1);
        digits.push(alpha);
        digits.extend_from_slice(&self.digits);
        Word { digits }
    }

    /// `self · alpha`.
    pub fn append(&self, alpha: u8) -> Word {
        debug_assert!(alpha == 1 || alpha == 2);
        let mut digits = self.digits.clone();
        digits.push(alpha);
        Word { digits }
    }

    /// `self` without its last digit.
    pub fn drop_last(&self) -> Word {
        let mut digits = self.digits.clone();
        digits.pop();
        Word { digits }
    }

    /// Number of digits `a` such that the suffix of length `a` has rank `y`,
    /// if any.
    pub fn suffix_len_with_rank(&self, y: usize) -> Option<usize> {
        let mut acc = 0usize;
        let mut a = 0usize;
        for &d in self.digits.iter().rev() {
            if acc >= y {
                break;
            }
            acc += d as usize;
            a += 1;
        }
        (acc == y).then_some(a)
    }

    /// Splits `self = head · tail` with `rank(tail) = y`. `None` when a `2`
    /// straddles rank `y`.
    pub fn split_by_rank(&self, y: usize) -> Result<Option<(Word, Word)>> {
        if y > self.rank() {
            return Err(Error::OutOfRange {
                what: "rank",
                value: y as i64,
                max: self.rank() as i64,
            });
        }
        Ok(self.suffix_len_with_rank(y).map(|a| {
            let cut = self.len() - a;
            (
                Word {
                    digits: self.digits[..cut].to_vec(),
                },
                Word {
                    digits: self.digits[cut..].to_vec(),
                },
            )
        }))
    }

    /// Ranks of all suffixes, from the empty suffix up to the whole word.
    pub fn suffix_ranks(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &d in self.digits.iter().rev() {
            acc += d as usize;
            out.push(acc);
        }
        out
    }

    /// Words covering `self` one rank up.
    pub fn up_neighbors(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let leftmost_one = self.digits.iter().position(|&d| d == 1);
        if let Some(p) = leftmost_one {
            let mut digits = self.digits.clone();
            digits[p] = 2;
            out.push(Word { digits });
        }
        // insertion positions 0..=p; without a 1 every position is allowed
        let last_pos = leftmost_one.unwrap_or(self.len());
        for pos in 0..=last_pos {
            let mut digits = Vec::with_capacity(self.len() + 1);
            digits.extend_from_slice(&self.digits[..pos]);
            digits.push(1);
            digits.extend_from_slice(&self.digits[pos..]);
            let w = Word { digits };
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out.sort();
        out
    }

    /// Words covered by `self` one rank down.
    pub fn down_neighbors(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let lead = self.digits.iter().take_while(|&&d| d == 2).count();
        for i in 0..lead {
            let mut digits = self.digits.clone();
            digits[i] = 1;
            out.push(Word { digits });
        }
        if lead < self.len() {
            // the first non-2 digit is the leftmost 1
            let mut digits = self.digits.clone();
            digits.remove(lead);
            out.push(Word { digits });
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Length of the longest common suffix.
pub fn common_suffix_len(x: &Word, y: &Word) -> usize {
    x.digits
        .iter()
        .rev()
        .zip(y.digits.iter().rev())
        .take_while(|(a, b)| a == b)
        .count()
}

/// Digit sum of the longest common suffix.
pub fn common_suffix_rank(x: &Word, y: &Word) -> usize {
    x.digits
        .iter()
        .rev()
        .zip(y.digits.iter().rev())
        .take_while(|(a, b)| a == b)
        .map(|(&a, _)| a as usize)
        .sum()
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::InvalidDigit(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word { digits })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Parses a word, accepting the literal `eps` for the empty word.
pub fn parse_word_arg(s: &str) -> Result<Word> {
    if s == "eps" {
        Ok(Word::empty())
    } else {
        s.parse()
    }
}

/// Renders a word for command-line output; the empty word is `eps`.
pub fn render_word_arg(w: &Word) -> String {
    if w.is_empty() {
        "eps".to_string()
    } else {
        w.to_string()
    }
}

/// All words of a fixed rank in level order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub n: usize,
    pub words: Vec<Word>,
}

/// Enumerates rank `n` as `1·YF_{n-1}` followed by `2·YF_{n-2}`.
pub fn enumerate_level(n: usize) -> Level {
    let mut levels: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    for k in 1..=n {
        let mut cur: Vec<Word> = levels[k - 1].iter().map(|w| w.prepend(1)).collect();
        if k >= 2 {
            cur.extend(levels[k - 2].iter().map(|w| w.prepend(2)));
        }
        levels.push(cur);
    }
    Level {
        n,
        words: levels.swap_remove(n),
    }
}

/// `Fib(n+1)` with `Fib(1) = Fib(2) = 1`; the size of rank `n`.
pub fn level_size(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 0..n {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word_arg(s).unwrap()
    }

    #[test]
    fn parse_and_counts() {
        let x = w("21221");
        assert_eq!(x.digits(), &[2, 1, 2, 2, 1]);
        assert_eq!((x.rank(), x.len(), x.count_ones(), x.count_twos()), (8, 5, 2, 3));
        assert!(w("").is_empty());
        assert_eq!(w("").rank(), 0);
        assert!(matches!("13".parse::<Word>(), Err(Error::InvalidDigit('3'))));
        assert!(Word::from_digits(vec![1, 3]).is_err());
    }

    #[test]
    fn suffix_prefix() {
        let x = w("21221");
        assert_eq!(x.suffix(2).unwrap(), w("21"));
        assert_eq!(x.prefix(2).unwrap(), w("212"));
        assert_eq!(x.suffix(0).unwrap(), Word::empty());
        assert_eq!(x.prefix(5).unwrap(), Word::empty());
        assert!(x.suffix(6).is_err());
        assert!(x.prefix(6).is_err());
        for a in 0..=x.len() {
            assert_eq!(x.prefix(a).unwrap().concat(&x.suffix(a).unwrap()), x);
            assert_eq!(x.prepend(1).prefix(a).unwrap(), x.prefix(a).unwrap().prepend(1));
        }
    }

    #[test]
    fn split_by_rank_cases() {
        let x = w("21221");
        assert_eq!(x.split_by_rank(3).unwrap(), Some((w("212"), w("21"))));
        assert_eq!(x.split_by_rank(2).unwrap(), None);
        assert_eq!(x.split_by_rank(0).unwrap(), Some((x.clone(), Word::empty())));
        assert_eq!(x.split_by_rank(8).unwrap(), Some((Word::empty(), x.clone())));
        assert!(x.split_by_rank(9).is_err());
        assert_eq!(x.suffix_ranks(), vec![0, 1, 3, 5, 6, 8]);
    }

    #[test]
    fn common_suffix() {
        assert_eq!(common_suffix_len(&w("21221"), &w("1221")), 4);
        assert_eq!(common_suffix_rank(&w("21221"), &w("1221")), 6);
        assert_eq!(common_suffix_len(&w("2"), &w("1")), 0);
        assert_eq!(common_suffix_rank(&w("2"), &w("1")), 0);
        let x = w("1212");
        assert_eq!(common_suffix_len(&x, &x), 4);
    }

    #[test]
    fn neighbors() {
        assert_eq!(w("2").up_neighbors(), vec![w("12"), w("21")]);
        assert_eq!(w("11").up_neighbors(), vec![w("111"), w("21")]);
        assert_eq!(Word::empty().up_neighbors(), vec![w("1")]);
        assert_eq!(w("21221").down_neighbors(), vec![w("11221"), w("2221")]);
        assert_eq!(w("221").down_neighbors(), vec![w("121"), w("211"), w("22")]);
        assert!(Word::empty().down_neighbors().is_empty());
    }

    #[test]
    fn levels() {
        assert_eq!(enumerate_level(0).words, vec![Word::empty()]);
        assert_eq!(enumerate_level(2).words, vec![w("11"), w("2")]);
        let l5 = enumerate_level(5);
        assert_eq!(l5.words.len(), 8);
        for s in ["122", "212", "1112", "221", "1121", "1211", "2111", "11111"] {
            assert!(l5.words.contains(&w(s)));
        }
        for n in 0..=25 {
            assert_eq!(enumerate_level(n).words.len() as u128, level_size(n));
        }
    }

    #[test]
    fn eps_round_trip() {
        assert_eq!(render_word_arg(&Word::empty()), "eps");
        assert_eq!(parse_word_arg("eps").unwrap(), Word::empty());
        assert_eq!(render_word_arg(&w("212")), "212");
    }
}
