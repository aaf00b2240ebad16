//! Magic tables `T_{w,β,n}(v, y)`: a non-negative matrix over
//! `YF_n × {0..n}` whose row sums dominate `μ_{w,β}` and whose column sums
//! have a closed form.

use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::boundary::{d1_prime, TailOnesWord};
use crate::error::{Error, Result};
use crate::harmonic::q;
use crate::pathcount::d_from_empty;
use crate::rational::{check_beta, pow, ratio, Rational, Scalar};
use crate::word::{enumerate_level, render_word_arg, Word};

/// One cell in the symbolic presentation
/// `(d(ε,v) / q(head)⁻¹) · d'_1(tail, w) · β^y · (1-β²)^len(head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicCell {
    Zero,
    Term {
        paths: BigUint,
        q_inverse: BigUint,
        argument: Word,
        beta_exp: usize,
        damping_exp: usize,
    },
}

impl SymbolicCell {
    /// Coefficient as printed, not reduced: `"3/6"` stays `"3/6"`.
    pub fn coefficient_text(&self) -> String {
        match self {
            SymbolicCell::Zero => "0".into(),
            SymbolicCell::Term { paths, q_inverse, .. } => format!("{paths}/{q_inverse}"),
        }
    }

    pub fn render(&self) -> String {
        match self {
            SymbolicCell::Zero => "0".into(),
            SymbolicCell::Term {
                argument,
                beta_exp,
                damping_exp,
                ..
            } => format!(
                "({};{};{};{})",
                self.coefficient_text(),
                render_word_arg(argument),
                beta_exp,
                damping_exp
            ),
        }
    }
}

fn check_entry_args(beta: &Rational, n: usize, v: &Word, y: usize) -> Result<()> {
    check_beta(beta)?;
    if v.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            actual: v.rank(),
        });
    }
    if y > n {
        return Err(Error::OutOfRange {
            what: "y",
            value: y as i64,
            max: n as i64,
        });
    }
    Ok(())
}

pub fn symbolic_entry(v: &Word, y: usize) -> Result<SymbolicCell> {
    Ok(match v.split_by_rank(y)? {
        None => SymbolicCell::Zero,
        Some((head, tail)) => {
            let q_inverse = head
                .suffix_ranks()
                .iter()
                .skip(1)
                .map(|&r| BigUint::from(r))
                .product();
            SymbolicCell::Term {
                paths: d_from_empty(v),
                q_inverse,
                argument: tail,
                beta_exp: y,
                damping_exp: head.len(),
            }
        }
    })
}

/// `T_{w,β,n}(v, y)`.
pub fn magic_entry(w: &TailOnesWord, beta: &Rational, n: usize, v: &Word, y: usize) -> Result<Rational> {
    check_entry_args(beta, n, v, y)?;
    let damping = Rational::one() - beta * beta;
    Ok(entry_unchecked(w, beta, &damping, v, y))
}

fn entry_unchecked(w: &TailOnesWord, beta: &Rational, damping: &Rational, v: &Word, y: usize) -> Rational {
    match v.split_by_rank(y).expect("y <= rank") {
        None => Rational::zero(),
        Some((head, tail)) => {
            <Rational as Scalar>::from_biguint(&d_from_empty(v))
                * q(&head)
                * d1_prime(&tail, w)
                * pow(beta, y)
                * pow(damping, head.len())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MagicTable {
    pub w: TailOnesWord,
    pub beta: Rational,
    pub n: usize,
    /// Row labels in level order.
    pub words: Vec<Word>,
    /// `entries[row][y]`.
    pub entries: Vec<Vec<Rational>>,
}

pub fn build_table(w: &TailOnesWord, beta: &Rational, n: usize) -> Result<MagicTable> {
    check_beta(beta)?;
    let damping = Rational::one() - beta * beta;
    let words = enumerate_level(n).words;
    let entries = words
        .par_iter()
        .map(|v| {
            (0..=n)
                .map(|y| entry_unchecked(w, beta, &damping, v, y))
                .collect()
        })
        .collect();
    Ok(MagicTable {
        w: w.clone(),
        beta: beta.clone(),
        n,
        words,
        entries,
    })
}

/// `Π_{i=1}^{⌊(n-y)/2⌋} (2i + y) / 2i`.
pub fn column_mass_product(n: usize, y: usize) -> Rational {
    (1..=(n - y) / 2).fold(Rational::one(), |acc, i| acc * ratio((2 * i + y) as i64, (2 * i) as i64))
}

/// `Σ_{x' ∈ YF_{n-y}} q(x') · d(ε, x'·1^y)`, summed directly.
pub fn column_mass_direct(n: usize, y: usize) -> Rational {
    let ones = Word::ones(y);
    enumerate_level(n - y)
        .words
        .iter()
        .map(|x| q(x) * <Rational as Scalar>::from_biguint(&d_from_empty(&x.concat(&ones))))
        .sum()
}

/// `Σ_{x' ∈ YF_{n-y}} q(x') d(ε, x'1^y) β^y (1-β²)^len(x')`.
pub fn column_sum_closed_form(n: usize, y: usize, beta: &Rational) -> Rational {
    let ones = Word::ones(y);
    let damping = Rational::one() - beta * beta;
    let by = pow(beta, y);
    enumerate_level(n - y)
        .words
        .iter()
        .map(|x| {
            q(x) * <Rational as Scalar>::from_biguint(&d_from_empty(&x.concat(&ones)))
                * &by
                * pow(&damping, x.len())
        })
        .sum()
}

/// Column bound `Π (2i+y)/2i · β^y (1-β²)^⌊(n-y)/2⌋`.
pub fn column_bound(n: usize, y: usize, beta: &Rational) -> Rational {
    let damping = Rational::one() - beta * beta;
    column_mass_product(n, y) * pow(beta, y) * pow(&damping, (n - y) / 2)
}

/// `Σ_y` of [`column_bound`]; at most `1 + 1/β` for `β < 1`.
pub fn total_bound(n: usize, beta: &Rational) -> Rational {
    (0..=n).map(|y| column_bound(n, y, beta)).sum()
}

impl MagicTable {
    pub fn entry(&self, v: &Word, y: usize) -> Option<&Rational> {
        let row = self.words.iter().position(|u| u == v)?;
        self.entries[row].get(y)
    }

    pub fn row_sum(&self, row: usize) -> Rational {
        self.entries[row].iter().sum()
    }

    pub fn column_sum_raw(&self, y: usize) -> Rational {
        self.entries.iter().map(|r| &r[y]).sum()
    }

    /// Column sum; checked against its closed form.
    pub fn column_sum(&self, y: usize) -> Rational {
        let s = self.column_sum_raw(y);
        assert_eq!(
            s,
            column_sum_closed_form(self.n, y, &self.beta),
            "column {y} of T(w={}, β={}, n={})",
            self.w,
            self.beta,
            self.n
        );
        s
    }

    /// Sum of all entries; for `β < 1` checked against `1 + 1/β`.
    pub fn total(&self) -> Rational {
        let t: Rational = (0..=self.n).map(|y| self.column_sum(y)).sum();
        if self.beta < Rational::one() {
            let cap = Rational::one() + self.beta.recip();
            assert!(t <= cap, "table total {t} exceeds 1 + 1/β = {cap}");
        }
        t
    }

    pub fn symbolic(&self) -> Vec<Vec<SymbolicCell>> {
        self.words
            .iter()
            .map(|v| (0..=self.n).map(|y| symbolic_entry(v, y).expect("y <= n")).collect())
            .collect()
    }

    /// CSV with header `word,0,…,n`; cells are exact rationals, or symbolic
    /// `(coefficient;argument;β-exponent;(1-β²)-exponent)` tuples.
    pub fn write_csv<W: Write>(&self, out: W, symbolic: bool) -> std::io::Result<()> {
        let mut wr = csv::Writer::from_writer(out);
        let mut header = vec!["word".to_string()];
        header.extend((0..=self.n).map(|y| y.to_string()));
        wr.write_record(&header)?;
        let sym = symbolic.then(|| self.symbolic());
        for (r, v) in self.words.iter().enumerate() {
            let mut rec = vec![render_word_arg(v)];
            match &sym {
                Some(s) => rec.extend(s[r].iter().map(SymbolicCell::render)),
                None => rec.extend(self.entries[r].iter().map(|e| e.to_string())),
            }
            wr.write_record(&rec)?;
        }
        wr.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::mu;
    use crate::rational::int;
    use crate::word::parse_word_arg;

    fn w(s: &str) -> Word {
        parse_word_arg(s).unwrap()
    }

    #[test]
    fn table_style_cells() {
        let t = TailOnesWord::parse("2").unwrap();
        let beta = ratio(1, 2);
        let damp = Rational::one() - &beta * &beta;
        let v = w("122");
        assert_eq!(
            magic_entry(&t, &beta, 5, &v, 0).unwrap(),
            ratio(3, 40) * pow(&damp, 3)
        );
        assert_eq!(magic_entry(&t, &beta, 5, &v, 1).unwrap(), int(0));
        assert_eq!(
            magic_entry(&t, &beta, 5, &v, 2).unwrap(),
            ratio(3, 6) * d1_prime(&w("2"), &t) * pow(&beta, 2) * pow(&damp, 2)
        );
        assert!(magic_entry(&t, &beta, 4, &v, 0).is_err());
        assert!(magic_entry(&t, &beta, 5, &v, 6).is_err());
        assert_eq!(symbolic_entry(&v, 2).unwrap().coefficient_text(), "3/6");
    }

    #[test]
    fn table_shapes() {
        let t = TailOnesWord::all_ones();
        let tab = build_table(&t, &ratio(1, 2), 5).unwrap();
        assert_eq!(tab.entries.len(), 8);
        assert!(tab.entries.iter().all(|r| r.len() == 6));
        let tab0 = build_table(&t, &ratio(1, 2), 0).unwrap();
        assert_eq!(tab0.entries, vec![vec![int(1)]]);
    }

    #[test]
    fn row_dominates_mass() {
        let t = TailOnesWord::parse("212").unwrap();
        let beta = ratio(1, 2);
        let tab = build_table(&t, &beta, 7).unwrap();
        for (r, v) in tab.words.iter().enumerate() {
            assert!(tab.row_sum(r) >= mu(&t, &beta, v).unwrap());
        }
    }

    #[test]
    fn columns_and_total() {
        let t = TailOnesWord::parse("22").unwrap();
        let beta = ratio(1, 2);
        let n = 8;
        let tab = build_table(&t, &beta, n).unwrap();
        assert_eq!(tab.column_sum(n), pow(&beta, n));
        for y in 0..=n {
            assert_eq!(column_mass_direct(n, y), column_mass_product(n, y));
            assert!(tab.column_sum(y) <= column_bound(n, y, &beta));
        }
        let total = tab.total();
        assert!(total <= int(3));
        assert!(total >= tab.column_sum(0));
    }

    #[test]
    fn csv_output() {
        let tab = build_table(&TailOnesWord::all_ones(), &ratio(1, 2), 2).unwrap();
        let mut buf = Vec::new();
        tab.write_csv(&mut buf, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("word,0,1,2\n11,"));
        let mut buf = Vec::new();
        tab.write_csv(&mut buf, true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("(1/2;eps;0;2)"), "{text}");
    }
}
