use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use yf_lattice::boundary::{d1_prime, d_beta_prime, mu, TailOnesWord};
use yf_lattice::harmonic::{d_beta, f_base, f_row, g_all, g_all_from_runs, q, FMemo};
use yf_lattice::magic::build_table;
use yf_lattice::pathcount::{d_from_empty, d_paths_dp, d_paths_formula};
use yf_lattice::rational::{parse_rational, pow, Rational};
use yf_lattice::word::{enumerate_level, parse_word_arg, render_word_arg, Word};

fn word_up_to(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u8..=2, 0..=max_len).prop_map(|d| Word::from_digits(d).unwrap())
}

fn beta() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=12).prop_map(|(a, b)| {
        let (p, q) = if a <= b { (a, b) } else { (b, a) };
        Rational::new(p.into(), q.into())
    })
}

fn core() -> impl Strategy<Value = TailOnesWord> {
    word_up_to(4).prop_map(TailOnesWord::new)
}

/// Descends from `y` along a pseudo-random path to rank `rank(y) - steps`.
fn descend(y: &Word, choices: &[usize]) -> Word {
    let mut cur = y.clone();
    for &c in choices {
        let down = cur.down_neighbors();
        if down.is_empty() {
            break;
        }
        cur = down[c % down.len()].clone();
    }
    cur
}

proptest! {
    #[test]
    fn rank_and_length_relations(x in word_up_to(20)) {
        prop_assert_eq!(x.rank(), x.count_ones() + 2 * x.count_twos());
        prop_assert_eq!(x.len(), x.count_ones() + x.count_twos());
        prop_assert_eq!(x.rank(), x.len() + x.count_twos());
    }

    #[test]
    fn parse_render_round_trip(x in word_up_to(20)) {
        prop_assert_eq!(parse_word_arg(&render_word_arg(&x)).unwrap(), x.clone());
        prop_assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
    }

    #[test]
    fn prefix_and_suffix_rebuild(x in word_up_to(15), a in 0usize..16) {
        let a = a.min(x.len());
        let rebuilt = x.prefix(a).unwrap().concat(&x.suffix(a).unwrap());
        prop_assert_eq!(rebuilt, x.clone());
        prop_assert_eq!(x.prepend(1).prefix(a).unwrap(), x.prefix(a).unwrap().prepend(1));
    }

    #[test]
    fn neighbors_are_inverse(x in word_up_to(12)) {
        for y in x.up_neighbors() {
            prop_assert_eq!(y.rank(), x.rank() + 1);
            prop_assert!(y.down_neighbors().contains(&x));
        }
        for y in x.down_neighbors() {
            prop_assert!(y.up_neighbors().contains(&x));
        }
    }

    #[test]
    fn row_evaluation_matches_recursion(x in word_up_to(7), z in 0usize..8) {
        let z = z.min(x.len());
        let row = f_row::<Rational>(&x, z).unwrap();
        let mut memo = FMemo::new();
        for (y, v) in row.iter().enumerate() {
            prop_assert_eq!(v, &memo.f(&x, y, z).unwrap());
        }
    }

    #[test]
    fn base_row_sums_to_zero(x in word_up_to(12)) {
        let total: Rational = (0..=x.rank()).map(|i| f_base(&x, i)).sum();
        prop_assert_eq!(total.is_zero(), !x.is_empty());
        prop_assert_eq!(f_base(&x, 0), q(&x));
    }

    #[test]
    fn g_methods_agree(x in word_up_to(20)) {
        prop_assert_eq!(g_all(&x), g_all_from_runs(&x));
        let d: BigUint = g_all(&x).iter().map(|&g| BigUint::from(g)).product();
        prop_assert_eq!(d, d_paths_dp(&Word::empty(), &x));
    }

    #[test]
    fn formula_matches_dp_below(y in word_up_to(7), path in prop::collection::vec(0usize..4, 0..10)) {
        let steps = path.len().min(y.rank());
        let x = descend(&y, &path[..steps]);
        prop_assert_eq!(d_paths_formula(&x, &y).unwrap(), d_paths_dp(&x, &y));
    }

    #[test]
    fn d_beta_has_exact_root_multiplicity(x in word_up_to(8)) {
        let (k, quotient) = d_beta(&x).one_minus_beta_multiplicity();
        prop_assert_eq!(k, x.len());
        prop_assert!(!quotient.eval(&Rational::one()).is_zero());
    }

    #[test]
    fn d_beta_bounded(x in word_up_to(8), b in beta()) {
        prop_assume!(b < Rational::one());
        let bound = q(&x) * pow(&(Rational::one() - &b * &b), x.len());
        prop_assert!(d_beta(&x).eval(&b) <= bound);
    }

    #[test]
    fn kernel_decomposes_over_suffixes(x in word_up_to(6), w in core(), b in beta()) {
        let lhs = d_beta_prime(&x, &w, &b).unwrap();
        let rhs: Rational = (0..=x.len())
            .map(|i| {
                let tail = x.suffix(i).unwrap();
                pow(&b, tail.rank()) * d_beta(&x.prefix(i).unwrap()).eval(&b) * d1_prime(&tail, &w)
            })
            .sum();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn measure_is_probability(w in core(), b in beta(), n in 0usize..9) {
        let masses: Vec<Rational> = enumerate_level(n).words.iter().map(|v| mu(&w, &b, v).unwrap()).collect();
        prop_assert!(masses.iter().all(|m| !m.is_negative()));
        prop_assert!(masses.iter().sum::<Rational>().is_one());
    }

    #[test]
    fn magic_rows_dominate(w in core(), b in beta(), n in 0usize..8) {
        prop_assume!(b < Rational::one());
        let tab = build_table(&w, &b, n).unwrap();
        for (r, v) in tab.words.iter().enumerate() {
            prop_assert!(mu(&w, &b, v).unwrap() <= tab.row_sum(r));
        }
        prop_assert!(tab.total() <= Rational::one() + b.recip());
    }

    #[test]
    fn split_product_of_dimensions(x in word_up_to(10), a in 0usize..11) {
        let a = a.min(x.len());
        let (head, tail) = (x.prefix(a).unwrap(), x.suffix(a).unwrap());
        let rhs = d_from_empty(&tail) * d_from_empty(&head.concat(&Word::ones(tail.rank())));
        prop_assert_eq!(d_from_empty(&x), rhs);
    }

    #[test]
    fn rationals_render_in_lowest_terms(p in -1000i64..1000, q in 1i64..1000) {
        let r = Rational::new(p.into(), q.into());
        let text = r.to_string();
        prop_assert!(!text.contains('.'));
        prop_assert_eq!(parse_rational(&text).unwrap(), r);
    }
}
