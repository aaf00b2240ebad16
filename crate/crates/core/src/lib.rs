//! Exact computations on the Young–Fibonacci lattice: words over `{1, 2}`,
//! path counts, harmonic functions, central measures and magic tables.
//!
//! All arithmetic is exact ([`Rational`]); floating point is opt-in and only
//! used where a function says so.

pub mod boundary;
pub mod error;
pub mod experiments;
pub mod harmonic;
pub mod magic;
pub mod pathcount;
pub mod rational;
pub mod word;

pub use boundary::{d1_prime, d_beta_prime, level_distribution, mu, LevelDistribution, TailOnesWord};
pub use error::{Error, Result};
pub use harmonic::{d_beta, f, f_row, g, g_all, pi, q, BetaPolynomial};
pub use magic::{build_table, MagicTable};
pub use pathcount::{d_from_empty, d_paths_dp, d_paths_formula};
pub use rational::Rational;
pub use word::{enumerate_level, Level, Word};
