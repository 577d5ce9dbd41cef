//! Exact arithmetic and the combinatorial bookkeeping shared by every formula:
//! rationals, multi-indices, factorial-type numbers and ordered decompositions.

mod combinat;
mod compose;
mod multi_index;
mod rational;

pub use combinat::{binomial, factorial, kernel_k, multinomial, FACTORIAL_CACHE_BOUND};
pub use compose::{enumerate_compositions, CompositionStream};
pub use multi_index::{multi_indices_of_weight, multi_indices_up_to_weight, MultiIndex};
pub use rational::{int, parse_rational, rat, rational_string, serde_rational, Rational};
