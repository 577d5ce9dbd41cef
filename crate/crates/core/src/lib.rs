//! Exact computation of higher Weil-Petersson volumes of the genus-zero moduli
//! spaces of stable pointed curves, together with the surrounding machinery:
//! truncated graded power series, the combinatorial omega-algebra, the
//! semigroup of one-dimensional cohomological field theories, Betti numbers
//! of the moduli spaces, and floating-point checks of the asymptotic growth.
//!
//! Everything outside [`asymptotics`] is exact rational arithmetic.

pub mod asymptotics;
pub mod cohft;
pub mod error;
pub mod exact;
pub mod fault;
pub mod omega;
pub mod series;
pub mod topology;
pub mod verify;
pub mod volumes;

pub use error::{Error, Result};
pub use exact::{MultiIndex, Rational};
pub use series::{GradedSeries, VariableTable};
