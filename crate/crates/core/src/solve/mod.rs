//! Exact polynomial system solving over ℚ and ℚ(t): Gröbner bases, torus
//! saturation, solution counting in the quotient ring, eliminants, and real
//! positive solution counting.

pub mod buchberger;
pub mod count;
pub mod elim;
pub mod modular;
pub mod mono;
pub mod mpoly;
pub mod realroots;
pub mod saturate;

pub use buchberger::{groebner_basis, is_groebner_basis, GroebnerBasis};
pub use count::{count_torus_solutions, SolutionCount};
pub use elim::eliminant;
pub use mono::{cmp_mono, Monomial, Order};
pub use mpoly::MultiPoly;
pub use realroots::real_positive_count;
pub use saturate::{saturate_torus, saturated_basis_public};

use crate::error::Error;

/// Knobs shared by the solver entry points. The deadline is cooperative:
/// long-running loops poll it and bail out with [`Error::Timeout`].
#[derive(Clone, Copy, Default)]
pub struct SolveOpts {
    pub deadline: Option<std::time::Instant>,
    /// Compute heavy Gröbner bases modulo a word-size prime, rationally
    /// reconstruct, and verify over ℚ; falls back to the direct computation
    /// when verification fails.
    pub modular: bool,
}

impl SolveOpts {
    pub fn check(&self) -> Result<(), Error> {
        if let Some(deadline) = self.deadline {
            if std::time::Instant::now() > deadline {
                return Err(Error::Timeout);
            }
        }
        Ok(())
    }
}
