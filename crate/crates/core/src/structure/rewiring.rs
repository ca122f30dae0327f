//! The two-edge recombination step on closed networks.
//!
//! Given internal edges e1 = (x, y) and e2 = (z, w) of a closed network,
//! the step replaces them by (x, z) and (y, w) and compares the two values.
//! In the disequality-wired setting (edges realized as degree-2 disequality
//! vertices attached to the function side) the values are either both zero
//! or in ratio 1, 2 or 1/2 whenever every arity-4 cut decomposes into a
//! scalar times a pair of disequalities; the checker in the verification
//! suite drives exactly that configuration.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::tensor::Gadget;

/// Outcome of one recombination step.
#[derive(Debug, Clone)]
pub enum Rewired {
    BothZero,
    /// Both nonzero; carries value(original) / value(rewired).
    Ratio(Scalar),
    /// Exactly one value vanished (possible outside the guarded setting).
    OneZero { original_zero: bool },
}

/// Replaces edges e1 = (x, y), e2 = (z, w) by (x, z), (y, w) and evaluates
/// both closed networks exactly.
pub fn rewiring_step(g: &Gadget, e1: usize, e2: usize) -> Result<(Gadget, Rewired)> {
    if !g.is_closed() {
        return Err(Error::Precondition("rewiring requires a closed network".into()));
    }
    if e1 >= g.edges.len() {
        return Err(Error::EdgeNotFound(e1));
    }
    if e2 >= g.edges.len() {
        return Err(Error::EdgeNotFound(e2));
    }
    if e1 == e2 {
        return Err(Error::Precondition("rewiring needs two distinct edges".into()));
    }
    let (x, y) = g.edges[e1];
    let (z, w) = g.edges[e2];
    let mut rewired = g.clone();
    rewired.edges[e1] = (x, z);
    rewired.edges[e2] = (y, w);
    rewired.validate()?;
    let v0 = g.holant_value()?;
    let v1 = rewired.holant_value()?;
    let outcome = match (v0.is_zero(), v1.is_zero()) {
        (true, true) => Rewired::BothZero,
        (false, false) => Rewired::Ratio(v0.div(&v1)?),
        (zero0, _) => Rewired::OneZero { original_zero: zero0 },
    };
    Ok((rewired, outcome))
}

/// True when the outcome is both-zero or a ratio in {1, 2, 1/2}.
pub fn ratio_is_admissible(outcome: &Rewired) -> bool {
    match outcome {
        Rewired::BothZero => true,
        Rewired::OneZero { .. } => false,
        Rewired::Ratio(r) => {
            *r == Scalar::one()
                || *r == Scalar::from_int(2)
                || *r == Scalar::from_ratio(1, 2)
        }
    }
}
