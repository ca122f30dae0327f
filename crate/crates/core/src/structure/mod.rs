//! Structural analyses of higher-arity functions: decomposability,
//! product-of-binaries membership, parity and support patterns, basis
//! expansions, rewiring ratios and the arity-reduction driver.
//!
//! Pairings are perfect matchings of the variable set; scans run over all
//! of them in lexicographic order with the smallest witness winning, so
//! every analysis is deterministic.

mod membership;
mod pauli;
mod ratio;
mod reduce;
mod rewiring;
mod support;

pub use membership::{assemble as assemble_product, decompose_arity4, membership_in_lambda_gen_b, Membership};
pub use pauli::{pauli_expand, reality_check, BasisLetter, KBasisCoeffs};
pub use ratio::{power_recurrence, ratio_lemma_check, RatioCase};
pub use reduce::{arity_reduce, ArityReduction};
pub use rewiring::{ratio_is_admissible, rewiring_step, Rewired};
pub use support::{
    compute_c_and_normalize, deviation, eo_restrict, eo_symmetry_check, support_class,
    SupportClass,
};

use crate::error::{Error, Result};

/// An ordered perfect matching of the variables 0..2d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing(pub Vec<(usize, usize)>);

impl Pairing {
    /// Consecutive pairing (0,1)(2,3)...
    pub fn consecutive(d: usize) -> Pairing {
        Pairing((0..d).map(|j| (2 * j, 2 * j + 1)).collect())
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Normalized form: each pair sorted, pairs sorted by first element.
    pub fn normalized(&self) -> Pairing {
        let mut pairs: Vec<(usize, usize)> = self
            .0
            .iter()
            .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        pairs.sort();
        Pairing(pairs)
    }
}

/// All perfect matchings of `vars`, lexicographically ordered, each with
/// sorted pairs. (2d-1)!! of them.
pub fn all_pairings(vars: &[usize]) -> Vec<Pairing> {
    fn rec(vars: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if vars.is_empty() {
            return vec![Vec::new()];
        }
        let first = vars[0];
        let mut out = Vec::new();
        for k in 1..vars.len() {
            let partner = vars[k];
            let rest: Vec<usize> = vars[1..]
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k - 1)
                .map(|(_, &v)| v)
                .collect();
            for mut sub in rec(&rest) {
                sub.insert(0, (first, partner));
                out.push(sub);
            }
        }
        out
    }
    if !vars.len().is_multiple_of(2) {
        return Vec::new();
    }
    let mut sorted = vars.to_vec();
    sorted.sort();
    rec(&sorted).into_iter().map(Pairing).collect()
}

pub(crate) fn require_even_arity(arity: usize) -> Result<usize> {
    if !arity.is_multiple_of(2) {
        Err(Error::OddArity(arity))
    } else {
        Ok(arity / 2)
    }
}

pub(crate) fn require_small_arity(arity: usize) -> Result<()> {
    if arity > 8 {
        Err(Error::ArityTooLarge(arity))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_counts() {
        assert_eq!(all_pairings(&[0, 1]).len(), 1);
        assert_eq!(all_pairings(&[0, 1, 2, 3]).len(), 3);
        assert_eq!(all_pairings(&[0, 1, 2, 3, 4, 5]).len(), 15);
        assert_eq!(all_pairings(&[0, 1, 2, 3, 4, 5, 6, 7]).len(), 105);
        assert!(all_pairings(&[0, 1, 2]).is_empty());
    }

    #[test]
    fn pairings_are_lexicographic() {
        let ps = all_pairings(&[0, 1, 2, 3]);
        assert_eq!(ps[0].pairs(), &[(0, 1), (2, 3)]);
        assert_eq!(ps[1].pairs(), &[(0, 2), (1, 3)]);
        assert_eq!(ps[2].pairs(), &[(0, 3), (1, 2)]);
    }
}
