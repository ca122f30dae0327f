//! Parity-domain restrictions, support patterns and the bit-flip scaling
//! normalization.


use crate::error::{Error, Result};
use crate::field::{sqrt_if_simple, FieldCtx, Scalar};
use crate::tensor::Func;

use super::{all_pairings, require_even_arity, require_small_arity, Pairing};

/// Number of ones minus number of zeros of an assignment of `len` bits.
pub fn deviation(assignment: usize, len: usize) -> i64 {
    let ones = (assignment & ((1usize << len) - 1)).count_ones() as i64;
    2 * ones - len as i64
}

/// Zeroes every value whose input does not have equally many ones and
/// zeros. Requires even arity.
pub fn eo_restrict(f: &Func) -> Result<Func> {
    let d = require_even_arity(f.arity())?;
    let mut out = Func::zero(f.arity());
    for a in 0..1usize << f.arity() {
        if (a.count_ones() as usize) == d {
            out.set(a, f.get(a).clone());
        }
    }
    Ok(out)
}

/// F(a) = F(complement of a) on all balanced assignments.
pub fn eo_symmetry_check(f: &Func) -> Result<bool> {
    let d = require_even_arity(f.arity())?;
    let mask = (1usize << f.arity()) - 1;
    for a in 0..=mask {
        if (a.count_ones() as usize) == d && f.get(a) != f.get(!a & mask) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Support shape of an even-arity function under some pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportClass {
    /// Support is the full product {00, 11}^k under the pairing.
    Antelope(Pairing),
    /// One pair (the horn) is pinned to 00, the rest range over {00, 11}.
    Rhino0 { horn: (usize, usize), pairing: Pairing },
    /// One pair (the horn) is pinned to 11.
    Rhino1 { horn: (usize, usize), pairing: Pairing },
    Other,
}

/// Per-pairing support analysis used by both the public classifier and the
/// arity-reduction driver: for every pairing that matches one of the three
/// patterns, the witnessing class.
pub(crate) fn support_patterns(f: &Func) -> Result<Vec<SupportClass>> {
    require_small_arity(f.arity())?;
    let k = require_even_arity(f.arity())?;
    let supp = f.support();
    let mut out = Vec::new();
    if supp.is_empty() {
        return Ok(out);
    }
    let d = f.arity();
    'pairing: for pairing in all_pairings(&(0..d).collect::<Vec<_>>()) {
        // per-pair value sets over the support
        let mut seen00 = vec![false; k];
        let mut seen11 = vec![false; k];
        for &a in &supp {
            for (j, &(u, v)) in pairing.pairs().iter().enumerate() {
                let bu = (a >> (d - 1 - u)) & 1;
                let bv = (a >> (d - 1 - v)) & 1;
                match (bu, bv) {
                    (0, 0) => seen00[j] = true,
                    (1, 1) => seen11[j] = true,
                    _ => continue 'pairing,
                }
            }
        }
        let free = (0..k).filter(|&j| seen00[j] && seen11[j]).count();
        let pinned0: Vec<usize> = (0..k).filter(|&j| seen00[j] && !seen11[j]).collect();
        let pinned1: Vec<usize> = (0..k).filter(|&j| !seen00[j] && seen11[j]).collect();
        // the support must be the full product of the per-pair value sets
        if supp.len() != 1usize << free {
            continue;
        }
        if pinned0.is_empty() && pinned1.is_empty() {
            out.push(SupportClass::Antelope(pairing));
        } else if pinned0.len() == 1 && pinned1.is_empty() {
            let horn = pairing.pairs()[pinned0[0]];
            out.push(SupportClass::Rhino0 { horn, pairing });
        } else if pinned1.len() == 1 && pinned0.is_empty() {
            let horn = pairing.pairs()[pinned1[0]];
            out.push(SupportClass::Rhino1 { horn, pairing });
        }
    }
    Ok(out)
}

/// Classifies the support of an even-arity function; the lexicographically
/// first witnessing pairing wins.
pub fn support_class(f: &Func) -> Result<SupportClass> {
    let patterns = support_patterns(f)?;
    Ok(patterns.into_iter().next().unwrap_or(SupportClass::Other))
}

/// Recovers the scaling constant of the bit-flip relation
/// H(a) = c^{r(a)} H(complement a) on the support, then absorbs it with the
/// diagonal transform diag(c^{1/2}, c^{-1/2}) applied to every variable.
/// The normalized table is globally flip-symmetric and all its values
/// square to real numbers.
pub fn compute_c_and_normalize(ctx: &FieldCtx, h: &Func) -> Result<(Scalar, Func)> {
    require_even_arity(h.arity())?;
    let d = h.arity();
    let mask = (1usize << d) - 1;
    // support must be closed under complement for the relation to make sense
    for a in 0..=mask {
        if !h.get(a).is_zero() && h.get(!a & mask).is_zero() {
            return Err(Error::NoConsistentC);
        }
    }
    if h.is_zero() {
        return Ok((Scalar::one(), h.clone()));
    }
    // extract c from a minimal positive-deviation support string
    let mut best: Option<(i64, usize)> = None;
    for a in 0..=mask {
        if h.get(a).is_zero() {
            continue;
        }
        let r = deviation(a, d);
        if r > 0 && best.map(|(br, _)| r < br).unwrap_or(true) {
            best = Some((r, a));
        }
    }
    let candidates: Vec<Scalar> = match best {
        None => vec![Scalar::one()], // support inside the balanced slice
        Some((r, a)) => {
            let ratio = h.get(a).div(h.get(!a & mask))?;
            root_candidates(ctx, &ratio, r as u32)?
        }
    };
    let c = candidates
        .into_iter()
        .find(|c| verify_relation(h, c))
        .ok_or(Error::NoConsistentC)?;

    let c_half = match sqrt_if_simple(ctx, &c)? {
        Some(r) => r,
        None => return Err(Error::RootOutsideField),
    };
    let c_half_inv = c_half.inv()?;
    let mut normalized = Func::zero(d);
    for a in 0..=mask {
        // diag(c^{1/2}, c^{-1/2}) on every variable scales by c^{-r(a)/2}
        let r = deviation(a, d);
        let factor = if r >= 0 {
            c_half_inv.pow(r)?
        } else {
            c_half.pow(-r)?
        };
        normalized.set(a, h.get(a).mul(&factor));
    }
    // postconditions of the normalization
    for a in 0..=mask {
        if normalized.get(a) != normalized.get(!a & mask) {
            return Err(Error::NoConsistentC);
        }
        let sq = normalized.get(a).mul(normalized.get(a));
        if !sq.is_real() {
            return Err(Error::NoConsistentC);
        }
    }
    Ok((c, normalized))
}

fn verify_relation(h: &Func, c: &Scalar) -> bool {
    let d = h.arity();
    let mask = (1usize << d) - 1;
    for a in 0..=mask {
        if h.get(a).is_zero() {
            continue;
        }
        let r = deviation(a, d);
        // negative powers invert; c is nonzero here
        let Ok(factor) = c.pow(r) else { return false };
        if *h.get(a) != factor.mul(h.get(!a & mask)) {
            return false;
        }
    }
    true
}

/// All solutions of c^r = ratio that are expressible with iterated simple
/// square roots: r must be a power of two, and the 2^m-th roots of unity
/// twist the principal root.
fn root_candidates(ctx: &FieldCtx, ratio: &Scalar, r: u32) -> Result<Vec<Scalar>> {
    if !r.is_power_of_two() {
        return Err(Error::RootOutsideField);
    }
    let mut principal = ratio.clone();
    let mut taken = 1u32;
    while taken < r {
        principal = match sqrt_if_simple(ctx, &principal)? {
            Some(root) => root,
            None => return Err(Error::RootOutsideField),
        };
        taken *= 2;
    }
    let mut out = Vec::with_capacity(r as usize);
    for m in 0..r {
        let twist = Scalar::zeta(r, m as i64);
        out.push(principal.mul(&twist));
    }
    Ok(out)
}
