//! The entry-ratio condition for 2x2 blocks against a cyclic diagonal set,
//! and the proportional-power recurrence of full-rank arity-4 matrices.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::ScalarMatrix;
use crate::tensor::Func;

/// Solution families of the two derived equation systems for
/// Q = [[a, c], [d, b]] against the k-th roots of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioCase {
    /// a = b = c = d = 0.
    AllZero,
    /// a = b = 0 and c^k = d^k.
    DiagonalZero,
    /// c = d = 0 and a^k = b^k.
    AntidiagonalZero,
    /// k >= 3: no zeros, ab = cd, and all entry ratios are k-th roots of
    /// unity.
    NoZeros,
    /// k = 2 only: no zeros with b = a and d = c.
    EqualPairs,
    /// k = 2 only: no zeros with b = -a and d = -c.
    NegatedPairs,
    /// An equation of the derived systems fails; carries its rendering.
    Violation(String),
}

/// Evaluates the two derived equation systems exactly and reports which
/// solution family Q = [[a, c], [d, b]] falls into. The systems are, for
/// t = 1..k-1:
///
/// ```text
/// a^k + d^k = c^k + b^k        a^k + c^k = d^k + b^k
/// a^t d^{k-t} = c^t b^{k-t}    a^t c^{k-t} = d^t b^{k-t}
/// ```
pub fn ratio_lemma_check(q: &ScalarMatrix, k: u32) -> Result<RatioCase> {
    assert_eq!((q.rows(), q.cols()), (2, 2));
    if k < 2 {
        return Err(Error::Precondition("the ratio condition needs k >= 2".into()));
    }
    let (a, c, d, b) = (
        q.get(0, 0).clone(),
        q.get(0, 1).clone(),
        q.get(1, 0).clone(),
        q.get(1, 1).clone(),
    );
    let powk = |x: &Scalar| x.pow(k as i64).expect("nonnegative power");
    let (ak, bk, ck, dk) = (powk(&a), powk(&b), powk(&c), powk(&d));

    if ak.add(&dk) != ck.add(&bk) {
        return Ok(RatioCase::Violation(format!("a^{k} + d^{k} = c^{k} + b^{k}")));
    }
    if ak.add(&ck) != dk.add(&bk) {
        return Ok(RatioCase::Violation(format!("a^{k} + c^{k} = d^{k} + b^{k}")));
    }
    for t in 1..k {
        let u = k - t;
        let pow = |x: &Scalar, e: u32| x.pow(e as i64).expect("nonnegative power");
        if pow(&a, t).mul(&pow(&d, u)) != pow(&c, t).mul(&pow(&b, u)) {
            return Ok(RatioCase::Violation(format!("a^{t} d^{u} = c^{t} b^{u}")));
        }
        if pow(&a, t).mul(&pow(&c, u)) != pow(&d, t).mul(&pow(&b, u)) {
            return Ok(RatioCase::Violation(format!("a^{t} c^{u} = d^{t} b^{u}")));
        }
    }

    // all equations hold; match the zero pattern
    let zeros = [a.is_zero(), b.is_zero(), c.is_zero(), d.is_zero()];
    match zeros {
        [true, true, true, true] => Ok(RatioCase::AllZero),
        [true, true, false, false] => Ok(RatioCase::DiagonalZero),
        [false, false, true, true] => Ok(RatioCase::AntidiagonalZero),
        [false, false, false, false] => {
            if k == 2 {
                if b == a && d == c {
                    Ok(RatioCase::EqualPairs)
                } else if b == a.neg() && d == c.neg() {
                    Ok(RatioCase::NegatedPairs)
                } else {
                    Err(Error::AssertionFailed(
                        "k = 2 system admits only the paired sign solutions".into(),
                    ))
                }
            } else {
                // the systems force ab = cd and root-of-unity ratios
                if a.mul(&b) != c.mul(&d) {
                    return Err(Error::AssertionFailed("ab = cd must follow for k >= 3".into()));
                }
                for (x, y) in [(&a, &b), (&c, &d), (&a, &c), (&b, &d), (&a, &d), (&b, &c)] {
                    let r = x.div(y)?;
                    if !r.pow(k as i64)?.is_one() {
                        return Err(Error::AssertionFailed(
                            "entry ratios must be k-th roots of unity".into(),
                        ));
                    }
                }
                Ok(RatioCase::NoZeros)
            }
        }
        _ => Err(Error::AssertionFailed(
            "mixed zero pattern cannot satisfy both systems".into(),
        )),
    }
}

/// Least (s, t) with s < t <= bound and M^t v proportional to M^s v, where
/// M is the row-(x1, x2) matrix of the arity-4 function. Returns the
/// proportionality factor as well. Ordered by t, then s.
pub fn power_recurrence(
    q: &Func,
    v: &Func,
    bound: u32,
) -> Result<(u32, u32, Scalar)> {
    assert_eq!(q.arity(), 4);
    assert_eq!(v.arity(), 2);
    let m = q.reshape(&[0, 1]);
    if m.rank() < 4 {
        return Err(Error::Precondition("power recurrence needs a full-rank matrix".into()));
    }
    let mut seq: Vec<Vec<Scalar>> = vec![v.values().to_vec()];
    for t in 1..=bound {
        let prev = &seq[(t - 1) as usize];
        let mut next = vec![Scalar::zero(); 4];
        for (r, slot) in next.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for (k, p) in prev.iter().enumerate() {
                if !p.is_zero() {
                    acc = acc.add(&m.get(r, k).mul(p));
                }
            }
            *slot = acc;
        }
        for s in 0..t {
            if let Some(ratio) = proportional_vec(&seq[s as usize], &next) {
                return Ok((s, t, ratio));
            }
        }
        seq.push(next);
    }
    Err(Error::NotFoundWithinBound(bound))
}

fn proportional_vec(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let k = a.iter().position(|x| !x.is_zero());
    let Some(k) = k else {
        return b.iter().all(|x| x.is_zero()).then(Scalar::one);
    };
    if b[k].is_zero() {
        return None;
    }
    let c = b[k].div(&a[k]).unwrap();
    for (x, y) in a.iter().zip(b.iter()) {
        if x.mul(&c) != *y {
            return None;
        }
    }
    Some(c)
}
