//! Square roots of the simple shape q * zeta^j with q a positive rational.
//!
//! The root of such an element is sqrt(q) * zeta_{2n}^j, and sqrt(q) itself
//! is a rational multiple of the square root of a small squarefree integer,
//! which lives in a cyclotomic field of known conductor (8 for sqrt(2),
//! p or 4p for an odd prime p via quadratic Gauss sums). Anything that does
//! not match the shape yields `None`; roots whose conductor would exceed the
//! session cap are reported as `FieldTooSmall`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::data::lcm;
use super::{FieldCtx, Scalar};
use crate::error::Result;

/// Bound on the integers we try to factor when extracting square parts.
const FACTOR_LIMIT_BITS: u64 = 64;

/// Splits n > 0 as s^2 * m with m squarefree. Returns None when n is too
/// large to factor at desk scale.
fn square_split(n: &BigInt) -> Option<(BigInt, u64)> {
    if n.bits() > FACTOR_LIMIT_BITS {
        // fast path: exact squares of any size are still recognized
        let r = n.sqrt();
        if &(&r * &r) == n {
            return Some((r, 1));
        }
        return None;
    }
    let mut rest = u64::try_from(n).ok()?;
    let mut s: u64 = 1;
    let mut m: u64 = 1;
    let mut d: u64 = 2;
    while d * d <= rest {
        if rest % d == 0 {
            let mut e = 0u32;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            for _ in 0..e / 2 {
                s = s.checked_mul(d)?;
            }
            if e % 2 == 1 {
                m = m.checked_mul(d)?;
            }
        }
        d += 1;
    }
    if rest > 1 {
        m = m.checked_mul(rest)?;
    }
    Some((BigInt::from(s), m))
}

fn legendre(k: u64, p: u64) -> i64 {
    // k^((p-1)/2) mod p
    let mut result: u64 = 1;
    let mut base = k % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if result == 1 {
        1
    } else if result == p - 1 {
        -1
    } else {
        0
    }
}

/// Conductor needed to express sqrt(m) for squarefree m > 1.
fn sqrt_conductor(m: u64) -> u64 {
    let mut c: u64 = 1;
    let mut rest = m;
    if rest.is_multiple_of(2) {
        c = lcm(c, 8);
        rest /= 2;
    }
    let mut p = 3;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            c = lcm(c, if p % 4 == 1 { p } else { 4 * p });
        }
        p += 2;
    }
    if rest > 1 {
        c = lcm(c, if rest % 4 == 1 { rest } else { 4 * rest });
    }
    c
}

/// sqrt(m) for squarefree m, via Gauss sums. The caller has already
/// checked the conductor fits.
fn sqrt_squarefree(m: u64) -> Scalar {
    let mut acc = Scalar::one();
    let mut rest = m;
    if rest.is_multiple_of(2) {
        // sqrt(2) = zeta_8 - zeta_8^3
        acc = acc.mul(&Scalar::zeta(8, 1).sub(&Scalar::zeta(8, 3)));
        rest /= 2;
    }
    let mut p = 3;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            rest /= p;
            // quadratic Gauss sum g = sum_k (k|p) zeta_p^k
            let mut g = Scalar::zero();
            for k in 1..p {
                match legendre(k, p) {
                    1 => g = g.add(&Scalar::zeta(p as u32, k as i64)),
                    -1 => g = g.sub(&Scalar::zeta(p as u32, k as i64)),
                    _ => {}
                }
            }
            // g = sqrt(p) when p = 1 mod 4, i*sqrt(p) when p = 3 mod 4
            if p % 4 == 3 {
                g = g.mul(&Scalar::i().neg());
            }
            acc = acc.mul(&g);
        }
        p += 2;
    }
    acc
}

/// Square root of elements of the shape q * zeta_N^j (q a positive rational,
/// N the session conductor). Returns the canonical root
/// sqrt(q) * zeta_{2N}^j, `None` when the element does not match the shape,
/// and `FieldTooSmall` when the root exists but only beyond the cap.
pub fn sqrt_if_simple(ctx: &FieldCtx, a: &Scalar) -> Result<Option<Scalar>> {
    if a.is_zero() {
        return Ok(Some(Scalar::zero()));
    }
    let n = ctx.base_n;
    // find j with a * zeta_n^{-j} a positive rational; unique when it exists
    let mut found: Option<(u32, BigRational)> = None;
    let zinv = Scalar::zeta(n, -1);
    let mut cur = a.clone();
    for j in 0..n {
        if let Some(q) = cur.as_rational() {
            if q.is_positive() {
                found = Some((j, q));
                break;
            }
        }
        if j + 1 < n {
            cur = cur.mul(&zinv);
        }
    }
    let Some((j, q)) = found else {
        return Ok(None);
    };

    // sqrt(q) = sqrt(num*den) / den; num*den = s^2 * m with m squarefree
    let num = q.numer().clone();
    let den = q.denom().clone();
    let Some((s, m)) = square_split(&(&num * &den)) else {
        return Ok(None);
    };
    let rational_part = Scalar::from_rational(BigRational::new(s, den));

    // conductor bookkeeping: the zeta_{2N}^j factor and sqrt(m)
    let mut needed = n as u64;
    if j % 2 == 1 {
        needed = lcm(needed, 2 * n as u64);
    }
    if m > 1 {
        needed = lcm(needed, sqrt_conductor(m));
    }
    ctx.check(needed)?;

    let root_of_unity = if j % 2 == 0 {
        Scalar::zeta(n, (j / 2) as i64)
    } else {
        Scalar::zeta(2 * n, j as i64)
    };
    let mut root = rational_part.mul(&root_of_unity);
    if m > 1 {
        root = root.mul(&sqrt_squarefree(m));
    }
    debug_assert_eq!(root.mul(&root), *a);
    Ok(Some(root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ctx() -> FieldCtx {
        FieldCtx::default()
    }

    fn sqrt(a: Scalar) -> Option<Scalar> {
        sqrt_if_simple(&ctx(), &a).unwrap()
    }

    #[test]
    fn perfect_square() {
        assert_eq!(sqrt(Scalar::from_int(4)), Some(Scalar::from_int(2)));
        assert_eq!(sqrt(Scalar::zero()), Some(Scalar::zero()));
        assert_eq!(sqrt(Scalar::from_ratio(9, 4)), Some(Scalar::from_ratio(3, 2)));
    }

    #[test]
    fn minus_one_gives_i() {
        assert_eq!(sqrt(Scalar::from_int(-1)), Some(Scalar::i()));
        assert_eq!(sqrt(Scalar::from_int(-4)), Some(Scalar::from_int(2).mul(&Scalar::i())));
    }

    #[test]
    fn two_gives_surd() {
        let expected = Scalar::zeta(8, 1).add(&Scalar::zeta(8, 7));
        assert_eq!(sqrt(Scalar::from_int(2)), Some(expected));
    }

    #[test]
    fn roots_of_roots_of_unity() {
        // sqrt(i) = zeta_8
        assert_eq!(sqrt(Scalar::i()), Some(Scalar::zeta(8, 1)));
        let z = Scalar::zeta(24, 5);
        let r = sqrt(z.clone()).unwrap();
        assert_eq!(r.mul(&r), z);
    }

    #[test]
    fn small_surds_verify() {
        for v in [2i64, 3, 5, 6, 10, 15, 30] {
            let r = sqrt(Scalar::from_int(v)).unwrap_or_else(|| panic!("sqrt({v}) missing"));
            assert_eq!(r.mul(&r), Scalar::from_int(v), "sqrt({v})^2");
            assert!(r.is_real());
        }
    }

    #[test]
    fn non_simple_shapes_are_none() {
        let a = Scalar::from_int(1).add(&Scalar::from_int(2).mul(&Scalar::i()));
        assert_eq!(sqrt(a), None);
        // 1 + i = sqrt(2) * zeta_8 has an irrational radial part; its square
        // root 2^(1/4) * zeta_16 is not cyclotomic at all
        let b = Scalar::from_int(1).add(&Scalar::i());
        assert_eq!(sqrt(b), None);
    }

    #[test]
    fn cap_blocks_large_conductors() {
        // sqrt(7) needs conductor 28; lcm(24, 28) = 168 <= 240, fine
        assert!(sqrt(Scalar::from_int(7)).is_some());
        // sqrt(11) needs 44; lcm(24, 44) = 264 > 240
        match sqrt_if_simple(&ctx(), &Scalar::from_int(11)) {
            Err(Error::FieldTooSmall { .. }) => {}
            other => panic!("expected FieldTooSmall, got {other:?}"),
        }
    }
}
