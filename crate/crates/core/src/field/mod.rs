//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! A [`Scalar`] is an element of Q(zeta_n) stored as a rational coefficient
//! vector of length phi(n) over the basis 1, zeta, ..., zeta^{phi(n)-1},
//! reduced modulo the n-th cyclotomic polynomial. Every scalar carries its
//! own conductor n; binary operations promote both operands into the
//! compositum Q(zeta_lcm) first, so values built from different constants
//! combine transparently and equality is conductor-independent.
//!
//! The conductor cap is enforced where new constants enter the system
//! (expression parsing and square roots); arithmetic itself never fails.

mod data;
mod parse;
mod sqrt;

pub use parse::parse_scalar;
pub use sqrt::sqrt_if_simple;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use data::{field_data, FieldData};
pub(crate) use data::{gcd, lcm};


/// Session-wide field configuration: the default conductor and the cap that
/// bounds every conductor promotion triggered by parsing or root extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldCtx {
    /// Base conductor of the session field (default 24, which contains i,
    /// the cube roots of unity and sqrt(2)).
    pub base_n: u32,
    /// Largest conductor the session may promote to (default 240).
    pub cap: u32,
}

impl Default for FieldCtx {
    fn default() -> Self {
        FieldCtx { base_n: 24, cap: 240 }
    }
}

impl FieldCtx {
    pub fn new(base_n: u32, cap: u32) -> Self {
        FieldCtx { base_n, cap }
    }

    /// Reads `HOLANT_FIELD_N` to override the default conductor.
    pub fn from_env() -> Self {
        let mut ctx = FieldCtx::default();
        if let Ok(v) = std::env::var("HOLANT_FIELD_N") {
            if let Ok(n) = v.trim().parse::<u32>() {
                if n >= 1 {
                    ctx.base_n = n;
                    if ctx.cap < n {
                        ctx.cap = n;
                    }
                }
            }
        }
        ctx
    }

    /// Checks that a conductor fits under the cap.
    pub(crate) fn check(&self, needed: u64) -> Result<u32> {
        if needed > self.cap as u64 {
            Err(Error::FieldTooSmall { needed, cap: self.cap })
        } else {
            Ok(needed as u32)
        }
    }
}

/// An exact element of a cyclotomic field Q(zeta_n).
#[derive(Clone)]
pub struct Scalar {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    fn with_data(n: u32, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), field_data(n).phi);
        Scalar { n, coeffs }
    }

    pub fn zero() -> Self {
        Scalar { n: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Scalar { n: 1, coeffs: vec![BigRational::one()] }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar { n: 1, coeffs: vec![BigRational::from_integer(BigInt::from(v))] }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar {
            n: 1,
            coeffs: vec![BigRational::new(BigInt::from(num), BigInt::from(den))],
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { n: 1, coeffs: vec![r] }
    }

    /// The imaginary unit, zeta_4.
    pub fn i() -> Self {
        Scalar::zeta(4, 1)
    }

    /// zeta_m^k = e^{2 pi i k / m}. The representation is normalized to the
    /// smallest conductor containing the root (the order of zeta_m^k).
    pub fn zeta(m: u32, k: i64) -> Self {
        assert!(m >= 1);
        let kk = k.rem_euclid(m as i64) as u64;
        let g = gcd(kk, m as u64);
        let (m, kk) = ((m as u64 / g) as u32, kk / g);
        let d = field_data(m);
        let mut coeffs = vec![BigRational::zero(); d.phi];
        for (i, c) in d.pow[kk as usize].iter().enumerate() {
            coeffs[i] = c.clone();
        }
        Scalar::with_data(m, coeffs)
    }

    /// Conductor of the representation (not necessarily minimal for the value).
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True when the element lies in Q (all non-constant coefficients vanish).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The constant coefficient when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    #[cfg(test)]
    pub(crate) fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    /// Re-expresses the element in Q(zeta_target); target must be a multiple
    /// of the current conductor.
    pub fn promote(&self, target: u32) -> Scalar {
        if self.n == target {
            return self.clone();
        }
        assert_eq!(target % self.n, 0, "promotion target must be a multiple");
        let step = (target / self.n) as usize;
        let d = field_data(target);
        let mut coeffs = vec![BigRational::zero(); d.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in d.pow[j * step].iter().enumerate() {
                if !p.is_zero() {
                    coeffs[i] += c * p;
                }
            }
        }
        Scalar::with_data(target, coeffs)
    }

    fn common(a: &Scalar, b: &Scalar) -> (Scalar, Scalar, u32) {
        if a.n == b.n {
            return (a.clone(), b.clone(), a.n);
        }
        let l = lcm(a.n as u64, b.n as u64) as u32;
        (a.promote(l), b.promote(l), l)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let (mut a, b, n) = Scalar::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        Scalar { n, coeffs: a.coeffs }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        let (mut a, b, n) = Scalar::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        Scalar { n, coeffs: a.coeffs }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let (a, b, n) = Scalar::common(self, other);
        let d = field_data(n);
        let ph = d.phi;
        if ph == 1 {
            return Scalar { n, coeffs: vec![&a.coeffs[0] * &b.coeffs[0]] };
        }
        let mut conv = vec![BigRational::zero(); 2 * ph - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = conv[..ph].to_vec();
        for (k, c) in conv.iter().enumerate().skip(ph) {
            if c.is_zero() {
                continue;
            }
            for (i, p) in d.pow[k].iter().enumerate() {
                if !p.is_zero() {
                    coeffs[i] += c * p;
                }
            }
        }
        Scalar { n, coeffs }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic modulus.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Scalar {
                n: 1,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let d = field_data(self.n);
        let modulus = modulus_poly(&d);
        let inv = poly_mod_inverse(&self.coeffs, &modulus)
            .expect("cyclotomic modulus is irreducible, nonzero elements are invertible");
        let mut coeffs = inv;
        coeffs.resize(d.phi, BigRational::zero());
        Ok(Scalar { n: self.n, coeffs })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Complex conjugation, i.e. the field automorphism zeta -> zeta^{-1}.
    pub fn conj(&self) -> Scalar {
        self.galois(self.n as u64 - 1)
    }

    /// The automorphism zeta -> zeta^k for k coprime to the conductor.
    /// (k = n - 1 gives conjugation; n = 1 is the identity.)
    pub(crate) fn galois(&self, k: u64) -> Scalar {
        if self.n == 1 {
            return self.clone();
        }
        debug_assert_eq!(gcd(k, self.n as u64), 1);
        let d = field_data(self.n);
        let mut coeffs = vec![BigRational::zero(); d.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = (j as u64 * k % self.n as u64) as usize;
            for (i, p) in d.pow[t].iter().enumerate() {
                if !p.is_zero() {
                    coeffs[i] += c * p;
                }
            }
        }
        Scalar { n: self.n, coeffs }
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn is_pure_imaginary(&self) -> bool {
        self.conj() == self.neg()
    }

    /// |a|^2 = a * conj(a); always real.
    pub fn norm_sq(&self) -> Scalar {
        self.mul(&self.conj())
    }

    /// Canonical expression string; `parse_scalar` accepts it back.
    pub fn to_expr_string(&self) -> String {
        fn rat_str(r: &BigRational) -> String {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        let mut out = String::new();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if j == 0 {
                out.push_str(&rat_str(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&rat_str(&abs));
                    out.push('*');
                }
                out.push_str(&format!("zeta({},{})", self.n, j));
            }
        }
        if first {
            out.push('0');
        }
        out
    }
}

fn modulus_poly(d: &Arc<FieldData>) -> Vec<BigRational> {
    // reconstruct Phi_n from pow[phi]: x^phi = pow[phi] mod Phi, so
    // Phi = x^phi - pow[phi]
    let ph = d.phi;
    let mut m = vec![BigRational::zero(); ph + 1];
    m[ph] = BigRational::one();
    if ph >= 1 {
        for (i, c) in d.pow.get(ph).map(|v| v.as_slice()).unwrap_or(&[]).iter().enumerate() {
            m[i] = -c.clone();
        }
    }
    m
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    if rem.len() - 1 < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead = bb[db].clone();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for j in 0..=db {
                rem[k + j] -= &c * &bb[j];
            }
        }
    }
    poly_trim(&mut rem);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` in Q[x], when gcd(a, m) is a nonzero constant.
fn poly_mod_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // extended Euclid: maintain r0 = m, r1 = a with s-coefficients against a
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 || r0[0].is_zero() {
        return None; // gcd not constant
    }
    let c = r0[0].recip();
    let inv: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
    // one final reduction keeps the length below deg(m)
    let (_, rem) = poly_divmod(&inv, m);
    Some(rem)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Scalar::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr_string())
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
