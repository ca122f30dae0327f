//! Per-conductor field data: the cyclotomic polynomial and reduction tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Euler's totient.
#[cfg(test)]
pub fn phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Exact division of integer polynomials (ascending coefficients).
/// Panics if the division is not exact; callers only divide x^n - 1 by
/// products of cyclotomic polynomials, which is always exact.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        for j in 0..=dd {
            rem[k + j] -= &c * &den[j];
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// The n-th cyclotomic polynomial, monic with integer coefficients,
/// ascending order.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()]; // x - 1
    }
    // (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phid = cyclotomic_cached(d);
            result = poly_div_exact(&result, &phid);
        }
    }
    result
}

fn cyclotomic_cached(n: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = cyclotomic_poly(n);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Reduction data for Q(zeta_n): the modulus Phi_n and the table of
/// x^k mod Phi_n for every k needed by multiplication, conjugation and
/// embedding (k up to max(n, 2*phi - 1)).
pub struct FieldData {
    pub phi: usize,
    /// x^k mod Phi_n, ascending coefficients of length phi.
    pub pow: Vec<Vec<BigRational>>,
}

impl FieldData {
    fn build(n: u32) -> FieldData {
        let modulus: Vec<BigRational> = cyclotomic_cached(n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let ph = modulus.len() - 1;
        let maxk = std::cmp::max(n as usize, 2 * ph).max(1);
        let mut pow: Vec<Vec<BigRational>> = Vec::with_capacity(maxk);
        let mut cur = vec![BigRational::zero(); ph];
        cur[0] = BigRational::one();
        pow.push(cur.clone());
        for _ in 1..maxk {
            // multiply by x, reduce the overflow coefficient against Phi_n
            let carry = cur[ph - 1].clone();
            for i in (1..ph).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !carry.is_zero() {
                for i in 0..ph {
                    cur[i] -= &carry * &modulus[i];
                }
            }
            pow.push(cur.clone());
        }
        FieldData { phi: ph, pow }
    }
}

/// Shared, lazily-built field data per conductor.
pub fn field_data(n: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&n) {
        return d.clone();
    }
    let d = Arc::new(FieldData::build(n));
    cache.lock().unwrap().insert(n, d.clone());
    d
}
