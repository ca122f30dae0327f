//! Holographic transforms, interpolation helpers and named gadget
//! constructions.
//!
//! Conventions: a basis change M acts on a function of arity d either as a
//! row vector times M^{(x) d} ([`transform_func`], used for the left side of
//! a bipartite network) or as M^{(x) d} times a column vector
//! ([`transform_func_col`], used for the right side). Along every edge of a
//! bipartite network the two conventions meet as M * M^{-1} and cancel,
//! which is exactly the invariance checked by
//! [`holographic_invariance_check`].

use crate::error::{Error, Result};
use crate::field::{sqrt_if_simple, FieldCtx, Scalar};
use crate::matrix::ScalarMatrix;
use crate::tensor::{Func, Gadget};

/// An invertible 2x2 basis with its inverse cached.
#[derive(Clone, Debug)]
pub struct Basis2 {
    entries: ScalarMatrix,
    inverse: ScalarMatrix,
}

impl Basis2 {
    pub fn new(entries: ScalarMatrix) -> Result<Self> {
        assert_eq!((entries.rows(), entries.cols()), (2, 2));
        if entries.det2().is_zero() {
            return Err(Error::SingularBasis);
        }
        let inverse = entries.inverse()?;
        Ok(Basis2 { entries, inverse })
    }

    pub fn identity() -> Self {
        Basis2::new(ScalarMatrix::identity(2)).unwrap()
    }

    /// The basis K = [[1, 1], [-i, i]] that swaps the equality pair with the
    /// disequality pair (up to a factor 2).
    pub fn k_basis() -> Self {
        Basis2::new(ScalarMatrix::mat2(
            1.into(),
            1.into(),
            Scalar::i().neg(),
            Scalar::i(),
        ))
        .unwrap()
    }

    pub fn entries(&self) -> &ScalarMatrix {
        &self.entries
    }

    pub fn inverse(&self) -> &ScalarMatrix {
        &self.inverse
    }

    /// Orthogonal means M * M^T = I (not unitary).
    pub fn is_orthogonal(&self) -> bool {
        self.entries.mul(&self.entries.transpose()) == ScalarMatrix::identity(2)
    }
}

/// Applies the basis along one variable axis of the value table.
/// With `row` = true computes (F M^{(x) d}), i.e. new(x) = sum_y F(y) *
/// prod_i M[y_i, x_i]; otherwise (M^{(x) d} F), i.e. new(x) = sum_y
/// prod_i M[x_i, y_i] * F(y).
fn apply_axis(f: &Func, m: &ScalarMatrix, var: usize, row: bool) -> Func {
    let d = f.arity();
    let mut values = vec![Scalar::zero(); 1 << d];
    let shift = d - 1 - var;
    for (a, slot) in values.iter_mut().enumerate() {
        let xb = (a >> shift) & 1;
        let mut acc = Scalar::zero();
        for yb in 0..2usize {
            let coeff = if row { m.get(yb, xb) } else { m.get(xb, yb) };
            if coeff.is_zero() {
                continue;
            }
            let src = (a & !(1 << shift)) | (yb << shift);
            acc = acc.add(&coeff.mul(f.get(src)));
        }
        *slot = acc;
    }
    Func::new(d, values)
}

/// Row-vector transform: F -> F M^{(x) arity}.
pub fn transform_func(f: &Func, m: &ScalarMatrix) -> Func {
    let mut out = f.clone();
    for v in 0..f.arity() {
        out = apply_axis(&out, m, v, true);
    }
    out
}

/// Column-vector transform: F -> M^{(x) arity} F.
pub fn transform_func_col(f: &Func, m: &ScalarMatrix) -> Func {
    let mut out = f.clone();
    for v in 0..f.arity() {
        out = apply_axis(&out, m, v, false);
    }
    out
}

/// Checks value invariance of a closed bipartite network under the paired
/// transform: side-0 functions map by M^{(x) s}, side-1 functions by
/// (M^{-1})^{(x) t}. Always true for invertible M; exposed as a self-test.
pub fn holographic_invariance_check(
    gadget: &Gadget,
    sides: &[u8],
    basis: &Basis2,
) -> Result<bool> {
    if !gadget.is_closed() {
        return Err(Error::Precondition("invariance check requires a closed network".into()));
    }
    if sides.len() != gadget.vertices.len() {
        return Err(Error::NotBipartite("missing side tags".into()));
    }
    for (i, &((v1, _), (v2, _))) in gadget.edges.iter().enumerate() {
        if sides[v1] == sides[v2] {
            return Err(Error::NotBipartite(format!(
                "edge {i} joins two side-{} vertices",
                sides[v1]
            )));
        }
    }
    let before = gadget.holant_value()?;
    let mut transformed = gadget.clone();
    for (v, f) in transformed.vertices.iter_mut().enumerate() {
        *f = if sides[v] == 0 {
            transform_func(f, basis.entries())
        } else {
            transform_func_col(f, basis.inverse())
        };
    }
    let after = transformed.holant_value()?;
    Ok(before == after)
}

/// k-fold matrix power of a binary function under the row {x1} reshape.
pub fn chain_power(b: &Func, k: u64) -> Func {
    assert_eq!(b.arity(), 2);
    Func::from_matrix2(&b.reshape(&[0]).pow(k))
}

/// Solves sum_j a_i^j b_i^{d-j} x_j = rhs_i for x_0..x_d, exactly.
/// Degenerate systems (colliding ratios a_i / b_i) give `SingularSystem`.
pub fn vandermonde_solve(pairs: &[(Scalar, Scalar)], rhs: &[Scalar]) -> Result<Vec<Scalar>> {
    if pairs.len() != rhs.len() || pairs.is_empty() {
        return Err(Error::Precondition(
            "need equally many (a, b) pairs and right-hand sides".into(),
        ));
    }
    let d = pairs.len() - 1;
    let mut rows = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let mut row = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let aj = a.pow(j as i64).expect("nonnegative power");
            let bj = b.pow((d - j) as i64).expect("nonnegative power");
            row.push(aj.mul(&bj));
        }
        rows.push(row);
    }
    ScalarMatrix::from_rows(rows).solve(rhs)
}

/// Outcome of the eigenstructure analysis of a binary function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JordanClass {
    /// Determinant zero (and the function is nonzero).
    Rank1,
    /// A repeated eigenvalue with a one-dimensional eigenspace.
    JordanBlock,
    /// The eigenvalue ratio is a root of unity of this order.
    DiagRatioOrder(u32),
    /// No power of the ratio up to the bound reaches 1.
    DiagRatioInfinite(u32),
}

/// Classifies a nonzero binary function by the Jordan shape of its matrix.
///
/// The analysis only needs the eigenvalue ratio r, which is scale
/// invariant: with t = tr^2 / det one has r + 1/r = t - 2, so r solves
/// r^2 - (t - 2) r + 1 = 0. The ratio itself is computed from the simple
/// square root of t(t-4) when available; when it is not, whether r is a
/// root of unity of order m is still decided exactly by comparing t - 2
/// with the real trace sums of the m-th roots, which stays inside the
/// field. `EigenvaluesOutsideField` is reported only when neither route
/// applies.
pub fn jordan_classify(ctx: &FieldCtx, b: &Func, order_bound: u32) -> Result<JordanClass> {
    assert_eq!(b.arity(), 2);
    if b.is_zero() {
        return Err(Error::Precondition("jordan classification needs a nonzero function".into()));
    }
    let m = b.reshape(&[0]);
    let det = m.det2();
    if det.is_zero() {
        return Ok(JordanClass::Rank1);
    }
    let tr = m.trace();
    let t = tr.mul(&tr).div(&det)?;
    let four = Scalar::from_int(4);
    if t == four {
        // repeated eigenvalue; scalar matrices have ratio 1
        let half_tr = tr.mul(&Scalar::from_ratio(1, 2));
        let shifted = m.add(&ScalarMatrix::identity(2).scalar_mul(&half_tr.neg()));
        if shifted.is_zero() {
            return Ok(JordanClass::DiagRatioOrder(1));
        }
        return Ok(JordanClass::JordanBlock);
    }
    if t.is_zero() {
        // r = -1 is the double root of the ratio equation
        return Ok(JordanClass::DiagRatioOrder(2));
    }
    let ratio = if m.get(0, 1).is_zero() || m.get(1, 0).is_zero() {
        // triangular: eigenvalues sit on the diagonal, no root needed
        Some(m.get(0, 0).div(m.get(1, 1))?)
    } else {
        let disc = t.mul(&t.sub(&four));
        sqrt_if_simple(ctx, &disc)?.map(|root| {
            let half = Scalar::from_ratio(1, 2);
            let r = t.sub(&Scalar::from_int(2)).add(&root).mul(&half);
            debug_assert!(!r.is_zero());
            r
        })
    };
    match ratio {
        Some(r) => {
            let mut power = Scalar::one();
            for k in 1..=order_bound {
                power = power.mul(&r);
                if power.is_one() {
                    return Ok(JordanClass::DiagRatioOrder(k));
                }
            }
            Ok(JordanClass::DiagRatioInfinite(order_bound))
        }
        None => {
            // the ratio is a primitive m-th root of unity exactly when
            // t - 2 equals zeta_m^j + zeta_m^{-j} with j coprime to m;
            // such a sum generates the real subfield of conductor m, so
            // only m with lcm(m, conductor(t)) within reach can match
            let target = t.sub(&Scalar::from_int(2));
            let nt = target.conductor() as u64;
            for m in 3..=order_bound {
                if crate::field::lcm(m as u64, nt) > 2 * ctx.cap as u64 {
                    continue;
                }
                for j in 1..=m / 2 {
                    if crate::field::gcd(j as u64, m as u64) != 1 {
                        continue;
                    }
                    let c = Scalar::zeta(m, j as i64).add(&Scalar::zeta(m, -(j as i64)));
                    if c == target {
                        return Ok(JordanClass::DiagRatioOrder(m));
                    }
                }
            }
            // a matching sum must lie in the field of t, so its order
            // divides twice the conductor of t and the filtered scan is
            // complete: no order up to the bound remains possible
            Ok(JordanClass::DiagRatioInfinite(order_bound))
        }
    }
}

/// The pair-replicated disequality pattern together with a gadget realizing
/// it from copies of the two-pair version.
pub struct D2d {
    pub table: Func,
    pub gadget: Gadget,
}

/// Builds the arity-2d function with value 1 exactly on the two assignments
/// (01)^d and (10)^d under the flat variable order (pairs are consecutive
/// variables). For d >= 3 the emitted gadget chains d-1 copies of the
/// two-pair table through disequality connectors.
pub fn build_d2d(d: usize) -> Result<D2d> {
    if d < 1 {
        return Err(Error::Precondition("need at least one pair".into()));
    }
    let table = {
        let mut f = Func::zero(2 * d);
        let mut a01 = 0usize;
        let mut a10 = 0usize;
        for p in 0..d {
            a01 |= 1 << (2 * d - 1 - (2 * p + 1));
            a10 |= 1 << (2 * d - 1 - 2 * p);
        }
        f.set(a01, Scalar::one());
        f.set(a10, Scalar::one());
        f
    };
    let gadget = match d {
        1 => Gadget::new(vec![Func::disequality2()], vec![], vec![(0, 0), (0, 1)])?,
        2 => Gadget::new(vec![table.clone()], vec![], vec![(0, 0), (0, 1), (0, 2), (0, 3)])?,
        _ => {
            let d22 = build_d2d(2)?.table;
            let neq = Func::disequality2();
            let copies = d - 1;
            let mut vertices: Vec<Func> = Vec::new();
            let mut edges = Vec::new();
            for _ in 0..copies {
                vertices.push(d22.clone());
            }
            for i in 0..copies - 1 {
                let conn = vertices.len();
                vertices.push(neq.clone());
                // second pair of copy i ends at slot 3; first pair of copy
                // i+1 starts at slot 0; the connector flips the shared bit
                edges.push(((i, 3), (conn, 0)));
                edges.push(((conn, 1), (i + 1, 0)));
            }
            // externals: pair 1 from copy 0; pair p+1 bridges copy p-1 and
            // copy p; final pair from the last copy
            let mut external = vec![(0, 0), (0, 1)];
            for i in 0..copies - 1 {
                external.push((i, 2));
                external.push((i + 1, 1));
            }
            external.push((copies - 1, 2));
            external.push((copies - 1, 3));
            Gadget::new(vertices, edges, external)?
        }
    };
    Ok(D2d { table, gadget })
}

/// The corner-pinning power identity: with N the regrouped matrix of the
/// one-free-corner shape and P the disequality-pair connector in the same
/// regrouping, (N P)^k = I + k s E_14. Returns (N P)^k after asserting the
/// identity exactly.
pub fn n_power_identity(s: &Scalar, k: u64) -> Result<ScalarMatrix> {
    let one = Scalar::one;
    let zero = Scalar::zero;
    let n = ScalarMatrix::from_rows(vec![
        vec![s.clone(), zero(), zero(), one()],
        vec![zero(), one(), zero(), zero()],
        vec![zero(), zero(), one(), zero()],
        vec![one(), zero(), zero(), zero()],
    ]);
    let p = regrouped_disequality_pair();
    let power = n.mul(&p).pow(k);
    let mut expected = ScalarMatrix::identity(4);
    expected.set(0, 3, Scalar::from_int(k as i64).mul(s));
    if power != expected {
        return Err(Error::AssertionFailed(format!(
            "corner power identity failed at k = {k}"
        )));
    }
    Ok(power)
}

/// The disequality-pair connector under the regrouped index convention used
/// by `n_power_identity`: disequalities attached along the chain wiring,
/// i.e. factors on variable pairs (x1, x4) and (x2, x3), displayed with
/// rows (x1, x3).
pub fn regrouped_disequality_pair() -> ScalarMatrix {
    let neq = Func::disequality2();
    let base = neq.tensor_product(&neq);
    // base factors sit on (v0, v1) and (v2, v3); route them to (x1, x4)
    // and (x2, x3)
    let f = base.permute_vars(&[0, 2, 3, 1]);
    f.reshape(&[0, 2])
}
