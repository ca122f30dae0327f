//! Canonical forms of transpose-fixed involutions and of transpose-closed
//! Klein four-subgroups.
//!
//! A transpose-fixed projective involution is either symmetric (then an
//! orthogonal basis rotates it to diag(i, -i)) or it is the antisymmetric
//! rotation [[0, 1], [-1, 0]] itself. A transpose-closed Klein
//! four-subgroup contains such a fixed point; rotating the fixed point to
//! the diagonal form forces the other two elements onto the antidiagonal,
//! and the transpose action on them decides between the two standard
//! triples: the axis triple (antidiagonal ratios +-1) and its twisted
//! variant (ratios +-i).

use crate::error::{Error, Result};
use crate::field::{sqrt_if_simple, FieldCtx, Scalar};
use crate::matrix::ScalarMatrix;

use super::{k4_subgroups, ProjMat};

/// Outcome of canonicalizing a transpose-fixed involution.
#[derive(Debug, Clone)]
pub enum Order2Canon {
    /// Orthogonal M with M^T g M proportional to diag(i, -i).
    DiagForm(ScalarMatrix),
    /// g is the antisymmetric rotation; no symmetric diagonalization exists.
    YForm,
}

/// Canonicalizes a projective involution g with g^T proportional to g.
pub fn canonicalize_order2(ctx: &FieldCtx, g: &ProjMat) -> Result<Order2Canon> {
    if g.is_identity() || !g.mul(g).is_identity() {
        return Err(Error::Precondition("element must have projective order 2".into()));
    }
    if g.transpose() != *g {
        return Err(Error::Precondition("element must be transpose-fixed".into()));
    }
    let rep = g.rep();
    let (a, b, c) = (rep.get(0, 0), rep.get(0, 1), rep.get(1, 0));
    if !a.add(rep.get(1, 1)).is_zero() {
        // scale-invariant: the trace of any lift of an involution vanishes
        return Err(Error::TraceNonzero);
    }
    if b != c {
        // transpose-fixed and trace zero but not symmetric: the canonical
        // representative is exactly the antisymmetric rotation
        debug_assert!(a.is_zero() && *c == b.neg());
        return Ok(Order2Canon::YForm);
    }
    if b.is_zero() {
        return Ok(Order2Canon::DiagForm(ScalarMatrix::identity(2)));
    }
    // symmetric [[a, b], [b, -a]]: eigenvalues +-D with D^2 = a^2 + b^2
    let d_sq = a.mul(a).add(&b.mul(b));
    let d = match sqrt_if_simple(ctx, &d_sq)? {
        Some(r) => r,
        None => return Err(Error::EigenvaluesOutsideField),
    };
    // eigenvector for +D, scaled so the first nonzero coordinate is 1
    let (x, y) = (Scalar::one(), d.sub(a).div(b)?);
    let s = x.mul(&x).add(&y.mul(&y));
    if s.is_zero() {
        // a symmetric involution always has anisotropic eigenvectors
        return Err(Error::SignatureMismatch(
            "isotropic eigenvector for a symmetric involution".into(),
        ));
    }
    let t = match sqrt_if_simple(ctx, &s)? {
        Some(r) => r,
        None => return Err(Error::EigenvaluesOutsideField),
    };
    let tinv = t.inv()?;
    let (x, y) = (x.mul(&tinv), y.mul(&tinv));
    let m = ScalarMatrix::mat2(x.clone(), y.clone(), y.clone(), x.neg());
    // postcondition: M is orthogonal and M^T g M is the diagonal involution
    if m.mul(&m.transpose()) != ScalarMatrix::identity(2) {
        return Err(Error::AssertionFailed("diagonalizing basis is not orthogonal".into()));
    }
    let conj = m.transpose().mul(rep).mul(&m);
    let diag = ProjMat::from_matrix(&conj).unwrap();
    if diag.rep() != &ScalarMatrix::mat2i(1, 0, 0, -1) {
        return Err(Error::AssertionFailed(
            "conjugated involution is not the diagonal form".into(),
        ));
    }
    Ok(Order2Canon::DiagForm(m))
}

/// Which standard triple a Klein four-subgroup canonicalizes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K4Kind {
    /// diag(i, -i), the antisymmetric rotation, and the symmetric
    /// antidiagonal (all projective).
    Q3,
    /// diag(i, -i) together with the transpose-swapped antidiagonal pair
    /// with ratios +-i.
    Q3Prime,
}

#[derive(Debug, Clone)]
pub struct K4Canon {
    pub kind: K4Kind,
    /// Orthogonal basis change mapping the subgroup onto the standard triple
    /// (identity when none was needed).
    pub basis: ScalarMatrix,
    /// The standard triple, diagonal element first.
    pub elements: [ProjMat; 3],
}

fn x_std() -> ProjMat {
    ProjMat::from_matrix(&ScalarMatrix::mat2i(1, 0, 0, -1)).unwrap()
}

fn y_std() -> ProjMat {
    ProjMat::from_matrix(&ScalarMatrix::mat2i(0, 1, -1, 0)).unwrap()
}

fn z_std() -> ProjMat {
    ProjMat::from_matrix(&ScalarMatrix::mat2i(0, 1, 1, 0)).unwrap()
}

fn q3p_b() -> ProjMat {
    ProjMat::from_matrix(&ScalarMatrix::mat2(
        0.into(),
        1.into(),
        Scalar::i(),
        0.into(),
    ))
    .unwrap()
}

fn q3p_c() -> ProjMat {
    ProjMat::from_matrix(&ScalarMatrix::mat2(
        0.into(),
        1.into(),
        Scalar::i().neg(),
        0.into(),
    ))
    .unwrap()
}

fn conjugate(m: &ScalarMatrix, g: &ProjMat) -> ProjMat {
    ProjMat::from_matrix(&m.transpose().mul(g.rep()).mul(m)).unwrap()
}

/// Finds a transpose-closed Klein four-subgroup of a closed projective set
/// and rotates it onto one of the two standard triples. Subgroups whose
/// rotation needs a root outside the capped field are skipped in favour of
/// later candidates. `NoClosedK4` when no four-subgroup is closed under
/// transposition (the large even dihedral exception).
pub fn canonicalize_k4(ctx: &FieldCtx, elems: &[ProjMat]) -> Result<K4Canon> {
    let candidates = k4_subgroups(elems);
    let closed: Vec<[&ProjMat; 3]> = candidates
        .iter()
        .map(|idx| [&elems[idx[0]], &elems[idx[1]], &elems[idx[2]]])
        .filter(|t| {
            t.iter().all(|g| {
                let gt = g.transpose();
                t.iter().any(|h| **h == gt)
            })
        })
        .collect();
    if closed.is_empty() {
        return Err(Error::NoClosedK4);
    }
    let mut last_err = None;
    for triple in closed {
        match canonicalize_k4_triple(ctx, &triple) {
            Ok(canon) => return Ok(canon),
            Err(e @ Error::EigenvaluesOutsideField) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one candidate was attempted"))
}

fn canonicalize_k4_triple(ctx: &FieldCtx, triple: &[&ProjMat; 3]) -> Result<K4Canon> {
    // the transpose action on three elements has a fixed point
    let fixed_pos = triple
        .iter()
        .position(|g| g.transpose() == **g)
        .expect("an involution of a 3-set has a fixed point");
    let fixed = triple[fixed_pos];
    let others: Vec<&ProjMat> = triple
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != fixed_pos)
        .map(|(_, g)| *g)
        .collect();

    match canonicalize_order2(ctx, fixed)? {
        Order2Canon::DiagForm(m) => {
            let b = conjugate(&m, others[0]);
            let c = conjugate(&m, others[1]);
            classify_antidiagonal_pair(&m, &b, &c)
        }
        Order2Canon::YForm => {
            // both remaining elements are symmetric; diagonalize the first.
            // The rotation has determinant -1, so it fixes the antisymmetric
            // element projectively.
            let b = others[0];
            match canonicalize_order2(ctx, b)? {
                Order2Canon::DiagForm(m) => {
                    let g2 = conjugate(&m, fixed);
                    let c2 = conjugate(&m, others[1]);
                    classify_antidiagonal_pair(&m, &g2, &c2)
                }
                Order2Canon::YForm => Err(Error::SignatureMismatch(
                    "two antisymmetric elements in one four-subgroup".into(),
                )),
            }
        }
    }
}

/// With the fixed point rotated to the diagonal form, the other two
/// elements must be antidiagonal; their transpose behaviour separates the
/// two standard triples.
fn classify_antidiagonal_pair(
    basis: &ScalarMatrix,
    b: &ProjMat,
    c: &ProjMat,
) -> Result<K4Canon> {
    for g in [b, c] {
        if !g.rep().get(0, 0).is_zero() || !g.rep().get(1, 1).is_zero() {
            return Err(Error::SignatureMismatch(
                "four-subgroup element is not antidiagonal after rotation".into(),
            ));
        }
    }
    // canonical antidiagonal reps are [[0, 1], [r, 0]]
    let rb = b.rep().get(1, 0).clone();
    let one = Scalar::one();
    let minus_one = Scalar::from_int(-1);
    let i = Scalar::i();
    let kind = if rb == one || rb == minus_one {
        K4Kind::Q3
    } else if rb == i || rb == i.neg() {
        K4Kind::Q3Prime
    } else {
        return Err(Error::SignatureMismatch(format!(
            "antidiagonal ratio {rb} is not a fourth root of unity"
        )));
    };
    let expected: [ProjMat; 3] = match kind {
        K4Kind::Q3 => [x_std(), y_std(), z_std()],
        K4Kind::Q3Prime => [x_std(), q3p_b(), q3p_c()],
    };
    // sanity: the rotated triple must equal the standard triple as a set
    let rotated = [x_std(), b.clone(), c.clone()];
    for g in &rotated {
        if !expected.contains(g) {
            return Err(Error::SignatureMismatch(
                "rotated four-subgroup does not match a standard triple".into(),
            ));
        }
    }
    Ok(K4Canon { kind, basis: basis.clone(), elements: expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_closure, Closure};

    fn ctx() -> FieldCtx {
        FieldCtx::default()
    }

    fn closure_of(gens: &[ProjMat]) -> Vec<ProjMat> {
        match group_closure(gens, 130).unwrap() {
            Closure::Group(e) => e,
            Closure::TooLarge => panic!("closure exceeded cap"),
        }
    }

    #[test]
    fn diagonal_involution_needs_no_rotation() {
        let x = x_std();
        match canonicalize_order2(&ctx(), &x).unwrap() {
            Order2Canon::DiagForm(m) => assert_eq!(m, ScalarMatrix::identity(2)),
            other => panic!("expected diagonal form, got {other:?}"),
        }
    }

    #[test]
    fn antidiagonal_symmetric_rotates_by_half_turn() {
        let z = z_std();
        match canonicalize_order2(&ctx(), &z).unwrap() {
            Order2Canon::DiagForm(m) => {
                // [[1, 1], [1, -1]] / sqrt(2)
                let sqrt2_inv = sqrt_if_simple(&ctx(), &Scalar::from_int(2))
                    .unwrap()
                    .unwrap()
                    .inv()
                    .unwrap();
                let expected = ScalarMatrix::mat2i(1, 1, 1, -1).scalar_mul(&sqrt2_inv);
                assert_eq!(m, expected);
                let conj = conjugate(&m, &z);
                assert_eq!(conj, x_std());
            }
            other => panic!("expected diagonal form, got {other:?}"),
        }
    }

    #[test]
    fn antisymmetric_is_y_form() {
        match canonicalize_order2(&ctx(), &y_std()).unwrap() {
            Order2Canon::YForm => {}
            other => panic!("expected YForm, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        // not an involution
        let r = ProjMat::from_matrix(&ScalarMatrix::mat2(
            1.into(),
            0.into(),
            0.into(),
            Scalar::zeta(3, 1),
        ))
        .unwrap();
        assert!(canonicalize_order2(&ctx(), &r).is_err());
        // involution but not transpose-fixed
        let b = q3p_b();
        assert!(b.mul(&b).is_identity());
        assert!(canonicalize_order2(&ctx(), &b).is_err());
    }

    #[test]
    fn standard_triple_canonicalizes_to_itself() {
        let elems = closure_of(&[x_std(), y_std(), z_std()]);
        let canon = canonicalize_k4(&ctx(), &elems).unwrap();
        assert_eq!(canon.kind, K4Kind::Q3);
        assert_eq!(canon.basis, ScalarMatrix::identity(2));
        assert_eq!(canon.elements[0], x_std());
    }

    #[test]
    fn twisted_triple_detected() {
        // X together with the transpose-swapped antidiagonal pair
        let sqrt2 = sqrt_if_simple(&ctx(), &Scalar::from_int(2)).unwrap().unwrap();
        let b_entry = Scalar::from_int(1).add(&Scalar::i()).div(&sqrt2).unwrap();
        let c_entry = Scalar::from_int(-1).add(&Scalar::i()).div(&sqrt2).unwrap();
        let b = ProjMat::from_matrix(&ScalarMatrix::mat2(
            0.into(),
            b_entry,
            c_entry,
            0.into(),
        ))
        .unwrap();
        assert!(b.mul(&b).is_identity());
        let elems = closure_of(&[x_std(), b]);
        assert_eq!(elems.len(), 4);
        let canon = canonicalize_k4(&ctx(), &elems).unwrap();
        assert_eq!(canon.kind, K4Kind::Q3Prime);
        assert_eq!(canon.basis, ScalarMatrix::identity(2));
    }

    #[test]
    fn antisymmetric_fixed_point_rotates_to_standard_triple() {
        // the four-subgroup built from the antisymmetric rotation and a
        // symmetric element with an anisotropic eigenvector: (3i/5, 4i/5)
        let a = Scalar::from_ratio(3, 5).mul(&Scalar::i());
        let b = Scalar::from_ratio(4, 5).mul(&Scalar::i());
        let zp = ProjMat::from_matrix(&ScalarMatrix::mat2(
            a.clone(),
            b.clone(),
            b.clone(),
            a.neg(),
        ))
        .unwrap();
        assert!(zp.mul(&zp).is_identity());
        let elems = closure_of(&[y_std(), zp]);
        assert_eq!(elems.len(), 4);
        let canon = canonicalize_k4(&ctx(), &elems).unwrap();
        assert_eq!(canon.kind, K4Kind::Q3);
        // the basis actually conjugates the subgroup onto the triple
        let rotated: Vec<ProjMat> =
            elems.iter().map(|g| conjugate(&canon.basis, g)).collect();
        for g in &canon.elements {
            assert!(rotated.contains(g));
        }
        assert!(canon.basis.mul(&canon.basis.transpose()) == ScalarMatrix::identity(2));
    }

    #[test]
    fn canonicalization_inside_larger_groups() {
        // the tetrahedral and octahedral closures contain the axis triple,
        // which must be found and fixed without any rotation
        let ctx = FieldCtx::default();
        let w = crate::field::parse_scalar(&ctx, "(1+i)/2").unwrap();
        let wc = w.conj();
        let r3 = ProjMat::from_matrix(&ScalarMatrix::mat2(w.clone(), wc.neg(), w, wc)).unwrap();
        let x = x_std();
        let y = y_std();
        let tet = closure_of(&[x.clone(), y.clone(), r3]);
        assert_eq!(tet.len(), 12);
        let canon = canonicalize_k4(&ctx, &tet).unwrap();
        assert_eq!(canon.kind, K4Kind::Q3);
        assert_eq!(canon.basis, ScalarMatrix::identity(2));

        let r4 = ProjMat::from_matrix(&ScalarMatrix::mat2(
            1.into(),
            0.into(),
            0.into(),
            Scalar::i(),
        ))
        .unwrap();
        let h = ProjMat::from_matrix(&ScalarMatrix::mat2i(1, 1, 1, -1)).unwrap();
        let oct = closure_of(&[r4, h]);
        assert_eq!(oct.len(), 24);
        let canon = canonicalize_k4(&ctx, &oct).unwrap();
        // some transpose-closed four-subgroup canonicalizes; verify the
        // orthogonality of the recovered basis
        assert!(matches!(canon.kind, K4Kind::Q3 | K4Kind::Q3Prime));
        assert_eq!(
            canon.basis.mul(&canon.basis.transpose()),
            ScalarMatrix::identity(2)
        );
    }

    #[test]
    fn no_closed_k4_in_large_even_dihedral() {
        // the even dihedral image with a rotated four-subgroup family can
        // fail to have a transpose-closed one; construct the order-8 image
        // from an order-4 diagonal rotation and a rotated flip
        let rot = ProjMat::from_matrix(&ScalarMatrix::mat2(
            1.into(),
            0.into(),
            0.into(),
            Scalar::i(),
        ))
        .unwrap();
        // flip conjugated so that no transpose-closed four-subgroup remains:
        // use an antidiagonal flip with an eighth-root ratio
        let flip = ProjMat::from_matrix(&ScalarMatrix::mat2(
            0.into(),
            1.into(),
            Scalar::zeta(8, 1),
            0.into(),
        ))
        .unwrap();
        let elems = closure_of(&[rot, flip]);
        assert_eq!(elems.len(), 8);
        match canonicalize_k4(&ctx(), &elems) {
            Err(Error::NoClosedK4) => {}
            other => panic!("expected NoClosedK4, got {other:?}"),
        }
    }
}
