//! Realizable binary functions, their projective group, and the
//! classification against the finite rotation groups.
//!
//! Binary functions are analyzed up to nonzero scalar multiples: a
//! [`ProjMat`] is a 2x2 matrix scaled so that its first nonzero entry
//! (row-major) is 1, which is a complete invariant for proportionality.
//! Closures of full-rank projective matrices that arise from realizable
//! binaries are finite images of rotation groups, so the classification is
//! a signature lookup on (order, number of order-2 elements, number of
//! Klein four-subgroups) plus the cyclic/dihedral subdivisions.

mod canonical;
mod enumerate;

pub use canonical::{canonicalize_k4, canonicalize_order2, K4Canon, K4Kind, Order2Canon};
pub use enumerate::{enumerate_binaries, EnumResult, RealizedBinary};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Scalar};
use crate::matrix::ScalarMatrix;
use crate::reduction::{jordan_classify, JordanClass};
use crate::tensor::Func;

/// A nonzero 2x2 matrix up to a nonzero scalar, canonically scaled.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjMat {
    rep: ScalarMatrix,
    det_rep: Scalar,
}

impl ProjMat {
    /// Canonicalizes a nonzero matrix; `None` for the zero matrix.
    pub fn from_matrix(m: &ScalarMatrix) -> Option<ProjMat> {
        assert_eq!((m.rows(), m.cols()), (2, 2));
        let lead = (0..4)
            .map(|k| m.get(k / 2, k % 2))
            .find(|v| !v.is_zero())?
            .clone();
        let inv = lead.inv().unwrap();
        let rep = m.scalar_mul(&inv);
        let det_rep = rep.det2();
        Some(ProjMat { rep, det_rep })
    }

    pub fn from_func(f: &Func) -> Option<ProjMat> {
        assert_eq!(f.arity(), 2);
        ProjMat::from_matrix(&f.reshape(&[0]))
    }

    pub fn identity() -> ProjMat {
        ProjMat::from_matrix(&ScalarMatrix::identity(2)).unwrap()
    }

    pub fn rep(&self) -> &ScalarMatrix {
        &self.rep
    }

    /// Determinant of the canonical representative.
    pub fn det_rep(&self) -> &Scalar {
        &self.det_rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep == ScalarMatrix::identity(2)
    }

    pub fn is_full_rank(&self) -> bool {
        !self.det_rep.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.rep.get(0, 1).is_zero() && self.rep.get(1, 0).is_zero()
    }

    pub fn mul(&self, other: &ProjMat) -> ProjMat {
        ProjMat::from_matrix(&self.rep.mul(&other.rep))
            .expect("product of nonzero projective classes of full-rank factors is nonzero")
    }

    pub fn transpose(&self) -> ProjMat {
        ProjMat::from_matrix(&self.rep.transpose()).unwrap()
    }

    /// Projective inverse via the adjugate (full rank required).
    pub fn inverse(&self) -> Result<ProjMat> {
        if !self.is_full_rank() {
            return Err(Error::Precondition("projective inverse needs full rank".into()));
        }
        let adj = ScalarMatrix::mat2(
            self.rep.get(1, 1).clone(),
            self.rep.get(0, 1).neg(),
            self.rep.get(1, 0).neg(),
            self.rep.get(0, 0).clone(),
        );
        Ok(ProjMat::from_matrix(&adj).unwrap())
    }

    pub fn to_func(&self) -> Func {
        Func::from_matrix2(&self.rep)
    }
}

impl std::fmt::Debug for ProjMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]~",
            self.rep.get(0, 0),
            self.rep.get(0, 1),
            self.rep.get(1, 0),
            self.rep.get(1, 1)
        )
    }
}

/// Least k <= bound with M^k proportional to the identity; `None` beyond.
pub fn proj_order(m: &ProjMat, bound: u32) -> Option<u32> {
    let mut cur = m.clone();
    for k in 1..=bound {
        if cur.is_identity() {
            return Some(k);
        }
        cur = cur.mul(m);
    }
    None
}

/// Multiplicative closure with projective canonicalization.
pub enum Closure {
    Group(Vec<ProjMat>),
    TooLarge,
}

pub fn group_closure(gens: &[ProjMat], cap: usize) -> Result<Closure> {
    for g in gens {
        if !g.is_full_rank() {
            return Err(Error::Precondition("closure generators must be full rank".into()));
        }
    }
    let mut elems = vec![ProjMat::identity()];
    let mut frontier = 0usize;
    while frontier < elems.len() {
        let cur = elems[frontier].clone();
        frontier += 1;
        for g in gens {
            let prod = cur.mul(g);
            if !elems.contains(&prod) {
                elems.push(prod);
                if elems.len() > cap {
                    return Ok(Closure::TooLarge);
                }
            }
        }
    }
    Ok(Closure::Group(elems))
}

/// Indices (into `elems`) of order-2 elements.
pub fn order2_elements(elems: &[ProjMat]) -> Vec<usize> {
    elems
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_identity() && e.mul(e).is_identity())
        .map(|(i, _)| i)
        .collect()
}

/// All Klein four-subgroups, as index triples of their order-2 elements.
pub fn k4_subgroups(elems: &[ProjMat]) -> Vec<[usize; 3]> {
    let o2 = order2_elements(elems);
    let mut out = Vec::new();
    for a in 0..o2.len() {
        for b in a + 1..o2.len() {
            let prod = elems[o2[a]].mul(&elems[o2[b]]);
            for c in b + 1..o2.len() {
                if elems[o2[c]] == prod {
                    out.push([o2[a], o2[b], o2[c]]);
                }
            }
        }
    }
    out
}

/// Whether every element's transpose lies in the set.
pub fn transpose_closure_check(elems: &[ProjMat]) -> bool {
    elems.iter().all(|e| elems.contains(&e.transpose()))
}

/// A transpose-fixed order-2 element, when one exists. Guaranteed whenever
/// the number of order-2 elements is odd, since transposition pairs them up.
pub fn transpose_fixed_order2(elems: &[ProjMat]) -> Option<ProjMat> {
    order2_elements(elems)
        .into_iter()
        .map(|i| &elems[i])
        .find(|e| e.transpose() == **e)
        .cloned()
}

/// The nine-way taxonomy of outcomes, plus the short-circuit resolutions
/// and the over-cap marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseLabel {
    Resolved(ResolvedReason),
    C1,
    C2,
    CnHigh(u32),
    DihedralOdd(u32),
    K4,
    DihedralLargeEven(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    TooLarge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolvedReason {
    Rank1Found,
    JordanBlockFound,
    InfiniteOrderFound,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseLabel::Resolved(ResolvedReason::Rank1Found) => write!(f, "resolved:rank1"),
            CaseLabel::Resolved(ResolvedReason::JordanBlockFound) => {
                write!(f, "resolved:jordan-block")
            }
            CaseLabel::Resolved(ResolvedReason::InfiniteOrderFound) => {
                write!(f, "resolved:infinite-order")
            }
            CaseLabel::C1 => write!(f, "cyclic-1"),
            CaseLabel::C2 => write!(f, "cyclic-2"),
            CaseLabel::CnHigh(n) => write!(f, "cyclic-{n}"),
            CaseLabel::DihedralOdd(n) => write!(f, "dihedral-odd-{n}"),
            CaseLabel::K4 => write!(f, "klein-four"),
            CaseLabel::DihedralLargeEven(n) => write!(f, "dihedral-even-{n}"),
            CaseLabel::Tetrahedral => write!(f, "tetrahedral"),
            CaseLabel::Octahedral => write!(f, "octahedral"),
            CaseLabel::Icosahedral => write!(f, "icosahedral"),
            CaseLabel::TooLarge => write!(f, "too-large"),
        }
    }
}

/// Classifies a closed projective matrix set by its rotation-group
/// signature. `SignatureMismatch` means the input is not actually the image
/// of a finite rotation group, which indicates an upstream bug.
pub fn classify_group(elems: &[ProjMat]) -> Result<CaseLabel> {
    let n = elems.len();
    if n == 0 {
        return Err(Error::SignatureMismatch("empty element set".into()));
    }
    let o2 = order2_elements(elems).len();
    let k4 = k4_subgroups(elems).len();
    if n == 1 {
        return Ok(CaseLabel::C1);
    }
    if n == 2 {
        if o2 == 1 {
            return Ok(CaseLabel::C2);
        }
        return Err(Error::SignatureMismatch(format!("order 2 with {o2} involutions")));
    }
    let cyclic = elems.iter().any(|e| proj_order(e, n as u32) == Some(n as u32));
    if cyclic {
        let expected_o2 = if n.is_multiple_of(2) { 1 } else { 0 };
        if o2 == expected_o2 && k4 == 0 {
            return Ok(CaseLabel::CnHigh(n as u32));
        }
        return Err(Error::SignatureMismatch(format!(
            "cyclic order {n} with {o2} involutions, {k4} four-subgroups"
        )));
    }
    match (n, o2, k4) {
        (4, 3, 1) => return Ok(CaseLabel::K4),
        (12, 3, 1) => return Ok(CaseLabel::Tetrahedral),
        (24, 9, 4) => return Ok(CaseLabel::Octahedral),
        (60, 15, 5) => return Ok(CaseLabel::Icosahedral),
        _ => {}
    }
    if n.is_multiple_of(2) {
        let m = n / 2;
        if m >= 3 && m % 2 == 1 && o2 == m && k4 == 0 {
            return Ok(CaseLabel::DihedralOdd(m as u32));
        }
        if m > 2 && m.is_multiple_of(2) && o2 == m + 1 && k4 == m / 2 {
            return Ok(CaseLabel::DihedralLargeEven(m as u32));
        }
    }
    Err(Error::SignatureMismatch(format!(
        "order {n} with {o2} involutions and {k4} four-subgroups matches no rotation group"
    )))
}

/// Canonical-form attachment of a classification report.
#[derive(Debug, Clone)]
pub enum CanonicalForms {
    /// An orthogonal basis rotating a transpose-fixed involution to the
    /// diagonal form.
    Order2Diag { basis: ScalarMatrix },
    /// The transpose-fixed involution is the antisymmetric rotation itself.
    Order2Y,
    /// A transpose-closed Klein four-subgroup in one of the two standard
    /// triples, with the orthogonal basis change used.
    K4 { kind: K4Kind, basis: ScalarMatrix, elements: Vec<ProjMat> },
}

/// Outcome of the full analysis pipeline on a function set.
pub struct GroupReport {
    pub label: CaseLabel,
    pub binaries: Vec<RealizedBinary>,
    pub elements: Vec<ProjMat>,
    pub order2_count: usize,
    pub k4_subgroups: Vec<[usize; 3]>,
    pub canonical: Option<CanonicalForms>,
    pub budget: usize,
    pub truncated: bool,
    pub notes: Vec<String>,
}

/// Bounds for the pipeline: closure cap and the root-of-unity search bound.
#[derive(Clone, Copy)]
pub struct PipelineConfig {
    pub closure_cap: usize,
    pub order_bound: u32,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        // the largest rotation-group image has order 60, so 130 leaves
        // headroom; the order bound is twice the conductor cap
        PipelineConfig { closure_cap: 130, order_bound: 480 }
    }
}

/// Full pipeline: enumerate realizable binaries, short-circuit on a rank-1
/// or non-unitarizable binary, otherwise close projectively and classify,
/// attaching canonical forms where the theory provides them.
pub fn pipeline_classify(
    ctx: &FieldCtx,
    fset: &[Func],
    budget: usize,
    config: &PipelineConfig,
) -> Result<GroupReport> {
    let en = enumerate_binaries(fset, budget)?;
    let mut notes = Vec::new();

    let report = |label: CaseLabel,
                      elements: Vec<ProjMat>,
                      canonical: Option<CanonicalForms>,
                      notes: Vec<String>| {
        let order2 = order2_elements(&elements).len();
        let k4s = k4_subgroups(&elements);
        GroupReport {
            label,
            binaries: en.binaries.clone(),
            elements,
            order2_count: order2,
            k4_subgroups: k4s,
            canonical,
            budget,
            truncated: en.truncated,
            notes,
        }
    };

    // rank-1 short-circuit
    if en
        .binaries
        .iter()
        .any(|b| ProjMat::from_func(&b.func).is_some_and(|p| !p.is_full_rank()))
    {
        return Ok(report(
            CaseLabel::Resolved(ResolvedReason::Rank1Found),
            Vec::new(),
            None,
            notes,
        ));
    }

    // eigenstructure short-circuits, in realization order
    for b in &en.binaries {
        match jordan_classify(ctx, &b.func, config.order_bound)? {
            JordanClass::JordanBlock => {
                return Ok(report(
                    CaseLabel::Resolved(ResolvedReason::JordanBlockFound),
                    Vec::new(),
                    None,
                    notes,
                ));
            }
            JordanClass::DiagRatioInfinite(bound) => {
                notes.push(format!("eigenvalue ratio exceeded order bound {bound}"));
                return Ok(report(
                    CaseLabel::Resolved(ResolvedReason::InfiniteOrderFound),
                    Vec::new(),
                    None,
                    notes,
                ));
            }
            JordanClass::Rank1 => unreachable!("rank-1 handled above"),
            JordanClass::DiagRatioOrder(_) => {}
        }
    }

    let gens: Vec<ProjMat> = en
        .binaries
        .iter()
        .map(|b| ProjMat::from_func(&b.func).expect("nonzero by construction"))
        .collect();
    let elements = match group_closure(&gens, config.closure_cap)? {
        Closure::TooLarge => {
            return Ok(report(CaseLabel::TooLarge, Vec::new(), None, notes));
        }
        Closure::Group(elems) => elems,
    };
    if !transpose_closure_check(&elements) {
        return Err(Error::SignatureMismatch(
            "realized closure is not transpose-closed".into(),
        ));
    }
    let label = classify_group(&elements)?;

    let canonical = match &label {
        CaseLabel::K4
        | CaseLabel::Tetrahedral
        | CaseLabel::Octahedral
        | CaseLabel::Icosahedral
        | CaseLabel::DihedralLargeEven(_) => match canonicalize_k4(ctx, &elements) {
            Ok(canon) => Some(CanonicalForms::K4 {
                kind: canon.kind,
                basis: canon.basis,
                elements: canon.elements.to_vec(),
            }),
            Err(Error::NoClosedK4) => {
                notes.push("no transpose-closed Klein four-subgroup".into());
                None
            }
            Err(Error::EigenvaluesOutsideField) => {
                notes.push("normalization unsupported: rotation needs a root outside the capped field".into());
                None
            }
            Err(e) => return Err(e),
        },
        _ => match transpose_fixed_order2(&elements) {
            Some(g) => match canonicalize_order2(ctx, &g) {
                Ok(Order2Canon::DiagForm(basis)) => Some(CanonicalForms::Order2Diag { basis }),
                Ok(Order2Canon::YForm) => Some(CanonicalForms::Order2Y),
                Err(Error::EigenvaluesOutsideField) => {
                    notes.push("normalization unsupported: rotation needs a root outside the capped field".into());
                    None
                }
                Err(e) => return Err(e),
            },
            None => None,
        },
    };

    Ok(report(label, elements, canonical, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(a: i64, b: i64, c: i64, d: i64) -> ProjMat {
        ProjMat::from_matrix(&ScalarMatrix::mat2i(a, b, c, d)).unwrap()
    }

    fn x_mat() -> ProjMat {
        // diag(i, -i), canonically diag(1, -1)
        ProjMat::from_matrix(&ScalarMatrix::mat2(
            Scalar::i(),
            0.into(),
            0.into(),
            Scalar::i().neg(),
        ))
        .unwrap()
    }

    fn y_mat() -> ProjMat {
        pm(0, 1, -1, 0)
    }

    fn z_mat() -> ProjMat {
        ProjMat::from_matrix(&ScalarMatrix::mat2(
            0.into(),
            Scalar::i(),
            Scalar::i(),
            0.into(),
        ))
        .unwrap()
    }

    #[test]
    fn canonical_scaling() {
        let m = x_mat();
        assert_eq!(m.rep(), &ScalarMatrix::mat2i(1, 0, 0, -1));
        assert_eq!(m.det_rep(), &Scalar::from_int(-1));
        assert!(ProjMat::from_matrix(&ScalarMatrix::zero(2, 2)).is_none());
    }

    #[test]
    fn projective_orders() {
        assert_eq!(proj_order(&ProjMat::identity(), 10), Some(1));
        let neq = pm(0, 1, 1, 0);
        assert_eq!(proj_order(&neq, 10), Some(2));
        assert_eq!(proj_order(&x_mat(), 10), Some(2));
        let d5 = ProjMat::from_matrix(&ScalarMatrix::mat2(
            1.into(),
            0.into(),
            0.into(),
            Scalar::zeta(5, 1),
        ))
        .unwrap();
        assert_eq!(proj_order(&d5, 10), Some(5));
        let d12 = pm(1, 0, 0, 2);
        assert_eq!(proj_order(&d12, 50), None);
    }

    #[test]
    fn quaternion_image_is_klein_four() {
        let closure = match group_closure(&[x_mat(), y_mat(), z_mat()], 130).unwrap() {
            Closure::Group(e) => e,
            Closure::TooLarge => panic!("unexpected"),
        };
        assert_eq!(closure.len(), 4);
        assert_eq!(classify_group(&closure).unwrap(), CaseLabel::K4);
        // the product of any two distinct non-identity elements is the third
        assert_eq!(x_mat().mul(&y_mat()), z_mat());
        assert_eq!(y_mat().mul(&z_mat()), x_mat());
        assert_eq!(z_mat().mul(&x_mat()), y_mat());
        assert!(transpose_closure_check(&closure));
        // X is symmetric hence transpose-fixed
        assert_eq!(transpose_fixed_order2(&closure), Some(x_mat()));
    }

    #[test]
    fn cyclic_closures() {
        for n in [3u32, 4, 5, 6] {
            let gen = ProjMat::from_matrix(&ScalarMatrix::mat2(
                1.into(),
                0.into(),
                0.into(),
                Scalar::zeta(n, 1),
            ))
            .unwrap();
            let elems = match group_closure(&[gen], 130).unwrap() {
                Closure::Group(e) => e,
                _ => panic!(),
            };
            assert_eq!(elems.len(), n as usize);
            assert_eq!(classify_group(&elems).unwrap(), CaseLabel::CnHigh(n));
            let o2 = order2_elements(&elems).len();
            assert_eq!(o2, if n % 2 == 0 { 1 } else { 0 });
        }
    }

    #[test]
    fn closure_cap() {
        let gen = pm(1, 0, 0, 2);
        assert!(matches!(group_closure(&[gen], 20).unwrap(), Closure::TooLarge));
        let rank1 = pm(1, 0, 0, 0);
        assert!(group_closure(&[rank1], 20).is_err());
    }

    #[test]
    fn dihedral_signatures() {
        // odd dihedral image: rotation of order 3 plus a flip
        let rot = ProjMat::from_matrix(&ScalarMatrix::mat2(
            1.into(),
            0.into(),
            0.into(),
            Scalar::zeta(3, 1),
        ))
        .unwrap();
        let flip = pm(0, 1, 1, 0);
        let elems = match group_closure(&[rot, flip], 130).unwrap() {
            Closure::Group(e) => e,
            _ => panic!(),
        };
        assert_eq!(elems.len(), 6);
        assert_eq!(classify_group(&elems).unwrap(), CaseLabel::DihedralOdd(3));

        // large even dihedral image: rotation of order 4 plus a flip
        let rot = ProjMat::from_matrix(&ScalarMatrix::mat2(
            1.into(),
            0.into(),
            0.into(),
            Scalar::zeta(4, 1),
        ))
        .unwrap();
        let flip = pm(0, 1, 1, 0);
        let elems = match group_closure(&[rot, flip], 130).unwrap() {
            Closure::Group(e) => e,
            _ => panic!(),
        };
        assert_eq!(elems.len(), 8);
        assert_eq!(classify_group(&elems).unwrap(), CaseLabel::DihedralLargeEven(4));
    }

    #[test]
    fn octahedral_signature() {
        // a 4-fold rotation together with the involution about an adjacent
        // edge axis generates the order-24 rotation image
        let r4 = ProjMat::from_matrix(&ScalarMatrix::mat2(
            1.into(),
            0.into(),
            0.into(),
            Scalar::i(),
        ))
        .unwrap();
        let h = ProjMat::from_matrix(&ScalarMatrix::mat2i(1, 1, 1, -1)).unwrap();
        let elems = match group_closure(&[r4, h], 130).unwrap() {
            Closure::Group(e) => e,
            _ => panic!(),
        };
        assert_eq!(elems.len(), 24);
        assert_eq!(classify_group(&elems).unwrap(), CaseLabel::Octahedral);
    }

    #[test]
    fn icosahedral_signature() {
        // unit icosian generators: (1+i+j+k)/2 and (p + i/p + j)/2 with p
        // the golden ratio, mapped to 2x2 form
        let ctx = FieldCtx::default();
        let w = crate::field::parse_scalar(&ctx, "(1+i)/2").unwrap();
        let wc = w.conj();
        let a = ProjMat::from_matrix(&ScalarMatrix::mat2(w.clone(), wc.neg(), w, wc)).unwrap();
        let sqrt5 = crate::field::sqrt_if_simple(&ctx, &Scalar::from_int(5))
            .unwrap()
            .unwrap();
        let half = Scalar::from_ratio(1, 2);
        let phi = Scalar::one().add(&sqrt5).mul(&half);
        let phi_inv = sqrt5.sub(&Scalar::one()).mul(&half);
        // quaternion (phi + phi^{-1} i + j) / 2
        let b00 = phi.add(&phi_inv.mul(&Scalar::i())).mul(&half);
        let b = ProjMat::from_matrix(&ScalarMatrix::mat2(
            b00.clone(),
            half.clone(),
            half.neg(),
            b00.conj(),
        ))
        .unwrap();
        let elems = match group_closure(&[a, b], 130).unwrap() {
            Closure::Group(e) => e,
            Closure::TooLarge => panic!("exceeded cap"),
        };
        assert_eq!(elems.len(), 60);
        assert_eq!(classify_group(&elems).unwrap(), CaseLabel::Icosahedral);
    }

    #[test]
    fn tetrahedral_signature() {
        // adjoin the three-cycle rotating the quaternion axes
        let ctx = FieldCtx::default();
        let w = crate::field::parse_scalar(&ctx, "(1+i)/2").unwrap();
        let wc = w.conj();
        let r = ProjMat::from_matrix(&ScalarMatrix::mat2(w.clone(), wc.neg(), w, wc)).unwrap();
        let elems = match group_closure(&[x_mat(), y_mat(), r], 130).unwrap() {
            Closure::Group(e) => e,
            _ => panic!(),
        };
        assert_eq!(elems.len(), 12);
        assert_eq!(classify_group(&elems).unwrap(), CaseLabel::Tetrahedral);
    }

    #[test]
    fn signature_mismatch_detected() {
        // a set that is not closed: {I, X, Y} without Z
        let elems = vec![ProjMat::identity(), x_mat(), y_mat()];
        assert!(classify_group(&elems).is_err());
    }

    /// Independent classifier for groups of order <= 12, built from the
    /// multiplication table alone: the order multiset and commutativity
    /// pin the isomorphism type without any of the production code paths.
    fn oracle_label(elems: &[ProjMat]) -> CaseLabel {
        let n = elems.len();
        let order_of = |g: &ProjMat| -> usize {
            let mut cur = g.clone();
            for k in 1..=n {
                if cur.is_identity() {
                    return k;
                }
                cur = cur.mul(g);
            }
            panic!("element order exceeds group order");
        };
        let mut orders: Vec<usize> = elems.iter().map(order_of).collect();
        orders.sort();
        let abelian = elems
            .iter()
            .all(|a| elems.iter().all(|b| a.mul(b) == b.mul(a)));
        let max_order = *orders.last().unwrap();
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        match (n, abelian) {
            (1, _) => CaseLabel::C1,
            (2, _) => CaseLabel::C2,
            (_, true) if max_order == n => CaseLabel::CnHigh(n as u32),
            (4, true) => CaseLabel::K4,
            (6, false) => CaseLabel::DihedralOdd(3),
            (8, false) if involutions == 5 => CaseLabel::DihedralLargeEven(4),
            (10, false) => CaseLabel::DihedralOdd(5),
            (12, false) if involutions == 7 => CaseLabel::DihedralLargeEven(6),
            (12, false) if involutions == 3 && max_order == 3 => CaseLabel::Tetrahedral,
            other => panic!("oracle cannot label {other:?} with orders {orders:?}"),
        }
    }

    #[test]
    fn classification_agrees_with_order_multiset_oracle() {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let diag = |z: Scalar| {
            ProjMat::from_matrix(&ScalarMatrix::mat2(1.into(), 0.into(), 0.into(), z)).unwrap()
        };
        let flip = pm(0, 1, 1, 0);
        let ctx = FieldCtx::default();
        let w = crate::field::parse_scalar(&ctx, "(1+i)/2").unwrap();
        let wc = w.conj();
        let tet_r = ProjMat::from_matrix(&ScalarMatrix::mat2(w.clone(), wc.neg(), w, wc)).unwrap();
        let fixtures: Vec<Vec<ProjMat>> = vec![
            vec![ProjMat::identity()],
            vec![flip.clone()],
            vec![diag(Scalar::zeta(3, 1))],
            vec![diag(Scalar::zeta(4, 1))],
            vec![diag(Scalar::zeta(5, 1))],
            vec![diag(Scalar::zeta(6, 1))],
            vec![x_mat(), y_mat()],
            vec![diag(Scalar::zeta(3, 1)), flip.clone()],
            vec![diag(Scalar::zeta(4, 1)), flip.clone()],
            vec![diag(Scalar::zeta(5, 1)), flip.clone()],
            vec![diag(Scalar::zeta(6, 1)), flip],
            vec![x_mat(), y_mat(), tet_r],
        ];
        for gens in fixtures {
            let mut elems = match group_closure(&gens, 130).unwrap() {
                Closure::Group(e) => e,
                Closure::TooLarge => panic!("fixture exceeded cap"),
            };
            assert!(elems.len() <= 12);
            let expected = oracle_label(&elems);
            assert_eq!(classify_group(&elems).unwrap(), expected);
            // permutation invariance
            elems.shuffle(&mut rng);
            assert_eq!(classify_group(&elems).unwrap(), expected);
        }
    }
}
