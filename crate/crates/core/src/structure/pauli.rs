//! Exact expansion of even-arity functions over the four-matrix basis
//! {I, X, Y, Z} applied pairwise along a variable pairing, where
//! X = diag(i, -i), Y = [[0, 1], [-1, 0]], Z = [[0, i], [i, 0]].
//!
//! For one pair the base change from the table basis (e00, e01, e10, e11)
//! inverts in closed form:
//!
//! ```text
//! a_I = (v00 + v11) / 2        a_X = (v00 - v11) / (2i)
//! a_Y = (v01 - v10) / 2        a_Z = (v01 + v10) / (2i)
//! ```

use crate::error::Result;
use crate::field::Scalar;
use crate::tensor::Func;

use super::{require_even_arity, require_small_arity, Pairing};

/// Basis letters in index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLetter {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl BasisLetter {
    pub fn all() -> [BasisLetter; 4] {
        [BasisLetter::I, BasisLetter::X, BasisLetter::Y, BasisLetter::Z]
    }

    /// The 2x2 table of the letter as a binary function (rows = first
    /// variable).
    pub fn table(self) -> [Scalar; 4] {
        let i = Scalar::i();
        match self {
            BasisLetter::I => [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            BasisLetter::X => [i.clone(), Scalar::zero(), Scalar::zero(), i.neg()],
            BasisLetter::Y => [
                Scalar::zero(),
                Scalar::one(),
                Scalar::from_int(-1),
                Scalar::zero(),
            ],
            BasisLetter::Z => [Scalar::zero(), i.clone(), i, Scalar::zero()],
        }
    }
}

/// Coefficients of an arity-2d function over the pairwise letter basis:
/// index in base 4, pair 0 most significant.
#[derive(Debug, Clone)]
pub struct KBasisCoeffs {
    pub pairing: Pairing,
    pub coeffs: Vec<Scalar>,
}

impl KBasisCoeffs {
    pub fn letters_of(&self, index: usize) -> Vec<BasisLetter> {
        let d = self.pairing.pairs().len();
        (0..d)
            .map(|j| BasisLetter::all()[(index >> (2 * (d - 1 - j))) & 3])
            .collect()
    }

    pub fn coeff(&self, letters: &[BasisLetter]) -> &Scalar {
        let d = self.pairing.pairs().len();
        assert_eq!(letters.len(), d);
        let mut idx = 0usize;
        for (j, &l) in letters.iter().enumerate() {
            idx |= (l as usize) << (2 * (d - 1 - j));
        }
        &self.coeffs[idx]
    }

    /// Rebuilds the function table; inverse of [`pauli_expand`].
    pub fn reconstruct(&self) -> Func {
        let d2 = 2 * self.pairing.pairs().len();
        let mut out = Func::zero(d2);
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let letters = self.letters_of(idx);
            let mut term = Func::zero(d2);
            for a in 0..1usize << d2 {
                let mut v = c.clone();
                for (j, &(u, w)) in self.pairing.pairs().iter().enumerate() {
                    let bu = (a >> (d2 - 1 - u)) & 1;
                    let bw = (a >> (d2 - 1 - w)) & 1;
                    let t = letters[j].table();
                    v = v.mul(&t[bu << 1 | bw]);
                    if v.is_zero() {
                        break;
                    }
                }
                term.set(a, v);
            }
            out = out.add(&term);
        }
        out
    }
}

/// Expands a function of arity 2d <= 8 over the pairwise letter basis
/// attached along the given pairing. Exact; the reconstruction equals the
/// input.
pub fn pauli_expand(f: &Func, pairing: &Pairing) -> Result<KBasisCoeffs> {
    require_small_arity(f.arity())?;
    let d = require_even_arity(f.arity())?;
    assert_eq!(pairing.pairs().len(), d);
    let d2 = f.arity();
    // working table indexed by the original assignments; transform one pair
    // at a time from table coordinates to letter coordinates.
    let mut work: Vec<Scalar> = f.values().to_vec();
    let i = Scalar::i();
    let half = Scalar::from_ratio(1, 2);
    let half_over_i = half.div(&i).unwrap();
    for &(u, w) in pairing.pairs() {
        let su = d2 - 1 - u;
        let sw = d2 - 1 - w;
        let mut next = work.clone();
        for a in 0..work.len() {
            if (a >> su) & 1 != 0 || (a >> sw) & 1 != 0 {
                continue;
            }
            let v00 = &work[a];
            let v01 = &work[a | (1 << sw)];
            let v10 = &work[a | (1 << su)];
            let v11 = &work[a | (1 << su) | (1 << sw)];
            // letter index stored in the (u, w) bit positions: I=00, X=01,
            // Y=10, Z=11
            next[a] = v00.add(v11).mul(&half);
            next[a | (1 << sw)] = v00.sub(v11).mul(&half_over_i);
            next[a | (1 << su)] = v01.sub(v10).mul(&half);
            next[a | (1 << su) | (1 << sw)] = v01.add(v10).mul(&half_over_i);
        }
        work = next;
    }
    // gather into base-4 coefficient order
    let mut coeffs = vec![Scalar::zero(); 1 << d2];
    for (a, v) in work.iter().enumerate() {
        let mut idx = 0usize;
        for (j, &(u, w)) in pairing.pairs().iter().enumerate() {
            let bu = (a >> (d2 - 1 - u)) & 1;
            let bw = (a >> (d2 - 1 - w)) & 1;
            idx |= (bu << 1 | bw) << (2 * (d - 1 - j));
        }
        coeffs[idx] = v.clone();
    }
    Ok(KBasisCoeffs { pairing: pairing.clone(), coeffs })
}

/// True when some single nonzero scalar makes every coefficient real,
/// i.e. all pairwise ratios of nonzero coefficients are real.
pub fn reality_check(coeffs: &KBasisCoeffs) -> bool {
    let first = coeffs.coeffs.iter().find(|c| !c.is_zero());
    let Some(c0) = first else {
        return true;
    };
    let inv = c0.inv().unwrap();
    coeffs.coeffs.iter().all(|c| c.mul(&inv).is_real())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn letter_pair_func(a: BasisLetter, b: BasisLetter) -> Func {
        let ta = a.table();
        let tb = b.table();
        let fa = Func::new(2, ta.to_vec());
        let fb = Func::new(2, tb.to_vec());
        fa.tensor_product(&fb)
    }

    #[test]
    fn expansion_of_letter_sums() {
        use BasisLetter::*;
        let f = letter_pair_func(I, I).add(&letter_pair_func(X, X));
        let coeffs = pauli_expand(&f, &Pairing::consecutive(2)).unwrap();
        assert_eq!(coeffs.coeff(&[I, I]), &Scalar::one());
        assert_eq!(coeffs.coeff(&[X, X]), &Scalar::one());
        assert_eq!(coeffs.coeff(&[Y, Z]), &Scalar::zero());
        assert!(reality_check(&coeffs));
        assert_eq!(coeffs.reconstruct(), f);

        let g = f.add(&letter_pair_func(Y, Z).scalar_mul(&Scalar::i()));
        let coeffs = pauli_expand(&g, &Pairing::consecutive(2)).unwrap();
        assert_eq!(coeffs.coeff(&[Y, Z]), &Scalar::i());
        assert!(!reality_check(&coeffs));
    }

    #[test]
    fn reconstruction_round_trip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for &arity in &[2usize, 4, 6] {
            for _ in 0..5 {
                let values: Vec<Scalar> = (0..1usize << arity)
                    .map(|_| {
                        let re = rng.random_range(-3i64..4);
                        let im = rng.random_range(-3i64..4);
                        Scalar::from_int(re).add(&Scalar::from_int(im).mul(&Scalar::i()))
                    })
                    .collect();
                let f = Func::new(arity, values);
                let p = Pairing::consecutive(arity / 2);
                let coeffs = pauli_expand(&f, &p).unwrap();
                assert_eq!(coeffs.reconstruct(), f);
            }
        }
    }

    #[test]
    fn reality_flips_under_single_twist() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        // random real combination, twisted by a global phase
        let d = 2usize;
        let p = Pairing::consecutive(d);
        let mut coeffs = KBasisCoeffs {
            pairing: p.clone(),
            coeffs: (0..16)
                .map(|_| Scalar::from_int(rng.random_range(-2i64..3)))
                .collect(),
        };
        coeffs.coeffs[3] = Scalar::from_int(1); // ensure nonzero
        let f = coeffs.reconstruct().scalar_mul(&Scalar::zeta(8, 1));
        let e = pauli_expand(&f, &p).unwrap();
        assert!(reality_check(&e));
        // perturb one coefficient by i
        let mut bad = e.coeffs.clone();
        let k = bad.iter().position(|c| !c.is_zero()).unwrap();
        bad[k] = bad[k].mul(&Scalar::i());
        let bad = KBasisCoeffs { pairing: p.clone(), coeffs: bad };
        let f_bad = bad.reconstruct();
        assert!(!reality_check(&pauli_expand(&f_bad, &p).unwrap()));
    }

    #[test]
    fn quaternion_triple_traces_are_real() {
        let _ctx = FieldCtx::default();
        let letters = BasisLetter::all();
        for a in letters {
            for b in letters {
                for c in letters {
                    let ma = crate::matrix::ScalarMatrix::mat2(
                        a.table()[0].clone(),
                        a.table()[1].clone(),
                        a.table()[2].clone(),
                        a.table()[3].clone(),
                    );
                    let mb = crate::matrix::ScalarMatrix::mat2(
                        b.table()[0].clone(),
                        b.table()[1].clone(),
                        b.table()[2].clone(),
                        b.table()[3].clone(),
                    );
                    let mc = crate::matrix::ScalarMatrix::mat2(
                        c.table()[0].clone(),
                        c.table()[1].clone(),
                        c.table()[2].clone(),
                        c.table()[3].clone(),
                    );
                    assert!(ma.mul(&mb).mul(&mc).trace().is_real());
                }
            }
        }
    }
}
