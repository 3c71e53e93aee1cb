//! Overlattices of direct sums of root lattices given by glue vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{self, QMat, ZMat};
use super::{Convention, IntLattice, LatticeError};

/// Glue vectors in the coordinates of a direct sum of lattices (for root
/// lattices: the simple-root basis of each component, concatenated).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GlueCode {
    pub generators: Vec<Vec<BigRational>>,
}

impl GlueCode {
    pub fn new(generators: Vec<Vec<BigRational>>) -> Self {
        GlueCode { generators }
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// The lattice spanned by a direct sum and its glue vectors.
///
/// The result carries its basis in the coordinates of the direct sum, is
/// LLL-reduced, and has index equal to the glue group order, so
/// `det = det(sum) / index^2`.
pub fn overlattice_from_glue(
    components: &[IntLattice],
    glue: &GlueCode,
) -> Result<IntLattice, LatticeError> {
    let sum = IntLattice::direct_sum(components);
    let n = sum.rank();
    let gram = linalg::to_zmat(sum.gram());

    for (k, g) in glue.generators.iter().enumerate() {
        if g.len() != n {
            return Err(LatticeError::Dimension(format!(
                "glue vector {k} has length {}, expected {n}",
                g.len()
            )));
        }
        for row in &gram {
            let s: BigRational = row
                .iter()
                .zip(g)
                .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                .sum();
            if !s.is_integer() {
                return Err(LatticeError::GlueNotDual(k));
            }
        }
    }

    let denom = glue
        .generators
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = |v: &[BigRational]| -> Vec<BigInt> {
        v.iter().map(|x| (x * &denom).to_integer()).collect()
    };
    let mut rows: ZMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        denom.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    rows.extend(glue.generators.iter().map(|g| scaled(g)));
    let basis = linalg::row_basis(&rows);
    debug_assert_eq!(basis.len(), n);

    let d2 = &denom * &denom;
    let raw = linalg::z_mul(&linalg::z_mul(&basis, &gram), &linalg::transpose(&basis));
    let mut g: ZMat = Vec::with_capacity(n);
    for row in &raw {
        let mut r = Vec::with_capacity(n);
        for x in row {
            let (q, rem) = x.div_rem(&d2);
            if !rem.is_zero() {
                return Err(LatticeError::NonIntegral);
            }
            r.push(q);
        }
        g.push(r);
    }
    if g.iter().enumerate().any(|(i, r)| r[i].is_odd()) {
        return Err(LatticeError::GluedOdd);
    }

    let (t, reduced) = if sum.convention() == Convention::PositiveDefinite {
        linalg::lll_gram(&g)
    } else {
        (linalg::z_identity(n), g)
    };
    let new_basis = linalg::z_mul(&t, &basis);
    let gram_i64: Vec<Vec<i64>> = reduced
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().expect("glued Gram entry fits in i64"))
                .collect()
        })
        .collect();
    let in_sum: QMat = new_basis
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::new(x.clone(), denom.clone()))
                .collect()
        })
        .collect();
    let lat = IntLattice::new(gram_i64, sum.convention())?;
    Ok(lat.with_basis_in_ambient(in_sum))
}

/// Index of the direct sum in the glued lattice, `sqrt(det(sum) / det(glued))`.
pub fn glue_index(components: &[IntLattice], glued: &IntLattice) -> BigInt {
    let sum = IntLattice::direct_sum(components);
    (sum.det().abs() / glued.det().abs()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::super::roots::roots_of;
    use super::super::{standard_root_lattice, AdeTag};
    use super::*;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn e8_cubed_needs_no_glue() {
        let e8 = standard_root_lattice(AdeTag::E(8)).unwrap();
        let parts = vec![e8.clone(), e8.clone(), e8];
        let l = overlattice_from_glue(&parts, &GlueCode::default()).unwrap();
        assert_eq!(l.rank(), 24);
        assert!(l.is_unimodular());
    }

    #[test]
    fn d8_spinor_glue_gives_e8() {
        // spinor weight of D8: last row of the inverse Cartan matrix
        let d8 = standard_root_lattice(AdeTag::D(8)).unwrap();
        let inv = linalg::q_inverse(&linalg::to_qmat(&linalg::to_zmat(d8.gram()))).unwrap();
        let glue = GlueCode::new(vec![inv[7].clone()]);
        let l = overlattice_from_glue(std::slice::from_ref(&d8), &glue).unwrap();
        assert!(l.is_unimodular());
        assert_eq!(roots_of(&l).unwrap().len(), 240);
        assert_eq!(glue_index(&[d8], &l), BigInt::from(2));
    }

    #[test]
    fn vector_glue_on_d8_is_odd() {
        let d8 = standard_root_lattice(AdeTag::D(8)).unwrap();
        let inv = linalg::q_inverse(&linalg::to_qmat(&linalg::to_zmat(d8.gram()))).unwrap();
        let glue = GlueCode::new(vec![inv[0].clone()]);
        assert_eq!(
            overlattice_from_glue(&[d8], &glue),
            Err(LatticeError::GluedOdd)
        );
    }

    #[test]
    fn non_dual_glue_rejected() {
        let a1 = standard_root_lattice(AdeTag::A(1)).unwrap();
        let glue = GlueCode::new(vec![vec![frac(1, 3)]]);
        assert_eq!(
            overlattice_from_glue(&[a1], &glue),
            Err(LatticeError::GlueNotDual(0))
        );
    }

    #[test]
    fn a1_pair_glue_is_non_integral_or_odd() {
        // (1/2, 1/2) in A1 + A1 has norm 1: integral but odd
        let a1 = standard_root_lattice(AdeTag::A(1)).unwrap();
        let glue = GlueCode::new(vec![vec![frac(1, 2), frac(1, 2)]]);
        assert_eq!(
            overlattice_from_glue(&[a1.clone(), a1], &glue),
            Err(LatticeError::GluedOdd)
        );
    }
}
