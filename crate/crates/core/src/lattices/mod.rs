//! Exact arithmetic on even integral lattices: root systems, discriminant
//! forms, orthogonal complements, saturation and glued overlattices.
//!
//! Lattices are stored by Gram matrix. The internal sign convention is
//! positive definite; negative definite lattices from the geometry are
//! represented by their negatives.

#![allow(clippy::needless_range_loop)]

pub mod discriminant;
pub mod glue;
pub mod linalg;
pub mod roots;
pub mod types;

pub use discriminant::{
    discriminant_form, discriminant_group, DiscriminantForm, DiscriminantGroup,
};
pub use glue::{overlattice_from_glue, GlueCode};
pub use roots::{identify_root_type, roots_of, RootSystem};
pub use types::{AdeTag, RootType};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use linalg::{QMat, ZMat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("lattice is odd (diagonal entry {0} is odd)")]
    Odd(i64),
    #[error("lattice flagged positive definite has a non-positive leading minor")]
    NotPositiveDefinite,
    #[error("operation requires a positive definite lattice")]
    Indefinite,
    #[error("invalid ADE tag {0}")]
    InvalidTag(String),
    #[error("root count {count} in rank {rank} matches no ADE type")]
    UnknownComponent { rank: usize, count: usize },
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("glue vector {0} is not in the dual of the root lattice")]
    GlueNotDual(usize),
    #[error("glued lattice is not integral")]
    NonIntegral,
    #[error("glued lattice is odd")]
    GluedOdd,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    PositiveDefinite,
    Indefinite,
}

/// An even integral lattice given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    gram: Vec<Vec<i64>>,
    convention: Convention,
    basis_in_ambient: Option<QMat>,
}

impl IntLattice {
    pub fn new(gram: Vec<Vec<i64>>, convention: Convention) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        if let Some(&odd) = (0..n).map(|i| &gram[i][i]).find(|&&d| d % 2 != 0) {
            return Err(LatticeError::Odd(odd));
        }
        let z = linalg::to_zmat(&gram);
        if convention == Convention::PositiveDefinite {
            for k in 1..=n {
                let minor: ZMat = z[..k].iter().map(|r| r[..k].to_vec()).collect();
                if !linalg::det(&minor).is_positive() {
                    return Err(LatticeError::NotPositiveDefinite);
                }
            }
        } else if linalg::det(&z).is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(IntLattice {
            gram,
            convention,
            basis_in_ambient: None,
        })
    }

    pub fn positive_definite(gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        Self::new(gram, Convention::PositiveDefinite)
    }

    pub fn with_basis_in_ambient(mut self, basis: QMat) -> Self {
        self.basis_in_ambient = Some(basis);
        self
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn basis_in_ambient(&self) -> Option<&QMat> {
        self.basis_in_ambient.as_ref()
    }

    pub fn det(&self) -> BigInt {
        linalg::det(&linalg::to_zmat(&self.gram))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        inner_with(&self.gram, a, b)
    }

    pub fn norm(&self, v: &[i64]) -> i64 {
        self.inner(v, v)
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(parts: &[IntLattice]) -> IntLattice {
        let n: usize = parts.iter().map(IntLattice::rank).sum();
        let mut gram = vec![vec![0i64; n]; n];
        let mut off = 0;
        for p in parts {
            for (i, row) in p.gram.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    gram[off + i][off + j] = x;
                }
            }
            off += p.rank();
        }
        let convention = if parts
            .iter()
            .all(|p| p.convention == Convention::PositiveDefinite)
        {
            Convention::PositiveDefinite
        } else {
            Convention::Indefinite
        };
        IntLattice {
            gram,
            convention,
            basis_in_ambient: None,
        }
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn inner_with(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut acc = 0i64;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let row = &gram[i];
        let mut s = 0i64;
        for (j, &bj) in b.iter().enumerate() {
            s += row[j] * bj;
        }
        acc += ai * s;
    }
    acc
}

/// Cartan matrix of an ADE root lattice.
///
/// Node order: `A(n)` is a path; `D(n)` is the path `1..n-2` with nodes
/// `n-1` and `n` attached to `n-2`; `E(n)` follows Bourbaki, with node 2
/// attached to node 4 of the chain `1-3-4-5-...`.
pub fn standard_root_lattice(tag: AdeTag) -> Result<IntLattice, LatticeError> {
    tag.validate()?;
    let n = tag.rank();
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |a: usize, b: usize| {
        g[a - 1][b - 1] = -1;
        g[b - 1][a - 1] = -1;
    };
    match tag {
        AdeTag::A(_) => {
            for i in 1..n {
                edge(i, i + 1);
            }
        }
        AdeTag::D(_) => {
            for i in 1..n - 1 {
                edge(i, i + 1);
            }
            edge(n - 2, n);
        }
        AdeTag::E(_) => {
            edge(1, 3);
            edge(2, 4);
            for i in 3..n {
                edge(i, i + 1);
            }
        }
    }
    IntLattice::positive_definite(g)
}

/// Orthogonal complement of the span of `sub` (integer coordinates in the
/// ambient basis) inside `ambient`. The result is primitive and carries its
/// basis in ambient coordinates.
pub fn orthogonal_complement(
    sub: &[Vec<i64>],
    ambient: &IntLattice,
) -> Result<IntLattice, LatticeError> {
    let n = ambient.rank();
    if sub.iter().any(|v| v.len() != n) {
        return Err(LatticeError::Dimension(
            "sub vectors vs ambient rank".into(),
        ));
    }
    let subq = linalg::to_qmat(&linalg::to_zmat(sub));
    if linalg::q_rank(&subq) != sub.len() {
        return Err(LatticeError::Dependent);
    }
    let a: ZMat = sub
        .iter()
        .map(|s| {
            (0..n)
                .map(|j| BigInt::from(inner_col(ambient, s, j)))
                .collect()
        })
        .collect();
    let kernel = linalg::integer_kernel(&a, n);
    let (t, _) = linalg::lll_gram(&gram_of(&kernel, ambient));
    let basis = linalg::z_mul(&t, &kernel);
    let basis_i64 = to_i64_rows(&basis);
    let gram: Vec<Vec<i64>> = basis_i64
        .iter()
        .map(|u| basis_i64.iter().map(|v| ambient.inner(u, v)).collect())
        .collect();
    let conv = ambient.convention;
    let lat = IntLattice::new(gram, conv)?;
    Ok(lat.with_basis_in_ambient(linalg::to_qmat(&basis)))
}

fn inner_col(l: &IntLattice, s: &[i64], j: usize) -> i64 {
    s.iter().enumerate().map(|(i, &x)| x * l.gram[i][j]).sum()
}

fn gram_of(basis: &ZMat, ambient: &IntLattice) -> ZMat {
    let g = linalg::to_zmat(&ambient.gram);
    let bt = linalg::transpose(basis);
    linalg::z_mul(&linalg::z_mul(basis, &g), &bt)
}

pub(crate) fn to_i64_rows(m: &ZMat) -> Vec<Vec<i64>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().expect("coordinate fits in i64"))
                .collect()
        })
        .collect()
}

/// Primitive closure `(Q sub) ∩ ambient` of the span of `sub`, together with
/// the invariant factors (> 1) of closure / span.
pub fn saturate(
    sub: &[Vec<i64>],
    ambient: &IntLattice,
) -> Result<(Vec<Vec<i64>>, Vec<u64>), LatticeError> {
    let n = ambient.rank();
    if sub.iter().any(|v| v.len() != n) {
        return Err(LatticeError::Dimension(
            "sub vectors vs ambient rank".into(),
        ));
    }
    if sub.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let m = linalg::to_zmat(sub);
    let s = linalg::smith(&m);
    if s.diag.iter().any(Zero::is_zero) {
        return Err(LatticeError::Dependent);
    }
    let k = sub.len();
    let closure: ZMat = s.v_inv[..k].to_vec();
    let factors = s
        .diag
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("small invariant factor"))
        .collect();
    Ok((to_i64_rows(&closure), factors))
}
