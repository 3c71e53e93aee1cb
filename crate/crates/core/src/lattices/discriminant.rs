//! Discriminant groups `L*/L` and their quadratic forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::linalg;
use super::{IntLattice, LatticeError};

/// The finite abelian group `L*/L`, given by invariant factors `d_1 | d_2 | ...`
/// (each > 1) and generators of matching order, in lattice-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<Vec<BigRational>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    /// Whether every invariant factor is 2.
    pub fn is_two_elementary(&self) -> bool {
        self.invariant_factors.iter().all(|&d| d == 2)
    }

    /// All elements as coordinate tuples modulo the invariant factors, in
    /// lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..d).map(move |c| {
                        let mut e = e.clone();
                        e.push(c);
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// The rational vector representing an element.
    pub fn vector(&self, coords: &[u64]) -> Vec<BigRational> {
        let n = self.generators.first().map_or(0, Vec::len);
        let mut v = vec![BigRational::zero(); n];
        for (&c, g) in coords.iter().zip(&self.generators) {
            let c = BigRational::from_integer(BigInt::from(c));
            for (x, y) in v.iter_mut().zip(g) {
                *x += &c * y;
            }
        }
        v
    }
}

/// Discriminant quadratic form `q: L*/L -> Q/2Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantForm {
    pub group: DiscriminantGroup,
    gram: Vec<Vec<i64>>,
    sign: i8,
}

/// Serializable summary of a discriminant form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormSummary {
    pub invariant_factors: Vec<u64>,
    /// Sorted q-values of all elements, as strings `p/q` reduced mod 2.
    pub q_values: Vec<String>,
}

impl DiscriminantForm {
    /// `q(g)` of the element with the given coordinates, in `[0, 2)`.
    pub fn q(&self, coords: &[u64]) -> BigRational {
        let v = self.group.vector(coords);
        let mut norm = BigRational::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                norm += vi * vj * BigRational::from_integer(BigInt::from(self.gram[i][j]));
            }
        }
        if self.sign < 0 {
            norm = -norm;
        }
        mod_two(norm)
    }

    /// Bilinear form `b(g, h)` in `[0, 1)`.
    pub fn b(&self, g: &[u64], h: &[u64]) -> BigRational {
        let u = self.group.vector(g);
        let v = self.group.vector(h);
        let mut s = BigRational::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                s += ui * vj * BigRational::from_integer(BigInt::from(self.gram[i][j]));
            }
        }
        if self.sign < 0 {
            s = -s;
        }
        let f = s.floor();
        s - f
    }

    /// The form `-q`.
    pub fn negated(&self) -> DiscriminantForm {
        DiscriminantForm {
            group: self.group.clone(),
            gram: self.gram.clone(),
            sign: -self.sign,
        }
    }

    /// Multiset of q-values over all group elements, sorted.
    pub fn q_multiset(&self) -> Vec<BigRational> {
        let mut vals: Vec<BigRational> = self.group.elements().iter().map(|e| self.q(e)).collect();
        vals.sort();
        vals
    }

    /// Number of elements with each q-value.
    pub fn q_histogram(&self) -> BTreeMap<BigRational, usize> {
        let mut h = BTreeMap::new();
        for v in self.q_multiset() {
            *h.entry(v).or_insert(0) += 1;
        }
        h
    }

    pub fn summary(&self) -> FormSummary {
        FormSummary {
            invariant_factors: self.group.invariant_factors.clone(),
            q_values: self.q_multiset().iter().map(ToString::to_string).collect(),
        }
    }
}

fn mod_two(x: BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (&x / &two).floor();
    x - k * two
}

/// Invariant factors and generators of `L*/L`.
///
/// With `u G v = diag(d_i)`, the vectors `v e_i / d_i` lie in the dual and
/// generate the quotient, the `i`-th having order `d_i`.
pub fn discriminant_group(lattice: &IntLattice) -> DiscriminantGroup {
    let g = linalg::to_zmat(lattice.gram());
    let s = linalg::smith(&g);
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in s.diag.iter().enumerate() {
        assert!(
            !d.is_zero(),
            "Gram matrix of an IntLattice is nondegenerate"
        );
        if d.is_one() {
            continue;
        }
        invariant_factors.push(d.to_u64().expect("invariant factor fits in u64"));
        generators.push(
            s.v.iter()
                .map(|row| BigRational::new(row[i].clone(), d.clone()))
                .collect(),
        );
    }
    DiscriminantGroup {
        invariant_factors,
        generators,
    }
}

/// Discriminant form of an even lattice, with sign following the stored Gram.
pub fn discriminant_form(lattice: &IntLattice) -> Result<DiscriminantForm, LatticeError> {
    if let Some(row) = lattice
        .gram()
        .iter()
        .enumerate()
        .find(|(i, r)| r[*i].is_odd())
    {
        return Err(LatticeError::Odd(row.1[row.0]));
    }
    Ok(DiscriminantForm {
        group: discriminant_group(lattice),
        gram: lattice.gram().to_vec(),
        sign: 1,
    })
}
