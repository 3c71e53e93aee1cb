//! Genus-one fibrations from primitive embeddings of `D4` into Niemeier
//! lattices.
//!
//! Each embedding `D4 -> N` has orthogonal complement `M` of rank 20, which
//! plays the role of the essential lattice: its root sublattice `R(M)` gives
//! the reducible fibers, `20 - rank R(M)` is the Mordell-Weil rank, and the
//! primitive closure of `R(M)` in `M` gives the torsion sections.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::lattices::{
    discriminant_form, discriminant_group, identify_root_type, orthogonal_complement, roots_of,
    saturate, standard_root_lattice, AdeTag, IntLattice, LatticeError, RootType,
};
use crate::niemeier::{self, NiemeierLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{0} does not contain D4")]
    NoD4(AdeTag),
    #[error("{niemeier} has no component {component}")]
    MissingComponent { niemeier: String, component: AdeTag },
    #[error("invariant violated for {niemeier} / {component}: {msg}")]
    Invariant {
        niemeier: String,
        component: AdeTag,
        msg: String,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Catalog(#[from] niemeier::NiemeierError),
}

/// One fibration class: a row of the classification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibrationClass {
    /// Row number in the classification table (0 if unmatched).
    pub id: usize,
    pub niemeier_root_type: RootType,
    pub embedded_component: AdeTag,
    pub r_m: RootType,
    pub mw_rank: usize,
    pub torsion: Vec<u64>,
    /// Kodaira symbol for each component of `r_m`, in canonical order.
    pub kodaira_types: Vec<(AdeTag, String)>,
    pub quasi_elliptic: bool,
    /// Invariant factors of the discriminant group of `M`.
    pub complement_discriminant: Vec<u64>,
    /// q-values of the discriminant form of `M`, sorted, as `p/q` strings.
    pub complement_q_values: Vec<String>,
}

impl FibrationClass {
    /// The comparison key against the table: (R(N), R(M), rank, torsion, qe).
    pub fn key(&self) -> (RootType, RootType, usize, Vec<u64>, bool) {
        (
            self.niemeier_root_type.clone(),
            self.r_m.clone(),
            self.mw_rank,
            self.torsion.clone(),
            self.quasi_elliptic,
        )
    }
}

/// One printed row of the classification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub id: usize,
    pub niemeier: &'static str,
    pub component: &'static str,
    pub r_m: &'static str,
    pub mw_rank: usize,
    pub torsion: &'static [u64],
    pub quasi_elliptic: bool,
}

impl TableRow {
    pub fn key(&self) -> (RootType, RootType, usize, Vec<u64>, bool) {
        (
            self.niemeier.parse().expect("table root type"),
            self.r_m.parse().expect("table root type"),
            self.mw_rank,
            self.torsion.to_vec(),
            self.quasi_elliptic,
        )
    }
}

macro_rules! row {
    ($id:expr, $n:expr, $c:expr, $r:expr, $rk:expr, $t:expr, $qe:expr) => {
        TableRow {
            id: $id,
            niemeier: $n,
            component: $c,
            r_m: $r,
            mw_rank: $rk,
            torsion: &$t,
            quasi_elliptic: $qe,
        }
    };
}

/// The classification table as printed, rows in order.
pub const TABLE: [TableRow; 18] = [
    row!(1, "D4 A5^4", "D4", "A5^4", 0, [3, 6], false),
    row!(2, "D4^6", "D4", "D4^5", 0, [2, 2, 2, 2], true),
    row!(3, "D5^2 A7^2", "D5", "D5 A7^2", 1, [8], false),
    row!(4, "D6 A9^2", "D6", "A1^2 A9^2", 0, [10], false),
    row!(5, "D6^4", "D6", "A1^2 D6^3", 0, [2, 2, 2], true),
    row!(6, "E6 D7 A11", "E6", "D7 A11", 2, [4], false),
    row!(7, "E6 D7 A11", "D7", "A3 E6 A11", 0, [6], false),
    row!(8, "E6^4", "E6", "E6^3", 2, [3], false),
    row!(9, "D8^3", "D8", "D4 D8^2", 0, [2, 2], true),
    row!(10, "D9 A15", "D9", "D5 A15", 0, [4], false),
    row!(11, "E7 A17", "E7", "A1^3 A17", 0, [6], false),
    row!(12, "E7^2 D10", "E7", "A1^3 E7 D10", 0, [2, 2], true),
    row!(13, "E7^2 D10", "D10", "D6 E7^2", 0, [2], true),
    row!(14, "D12^2", "D12", "D8 D12", 0, [2], true),
    row!(15, "E8 D16", "E8", "D4 D16", 0, [2], true),
    row!(16, "E8 D16", "D16", "D12 E8", 0, [], true),
    row!(17, "E8^3", "E8", "D4 E8^2", 0, [], true),
    row!(18, "D24", "D24", "D20", 0, [], true),
];

/// Distinct component types of `n` that contain `D4`.
pub fn d4_targets(n: &NiemeierLattice) -> Vec<AdeTag> {
    n.root_type
        .distinct()
        .into_iter()
        .filter(|t| t.admits_d4())
        .collect()
}

/// Four roots of `component` (simple-root coordinates) with the `D4`
/// Cartan matrix as Gram matrix, in `D4` node order (node 2 central).
///
/// `D_n` uses the fork `n-3, n-2, n-1, n`; `E_n` uses Bourbaki nodes
/// `2, 4, 3, 5`.
pub fn embed_d4(component: AdeTag) -> Result<Vec<Vec<i64>>, ClassifyError> {
    let n = component.rank();
    let nodes = match component {
        AdeTag::D(_) => [n - 3, n - 2, n - 1, n],
        AdeTag::E(_) => [2, 4, 3, 5],
        AdeTag::A(_) => return Err(ClassifyError::NoD4(component)),
    };
    Ok(nodes
        .iter()
        .map(|&k| (1..=n).map(|i| i64::from(i == k)).collect())
        .collect())
}

/// Characteristic 2, supersingular surface: the
/// fibration is quasi-elliptic iff Mordell-Weil is 2-elementary.
pub fn is_quasi_elliptic(mw_rank: usize, torsion: &[u64]) -> bool {
    mw_rank == 0 && torsion.iter().all(|&d| d == 2)
}

/// Kodaira symbols for the components of `r_m`, with each `A1` read as `III`
/// on a quasi-elliptic fibration and `I2` otherwise.
pub fn kodaira_of_a1(r_m: &RootType, quasi_elliptic: bool) -> Vec<(AdeTag, String)> {
    r_m.components()
        .iter()
        .map(|&t| {
            let sym = if t == AdeTag::A(1) && quasi_elliptic {
                "III".to_string()
            } else {
                t.kodaira()
            };
            (t, sym)
        })
        .collect()
}

/// Independent criterion: corank one and every component 2-elementary.
pub fn two_elementary_criterion(r_m: &RootType) -> bool {
    r_m.rank() == 20
        && r_m.components().iter().all(|&t| {
            let l = standard_root_lattice(t).expect("valid tag");
            discriminant_group(&l).is_two_elementary()
        })
}

/// Data of the complement of a given `D4` inside a Niemeier lattice.
#[derive(Debug, Clone)]
pub struct ComplementData {
    pub complement: IntLattice,
    pub r_m: RootType,
    pub torsion: Vec<u64>,
    pub discriminant: Vec<u64>,
    pub q_values: Vec<BigRational>,
    /// Simple roots of `R(M)` in the basis of `M`.
    pub simple_roots: Vec<Vec<i64>>,
}

/// Complement data for four vectors given in root-sum coordinates of `n`.
pub fn complement_of(
    n: &NiemeierLattice,
    d4_in_sum: &[Vec<i64>],
) -> Result<ComplementData, LatticeError> {
    let sub: Vec<Vec<i64>> = d4_in_sum.iter().map(|v| n.coords_in_realized(v)).collect();
    let m = orthogonal_complement(&sub, &n.realized)?;
    let roots = roots_of(&m)?;
    let rs = identify_root_type(&roots, m.gram())?;
    let simple = rs.simple_basis();
    let (_, torsion) = saturate(&simple, &m)?;
    let form = discriminant_form(&m)?;
    Ok(ComplementData {
        discriminant: form.group.invariant_factors.clone(),
        q_values: form.q_multiset(),
        complement: m,
        r_m: rs.root_type,
        torsion,
        simple_roots: simple,
    })
}

/// Lift vectors of component `index` of `n` to root-sum coordinates.
pub fn lift_to_sum(n: &NiemeierLattice, index: usize, vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let off = n.offset(index);
    vs.iter()
        .map(|v| {
            let mut w = vec![0i64; 24];
            w[off..off + v.len()].copy_from_slice(v);
            w
        })
        .collect()
}

/// Classify the embedding of `D4` into the copy of `component` at position
/// `index` of `n`'s component list.
pub fn fibration_class_at(
    n: &NiemeierLattice,
    index: usize,
) -> Result<FibrationClass, ClassifyError> {
    let component = n.components[index];
    let fail = |msg: String| ClassifyError::Invariant {
        niemeier: n.root_type.to_string(),
        component,
        msg,
    };
    let d4 = embed_d4(component)?;
    let data = complement_of(n, &lift_to_sum(n, index, &d4))?;

    if data.complement.rank() != 20 {
        return Err(fail(format!(
            "complement has rank {}",
            data.complement.rank()
        )));
    }
    let one = BigRational::from_integer(BigInt::from(1));
    let expected_q = vec![BigRational::zero(), one.clone(), one.clone(), one];
    if data.discriminant != [2, 2] || data.q_values != expected_q {
        return Err(fail(format!(
            "complement discriminant {:?} is not that of D4",
            data.discriminant
        )));
    }
    check_torsion_in_dual(&data).map_err(fail)?;

    let mw_rank = 20 - data.r_m.rank();
    let quasi_elliptic = is_quasi_elliptic(mw_rank, &data.torsion);
    let kodaira_types = kodaira_of_a1(&data.r_m, quasi_elliptic);
    let mut class = FibrationClass {
        id: 0,
        niemeier_root_type: n.root_type.clone(),
        embedded_component: component,
        r_m: data.r_m,
        mw_rank,
        torsion: data.torsion,
        kodaira_types,
        quasi_elliptic,
        complement_discriminant: data.discriminant,
        complement_q_values: data.q_values.iter().map(ToString::to_string).collect(),
    };
    class.id = TABLE
        .iter()
        .find(|r| r.key() == class.key())
        .map_or(0, |r| r.id);
    Ok(class)
}

/// The primitive closure `R'` of `R = R(M)` lies between `R` and its dual, so
/// `det R = det R' * |R'/R|^2` and `|R'/R|^2` divides `|R*/R|`.
fn check_torsion_in_dual(data: &ComplementData) -> Result<(), String> {
    if data.simple_roots.is_empty() {
        return Ok(());
    }
    let disc = discriminant_group(
        &IntLattice::positive_definite(
            data.simple_roots
                .iter()
                .map(|u| {
                    data.simple_roots
                        .iter()
                        .map(|v| data.complement.inner(u, v))
                        .collect()
                })
                .collect(),
        )
        .map_err(|e| e.to_string())?,
    );
    let tors: u128 = data.torsion.iter().map(|&d| d as u128).product();
    if !disc.order().is_multiple_of(tors * tors) {
        return Err(format!(
            "torsion {:?} does not fit in discriminant {:?}",
            data.torsion, disc.invariant_factors
        ));
    }
    Ok(())
}

/// Classify using the first copy of `component` in `n`.
pub fn fibration_class(
    n: &NiemeierLattice,
    component: AdeTag,
) -> Result<FibrationClass, ClassifyError> {
    let index = n
        .components
        .iter()
        .position(|&c| c == component)
        .ok_or_else(|| ClassifyError::MissingComponent {
            niemeier: n.root_type.to_string(),
            component,
        })?;
    fibration_class_at(n, index)
}

/// All classes from the given catalog, one per (Niemeier lattice, component
/// type) pair, sorted by table id (unmatched classes last).
pub fn classify_catalog(entries: &[NiemeierLattice]) -> Vec<Result<FibrationClass, ClassifyError>> {
    let jobs: Vec<(&NiemeierLattice, AdeTag)> = entries
        .iter()
        .flat_map(|n| d4_targets(n).into_iter().map(move |t| (n, t)))
        .collect();
    let mut out: Vec<Result<FibrationClass, ClassifyError>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(n, t)| s.spawn(move || fibration_class(n, t)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("classification thread"))
            .collect()
    });
    out.sort_by_key(|r| match r {
        Ok(c) if c.id > 0 => (c.id, String::new()),
        Ok(c) => (
            usize::MAX,
            format!("{} {}", c.niemeier_root_type, c.embedded_component),
        ),
        Err(e) => (usize::MAX, e.to_string()),
    });
    out
}

/// The full classification from the shipped catalog.
pub fn classify_all() -> Result<Vec<FibrationClass>, ClassifyError> {
    classify_catalog(niemeier::catalog()).into_iter().collect()
}

/// One row-level discrepancy between computed classes and the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowMismatch {
    pub id: Option<usize>,
    pub message: String,
}

/// Compare computed classes against the table, row by row.
pub fn compare_with_table(classes: &[FibrationClass]) -> Vec<RowMismatch> {
    let mut issues = Vec::new();
    for row in &TABLE {
        let hits = classes.iter().filter(|c| c.id == row.id).count();
        if hits != 1 {
            issues.push(RowMismatch {
                id: Some(row.id),
                message: format!(
                    "row {} ({} / {}): expected R(M) {}, rank {}, torsion {:?}, {}; found {hits} matching classes",
                    row.id,
                    row.niemeier,
                    row.component,
                    row.r_m,
                    row.mw_rank,
                    row.torsion,
                    if row.quasi_elliptic { "qe" } else { "e" }
                ),
            });
        }
    }
    for c in classes.iter().filter(|c| c.id == 0) {
        issues.push(RowMismatch {
            id: None,
            message: format!(
                "unexpected class {} / {}: R(M) {}, rank {}, torsion {:?}",
                c.niemeier_root_type, c.embedded_component, c.r_m, c.mw_rank, c.torsion
            ),
        });
    }
    if classes.len() != TABLE.len() {
        issues.push(RowMismatch {
            id: None,
            message: format!("{} classes, expected {}", classes.len(), TABLE.len()),
        });
    }
    issues
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_elliptic_rule() {
        assert!(is_quasi_elliptic(0, &[2, 2, 2, 2]));
        assert!(!is_quasi_elliptic(0, &[10]));
        assert!(is_quasi_elliptic(0, &[]));
        assert!(!is_quasi_elliptic(1, &[8]));
        assert!(!is_quasi_elliptic(2, &[]));
    }

    #[test]
    fn a1_resolution() {
        let r: RootType = "A1^2 D6^3".parse().unwrap();
        let k = kodaira_of_a1(&r, true);
        assert_eq!(k.iter().filter(|(_, s)| s == "III").count(), 2);
        let r: RootType = "A1^2 A9^2".parse().unwrap();
        let k = kodaira_of_a1(&r, false);
        assert_eq!(k.iter().filter(|(_, s)| s == "I2").count(), 2);
        let r: RootType = "D20".parse().unwrap();
        assert!(kodaira_of_a1(&r, true)
            .iter()
            .all(|(t, _)| *t != AdeTag::A(1)));
    }

    #[test]
    fn embeddings_have_d4_gram() {
        let d4 = standard_root_lattice(AdeTag::D(4)).unwrap();
        for tag in [
            AdeTag::D(4),
            AdeTag::D(5),
            AdeTag::D(9),
            AdeTag::E(6),
            AdeTag::E(7),
            AdeTag::E(8),
        ] {
            let l = standard_root_lattice(tag).unwrap();
            let e = embed_d4(tag).unwrap();
            let g: Vec<Vec<i64>> = e
                .iter()
                .map(|u| e.iter().map(|v| l.inner(u, v)).collect())
                .collect();
            assert_eq!(g, d4.gram(), "{tag}");
        }
        assert_eq!(
            embed_d4(AdeTag::D(4)).unwrap(),
            vec![
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1]
            ]
        );
        assert!(embed_d4(AdeTag::A(7)).is_err());
    }

    #[test]
    fn complements_inside_components() {
        // complement of D4 within the component itself
        let cases = [
            (AdeTag::E(8), "D4", 4),
            (AdeTag::D(5), "0", 1),
            (AdeTag::D(6), "A1^2", 2),
            (AdeTag::D(7), "A3", 3),
            (AdeTag::E(6), "0", 2),
            (AdeTag::E(7), "A1^3", 3),
        ];
        for (tag, expect, rank) in cases {
            let l = standard_root_lattice(tag).unwrap();
            let m = orthogonal_complement(&embed_d4(tag).unwrap(), &l).unwrap();
            assert_eq!(m.rank(), rank, "{tag}");
            let rs = identify_root_type(&roots_of(&m).unwrap(), m.gram()).unwrap();
            assert_eq!(rs.root_type.to_string(), expect, "{tag}");
        }
    }

    #[test]
    fn table_keys_are_distinct() {
        let mut keys: Vec<_> = TABLE.iter().map(TableRow::key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 18);
        for r in &TABLE {
            assert_eq!(r.quasi_elliptic, is_quasi_elliptic(r.mw_rank, r.torsion));
            let rm: RootType = r.r_m.parse().unwrap();
            assert_eq!(rm.rank() + r.mw_rank, 20, "row {}", r.id);
        }
    }
}
