//! The 23 Niemeier lattices with roots, as root lattices plus glue.
//!
//! # Data file format
//!
//! The catalog ships as `data/niemeier.txt`, a line-oriented text file:
//!
//! ```text
//! version 1
//! lattice <key>
//! components <tag> <tag> ...
//! glue <q_1> <q_2> ... <q_24>
//! end
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. `<key>` is the
//! canonical root-type string (e.g. `A5^4 D4`), `components` lists the
//! summands in the order used by the glue coordinates, and each `glue` line
//! is one generator: 24 fractions `p/q` (or integers) giving the vector in
//! the concatenated simple-root bases. Serialization is bit-exact: parsing a
//! file written by [`write_catalog`] and writing it again reproduces it.

use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattices::linalg;
use crate::lattices::{
    overlattice_from_glue, roots_of, standard_root_lattice, AdeTag, GlueCode, IntLattice,
    LatticeError, RootType,
};

pub const CATALOG_TEXT: &str = include_str!("../data/niemeier.txt");
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NiemeierError {
    #[error("no such rooted Niemeier lattice: {0}")]
    NoSuchLattice(String),
    #[error("catalog parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("catalog entry {key}: {msg}")]
    Defect { key: String, msg: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// One catalog record before verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogRecord {
    pub key: String,
    pub components: Vec<AdeTag>,
    pub glue: Vec<Vec<BigRational>>,
}

/// A verified Niemeier lattice.
#[derive(Debug, Clone)]
pub struct NiemeierLattice {
    pub root_type: RootType,
    /// Summands in glue-coordinate order.
    pub components: Vec<AdeTag>,
    pub glue: GlueCode,
    /// Rank 24, unimodular; `basis_in_ambient` holds the basis in the
    /// coordinates of the root-lattice direct sum.
    pub realized: IntLattice,
    /// The root-lattice direct sum itself.
    pub root_sum: IntLattice,
    /// Inverse of the basis of `realized` in root-sum coordinates.
    inverse_basis: linalg::QMat,
}

impl NiemeierLattice {
    /// Offset of component `i` in the concatenated simple-root coordinates.
    pub fn offset(&self, i: usize) -> usize {
        self.components[..i].iter().map(|c| c.rank()).sum()
    }

    pub fn glue_group_order(&self) -> BigInt {
        (self.root_sum.det().abs() / self.realized.det().abs()).sqrt()
    }

    /// Express a vector of the root-lattice sum (integer coordinates in the
    /// concatenated simple roots) in the basis of `realized`.
    pub fn coords_in_realized(&self, v: &[i64]) -> Vec<i64> {
        let inv = &self.inverse_basis;
        let vq: Vec<BigRational> = v
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        (0..vq.len())
            .map(|j| {
                let s: BigRational = vq.iter().zip(inv).map(|(a, row)| a * &row[j]).sum();
                assert!(
                    s.is_integer(),
                    "root-lattice vector lies in the Niemeier lattice"
                );
                i64::try_from(s.to_integer()).expect("small coordinate")
            })
            .collect()
    }
}

/// Fundamental weight `omega_node` (1-based) of an ADE root lattice, in the
/// simple-root basis: row `node` of the inverse Cartan matrix.
pub fn fundamental_weight(tag: AdeTag, node: usize) -> Result<Vec<BigRational>, LatticeError> {
    let l = standard_root_lattice(tag)?;
    if node == 0 || node > tag.rank() {
        return Err(LatticeError::Dimension(format!("node {node} of {tag}")));
    }
    let inv = linalg::q_inverse(&linalg::to_qmat(&linalg::to_zmat(l.gram())))
        .expect("Cartan matrix is invertible");
    Ok(inv[node - 1].clone())
}

/// Representative of a glue class in the usual Niemeier-table notation.
///
/// `A_n`: class `i` is `omega_i`. `D_n`: `1` and `3` are the two spinor
/// classes (`omega_{n-1}`, `omega_n`), `2` is the vector class `omega_1`.
/// `E6`: `1` is `omega_1`, `2` is `omega_6`. `E7`: `1` is `omega_7`.
/// Class 0 is the zero vector.
pub fn class_vector(tag: AdeTag, class: usize) -> Result<Vec<BigRational>, LatticeError> {
    let n = tag.rank();
    if class == 0 {
        return Ok(vec![BigRational::zero(); n]);
    }
    let node = match (tag, class) {
        (AdeTag::A(_), i) if i <= n => i,
        (AdeTag::D(_), 1) => n - 1,
        (AdeTag::D(_), 2) => 1,
        (AdeTag::D(_), 3) => n,
        (AdeTag::E(6), 1) => 1,
        (AdeTag::E(6), 2) => 6,
        (AdeTag::E(7), 1) => 7,
        _ => return Err(LatticeError::InvalidTag(format!("{tag} class {class}"))),
    };
    fundamental_weight(tag, node)
}

/// Glue generator from one class per component.
pub fn glue_from_classes(
    components: &[AdeTag],
    classes: &[usize],
) -> Result<Vec<BigRational>, LatticeError> {
    if components.len() != classes.len() {
        return Err(LatticeError::Dimension("one class per component".into()));
    }
    let mut v = Vec::new();
    for (&t, &c) in components.iter().zip(classes) {
        v.extend(class_vector(t, c)?);
    }
    Ok(v)
}

fn fmt_frac(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_frac(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Parse catalog text into records (no lattice verification).
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRecord>, NiemeierError> {
    let mut records = Vec::new();
    let mut current: Option<CatalogRecord> = None;
    let mut saw_version = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: &str| NiemeierError::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
        match head {
            "version" => {
                if rest.trim() != FORMAT_VERSION.to_string() {
                    return Err(err("unsupported version"));
                }
                saw_version = true;
            }
            "lattice" => {
                if !saw_version {
                    return Err(err("missing version line"));
                }
                if current.is_some() {
                    return Err(err("nested lattice record"));
                }
                current = Some(CatalogRecord {
                    key: rest.trim().to_string(),
                    components: Vec::new(),
                    glue: Vec::new(),
                });
            }
            "components" => {
                let rec = current
                    .as_mut()
                    .ok_or_else(|| err("components outside record"))?;
                rec.components = rest
                    .split_whitespace()
                    .map(str::parse)
                    .collect::<Result<_, _>>()
                    .map_err(|e: LatticeError| err(&e.to_string()))?;
            }
            "glue" => {
                let rec = current.as_mut().ok_or_else(|| err("glue outside record"))?;
                let v: Option<Vec<BigRational>> = rest.split_whitespace().map(parse_frac).collect();
                rec.glue.push(v.ok_or_else(|| err("bad fraction"))?);
            }
            "end" => {
                records.push(current.take().ok_or_else(|| err("end without record"))?);
            }
            _ => return Err(err("unknown directive")),
        }
    }
    if current.is_some() {
        return Err(NiemeierError::Parse {
            line: text.lines().count(),
            msg: "unterminated record".into(),
        });
    }
    Ok(records)
}

/// Serialize records in the catalog format.
pub fn write_catalog(records: &[CatalogRecord]) -> String {
    let mut out = String::new();
    out.push_str("# Niemeier lattices with roots: root lattice summands and glue generators\n");
    out.push_str("# glue vectors are in the concatenated simple-root bases of the summands\n");
    let _ = writeln!(out, "version {FORMAT_VERSION}");
    for r in records {
        out.push('\n');
        let _ = writeln!(out, "lattice {}", r.key);
        let comps: Vec<String> = r.components.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "components {}", comps.join(" "));
        for g in &r.glue {
            let cells: Vec<String> = g.iter().map(fmt_frac).collect();
            let _ = writeln!(out, "glue {}", cells.join(" "));
        }
        out.push_str("end\n");
    }
    out
}

/// Build and verify one record: even, unimodular, rank 24, with the root
/// count of its declared type and no extra roots from the glue.
pub fn realize(record: &CatalogRecord) -> Result<NiemeierLattice, NiemeierError> {
    let defect = |msg: String| NiemeierError::Defect {
        key: record.key.clone(),
        msg,
    };
    let root_type = RootType::new(record.components.clone());
    let declared: RootType = record
        .key
        .parse()
        .map_err(|e: LatticeError| defect(e.to_string()))?;
    if declared != root_type {
        return Err(defect(format!("key does not match components {root_type}")));
    }
    if root_type.rank() != 24 {
        return Err(defect(format!("rank {} is not 24", root_type.rank())));
    }
    let parts: Vec<IntLattice> = record
        .components
        .iter()
        .map(|&t| standard_root_lattice(t))
        .collect::<Result<_, _>>()?;
    let root_sum = IntLattice::direct_sum(&parts);
    let realized = overlattice_from_glue(&parts, &GlueCode::new(record.glue.clone()))
        .map_err(|e| defect(e.to_string()))?;
    if !realized.is_unimodular() {
        return Err(defect(format!("determinant {} is not 1", realized.det())));
    }
    let count = roots_of(&realized)?.len();
    if count != root_type.root_count() {
        return Err(defect(format!(
            "{count} roots, expected {}",
            root_type.root_count()
        )));
    }
    let inverse_basis = linalg::q_inverse(
        realized
            .basis_in_ambient()
            .expect("glued lattice carries its basis"),
    )
    .expect("basis is invertible");
    Ok(NiemeierLattice {
        inverse_basis,
        root_type,
        components: record.components.clone(),
        glue: GlueCode::new(record.glue.clone()),
        realized,
        root_sum,
    })
}

/// Load a catalog, collecting per-entry defects instead of failing fast.
pub fn load_lenient(
    text: &str,
) -> Result<(Vec<NiemeierLattice>, Vec<NiemeierError>), NiemeierError> {
    let records = parse_catalog(text)?;
    let mut good = Vec::new();
    let mut bad = Vec::new();
    for r in &records {
        match realize(r) {
            Ok(n) => good.push(n),
            Err(e) => bad.push(e),
        }
    }
    Ok((good, bad))
}

/// Load a catalog; any defect is an error.
pub fn load(text: &str) -> Result<Vec<NiemeierLattice>, NiemeierError> {
    let (good, mut bad) = load_lenient(text)?;
    if let Some(e) = bad.drain(..).next() {
        return Err(e);
    }
    if good.len() != 23 {
        return Err(NiemeierError::Defect {
            key: "catalog".into(),
            msg: format!("{} entries, expected 23", good.len()),
        });
    }
    Ok(good)
}

/// The shipped catalog, verified once per process.
pub fn catalog() -> &'static [NiemeierLattice] {
    static CATALOG: OnceLock<Vec<NiemeierLattice>> = OnceLock::new();
    CATALOG.get_or_init(|| load(CATALOG_TEXT).expect("shipped Niemeier catalog verifies"))
}

/// Catalog entry by root type.
pub fn lookup(root_type: &RootType) -> Result<&'static NiemeierLattice, NiemeierError> {
    find_in(catalog(), root_type)
}

pub fn find_in<'a>(
    entries: &'a [NiemeierLattice],
    root_type: &RootType,
) -> Result<&'a NiemeierLattice, NiemeierError> {
    entries
        .iter()
        .find(|n| &n.root_type == root_type)
        .ok_or_else(|| {
            NiemeierError::NoSuchLattice(if root_type.is_empty() {
                "Leech".into()
            } else {
                root_type.to_string()
            })
        })
}
