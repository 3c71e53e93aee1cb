//! The shipped catalog of Weierstrass models with their expected fiber and
//! section data.

use std::sync::OnceLock;

use num_rational::Rational64;

use super::expr::{parse_poly, parse_ratfn};
use super::model::{Kodaira, Place, SectionPt, WeierstrassModel};
use super::qe::{depress_qe, qe_discriminant};
use super::GenusOneError;

pub const MODELS_TEXT: &str = include_str!("../../data/models.txt");
pub const MODELS_FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct FiberExpectation {
    pub place: Place,
    pub kodaira: Kodaira,
    pub delta_wild: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectionClaim {
    pub section: SectionPt,
    pub order: Option<u64>,
    /// Claimed to be torsion without a stated order.
    pub torsion: bool,
    pub height: Option<Rational64>,
    /// Claimed to meet the zero section.
    pub peculiar: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogModel {
    pub label: String,
    /// Classification row realized by the model.
    pub id: usize,
    pub model: WeierstrassModel,
    pub note: Option<String>,
    pub fibers: Vec<FiberExpectation>,
    pub torsion: Option<Vec<u64>>,
    pub section_count: Option<usize>,
    pub sections: Vec<SectionClaim>,
}

fn err(line: usize, msg: impl Into<String>) -> GenusOneError {
    GenusOneError::Catalog {
        line,
        msg: msg.into(),
    }
}

fn parse_fiber(line: usize, tok: &str) -> Result<FiberExpectation, GenusOneError> {
    let (k, rest) = tok
        .split_once('@')
        .ok_or_else(|| err(line, format!("fiber {tok:?} lacks '@'")))?;
    let (p, d) = match rest.split_once('/') {
        Some((p, d)) => (
            p,
            Some(
                d.parse()
                    .map_err(|_| err(line, format!("bad wild part in {tok:?}")))?,
            ),
        ),
        None => (rest, None),
    };
    Ok(FiberExpectation {
        place: p.parse().map_err(|e: String| err(line, e))?,
        kodaira: k.parse().map_err(|e: String| err(line, e))?,
        delta_wild: d,
    })
}

fn parse_section(line: usize, body: &str) -> Result<SectionClaim, GenusOneError> {
    let parts: Vec<&str> = body.split('|').map(str::trim).collect();
    if parts.len() < 2 {
        return Err(err(line, "a section needs X | Y"));
    }
    let x = parse_ratfn(parts[0]).map_err(|e| err(line, e))?;
    let y = parse_ratfn(parts[1]).map_err(|e| err(line, e))?;
    let mut claim = SectionClaim {
        section: SectionPt::new(x, y),
        order: None,
        torsion: false,
        height: None,
        peculiar: false,
    };
    for attr in &parts[2..] {
        let mut it = attr.split_whitespace();
        match (it.next(), it.next()) {
            (Some("order"), Some(n)) => {
                claim.order = Some(n.parse().map_err(|_| err(line, format!("bad order {n}")))?)
            }
            (Some("height"), Some(h)) => {
                claim.height = Some(
                    h.parse()
                        .map_err(|_| err(line, format!("bad height {h}")))?,
                );
            }
            (Some("torsion"), None) => claim.torsion = true,
            (Some("peculiar"), None) => claim.peculiar = true,
            _ => return Err(err(line, format!("unknown section attribute {attr:?}"))),
        }
    }
    Ok(claim)
}

/// Parse the catalog text format.
pub fn parse_models(text: &str) -> Result<Vec<CatalogModel>, GenusOneError> {
    let mut out = Vec::new();
    let mut cur: Option<CatalogModel> = None;
    let mut version = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (key, rest) = l.split_once(' ').map_or((l, ""), |(k, r)| (k, r.trim()));
        match (key, cur.as_mut()) {
            ("version", None) => {
                let v: u32 = rest.parse().map_err(|_| err(line, "bad version"))?;
                if v != MODELS_FORMAT_VERSION {
                    return Err(err(line, format!("unsupported format version {v}")));
                }
                version = Some(v);
            }
            ("model", None) => {
                if version.is_none() {
                    return Err(err(line, "missing version header"));
                }
                cur = Some(CatalogModel {
                    label: rest.to_string(),
                    id: 0,
                    model: WeierstrassModel::new(Default::default()),
                    note: None,
                    fibers: Vec::new(),
                    torsion: None,
                    section_count: None,
                    sections: Vec::new(),
                });
            }
            ("row", Some(m)) => m.id = rest.parse().map_err(|_| err(line, "bad row"))?,
            ("coefficients", Some(m)) => {
                let parts: Vec<&str> = rest.split('|').collect();
                if parts.len() != 5 {
                    return Err(err(line, "expected five coefficients"));
                }
                let mut a: [_; 5] = Default::default();
                for (k, p) in parts.iter().enumerate() {
                    a[k] = parse_poly(p).map_err(|e| err(line, e))?;
                }
                m.model = WeierstrassModel::new(a).with_label(m.label.clone());
            }
            ("note", Some(m)) => m.note = Some(rest.to_string()),
            ("fibers", Some(m)) => {
                m.fibers = rest
                    .split_whitespace()
                    .map(|t| parse_fiber(line, t))
                    .collect::<Result<_, _>>()?;
            }
            ("torsion", Some(m)) => {
                m.torsion = Some(
                    rest.split_whitespace()
                        .map(|n| {
                            n.parse()
                                .map_err(|_| err(line, format!("bad torsion factor {n}")))
                        })
                        .collect::<Result<_, _>>()?,
                );
            }
            ("sections", Some(m)) => {
                m.section_count = Some(rest.parse().map_err(|_| err(line, "bad count"))?)
            }
            ("section", Some(m)) => m.sections.push(parse_section(line, rest)?),
            ("end", Some(_)) => {
                let m = cur.take().unwrap();
                if !(1..=18).contains(&m.id) {
                    return Err(err(line, format!("model {} has no row in 1..18", m.label)));
                }
                m.model
                    .check_k3_bounds()
                    .map_err(|e| err(line, format!("model {}: {e}", m.label)))?;
                let degenerate = if m.model.is_quasi_elliptic() {
                    let (a4, a6) = depress_qe(&m.model)?;
                    qe_discriminant(&a4, &a6).is_zero()
                } else {
                    m.model.discriminant().is_zero()
                };
                if degenerate {
                    return Err(err(line, format!("model {} is singular", m.label)));
                }
                out.push(m);
            }
            (k, _) => return Err(err(line, format!("unexpected {k:?}"))),
        }
    }
    if cur.is_some() {
        return Err(err(text.lines().count(), "unterminated model record"));
    }
    Ok(out)
}

/// The embedded catalog, parsed once.
pub fn catalog_models() -> &'static [CatalogModel] {
    static CATALOG: OnceLock<Vec<CatalogModel>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_models(MODELS_TEXT).expect("embedded model catalog is valid"))
}

/// All models realizing classification row `id`.
pub fn models_for(id: usize) -> Vec<&'static CatalogModel> {
    catalog_models().iter().filter(|m| m.id == id).collect()
}

/// The model with the given label (`"4"`, `"5a"`, …); a bare row number
/// selects the first model of that row.
pub fn model_by_label(label: &str) -> Result<&'static CatalogModel, GenusOneError> {
    let cat = catalog_models();
    cat.iter()
        .find(|m| m.label == label)
        .or_else(|| {
            label
                .parse::<usize>()
                .ok()
                .and_then(|id| cat.iter().find(|m| m.id == id))
        })
        .ok_or_else(|| GenusOneError::NoSuchModel(label.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_catalog_loads() {
        let cat = catalog_models();
        let mut ids: Vec<usize> = cat.iter().map(|m| m.id).collect();
        ids.dedup();
        assert_eq!(ids, (1..=18).collect::<Vec<_>>());
        assert_eq!(models_for(5).len(), 2);
        assert_eq!(
            model_by_label("18").unwrap().model.to_string(),
            "[0, t³, 0, 0, t]"
        );
        assert_eq!(
            model_by_label("4").unwrap().model.to_string(),
            "[t²+1, t², t², 0, 0]"
        );
        assert_eq!(
            model_by_label("2").unwrap().model.to_string(),
            "[0, 0, 0, 0, t⁹+t⁶+t³+1]"
        );
        assert!(model_by_label("19").is_err());
    }

    #[test]
    fn rejects_malformed_records() {
        assert!(parse_models("model 1\nrow 1\nend\n").is_err());
        assert!(parse_models("version 1\nmodel 1\nrow 1\ncoefficients 0|0|0|0\nend\n").is_err());
        assert!(
            parse_models("version 1\nmodel 1\nrow 1\ncoefficients 0|0|0|0|t^13\nend\n").is_err()
        );
        assert!(parse_models("version 1\nmodel 1\nrow 1\ncoefficients 0|0|0|0|0\nend\n").is_err());
        assert!(parse_models("version 1\nmodel 1\nrow 1\ncoefficients 0|t^3|0|0|t\n").is_err());
        assert!(parse_models("version 2\n").is_err());
        let ok = parse_models(
            "version 1\nmodel x\nrow 18\ncoefficients 0|t^3|0|0|t\nfibers I16*@∞\nend\n",
        )
        .unwrap();
        assert_eq!(ok[0].fibers[0].kodaira, Kodaira::IStar(16));
    }
}
