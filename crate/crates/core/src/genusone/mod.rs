//! Genus-one fibrations in characteristic 2: Weierstrass models over `F4(t)`,
//! their singular fibers (Tate's algorithm for elliptic models, the
//! quasi-elliptic discriminant otherwise), the group of sections and the
//! height pairing.

pub mod catalog;
pub mod expr;
pub mod f4;
pub mod height;
pub mod model;
pub mod poly;
pub mod qe;
pub mod ratfn;
pub mod tate;
pub mod verify;

use thiserror::Error;

pub use catalog::{catalog_models, model_by_label, models_for, CatalogModel};
pub use f4::F4;
pub use height::{section_height, HeightReport};
pub use model::{add, on_model, order_of, FiberData, Kodaira, Place, SectionPt, WeierstrassModel};
pub use poly::Poly;
pub use qe::{depress_qe, enumerate_sections, qe_discriminant, qe_fibers};
pub use ratfn::RatFn;
pub use tate::{elliptic_fibers, tate_local, TateResult};
pub use verify::{verify_all, verify_model, ModelReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenusOneError {
    #[error("model error: {0}")]
    Model(String),
    #[error("place error: {0}")]
    Place(String),
    #[error("no quasi-elliptic fiber type has Dynkin rank {0}")]
    NoQeFiber(usize),
    #[error("Euler number check failed: expected {expected}, found {found}")]
    Euler { expected: usize, found: usize },
    #[error("point {0} is not on the model")]
    OffCurve(String),
    #[error("order exceeds the bound {0}")]
    OrderBound(u64),
    #[error("height computation: {0}")]
    Height(String),
    #[error("model catalog line {line}: {msg}")]
    Catalog { line: usize, msg: String },
    #[error("no model labelled {0}")]
    NoSuchModel(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Euler numbers of a model's singular fibers: `Σ v(Δ_min) = 24` for
/// elliptic models, `Σ rank = 20` for quasi-elliptic ones.
pub fn euler_check(w: &WeierstrassModel) -> Result<verify::EulerReport, GenusOneError> {
    let (expected, found) = if w.is_quasi_elliptic() {
        (
            20,
            qe::qe_fibers(w).map_or_else(
                |e| match e {
                    GenusOneError::Euler { found, .. } => Ok(found),
                    other => Err(other),
                },
                |f| Ok(f.iter().map(|x| x.dynkin_rank).sum()),
            )?,
        )
    } else {
        (
            24,
            tate::elliptic_fibers(w)?
                .iter()
                .map(|r| r.fiber.v_delta)
                .sum(),
        )
    };
    Ok(verify::EulerReport {
        expected,
        found,
        passed: expected == found,
    })
}
