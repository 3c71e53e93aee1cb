//! Verification of catalog models against their expectations and the
//! classification table.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use super::catalog::{catalog_models, model_by_label, CatalogModel};
use super::height::section_height;
use super::model::{add, on_model, order_of, FiberData, SectionPt, WeierstrassModel, ORDER_BOUND};
use super::qe::{enumerate_sections, qe_fibers};
use super::tate::elliptic_fibers;
use super::GenusOneError;
use crate::classify::{kodaira_of_a1, TABLE};
use crate::lattices::RootType;

/// One fiber in report form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberRow {
    pub place: String,
    pub kodaira: String,
    pub m: usize,
    pub vdelta: usize,
    pub delta: usize,
}

impl From<&FiberData> for FiberRow {
    fn from(f: &FiberData) -> Self {
        FiberRow {
            place: f.place.to_string(),
            kodaira: f.kodaira.to_string(),
            m: f.m,
            vdelta: f.v_delta,
            delta: f.delta_wild,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerReport {
    pub expected: usize,
    pub found: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionReport {
    pub section: String,
    pub on_curve: bool,
    /// Computed order; `None` for infinite order (beyond the search bound).
    pub order: Option<u64>,
    pub expected_order: Option<u64>,
    pub height: Option<String>,
    pub expected_height: Option<String>,
    pub meets_zero: Option<i64>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelReport {
    pub id: usize,
    pub label: String,
    pub coefficients: Vec<String>,
    pub quasi_elliptic: bool,
    pub fibers: Vec<FiberRow>,
    pub euler: EulerReport,
    /// Invariant factors of the torsion group found.
    pub torsion: Vec<u64>,
    pub section_count: Option<usize>,
    pub sections: Vec<SectionReport>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub verdict: String,
}

impl ModelReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

/// Invariant factors of a finite abelian group from the orders of its elements.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    // per prime, the exponents a_i of the cyclic p-parts, largest first
    let mut parts: Vec<Vec<u32>> = Vec::new();
    for &p in &primes {
        // n(p^j) = #{g : p^j g = 0} = p^{Σ min(j, a_i)}
        let killed = |j: u32| orders.iter().filter(|&&o| p.pow(j) % o == 0).count() as u64;
        let mut exps: Vec<u32> = Vec::new();
        let mut j = 1;
        let mut prev = 1u64;
        loop {
            let cur = killed(j);
            let ratio = cur / prev;
            let at_least_j = ratio.ilog(p);
            if at_least_j == 0 {
                break;
            }
            if exps.len() < at_least_j as usize {
                exps.resize(at_least_j as usize, 0);
            }
            for e in exps.iter_mut().take(at_least_j as usize) {
                *e = j;
            }
            prev = cur;
            j += 1;
        }
        parts.push(exps);
    }
    let len = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|k| {
            primes
                .iter()
                .zip(&parts)
                .map(|(&p, e)| p.pow(e.get(k).copied().unwrap_or(0)))
                .product()
        })
        .collect();
    out.sort();
    out
}

/// Closure of a set of torsion sections under addition (at most `cap` elements).
pub fn group_closure(
    w: &WeierstrassModel,
    gens: &[SectionPt],
    cap: usize,
) -> Result<Vec<SectionPt>, GenusOneError> {
    let mut elems = vec![SectionPt::O];
    let mut frontier = vec![SectionPt::O];
    while let Some(e) = frontier.pop() {
        for g in gens {
            let s = add(w, &e, g);
            if !elems.contains(&s) {
                if elems.len() >= cap {
                    return Err(GenusOneError::Internal(format!(
                        "group generated exceeds {cap} elements"
                    )));
                }
                elems.push(s.clone());
                frontier.push(s);
            }
        }
    }
    Ok(elems)
}

fn check(checks: &mut Vec<Check>, name: &str, passed: bool, detail: impl Into<String>) {
    checks.push(Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    });
}

fn fmt_q(q: Rational64) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Verify one catalog model.
pub fn verify_catalog_model(cm: &CatalogModel) -> Result<ModelReport, GenusOneError> {
    let w = &cm.model;
    let qe = w.is_quasi_elliptic();
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    if let Some(n) = &cm.note {
        notes.push(n.clone());
    }

    // fibers and Euler number
    let fibers: Vec<FiberData> = if qe {
        qe_fibers(w)?
    } else {
        elliptic_fibers(w)?.into_iter().map(|r| r.fiber).collect()
    };
    let (expected_sum, found_sum) = if qe {
        (20, fibers.iter().map(|f| f.dynkin_rank).sum())
    } else {
        (24, fibers.iter().map(|f| f.v_delta).sum())
    };
    let euler = EulerReport {
        expected: expected_sum,
        found: found_sum,
        passed: expected_sum == found_sum,
    };
    check(
        &mut checks,
        "euler",
        euler.passed,
        format!("sum {found_sum}, expected {expected_sum}"),
    );

    let found: BTreeMap<String, String> = fibers
        .iter()
        .map(|f| (f.place.to_string(), f.kodaira.to_string()))
        .collect();
    let expected: BTreeMap<String, String> = cm
        .fibers
        .iter()
        .map(|f| (f.place.to_string(), f.kodaira.to_string()))
        .collect();
    check(
        &mut checks,
        "fibers",
        found == expected,
        format!("found {found:?}, expected {expected:?}"),
    );
    for e in &cm.fibers {
        if let Some(d) = e.delta_wild {
            let got = fibers
                .iter()
                .find(|f| f.place == e.place)
                .map(|f| f.delta_wild);
            check(
                &mut checks,
                "wild",
                got == Some(d),
                format!("δ at {}: {got:?}, expected {d}", e.place),
            );
        }
    }
    if !qe {
        let ogg = fibers.iter().all(|f| {
            if f.kodaira.is_multiplicative() {
                f.delta_wild == 0 && f.v_delta == f.m
            } else {
                f.v_delta == f.kodaira.euler() + f.delta_wild
            }
        });
        check(&mut checks, "ogg", ogg, "v(Δ) = e(F) + δ at every place");
        for f in fibers
            .iter()
            .filter(|f| f.kodaira.is_additive() && f.delta_wild > 0)
        {
            if !cm
                .fibers
                .iter()
                .any(|e| e.place == f.place && e.delta_wild.is_some())
            {
                notes.push(format!(
                    "computed δ = {} at {} ({}), no expectation recorded",
                    f.delta_wild, f.place, f.kodaira
                ));
            }
        }
    }

    // comparison with the classification table
    let row = &TABLE[cm.id - 1];
    let r_m: RootType = row.r_m.parse().expect("table root type");
    let mut table_types: Vec<String> = kodaira_of_a1(&r_m, row.quasi_elliptic)
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    table_types.sort();
    let mut found_types: Vec<String> = fibers
        .iter()
        .filter(|f| f.dynkin_rank > 0)
        .map(|f| f.kodaira.to_string())
        .collect();
    found_types.sort();
    check(
        &mut checks,
        "table-fibers",
        table_types == found_types,
        format!("found {found_types:?}, table {table_types:?}"),
    );
    check(
        &mut checks,
        "table-type",
        qe == row.quasi_elliptic,
        format!("quasi-elliptic: {qe}"),
    );
    let rank_sum: usize = fibers.iter().map(|f| f.dynkin_rank).sum();
    check(
        &mut checks,
        "table-rank",
        rank_sum == r_m.rank(),
        format!("Dynkin ranks {rank_sum}, R(M) rank {}", r_m.rank()),
    );

    // sections
    let mut sections = Vec::new();
    let mut torsion_gens = Vec::new();
    for claim in &cm.sections {
        let p = &claim.section;
        let on = on_model(w, p);
        let order = if on {
            order_of(w, p, ORDER_BOUND).ok()
        } else {
            None
        };
        let mut passed = on;
        if let Some(o) = claim.order {
            passed &= order == Some(o);
        }
        if claim.torsion {
            passed &= order.is_some();
        }
        let (mut height, mut meets) = (None, None);
        if on && !qe {
            let h = section_height(w, p)?;
            meets = Some(h.intersection_with_zero);
            height = Some(h.height);
            if order.is_some() {
                passed &= h.height == Rational64::from_integer(0);
            }
            if claim.peculiar {
                passed &= h.intersection_with_zero > 0;
            }
        }
        if let Some(hx) = claim.height {
            passed &= height == Some(hx);
        }
        if order.is_some() {
            torsion_gens.push(p.clone());
        }
        sections.push(SectionReport {
            section: p.to_string(),
            on_curve: on,
            order,
            expected_order: claim.order,
            height: height.map(fmt_q),
            expected_height: claim.height.map(fmt_q),
            meets_zero: meets,
            passed,
        });
    }
    let all_sections = sections.iter().all(|s| s.passed);
    check(
        &mut checks,
        "sections",
        all_sections,
        format!("{} claimed sections", sections.len()),
    );

    // torsion group
    let mut section_count = None;
    let torsion = if qe {
        let found = enumerate_sections(w, 8, 2)?;
        let doubling = found.iter().all(|p| add(w, p, p).is_zero());
        check(
            &mut checks,
            "doubling",
            doubling,
            "2P = O for every section",
        );
        let claimed_found = cm.sections.iter().all(|c| found.contains(&c.section));
        check(
            &mut checks,
            "claimed-enumerated",
            claimed_found,
            "claimed sections appear in the enumeration",
        );
        let closed = group_closure(w, &found, 64)?.len() == found.len();
        check(
            &mut checks,
            "closure",
            closed,
            "enumerated sections form a group",
        );
        section_count = Some(found.len());
        if let Some(n) = cm.section_count {
            check(
                &mut checks,
                "section-count",
                n == found.len(),
                format!("found {}, expected {n}", found.len()),
            );
        }
        let orders: Vec<u64> = found
            .iter()
            .map(|p| if p.is_zero() { 1 } else { 2 })
            .collect();
        invariant_factors(&orders)
    } else {
        let group = group_closure(w, &torsion_gens, 64)?;
        let orders: Vec<u64> = group
            .iter()
            .map(|p| order_of(w, p, ORDER_BOUND))
            .collect::<Result<_, _>>()?;
        invariant_factors(&orders)
    };
    if let Some(t) = &cm.torsion {
        check(
            &mut checks,
            "torsion",
            &torsion == t,
            format!("found {torsion:?}, expected {t:?}"),
        );
    }
    check(
        &mut checks,
        "table-torsion",
        torsion == row.torsion,
        format!("found {torsion:?}, table {:?}", row.torsion),
    );
    if cm.id == 3 {
        notes.push(
            "generation of the Mordell-Weil group by the listed sections is not certified".into(),
        );
    }

    let verdict = if checks.iter().all(|c| c.passed) {
        "pass"
    } else {
        "fail"
    };
    Ok(ModelReport {
        id: cm.id,
        label: cm.label.clone(),
        coefficients: w.coefficient_strings(),
        quasi_elliptic: qe,
        fibers: fibers.iter().map(FiberRow::from).collect(),
        euler,
        torsion,
        section_count,
        sections,
        checks,
        notes,
        verdict: verdict.into(),
    })
}

/// Verify the model with the given label (a bare row number picks its first model).
pub fn verify_model(label: &str) -> Result<ModelReport, GenusOneError> {
    verify_catalog_model(model_by_label(label)?)
}

/// Reports for every catalog model, in catalog order; rows with several
/// models produce one report each.
pub fn verify_all() -> Vec<Result<ModelReport, GenusOneError>> {
    let models = catalog_models();
    std::thread::scope(|s| {
        let handles: Vec<_> = models
            .iter()
            .map(|m| s.spawn(move || verify_catalog_model(m)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn invariant_factor_examples() {
        // Z/3 × Z/6: orders of the 18 elements
        let mut orders = Vec::new();
        for a in 0..3u64 {
            for b in 0..6u64 {
                let oa = 3 / gcd(a, 3);
                let ob = 6 / gcd(b, 6);
                orders.push(oa * ob / gcd(oa, ob));
            }
        }
        assert_eq!(invariant_factors(&orders), vec![3, 6]);
        assert_eq!(invariant_factors(&[1, 2, 2, 2]), vec![2, 2]);
        assert_eq!(invariant_factors(&[1, 2, 4, 4]), vec![4]);
        assert_eq!(invariant_factors(&[1]), Vec::<u64>::new());
        assert_eq!(
            invariant_factors(&(0..10).map(|k| 10 / gcd(k, 10)).collect::<Vec<_>>()),
            vec![10]
        );
    }
}
