//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use k3fib::classify::{classify_all, compare_with_table, two_elementary_criterion, TABLE};
use k3fib::genusone::expr::parse_ratfn;
use k3fib::genusone::model::{multiply, negate};
use k3fib::genusone::qe::qe_fiber_at;
use k3fib::genusone::{
    add, catalog_models, enumerate_sections, model_by_label, on_model, order_of, qe_discriminant,
    qe_fibers, section_height, tate_local, verify_all, Kodaira, Place, Poly, SectionPt,
    WeierstrassModel, F4,
};
use k3fib::lattices::RootType;
use k3fib::plane::{
    chordless_cycles, cycle_case_split, find_affine_d, is_chordless_cycle, plane, DiagramType,
    Split, Vertex,
};
use num_rational::Rational64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn model(label: &str) -> WeierstrassModel {
    model_by_label(label).expect("catalog label").model.clone()
}

fn pt(x: &str, y: &str) -> SectionPt {
    SectionPt::new(parse_ratfn(x).unwrap(), parse_ratfn(y).unwrap())
}

fn table_reproduction() -> Outcome {
    let start = Instant::now();
    let classes = classify_all().map_err(|e| e.to_string())?;
    within(Duration::from_secs(60), start)?;
    ensure(classes.len() == 18, || format!("{} classes", classes.len()))?;
    let issues = compare_with_table(&classes);
    ensure(issues.is_empty(), || format!("{issues:?}"))?;
    let torsion: Vec<Vec<u64>> = classes.iter().map(|c| c.torsion.clone()).collect();
    let expected: Vec<Vec<u64>> = vec![
        vec![3, 6],
        vec![2, 2, 2, 2],
        vec![8],
        vec![10],
        vec![2, 2, 2],
        vec![4],
        vec![6],
        vec![3],
        vec![2, 2],
        vec![4],
        vec![6],
        vec![2, 2],
        vec![2],
        vec![2],
        vec![2],
        vec![],
        vec![],
        vec![],
    ];
    ensure(torsion == expected, || {
        format!("torsion in row order: {torsion:?}")
    })?;
    for (c, row) in classes.iter().zip(&TABLE) {
        let n: RootType = row.niemeier.parse().unwrap();
        let m: RootType = row.r_m.parse().unwrap();
        let same = c.id == row.id
            && c.niemeier_root_type == n
            && c.r_m == m
            && c.mw_rank == row.mw_rank
            && c.quasi_elliptic == row.quasi_elliptic;
        ensure(same, || format!("row {} differs", row.id))?;
    }
    Ok("18 rows match".into())
}

fn quasi_elliptic_flags() -> Outcome {
    let classes = classify_all().map_err(|e| e.to_string())?;
    let qe: BTreeSet<usize> = classes
        .iter()
        .filter(|c| c.quasi_elliptic)
        .map(|c| c.id)
        .collect();
    ensure(
        qe == BTreeSet::from([2, 5, 9, 12, 13, 14, 15, 16, 17, 18]),
        || format!("qe rows {qe:?}"),
    )?;
    for c in &classes {
        ensure(two_elementary_criterion(&c.r_m) == c.quasi_elliptic, || {
            format!("criteria disagree on row {}", c.id)
        })?;
    }
    Ok("qe rows {2,5,9,12..18}; both criteria agree on 18 rows".into())
}

fn gluing_invariant() -> Outcome {
    let classes = classify_all().map_err(|e| e.to_string())?;
    for c in &classes {
        ensure(c.complement_discriminant == [2, 2], || {
            format!("row {}: {:?}", c.id, c.complement_discriminant)
        })?;
        let mut q = c.complement_q_values.clone();
        q.sort();
        ensure(q == ["0", "1", "1", "1"], || {
            format!("row {}: q-values {q:?}", c.id)
        })?;
    }
    Ok(format!(
        "{} complements have (Z/2)² with q = {{0,1,1,1}}",
        classes.len()
    ))
}

fn model_verification() -> Outcome {
    let start = Instant::now();
    let reports: Vec<_> = verify_all()
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    within(Duration::from_secs(120), start)?;
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.label.as_str())
        .collect();
    ensure(failing.is_empty(), || format!("failing models {failing:?}"))?;
    let (mut elliptic, mut quasi) = (0, 0);
    for r in &reports {
        let w = model(&r.label);
        if r.quasi_elliptic {
            let rank: usize = qe_fibers(&w)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|f| f.dynkin_rank)
                .sum();
            ensure(rank == 20, || {
                format!("model {}: Dynkin rank {rank}", r.label)
            })?;
            quasi += 1;
        } else {
            let v: usize = r.fibers.iter().map(|f| f.vdelta).sum();
            ensure(v == 24, || format!("model {}: ord(Δ) sum {v}", r.label))?;
            elliptic += 1;
        }
    }
    ensure((elliptic, quasi) == (8, 11), || {
        format!("{elliptic} elliptic, {quasi} quasi-elliptic reports")
    })?;
    let f = tate_local(&model("3"), &Place::Infinity)
        .map_err(|e| e.to_string())?
        .fiber;
    ensure(f.kodaira == Kodaira::IStar(1) && f.delta_wild == 1, || {
        format!("model 3 at ∞: {} δ = {}", f.kodaira, f.delta_wild)
    })?;
    Ok(format!("{} reports pass", reports.len()))
}

fn torsion_orders() -> Outcome {
    let cases = [
        ("4", "t", "t", 10),
        ("3", "t^2(t+1)", "t^4(t+1)", 8),
        ("7", "t^2", "t^2", 6),
        ("7", "0", "0", 3),
        ("8", "0", "0", 3),
        ("4", "t^2/(t+1)^2", "t^4/(t+1)^3", 2),
        ("11", "1/t^2", "1/t^3", 2),
    ];
    for (label, x, y, n) in cases {
        let w = model(label);
        let p = pt(x, y);
        ensure(on_model(&w, &p), || {
            format!("({x}, {y}) is not on model {label}")
        })?;
        let found = order_of(&w, &p, 12).map_err(|e| e.to_string())?;
        ensure(found == n, || {
            format!("({x}, {y}) on model {label}: order {found}, expected {n}")
        })?;
    }
    Ok(format!("{} sections have the expected orders", cases.len()))
}

fn heights() -> Outcome {
    let h = |l: &str, x: &str, y: &str| {
        section_height(&model(l), &pt(x, y))
            .map(|r| r.height)
            .map_err(|e| e.to_string())
    };
    ensure(
        h("3", "t^2", "ϱt^4")? == Rational64::from_integer(1),
        || "model 3 height".into(),
    )?;
    ensure(
        h("6", "t^3+ϱt^2", "ϱ^2t^4")? == Rational64::new(4, 3),
        || "model 6 height".into(),
    )?;
    for cm in catalog_models() {
        let zero = section_height(&cm.model, &SectionPt::O)
            .map_err(|e| e.to_string())?
            .height;
        ensure(zero == Rational64::from_integer(0), || {
            format!("h(O) = {zero} on model {}", cm.label)
        })?;
    }
    Ok("heights 1 and 4/3; h(O) = 0 on every model".into())
}

fn section_enumeration() -> Outcome {
    let expected = [
        ("2", 16),
        ("5a", 8),
        ("5b", 8),
        ("9", 4),
        ("12", 4),
        ("13", 2),
        ("14", 2),
        ("15", 2),
        ("16", 1),
        ("17", 1),
        ("18", 1),
    ];
    for (label, n) in expected {
        let found = enumerate_sections(&model(label), 8, 2)
            .map_err(|e| e.to_string())?
            .len();
        ensure(found == n, || {
            format!("model {label}: {found} sections, expected {n}")
        })?;
    }
    Ok("section counts match for all quasi-elliptic models".into())
}

fn incidence_theorems() -> Outcome {
    let start = Instant::now();
    let exists: BTreeSet<usize> = (3..=21).filter(|&n| chordless_cycles(n).exists).collect();
    ensure(exists == BTreeSet::from([3, 4, 5, 6, 8, 9]), || {
        format!("cycles exist for {exists:?}")
    })?;
    let witness: Vec<usize> = [
        "(0,0)",
        "(ϱ²,0)",
        "(ϱ,1)",
        "(ϱ²,1)",
        "(ϱ,ϱ)",
        "(ϱ²,ϱ)",
        "(ϱ,ϱ²)",
        "(1,ϱ²)",
        "[0,1,0]",
    ]
    .iter()
    .map(|s| {
        s.parse::<Vertex>()
            .map(|v| v.index())
            .map_err(|e| e.to_string())
    })
    .collect::<Result<_, _>>()?;
    ensure(is_chordless_cycle(plane(), &witness), || {
        "the 9-point witness is rejected".into()
    })?;
    let d: BTreeSet<usize> = (4..=20).filter(|&m| find_affine_d(m).exists).collect();
    ensure(d == BTreeSet::from([4, 5, 6, 7, 8, 10, 12, 16]), || {
        format!("D̃m exists for {d:?}")
    })?;
    within(Duration::from_secs(600), start)?;
    Ok(format!("2n-cycles for n in {exists:?}; D̃m for m in {d:?}"))
}

fn configuration_counts() -> Outcome {
    let s = |points, lines| Split { points, lines };
    let expected = [
        (3, vec![(s(9, 9), s(9, 9))]),
        (4, vec![(s(7, 7), s(8, 8))]),
        (5, vec![(s(6, 6), s(5, 5))]),
        (6, vec![(s(4, 4), s(6, 6)), (s(4, 6), s(6, 0))]),
        (8, vec![(s(2, 3), s(4, 0))]),
        (9, vec![(s(1, 1), s(3, 3))]),
    ];
    for (n, want) in expected {
        let found: Vec<(Split, Split)> = cycle_case_split(n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|c| (c.analysis.disjoint, c.analysis.sections))
            .collect();
        ensure(found == want, || {
            let shown: Vec<String> = found.iter().map(|(d, s)| format!("{d}/{s}")).collect();
            format!("n = {n}: {}", shown.join(", "))
        })?;
    }
    let e6: DiagramType = "~E6".parse().map_err(|e| format!("{e:?}"))?;
    let six = cycle_case_split(6).map_err(|e| e.to_string())?;
    ensure(
        six.iter().any(|c| c.analysis.disjoint_type.contains(&e6)),
        || "no Ẽ6 among the 12-cycle cases".into(),
    )?;
    Ok("9+9/9+9, 7+7/8+8, 6+6/5+5, 4+4/6+6 and 4+6/6+0, 2+3/4+0, 1+1/3+3".into())
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u8..4, 0..=max_deg + 1)
        .prop_map(|c| Poly::new(c.into_iter().map(F4::from_bits).collect()))
}

fn combination(w: &WeierstrassModel, gens: &[SectionPt], coeffs: &[i64]) -> SectionPt {
    gens.iter().zip(coeffs).fold(SectionPt::O, |acc, (g, &k)| {
        let m = multiply(w, g, k.unsigned_abs());
        add(w, &acc, &if k < 0 { negate(w, &m) } else { m })
    })
}

fn property_suites() -> Outcome {
    const TRIALS: u32 = 128;
    let mut runner = TestRunner::new(Config {
        cases: TRIALS,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(
                poly_strategy(8),
                poly_strategy(12),
                poly_strategy(3),
                poly_strategy(3),
            ),
            |(a4, a6, alpha, beta)| {
                let a4n = &a4 + &alpha.square().square();
                let a6n = &(&a6 + &(&a4 * &alpha.square())) + &beta.square();
                prop_assert_eq!(qe_discriminant(&a4n, &a6n), qe_discriminant(&a4, &a6));
                Ok(())
            },
        )
        .map_err(|e| format!("Δ-invariance: {e}"))?;

    let w = model("6");
    let gens = [
        pt("0", "0"),
        pt("t^3+ϱt^2", "ϱ^2t^4"),
        pt("t^3+ϱ^2t^2", "ϱt^4"),
    ];
    let mut runner = TestRunner::new(Config {
        cases: TRIALS,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&prop::collection::vec(-2i64..=2, 9), |c| {
            let p = combination(&w, &gens, &c[0..3]);
            let q = combination(&w, &gens, &c[3..6]);
            let r = combination(&w, &gens, &c[6..9]);
            prop_assert!(on_model(&w, &p) && on_model(&w, &q) && on_model(&w, &r));
            prop_assert_eq!(add(&w, &add(&w, &p, &q), &r), add(&w, &p, &add(&w, &q, &r)));
            prop_assert_eq!(add(&w, &p, &q), add(&w, &q, &p));
            prop_assert!(add(&w, &p, &negate(&w, &p)).is_zero());
            Ok(())
        })
        .map_err(|e| format!("group law: {e}"))?;

    for cm in catalog_models() {
        let w = &cm.model;
        let inf = w.at_infinity();
        for c in F4::NONZERO {
            let (here, there) = (Place::at(c), Place::at(c.inv().unwrap()));
            let same = if w.is_quasi_elliptic() {
                let a = qe_fiber_at(w, &here)
                    .map_err(|e| e.to_string())?
                    .map(|f| f.kodaira);
                let b = qe_fiber_at(&inf, &there)
                    .map_err(|e| e.to_string())?
                    .map(|f| f.kodaira);
                a == b
            } else {
                let a = tate_local(w, &here).map_err(|e| e.to_string())?.fiber;
                let b = tate_local(&inf, &there).map_err(|e| e.to_string())?.fiber;
                (a.kodaira, a.v_delta, a.delta_wild) == (b.kodaira, b.v_delta, b.delta_wild)
            };
            ensure(same, || {
                format!("charts disagree on model {} at {here}", cm.label)
            })?;
        }
    }

    let sublattices: usize = common::EMBEDDING_CASES
        .iter()
        .map(|&(key, tag)| common::check_embedding_independence(key, tag))
        .sum();
    Ok(format!(
        "{TRIALS} Δ trials, {TRIALS} group-law trials, {} charts, {sublattices} D4 embeddings",
        catalog_models().len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("classification table", table_reproduction),
        ("quasi-elliptic flags", quasi_elliptic_flags),
        ("gluing invariant", gluing_invariant),
        ("model verification", model_verification),
        ("torsion orders", torsion_orders),
        ("heights", heights),
        ("section enumeration", section_enumeration),
        ("incidence theorems", incidence_theorems),
        ("configuration counts", configuration_counts),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} [{elapsed:.1?}]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name}: {detail} [{elapsed:.1?}]", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
