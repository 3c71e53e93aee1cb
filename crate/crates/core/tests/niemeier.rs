//! Catalog checks against an independent transcription of the glue codes in
//! class notation.

use k3fib::lattices::{discriminant_group, roots_of, AdeTag, RootType};
use k3fib::niemeier::{
    catalog, glue_from_classes, lookup, parse_catalog, write_catalog, CatalogRecord, NiemeierError,
    CATALOG_TEXT,
};
use num_bigint::BigInt;
use sha2::{Digest, Sha256};

fn tags(s: &str) -> Vec<AdeTag> {
    s.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

fn digits(s: &str) -> Vec<usize> {
    s.chars()
        .map(|c| c.to_digit(10).unwrap() as usize)
        .collect()
}

/// `prefix` followed by every cyclic shift of `cycle`, then `suffix`.
fn cyclic(prefix: &str, cycle: &str, suffix: &str) -> Vec<Vec<usize>> {
    let c = digits(cycle);
    (0..c.len())
        .map(|k| {
            let mut row = digits(prefix);
            row.extend(c[k..].iter().chain(&c[..k]));
            row.extend(digits(suffix));
            row
        })
        .collect()
}

fn rows(list: &[&str]) -> Vec<Vec<usize>> {
    list.iter().map(|r| digits(r)).collect()
}

/// Glue codes in class notation, components in glue order.
fn class_table() -> Vec<(&'static str, Vec<Vec<usize>>)> {
    let even_perms_0123: Vec<Vec<usize>> = {
        let mut out = Vec::new();
        let base = [0usize, 1, 2, 3];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let mut seen = [false; 4];
                        if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                            let inversions = (0..4)
                                .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                                .filter(|&(i, j)| p[i] > p[j])
                                .count();
                            if inversions % 2 == 0 {
                                out.push(p.iter().map(|&i| base[i]).collect());
                            }
                        }
                    }
                }
            }
        }
        out
    };
    vec![
        ("D24", rows(&["1"])),
        ("D16 E8", rows(&["10"])),
        ("E8 E8 E8", vec![]),
        ("A24", vec![vec![5]]),
        ("D12 D12", rows(&["12", "21"])),
        ("A17 E7", rows(&["31"])),
        ("D10 E7 E7", rows(&["110", "301"])),
        ("A15 D9", rows(&["21"])),
        ("D8 D8 D8", cyclic("", "122", "")),
        ("A12 A12", rows(&["15"])),
        ("A11 D7 E6", rows(&["111"])),
        ("E6 E6 E6 E6", cyclic("1", "012", "")),
        ("A9 A9 D6", rows(&["240", "501", "053"])),
        ("D6 D6 D6 D6", even_perms_0123),
        ("A8 A8 A8", cyclic("", "114", "")),
        ("A7 A7 D5 D5", rows(&["1112", "1721"])),
        ("A6 A6 A6 A6", cyclic("1", "216", "")),
        ("A5 A5 A5 A5 D4", {
            let mut r = cyclic("2", "024", "0");
            r.extend(rows(&["33001", "30302", "30033"]));
            r
        }),
        // hexacode {(a, b, c, f(1), f(w), f(w^2)) : f = ax^2 + bx + c} over F4 = {0, 1, w, w^2},
        // labelled 0, 1, 2, 3 so that class addition is F4 addition; an F2 basis
        (
            "D4 D4 D4 D4 D4 D4",
            rows(&["001111", "002222", "010123", "020231", "100132", "200213"]),
        ),
        ("A4 A4 A4 A4 A4 A4", cyclic("1", "01441", "")),
        ("A3 A3 A3 A3 A3 A3 A3 A3", cyclic("3", "2001011", "")),
        (
            "A2 A2 A2 A2 A2 A2 A2 A2 A2 A2 A2 A2",
            cyclic("2", "11211122212", ""),
        ),
        (
            "A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1 A1",
            cyclic("1", "00000101001100110101111", ""),
        ),
    ]
}

fn records_from_classes() -> Vec<CatalogRecord> {
    class_table()
        .into_iter()
        .map(|(comps, classes)| {
            let components = tags(comps);
            let glue = classes
                .iter()
                .map(|c| glue_from_classes(&components, c).unwrap())
                .collect();
            CatalogRecord {
                key: RootType::new(components.clone()).to_string(),
                components,
                glue,
            }
        })
        .collect()
}

#[test]
fn data_file_matches_class_notation() {
    let expected = write_catalog(&records_from_classes());
    if std::env::var_os("K3FIB_REGEN").is_some() {
        std::fs::write(
            concat!(env!("CARGO_MANIFEST_DIR"), "/data/niemeier.txt"),
            &expected,
        )
        .unwrap();
    }
    assert_eq!(CATALOG_TEXT, expected);
}

#[test]
fn round_trip_is_bit_exact() {
    let parsed = parse_catalog(CATALOG_TEXT).unwrap();
    assert_eq!(write_catalog(&parsed), CATALOG_TEXT);
}

#[test]
fn checksum() {
    let digest = Sha256::digest(CATALOG_TEXT.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(
        hex,
        "3af5815bc6157481e0fd8d6a9cfb03851132a929ee64f92553443a7018e309a1"
    );
}

#[test]
fn twenty_three_verified_entries() {
    let cat = catalog();
    assert_eq!(cat.len(), 23);
    for n in cat {
        assert_eq!(n.realized.rank(), 24);
        assert!(n.realized.is_unimodular(), "{}", n.root_type);
        // glue order is the square root of the root-sum determinant
        let d = n.root_sum.det();
        assert_eq!(n.glue_group_order().pow(2), d, "{}", n.root_type);
        // minimum norm 2: enumerated roots are exactly the root-system roots
        assert_eq!(
            roots_of(&n.realized).unwrap().len(),
            n.root_type.root_count()
        );
        assert_eq!(discriminant_group(&n.realized).order(), 1);
    }
}

#[test]
fn classical_root_counts() {
    let d24 = lookup(&"D24".parse().unwrap()).unwrap();
    assert_eq!(roots_of(&d24.realized).unwrap().len(), 1104);
    let a5d4 = lookup(&"A5^4 D4".parse().unwrap()).unwrap();
    assert_eq!(roots_of(&a5d4.realized).unwrap().len(), 144);
    assert_eq!(a5d4.glue_group_order(), BigInt::from(72));
}

#[test]
fn lookup_keys() {
    assert!(lookup(&"A11 D7 E6".parse().unwrap()).is_ok());
    assert!(lookup(&"E8^3".parse().unwrap()).unwrap().glue.is_empty());
    let a24 = lookup(&"A24".parse().unwrap()).unwrap();
    assert_eq!(a24.glue_group_order(), BigInt::from(5));
    let a = lookup(&"A5^4 D4".parse().unwrap()).unwrap();
    let b = lookup(&"D4^6".parse().unwrap()).unwrap();
    assert_ne!(a.root_type, b.root_type);
}

#[test]
fn leech_and_unknown_keys_are_rejected() {
    match lookup(&RootType::default()) {
        Err(NiemeierError::NoSuchLattice(k)) => assert_eq!(k, "Leech"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        lookup(&"A1^4 D20".parse().unwrap()),
        Err(NiemeierError::NoSuchLattice(_))
    ));
}

#[test]
fn corrupted_glue_is_reported_per_entry() {
    let text = CATALOG_TEXT.replacen("glue 1/2", "glue 1/3", 1);
    let (good, bad) = k3fib::niemeier::load_lenient(&text).unwrap();
    assert_eq!(good.len() + bad.len(), 23);
    assert!(!bad.is_empty());
}
