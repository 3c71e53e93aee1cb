//! Helpers shared by the classification tests and the acceptance target.

use std::collections::BTreeSet;

use k3fib::classify::{complement_of, embed_d4, fibration_class_at, lift_to_sum};
use k3fib::lattices::{
    orthogonal_complement, roots_of, standard_root_lattice, AdeTag, IntLattice, RootType,
};
use k3fib::niemeier::lookup;

/// All 4-tuples of roots of `l` with the D4 Cartan Gram, deduplicated by the
/// sublattice they span (identified by its set of positive roots).
pub fn all_d4_sublattices(l: &IntLattice) -> Vec<Vec<Vec<i64>>> {
    let roots = roots_of(l).unwrap();
    let n = roots.len();
    let ip = |a: usize, b: usize| l.inner(&roots[a], &roots[b]);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&j| ip(c, j) == -1).collect();
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if ip(a, b) != 0 {
                    continue;
                }
                for &d in &nb[j + 1..] {
                    if ip(a, d) != 0 || ip(b, d) != 0 {
                        continue;
                    }
                    let basis = [&roots[a], &roots[c], &roots[b], &roots[d]];
                    let mut span = BTreeSet::new();
                    for coeffs in positive_d4_roots() {
                        let v: Vec<i64> = (0..l.rank())
                            .map(|k| (0..4).map(|m| coeffs[m] * basis[m][k]).sum())
                            .collect();
                        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                        span.insert(v.max(neg));
                    }
                    if seen.insert(span) {
                        out.push(basis.iter().map(|v| v.to_vec()).collect());
                    }
                }
            }
        }
    }
    out
}

/// The 12 positive roots of D4 in the simple-root basis (node 2 central).
pub fn positive_d4_roots() -> Vec<[i64; 4]> {
    let d4 = standard_root_lattice(AdeTag::D(4)).unwrap();
    roots_of(&d4)
        .unwrap()
        .into_iter()
        .filter(|r| r.iter().all(|&x| x >= 0))
        .map(|r| [r[0], r[1], r[2], r[3]])
        .collect()
}

/// Niemeier lattices with a component of rank at most 8 that contains `D4`,
/// one case per component type.
pub const EMBEDDING_CASES: [(&str, AdeTag); 8] = [
    ("A5^4 D4", AdeTag::D(4)),
    ("A7^2 D5^2", AdeTag::D(5)),
    ("A9^2 D6", AdeTag::D(6)),
    ("A11 D7 E6", AdeTag::D(7)),
    ("A11 D7 E6", AdeTag::E(6)),
    ("A17 E7", AdeTag::E(7)),
    ("D8^3", AdeTag::D(8)),
    ("D16 E8", AdeTag::E(8)),
];

/// Every `D4` sublattice of the component gives the same class as the
/// standard embedding; returns the number of sublattices checked.
pub fn check_embedding_independence(key: &str, tag: AdeTag) -> usize {
    let n = lookup(&key.parse::<RootType>().unwrap()).unwrap();
    let index = n.components.iter().position(|&c| c == tag).unwrap();
    let reference = fibration_class_at(n, index).unwrap();
    let comp = standard_root_lattice(tag).unwrap();
    let subs = all_d4_sublattices(&comp);
    assert!(!subs.is_empty());
    let std_m = orthogonal_complement(&embed_d4(tag).unwrap(), &comp).unwrap();
    for sub in &subs {
        let local = orthogonal_complement(sub, &comp).unwrap();
        assert_eq!(local.rank(), std_m.rank());
        let data = complement_of(n, &lift_to_sum(n, index, sub)).unwrap();
        assert_eq!(data.r_m, reference.r_m, "{key} / {tag}");
        assert_eq!(data.torsion, reference.torsion, "{key} / {tag}");
        assert_eq!(data.discriminant, vec![2, 2]);
        let q: Vec<String> = data.q_values.iter().map(ToString::to_string).collect();
        assert_eq!(q, reference.complement_q_values);
    }
    subs.len()
}
