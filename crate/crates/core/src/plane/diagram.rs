//! Recognizing Dynkin and extended Dynkin diagrams among induced subgraphs.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::geometry::{bits, IncidenceGraph, VertexSet};
use super::PlaneError;
use crate::lattices::AdeTag;

/// A Dynkin diagram, possibly extended (`Ã5`, `D̃7`, `Ẽ6`, …).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramType {
    pub tag: AdeTag,
    pub affine: bool,
}

impl DiagramType {
    pub fn finite(tag: AdeTag) -> Self {
        DiagramType { tag, affine: false }
    }

    pub fn extended(tag: AdeTag) -> Self {
        DiagramType { tag, affine: true }
    }

    /// Number of nodes.
    pub fn nodes(self) -> usize {
        self.tag.rank() + usize::from(self.affine)
    }

    /// Adjacency lists of the diagram, in an order where every node after the
    /// first is adjacent to an earlier one.
    pub fn pattern(self) -> Vec<Vec<usize>> {
        let n = self.nodes();
        let mut adj = vec![Vec::new(); n];
        let mut link = |a: usize, b: usize| {
            adj[a].push(b);
            adj[b].push(a);
        };
        match (self.tag, self.affine) {
            (AdeTag::A(_), false) => (1..n).for_each(|i| link(i - 1, i)),
            (AdeTag::A(_), true) => {
                (1..n).for_each(|i| link(i - 1, i));
                link(n - 1, 0);
            }
            (AdeTag::D(m), affine) => {
                // chain 0..k with two leaves at node 0, and two more at node k-1 if extended
                let k = if affine { m - 3 } else { m - 2 };
                (1..k).for_each(|i| link(i - 1, i));
                link(0, k);
                link(0, k + 1);
                if affine {
                    link(k - 1, k + 2);
                    link(k - 1, k + 3);
                }
            }
            (AdeTag::E(m), affine) => {
                let arms: [usize; 3] = match (m, affine) {
                    (6, false) => [1, 2, 2],
                    (7, false) => [1, 2, 3],
                    (8, false) => [1, 2, 4],
                    (6, true) => [2, 2, 2],
                    (7, true) => [1, 3, 3],
                    _ => [1, 2, 5],
                };
                let mut next = 1;
                for len in arms {
                    let mut prev = 0;
                    for _ in 0..len {
                        link(prev, next);
                        prev = next;
                        next += 1;
                    }
                }
            }
        }
        adj
    }

    /// Whether this is a valid diagram (`Ã1` and `D̃` below 4 excluded).
    pub fn validate(self) -> Result<Self, PlaneError> {
        self.tag
            .validate()
            .map_err(|e| PlaneError::Parse(e.to_string()))?;
        if self.affine && self.tag == AdeTag::A(1) {
            return Err(PlaneError::Parse("Ã1 is not a simple graph".into()));
        }
        Ok(self)
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.affine {
            return write!(f, "{}", self.tag);
        }
        let (letter, n) = match self.tag {
            AdeTag::A(n) => ('A', n),
            AdeTag::D(n) => ('D', n),
            AdeTag::E(n) => ('E', n),
        };
        write!(f, "{letter}\u{303}{n}")
    }
}

impl Serialize for DiagramType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `D7`, and `D̃7`, `D~7` or `~D7` for extended diagrams.
impl FromStr for DiagramType {
    type Err = PlaneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (plain, affine) = match t.strip_prefix('~') {
            Some(r) => (r.to_string(), true),
            None if t.contains(['~', '\u{303}']) => (t.replace(['~', '\u{303}'], ""), true),
            None => (t.to_string(), false),
        };
        let tag: AdeTag = plain
            .parse()
            .map_err(|_| PlaneError::Parse(format!("unknown diagram {s:?}")))?;
        DiagramType { tag, affine }.validate()
    }
}

/// Connected components of the subgraph induced on `set`.
pub fn components(g: &IncidenceGraph, set: VertexSet) -> Vec<VertexSet> {
    let mut rest = set;
    let mut out = Vec::new();
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= g.neighbors(v) & set;
            }
            frontier = next & !comp;
            comp |= next;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// Number of vertices in the arm leaving `from` through `first`.
fn arm_length(g: &IncidenceGraph, set: VertexSet, from: usize, first: usize) -> Option<usize> {
    let (mut prev, mut cur, mut len) = (from, first, 1);
    loop {
        let rest = g.neighbors(cur) & set & !(1 << prev);
        match rest.count_ones() {
            0 => return Some(len),
            1 => {
                prev = cur;
                cur = rest.trailing_zeros() as usize;
                len += 1;
            }
            _ => return None,
        }
    }
}

/// Identify a connected induced subgraph as a (possibly extended) Dynkin
/// diagram; `None` for any other shape.
pub fn identify_connected(g: &IncidenceGraph, set: VertexSet) -> Option<DiagramType> {
    let verts: Vec<usize> = bits(set).collect();
    let n = verts.len();
    let deg: Vec<usize> = verts
        .iter()
        .map(|&v| (g.neighbors(v) & set).count_ones() as usize)
        .collect();
    let edges = deg.iter().sum::<usize>() / 2;
    if n == 1 {
        return Some(DiagramType::finite(AdeTag::A(1)));
    }
    if edges == n {
        return (n >= 3 && deg.iter().all(|&d| d == 2))
            .then(|| DiagramType::extended(AdeTag::A(n - 1)));
    }
    if edges + 1 != n {
        return None;
    }
    let branch: Vec<usize> = verts
        .iter()
        .zip(&deg)
        .filter(|(_, &d)| d >= 3)
        .map(|(&v, _)| v)
        .collect();
    let arms = |b: usize| -> Option<Vec<usize>> {
        let mut a: Vec<usize> = bits(g.neighbors(b) & set)
            .map(|f| arm_length(g, set, b, f))
            .collect::<Option<_>>()?;
        a.sort();
        Some(a)
    };
    match branch[..] {
        [] => Some(DiagramType::finite(AdeTag::A(n))),
        [b] => {
            let a = arms(b)?;
            let t = match a[..] {
                [1, 1, 1, 1] => DiagramType::extended(AdeTag::D(4)),
                [1, 1, _] => DiagramType::finite(AdeTag::D(n)),
                [1, 2, 2] => DiagramType::finite(AdeTag::E(6)),
                [1, 2, 3] => DiagramType::finite(AdeTag::E(7)),
                [1, 2, 4] => DiagramType::finite(AdeTag::E(8)),
                [2, 2, 2] => DiagramType::extended(AdeTag::E(6)),
                [1, 3, 3] => DiagramType::extended(AdeTag::E(7)),
                [1, 2, 5] => DiagramType::extended(AdeTag::E(8)),
                _ => return None,
            };
            Some(t)
        }
        [b1, b2] => {
            let two_leaves = |b: usize| {
                (g.neighbors(b) & set).count_ones() == 3
                    && bits(g.neighbors(b) & set)
                        .filter(|&v| (g.neighbors(v) & set).count_ones() == 1)
                        .count()
                        == 2
            };
            (two_leaves(b1) && two_leaves(b2)).then(|| DiagramType::extended(AdeTag::D(n - 1)))
        }
        _ => None,
    }
}

/// Identify every component of the induced subgraph, sorted; fails on a
/// component that is not a Dynkin diagram.
pub fn identify(g: &IncidenceGraph, set: VertexSet) -> Result<Vec<DiagramType>, PlaneError> {
    let mut out = components(g, set)
        .into_iter()
        .map(|c| {
            identify_connected(g, c).ok_or_else(|| {
                PlaneError::Unrecognized(format!(
                    "component with {} vertices is not a Dynkin diagram",
                    c.count_ones()
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    Ok(out)
}
