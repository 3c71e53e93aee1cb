//! Points, lines and the incidence graph of `P²(F4)`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use super::PlaneError;
use crate::genusone::F4;

/// Points (and, dually, lines) of the plane.
pub const PLANE_SIZE: usize = 21;
/// Vertices of the incidence graph: points `0..21`, then lines `21..42`.
pub const VERTEX_COUNT: usize = 2 * PLANE_SIZE;

/// A normalized projective triple: the first nonzero coordinate is 1.
pub type Triple = [F4; 3];

fn normalize(v: Triple) -> Option<Triple> {
    let lead = v.iter().copied().find(|c| !c.is_zero())?;
    let inv = lead.inv().expect("nonzero");
    Some(v.map(|c| c * inv))
}

fn dot(p: &Triple, l: &Triple) -> F4 {
    p[0] * l[0] + p[1] * l[1] + p[2] * l[2]
}

fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        a[1] * b[2] + a[2] * b[1],
        a[2] * b[0] + a[0] * b[2],
        a[0] * b[1] + a[1] * b[0],
    ]
}

fn bits_key(t: &Triple) -> [u8; 3] {
    t.map(|c| c.bits())
}

/// All normalized triples in lexicographic order (`0 < 1 < ϱ < ϱ²`).
fn canonical_triples() -> Vec<Triple> {
    let mut out: Vec<Triple> = Vec::new();
    for a in F4::ALL {
        for b in F4::ALL {
            for c in F4::ALL {
                if let Some(t) = normalize([a, b, c]) {
                    if t == [a, b, c] {
                        out.push(t);
                    }
                }
            }
        }
    }
    out.sort_by_key(bits_key);
    out
}

/// A vertex of the incidence graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Point(usize),
    Line(usize),
}

impl Vertex {
    pub fn from_index(v: usize) -> Vertex {
        assert!(v < VERTEX_COUNT, "vertex {v} out of range");
        if v < PLANE_SIZE {
            Vertex::Point(v)
        } else {
            Vertex::Line(v - PLANE_SIZE)
        }
    }

    pub fn index(self) -> usize {
        match self {
            Vertex::Point(i) => i,
            Vertex::Line(i) => PLANE_SIZE + i,
        }
    }

    pub fn is_point(self) -> bool {
        matches!(self, Vertex::Point(_))
    }

    pub fn coordinates(self) -> Triple {
        let g = plane();
        match self {
            Vertex::Point(i) => g.points[i],
            Vertex::Line(i) => g.lines[i],
        }
    }
}

fn fmt_f4_list(f: &mut fmt::Formatter<'_>, cs: &[F4]) -> fmt::Result {
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

/// Points print in the affine chart `(x, y)` when `z ≠ 0` and as `[x, y, 0]`
/// otherwise; lines print as `⟨a, b, c⟩` for `ax + by + cz = 0`.
impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.coordinates();
        match self {
            Vertex::Point(_) if !t[2].is_zero() => {
                let inv = t[2].inv().expect("nonzero");
                write!(f, "(")?;
                fmt_f4_list(f, &[t[0] * inv, t[1] * inv])?;
                write!(f, ")")
            }
            Vertex::Point(_) => {
                write!(f, "[")?;
                fmt_f4_list(f, &t)?;
                write!(f, "]")
            }
            Vertex::Line(_) => {
                write!(f, "⟨")?;
                fmt_f4_list(f, &t)?;
                write!(f, "⟩")
            }
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_coords(body: &str) -> Result<Vec<F4>, PlaneError> {
    body.split(',')
        .map(|c| {
            c.trim()
                .parse::<F4>()
                .map_err(|e| PlaneError::Parse(format!("{c:?}: {e}")))
        })
        .collect()
}

/// Accepts `P7`, `L3` (canonical indices), `(x, y)`, `[x, y, z]` for points
/// and `⟨a, b, c⟩` or `<a, b, c>` for lines.
impl FromStr for Vertex {
    type Err = PlaneError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PlaneError::Parse(format!("cannot read vertex {s:?}"));
        let inner =
            |open: &str, close: &str| s.strip_prefix(open).and_then(|r| r.strip_suffix(close));
        if let Some(i) = s
            .strip_prefix(['P', 'p'])
            .and_then(|r| r.parse::<usize>().ok())
        {
            return if i < PLANE_SIZE {
                Ok(Vertex::Point(i))
            } else {
                Err(bad())
            };
        }
        if let Some(i) = s
            .strip_prefix(['L', 'l'])
            .and_then(|r| r.parse::<usize>().ok())
        {
            return if i < PLANE_SIZE {
                Ok(Vertex::Line(i))
            } else {
                Err(bad())
            };
        }
        let g = plane();
        if let Some(body) = inner("(", ")") {
            let c = parse_coords(body)?;
            let [x, y] = c[..] else { return Err(bad()) };
            return g
                .point_index([x, y, F4::ONE])
                .map(Vertex::Point)
                .ok_or_else(bad);
        }
        if let Some(body) = inner("[", "]") {
            let c = parse_coords(body)?;
            let [x, y, z] = c[..] else { return Err(bad()) };
            return g.point_index([x, y, z]).map(Vertex::Point).ok_or_else(bad);
        }
        if let Some(body) = inner("⟨", "⟩").or_else(|| inner("<", ">")) {
            let c = parse_coords(body)?;
            let [a, b, cc] = c[..] else { return Err(bad()) };
            return g.line_index([a, b, cc]).map(Vertex::Line).ok_or_else(bad);
        }
        Err(bad())
    }
}

/// Bitmask over the 42 vertices.
pub type VertexSet = u64;

/// The point–line incidence graph of `P²(F4)`.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    pub points: Vec<Triple>,
    pub lines: Vec<Triple>,
    /// Neighbor masks, indexed by vertex.
    adjacency: Vec<VertexSet>,
    /// For each line, the mask of its points (bits `0..21`).
    line_points: Vec<u32>,
}

/// Summary numbers of the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneStats {
    pub points: usize,
    pub lines: usize,
    pub edges: usize,
    pub regular_degree: Option<usize>,
    pub bipartite: bool,
    pub girth: Option<usize>,
}

/// Build the incidence graph in canonical vertex order.
pub fn build_plane() -> IncidenceGraph {
    let points = canonical_triples();
    let lines = points.clone();
    let mut adjacency = vec![0u64; VERTEX_COUNT];
    let mut line_points = vec![0u32; PLANE_SIZE];
    for (i, p) in points.iter().enumerate() {
        for (j, l) in lines.iter().enumerate() {
            if dot(p, l).is_zero() {
                adjacency[i] |= 1 << (PLANE_SIZE + j);
                adjacency[PLANE_SIZE + j] |= 1 << i;
                line_points[j] |= 1 << i;
            }
        }
    }
    IncidenceGraph {
        points,
        lines,
        adjacency,
        line_points,
    }
}

/// The shared instance of the graph.
pub fn plane() -> &'static IncidenceGraph {
    static PLANE: OnceLock<IncidenceGraph> = OnceLock::new();
    PLANE.get_or_init(build_plane)
}

impl IncidenceGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Points of line `l` as a mask over point indices.
    pub fn points_on(&self, l: usize) -> u32 {
        self.line_points[l]
    }

    pub fn point_index(&self, t: Triple) -> Option<usize> {
        let n = normalize(t)?;
        self.points
            .binary_search_by_key(&bits_key(&n), bits_key)
            .ok()
    }

    pub fn line_index(&self, t: Triple) -> Option<usize> {
        self.point_index(t)
    }

    /// The line through two distinct points.
    pub fn join(&self, p: usize, q: usize) -> usize {
        assert_ne!(p, q, "join of a point with itself");
        self.line_index(cross(&self.points[p], &self.points[q]))
            .expect("distinct points span a line")
    }

    /// The point on two distinct lines.
    pub fn meet(&self, l: usize, m: usize) -> usize {
        assert_ne!(l, m, "meet of a line with itself");
        self.point_index(cross(&self.lines[l], &self.lines[m]))
            .expect("distinct lines meet in a point")
    }

    /// The duality `Point(i) ↔ Line(i)`, an automorphism of the graph.
    pub fn dual(&self, v: usize) -> usize {
        (v + PLANE_SIZE) % VERTEX_COUNT
    }

    /// The automorphism induced by `x ↦ x²` on coordinates.
    pub fn frobenius(&self, v: usize) -> usize {
        match Vertex::from_index(v) {
            Vertex::Point(i) => self
                .point_index(self.points[i].map(F4::square))
                .expect("valid triple"),
            Vertex::Line(i) => {
                PLANE_SIZE
                    + self
                        .line_index(self.lines[i].map(F4::square))
                        .expect("valid triple")
            }
        }
    }

    pub fn is_bipartite(&self) -> bool {
        let points: VertexSet = (1 << PLANE_SIZE) - 1;
        (0..self.vertex_count()).all(|v| {
            let same_side = if v < PLANE_SIZE { points } else { !points };
            self.adjacency[v] & same_side == 0
        })
    }

    /// Length of a shortest cycle, by breadth-first search from every vertex.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in bits(self.adjacency[u]) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn stats(&self) -> PlaneStats {
        let d0 = self.degree(0);
        let regular = (0..self.vertex_count()).all(|v| self.degree(v) == d0);
        PlaneStats {
            points: self.points.len(),
            lines: self.lines.len(),
            edges: self.edge_count(),
            regular_degree: regular.then_some(d0),
            bipartite: self.is_bipartite(),
            girth: self.girth(),
        }
    }
}

/// Indices of the set bits of a mask, ascending.
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let g = plane();
        assert_eq!(g.points.len(), 21);
        assert_eq!(g.points[0], [F4::ZERO, F4::ZERO, F4::ONE]);
        assert_eq!(g.points[1], [F4::ZERO, F4::ONE, F4::ZERO]);
        assert_eq!(Vertex::Point(0).to_string(), "(0, 0)");
        assert_eq!(Vertex::Point(1).to_string(), "[0, 1, 0]");
    }

    #[test]
    fn joins_and_meets() {
        let g = plane();
        for p in 0..PLANE_SIZE {
            for q in 0..PLANE_SIZE {
                if p != q {
                    let l = g.join(p, q);
                    assert_eq!(g.points_on(l) & (1 << p | 1 << q), 1 << p | 1 << q);
                    assert_eq!(
                        g.meet(l, (l + 1) % PLANE_SIZE) == p,
                        g.points_on((l + 1) % PLANE_SIZE) >> p & 1 == 1
                    );
                }
            }
        }
    }

    #[test]
    fn vertex_parsing_round_trips() {
        for v in 0..VERTEX_COUNT {
            let x = Vertex::from_index(v);
            assert_eq!(x.to_string().parse::<Vertex>().unwrap(), x);
        }
        assert_eq!("P3".parse::<Vertex>().unwrap(), Vertex::Point(3));
        assert_eq!("<0,0,1>".parse::<Vertex>().unwrap(), Vertex::Line(0));
        assert_eq!(
            "[ϱ, ϱ, ϱ]".parse::<Vertex>().unwrap(),
            "(1, 1)".parse::<Vertex>().unwrap()
        );
        for bad in ["P21", "(1)", "[0,0,0]", "Q1", "(2, 0)"] {
            assert!(bad.parse::<Vertex>().is_err(), "{bad}");
        }
    }

    #[test]
    fn automorphisms_preserve_incidence() {
        let g = plane();
        for u in 0..VERTEX_COUNT {
            for v in 0..VERTEX_COUNT {
                assert_eq!(g.adjacent(u, v), g.adjacent(g.dual(u), g.dual(v)));
                assert_eq!(g.adjacent(u, v), g.adjacent(g.frobenius(u), g.frobenius(v)));
            }
        }
    }
}
