//! Chordless cycles of the incidence graph as point tuples.
//!
//! An induced `2n`-cycle is the same as points `P₁, …, Pₙ` such that no
//! join line `PᵢPᵢ₊₁` contains a third point of the tuple. The lines of such
//! a tuple are automatically distinct: if `PᵢPᵢ₊₁ = PₖPₖ₊₁` with `i ≠ k`,
//! that line holds one of `Pₖ, Pₖ₊₁` besides `Pᵢ, Pᵢ₊₁` once `n ≥ 3`.

use serde::Serialize;

use super::geometry::{plane, IncidenceGraph, Vertex, PLANE_SIZE};

/// The two fixed starting points of every search. `PGL₃(F4)` acts
/// 2-transitively on points, so every ordered pair of distinct points starts
/// the same number of tuples.
pub const CANONICAL_PAIR: (usize, usize) = (0, 1);
/// Ordered pairs of distinct points.
pub const ORDERED_PAIRS: u64 = (PLANE_SIZE * (PLANE_SIZE - 1)) as u64;

/// Result of the chordless-cycle search for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSearch {
    pub n: usize,
    pub exists: bool,
    /// Ordered point tuples over the whole plane (`2n` per cycle).
    pub tuple_count: u64,
    pub cycle_count: u64,
    /// Points of one cycle, in order.
    pub witness: Option<Vec<Vertex>>,
}

/// Whether the points form a chordless cycle in the given order.
pub fn is_chordless_cycle(g: &IncidenceGraph, points: &[usize]) -> bool {
    let n = points.len();
    if n < 3 || points.iter().any(|&p| p >= PLANE_SIZE) {
        return false;
    }
    let mut mask = 0u32;
    for &p in points {
        if mask >> p & 1 == 1 {
            return false;
        }
        mask |= 1 << p;
    }
    (0..n).all(|i| {
        let (p, q) = (points[i], points[(i + 1) % n]);
        g.points_on(g.join(p, q)) & mask == (1 << p | 1 << q)
    })
}

/// The lines `PᵢPᵢ₊₁` of a point cycle.
pub fn cycle_lines(g: &IncidenceGraph, points: &[usize]) -> Vec<usize> {
    let n = points.len();
    (0..n)
        .map(|i| g.join(points[i], points[(i + 1) % n]))
        .collect()
}

/// Vertex mask (points and lines) of a point cycle.
pub fn cycle_vertex_set(g: &IncidenceGraph, points: &[usize]) -> u64 {
    let pts = points.iter().fold(0u64, |m, &p| m | 1 << p);
    cycle_lines(g, points)
        .into_iter()
        .fold(pts, |m, l| m | 1 << (PLANE_SIZE + l))
}

struct Search<'a, F: FnMut(&[usize])> {
    g: &'a IncidenceGraph,
    n: usize,
    tuple: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[usize])> Search<'_, F> {
    /// `chosen`: mask of tuple points; `covered`: union of the lines
    /// `P₀P₁, …, Pₖ₋₂Pₖ₋₁` excluding the newest one.
    fn extend(&mut self, chosen: u32, covered: u32) {
        let k = self.tuple.len();
        let last = self.tuple[k - 1];
        if k == self.n {
            let first = self.tuple[0];
            let closing = self.g.points_on(self.g.join(last, first));
            if closing & chosen == (1 << last | 1 << first) {
                debug_assert!(is_chordless_cycle(self.g, &self.tuple));
                (self.visit)(&self.tuple);
            }
            return;
        }
        let prev_line = if k >= 2 {
            self.g.points_on(self.g.join(self.tuple[k - 2], last))
        } else {
            0
        };
        let blocked = covered | prev_line | chosen;
        let earlier = chosen & !(1 << last);
        for p in 0..PLANE_SIZE {
            if blocked >> p & 1 == 1 {
                continue;
            }
            let line = self.g.points_on(self.g.join(last, p));
            if line & earlier != 0 {
                continue;
            }
            self.tuple.push(p);
            self.extend(chosen | 1 << p, covered | prev_line);
            self.tuple.pop();
        }
    }
}

/// Visit every chordless point cycle of length `n` starting with the
/// canonical pair, in lexicographic order.
pub fn for_each_canonical_cycle(n: usize, visit: impl FnMut(&[usize])) {
    if !(3..=PLANE_SIZE).contains(&n) {
        return;
    }
    let (a, b) = CANONICAL_PAIR;
    let mut s = Search {
        g: plane(),
        n,
        tuple: vec![a, b],
        visit,
    };
    s.extend(1 << a | 1 << b, 0);
}

/// Search for induced `2n`-cycles.
pub fn chordless_cycles(n: usize) -> CycleSearch {
    let g = plane();
    let mut fixed = 0u64;
    let mut witness = None;
    for_each_canonical_cycle(n, |t| {
        fixed += 1;
        if witness.is_none() {
            witness = Some(t.to_vec());
        }
    });
    let tuple_count = fixed * ORDERED_PAIRS;
    if let Some(w) = &witness {
        let lines = cycle_lines(g, w);
        let mut distinct = lines.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), lines.len(), "cycle lines must be distinct");
    }
    CycleSearch {
        n,
        exists: witness.is_some(),
        tuple_count,
        cycle_count: tuple_count / (2 * n as u64),
        witness: witness.map(|w| w.into_iter().map(Vertex::Point).collect()),
    }
}

/// A `2n`-cycle in the graph, chords allowed: `n` distinct points and `n`
/// distinct lines, alternating.
pub fn plain_cycle(n: usize) -> Option<Vec<Vertex>> {
    if !(3..=PLANE_SIZE).contains(&n) {
        return None;
    }
    fn go(
        g: &IncidenceGraph,
        n: usize,
        pts: &mut Vec<usize>,
        lines: &mut Vec<usize>,
        used_l: u32,
    ) -> bool {
        let last = *pts.last().unwrap();
        let on_last =
            (0..PLANE_SIZE).filter(|&l| g.points_on(l) >> last & 1 == 1 && used_l >> l & 1 == 0);
        if pts.len() == n {
            for l in on_last {
                if g.points_on(l) >> pts[0] & 1 == 1 {
                    lines.push(l);
                    return true;
                }
            }
            return false;
        }
        let used_p = pts.iter().fold(0u32, |m, &p| m | 1 << p);
        for l in on_last.collect::<Vec<_>>() {
            for p in 0..PLANE_SIZE {
                if g.points_on(l) >> p & 1 == 1 && used_p >> p & 1 == 0 {
                    pts.push(p);
                    lines.push(l);
                    if go(g, n, pts, lines, used_l | 1 << l) {
                        return true;
                    }
                    pts.pop();
                    lines.pop();
                }
            }
        }
        false
    }
    let g = plane();
    let (mut pts, mut lines) = (vec![0], Vec::new());
    go(g, n, &mut pts, &mut lines, 0).then(|| {
        pts.iter()
            .zip(&lines)
            .flat_map(|(&p, &l)| [Vertex::Point(p), Vertex::Line(l)])
            .collect()
    })
}

/// Largest `n` for which [`plain_cycle_count`] enumerates.
pub const PLAIN_COUNT_MAX: usize = 8;

/// Number of `2n`-cycles with chords allowed, for `n ≤ PLAIN_COUNT_MAX`.
///
/// A cycle is a tuple of distinct points whose consecutive join lines are
/// distinct; the same 2-transitivity reduction as for chordless cycles
/// applies.
pub fn plain_cycle_count(n: usize) -> Option<u64> {
    if !(3..=PLAIN_COUNT_MAX).contains(&n) {
        return None;
    }
    fn go(
        g: &IncidenceGraph,
        n: usize,
        first: usize,
        last: usize,
        k: usize,
        used_p: u32,
        used_l: u32,
    ) -> u64 {
        if k == n {
            let closing = g.join(last, first);
            return u64::from(used_l >> closing & 1 == 0);
        }
        let mut total = 0;
        for p in 0..PLANE_SIZE {
            if used_p >> p & 1 == 1 {
                continue;
            }
            let l = g.join(last, p);
            if used_l >> l & 1 == 0 {
                total += go(g, n, first, p, k + 1, used_p | 1 << p, used_l | 1 << l);
            }
        }
        total
    }
    let g = plane();
    let (a, b) = CANONICAL_PAIR;
    let fixed = go(g, n, a, b, 2, 1 << a | 1 << b, 1 << g.join(a, b));
    Some(fixed * ORDERED_PAIRS / (2 * n as u64))
}
