//! Induced Dynkin configurations and the roots around them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::cycles::{cycle_vertex_set, for_each_canonical_cycle, ORDERED_PAIRS};
use super::diagram::{identify, identify_connected, DiagramType};
use super::geometry::{bits, plane, IncidenceGraph, Vertex, VertexSet, PLANE_SIZE};
use super::PlaneError;
use crate::lattices::AdeTag;

/// A set of vertices claimed to induce an extended Dynkin diagram
/// (`Ãₙ` and `D̃ₙ` in practice).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub vertices: Vec<Vertex>,
    pub claimed_type: DiagramType,
}

impl Configuration {
    /// Checks that the induced subgraph is exactly the claimed diagram.
    pub fn new(mut vertices: Vec<Vertex>, claimed_type: DiagramType) -> Result<Self, PlaneError> {
        if !claimed_type.affine {
            return Err(PlaneError::InvalidConfiguration(format!(
                "configurations are extended diagrams, not {claimed_type}"
            )));
        }
        vertices.sort();
        vertices.dedup();
        let c = Configuration {
            vertices,
            claimed_type,
        };
        let found = identify_connected(plane(), c.mask());
        if c.vertices.len() != claimed_type.nodes() || found != Some(claimed_type) {
            return Err(PlaneError::InvalidConfiguration(format!(
                "the {} vertices induce {}, not {claimed_type}",
                c.vertices.len(),
                found.map_or_else(|| "no Dynkin diagram".to_string(), |d| d.to_string())
            )));
        }
        Ok(c)
    }

    pub fn mask(&self) -> VertexSet {
        self.vertices.iter().fold(0, |m, v| m | 1 << v.index())
    }
}

/// A count split between points and lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Split {
    pub points: usize,
    pub lines: usize,
}

impl Split {
    fn of(set: VertexSet) -> Split {
        let pts = set & ((1 << PLANE_SIZE) - 1);
        Split {
            points: pts.count_ones() as usize,
            lines: (set & !pts).count_ones() as usize,
        }
    }

    pub fn swapped(self) -> Split {
        Split {
            points: self.lines,
            lines: self.points,
        }
    }

    pub fn total(self) -> usize {
        self.points + self.lines
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.points, self.lines)
    }
}

/// Vertices around a configuration, split by side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConfigAnalysis {
    /// Vertices outside the configuration with no neighbor in it.
    pub disjoint: Split,
    pub disjoint_type: Vec<DiagramType>,
    /// Vertices with exactly one neighbor in the configuration.
    pub sections: Split,
    /// Outside vertices with at least two neighbors in the configuration.
    pub multiple: Split,
}

impl ConfigAnalysis {
    /// The same analysis with points and lines exchanged.
    pub fn dual(&self) -> ConfigAnalysis {
        ConfigAnalysis {
            disjoint: self.disjoint.swapped(),
            disjoint_type: self.disjoint_type.clone(),
            sections: self.sections.swapped(),
            multiple: self.multiple.swapped(),
        }
    }

    /// Representative of the analysis up to point–line duality: the smaller
    /// of the two, comparing the disjoint split first.
    pub fn up_to_duality(self) -> ConfigAnalysis {
        let d = self.dual();
        self.min(d)
    }
}

impl fmt::Display for ConfigAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let types: Vec<String> = self.disjoint_type.iter().map(|t| t.to_string()).collect();
        write!(
            f,
            "disjoint {} ({}), sections {}",
            self.disjoint,
            if types.is_empty() {
                "none".to_string()
            } else {
                types.join(" ")
            },
            self.sections
        )
    }
}

fn analyze_mask(g: &IncidenceGraph, set: VertexSet) -> Result<ConfigAnalysis, PlaneError> {
    let (mut disjoint, mut sections, mut multiple) = (0u64, 0u64, 0u64);
    for v in 0..g.vertex_count() {
        if set >> v & 1 == 1 {
            continue;
        }
        match (g.neighbors(v) & set).count_ones() {
            0 => disjoint |= 1 << v,
            1 => sections |= 1 << v,
            _ => multiple |= 1 << v,
        }
    }
    Ok(ConfigAnalysis {
        disjoint: Split::of(disjoint),
        disjoint_type: identify(g, disjoint)?,
        sections: Split::of(sections),
        multiple: Split::of(multiple),
    })
}

/// Count and identify the disjoint roots and the sections of a configuration.
pub fn analyze_config(c: &Configuration) -> Result<ConfigAnalysis, PlaneError> {
    analyze_mask(plane(), c.mask())
}

/// Result of a configuration search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigSearch {
    pub diagram: DiagramType,
    pub exists: bool,
    pub witness: Option<Configuration>,
}

/// Backtracking search for an induced copy of a connected pattern.
///
/// The graph is vertex-transitive (projective transformations and duality),
/// and the stabilizer of a point permutes the lines through it transitively,
/// so the first two pattern nodes are pinned to point 0 and its first line.
pub fn find_induced(g: &IncidenceGraph, pattern: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn go(
        g: &IncidenceGraph,
        pattern: &[Vec<usize>],
        image: &mut Vec<usize>,
        used: VertexSet,
    ) -> bool {
        let k = image.len();
        if k == pattern.len() {
            return true;
        }
        let mut cand = !used & ((1u64 << g.vertex_count()) - 1);
        for (j, &img) in image.iter().enumerate() {
            if pattern[k].contains(&j) {
                cand &= g.neighbors(img);
            } else {
                cand &= !g.neighbors(img);
            }
        }
        for v in bits(cand) {
            image.push(v);
            if go(g, pattern, image, used | 1 << v) {
                return true;
            }
            image.pop();
        }
        false
    }
    let mut image = Vec::new();
    match pattern.len() {
        0 => return Some(image),
        1 => return Some(vec![0]),
        _ => {}
    }
    assert!(
        pattern[1].contains(&0),
        "pattern nodes must be ordered along edges"
    );
    let first_line = g.neighbors(0).trailing_zeros() as usize;
    image.extend([0, first_line]);
    go(g, pattern, &mut image, 1 | 1 << first_line).then_some(image)
}

/// Search for an induced `D̃ₘ` (or any other connected diagram).
pub fn find_config(diagram: DiagramType) -> ConfigSearch {
    let g = plane();
    let found = find_induced(g, &diagram.pattern());
    let witness = found.map(|img| {
        Configuration::new(img.into_iter().map(Vertex::from_index).collect(), diagram)
            .expect("search produces induced copies")
    });
    ConfigSearch {
        diagram,
        exists: witness.is_some(),
        witness,
    }
}

/// Shorthand for `find_config(D̃ₘ)`.
pub fn find_affine_d(m: usize) -> ConfigSearch {
    find_config(DiagramType::extended(AdeTag::D(m)))
}

/// One analysis signature of the `2n`-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSignature {
    /// Up to point–line duality.
    pub analysis: ConfigAnalysis,
    /// Number of cycles (vertex sets) in the whole plane with this signature
    /// or its dual.
    pub cycles: u64,
    pub witness: Vec<Vertex>,
}

/// Group the chordless `2n`-cycles by their analysis, up to duality.
pub fn cycle_case_split(n: usize) -> Result<Vec<CaseSignature>, PlaneError> {
    let g = plane();
    let mut groups: BTreeMap<ConfigAnalysis, (u64, Vec<usize>)> = BTreeMap::new();
    let mut failure = None;
    for_each_canonical_cycle(n, |t| {
        if failure.is_some() {
            return;
        }
        match analyze_mask(g, cycle_vertex_set(g, t)) {
            Ok(a) => {
                let e = groups
                    .entry(a.up_to_duality())
                    .or_insert_with(|| (0, t.to_vec()));
                e.0 += 1;
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    groups
        .into_iter()
        .map(|(analysis, (count, t))| {
            let tuples = count * ORDERED_PAIRS;
            if !tuples.is_multiple_of(2 * n as u64) {
                return Err(PlaneError::Internal(format!(
                    "{tuples} tuples do not split into {n}-gons"
                )));
            }
            let vertices = cycle_vertex_set(g, &t);
            Ok(CaseSignature {
                analysis,
                cycles: tuples / (2 * n as u64),
                witness: bits(vertices).map(Vertex::from_index).collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_wrong_claims() {
        let g = plane();
        let l = g.join(0, 1);
        let v = vec![Vertex::Point(0), Vertex::Point(1), Vertex::Line(l)];
        assert!(Configuration::new(v.clone(), "~A2".parse().unwrap()).is_err());
        assert!(Configuration::new(v.clone(), "~E6".parse().unwrap()).is_err());
        assert!(Configuration::new(v, "A3".parse().unwrap()).is_err());
    }

    #[test]
    fn small_diagrams() {
        assert!(find_affine_d(4).exists);
        assert!(find_config("~A5".parse().unwrap()).exists);
        assert!(!find_config("~A3".parse().unwrap()).exists);
    }
}
