//! Discrete graphs: oriented edge lattices, vertex roles and the
//! endpoint/neighbor index maps shared by every solver in the crate.
//!
//! Every edge is a lattice `0, 1, ..., N` with unit spacing. Site `0` sits on
//! the edge's start vertex and site `N` on its end vertex. Vertex and edge ids
//! are 1-based, as in the text format.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    /// Driven by a control signal.
    Control,
    /// Held at zero.
    Clamped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexRole {
    Boundary(BoundaryKind),
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeEnd {
    Start,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscreteEdge {
    pub id: EdgeId,
    pub start: VertexId,
    pub end: VertexId,
    /// Lattice size `N`; the edge carries sites `0..=N`.
    pub n_points: usize,
}

/// One entry of `E(v)`: an edge touching `v` and the side it touches on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    /// Position of the edge in [`DiscreteGraph::edges`].
    pub edge: usize,
    pub side: EdgeEnd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: EdgeId,
    pub start: VertexId,
    pub end: VertexId,
    pub n_points: usize,
}

/// Unvalidated graph description, parsed from the line-oriented text format:
///
/// ```text
/// # 3-star, center v4
/// edge 1 1 4 3
/// edge 2 2 4 3
/// edge 3 3 4 3
/// boundary 1 control
/// ```
///
/// Degree-1 vertices without a `boundary` directive are clamped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSpec {
    pub edges: Vec<EdgeSpec>,
    pub boundaries: Vec<(VertexId, BoundaryKind)>,
}

impl GraphSpec {
    pub fn edge(mut self, id: usize, start: usize, end: usize, n_points: usize) -> Self {
        self.edges.push(EdgeSpec {
            id: EdgeId(id),
            start: VertexId(start),
            end: VertexId(end),
            n_points,
        });
        self
    }

    pub fn boundary(mut self, vertex: usize, kind: BoundaryKind) -> Self {
        self.boundaries.push((VertexId(vertex), kind));
        self
    }

    pub fn build(&self) -> Result<DiscreteGraph> {
        build_graph(self)
    }
}

fn parse_int(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what} '{token}'"),
    })
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut spec = GraphSpec::default();
        for (idx, raw) in s.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = content.split_whitespace();
            let Some(directive) = tokens.next() else {
                continue;
            };
            match directive {
                "edge" => {
                    let id = parse_int(tokens.next(), line, "edge id")?;
                    let start = parse_int(tokens.next(), line, "start vertex")?;
                    let end = parse_int(tokens.next(), line, "end vertex")?;
                    let n = parse_int(tokens.next(), line, "lattice size")?;
                    spec = spec.edge(id, start, end, n);
                }
                "boundary" => {
                    let vertex = parse_int(tokens.next(), line, "vertex")?;
                    let kind = match tokens.next() {
                        Some("control") => BoundaryKind::Control,
                        Some("clamped") => BoundaryKind::Clamped,
                        Some(other) => {
                            return Err(Error::Parse {
                                line,
                                message: format!("unknown boundary kind '{other}'"),
                            })
                        }
                        None => {
                            return Err(Error::Parse {
                                line,
                                message: "missing boundary kind".into(),
                            })
                        }
                    };
                    spec = spec.boundary(vertex, kind);
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown directive '{other}'"),
                    })
                }
            }
            if let Some(extra) = tokens.next() {
                return Err(Error::Parse {
                    line,
                    message: format!("unexpected token '{extra}'"),
                });
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "edge {} {} {} {}", e.id.0, e.start.0, e.end.0, e.n_points)?;
        }
        for (v, kind) in &self.boundaries {
            let kind = match kind {
                BoundaryKind::Control => "control",
                BoundaryKind::Clamped => "clamped",
            };
            writeln!(f, "boundary {} {kind}", v.0)?;
        }
        Ok(())
    }
}

/// A validated, immutable discrete graph.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteGraph {
    /// Sorted by edge id.
    edges: Vec<DiscreteEdge>,
    /// Indexed by `vertex id - 1`.
    roles: Vec<VertexRole>,
    incidence: Vec<Vec<Incidence>>,
    positions: HashMap<EdgeId, usize>,
}

pub fn build_graph(spec: &GraphSpec) -> Result<DiscreteGraph> {
    if spec.edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut edges: Vec<DiscreteEdge> = Vec::with_capacity(spec.edges.len());
    let mut seen_ids = BTreeSet::new();
    let mut seen_pairs: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    for e in &spec.edges {
        if !seen_ids.insert(e.id) {
            return Err(Error::DuplicateEdge(e.id));
        }
        if e.start.0 == 0 {
            return Err(Error::UnknownVertex(e.start));
        }
        if e.end.0 == 0 {
            return Err(Error::UnknownVertex(e.end));
        }
        if e.start == e.end {
            return Err(Error::SelfLoop(e.id));
        }
        if e.n_points < 2 {
            return Err(Error::TooFewPoints {
                edge: e.id,
                n_points: e.n_points,
            });
        }
        let pair = (e.start.min(e.end), e.start.max(e.end));
        if let Some(&other) = seen_pairs.get(&pair) {
            return Err(Error::ParallelEdges(other, e.id));
        }
        seen_pairs.insert(pair, e.id);
        edges.push(DiscreteEdge {
            id: e.id,
            start: e.start,
            end: e.end,
            n_points: e.n_points,
        });
    }
    edges.sort_by_key(|e| e.id);

    let max_vertex = edges.iter().map(|e| e.start.0.max(e.end.0)).max().unwrap_or(0);
    let mut incidence = vec![Vec::new(); max_vertex];
    for (pos, e) in edges.iter().enumerate() {
        incidence[e.start.0 - 1].push(Incidence {
            edge: pos,
            side: EdgeEnd::Start,
        });
        incidence[e.end.0 - 1].push(Incidence {
            edge: pos,
            side: EdgeEnd::End,
        });
    }
    if let Some(missing) = incidence.iter().position(Vec::is_empty) {
        return Err(Error::NonDenseVertices {
            max: max_vertex,
            missing: missing + 1,
        });
    }

    // Connectivity by breadth-first search from v1.
    let mut visited = vec![false; max_vertex];
    let mut queue = VecDeque::from([0usize]);
    visited[0] = true;
    while let Some(v) = queue.pop_front() {
        for inc in &incidence[v] {
            let e = &edges[inc.edge];
            let other = match inc.side {
                EdgeEnd::Start => e.end.0 - 1,
                EdgeEnd::End => e.start.0 - 1,
            };
            if !visited[other] {
                visited[other] = true;
                queue.push_back(other);
            }
        }
    }
    if visited.iter().any(|v| !v) {
        return Err(Error::Disconnected);
    }

    let mut roles: Vec<VertexRole> = incidence
        .iter()
        .map(|inc| {
            if inc.len() == 1 {
                VertexRole::Boundary(BoundaryKind::Clamped)
            } else {
                VertexRole::Internal
            }
        })
        .collect();
    let mut flagged = BTreeSet::new();
    for &(v, kind) in &spec.boundaries {
        if v.0 == 0 || v.0 > max_vertex {
            return Err(Error::UnknownVertex(v));
        }
        if !flagged.insert(v) {
            return Err(Error::DuplicateBoundary(v));
        }
        if incidence[v.0 - 1].len() != 1 {
            return Err(Error::BoundaryNotLeaf(v));
        }
        roles[v.0 - 1] = VertexRole::Boundary(kind);
    }

    let positions = edges.iter().enumerate().map(|(p, e)| (e.id, p)).collect();
    Ok(DiscreteGraph {
        edges,
        roles,
        incidence,
        positions,
    })
}

impl DiscreteGraph {
    pub fn edges(&self) -> &[DiscreteEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.roles.len()).map(VertexId)
    }

    pub fn role(&self, v: VertexId) -> Result<VertexRole> {
        self.check_vertex(v)?;
        Ok(self.roles[v.0 - 1])
    }

    pub fn is_internal(&self, v: VertexId) -> bool {
        matches!(self.role(v), Ok(VertexRole::Internal))
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.is_internal(v))
    }

    /// The boundary set: every degree-1 vertex with its role.
    pub fn boundary(&self) -> impl Iterator<Item = (VertexId, BoundaryKind)> + '_ {
        self.vertices().filter_map(|v| match self.roles[v.0 - 1] {
            VertexRole::Boundary(kind) => Some((v, kind)),
            VertexRole::Internal => None,
        })
    }

    pub fn control_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.boundary()
            .filter(|&(_, k)| k == BoundaryKind::Control)
            .map(|(v, _)| v)
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.incident(v)?.len())
    }

    /// `E(v)`.
    pub fn incident(&self, v: VertexId) -> Result<&[Incidence]> {
        self.check_vertex(v)?;
        Ok(&self.incidence[v.0 - 1])
    }

    pub fn edge_position(&self, e: EdgeId) -> Result<usize> {
        self.positions.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn edge(&self, e: EdgeId) -> Result<&DiscreteEdge> {
        Ok(&self.edges[self.edge_position(e)?])
    }

    /// Lattice index of `v` on edge `e`: `0` at the start, `N_e` at the end.
    pub fn endpoint_index(&self, e: EdgeId, v: VertexId) -> Result<usize> {
        let edge = self.edge(e)?;
        if v == edge.start {
            Ok(0)
        } else if v == edge.end {
            Ok(edge.n_points)
        } else {
            Err(Error::NotIncident { edge: e, vertex: v })
        }
    }

    /// The interior lattice site adjacent to `v` on edge `e`.
    pub fn neighbor_index(&self, e: EdgeId, v: VertexId) -> Result<usize> {
        let edge = self.edge(e)?;
        match self.endpoint_index(e, v)? {
            0 => Ok(1),
            _ => Ok(edge.n_points - 1),
        }
    }

    /// Lattice position of `v` on the edge at position `pos`, by side.
    pub(crate) fn site_of(&self, inc: &Incidence) -> (usize, usize) {
        let e = &self.edges[inc.edge];
        match inc.side {
            EdgeEnd::Start => (0, 1),
            EdgeEnd::End => (e.n_points, e.n_points - 1),
        }
    }

    /// Shortest lattice distance from `source` to every site, as
    /// `distances[edge position][j]`.
    pub fn lattice_distances(&self, source: VertexId) -> Result<Vec<Vec<usize>>> {
        self.check_vertex(source)?;
        let m = self.vertex_count();
        let mut dist = vec![usize::MAX; m];
        dist[source.0 - 1] = 0;
        // Bellman-Ford style relaxation; graphs here are tiny.
        for _ in 0..m {
            let mut changed = false;
            for e in &self.edges {
                let (a, b) = (e.start.0 - 1, e.end.0 - 1);
                if dist[a] != usize::MAX && dist[a] + e.n_points < dist[b] {
                    dist[b] = dist[a] + e.n_points;
                    changed = true;
                }
                if dist[b] != usize::MAX && dist[b] + e.n_points < dist[a] {
                    dist[a] = dist[b] + e.n_points;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(self
            .edges
            .iter()
            .map(|e| {
                let (da, db) = (dist[e.start.0 - 1], dist[e.end.0 - 1]);
                (0..=e.n_points).map(|j| (da + j).min(db + e.n_points - j)).collect()
            })
            .collect())
    }

    /// The description this graph was built from, in canonical order.
    pub fn to_spec(&self) -> GraphSpec {
        let mut spec = GraphSpec::default();
        for e in &self.edges {
            spec = spec.edge(e.id.0, e.start.0, e.end.0, e.n_points);
        }
        for (v, kind) in self.boundary() {
            spec = spec.boundary(v.0, kind);
        }
        spec
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 == 0 || v.0 > self.roles.len() {
            Err(Error::UnknownVertex(v))
        } else {
            Ok(())
        }
    }
}

/// The star `S_k`: edge `i` runs from `v_i` to the center `v_{k+1}`, every
/// edge has the given lattice size, `v_1` is controlled and the other leaves
/// are clamped.
pub fn star_graph(lengths: &[usize]) -> Result<DiscreteGraph> {
    let center = lengths.len() + 1;
    let mut spec = GraphSpec::default();
    for (i, &n) in lengths.iter().enumerate() {
        spec = spec.edge(i + 1, i + 1, center, n);
    }
    spec.boundary(1, BoundaryKind::Control).build()
}

/// A single edge `v1 -> v2` controlled at `v1` and clamped at `v2`.
pub fn interval_graph(n_points: usize) -> Result<DiscreteGraph> {
    GraphSpec::default()
        .edge(1, 1, 2, n_points)
        .boundary(1, BoundaryKind::Control)
        .build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> DiscreteGraph {
        star_graph(&[3, 3, 3]).unwrap()
    }

    #[test]
    fn star_has_three_leaves_and_a_degree_three_center() {
        let g = star3();
        let leaves: Vec<_> = g.boundary().map(|(v, _)| v).collect();
        assert_eq!(leaves, vec![VertexId(1), VertexId(2), VertexId(3)]);
        assert_eq!(g.degree(VertexId(4)).unwrap(), 3);
        assert_eq!(g.internal_vertices().collect::<Vec<_>>(), vec![VertexId(4)]);
        assert_eq!(g.control_vertices().collect::<Vec<_>>(), vec![VertexId(1)]);
    }

    #[test]
    fn interval_has_no_internal_vertex() {
        let g = interval_graph(5).unwrap();
        assert_eq!(g.boundary().count(), 2);
        assert_eq!(g.internal_vertices().count(), 0);
        assert_eq!(g.endpoint_index(EdgeId(1), VertexId(2)).unwrap(), 5);
    }

    #[test]
    fn path_middle_vertex_is_internal_with_degree_two() {
        let g = GraphSpec::default().edge(1, 1, 2, 3).edge(2, 2, 3, 4).build().unwrap();
        assert!(g.is_internal(VertexId(2)));
        assert_eq!(g.degree(VertexId(2)).unwrap(), 2);
    }

    #[test]
    fn endpoint_and_neighbor_indices() {
        let g = star3();
        assert_eq!(g.endpoint_index(EdgeId(1), VertexId(4)).unwrap(), 3);
        assert_eq!(g.endpoint_index(EdgeId(1), VertexId(1)).unwrap(), 0);
        assert_eq!(g.neighbor_index(EdgeId(1), VertexId(1)).unwrap(), 1);
        assert_eq!(g.neighbor_index(EdgeId(1), VertexId(4)).unwrap(), 2);
        let short = interval_graph(2).unwrap();
        assert_eq!(short.neighbor_index(EdgeId(1), VertexId(2)).unwrap(), 1);
        assert_eq!(short.neighbor_index(EdgeId(1), VertexId(1)).unwrap(), 1);
    }

    #[test]
    fn index_maps_reject_non_incident_pairs() {
        let g = star3();
        assert!(matches!(
            g.endpoint_index(EdgeId(1), VertexId(2)),
            Err(Error::NotIncident { .. })
        ));
        assert!(matches!(
            g.neighbor_index(EdgeId(2), VertexId(3)),
            Err(Error::NotIncident { .. })
        ));
        assert!(matches!(
            g.endpoint_index(EdgeId(9), VertexId(1)),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn build_errors() {
        let disconnected = GraphSpec::default().edge(1, 1, 2, 3).edge(2, 3, 4, 3);
        assert!(matches!(disconnected.build(), Err(Error::Disconnected)));
        let looped = GraphSpec::default().edge(1, 1, 1, 3);
        assert!(matches!(looped.build(), Err(Error::SelfLoop(_))));
        let short = GraphSpec::default().edge(1, 1, 2, 1);
        assert!(matches!(short.build(), Err(Error::TooFewPoints { .. })));
        let dup = GraphSpec::default().edge(1, 1, 2, 3).edge(1, 2, 3, 3);
        assert!(matches!(dup.build(), Err(Error::DuplicateEdge(_))));
        let parallel = GraphSpec::default().edge(1, 1, 2, 3).edge(2, 2, 1, 4);
        assert!(matches!(parallel.build(), Err(Error::ParallelEdges(..))));
        let gap = GraphSpec::default().edge(1, 1, 3, 3);
        assert!(matches!(gap.build(), Err(Error::NonDenseVertices { .. })));
        let inner = GraphSpec::default()
            .edge(1, 1, 2, 3)
            .edge(2, 2, 3, 3)
            .boundary(2, BoundaryKind::Control);
        assert!(matches!(inner.build(), Err(Error::BoundaryNotLeaf(_))));
        assert!(matches!(GraphSpec::default().build(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn parses_text_format() {
        let text =
            "# star\nedge 1 1 4 3\nedge 2 2 4 3   # second\n\nedge 3 3 4 3\nboundary 1 control\nboundary 2 clamped\n";
        let spec: GraphSpec = text.parse().unwrap();
        assert_eq!(spec.edges.len(), 3);
        assert_eq!(spec.build().unwrap(), star3());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = "edge 1 1 2 3\nedge 2 2 x 3".parse::<GraphSpec>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = "boundary 1 floating".parse::<GraphSpec>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = "edge 1 1 2 3 7".parse::<GraphSpec>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = "vertex 1".parse::<GraphSpec>().unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn lattice_distance_on_star() {
        let g = star_graph(&[3, 4, 2]).unwrap();
        let d = g.lattice_distances(VertexId(1)).unwrap();
        assert_eq!(d[0], vec![0, 1, 2, 3]);
        assert_eq!(d[1], vec![7, 6, 5, 4, 3]);
        assert_eq!(d[2], vec![5, 4, 3]);
    }
}
