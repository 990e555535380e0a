//! Tropical curves drawn in a base diagram.
//!
//! A curve is a plane graph with rational vertex positions and primitive
//! integral edge directions. Ends leave the graph and either land on the
//! interior of a boundary edge or run into a node along its cut direction.
//! A curve without vertices is a single straight segment: two ends leaving
//! one interior point in opposite directions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::diagram::{BaseDiagram, Location};
use crate::error::{Error, Result};
use crate::lattice::{
    direction_between, segments_intersect, wedge, IntVec, RatPoint, UnimodularAffineMap,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalVertex {
    pub id: String,
    pub position: RatPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    /// Primitive, pointing from `from` to `to`.
    pub direction: IntVec,
    pub weight: u32,
}

/// Where an end starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndSource {
    Vertex(String),
    /// Interior start point of a vertexless segment.
    Point(RatPoint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Terminal {
    /// Lands on the open interior of a boundary edge.
    Boundary { landing: RatPoint },
    /// Runs into the node with this index, along its cut direction.
    Node(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEnd {
    pub id: String,
    pub source: EndSource,
    /// Primitive, outgoing.
    pub direction: IntVec,
    pub weight: u32,
    pub terminal: Terminal,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TropicalCurve {
    pub vertices: Vec<TropicalVertex>,
    pub edges: Vec<InternalEdge>,
    pub ends: Vec<CurveEnd>,
}

/// An edge or end seen from one of its vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfEdge<'a> {
    pub element: &'a str,
    /// Outgoing from the vertex.
    pub direction: IntVec,
    pub weight: u32,
}

impl TropicalCurve {
    pub fn new() -> Self {
        TropicalCurve::default()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.ends.is_empty()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, position: RatPoint) -> &mut Self {
        self.vertices.push(TropicalVertex {
            id: id.into(),
            position,
        });
        self
    }

    /// Adds an edge between existing vertices; the direction is read off their positions.
    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        from: &str,
        to: &str,
        weight: u32,
    ) -> Result<&mut Self> {
        let id = id.into();
        let p = self.position_of(from)?;
        let q = self.position_of(to)?;
        let (direction, _) = direction_between(p, q)
            .map_err(|_| Error::InvalidCurve(format!("edge {id} joins coincident points")))?;
        self.edges.push(InternalEdge {
            id,
            from: from.to_string(),
            to: to.to_string(),
            direction,
            weight,
        });
        Ok(self)
    }

    pub fn add_end(
        &mut self,
        id: impl Into<String>,
        source: EndSource,
        direction: IntVec,
        weight: u32,
        terminal: Terminal,
    ) -> Result<&mut Self> {
        if !direction.is_primitive() {
            return Err(Error::NonPrimitiveDirection {
                x: direction.x,
                y: direction.y,
            });
        }
        self.ends.push(CurveEnd {
            id: id.into(),
            source,
            direction,
            weight,
            terminal,
        });
        Ok(self)
    }

    pub fn vertex(&self, id: &str) -> Option<&TropicalVertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    fn position_of(&self, id: &str) -> Result<&RatPoint> {
        self.vertex(id)
            .map(|v| &v.position)
            .ok_or_else(|| Error::InvalidCurve(format!("unknown vertex {id}")))
    }

    pub fn end(&self, id: &str) -> Option<&CurveEnd> {
        self.ends.iter().find(|e| e.id == id)
    }

    pub fn end_start<'a>(&'a self, e: &'a CurveEnd) -> Option<&'a RatPoint> {
        match &e.source {
            EndSource::Vertex(v) => self.vertex(v).map(|v| &v.position),
            EndSource::Point(p) => Some(p),
        }
    }

    /// Where the end stops: its landing point or its node.
    pub fn end_stop(&self, d: &BaseDiagram, e: &CurveEnd) -> Option<RatPoint> {
        match &e.terminal {
            Terminal::Boundary { landing } => Some(landing.clone()),
            Terminal::Node(i) => d.nodes().get(*i).map(|n| n.position.clone()),
        }
    }

    /// Edges and ends incident to `vertex`, with outgoing directions.
    pub fn half_edges(&self, vertex: &str) -> Vec<HalfEdge<'_>> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.from == vertex {
                out.push(HalfEdge {
                    element: &e.id,
                    direction: e.direction,
                    weight: e.weight,
                });
            }
            if e.to == vertex {
                out.push(HalfEdge {
                    element: &e.id,
                    direction: IntVec::new(-e.direction.x, -e.direction.y),
                    weight: e.weight,
                });
            }
        }
        for e in &self.ends {
            if matches!(&e.source, EndSource::Vertex(v) if v == vertex) {
                out.push(HalfEdge {
                    element: &e.id,
                    direction: e.direction,
                    weight: e.weight,
                });
            }
        }
        out
    }

    pub fn is_standalone(&self) -> bool {
        self.ends
            .iter()
            .any(|e| matches!(e.source, EndSource::Point(_)))
    }

    /// Image under an integral affine map; node indices are kept.
    pub fn transformed(&self, map: &UnimodularAffineMap) -> Result<TropicalCurve> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| TropicalVertex {
                id: v.id.clone(),
                position: map.apply_point(&v.position),
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(InternalEdge {
                    direction: map.apply_vec(e.direction)?,
                    ..e.clone()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ends = self
            .ends
            .iter()
            .map(|e| {
                Ok(CurveEnd {
                    id: e.id.clone(),
                    source: match &e.source {
                        EndSource::Vertex(v) => EndSource::Vertex(v.clone()),
                        EndSource::Point(p) => EndSource::Point(map.apply_point(p)),
                    },
                    direction: map.apply_vec(e.direction)?,
                    weight: e.weight,
                    terminal: match &e.terminal {
                        Terminal::Boundary { landing } => Terminal::Boundary {
                            landing: map.apply_point(landing),
                        },
                        Terminal::Node(i) => Terminal::Node(*i),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TropicalCurve {
            vertices,
            edges,
            ends,
        })
    }
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    DuplicateId(String),
    UnknownVertex {
        element: String,
        vertex: String,
    },
    NonPrimitiveDirection {
        element: String,
        direction: IntVec,
    },
    ZeroWeight {
        element: String,
    },
    /// Endpoint is not a positive multiple of the stated direction away.
    NotCollinear {
        element: String,
    },
    VertexNotInterior {
        vertex: String,
        location: Location,
    },
    StartNotInterior {
        end: String,
        location: Location,
    },
    LandingNotOnEdgeInterior {
        end: String,
        location: Location,
    },
    UnknownNode {
        end: String,
        node: usize,
    },
    NotAlongCut {
        end: String,
        node: usize,
    },
    MalformedSegment(String),
    Crossing {
        first: String,
        second: String,
    },
    MeetsCut {
        element: String,
        node: usize,
    },
    Unbalanced {
        vertex: String,
        sum: IntVec,
    },
    Disconnected,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::DuplicateId(id) => write!(f, "duplicate id {id}"),
            Issue::UnknownVertex { element, vertex } => {
                write!(f, "{element} refers to unknown vertex {vertex}")
            }
            Issue::NonPrimitiveDirection { element, direction } => {
                write!(f, "{element} has non-primitive direction {direction}")
            }
            Issue::ZeroWeight { element } => write!(f, "{element} has weight 0"),
            Issue::NotCollinear { element } => {
                write!(f, "{element} does not point along its stated direction")
            }
            Issue::VertexNotInterior { vertex, location } => {
                write!(
                    f,
                    "vertex {vertex} is not in the open interior ({location:?})"
                )
            }
            Issue::StartNotInterior { end, location } => {
                write!(
                    f,
                    "end {end} starts at a point not in the open interior ({location:?})"
                )
            }
            Issue::LandingNotOnEdgeInterior { end, location } => {
                write!(
                    f,
                    "end {end} does not land in the interior of a boundary edge ({location:?})"
                )
            }
            Issue::UnknownNode { end, node } => {
                write!(f, "end {end} refers to unknown node {node}")
            }
            Issue::NotAlongCut { end, node } => {
                write!(
                    f,
                    "end {end} does not reach node {node} along its cut direction"
                )
            }
            Issue::MalformedSegment(msg) => write!(f, "{msg}"),
            Issue::Crossing { first, second } => write!(f, "{first} and {second} intersect"),
            Issue::MeetsCut { element, node } => {
                write!(f, "{element} meets the cut of node {node}")
            }
            Issue::Unbalanced { vertex, sum } => {
                write!(f, "vertex {vertex} is unbalanced (weighted sum {sum})")
            }
            Issue::Disconnected => write!(f, "curve is not connected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.issues.first() {
            None => Ok(()),
            Some(first) => Err(Error::InvalidCurve(first.to_string())),
        }
    }
}

/// Weighted sum of outgoing directions at every vertex must vanish.
pub fn check_balancing(c: &TropicalCurve) -> ValidationReport {
    let mut report = ValidationReport::default();
    for v in &c.vertices {
        let mut sx: i128 = 0;
        let mut sy: i128 = 0;
        for h in c.half_edges(&v.id) {
            sx += h.weight as i128 * h.direction.x as i128;
            sy += h.weight as i128 * h.direction.y as i128;
        }
        if sx != 0 || sy != 0 {
            report.issues.push(Issue::Unbalanced {
                vertex: v.id.clone(),
                sum: IntVec::new(
                    sx.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
                    sy.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
                ),
            });
        }
    }
    report
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Joint<'a> {
    Vertex(&'a str),
    Standalone,
}

struct Segment<'a> {
    element: &'a str,
    from: RatPoint,
    to: RatPoint,
    joints: [Option<Joint<'a>>; 2],
    /// Outgoing direction at each joint.
    dirs: [IntVec; 2],
    node_terminal: Option<usize>,
}

/// Full geometric and combinatorial validation of `c` inside `d`.
pub fn validate(d: &BaseDiagram, c: &TropicalCurve) -> ValidationReport {
    let mut issues = Vec::new();

    let mut seen = BTreeSet::new();
    let ids = c
        .vertices
        .iter()
        .map(|v| &v.id)
        .chain(c.edges.iter().map(|e| &e.id))
        .chain(c.ends.iter().map(|e| &e.id));
    for id in ids {
        if !seen.insert(id.as_str()) {
            issues.push(Issue::DuplicateId(id.clone()));
        }
    }

    for v in &c.vertices {
        let location = d.contains(&v.position);
        if location != Location::Interior {
            issues.push(Issue::VertexNotInterior {
                vertex: v.id.clone(),
                location,
            });
        }
    }

    let mut segments: Vec<Segment<'_>> = Vec::new();

    for e in &c.edges {
        let mut ok = true;
        for vid in [&e.from, &e.to] {
            if c.vertex(vid).is_none() {
                issues.push(Issue::UnknownVertex {
                    element: e.id.clone(),
                    vertex: vid.clone(),
                });
                ok = false;
            }
        }
        if !e.direction.is_primitive() {
            issues.push(Issue::NonPrimitiveDirection {
                element: e.id.clone(),
                direction: e.direction,
            });
            ok = false;
        }
        if e.weight == 0 {
            issues.push(Issue::ZeroWeight {
                element: e.id.clone(),
            });
        }
        if !ok {
            continue;
        }
        let p = &c.vertex(&e.from).unwrap().position;
        let q = &c.vertex(&e.to).unwrap().position;
        match p.multiple_along(q, e.direction) {
            Some(t) if t.is_positive() => segments.push(Segment {
                element: &e.id,
                from: p.clone(),
                to: q.clone(),
                joints: [Some(Joint::Vertex(&e.from)), Some(Joint::Vertex(&e.to))],
                dirs: [e.direction, IntVec::new(-e.direction.x, -e.direction.y)],
                node_terminal: None,
            }),
            _ => issues.push(Issue::NotCollinear {
                element: e.id.clone(),
            }),
        }
    }

    for e in &c.ends {
        if e.weight == 0 {
            issues.push(Issue::ZeroWeight {
                element: e.id.clone(),
            });
        }
        if !e.direction.is_primitive() {
            issues.push(Issue::NonPrimitiveDirection {
                element: e.id.clone(),
                direction: e.direction,
            });
            continue;
        }
        let (start, joint) = match &e.source {
            EndSource::Vertex(v) => match c.vertex(v) {
                Some(vx) => (vx.position.clone(), Joint::Vertex(v)),
                None => {
                    issues.push(Issue::UnknownVertex {
                        element: e.id.clone(),
                        vertex: v.clone(),
                    });
                    continue;
                }
            },
            EndSource::Point(p) => {
                let location = d.contains(p);
                if location != Location::Interior {
                    issues.push(Issue::StartNotInterior {
                        end: e.id.clone(),
                        location,
                    });
                    continue;
                }
                (p.clone(), Joint::Standalone)
            }
        };
        let (stop, node_terminal) = match &e.terminal {
            Terminal::Boundary { landing } => {
                let location = d.contains(landing);
                if !matches!(location, Location::OnBoundaryEdge(_)) {
                    issues.push(Issue::LandingNotOnEdgeInterior {
                        end: e.id.clone(),
                        location,
                    });
                    continue;
                }
                (landing.clone(), None)
            }
            Terminal::Node(i) => {
                let Some(node) = d.nodes().get(*i) else {
                    issues.push(Issue::UnknownNode {
                        end: e.id.clone(),
                        node: *i,
                    });
                    continue;
                };
                if node.cut_direction != e.direction {
                    issues.push(Issue::NotAlongCut {
                        end: e.id.clone(),
                        node: *i,
                    });
                    continue;
                }
                (node.position.clone(), Some(*i))
            }
        };
        match start.multiple_along(&stop, e.direction) {
            Some(t) if t.is_positive() => segments.push(Segment {
                element: &e.id,
                from: start,
                to: stop,
                joints: [Some(joint), None],
                dirs: [e.direction, IntVec::new(-e.direction.x, -e.direction.y)],
                node_terminal,
            }),
            _ => issues.push(Issue::NotCollinear {
                element: e.id.clone(),
            }),
        }
    }

    if c.is_standalone() {
        check_standalone(c, &mut issues);
    }

    // Embedding: segments may only meet at a shared joint, and there only if
    // they leave it in different directions.
    for i in 0..segments.len() {
        for j in (i + 1)..segments.len() {
            let (a, b) = (&segments[i], &segments[j]);
            let mut shared = None;
            for (ka, ja) in a.joints.iter().enumerate() {
                for (kb, jb) in b.joints.iter().enumerate() {
                    if ja.is_some() && ja == jb {
                        shared = Some((ka, kb));
                    }
                }
            }
            let bad = match shared {
                Some((ka, kb)) => {
                    a.dirs[ka] == b.dirs[kb]
                        || (a.joints[1 - ka].is_some() && a.joints[1 - ka] == b.joints[1 - kb])
                }
                None => segments_intersect(&a.from, &a.to, &b.from, &b.to),
            };
            if bad {
                issues.push(Issue::Crossing {
                    first: a.element.to_string(),
                    second: b.element.to_string(),
                });
            }
        }
    }

    for s in &segments {
        for n in 0..d.nodes().len() {
            if s.node_terminal == Some(n) {
                continue;
            }
            let (p, q) = d.cut_segment(n);
            if segments_intersect(&s.from, &s.to, p, q) {
                issues.push(Issue::MeetsCut {
                    element: s.element.to_string(),
                    node: n,
                });
            }
        }
    }

    issues.extend(check_balancing(c).issues);

    if !is_connected(c) {
        issues.push(Issue::Disconnected);
    }

    ValidationReport { issues }
}

fn check_standalone(c: &TropicalCurve, issues: &mut Vec<Issue>) {
    let fail = |msg: &str| Issue::MalformedSegment(format!("vertexless segment: {msg}"));
    if !c.vertices.is_empty() || !c.edges.is_empty() {
        issues.push(fail(
            "a curve with a free start point cannot have vertices or edges",
        ));
        return;
    }
    if c.ends.len() != 2 {
        issues.push(fail("needs exactly two ends"));
        return;
    }
    let (e0, e1) = (&c.ends[0], &c.ends[1]);
    if e0.source != e1.source {
        issues.push(fail("both ends must start at the same point"));
    }
    if e0.direction != IntVec::new(-e1.direction.x, -e1.direction.y) || e0.weight != e1.weight {
        issues.push(fail("ends must be opposite with equal weights"));
    }
}

fn is_connected(c: &TropicalCurve) -> bool {
    if c.vertices.is_empty() {
        return true;
    }
    let index: BTreeMap<&str, usize> = c
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id.as_str(), i))
        .collect();
    let mut parent: Vec<usize> = (0..c.vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in &c.edges {
        if let (Some(&a), Some(&b)) = (index.get(e.from.as_str()), index.get(e.to.as_str())) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let root = find(&mut parent, 0);
    (0..c.vertices.len()).all(|i| find(&mut parent, i) == root)
}

/// `m = |v₁∧v₂|` at a trivalent weight-one vertex.
pub fn vertex_multiplicity(c: &TropicalCurve, vertex: &str) -> Result<i64> {
    if c.vertex(vertex).is_none() {
        return Err(Error::InvalidCurve(format!("unknown vertex {vertex}")));
    }
    let halves = c.half_edges(vertex);
    if halves.len() != 3 {
        return Err(Error::NonTrivalentVertex {
            vertex: vertex.to_string(),
            valence: halves.len(),
        });
    }
    if halves.iter().any(|h| h.weight != 1) {
        return Err(Error::WeightedVertexUnsupported {
            vertex: vertex.to_string(),
        });
    }
    let [a, b, c3] = [
        halves[0].direction,
        halves[1].direction,
        halves[2].direction,
    ];
    let sum_x = a.x as i128 + b.x as i128 + c3.x as i128;
    let sum_y = a.y as i128 + b.y as i128 + c3.y as i128;
    let w = [wedge(a, b).abs(), wedge(b, c3).abs(), wedge(c3, a).abs()];
    if sum_x != 0 || sum_y != 0 || w[0] != w[1] || w[1] != w[2] {
        return Err(Error::UnbalancedVertex {
            vertex: vertex.to_string(),
        });
    }
    i64::try_from(w[0]).map_err(|_| Error::Overflow)
}

/// Self-intersection `(m − 1)/2` contributed by a vertex of multiplicity `m`.
pub fn vertex_double_points(m: i64) -> Result<i64> {
    if m < 1 {
        return Err(Error::InvalidInput(format!("vertex multiplicity {m} < 1")));
    }
    if m % 2 == 0 {
        return Err(Error::NonIntegralSelfIntersection { m });
    }
    Ok((m - 1) / 2)
}

/// Boundary edge an end lands on.
pub fn landing_edge(d: &BaseDiagram, e: &CurveEnd) -> Result<usize> {
    match &e.terminal {
        Terminal::Node(_) => Err(Error::NotABoundaryEnd { end: e.id.clone() }),
        Terminal::Boundary { landing } => match d.contains(landing) {
            Location::OnBoundaryEdge(i) => Ok(i),
            other => Err(Error::InvalidCurve(format!(
                "end {} does not land in the interior of a boundary edge ({other:?})",
                e.id
            ))),
        },
    }
}

/// `μ = |direction ∧ edge direction|` for an end landing on the boundary.
pub fn end_multiplicity(d: &BaseDiagram, e: &CurveEnd) -> Result<i64> {
    let edge = landing_edge(d, e)?;
    if e.weight != 1 {
        return Err(Error::WeightedEndUnsupported { end: e.id.clone() });
    }
    let mu = wedge(e.direction, d.boundary_edges()[edge].direction).abs();
    if mu == 0 {
        return Err(Error::InvalidCurve(format!(
            "end {} runs parallel to the edge it lands on",
            e.id
        )));
    }
    i64::try_from(mu).map_err(|_| Error::Overflow)
}
