//! Almost toric base diagrams.
//!
//! A diagram is a strictly convex rational polygon (counterclockwise), a list of
//! focus-focus nodes each with a cut running straight to the boundary, and a
//! description of the ambient second homology used by the class computations.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    direction_between, int, on_segment, orient, segments_intersect, wedge, IntVec, RatPoint,
    Rational, UnimodularAffineMap,
};

/// One side of the polygon, oriented counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub start: RatPoint,
    pub end: RatPoint,
    /// Primitive, pointing from `start` to `end`.
    pub direction: IntVec,
    /// `end − start = affine_length · direction`.
    pub affine_length: Rational,
}

/// A focus-focus singular fibre together with its cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub position: RatPoint,
    /// Primitive; the cut is the ray from `position` in this direction up to the boundary.
    pub cut_direction: IntVec,
}

/// Homology bookkeeping for the total space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyModel {
    basis_labels: Vec<String>,
    intersection_form: Vec<Vec<i64>>,
    horizontal_sweep_class: Option<Vec<i64>>,
    vertical_sweep_class: Option<Vec<i64>>,
}

impl HomologyModel {
    pub fn new(
        basis_labels: Vec<String>,
        intersection_form: Vec<Vec<i64>>,
        horizontal_sweep_class: Option<Vec<i64>>,
        vertical_sweep_class: Option<Vec<i64>>,
    ) -> Result<Self> {
        let n = basis_labels.len();
        if intersection_form.len() != n || intersection_form.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidDiagram(format!(
                "intersection form must be {n}x{n} to match the basis"
            )));
        }
        for (i, row) in intersection_form.iter().enumerate() {
            for (j, entry) in row.iter().enumerate().take(i) {
                if *entry != intersection_form[j][i] {
                    return Err(Error::InvalidDiagram(
                        "intersection form is not symmetric".to_string(),
                    ));
                }
            }
        }
        for class in horizontal_sweep_class
            .iter()
            .chain(vertical_sweep_class.iter())
        {
            if class.len() != n {
                return Err(Error::InvalidDiagram(format!(
                    "sweep class has {} coefficients, basis has {n}",
                    class.len()
                )));
            }
        }
        Ok(HomologyModel {
            basis_labels,
            intersection_form,
            horizontal_sweep_class,
            vertical_sweep_class,
        })
    }

    /// `S²×S²`: `A` is the sphere over a horizontal segment, `B` over a vertical one.
    pub fn product_of_spheres() -> Self {
        HomologyModel {
            basis_labels: alloc::vec!["A".to_string(), "B".to_string()],
            intersection_form: alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]],
            horizontal_sweep_class: Some(alloc::vec![1, 0]),
            vertical_sweep_class: Some(alloc::vec![0, 1]),
        }
    }

    /// Exceptional spheres `E1, E2, E3` of a triple blow-up of the ball.
    pub fn triple_blowup() -> Self {
        HomologyModel {
            basis_labels: alloc::vec!["E1".to_string(), "E2".to_string(), "E3".to_string()],
            intersection_form: alloc::vec![
                alloc::vec![-1, 0, 0],
                alloc::vec![0, -1, 0],
                alloc::vec![0, 0, -1]
            ],
            horizontal_sweep_class: None,
            vertical_sweep_class: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn intersection_form(&self) -> &[Vec<i64>] {
        &self.intersection_form
    }

    pub fn horizontal_sweep_class(&self) -> Option<&[i64]> {
        self.horizontal_sweep_class.as_deref()
    }

    pub fn vertical_sweep_class(&self) -> Option<&[i64]> {
        self.vertical_sweep_class.as_deref()
    }

    /// `Q(u, v)`, exact.
    pub fn pair(&self, u: &[i64], v: &[i64]) -> Result<i128> {
        let n = self.rank();
        if u.len() != n || v.len() != n {
            return Err(Error::InvalidClass(format!(
                "expected {n} coefficients, got {} and {}",
                u.len(),
                v.len()
            )));
        }
        let mut acc: i128 = 0;
        for (ui, row) in u.iter().zip(&self.intersection_form) {
            for (vj, q) in v.iter().zip(row) {
                let term = (*ui as i128)
                    .checked_mul(*q as i128)
                    .and_then(|t| t.checked_mul(*vj as i128))
                    .ok_or(Error::Overflow)?;
                acc = acc.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(acc)
    }
}

/// How a diagram was built; kept so documents can be written back in their short form.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum DiagramKind {
    Rectangle {
        width: Rational,
        height: Rational,
    },
    /// Triple blow-up of the ball of size `s`, corner chopped at `c`, nodes for `a` and `b`.
    Xabc {
        a: Rational,
        b: Rational,
        c: Rational,
        s: Rational,
        node_a_height: Rational,
        node_b_offset: Rational,
    },
    Polygon,
}

/// Where a point sits relative to a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    OnBoundaryEdge(usize),
    OnCorner(usize),
    Outside,
    OnNode(usize),
    OnCut(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseDiagram {
    name: String,
    kind: DiagramKind,
    polygon_vertices: Vec<RatPoint>,
    boundary_edges: Vec<BoundaryEdge>,
    nodes: Vec<Node>,
    cut_exits: Vec<RatPoint>,
    homology: HomologyModel,
}

impl BaseDiagram {
    /// Validates and assembles a diagram. Vertices must be listed counterclockwise
    /// and form a strictly convex polygon.
    pub fn new(
        name: impl Into<String>,
        kind: DiagramKind,
        polygon_vertices: Vec<RatPoint>,
        nodes: Vec<Node>,
        homology: HomologyModel,
    ) -> Result<Self> {
        let n = polygon_vertices.len();
        if n < 3 {
            return Err(Error::InvalidDiagram(format!(
                "polygon needs at least 3 vertices, got {n}"
            )));
        }
        // Strict convexity and counterclockwise order: every vertex not on an
        // edge lies strictly to its left.
        for i in 0..n {
            let a = &polygon_vertices[i];
            let b = &polygon_vertices[(i + 1) % n];
            if a == b {
                return Err(Error::InvalidDiagram(format!("repeated vertex {a}")));
            }
            for (k, p) in polygon_vertices.iter().enumerate() {
                if k == i || k == (i + 1) % n {
                    continue;
                }
                if orient(a, b, p) != Ordering::Greater {
                    return Err(Error::InvalidDiagram(format!(
                        "polygon is not strictly convex and counterclockwise at edge {a} -> {b}"
                    )));
                }
            }
        }
        let mut boundary_edges = Vec::with_capacity(n);
        for i in 0..n {
            let start = polygon_vertices[i].clone();
            let end = polygon_vertices[(i + 1) % n].clone();
            let (direction, affine_length) = direction_between(&start, &end)?;
            boundary_edges.push(BoundaryEdge {
                start,
                end,
                direction,
                affine_length,
            });
        }
        let mut diagram = BaseDiagram {
            name: name.into(),
            kind,
            polygon_vertices,
            boundary_edges,
            nodes: Vec::new(),
            cut_exits: Vec::new(),
            homology,
        };
        for (i, node) in nodes.iter().enumerate() {
            if !node.cut_direction.is_primitive() {
                return Err(Error::InvalidDiagram(format!(
                    "node {i}: cut direction {} is not primitive",
                    node.cut_direction
                )));
            }
            if diagram.polygon_location(&node.position) != Location::Interior {
                return Err(Error::InvalidDiagram(format!(
                    "node {i} at {} is not strictly inside the polygon",
                    node.position
                )));
            }
            let exit = diagram
                .ray_exit(&node.position, node.cut_direction)
                .expect("ray from an interior point leaves a convex polygon");
            diagram.cut_exits.push(exit);
        }
        diagram.nodes = nodes;
        for i in 0..diagram.nodes.len() {
            for j in 0..diagram.nodes.len() {
                if i == j {
                    continue;
                }
                if on_segment(
                    &diagram.nodes[j].position,
                    &diagram.nodes[i].position,
                    &diagram.cut_exits[i],
                ) {
                    return Err(Error::InvalidDiagram(format!(
                        "cut of node {i} runs into node {j}"
                    )));
                }
                if i < j
                    && segments_intersect(
                        &diagram.nodes[i].position,
                        &diagram.cut_exits[i],
                        &diagram.nodes[j].position,
                        &diagram.cut_exits[j],
                    )
                {
                    return Err(Error::InvalidDiagram(format!(
                        "cuts of nodes {i} and {j} collide"
                    )));
                }
            }
        }
        Ok(diagram)
    }

    /// Axis-aligned rectangle `[0,width]×[0,height]`: the moment polygon of `S²×S²`.
    ///
    /// Edges are numbered bottom, right, top, left.
    pub fn rectangle(width: Rational, height: Rational) -> Result<Self> {
        if !width.is_positive() || !height.is_positive() {
            return Err(Error::InvalidDiagram(format!(
                "rectangle dimensions must be positive, got {width} x {height}"
            )));
        }
        let vertices = alloc::vec![
            RatPoint::origin(),
            RatPoint::new(width.clone(), Rational::zero()),
            RatPoint::new(width.clone(), height.clone()),
            RatPoint::new(Rational::zero(), height.clone()),
        ];
        let name = format!("rectangle {width}x{height}");
        BaseDiagram::new(
            name,
            DiagramKind::Rectangle { width, height },
            vertices,
            Vec::new(),
            HomologyModel::product_of_spheres(),
        )
    }

    /// Triple blow-up `X_{a,b,c}` with the default node placement
    /// `(a, s−2a)` and `(s−2b, b)`.
    ///
    /// Each node sits at affine distance `a` (resp. `b`) from the hypotenuse.
    pub fn x_abc(a: Rational, b: Rational, c: Rational, s: Rational) -> Result<Self> {
        let two = int(2);
        let node_a_height = &s - &two * &a;
        let node_b_offset = &s - &two * &b;
        BaseDiagram::x_abc_with_nodes(a, b, c, s, node_a_height, node_b_offset)
    }

    /// Triple blow-up with explicit node positions `(a, node_a_height)` and
    /// `(node_b_offset, b)`. Nodes may slide along their cuts without changing
    /// the symplectic manifold.
    pub fn x_abc_with_nodes(
        a: Rational,
        b: Rational,
        c: Rational,
        s: Rational,
        node_a_height: Rational,
        node_b_offset: Rational,
    ) -> Result<Self> {
        let violated = |what: &str| Err(Error::InvalidDiagram(format!("x_abc: {what}")));
        if !a.is_positive() {
            return violated("a > 0 violated");
        }
        if !b.is_positive() {
            return violated("b > 0 violated");
        }
        if !c.is_positive() {
            return violated("c > 0 violated");
        }
        if c >= s {
            return violated("c < s violated");
        }
        let zero = Rational::zero();
        let vertices = alloc::vec![
            RatPoint::new(c.clone(), zero.clone()),
            RatPoint::new(s.clone(), zero.clone()),
            RatPoint::new(zero.clone(), s.clone()),
            RatPoint::new(zero.clone(), c.clone()),
        ];
        let node_a = Node {
            position: RatPoint::new(a.clone(), node_a_height.clone()),
            cut_direction: IntVec::new(0, 1),
        };
        let node_b = Node {
            position: RatPoint::new(node_b_offset.clone(), b.clone()),
            cut_direction: IntVec::new(1, 0),
        };
        let name = format!("X_abc a={a} b={b} c={c} s={s}");
        let kind = DiagramKind::Xabc {
            a,
            b,
            c,
            s,
            node_a_height,
            node_b_offset,
        };
        // Check the nodes individually first so the error names the offender.
        let bare = BaseDiagram::new(
            name.clone(),
            kind.clone(),
            vertices.clone(),
            Vec::new(),
            HomologyModel::triple_blowup(),
        )?;
        for (label, node) in [("node_a", &node_a), ("node_b", &node_b)] {
            if bare.polygon_location(&node.position) != Location::Interior {
                return violated(&format!(
                    "{label} at {} is not strictly inside the polygon",
                    node.position
                ));
            }
        }
        BaseDiagram::new(
            name,
            kind,
            vertices,
            alloc::vec![node_a, node_b],
            HomologyModel::triple_blowup(),
        )
        .map_err(|e| match e {
            Error::InvalidDiagram(msg) => Error::InvalidDiagram(format!("x_abc: {msg}")),
            other => other,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &DiagramKind {
        &self.kind
    }

    pub fn polygon_vertices(&self) -> &[RatPoint] {
        &self.polygon_vertices
    }

    pub fn boundary_edges(&self) -> &[BoundaryEdge] {
        &self.boundary_edges
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn homology(&self) -> &HomologyModel {
        &self.homology
    }

    /// The closed cut segment of node `i`, from the node to the boundary.
    pub fn cut_segment(&self, i: usize) -> (&RatPoint, &RatPoint) {
        (&self.nodes[i].position, &self.cut_exits[i])
    }

    pub fn is_rectangle(&self) -> bool {
        matches!(self.kind, DiagramKind::Rectangle { .. })
    }

    /// Location relative to the polygon alone, ignoring nodes and cuts.
    pub fn polygon_location(&self, p: &RatPoint) -> Location {
        let mut on_edge = None;
        for (i, edge) in self.boundary_edges.iter().enumerate() {
            match orient(&edge.start, &edge.end, p) {
                Ordering::Less => return Location::Outside,
                Ordering::Equal => {
                    if on_edge.is_none() {
                        on_edge = Some(i);
                    }
                }
                Ordering::Greater => {}
            }
        }
        match on_edge {
            None => Location::Interior,
            Some(i) => match self.polygon_vertices.iter().position(|v| v == p) {
                Some(k) => Location::OnCorner(k),
                None => Location::OnBoundaryEdge(i),
            },
        }
    }

    /// Exact classification of `p`. Boundary positions take precedence; interior
    /// points are then tested against nodes and cut segments.
    pub fn contains(&self, p: &RatPoint) -> Location {
        let loc = self.polygon_location(p);
        if loc != Location::Interior {
            return loc;
        }
        if let Some(i) = self.nodes.iter().position(|n| &n.position == p) {
            return Location::OnNode(i);
        }
        for i in 0..self.nodes.len() {
            let (a, b) = self.cut_segment(i);
            if on_segment(p, a, b) {
                return Location::OnCut(i);
            }
        }
        Location::Interior
    }

    /// First point where the ray `from + t·dir`, `t > 0`, meets the boundary.
    ///
    /// `from` must lie inside or on the polygon; returns `None` if the ray
    /// does not leave through any edge (zero direction, or `from` outside).
    pub fn ray_exit(&self, from: &RatPoint, dir: IntVec) -> Option<RatPoint> {
        if dir.is_zero() {
            return None;
        }
        let mut best: Option<Rational> = None;
        for edge in &self.boundary_edges {
            let outward = wedge(edge.direction, dir);
            if outward >= 0 {
                continue;
            }
            // cross(e, from − start) + t·cross(e, dir) = 0
            let (dx, dy) = edge.start.delta_to(from);
            let inside = int(edge.direction.x) * &dy - int(edge.direction.y) * &dx;
            let t = inside / Rational::from_integer(outward.into());
            let t = -t;
            if t.is_positive() && best.as_ref().is_none_or(|b| &t < b) {
                best = Some(t);
            }
        }
        best.map(|t| from.offset(dir, &t))
    }

    /// Image of the diagram under an integral affine map. Orientation-reversing
    /// maps have their vertex order reversed to stay counterclockwise.
    pub fn transformed(&self, map: &UnimodularAffineMap) -> Result<BaseDiagram> {
        let mut vertices: Vec<RatPoint> = self
            .polygon_vertices
            .iter()
            .map(|p| map.apply_point(p))
            .collect();
        if map.det() < 0 {
            vertices.reverse();
        }
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                Ok(Node {
                    position: map.apply_point(&n.position),
                    cut_direction: map.apply_vec(n.cut_direction)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        BaseDiagram::new(
            self.name.clone(),
            DiagramKind::Polygon,
            vertices,
            nodes,
            self.homology.clone(),
        )
    }
}
