//! Topology of tropical Lagrangians.
//!
//! Over a trivalent vertex the surface is a pair of pants, over an internal
//! edge an annulus, and each end is capped according to how it terminates:
//!
//! | end                         | cap          | χ  |
//! |-----------------------------|--------------|----|
//! | runs into a node            | disc         | +1 |
//! | boundary, multiplicity μ=2  | Möbius band  |  0 |
//! | boundary, multiplicity μ=1  | collar       |  0 |
//!
//! A vertex of multiplicity `m` carries `(m−1)/2` double points; each is
//! resolved by one surgery, which lowers χ by 2. The surface is orientable
//! exactly when no end is a cross-cap, and closed exactly when no end is a
//! collar.
//!
//! [`build_presentation`] and [`oracle_classify`] recompute the same answer
//! from an explicit decomposition into pieces, glued and cellulated.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::BaseDiagram;
use crate::error::{Error, Result};
use crate::tropical::{
    end_multiplicity, validate, vertex_double_points, vertex_multiplicity, CurveEnd, EndSource,
    Terminal, TropicalCurve,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndKind {
    /// End at a focus-focus node, capped by the vanishing thimble.
    DiscCap,
    /// Boundary end with μ = 2.
    CrossCap,
    /// Boundary end with μ = 1; leaves a boundary circle.
    Collar,
}

impl EndKind {
    pub fn euler_contribution(self) -> i64 {
        match self {
            EndKind::DiscCap => 1,
            EndKind::CrossCap | EndKind::Collar => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EndKind::DiscCap => "node-cap",
            EndKind::CrossCap => "cross-cap",
            EndKind::Collar => "collar",
        }
    }
}

/// Closed/orientable flags, Euler characteristic and genus of a compact surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceClass {
    pub closed: bool,
    pub orientable: bool,
    pub euler_char: i64,
    /// `k` with `χ = 2 − k`; only for closed nonorientable surfaces.
    pub nonorientable_genus: Option<u64>,
    /// `g` with `χ = 2 − 2g`; only for closed orientable surfaces.
    pub orientable_genus: Option<u64>,
    pub boundary_circles: u64,
    pub double_points_surgered: u64,
}

impl SurfaceClass {
    /// Fills in the genus fields from χ and checks that they make sense.
    pub fn from_invariants(
        orientable: bool,
        euler_char: i64,
        boundary_circles: u64,
        double_points_surgered: u64,
    ) -> Result<Self> {
        let closed = boundary_circles == 0;
        let mut class = SurfaceClass {
            closed,
            orientable,
            euler_char,
            nonorientable_genus: None,
            orientable_genus: None,
            boundary_circles,
            double_points_surgered,
        };
        let deficit = 2 - euler_char as i128;
        if closed && orientable {
            if deficit < 0 || deficit % 2 != 0 {
                return Err(Error::MalformedPresentation(format!(
                    "closed orientable surface with chi = {euler_char}"
                )));
            }
            class.orientable_genus = Some((deficit / 2) as u64);
        } else if closed {
            if deficit < 1 {
                return Err(Error::MalformedPresentation(format!(
                    "closed nonorientable surface with chi = {euler_char}"
                )));
            }
            class.nonorientable_genus = Some(deficit as u64);
        }
        Ok(class)
    }

    /// Familiar name for small surfaces.
    pub fn common_name(&self) -> Option<&'static str> {
        match (
            self.closed,
            self.orientable,
            self.euler_char,
            self.boundary_circles,
        ) {
            (true, true, 2, _) => Some("sphere"),
            (true, true, 0, _) => Some("torus"),
            (true, false, 1, _) => Some("real projective plane"),
            (true, false, 0, _) => Some("Klein bottle"),
            (false, true, 1, 1) => Some("disc"),
            (false, true, 0, 2) => Some("annulus"),
            (false, false, 0, 1) => Some("Möbius band"),
            _ => None,
        }
    }
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let closed = if self.closed {
            "closed"
        } else {
            "with boundary"
        };
        let orient = if self.orientable {
            "orientable"
        } else {
            "nonorientable"
        };
        write!(f, "{closed} {orient}, chi={}", self.euler_char)?;
        if let Some(k) = self.nonorientable_genus {
            write!(f, ", k={k}")?;
        }
        if let Some(g) = self.orientable_genus {
            write!(f, ", g={g}")?;
        }
        if !self.closed {
            write!(f, ", boundary circles={}", self.boundary_circles)?;
        }
        if let Some(name) = self.common_name() {
            write!(f, " ({name})")?;
        }
        Ok(())
    }
}

/// Classifies one end of a validated weight-one curve.
pub fn classify_end(d: &BaseDiagram, e: &CurveEnd) -> Result<EndKind> {
    if e.weight != 1 {
        return Err(Error::WeightedEndUnsupported { end: e.id.clone() });
    }
    match e.terminal {
        Terminal::Node(_) => Ok(EndKind::DiscCap),
        Terminal::Boundary { .. } => match end_multiplicity(d, e)? {
            1 => Ok(EndKind::Collar),
            2 => Ok(EndKind::CrossCap),
            mu => Err(Error::UnsupportedEndMultiplicity {
                end: e.id.clone(),
                mu,
            }),
        },
    }
}

/// Contributions to χ, kept apart for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChiBreakdown {
    /// −1 per vertex.
    pub vertices: i64,
    /// Sum of cap contributions.
    pub caps: i64,
    /// −2 per surgered double point.
    pub surgeries: i64,
}

impl ChiBreakdown {
    pub fn total(&self) -> i64 {
        self.vertices + self.caps + self.surgeries
    }
}

/// Everything the engine derives about a curve's surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceAnalysis {
    /// `(vertex id, m)` in curve order.
    pub multiplicities: Vec<(String, i64)>,
    /// `(end id, kind)` in curve order.
    pub end_kinds: Vec<(String, EndKind)>,
    pub chi: ChiBreakdown,
    pub class: SurfaceClass,
}

impl SurfaceAnalysis {
    pub fn count(&self, kind: EndKind) -> usize {
        self.end_kinds.iter().filter(|(_, k)| *k == kind).count()
    }
}

/// Runs validation and the preconditions every topology query shares.
fn checked(d: &BaseDiagram, c: &TropicalCurve) -> Result<()> {
    validate(d, c).into_result()?;
    if c.is_empty() {
        return Err(Error::InvalidInput(
            "the empty curve has no surface".to_string(),
        ));
    }
    for e in &c.edges {
        if e.weight != 1 {
            return Err(Error::WeightedVertexUnsupported {
                vertex: e.from.clone(),
            });
        }
    }
    Ok(())
}

pub fn analyze(d: &BaseDiagram, c: &TropicalCurve) -> Result<SurfaceAnalysis> {
    checked(d, c)?;
    let mut multiplicities = Vec::with_capacity(c.vertices.len());
    let mut double_points: i64 = 0;
    for v in &c.vertices {
        let m = vertex_multiplicity(c, &v.id)?;
        double_points += vertex_double_points(m)?;
        multiplicities.push((v.id.clone(), m));
    }
    let mut end_kinds = Vec::with_capacity(c.ends.len());
    for e in &c.ends {
        end_kinds.push((e.id.clone(), classify_end(d, e)?));
    }
    let chi = ChiBreakdown {
        vertices: -(c.vertices.len() as i64),
        caps: end_kinds.iter().map(|(_, k)| k.euler_contribution()).sum(),
        surgeries: -2 * double_points,
    };
    let crosscaps = end_kinds
        .iter()
        .filter(|(_, k)| *k == EndKind::CrossCap)
        .count();
    let collars = end_kinds
        .iter()
        .filter(|(_, k)| *k == EndKind::Collar)
        .count();
    let class = SurfaceClass::from_invariants(
        crosscaps == 0,
        chi.total(),
        collars as u64,
        double_points as u64,
    )?;
    Ok(SurfaceAnalysis {
        multiplicities,
        end_kinds,
        chi,
        class,
    })
}

pub fn euler_characteristic(d: &BaseDiagram, c: &TropicalCurve) -> Result<i64> {
    analyze(d, c).map(|a| a.chi.total())
}

pub fn classify(d: &BaseDiagram, c: &TropicalCurve) -> Result<SurfaceClass> {
    analyze(d, c).map(|a| a.class)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    PairOfPants,
    Annulus,
    Disc,
    MobiusBand,
    /// Annulus with one circle glued in and the other left free.
    CollarAnnulus,
}

impl PieceKind {
    pub fn boundary_count(self) -> usize {
        match self {
            PieceKind::PairOfPants => 3,
            PieceKind::Annulus | PieceKind::CollarAnnulus => 2,
            PieceKind::Disc | PieceKind::MobiusBand => 1,
        }
    }

    pub fn euler_char(self) -> i64 {
        match self {
            PieceKind::PairOfPants => -1,
            PieceKind::Disc => 1,
            PieceKind::Annulus | PieceKind::CollarAnnulus | PieceKind::MobiusBand => 0,
        }
    }
}

pub type CircleLabel = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub kind: PieceKind,
    pub circles: Vec<CircleLabel>,
}

/// Identification of two boundary circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub a: CircleLabel,
    pub b: CircleLabel,
    /// Whether the pieces' own orientations agree across this gluing.
    pub orientation_compatible: bool,
}

/// A surface written as pieces glued along labelled circles, plus handles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurfacePresentation {
    pub pieces: Vec<Piece>,
    pub gluings: Vec<Gluing>,
    pub handles: u64,
}

impl SurfacePresentation {
    pub fn count(&self, kind: PieceKind) -> usize {
        self.pieces.iter().filter(|p| p.kind == kind).count()
    }

    fn push(&mut self, kind: PieceKind, next: &mut CircleLabel) -> Vec<CircleLabel> {
        let circles: Vec<_> = (0..kind.boundary_count() as u32)
            .map(|i| *next + i)
            .collect();
        *next += kind.boundary_count() as u32;
        self.pieces.push(Piece {
            kind,
            circles: circles.clone(),
        });
        circles
    }

    fn glue(&mut self, a: CircleLabel, b: CircleLabel) {
        self.gluings.push(Gluing {
            a,
            b,
            orientation_compatible: true,
        });
    }
}

/// Decomposes the surface of `c` into pieces, straight from the curve's graph.
pub fn build_presentation(d: &BaseDiagram, c: &TropicalCurve) -> Result<SurfacePresentation> {
    checked(d, c)?;
    let mut p = SurfacePresentation::default();
    let mut next: CircleLabel = 0;

    // One free circle per vertex half-edge, handed out as pieces are glued on.
    let mut sockets: BTreeMap<&str, Vec<CircleLabel>> = BTreeMap::new();
    for v in &c.vertices {
        if c.half_edges(&v.id).len() != 3 {
            return Err(Error::NonTrivalentVertex {
                vertex: v.id.clone(),
                valence: c.half_edges(&v.id).len(),
            });
        }
        let circles = p.push(PieceKind::PairOfPants, &mut next);
        sockets.insert(&v.id, circles);
    }
    let mut take = |vertex: &str| -> Result<CircleLabel> {
        sockets
            .get_mut(vertex)
            .and_then(|s| s.pop())
            .ok_or_else(|| Error::InvalidCurve(format!("vertex {vertex} has too many incidences")))
    };

    for e in &c.edges {
        let circles = p.push(PieceKind::Annulus, &mut next);
        let a = take(&e.from)?;
        let b = take(&e.to)?;
        p.glue(circles[0], a);
        p.glue(circles[1], b);
    }

    // A vertexless segment is an annulus with both ends capped.
    let mut standalone_tube: Option<Vec<CircleLabel>> = None;
    if c.is_standalone() {
        standalone_tube = Some(p.push(PieceKind::Annulus, &mut next));
    }

    let mut double_points = 0u64;
    for v in &c.vertices {
        double_points += vertex_double_points(vertex_multiplicity(c, &v.id)?)? as u64;
    }

    for (i, e) in c.ends.iter().enumerate() {
        let socket = match (&e.source, &mut standalone_tube) {
            (EndSource::Vertex(v), _) => take(v)?,
            (EndSource::Point(_), Some(tube)) => tube[i.min(1)],
            (EndSource::Point(_), None) => unreachable!("standalone tube is built above"),
        };
        let kind = match classify_end(d, e)? {
            EndKind::DiscCap => PieceKind::Disc,
            EndKind::CrossCap => PieceKind::MobiusBand,
            EndKind::Collar => PieceKind::CollarAnnulus,
        };
        let circles = p.push(kind, &mut next);
        p.glue(circles[0], socket);
    }
    p.handles = double_points;
    Ok(p)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }

    fn classes(&mut self) -> usize {
        let n = self.0.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}

/// Counts cells of an explicit CW structure on the glued surface.
///
/// Every boundary circle is one vertex and one loop edge. Inside each piece:
/// a disc adds a face; an annulus adds one edge between its circles and a
/// face; a pair of pants adds two edges and a face; a Möbius band adds a core
/// vertex, a core loop, an edge to the core and a face. A handle punches two
/// holes into an existing face (two circles, each joined to the face's
/// boundary by an edge) and joins them with a tube (one edge, one face).
/// Gluing identifies the vertex and edge of the two circles.
fn cellular_euler_characteristic(
    p: &SurfacePresentation,
    label_index: &BTreeMap<CircleLabel, usize>,
) -> i64 {
    let circles = label_index.len();
    let mut vertices = UnionFind::new(circles);
    let mut loops = UnionFind::new(circles);
    for g in &p.gluings {
        let (a, b) = (label_index[&g.a], label_index[&g.b]);
        vertices.union(a, b);
        loops.union(a, b);
    }
    let mut v = vertices.classes() as i64;
    let mut e = loops.classes() as i64;
    let mut f = 0i64;
    for piece in &p.pieces {
        match piece.kind {
            PieceKind::Disc => f += 1,
            PieceKind::Annulus | PieceKind::CollarAnnulus => {
                e += 1;
                f += 1;
            }
            PieceKind::PairOfPants => {
                e += 2;
                f += 1;
            }
            PieceKind::MobiusBand => {
                v += 1;
                e += 2;
                f += 1;
            }
        }
    }
    let h = p.handles as i64;
    v += 2 * h;
    e += 5 * h;
    f += h;
    v - e + f
}

/// Classifies a presentation without looking at any curve.
///
/// χ comes from the piece table and, independently, from a cellulation of
/// the glued complex; the two must agree. Orientability comes from
/// propagating piece orientations across the gluing graph.
pub fn oracle_classify(p: &SurfacePresentation) -> Result<SurfaceClass> {
    let malformed = |msg: String| Err(Error::MalformedPresentation(msg));
    if p.pieces.is_empty() {
        return malformed("no pieces".to_string());
    }
    let mut owner: BTreeMap<CircleLabel, usize> = BTreeMap::new();
    for (i, piece) in p.pieces.iter().enumerate() {
        if piece.circles.len() != piece.kind.boundary_count() {
            return malformed(format!(
                "piece {i} ({:?}) has {} circles",
                piece.kind,
                piece.circles.len()
            ));
        }
        for &l in &piece.circles {
            if owner.insert(l, i).is_some() {
                return malformed(format!("circle {l} belongs to two pieces"));
            }
        }
    }
    let mut glued = BTreeSet::new();
    for g in &p.gluings {
        if g.a == g.b {
            return malformed(format!("circle {} glued to itself", g.a));
        }
        for l in [g.a, g.b] {
            if !owner.contains_key(&l) {
                return malformed(format!("gluing refers to unknown circle {l}"));
            }
            if !glued.insert(l) {
                return malformed(format!("circle {l} glued more than once"));
            }
        }
    }
    for piece in &p.pieces {
        if piece.kind == PieceKind::CollarAnnulus
            && (glued.contains(&piece.circles[1]) || !glued.contains(&piece.circles[0]))
        {
            return malformed("collar must have its first circle glued and second free".into());
        }
    }

    // Connectivity and orientation in one pass over the gluing graph.
    let n = p.pieces.len();
    let mut adjacency: Vec<Vec<(usize, bool)>> = alloc::vec![Vec::new(); n];
    for g in &p.gluings {
        let (i, j) = (owner[&g.a], owner[&g.b]);
        adjacency[i].push((j, g.orientation_compatible));
        adjacency[j].push((i, g.orientation_compatible));
    }
    let mut sign: Vec<Option<bool>> = alloc::vec![None; n];
    let mut consistent = true;
    sign[0] = Some(true);
    let mut stack = alloc::vec![0usize];
    while let Some(i) = stack.pop() {
        let si = sign[i].unwrap();
        for &(j, compatible) in &adjacency[i] {
            let want = if compatible { si } else { !si };
            match sign[j] {
                None => {
                    sign[j] = Some(want);
                    stack.push(j);
                }
                Some(sj) if sj != want => consistent = false,
                Some(_) => {}
            }
        }
    }
    if sign.iter().any(Option::is_none) {
        return malformed("pieces do not form a connected surface".to_string());
    }
    let orientable = consistent && !p.pieces.iter().any(|x| x.kind == PieceKind::MobiusBand);

    let from_pieces: i64 =
        p.pieces.iter().map(|x| x.kind.euler_char()).sum::<i64>() - 2 * p.handles as i64;
    let label_index: BTreeMap<CircleLabel, usize> =
        owner.keys().enumerate().map(|(i, &l)| (l, i)).collect();
    let from_cells = cellular_euler_characteristic(p, &label_index);
    if from_pieces != from_cells {
        return malformed(format!(
            "piece count gives chi={from_pieces} but the cellulation gives chi={from_cells}"
        ));
    }
    let boundary_circles = (owner.len() - glued.len()) as u64;
    SurfaceClass::from_invariants(orientable, from_cells, boundary_circles, p.handles)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn piece(kind: PieceKind, circles: &[u32]) -> Piece {
        Piece {
            kind,
            circles: circles.to_vec(),
        }
    }

    fn glue(a: u32, b: u32) -> Gluing {
        Gluing {
            a,
            b,
            orientation_compatible: true,
        }
    }

    #[test]
    fn klein_bottle_from_two_mobius_bands() {
        let p = SurfacePresentation {
            pieces: alloc::vec![
                piece(PieceKind::Annulus, &[0, 1]),
                piece(PieceKind::MobiusBand, &[2]),
                piece(PieceKind::MobiusBand, &[3]),
            ],
            gluings: alloc::vec![glue(0, 2), glue(1, 3)],
            handles: 0,
        };
        let c = oracle_classify(&p).unwrap();
        assert_eq!(c.euler_char, 0);
        assert_eq!(c.nonorientable_genus, Some(2));
        assert!(c.closed && !c.orientable);
        assert_eq!(c.common_name(), Some("Klein bottle"));
    }

    #[test]
    fn projective_plane_and_sphere() {
        let rp2 = SurfacePresentation {
            pieces: alloc::vec![
                piece(PieceKind::Disc, &[0]),
                piece(PieceKind::MobiusBand, &[1])
            ],
            gluings: alloc::vec![glue(0, 1)],
            handles: 0,
        };
        let c = oracle_classify(&rp2).unwrap();
        assert_eq!((c.euler_char, c.nonorientable_genus), (1, Some(1)));

        let sphere = SurfacePresentation {
            pieces: alloc::vec![
                piece(PieceKind::Disc, &[0]),
                piece(PieceKind::Annulus, &[1, 2]),
                piece(PieceKind::Disc, &[3]),
            ],
            gluings: alloc::vec![glue(0, 1), glue(2, 3)],
            handles: 0,
        };
        let c = oracle_classify(&sphere).unwrap();
        assert_eq!(
            (c.euler_char, c.orientable, c.orientable_genus),
            (2, true, Some(0))
        );
    }

    #[test]
    fn handles_lower_chi_by_two() {
        let torus = SurfacePresentation {
            pieces: alloc::vec![piece(PieceKind::Disc, &[0]), piece(PieceKind::Disc, &[1])],
            gluings: alloc::vec![glue(0, 1)],
            handles: 1,
        };
        let c = oracle_classify(&torus).unwrap();
        assert_eq!((c.euler_char, c.orientable_genus), (0, Some(1)));
    }

    #[test]
    fn twisted_gluing_is_nonorientable() {
        // Annulus with its two ends glued with a flip: a Klein bottle.
        let p = SurfacePresentation {
            pieces: alloc::vec![
                piece(PieceKind::Annulus, &[0, 1]),
                piece(PieceKind::Annulus, &[2, 3]),
            ],
            gluings: alloc::vec![
                glue(0, 2),
                Gluing {
                    a: 1,
                    b: 3,
                    orientation_compatible: false
                }
            ],
            handles: 0,
        };
        let c = oracle_classify(&p).unwrap();
        assert!(!c.orientable);
        assert_eq!(c.nonorientable_genus, Some(2));
    }

    #[test]
    fn malformed_presentations() {
        let twice = SurfacePresentation {
            pieces: alloc::vec![piece(PieceKind::Disc, &[0]), piece(PieceKind::Disc, &[1])],
            gluings: alloc::vec![glue(0, 1), glue(1, 0)],
            handles: 0,
        };
        assert!(matches!(
            oracle_classify(&twice),
            Err(Error::MalformedPresentation(_))
        ));

        let apart = SurfacePresentation {
            pieces: alloc::vec![piece(PieceKind::Disc, &[0]), piece(PieceKind::Disc, &[1])],
            gluings: Vec::new(),
            handles: 0,
        };
        assert!(matches!(
            oracle_classify(&apart),
            Err(Error::MalformedPresentation(_))
        ));

        let arity = SurfacePresentation {
            pieces: alloc::vec![piece(PieceKind::PairOfPants, &[0, 1])],
            gluings: Vec::new(),
            handles: 0,
        };
        assert!(oracle_classify(&arity).is_err());
    }

    #[test]
    fn surface_class_invariants() {
        let disc = SurfaceClass::from_invariants(true, 1, 1, 0).unwrap();
        assert!(!disc.closed);
        assert_eq!(disc.orientable_genus, None);
        assert_eq!(disc.nonorientable_genus, None);
        assert_eq!(disc.common_name(), Some("disc"));
        let k42 = SurfaceClass::from_invariants(false, -40, 0, 16).unwrap();
        assert_eq!(k42.nonorientable_genus, Some(42));
        assert!(SurfaceClass::from_invariants(true, 3, 0, 0).is_err());
        assert!(SurfaceClass::from_invariants(false, 2, 0, 0).is_err());
    }
}
