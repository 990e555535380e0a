//! Random instances for property tests. Enabled by the `sampling` feature.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{BaseDiagram, Location};
use crate::lattice::{frac, int, IntVec, RatPoint, Rational, UnimodularAffineMap};
use crate::topology::analyze;
use crate::tropical::{EndSource, Terminal, TropicalCurve};

/// Primitive directions whose components are at most 2 in absolute value.
pub const SMALL_DIRECTIONS: [IntVec; 16] = [
    IntVec::new(1, 0),
    IntVec::new(0, 1),
    IntVec::new(-1, 0),
    IntVec::new(0, -1),
    IntVec::new(1, 1),
    IntVec::new(1, -1),
    IntVec::new(-1, 1),
    IntVec::new(-1, -1),
    IntVec::new(1, 2),
    IntVec::new(2, 1),
    IntVec::new(-1, 2),
    IntVec::new(2, -1),
    IntVec::new(1, -2),
    IntVec::new(-2, 1),
    IntVec::new(-1, -2),
    IntVec::new(-2, -1),
];

/// Positive rational `n/d` with `1 ≤ d ≤ max_den` and `n/d ≤ max`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    frac(rng.gen_range(1..=max * d), d)
}

pub fn random_unimodular_map<R: Rng + ?Sized>(rng: &mut R) -> UnimodularAffineMap {
    let mut m = UnimodularAffineMap::identity();
    for _ in 0..rng.gen_range(0..=4) {
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let e = if rng.gen_bool(0.5) {
            [[1, s], [0, 1]]
        } else {
            [[1, 0], [s, 1]]
        };
        m = UnimodularAffineMap::new(e, (int(0), int(0)))
            .unwrap()
            .compose(&m)
            .unwrap();
    }
    if rng.gen_bool(0.5) {
        let r = UnimodularAffineMap::new([[0, 1], [1, 0]], (int(0), int(0))).unwrap();
        m = r.compose(&m).unwrap();
    }
    let t = (
        random_rational(rng, 5, 4) - int(2),
        random_rational(rng, 5, 4) - int(2),
    );
    UnimodularAffineMap::new(m.linear(), t).unwrap()
}

fn half_steps<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    frac(rng.gen_range(1..=4), 2)
}

fn try_caterpillar<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Option<(BaseDiagram, TropicalCurve)> {
    let mut spine = Vec::with_capacity(n + 1);
    spine.push(*SMALL_DIRECTIONS.choose(rng).unwrap());
    for _ in 0..n {
        let prev = spine[spine.len() - 1];
        let next: Vec<IntVec> = SMALL_DIRECTIONS
            .iter()
            .copied()
            .filter(|d| {
                let leg = IntVec::new(prev.x - d.x, prev.y - d.y);
                leg.is_primitive() && leg.x.abs() <= 2 && leg.y.abs() <= 2
            })
            .collect();
        spine.push(*next.choose(rng)?);
    }
    let mut raw = Vec::with_capacity(n.max(1));
    let mut p = RatPoint::origin();
    raw.push(p.clone());
    for d in spine.iter().take(n).skip(1) {
        p = p.offset(*d, &half_steps(rng));
        raw.push(p.clone());
    }
    let min_x = raw.iter().map(|q| q.x.clone()).min().unwrap() - half_steps(rng);
    let min_y = raw.iter().map(|q| q.y.clone()).min().unwrap() - half_steps(rng);
    let width = raw.iter().map(|q| q.x.clone()).max().unwrap() - &min_x + half_steps(rng);
    let height = raw.iter().map(|q| q.y.clone()).max().unwrap() - &min_y + half_steps(rng);
    let d = BaseDiagram::rectangle(width, height).ok()?;
    let shift = |q: &RatPoint| RatPoint::new(&q.x - &min_x, &q.y - &min_y);

    let mut c = TropicalCurve::new();
    let land = |c: &mut TropicalCurve, id: &str, src: EndSource, at: &RatPoint, dir: IntVec| {
        let landing = d.ray_exit(at, dir)?;
        matches!(d.contains(&landing), Location::OnBoundaryEdge(_)).then_some(())?;
        c.add_end(id, src, dir, 1, Terminal::Boundary { landing })
            .ok()
            .map(|_| ())
    };
    if n == 0 {
        let anchor = shift(&raw[0]);
        let dir = spine[0];
        land(&mut c, "a", EndSource::Point(anchor.clone()), &anchor, dir)?;
        land(&mut c, "b", EndSource::Point(anchor.clone()), &anchor, -dir)?;
    } else {
        for (i, q) in raw.iter().enumerate() {
            c.add_vertex(format!("v{i}"), shift(q));
        }
        for i in 1..n {
            c.add_edge(format!("e{i}"), &format!("v{}", i - 1), &format!("v{i}"), 1)
                .ok()?;
        }
        let first = shift(&raw[0]);
        let last = shift(&raw[n - 1]);
        land(
            &mut c,
            "head",
            EndSource::Vertex("v0".into()),
            &first,
            -spine[0],
        )?;
        land(
            &mut c,
            "tail",
            EndSource::Vertex(format!("v{}", n - 1)),
            &last,
            spine[n],
        )?;
        for i in 0..n {
            // the spine arrives at v_i along spine[i] and leaves along spine[i + 1]
            let leg = spine[i]
                .checked_add(spine[i + 1].checked_neg().ok()?)
                .ok()?;
            if !leg.is_primitive() {
                return None;
            }
            let at = shift(&raw[i]);
            land(
                &mut c,
                &format!("leg{i}"),
                EndSource::Vertex(format!("v{i}")),
                &at,
                leg,
            )?;
        }
    }
    analyze(&d, &c).ok()?;
    Some((d, c))
}

/// A valid caterpillar curve (a chain of trivalent vertices, each with one
/// leg) with at most `max_vertices` vertices, in a rectangle fitted around
/// it. Every end meets the boundary with multiplicity 1 or 2.
pub fn random_curve<R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
) -> (BaseDiagram, TropicalCurve) {
    let n = rng.gen_range(0..=max_vertices);
    loop {
        if let Some(found) = try_caterpillar(rng, n) {
            return found;
        }
    }
}

pub fn random_size_triple<R: Rng + ?Sized>(rng: &mut R) -> (Rational, Rational, Rational) {
    (
        random_rational(rng, 6, 6),
        random_rational(rng, 6, 6),
        random_rational(rng, 6, 6),
    )
}

/// Sizes `(a, b, c)` and a total size `s` large enough for the default node
/// placement.
pub fn random_rp2_instance<R: Rng + ?Sized>(
    rng: &mut R,
) -> (Rational, Rational, Rational, Rational) {
    let (a, b, c) = random_size_triple(rng);
    let s = (&a + &b + &c) * int(3) + int(1);
    (a, b, c, s)
}
