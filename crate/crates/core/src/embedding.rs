//! Planar embedding of a braid closure drawn around the origin.
//!
//! Each braid letter owns an angular slot. Strand position `p` rides the
//! circle of radius `radii[p - 1]`; inside the slot of a letter acting on
//! positions `i, i + 1` the two strands trade circles along a smoothstep
//! profile and cross at the slot's angular midpoint.

use std::f64::consts::{PI, TAU};

use serde::Serialize;
use thiserror::Error;

use crate::braid::{closure_diagram, BraidError, BraidWord, ClosureDiagram, VertexRule};
use crate::diagram::{Site, VisitRole};

/// Default angular resolution.
pub const DEFAULT_POINTS_PER_SLOT: usize = 64;

const ORIGIN_EPS: f64 = 1e-12;
const PARALLEL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    pub fn polar(r: f64, theta: f64) -> Point {
        Point {
            x: r * theta.cos(),
            y: r * theta.sin(),
        }
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("radii must be positive and strictly increasing, one per strand")]
    BadRadii,
    #[error("need at least one point per slot")]
    BadResolution,
    #[error("curve passes within {ORIGIN_EPS} of the origin")]
    OriginOnCurve,
    #[error("strand directions are parallel")]
    ParallelStrands,
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("geometric crossings do not line up with the diagram: {0}")]
    Inconsistent(String),
}

/// Closed polylines around the origin. A knot closure has exactly one loop;
/// a closure with several components has one loop per component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnularEmbedding {
    pub loops: Vec<Vec<Point>>,
    pub radii: Vec<f64>,
    pub slots: usize,
    pub points_per_slot: usize,
}

impl AnnularEmbedding {
    /// The first (for a knot, the only) loop.
    pub fn polyline(&self) -> &[Point] {
        &self.loops[0]
    }

    pub fn is_closed(&self) -> bool {
        self.loops
            .iter()
            .all(|l| l.len() > 1 && l.first() == l.last())
    }

    /// Wraps an arbitrary closed curve, e.g. for winding checks.
    pub fn from_loop(points: Vec<Point>) -> AnnularEmbedding {
        AnnularEmbedding {
            loops: vec![points],
            radii: vec![],
            slots: 0,
            points_per_slot: 0,
        }
    }
}

fn smoothstep(u: f64) -> f64 {
    u * u * (3.0 - 2.0 * u)
}

fn check_radii(radii: &[f64], strands: usize) -> Result<(), GeometryError> {
    let ok = radii.len() == strands
        && radii.iter().all(|r| r.is_finite() && *r > 0.0)
        && radii.windows(2).all(|w| w[0] < w[1]);
    if ok {
        Ok(())
    } else {
        Err(GeometryError::BadRadii)
    }
}

/// Samples the closure of `braid`.
///
/// Samples sit at `(s + 1/4) / points_per_slot` of each slot, so no sample
/// lands on a crossing midpoint.
pub fn annular_embed(
    braid: &BraidWord,
    radii: &[f64],
    points_per_slot: usize,
) -> Result<AnnularEmbedding, GeometryError> {
    check_radii(radii, braid.strands())?;
    if points_per_slot == 0 {
        return Err(GeometryError::BadResolution);
    }
    let letters = braid.letters();
    let slots = letters.len().max(1);
    let n = braid.strands();
    let mut covered = vec![false; n + 1];
    let mut loops = Vec::new();
    for start in 1..=n {
        if covered[start] {
            continue;
        }
        let mut pts = Vec::new();
        let mut pos = start;
        loop {
            covered[pos] = true;
            for k in 0..slots {
                let next = match letters.get(k) {
                    Some(&l) => {
                        let i = l.unsigned_abs() as usize;
                        if pos == i {
                            i + 1
                        } else if pos == i + 1 {
                            i
                        } else {
                            pos
                        }
                    }
                    None => pos,
                };
                let (r0, r1) = (radii[pos - 1], radii[next - 1]);
                for s in 0..points_per_slot {
                    let u = (s as f64 + 0.25) / points_per_slot as f64;
                    let theta = TAU * (k as f64 + u) / slots as f64;
                    pts.push(Point::polar(r0 + (r1 - r0) * smoothstep(u), theta));
                }
                pos = next;
            }
            if pos == start {
                break;
            }
        }
        pts.push(pts[0]);
        loops.push(pts);
    }
    Ok(AnnularEmbedding {
        loops,
        radii: radii.to_vec(),
        slots,
        points_per_slot,
    })
}

/// Total signed angle swept about the origin, summed over all loops.
pub fn winding_phase(embedding: &AnnularEmbedding) -> Result<f64, GeometryError> {
    let mut total = 0.0;
    for lp in &embedding.loops {
        if lp.iter().any(|p| p.norm() < ORIGIN_EPS) {
            return Err(GeometryError::OriginOnCurve);
        }
        total += lp
            .windows(2)
            .map(|w| w[0].cross(w[1]).atan2(w[0].dot(w[1])))
            .sum::<f64>();
    }
    Ok(total)
}

/// Winding phase as an integer multiple of π, if it is one within `tol`.
pub fn phase_in_pi(phase: f64, tol: f64) -> Option<i64> {
    let k = (phase / PI).round();
    ((phase - k * PI).abs() <= tol).then_some(k as i64)
}

/// Right-hand rule: sign of `(over × under)·ẑ`.
pub fn crossing_sign_from_geometry(over: Point, under: Point) -> Result<i8, GeometryError> {
    let z = over.cross(under);
    if z.abs() < PARALLEL_EPS {
        return Err(GeometryError::ParallelStrands);
    }
    Ok(if z > 0.0 { 1 } else { -1 })
}

/// A proper intersection between two non-adjacent segments of one loop.
#[derive(Debug, Clone, Copy)]
struct Intersection {
    seg_a: usize,
    seg_b: usize,
    point: Point,
}

fn segment_intersection(p: Point, p2: Point, q: Point, q2: Point) -> Option<Point> {
    let r = p2 - p;
    let s = q2 - q;
    let denom = r.cross(s);
    if denom.abs() < 1e-300 {
        return None;
    }
    let qp = q - p;
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    ((0.0..1.0).contains(&t) && (0.0..1.0).contains(&u))
        .then(|| Point::new(p.x + t * r.x, p.y + t * r.y))
}

fn self_intersections(pts: &[Point]) -> Vec<Intersection> {
    let m = pts.len() - 1;
    let bbox = |i: usize| {
        let (a, b) = (pts[i], pts[i + 1]);
        (a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y))
    };
    let boxes: Vec<_> = (0..m).map(bbox).collect();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            let (a, b) = (boxes[i], boxes[j]);
            if a.1 < b.0 || b.1 < a.0 || a.3 < b.2 || b.3 < a.2 {
                continue;
            }
            if let Some(point) = segment_intersection(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                out.push(Intersection {
                    seg_a: i,
                    seg_b: j,
                    point,
                });
            }
        }
    }
    out
}

/// Result of comparing one crossing's letter sign with the sign read off the
/// embedded curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingCheck {
    pub id: usize,
    pub site: Site,
    pub letter_sign: i8,
    pub geometric_sign: i8,
    pub point: Point,
}

/// Finds every crossing of the embedded closure geometrically, decides which
/// branch is over from the diagram word, and computes its sign from the
/// strand directions.
///
/// Both the walk that produces the diagram word and the embedding start on
/// the innermost circle at angle 0, so the k-th crossing passage along the
/// polyline is the k-th crossing visit of the word.
pub fn crossing_sign_sweep(
    braid: &BraidWord,
    radii: &[f64],
    points_per_slot: usize,
) -> Result<Vec<CrossingCheck>, GeometryError> {
    let diagram = closure_diagram(braid, VertexRule::Auto)?;
    let emb = annular_embed(braid, radii, points_per_slot)?;
    let pts = emb.polyline();
    let hits = self_intersections(pts);

    let crossing_visits: Vec<_> = diagram
        .word
        .visits()
        .iter()
        .filter(|v| v.role != VisitRole::Through)
        .collect();
    if hits.len() * 2 != crossing_visits.len() {
        return Err(GeometryError::Inconsistent(format!(
            "{} intersections for {} crossing visits",
            hits.len(),
            crossing_visits.len()
        )));
    }
    // (segment index, intersection index)
    let mut passages: Vec<(usize, usize)> = hits
        .iter()
        .enumerate()
        .flat_map(|(h, x)| [(x.seg_a, h), (x.seg_b, h)])
        .collect();
    passages.sort();

    let mut over_seg: Vec<Option<usize>> = vec![None; hits.len()];
    let mut under_seg: Vec<Option<usize>> = vec![None; hits.len()];
    let mut site_of: Vec<Option<Site>> = vec![None; hits.len()];
    for (&(seg, h), visit) in passages.iter().zip(&crossing_visits) {
        if *site_of[h].get_or_insert(visit.site) != visit.site {
            return Err(GeometryError::Inconsistent(format!(
                "intersection {h} matched to two sites"
            )));
        }
        let slot = match visit.role {
            VisitRole::Over => &mut over_seg[h],
            _ => &mut under_seg[h],
        };
        if slot.replace(seg).is_some() {
            return Err(GeometryError::Inconsistent(format!(
                "intersection {h} has one role twice"
            )));
        }
    }

    let dir = |seg: usize| pts[seg + 1] - pts[seg];
    let mut checks = Vec::with_capacity(hits.len());
    for (h, x) in hits.iter().enumerate() {
        let (Some(o), Some(u), Some(site)) = (over_seg[h], under_seg[h], site_of[h]) else {
            return Err(GeometryError::Inconsistent(format!(
                "intersection {h} incomplete"
            )));
        };
        let crossing = diagram
            .crossings
            .iter()
            .find(|c| c.site == site)
            .ok_or_else(|| GeometryError::Inconsistent(format!("no crossing for site {site}")))?;
        checks.push(CrossingCheck {
            id: crossing.id,
            site,
            letter_sign: crossing.sign,
            geometric_sign: crossing_sign_from_geometry(dir(o), dir(u))?,
            point: x.point,
        });
    }
    checks.sort_by_key(|c| c.id);
    Ok(checks)
}

/// Nominal drawing positions of every diagram site: crossings at the slot
/// midpoint between their two circles, branch vertices at the slot midpoint
/// on the outermost circle.
pub fn site_positions(
    braid: &BraidWord,
    diagram: &ClosureDiagram,
    radii: &[f64],
) -> Result<Vec<(Site, Point)>, GeometryError> {
    check_radii(radii, braid.strands())?;
    let slots = braid.letters().len().max(1) as f64;
    let mid = |slot: usize| TAU * (slot as f64 + 0.5) / slots;
    let mut out = Vec::new();
    for c in &diagram.crossings {
        let i = braid.letters()[c.id].unsigned_abs() as usize;
        out.push((
            c.site,
            Point::polar(0.5 * (radii[i - 1] + radii[i]), mid(c.id)),
        ));
    }
    for v in &diagram.vertices {
        out.push((v.site, Point::polar(*radii.last().unwrap(), mid(v.slot))));
    }
    Ok(out)
}
