//! Plausibility audit for complex-valued distributions.
//!
//! A distribution that assigns complex numbers to propositions can still rank
//! plausibility if its values lie on one open, non-self-intersecting curve:
//! such a curve can be unwound onto a real interval `[v_false, v_true]` by an
//! order-preserving map. This module traces sampled values into a polyline,
//! looks for self-intersections and closure, builds the unwinding by
//! cumulative chord length, and ranks points on the curve.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

// ---------------------------------------------------------------------------
// Sampled values and curves
// ---------------------------------------------------------------------------

/// Raw samples of a complex-valued distribution over a real parameter.
///
/// Unlike [`ComplexCurve`] this may contain repeated values (a constant
/// distribution, for instance).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledDistribution {
    pub label: String,
    pub param: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl SampledDistribution {
    pub fn new(label: impl Into<String>, param: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if param.len() != values.len() {
            return Err(Error::LengthMismatch(values.len(), param.len()));
        }
        Ok(SampledDistribution {
            label: label.into(),
            param,
            values,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self, label: impl Into<String>) -> Self {
        SampledDistribution {
            label: label.into(),
            param: self.param.clone(),
            values: self.values.iter().map(Complex64::conj).collect(),
        }
    }

    pub fn trace(&self) -> Result<ComplexCurve> {
        trace_curve(&self.values, &self.param, &self.label, &Tolerances::DEFAULT)
    }
}

/// An ordered polyline in the complex plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveFile", into = "CurveFile")]
pub struct ComplexCurve {
    label: String,
    param: Vec<f64>,
    points: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct CurveFile {
    label: String,
    param: Vec<f64>,
    points: Vec<Complex64>,
}

impl TryFrom<CurveFile> for ComplexCurve {
    type Error = Error;

    fn try_from(f: CurveFile) -> Result<Self> {
        trace_curve(&f.points, &f.param, &f.label, &Tolerances::DEFAULT)
    }
}

impl From<ComplexCurve> for CurveFile {
    fn from(c: ComplexCurve) -> Self {
        CurveFile {
            label: c.label,
            param: c.param,
            points: c.points,
        }
    }
}

impl ComplexCurve {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn param(&self) -> &[f64] {
        &self.param
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn segment(&self, k: usize) -> (Complex64, Complex64) {
        (self.points[k], self.points[k + 1])
    }

    /// Applies `f` to every point and retraces.
    pub fn map_points(&self, f: impl Fn(Complex64) -> Complex64) -> Result<ComplexCurve> {
        let points: Vec<Complex64> = self.points.iter().copied().map(f).collect();
        trace_curve(&points, &self.param, &self.label, &Tolerances::DEFAULT)
    }
}

/// Builds the polyline through `values` in parameter order, merging
/// consecutive samples closer than `tol.duplicate_point`.
pub fn trace_curve(values: &[Complex64], param: &[f64], label: &str, tol: &Tolerances) -> Result<ComplexCurve> {
    if values.len() != param.len() {
        return Err(Error::LengthMismatch(values.len(), param.len()));
    }
    if values.len() < 2 {
        return Err(Error::TooFewPoints(values.len()));
    }
    if let Some(k) = param.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::NonMonotoneParameter(k + 1));
    }
    let mut points = vec![values[0]];
    let mut kept = vec![param[0]];
    for (z, t) in values.iter().zip(param).skip(1) {
        if (z - points[points.len() - 1]).norm() >= tol.duplicate_point {
            points.push(*z);
            kept.push(*t);
        }
    }
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    Ok(ComplexCurve {
        label: label.to_owned(),
        param: kept,
        points,
    })
}

// ---------------------------------------------------------------------------
// Intersections
// ---------------------------------------------------------------------------

/// A contact between two segments of one curve; `segments.0 < segments.1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(Complex64, usize, usize)", into = "(Complex64, usize, usize)")]
pub struct Intersection {
    pub point: Complex64,
    pub segments: (usize, usize),
}

impl From<(Complex64, usize, usize)> for Intersection {
    fn from((point, i, j): (Complex64, usize, usize)) -> Self {
        Intersection {
            point,
            segments: (i, j),
        }
    }
}

impl From<Intersection> for (Complex64, usize, usize) {
    fn from(x: Intersection) -> Self {
        (x.point, x.segments.0, x.segments.1)
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn dot(a: Complex64, b: Complex64) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Distance from `p` to segment `a`–`b`, and the closest point.
pub(crate) fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> (f64, f64) {
    let d = b - a;
    let len2 = d.norm_sqr();
    let t = if len2 > 0.0 {
        (dot(p - a, d) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    ((a + d * t - p).norm(), t)
}

/// Signed distance of `p` from the line through `a` in direction `d`, with
/// anything inside `tol` snapped to exactly zero.
fn side(a: Complex64, d: Complex64, p: Complex64, tol: f64) -> f64 {
    let s = cross(d, p - a) / d.norm();
    if s.abs() <= tol {
        0.0
    } else {
        s
    }
}

/// Contact point of segments `p0`–`p1` and `q0`–`q1`, if any.
///
/// Proper crossings are decided by orientation signs; touches and collinear
/// overlaps (anything within `tol`) report the first touching endpoint.
fn segment_contact(p0: Complex64, p1: Complex64, q0: Complex64, q1: Complex64, tol: f64) -> Option<Complex64> {
    let (r, s) = (p1 - p0, q1 - q0);
    if p0.re.min(p1.re) > q0.re.max(q1.re) + tol
        || q0.re.min(q1.re) > p0.re.max(p1.re) + tol
        || p0.im.min(p1.im) > q0.im.max(q1.im) + tol
        || q0.im.min(q1.im) > p0.im.max(p1.im) + tol
    {
        return None;
    }
    let o1 = side(p0, r, q0, tol);
    let o2 = side(p0, r, q1, tol);
    let o3 = side(q0, s, p0, tol);
    let o4 = side(q0, s, p1, tol);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        let t = cross(q0 - p0, s) / cross(r, s);
        return Some(p0 + r * t);
    }
    [(q0, p0, p1), (q1, p0, p1), (p0, q0, q1), (p1, q0, q1)]
        .into_iter()
        .find(|&(e, a, b)| point_segment_distance(e, a, b).0 <= tol)
        .map(|(e, _, _)| e)
}

/// Segments `i < j` that share a polyline vertex: consecutive ones, plus the
/// first and last of a curve whose endpoints coincide.
fn share_vertex(i: usize, j: usize, curve: &ComplexCurve, tol: f64) -> bool {
    let n = curve.segment_count();
    j == i + 1 || (i == 0 && j == n - 1 && n > 2 && (curve.points[0] - curve.points[n]).norm() <= tol)
}

/// Contact between two vertex-sharing segments beyond the shared vertex,
/// i.e. the polyline doubling back over itself.
fn backtrack_contact(
    far_a: Complex64,
    seg_a: (Complex64, Complex64),
    far_b: Complex64,
    seg_b: (Complex64, Complex64),
    tol: f64,
) -> Option<Complex64> {
    if point_segment_distance(far_a, seg_b.0, seg_b.1).0 <= tol {
        Some(far_a)
    } else if point_segment_distance(far_b, seg_a.0, seg_a.1).0 <= tol {
        Some(far_b)
    } else {
        None
    }
}

/// All contacts between segments of `curve`, sorted by segment indices.
///
/// Exhaustive pairwise test. Segments sharing a vertex only count when one
/// folds back onto the other.
pub fn self_intersections(curve: &ComplexCurve, tol: f64) -> Vec<Intersection> {
    let n = curve.segment_count();
    let mut found = Vec::new();
    for i in 0..n {
        let (p0, p1) = curve.segment(i);
        for j in i + 1..n {
            let (q0, q1) = curve.segment(j);
            let contact = if j == i + 1 {
                backtrack_contact(p0, (p0, p1), q1, (q0, q1), tol)
            } else if share_vertex(i, j, curve, tol) {
                backtrack_contact(p1, (p0, p1), q0, (q0, q1), tol)
            } else {
                segment_contact(p0, p1, q0, q1, tol)
            };
            if let Some(point) = contact {
                found.push(Intersection {
                    point,
                    segments: (i, j),
                });
            }
        }
    }
    found
}

// ---------------------------------------------------------------------------
// Closure
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Closure {
    pub closed: bool,
    pub gap: f64,
}

pub fn is_closed(curve: &ComplexCurve, tol: f64) -> Closure {
    let gap = (curve.points[0] - curve.points[curve.points.len() - 1]).norm();
    Closure { closed: gap < tol, gap }
}

// ---------------------------------------------------------------------------
// Unwinding and ranking
// ---------------------------------------------------------------------------

/// Plausibility values assigned to falsity and certainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlausibilityScale {
    pub v_false: f64,
    pub v_true: f64,
}

impl PlausibilityScale {
    pub fn new(v_false: f64, v_true: f64) -> Result<Self> {
        let scale = PlausibilityScale { v_false, v_true };
        scale.validate()?;
        Ok(scale)
    }

    pub fn validate(&self) -> Result<()> {
        if self.v_true > self.v_false && self.v_false.is_finite() && self.v_true.is_finite() {
            Ok(())
        } else {
            Err(Error::DegenerateScale {
                v_false: self.v_false,
                v_true: self.v_true,
            })
        }
    }
}

impl Default for PlausibilityScale {
    fn default() -> Self {
        PlausibilityScale {
            v_false: 0.0,
            v_true: 1.0,
        }
    }
}

/// Order-preserving map from an admissible curve onto `[v_false, v_true]`
/// by normalized cumulative chord length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderPreservingMap {
    #[serde(skip)]
    curve: ComplexCurve,
    cumulative_lengths: Vec<f64>,
    scale: PlausibilityScale,
    mapped: Vec<f64>,
}

impl OrderPreservingMap {
    pub fn curve(&self) -> &ComplexCurve {
        &self.curve
    }

    pub fn cumulative_lengths(&self) -> &[f64] {
        &self.cumulative_lengths
    }

    pub fn scale(&self) -> PlausibilityScale {
        self.scale
    }

    /// Ranked value of every curve point, in curve order.
    pub fn mapped_values(&self) -> &[f64] {
        &self.mapped
    }

    fn total_length(&self) -> f64 {
        self.cumulative_lengths[self.cumulative_lengths.len() - 1]
    }

    fn map_length(&self, length: f64) -> f64 {
        let span = self.scale.v_true - self.scale.v_false;
        self.scale.v_false + span * length / self.total_length()
    }
}

pub fn unwind(curve: &ComplexCurve, scale: PlausibilityScale, tol: &Tolerances) -> Result<OrderPreservingMap> {
    scale.validate()?;
    let closure = is_closed(curve, tol.closure);
    if closure.closed {
        return Err(Error::CurveClosed(closure.gap));
    }
    let crossings = self_intersections(curve, tol.intersection);
    if !crossings.is_empty() {
        return Err(Error::CurveSelfIntersects(crossings));
    }
    let mut cumulative_lengths = Vec::with_capacity(curve.points.len());
    let mut total = 0.0;
    cumulative_lengths.push(total);
    for w in curve.points.windows(2) {
        total += (w[1] - w[0]).norm();
        cumulative_lengths.push(total);
    }
    let mut map = OrderPreservingMap {
        curve: curve.clone(),
        cumulative_lengths,
        scale,
        mapped: Vec::new(),
    };
    let last = map.cumulative_lengths.len() - 1;
    map.mapped = map.cumulative_lengths.iter().map(|&l| map.map_length(l)).collect();
    // Pin the endpoints exactly.
    map.mapped[0] = scale.v_false;
    map.mapped[last] = scale.v_true;
    Ok(map)
}

/// Positions of on-curve queries on the plausibility scale.
pub fn rank(map: &OrderPreservingMap, queries: &[Complex64], snap_tol: f64) -> Result<Vec<f64>> {
    queries
        .iter()
        .map(|&q| {
            let (mut best, mut best_k, mut best_t) = (f64::INFINITY, 0, 0.0);
            for k in 0..map.curve.segment_count() {
                let (a, b) = map.curve.segment(k);
                let (d, t) = point_segment_distance(q, a, b);
                if d < best {
                    (best, best_k, best_t) = (d, k, t);
                }
            }
            if best > snap_tol {
                return Err(Error::QueryOffCurve {
                    query: q,
                    distance: best,
                });
            }
            let seg_len = map.cumulative_lengths[best_k + 1] - map.cumulative_lengths[best_k];
            Ok(map.map_length(map.cumulative_lengths[best_k] + best_t * seg_len))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Audit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Admissible,
    SelfIntersecting,
    ClosedCurve,
    DegenerateScale,
}

impl Verdict {
    pub fn is_admissible(self) -> bool {
        self == Verdict::Admissible
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub verdict: Verdict,
    pub intersections: Vec<Intersection>,
    pub closure_gap: f64,
    pub ranking: Option<OrderPreservingMap>,
    pub notes: String,
}

impl AuditReport {
    fn failed(verdict: Verdict, intersections: Vec<Intersection>, closure_gap: f64, notes: Vec<String>) -> Self {
        AuditReport {
            verdict,
            intersections,
            closure_gap,
            ranking: None,
            notes: notes.join("; "),
        }
    }
}

/// Joins curves end to end into one candidate curve. Parameters of each later
/// curve are shifted to continue after the previous one. Jumps between curves
/// are described in the returned notes.
pub fn concatenate(curves: &[ComplexCurve], tol: &Tolerances) -> (Vec<Complex64>, Vec<f64>, Vec<String>) {
    let mut points: Vec<Complex64> = Vec::new();
    let mut param: Vec<f64> = Vec::new();
    let mut notes = Vec::new();
    for (k, c) in curves.iter().enumerate() {
        if let (Some(&end), Some(&last_t)) = (points.last(), param.last()) {
            let jump = (c.points[0] - end).norm();
            if jump >= tol.closure {
                notes.push(format!(
                    "jump of length {jump:.6e} joining curve {} ('{}') to curve {k} ('{}')",
                    k - 1,
                    curves[k - 1].label,
                    c.label
                ));
            }
            let shift = last_t + 1.0 - c.param[0];
            points.extend_from_slice(&c.points);
            param.extend(c.param.iter().map(|t| t + shift));
        } else {
            points.extend_from_slice(&c.points);
            param.extend_from_slice(&c.param);
        }
    }
    (points, param, notes)
}

/// Decides whether all `curves`, taken together as one universal curve,
/// support a transitive plausibility ranking.
pub fn audit(curves: &[ComplexCurve], scale: PlausibilityScale, tol: &Tolerances) -> AuditReport {
    if curves.is_empty() {
        return AuditReport::failed(Verdict::DegenerateScale, vec![], 0.0, vec!["no curves supplied".into()]);
    }
    let (points, param, mut notes) = concatenate(curves, tol);
    if scale.validate().is_err() {
        notes.push(format!(
            "v_true = {} does not exceed v_false = {}",
            scale.v_true, scale.v_false
        ));
        return AuditReport::failed(Verdict::DegenerateScale, vec![], 0.0, notes);
    }
    let label = curves.iter().map(|c| c.label.as_str()).collect::<Vec<_>>().join("+");
    let union = match trace_curve(&points, &param, &label, tol) {
        Ok(c) => c,
        Err(_) => {
            notes.push("all values coincide; the curve has zero length".into());
            return AuditReport::failed(Verdict::DegenerateScale, vec![], 0.0, notes);
        }
    };
    let closure = is_closed(&union, tol.closure);
    let intersections = self_intersections(&union, tol.intersection);
    if closure.closed {
        notes.push("curve closes on itself; no endpoint can be chosen as v_false or v_true".into());
        return AuditReport::failed(Verdict::ClosedCurve, intersections, closure.gap, notes);
    }
    if !intersections.is_empty() {
        notes.push(format!(
            "{} self-intersection(s); a crossing value would need two ranks",
            intersections.len()
        ));
        return AuditReport::failed(Verdict::SelfIntersecting, intersections, closure.gap, notes);
    }
    match unwind(&union, scale, tol) {
        Ok(map) => AuditReport {
            verdict: Verdict::Admissible,
            intersections,
            closure_gap: closure.gap,
            ranking: Some(map),
            notes: notes.join("; "),
        },
        // Closure and crossings were ruled out above and the scale is valid.
        Err(e) => unreachable!("unwind failed on an audited curve: {e}"),
    }
}
