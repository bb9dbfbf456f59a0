//! Brute-force self-intersection oracle.
//!
//! Written against plain `(x, y)` tuples and a closest-points formulation
//! (segment–segment distance by clamped least squares), so it shares no
//! geometry code with the library's orientation-predicate checker.

pub type P = (f64, f64);

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

fn add_scaled(a: P, d: P, s: f64) -> P {
    (a.0 + d.0 * s, a.1 + d.1 * s)
}

fn dot(a: P, b: P) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn dist(a: P, b: P) -> f64 {
    let d = sub(a, b);
    dot(d, d).sqrt()
}

fn clamp01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Closest points between segments p1–q1 and p2–q2.
pub fn closest_points(p1: P, q1: P, p2: P, q2: P) -> (P, P) {
    let d1 = sub(q1, p1);
    let d2 = sub(q2, p2);
    let r = sub(p1, p2);
    let a = dot(d1, d1);
    let e = dot(d2, d2);
    let f = dot(d2, r);
    let c = dot(d1, r);
    let b = dot(d1, d2);
    let denom = a * e - b * b;
    let mut s = if denom > 0.0 {
        clamp01((b * f - c * e) / denom)
    } else {
        0.0
    };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = clamp01(-c / a);
    } else if t > 1.0 {
        t = 1.0;
        s = clamp01((b - c) / a);
    }
    (add_scaled(p1, d1, s), add_scaled(p2, d2, t))
}

fn point_to_segment(x: P, a: P, b: P) -> f64 {
    let d = sub(b, a);
    let t = clamp01(dot(sub(x, a), d) / dot(d, d));
    dist(add_scaled(a, d, t), x)
}

/// `(point, i, j)` for every contacting pair of segments, `i < j`, sorted.
pub fn brute_force(points: &[P], tol: f64) -> Vec<(P, usize, usize)> {
    let n = points.len() - 1;
    let closed = n > 2 && dist(points[0], points[n]) <= tol;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a0, a1, b0, b1) = (points[i], points[i + 1], points[j], points[j + 1]);
            if j == i + 1 {
                // Shared vertex a1 == b0: contact only if a far end folds back.
                if point_to_segment(a0, b0, b1) <= tol {
                    out.push((a0, i, j));
                } else if point_to_segment(b1, a0, a1) <= tol {
                    out.push((b1, i, j));
                }
            } else if closed && i == 0 && j == n - 1 {
                if point_to_segment(a1, b0, b1) <= tol {
                    out.push((a1, i, j));
                } else if point_to_segment(b0, a0, a1) <= tol {
                    out.push((b0, i, j));
                }
            } else {
                let (c1, c2) = closest_points(a0, a1, b0, b1);
                if dist(c1, c2) <= tol {
                    out.push((((c1.0 + c2.0) / 2.0, (c1.1 + c2.1) / 2.0), i, j));
                }
            }
        }
    }
    out
}
