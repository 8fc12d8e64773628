use crate::data::DataSet;
use crate::depth::Depth;
use crate::error::{DepthError, Result};

pub const SMALLD_MAX_N: usize = 25;
pub const SMALLD_MAX_DIM: usize = 3;

/// Relative tolerance under which a dot product counts as zero. Exact zeros
/// (integer or dyadic data) are unaffected.
const ZERO_TOL: f64 = 1e-9;

type V3 = [f64; 3];

fn cross(a: V3, b: V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

fn neg(a: V3) -> V3 {
    [-a[0], -a[1], -a[2]]
}

fn is_zero_cross(c: V3, a: V3, b: V3) -> bool {
    norm(c) <= ZERO_TOL * norm(a) * norm(b)
}

/// Sign of `<q, v>` with a relative zero band.
fn side(q: V3, v: V3) -> i8 {
    let t = dot(q, v);
    if t.abs() <= ZERO_TOL * norm(q) * norm(v) {
        0
    } else if t < 0.0 {
        -1
    } else {
        1
    }
}

/// Largest number of vectors strictly inside an open halfspace
/// `{<u, .> < 0}`, with `u` restricted to the orthogonal complement of
/// `fixed`. All `vs` are orthogonal to every vector in `fixed`.
///
/// An optimal open cone of directions has an extreme ray orthogonal to
/// (dimension - 1) of the vectors; at that ray the vectors on the boundary
/// can take any sign pattern realizable one dimension lower, which the
/// recursion maximizes.
fn max_open(vs: &[V3], fixed: &[V3]) -> usize {
    let mut normals: Vec<V3> = Vec::new();
    match fixed.len() {
        0 => {
            for a in 0..vs.len() {
                for b in a + 1..vs.len() {
                    let c = cross(vs[a], vs[b]);
                    if !is_zero_cross(c, vs[a], vs[b]) {
                        normals.push(c);
                    }
                }
            }
            if normals.is_empty() {
                // Collinear: any normal to the common line.
                let Some(&v) = vs.iter().find(|v| norm(**v) > 0.0) else {
                    return 0;
                };
                let axis = (0..3)
                    .min_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs()))
                    .unwrap();
                let mut e = [0.0; 3];
                e[axis] = 1.0;
                normals.push(cross(v, e));
            }
        }
        1 => {
            let w = fixed[0];
            for &v in vs {
                let c = cross(w, v);
                if !is_zero_cross(c, w, v) {
                    normals.push(c);
                }
            }
            if normals.is_empty() {
                return 0;
            }
        }
        _ => normals.push(cross(fixed[0], fixed[1])),
    }

    let mut best = 0;
    for q in normals {
        for s in [q, neg(q)] {
            let mut strict = 0;
            let mut boundary = Vec::new();
            for &v in vs {
                match side(s, v) {
                    -1 => strict += 1,
                    0 => boundary.push(v),
                    _ => {}
                }
            }
            let total = if fixed.len() < 2 && !boundary.is_empty() {
                let mut deeper = fixed.to_vec();
                deeper.push(s);
                strict + max_open(&boundary, &deeper)
            } else {
                strict
            };
            best = best.max(total);
        }
    }
    best
}

/// Exact halfspace depth for `d <= 3`, `n <= 25` by enumerating every
/// combinatorially distinct halfspace through `x`. Larger instances are
/// refused rather than truncated.
pub fn exact_depth_smalld(points: &DataSet, x: &[f64]) -> Result<Depth> {
    let (n, d) = (points.len(), points.dim());
    if n > SMALLD_MAX_N || d > SMALLD_MAX_DIM {
        return Err(DepthError::CostGuard {
            n,
            d,
            max_n: SMALLD_MAX_N,
            max_d: SMALLD_MAX_DIM,
        });
    }
    points.check_dim(x, 0)?;
    // Lower dimensions are embedded in R^3 with the unused axes fixed as
    // boundary normals.
    let vs: Vec<V3> = points
        .points()
        .map(|p| {
            let mut v = [0.0; 3];
            for k in 0..d {
                v[k] = p[k] - x[k];
            }
            v
        })
        .collect();
    let fixed: Vec<V3> = match d {
        1 => vec![[0.0, 0.0, 1.0], [0.0, 1.0, 0.0]],
        2 => vec![[0.0, 0.0, 1.0]],
        _ => vec![],
    };
    Ok(Depth::new(n - max_open(&vs, &fixed), n))
}
