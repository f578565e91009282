//! Exact linear algebra and planar predicates over rationals.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::rational::{Coords, Rational};

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Coords {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rational]) -> Coords {
    a.iter().map(|x| -x).collect()
}

/// Average of the given points.
pub fn centroid(points: &[&Coords]) -> Coords {
    let n = Rational::from_integer(points.len().into());
    let dim = points[0].len();
    (0..dim)
        .map(|i| points.iter().map(|p| p[i].clone()).sum::<Rational>() / &n)
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Coords]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|i| !m[*i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Coords]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : M x = 0}` where `M` has the given rows of length `cols`.
pub fn nullspace(rows: &[Coords], cols: usize) -> Vec<Coords> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::from_integer(1.into());
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Affine independence of a point set.
pub fn affinely_independent(points: &[&Coords]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let diffs: Vec<Coords> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    rank(&diffs) == diffs.len()
}

/// Whether `x` lies on the affine hull of `points`.
pub fn on_affine_hull(points: &[&Coords], x: &Coords) -> bool {
    let mut diffs: Vec<Coords> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    let r = rank(&diffs);
    diffs.push(sub(x, points[0]));
    rank(&diffs) == r
}

/// Whether the positive (conical) hull of `gens` is all of `ℝᵏ`.
///
/// If the generators span, the cone of directions `d` with `⟨d, g⟩ ≤ 0` for
/// all `g` is pointed, so it is nonzero iff it has an extreme ray. Extreme rays
/// are cut out by `k − 1` independent generators, so we enumerate those.
pub fn positive_hull_is_everything(gens: &[Coords], k: usize) -> bool {
    if rank(gens) < k {
        return false;
    }
    let mut subset = Vec::with_capacity(k.saturating_sub(1));
    !some_ray_separates(gens, k, 0, &mut subset)
}

fn some_ray_separates(gens: &[Coords], k: usize, start: usize, subset: &mut Vec<usize>) -> bool {
    if subset.len() + 1 == k {
        let rows: Vec<Coords> = subset.iter().map(|i| gens[*i].clone()).collect();
        let null = nullspace(&rows, k);
        if null.len() != 1 {
            return false;
        }
        let d = &null[0];
        let signs: Vec<Ordering> = gens.iter().map(|g| dot(d, g).cmp(&Rational::zero())).collect();
        return signs.iter().all(|s| *s != Ordering::Greater) || signs.iter().all(|s| *s != Ordering::Less);
    }
    for i in start..gens.len() {
        subset.push(i);
        if some_ray_separates(gens, k, i + 1, subset) {
            return true;
        }
        subset.pop();
    }
    false
}

/// Planar orientation: sign of `(b − a) × (c − a)`.
pub fn orient(a: &[Rational], b: &[Rational], c: &[Rational]) -> Ordering {
    let v = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
    v.cmp(&Rational::zero())
}

/// Twice the signed area of a closed polygon.
pub fn signed_area2(points: &[&Coords]) -> Rational {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (p, q) = (points[i], points[(i + 1) % n]);
            &p[0] * &q[1] - &q[0] * &p[1]
        })
        .sum()
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(a: &[Rational], b: &[Rational], p: &[Rational]) -> bool {
    orient(a, b, p) == Ordering::Equal
        && (0..2).all(|i| {
            let (lo, hi) = if a[i] <= b[i] { (&a[i], &b[i]) } else { (&b[i], &a[i]) };
            lo <= &p[i] && &p[i] <= hi
        })
}

/// Intersection point of segments `ab` and `cd` when they cross at a single
/// point; `None` when disjoint or collinear.
pub fn segment_intersection(a: &Coords, b: &Coords, c: &Coords, d: &Coords) -> Option<Coords> {
    let r = sub(b, a);
    let s = sub(d, c);
    let denom = &r[0] * &s[1] - &r[1] * &s[0];
    if denom.is_zero() {
        return None;
    }
    let ca = sub(c, a);
    let t = (&ca[0] * &s[1] - &ca[1] * &s[0]) / &denom;
    let u = (&ca[0] * &r[1] - &ca[1] * &r[0]) / &denom;
    let zero = Rational::zero();
    let one = Rational::from_integer(1.into());
    if t < zero || t > one || u < zero || u > one {
        return None;
    }
    Some(add(a, &scale(&r, &t)))
}

/// Whether two closed segments overlap in more than one point.
pub fn collinear_overlap(a: &Coords, b: &Coords, c: &Coords, d: &Coords) -> bool {
    if orient(a, b, c) != Ordering::Equal || orient(a, b, d) != Ordering::Equal {
        return false;
    }
    // project on the dominant axis
    let axis = if (&b[0] - &a[0]).abs() >= (&b[1] - &a[1]).abs() { 0 } else { 1 };
    let (lo1, hi1) = minmax(&a[axis], &b[axis]);
    let (lo2, hi2) = minmax(&c[axis], &d[axis]);
    let lo = lo1.max(lo2);
    let hi = hi1.min(hi2);
    lo < hi
}

fn minmax<'a>(x: &'a Rational, y: &'a Rational) -> (&'a Rational, &'a Rational) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Point in closed triangle test in the plane.
pub fn in_triangle(a: &[Rational], b: &[Rational], c: &[Rational], p: &[Rational]) -> bool {
    let o1 = orient(a, b, p);
    let o2 = orient(b, c, p);
    let o3 = orient(c, a, p);
    let has_pos = [o1, o2, o3].contains(&Ordering::Greater);
    let has_neg = [o1, o2, o3].contains(&Ordering::Less);
    !(has_pos && has_neg)
}
