//! Constructions that turn realizations into realizations: stacking,
//! prisms, products with a path, and pyramids.
//!
//! A small perturbation `ε` is made exact by scaling every coordinate by
//! `s = 4·(n + d + 1)` and using `ε = 1`. Each output is checked against an
//! independently built face lattice; on failure the scale is doubled once
//! before giving up.

use crate::charpoint::{char_point_at, characteristic_points};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::poset::{build_cporder, identity_labels, matches_ball, matches_faces, Ball, FaceLattice};
use crate::surface::OrthoSurface;

/// One inner vertex `(1, …, 1)` with its `d` suspensions.
pub fn simplex_surface(d: usize) -> Result<OrthoSurface> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    OrthoSurface::make_suspended(vec![Point::new(vec![1; d])])
}

/// The ball realized by a suspended surface: facets are the down-sets of
/// the maximal characteristic points, the outer facet is the suspensions.
/// Vertex `id` carries label `id + 1`.
pub fn realized_ball(s: &OrthoSurface) -> Result<Ball> {
    let susp = s.suspensions().ok_or(Error::NotSuspended)?;
    let cps = characteristic_points(s);
    let label = |ids: &[usize]| ids.iter().map(|&v| v as u32 + 1).collect::<Vec<_>>();
    let mut facets: Vec<Vec<u32>> = cps
        .iter()
        .filter(|c| !cps.iter().any(|o| o.point != c.point && c.point.le(&o.point)))
        .map(|c| label(&c.downset))
        .collect();
    let outer = label(susp);
    facets.push(outer.clone());
    if facets.iter().all(|f| f.len() == s.dim()) {
        Ball::simplicial(facets, outer)
    } else {
        Ball::polytope(facets, outer)
    }
}

fn scale(s: &OrthoSurface) -> i64 {
    4 * (s.len() + s.dim() + 1) as i64
}

/// Translate so that every coordinate minimum is zero.
fn shift_to_origin(points: Vec<Point>) -> Vec<Point> {
    let d = points[0].dim();
    let low: Vec<i64> = (0..d)
        .map(|i| points.iter().map(|p| p.get(i)).min().unwrap())
        .collect();
    points
        .into_iter()
        .map(|p| Point::new(p.coords().iter().zip(&low).map(|(c, l)| c - l).collect()))
        .collect()
}

/// Run `build` at scale `s`, and at `2s` if the first result fails its check.
fn with_retry(s: i64, build: impl Fn(i64) -> Result<OrthoSurface>) -> Result<OrthoSurface> {
    match build(s) {
        Err(Error::VerificationFailed(_)) => build(2 * s),
        r => r,
    }
}

fn verify(ok: std::result::Result<(), crate::poset::Mismatch>, what: &str) -> Result<()> {
    ok.map_err(|m| Error::VerificationFailed(format!("{what}: {m:?}")))
}

/// Stack a new vertex onto the maximum `m`: the new vertex sits just below
/// `m` in every coordinate, so `m` is replaced by `d` new maxima.
pub fn stack(s: &OrthoSurface, m: &Point) -> Result<OrthoSurface> {
    if !s.is_suspended() {
        return Err(Error::NotSuspended);
    }
    if !s.is_generic() {
        return Err(Error::NotGeneric);
    }
    let d = s.dim();
    let c = char_point_at(s, m)?.ok_or(Error::NotCharacteristic)?;
    if c.rank + 1 != d {
        return Err(Error::InvalidArgument(format!("{m} is not a maximum")));
    }
    let before = realized_ball(s)?;
    let new_label = s.len() as u32 + 1;
    let old: Vec<u32> = c.downset.iter().map(|&v| v as u32 + 1).collect();
    let mut facets: Vec<Vec<u32>> = before.facets().iter().filter(|f| **f != old).cloned().collect();
    for w in &old {
        let mut f: Vec<u32> = old.iter().copied().filter(|x| x != w).collect();
        f.push(new_label);
        facets.push(f);
    }
    let target = Ball::simplicial(facets, before.outer().to_vec())?;

    with_retry(scale(s), |sc| {
        let mut vs: Vec<Point> = s.vertices().iter().map(|v| v.scaled(sc)).collect();
        vs.push(Point::new(m.coords().iter().map(|x| sc * x - 1).collect()));
        let out = OrthoSurface::new(d, vs)?;
        if !out.is_generic() || !out.is_suspended() {
            return Err(Error::VerificationFailed("stacked surface lost genericity".into()));
        }
        verify(matches_ball(&build_cporder(&out), &target, &identity_labels(out.len())), "stack")?;
        Ok(out)
    })
}

/// Facets of the polytope realized by the maximum `m` of a surface whose
/// vertices all lie below `m`: the down-sets of the characteristic points
/// covered by `m`, as labels.
fn facets_below(s: &OrthoSurface, m: &Point) -> Vec<Vec<u32>> {
    let below: Vec<_> = characteristic_points(s)
        .into_iter()
        .filter(|c| c.point != *m && c.point.le(m))
        .collect();
    below
        .iter()
        .filter(|c| !below.iter().any(|o| o.point != c.point && c.point.le(&o.point)))
        .map(|c| c.downset.iter().map(|&v| v as u32 + 1).collect())
        .collect()
}

/// Prism over the polytope `P` realized at the maximum `m`.
///
/// Every vertex must lie below `m` and be tight in exactly one coordinate
/// `i`; it gets a partner `v + 2ε·e_i − ε·1`. The partners form the copy
/// `P'`, which becomes the missing outer facet. Vertex `j` of `P` has label
/// `j + 1`, its partner `n + j + 1`.
pub fn prism(s: &OrthoSurface, m: &Point) -> Result<OrthoSurface> {
    let d = s.dim();
    let n = s.len();
    if char_point_at(s, m)?.is_none() {
        return Err(Error::NotCharacteristic);
    }
    let mut dirs = Vec::with_capacity(n);
    for (id, v) in s.vertices().iter().enumerate() {
        if !v.le(m) {
            return Err(Error::NotDominated(id));
        }
        let t = v.agreement(m);
        if t.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "vertex {id} is tight in {} coordinates, expected one",
                t.len()
            )));
        }
        dirs.push(t.iter().next().unwrap());
    }
    let n32 = n as u32;
    let mut facets = vec![(1..=n32).collect::<Vec<_>>(), (n32 + 1..=2 * n32).collect()];
    for f in facets_below(s, m) {
        let mut g = f.clone();
        g.extend(f.iter().map(|x| x + n32));
        facets.push(g);
    }
    let target = Ball::polytope(facets, (n32 + 1..=2 * n32).collect())?;

    with_retry(scale(s), |sc| {
        let mut vs: Vec<Point> = s.vertices().iter().map(|v| v.scaled(sc)).collect();
        for (v, &i) in s.vertices().iter().zip(&dirs) {
            vs.push(Point::new(
                (0..d)
                    .map(|j| sc * v.get(j) + if j == i { 1 } else { -1 })
                    .collect(),
            ));
        }
        let out = OrthoSurface::new(d, shift_to_origin(vs))?;
        verify(matches_ball(&build_cporder(&out), &target, &identity_labels(out.len())), "prism")?;
        Ok(out)
    })
}

/// All cells of `P × path_k`: `F × {i}` and `F × {i, i+1}` for every face
/// `F` of `P`. Copy `i` (1-based) of vertex label `j` gets `(i − 1)·n + j`.
pub fn product_cells(faces: &[Vec<u32>], n: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for f in faces {
        for i in 1..=k {
            out.push(f.iter().map(|j| (i - 1) * n + j).collect());
        }
        for i in 1..k {
            out.push(f.iter().flat_map(|j| [(i - 1) * n + j, i * n + j]).collect());
        }
    }
    out
}

/// Product with a path on `k` vertices.
///
/// The input realizes the full face lattice of a polytope `P` (its
/// characteristic points are all faces of `P`, top included). Copy `i`
/// consists of the points `(v − i·ε, i)`. The result realizes every cell of
/// `P × path_k`; nothing is missing.
pub fn path_product(s: &OrthoSurface, k: usize) -> Result<OrthoSurface> {
    if k < 2 {
        return Err(Error::InvalidArgument("a path product needs k >= 2".into()));
    }
    let d = s.dim();
    let n = s.len();
    let faces: Vec<Vec<u32>> = characteristic_points(s)
        .into_iter()
        .map(|c| c.downset.iter().map(|&v| v as u32 + 1).collect())
        .collect();
    let target = FaceLattice::from_faces(product_cells(&faces, n as u32, k as u32));
    let base = 4 * (n * k + d + 2) as i64;

    with_retry(base, |sc| {
        let mut vs = Vec::with_capacity(n * k);
        for i in 1..=k as i64 {
            for v in s.vertices() {
                let mut c: Vec<i64> = v.coords().iter().map(|x| sc * x - i).collect();
                c.push(i);
                vs.push(Point::new(c));
            }
        }
        let out = OrthoSurface::new(d + 1, shift_to_origin(vs))?;
        verify(matches_faces(&build_cporder(&out), &target, &identity_labels(out.len())), "product")?;
        Ok(out)
    })
}

/// Pyramid over the ball realized by a suspended surface.
///
/// Inner vertices are lifted to height 1, suspensions stay at height 0 and
/// the apex `(0, …, 0, 2)` is the new suspension. The output realizes
/// `pyr(P)` minus the pyramid over the old outer facet; it is checked, and
/// an input on which the lift fails is reported as an error.
pub fn pyramid(s: &OrthoSurface) -> Result<OrthoSurface> {
    let d = s.dim();
    let n = s.len();
    let ball = realized_ball(s)?;
    verify(matches_ball(&build_cporder(s), &ball, &identity_labels(n)), "pyramid input")
        .map_err(|_| Error::InvalidArgument("input does not realize a ball".into()))?;
    let apex = n as u32 + 1;
    let mut facets = vec![(1..=n as u32).collect::<Vec<_>>()];
    facets.extend(ball.facets().iter().map(|f| {
        let mut g = f.clone();
        g.push(apex);
        g
    }));
    let mut outer = ball.outer().to_vec();
    outer.push(apex);
    let target = Ball::polytope(facets, outer)?;

    let mut vs: Vec<Point> = s
        .vertices()
        .iter()
        .enumerate()
        .map(|(id, v)| {
            let mut c = v.coords().to_vec();
            c.push(if s.is_suspension(id) { 0 } else { 1 });
            Point::new(c)
        })
        .collect();
    let mut top = vec![0; d + 1];
    top[d] = 2;
    vs.push(Point::new(top));
    let out = OrthoSurface::new(d + 1, vs)?;
    verify(matches_ball(&build_cporder(&out), &target, &identity_labels(out.len())), "pyramid")?;
    Ok(out)
}
