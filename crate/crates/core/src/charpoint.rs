//! Generated points, characteristic points and minimal generating sets.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::point::{join_all, ColorSet, Point};
use crate::surface::OrthoSurface;

/// A characteristic point together with its local structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoint {
    pub point: Point,
    /// Ids of the minima below the point, ascending.
    pub downset: Vec<usize>,
    /// `tight[k]` is `T_p(downset[k])`.
    pub tight: Vec<ColorSet>,
    /// Classes of minima with equal tight sets, each ascending, ordered by
    /// smallest member.
    pub partition: Vec<Vec<usize>>,
    pub generating_sets: Vec<Vec<usize>>,
    /// Smallest generating-set size minus one.
    pub rank: usize,
    /// Minimal generating sets of different sizes exist.
    pub rank_ambiguous: bool,
}

impl CharPoint {
    pub fn tight_of(&self, v: usize) -> Option<ColorSet> {
        self.downset
            .iter()
            .position(|&u| u == v)
            .map(|k| self.tight[k])
    }
}

/// A pattern witnessing degeneracy at a characteristic point.
///
/// `x` is tight in `i` and `j`, `u` in `j` but not `i`, `v` in `i` but not `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyWitness {
    pub point: Point,
    pub x: usize,
    pub u: usize,
    pub v: usize,
    pub i: usize,
    pub j: usize,
}

/// All joins of subsets of `V` that lie on the surface, sorted.
///
/// Every on-surface join is reachable by adding one minimum at a time: the
/// intermediate joins are below it and therefore unobstructed too.
pub fn generated_points(s: &OrthoSurface) -> Vec<Point> {
    let mut seen: BTreeSet<Point> = s.vertices().iter().cloned().collect();
    let mut frontier: Vec<Point> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for v in s.vertices() {
                if v.le(p) {
                    continue;
                }
                let q = p.join(v);
                if !seen.contains(&q) && !s.obstructed(&q) {
                    seen.insert(q.clone());
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// `T_p(v) = { i : p_i = v_i }` for a minimum `v <= p`.
pub fn tight_set(s: &OrthoSurface, p: &Point, v: usize) -> Result<ColorSet> {
    if p.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: p.dim(),
        });
    }
    let vv = s.vertices().get(v).ok_or(Error::InvalidArgument(format!("no vertex {v}")))?;
    if !vv.le(p) {
        return Err(Error::NotDominated(v));
    }
    Ok(p.agreement(vv))
}

/// Combinatorial test: no `u, v` below `p` with `T_p(u) ⊊ T_p(v)`.
pub fn is_characteristic_combinatorial(s: &OrthoSurface, p: &Point) -> bool {
    let tights: Vec<ColorSet> = s
        .downset(p)
        .into_iter()
        .map(|v| p.agreement(s.vertex(v)))
        .collect();
    !tights
        .iter()
        .any(|a| tights.iter().any(|b| a.is_strict_subset(*b)))
}

/// Geometric test: `p` lies on flats of all `d` colors.
pub(crate) fn is_characteristic_geometric(s: &OrthoSurface, p: &Point) -> bool {
    s.flat_colors_unchecked(p) == ColorSet::full(s.dim())
}

/// Whether a surface point is characteristic.
///
/// The answer is the geometric one. The combinatorial test must agree on
/// non-degenerate surfaces; a disagreement there is reported as an error.
pub fn is_characteristic(s: &OrthoSurface, p: &Point) -> Result<bool> {
    if !s.on_surface(p)? {
        return Err(Error::NotOnSurface);
    }
    let geo = is_characteristic_geometric(s, p);
    if geo != is_characteristic_combinatorial(s, p) && detect_degeneracy(s).is_none() {
        return Err(Error::Internal(format!(
            "characteristic tests disagree at {p} on a non-degenerate surface"
        )));
    }
    Ok(geo)
}

/// The first degeneracy pattern at `p` in the order `(x, u, v, i, j)`.
pub fn pattern_at(s: &OrthoSurface, p: &Point) -> Option<(usize, usize, usize, usize, usize)> {
    let down = s.downset(p);
    let t: Vec<ColorSet> = down.iter().map(|&v| p.agreement(s.vertex(v))).collect();
    let d = s.dim();
    for x in 0..down.len() {
        for u in 0..down.len() {
            for v in 0..down.len() {
                if x == u || x == v || u == v {
                    continue;
                }
                for i in 0..d {
                    for j in 0..d {
                        if i != j
                            && t[x].contains(i)
                            && t[x].contains(j)
                            && !t[u].contains(i)
                            && t[u].contains(j)
                            && t[v].contains(i)
                            && !t[v].contains(j)
                        {
                            return Some((down[x], down[u], down[v], i, j));
                        }
                    }
                }
            }
        }
    }
    None
}

fn generates(s: &OrthoSurface, p: &Point, set: &[usize]) -> bool {
    join_all(set.iter().map(|&v| s.vertex(v))).is_ok_and(|q| &q == p)
}

fn is_minimal_generating(s: &OrthoSurface, p: &Point, set: &[usize]) -> bool {
    generates(s, p, set)
        && (set.len() == 1
            || (0..set.len()).all(|k| {
                let rest: Vec<usize> = set
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != k)
                    .map(|(_, &v)| v)
                    .collect();
                !generates(s, p, &rest)
            }))
}

/// Minimal set covers of the coordinates by tight sets.
fn mgs_exhaustive(s: &OrthoSurface, p: &Point, down: &[usize]) -> Vec<Vec<usize>> {
    let full = ColorSet::full(s.dim());
    let t: Vec<ColorSet> = down.iter().map(|&v| p.agreement(s.vertex(v))).collect();
    let mut out = Vec::new();
    for r in 1..=s.dim().min(down.len()) {
        for combo in (0..down.len()).combinations(r) {
            let union = combo.iter().fold(ColorSet::EMPTY, |a, &k| a.union(t[k]));
            if union != full {
                continue;
            }
            let private = combo.iter().all(|&k| {
                let others = combo
                    .iter()
                    .filter(|&&m| m != k)
                    .fold(ColorSet::EMPTY, |a, &m| a.union(t[m]));
                !t[k].is_subset(others)
            });
            if private {
                out.push(combo.iter().map(|&k| down[k]).collect());
            }
        }
    }
    out
}

fn partition_of(s: &OrthoSurface, p: &Point, down: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<ColorSet, Vec<usize>> = BTreeMap::new();
    for &v in down {
        classes.entry(p.agreement(s.vertex(v))).or_default().push(v);
    }
    let mut parts: Vec<Vec<usize>> = classes.into_values().collect();
    parts.sort();
    parts
}

/// Minimal generating sets of a generated point, each ascending, sorted.
///
/// At pattern-free characteristic points these are the transversals of the
/// tight-set partition; elsewhere they are enumerated as minimal covers.
pub fn minimal_generating_sets(s: &OrthoSurface, p: &Point) -> Result<Vec<Vec<usize>>> {
    if !s.on_surface(p)? {
        return Err(Error::NotOnSurface);
    }
    let down = s.downset(p);
    if !generates(s, p, &down) {
        return Err(Error::InvalidArgument(format!("{p} is not a generated point")));
    }
    Ok(mgs_for(s, p, &down))
}

fn mgs_for(s: &OrthoSurface, p: &Point, down: &[usize]) -> Vec<Vec<usize>> {
    if is_characteristic_geometric(s, p) && pattern_at(s, p).is_none() {
        let parts = partition_of(s, p, down);
        let mut sets: Vec<Vec<usize>> = parts
            .iter()
            .multi_cartesian_product()
            .map(|t| t.into_iter().copied().sorted().collect())
            .collect();
        if sets.iter().all(|g| is_minimal_generating(s, p, g)) {
            sets.sort();
            return sets;
        }
    }
    let mut sets = mgs_exhaustive(s, p, down);
    sets.sort();
    sets
}

fn char_point(s: &OrthoSurface, p: Point) -> CharPoint {
    let downset = s.downset(&p);
    let tight = downset.iter().map(|&v| p.agreement(s.vertex(v))).collect();
    let partition = partition_of(s, &p, &downset);
    let generating_sets = mgs_for(s, &p, &downset);
    let min = generating_sets.iter().map(Vec::len).min().unwrap_or(1);
    let max = generating_sets.iter().map(Vec::len).max().unwrap_or(1);
    CharPoint {
        point: p,
        downset,
        tight,
        partition,
        generating_sets,
        rank: min - 1,
        rank_ambiguous: min != max,
    }
}

/// The characteristic point at `p`, if `p` is one.
pub fn char_point_at(s: &OrthoSurface, p: &Point) -> Result<Option<CharPoint>> {
    if !s.on_surface(p)? {
        return Err(Error::NotOnSurface);
    }
    if !is_characteristic_geometric(s, p) {
        return Ok(None);
    }
    Ok(Some(char_point(s, p.clone())))
}

/// All characteristic points, sorted by `(rank, point)`.
pub fn characteristic_points(s: &OrthoSurface) -> Vec<CharPoint> {
    let mut cps: Vec<CharPoint> = generated_points(s)
        .into_iter()
        .filter(|p| is_characteristic_geometric(s, p))
        .map(|p| char_point(s, p))
        .collect();
    cps.sort_by(|a, b| (a.rank, &a.point).cmp(&(b.rank, &b.point)));
    cps
}

/// The first degeneracy pattern over characteristic points in
/// lexicographic point order.
pub fn detect_degeneracy(s: &OrthoSurface) -> Option<DegeneracyWitness> {
    generated_points(s)
        .into_iter()
        .filter(|p| is_characteristic_geometric(s, p))
        .find_map(|p| {
            pattern_at(s, &p).map(|(x, u, v, i, j)| DegeneracyWitness {
                point: p,
                x,
                u,
                v,
                i,
                j,
            })
        })
}

/// Faces of the Scarf complex `{U : join(U) ∈ S_V} ∪ {∅}`, each ascending,
/// sorted by `(size, members)`.
pub fn scarf_complex(s: &OrthoSurface) -> Result<Vec<Vec<usize>>> {
    if !s.is_generic() {
        return Err(Error::NotGeneric);
    }
    let mut faces = vec![Vec::new()];
    let mut stack: Vec<(Vec<usize>, Point)> = (0..s.len())
        .rev()
        .map(|v| (vec![v], s.vertex(v).clone()))
        .collect();
    while let Some((set, p)) = stack.pop() {
        let last = *set.last().unwrap();
        for w in (last + 1..s.len()).rev() {
            let q = p.join(s.vertex(w));
            if !s.obstructed(&q) {
                let mut next = set.clone();
                next.push(w);
                stack.push((next, q));
            }
        }
        faces.push(set);
    }
    faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(v: &[&[i64]]) -> OrthoSurface {
        OrthoSurface::from_points(v.iter().map(|c| Point::new(c.to_vec())).collect()).unwrap()
    }

    #[test]
    fn simplex_characteristic_points_by_rank() {
        let s = OrthoSurface::make_suspended(vec![Point::from([1, 1, 1])]).unwrap();
        let cps = characteristic_points(&s);
        let ranks: Vec<usize> = cps.iter().map(|c| c.rank).collect();
        // 4 vertices, 6 edges, 3 maxima; the outer triangle is missing
        assert_eq!(ranks.iter().filter(|&&r| r == 0).count(), 4);
        assert_eq!(ranks.iter().filter(|&&r| r == 1).count(), 6);
        assert_eq!(ranks.iter().filter(|&&r| r == 2).count(), 3);
    }

    #[test]
    fn nested_tight_sets_are_not_characteristic() {
        let s = surf(&[&[2, 2, 1], &[2, 1, 2], &[1, 1, 3]]);
        let p = Point::from([2, 2, 3]);
        assert!(s.on_surface(&p).unwrap());
        assert!(!is_characteristic(&s, &p).unwrap());
        assert!(!is_characteristic_combinatorial(&s, &p));
    }

    #[test]
    fn saddle_is_characteristic() {
        let s = surf(&[&[1, 1, 3], &[2, 2, 2], &[3, 3, 1]]);
        let p = Point::from([3, 3, 2]);
        assert!(is_characteristic(&s, &p).unwrap());
        assert_eq!(
            minimal_generating_sets(&s, &p).unwrap(),
            vec![vec![1, 2]]
        );
    }

    #[test]
    fn tight_set_errors() {
        let s = surf(&[&[2, 1], &[1, 2]]);
        assert_eq!(
            tight_set(&s, &Point::from([2, 1]), 1),
            Err(Error::NotDominated(1))
        );
        assert_eq!(
            tight_set(&s, &Point::from([2, 2]), 0).unwrap(),
            ColorSet::singleton(0)
        );
    }

    #[test]
    fn scarf_complex_of_two_points() {
        let s = surf(&[&[2, 1], &[1, 2]]);
        assert_eq!(
            scarf_complex(&s).unwrap(),
            vec![vec![], vec![0], vec![1], vec![0, 1]]
        );
    }
}
