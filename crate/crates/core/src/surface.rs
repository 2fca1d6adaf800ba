//! Orthogonal surfaces generated by a finite antichain.
//!
//! The surface `S_V` is never materialised. Membership of a point `p` is
//! decided from the minima alone: `p` lies on `S_V` iff some minimum is below
//! `p` and no minimum is strictly below `p` in every coordinate.
//!
//! Statements of the form "`p + ε·x` lies on the surface for small `ε > 0`"
//! are decided exactly on the doubled lattice: with integer minima,
//! `p_j + ε > w_j` iff `2p_j + 1 > 2w_j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{ColorSet, Point};

/// Check that `points` is a nonempty antichain of one dimension.
pub fn validate_antichain(points: &[Point]) -> Result<()> {
    let first = points.first().ok_or(Error::Empty)?;
    for p in points {
        if p.dim() != first.dim() {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: p.dim(),
            });
        }
    }
    first_comparable_pair(points).map_or(Ok(()), |(a, b)| Err(Error::NotAntichain(a, b)))
}

fn first_comparable_pair(points: &[Point]) -> Option<(usize, usize)> {
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            if points[a].le(&points[b]) || points[b].le(&points[a]) {
                return Some((a, b));
            }
        }
    }
    None
}

/// A validated antichain `V` of nonnegative integer points.
///
/// Vertex ids are positions in `vertices()`. When the vertex set contains a
/// suspension, `suspensions()[i]` is the id of the vertex `M_i · e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoSurface {
    dim: usize,
    vertices: Vec<Point>,
    suspensions: Option<Vec<usize>>,
}

/// A flat of color `i`: an equivalence class of minima sharing an
/// `i`-flat, identified by its members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Flat {
    pub color: usize,
    pub value: i64,
    pub members: Vec<usize>,
}

/// Two distinct flats of one color and value whose closures meet in `point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDegeneracy {
    pub color: usize,
    pub first: Flat,
    pub second: Flat,
    pub point: Point,
}

impl OrthoSurface {
    pub fn new(dim: usize, vertices: Vec<Point>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if dim > 32 {
            return Err(Error::Unsupported(format!("dimension {dim} exceeds 32")));
        }
        for (id, v) in vertices.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            if v.coords().iter().any(|&c| c < 0) {
                return Err(Error::NegativeCoordinate(id));
            }
        }
        if let Some((a, b)) = first_comparable_pair(&vertices) {
            return Err(Error::NotAntichain(a, b));
        }
        let suspensions = detect_suspensions(dim, &vertices);
        Ok(OrthoSurface {
            dim,
            vertices,
            suspensions,
        })
    }

    /// Infers the dimension from the first vertex.
    pub fn from_points(vertices: Vec<Point>) -> Result<Self> {
        let dim = vertices.first().ok_or(Error::Empty)?.dim();
        Self::new(dim, vertices)
    }

    /// Append the suspensions `M_i · e_i` with `M_i = 1 + max_v v_i`.
    /// The inner vertices keep their ids; suspension `i` gets id `n + i`.
    pub fn make_suspended(inner: Vec<Point>) -> Result<Self> {
        validate_antichain(&inner)?;
        let dim = inner[0].dim();
        for (id, v) in inner.iter().enumerate() {
            if v.coords().iter().any(|&c| c <= 0) {
                return Err(Error::NonPositiveCoordinate(id));
            }
        }
        let mut vertices = inner;
        let bounds: Vec<i64> = (0..dim)
            .map(|i| 1 + vertices.iter().map(|v| v.get(i)).max().unwrap())
            .collect();
        for (i, m) in bounds.into_iter().enumerate() {
            let mut c = vec![0; dim];
            c[i] = m;
            vertices.push(Point::new(c));
        }
        let s = Self::new(dim, vertices)?;
        debug_assert!(s.is_suspended());
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Point {
        &self.vertices[id]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_suspended(&self) -> bool {
        self.suspensions.is_some()
    }

    pub fn suspensions(&self) -> Option<&[usize]> {
        self.suspensions.as_deref()
    }

    pub fn is_suspension(&self, id: usize) -> bool {
        self.suspensions.as_ref().is_some_and(|s| s.contains(&id))
    }

    /// Ids of the vertices that are not suspensions.
    pub fn inner_ids(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.is_suspension(v)).collect()
    }

    fn check_dim(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        Ok(())
    }

    /// Some minimum lies strictly below `p` in every coordinate.
    pub fn obstructed(&self, p: &Point) -> bool {
        self.vertices.iter().any(|w| p.strictly_dominates(w))
    }

    /// Membership in `S_V`, without the dimension check.
    pub fn contains(&self, p: &Point) -> bool {
        self.vertices.iter().any(|v| v.le(p)) && !self.obstructed(p)
    }

    pub fn on_surface(&self, p: &Point) -> Result<bool> {
        self.check_dim(p)?;
        Ok(self.contains(p))
    }

    /// Ids of minima below `p`, ascending.
    pub fn downset(&self, p: &Point) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.vertices[k].le(p)).collect()
    }

    /// Membership of a doubled probe point `q2` (coordinates already
    /// multiplied by 2, odd entries standing for `+ε`).
    pub fn contains_doubled(&self, q2: &[i64]) -> bool {
        let below = |w: &Point, strict: bool| {
            w.coords().iter().zip(q2).all(|(&a, &b)| {
                if strict {
                    2 * a < b
                } else {
                    2 * a <= b
                }
            })
        };
        self.vertices.iter().any(|v| below(v, false))
            && !self.vertices.iter().any(|w| below(w, true))
    }

    /// No two minima share a coordinate value, except zeros shared among
    /// suspensions.
    pub fn is_generic(&self) -> bool {
        for i in 0..self.dim {
            for a in 0..self.len() {
                for b in a + 1..self.len() {
                    let (x, y) = (self.vertices[a].get(i), self.vertices[b].get(i));
                    if x == y && !(x == 0 && self.is_suspension(a) && self.is_suspension(b)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `M_i` per coordinate: the suspension value when suspended, otherwise
    /// the largest coordinate among the minima.
    pub fn bounds(&self) -> Vec<i64> {
        match &self.suspensions {
            Some(s) => (0..self.dim).map(|i| self.vertices[s[i]].get(i)).collect(),
            None => (0..self.dim)
                .map(|i| self.vertices.iter().map(|v| v.get(i)).max().unwrap_or(0))
                .collect(),
        }
    }

    /// Whether minimum `v` witnesses that `p` lies in the closure of the
    /// `i`-flat containing `v`.
    pub fn is_witness(&self, p: &Point, v: usize, i: usize) -> Result<bool> {
        self.check_dim(p)?;
        if v >= self.len() || i >= self.dim {
            return Err(Error::InvalidArgument("vertex or color out of range".into()));
        }
        Ok(self.witness(p, v, i))
    }

    pub(crate) fn witness(&self, p: &Point, v: usize, i: usize) -> bool {
        let vv = &self.vertices[v];
        if !vv.le(p) || p.get(i) != vv.get(i) {
            return false;
        }
        !self.vertices.iter().any(|w| {
            w.get(i) < vv.get(i)
                && (0..self.dim)
                    .filter(|&j| j != i)
                    .all(|j| w.get(j) <= vv.get(j) || w.get(j) < p.get(j))
        })
    }

    /// Colors of the flats incident to a surface point.
    pub fn flat_colors(&self, p: &Point) -> Result<ColorSet> {
        if !self.on_surface(p)? {
            return Err(Error::NotOnSurface);
        }
        Ok(self.flat_colors_unchecked(p))
    }

    pub(crate) fn flat_colors_unchecked(&self, p: &Point) -> ColorSet {
        let down = self.downset(p);
        (0..self.dim)
            .filter(|&i| down.iter().any(|&v| self.witness(p, v, i)))
            .collect()
    }

    /// The `i`-flats as classes of minima, sorted by `(value, members)`.
    ///
    /// Two minima with equal `i`-coordinate share a flat iff the point just
    /// above both (half a step in every coordinate but `i`) is unobstructed.
    /// Smaller probes cannot exist, larger ones are obstructed whenever this
    /// one is, so the single probe is exact.
    pub fn flats(&self, i: usize) -> Result<Vec<Flat>> {
        if i >= self.dim {
            return Err(Error::InvalidArgument(format!("color {i} out of range")));
        }
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for a in 0..n {
            for b in a + 1..n {
                let (va, vb) = (&self.vertices[a], &self.vertices[b]);
                if va.get(i) != vb.get(i) {
                    continue;
                }
                let q2: Vec<i64> = (0..self.dim)
                    .map(|j| {
                        if j == i {
                            2 * va.get(i)
                        } else {
                            2 * va.get(j).max(vb.get(j)) + 1
                        }
                    })
                    .collect();
                if !self.vertices.iter().any(|w| {
                    w.coords().iter().zip(&q2).all(|(&c, &q)| 2 * c < q)
                }) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..n {
            let r = find(&mut parent, v);
            classes.entry(r).or_default().push(v);
        }
        let mut flats: Vec<Flat> = classes
            .into_values()
            .map(|members| Flat {
                color: i,
                value: self.vertices[members[0]].get(i),
                members,
            })
            .collect();
        flats.sort();
        Ok(flats)
    }

    /// Two different flats of the same color and value whose closures
    /// intersect. The first witness in the order (color, flat pair, member
    /// pair) is returned.
    ///
    /// If `v` and `w` witness a common point `p` of both closures, they also
    /// witness `v ∨ w <= p`, so testing joins of member pairs is exact.
    pub fn strong_degeneracy(&self) -> Option<StrongDegeneracy> {
        for i in 0..self.dim {
            let flats = self.flats(i).expect("color in range");
            for a in 0..flats.len() {
                for b in a + 1..flats.len() {
                    let (fa, fb) = (&flats[a], &flats[b]);
                    if fa.value != fb.value {
                        continue;
                    }
                    for &v in &fa.members {
                        for &w in &fb.members {
                            let p = self.vertices[v].join(&self.vertices[w]);
                            if self.witness(&p, v, i) && self.witness(&p, w, i) {
                                return Some(StrongDegeneracy {
                                    color: i,
                                    first: fa.clone(),
                                    second: fb.clone(),
                                    point: p,
                                });
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

fn detect_suspensions(dim: usize, vertices: &[Point]) -> Option<Vec<usize>> {
    let mut ids = Vec::with_capacity(dim);
    for i in 0..dim {
        let id = vertices.iter().position(|v| {
            v.get(i) > 0 && (0..dim).all(|j| j == i || v.get(j) == 0)
        })?;
        let m = vertices[id].get(i);
        if vertices
            .iter()
            .enumerate()
            .any(|(k, v)| k != id && v.get(i) >= m)
        {
            return None;
        }
        ids.push(id);
    }
    Some(ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|c| Point::new(c.to_vec())).collect()
    }

    #[test]
    fn antichain_validation() {
        assert_eq!(validate_antichain(&[]), Err(Error::Empty));
        assert_eq!(
            validate_antichain(&pts(&[&[1, 2], &[2, 2]])),
            Err(Error::NotAntichain(0, 1))
        );
        assert!(validate_antichain(&pts(&[&[1, 2], &[2, 1]])).is_ok());
        assert_eq!(
            OrthoSurface::new(2, pts(&[&[1, 2], &[1, 2]])),
            Err(Error::NotAntichain(0, 1))
        );
    }

    #[test]
    fn suspension_is_detected() {
        let s = OrthoSurface::make_suspended(pts(&[&[1, 1, 1]])).unwrap();
        assert_eq!(s.suspensions(), Some(&[1, 2, 3][..]));
        assert_eq!(s.bounds(), vec![2, 2, 2]);
        assert!(s.is_generic());
        let t = OrthoSurface::new(3, s.vertices().to_vec()).unwrap();
        assert!(t.is_suspended());
        assert_eq!(
            OrthoSurface::make_suspended(pts(&[&[0, 1, 1]])),
            Err(Error::NonPositiveCoordinate(0))
        );
    }

    #[test]
    fn membership() {
        let s = OrthoSurface::from_points(pts(&[&[2, 1], &[1, 2]])).unwrap();
        assert!(s.on_surface(&Point::from([2, 2])).unwrap());
        assert!(!s.on_surface(&Point::from([3, 3])).unwrap());
        assert!(!s.on_surface(&Point::from([0, 0])).unwrap());
        assert!(s.on_surface(&Point::from([1, 2])).unwrap());
    }

    #[test]
    fn flats_of_shared_values() {
        let s = OrthoSurface::from_points(pts(&[&[2, 2, 1], &[2, 1, 2], &[1, 2, 2]])).unwrap();
        let f = s.flats(0).unwrap();
        // the third minimum separates the two minima with x_1 = 2
        assert_eq!(f.len(), 3);
        assert!(!s.is_generic());
        let sd = s.strong_degeneracy().unwrap();
        assert_eq!(sd.point, Point::from([2, 2, 2]));
    }
}
