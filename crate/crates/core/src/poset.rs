//! Finite posets, cp-orders, face lattices of balls, and matching between
//! them.

use std::collections::{BTreeMap, BTreeSet};

use crate::charpoint::{characteristic_points, detect_degeneracy, CharPoint};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::surface::OrthoSurface;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn intersects(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

/// A finite poset on `0..n` with its cover relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// strictly above
    up: Vec<BitSet>,
    /// strictly below
    down: Vec<BitSet>,
    covers: Vec<(usize, usize)>,
}

/// Two elements without a unique least upper (or greatest lower) bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeViolation {
    pub a: usize,
    pub b: usize,
    /// Minimal upper bounds (or maximal lower bounds when `meet` is set).
    pub bounds: Vec<usize>,
    pub meet: bool,
}

/// A height-2 interval whose number of middle elements is not 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondViolation {
    pub lower: usize,
    pub upper: usize,
    pub middle: Vec<usize>,
}

impl Poset {
    /// Build from a reflexive, antisymmetric, transitive relation.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut up = vec![BitSet::new(n); n];
        let mut down = vec![BitSet::new(n); n];
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    up[a].set(b);
                    down[b].set(a);
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if up[a].get(b) && !up[a].intersects(&down[b]) {
                    covers.push((a, b));
                }
            }
        }
        Poset {
            n,
            up,
            down,
            covers,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.up[a].get(b)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    /// Cover pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn minimal_upper_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        let ub: Vec<usize> = (0..self.n)
            .filter(|&c| self.leq(a, c) && self.leq(b, c))
            .collect();
        ub.iter()
            .copied()
            .filter(|&c| !ub.iter().any(|&e| self.lt(e, c)))
            .collect()
    }

    pub fn maximal_lower_bounds(&self, a: usize, b: usize) -> Vec<usize> {
        let lb: Vec<usize> = (0..self.n)
            .filter(|&c| self.leq(c, a) && self.leq(c, b))
            .collect();
        lb.iter()
            .copied()
            .filter(|&c| !lb.iter().any(|&e| self.lt(c, e)))
            .collect()
    }

    /// All pairs lacking a join or a meet; join failures first, each group
    /// in index order.
    pub fn lattice_violations(&self) -> Vec<LatticeViolation> {
        let mut out = Vec::new();
        for meet in [false, true] {
            for a in 0..self.n {
                for b in a + 1..self.n {
                    let bounds = if meet {
                        self.maximal_lower_bounds(a, b)
                    } else {
                        self.minimal_upper_bounds(a, b)
                    };
                    if bounds.len() != 1 {
                        out.push(LatticeViolation { a, b, bounds, meet });
                    }
                }
            }
        }
        out
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_violations().is_empty()
    }

    /// Length of the longest chain ending in each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&a| (0..self.n).filter(|&b| self.lt(b, a)).count());
        let mut h = vec![0usize; self.n];
        for &a in &order {
            h[a] = (0..self.n)
                .filter(|&b| self.lt(b, a))
                .map(|b| h[b] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Every cover raises the height by exactly one.
    pub fn is_graded(&self) -> bool {
        let h = self.heights();
        self.covers.iter().all(|&(a, b)| h[b] == h[a] + 1)
    }

    /// Height-2 intervals `[a, b]` without exactly two middle elements,
    /// skipping intervals for which `skip(a, b)` holds.
    pub fn diamond_violations(&self, skip: impl Fn(usize, usize) -> bool) -> Vec<DiamondViolation> {
        let h = self.heights();
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if h[b] != h[a] + 2 || !self.lt(a, b) || skip(a, b) {
                    continue;
                }
                let middle: Vec<usize> = (0..self.n)
                    .filter(|&c| self.lt(a, c) && self.lt(c, b))
                    .collect();
                if middle.len() != 2 {
                    out.push(DiamondViolation {
                        lower: a,
                        upper: b,
                        middle,
                    });
                }
            }
        }
        out
    }
}

/// The cp-order: characteristic points with an artificial bottom and top.
///
/// Poset element `0` is the bottom, `k + 1` is `points[k]`, and
/// `points.len() + 1` is the top.
#[derive(Clone, Debug)]
pub struct CpOrder {
    pub points: Vec<CharPoint>,
    pub suspensions: Option<Vec<usize>>,
    poset: Poset,
}

impl CpOrder {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.points.len() + 1
    }

    /// The characteristic point of a poset element, `None` for bottom/top.
    pub fn point(&self, element: usize) -> Option<&CharPoint> {
        element.checked_sub(1).and_then(|k| self.points.get(k))
    }

    pub fn element_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|c| &c.point == p).map(|k| k + 1)
    }

    pub fn lattice_violations(&self) -> Vec<LatticeViolation> {
        self.poset.lattice_violations()
    }

    /// `None` if the order is a lattice, otherwise the first violation.
    pub fn is_lattice(&self) -> Option<LatticeViolation> {
        self.lattice_violations().into_iter().next()
    }

    /// Covers raise height by one and each point sits at height `rank + 1`.
    pub fn is_graded(&self) -> bool {
        if !self.poset.is_graded() {
            return false;
        }
        let h = self.poset.heights();
        self.points
            .iter()
            .enumerate()
            .all(|(k, c)| !c.rank_ambiguous && h[k + 1] == c.rank + 1)
    }

    /// Height-2 intervals below the artificial top that do not have exactly
    /// two middle elements. The top stands for the missing outer facet, so
    /// intervals ending there are excluded.
    pub fn diamond_violations(&self) -> Result<Vec<DiamondViolation>> {
        if !self.is_graded() {
            return Err(Error::NotGraded);
        }
        let top = self.top();
        Ok(self.poset.diamond_violations(|_, b| b == top))
    }

    /// `None` if the diamond property holds, otherwise the first violation.
    pub fn diamond_check(&self) -> Result<Option<DiamondViolation>> {
        Ok(self.diamond_violations()?.into_iter().next())
    }
}

pub fn build_cporder(s: &OrthoSurface) -> CpOrder {
    let points = characteristic_points(s);
    let m = points.len();
    let poset = Poset::from_relation(m + 2, |a, b| {
        a == 0 || b == m + 1 || (a != m + 1 && b != 0 && points[a - 1].point.le(&points[b - 1].point))
    });
    CpOrder {
        points,
        suspensions: s.suspensions().map(<[usize]>::to_vec),
        poset,
    }
}

/// `None` if rigid; otherwise two comparable characteristic points of equal
/// rank. Ranks must be well defined, so degenerate surfaces are rejected.
pub fn is_rigid(s: &OrthoSurface) -> Result<Option<(Point, Point)>> {
    if detect_degeneracy(s).is_some() {
        return Err(Error::Degenerate);
    }
    let cps = characteristic_points(s);
    for a in &cps {
        for b in &cps {
            if a.rank == b.rank && a.point != b.point && a.point.le(&b.point) {
                return Ok(Some((a.point.clone(), b.point.clone())));
            }
        }
    }
    Ok(None)
}

/// Three-dimensional formulation: every rank-1 point dominates exactly two
/// minima.
pub fn is_rigid_3d(s: &OrthoSurface) -> Result<bool> {
    if s.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: s.dim(),
        });
    }
    Ok(characteristic_points(s)
        .iter()
        .filter(|c| c.rank == 1)
        .all(|c| c.downset.len() == 2))
}

/// A ball given by its facets (vertex labels `1..=n`) and one outer facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    n: u32,
    facets: Vec<Vec<u32>>,
    outer: Vec<u32>,
    simplicial: bool,
}

impl Ball {
    /// A simplicial ball: all facets have the same size `d`.
    pub fn simplicial(facets: Vec<Vec<u32>>, outer: Vec<u32>) -> Result<Self> {
        let b = Self::build(facets, outer, true)?;
        let d = b.facets[0].len();
        if d < 2 {
            return Err(Error::InvalidBall("facets need at least two vertices".into()));
        }
        if let Some(f) = b.facets.iter().find(|f| f.len() != d) {
            return Err(Error::InvalidBall(format!(
                "facet {f:?} has size {}, expected {d}",
                f.len()
            )));
        }
        Ok(b)
    }

    /// A polytopal ball given by the vertex sets of all facets of a
    /// polytope; faces are the nonempty intersections of facets.
    pub fn polytope(facets: Vec<Vec<u32>>, outer: Vec<u32>) -> Result<Self> {
        Self::build(facets, outer, false)
    }

    fn build(facets: Vec<Vec<u32>>, outer: Vec<u32>, simplicial: bool) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::InvalidBall("no facets".into()));
        }
        let norm = |mut f: Vec<u32>| -> Result<Vec<u32>> {
            f.sort_unstable();
            let len = f.len();
            f.dedup();
            if f.len() != len {
                return Err(Error::InvalidBall(format!("repeated vertex in {f:?}")));
            }
            if f.first() == Some(&0) || f.is_empty() {
                return Err(Error::InvalidBall("labels start at 1".into()));
            }
            Ok(f)
        };
        let mut facets = facets.into_iter().map(norm).collect::<Result<Vec<_>>>()?;
        facets.sort();
        if facets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBall("repeated facet".into()));
        }
        let outer = norm(outer)?;
        if !facets.contains(&outer) {
            return Err(Error::InvalidBall("outer facet is not a facet".into()));
        }
        let labels: BTreeSet<u32> = facets.iter().flatten().copied().collect();
        let n = *labels.iter().next_back().unwrap();
        if labels.len() != n as usize {
            return Err(Error::InvalidBall("labels must be exactly 1..=n".into()));
        }
        Ok(Ball {
            n,
            facets,
            outer,
            simplicial,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Size of a facet of a simplicial ball; the ambient dimension.
    pub fn dim(&self) -> usize {
        self.facets[0].len()
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn outer(&self) -> &[u32] {
        &self.outer
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    pub fn with_outer(&self, outer: Vec<u32>) -> Result<Self> {
        Self::build(self.facets.clone(), outer, self.simplicial)
    }

    pub fn inner_vertices(&self) -> Vec<u32> {
        (1..=self.n).filter(|v| !self.outer.contains(v)).collect()
    }

    /// All faces of the polytope (including the outer facet), sorted by
    /// `(size, labels)`.
    pub fn all_faces(&self) -> Vec<Vec<u32>> {
        let mut faces: BTreeSet<Vec<u32>> = BTreeSet::new();
        if self.simplicial {
            for f in &self.facets {
                for mask in 1u32..1 << f.len() {
                    faces.insert(
                        f.iter()
                            .enumerate()
                            .filter(|&(k, _)| mask >> k & 1 == 1)
                            .map(|(_, &v)| v)
                            .collect(),
                    );
                }
            }
        } else {
            faces.extend(self.facets.iter().cloned());
            let mut frontier: Vec<Vec<u32>> = faces.iter().cloned().collect();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for a in &frontier {
                    for b in &self.facets {
                        let c: Vec<u32> = a.iter().filter(|v| b.contains(v)).copied().collect();
                        if !c.is_empty() && faces.insert(c.clone()) {
                            next.push(c);
                        }
                    }
                }
                frontier = next;
            }
        }
        let mut v: Vec<Vec<u32>> = faces.into_iter().collect();
        v.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        v
    }

    /// Two-element faces, sorted.
    pub fn edges(&self) -> Vec<[u32; 2]> {
        self.all_faces()
            .into_iter()
            .filter(|f| f.len() == 2)
            .map(|f| [f[0], f[1]])
            .collect()
    }

    /// Number of facets containing all of `set`.
    pub fn facets_containing(&self, set: &[u32]) -> usize {
        self.facets
            .iter()
            .filter(|f| set.iter().all(|v| f.contains(v)))
            .count()
    }
}

/// A family of nonempty vertex sets ordered by inclusion, with an
/// artificial bottom (element `0`) and top (element `faces.len() + 1`).
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Vec<u32>>,
    poset: Poset,
}

impl FaceLattice {
    pub fn from_faces(faces: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if !f.is_empty() {
                set.insert(f);
            }
        }
        let mut faces: Vec<Vec<u32>> = set.into_iter().collect();
        faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let m = faces.len();
        let poset = Poset::from_relation(m + 2, |a, b| {
            a == 0
                || b == m + 1
                || (a != m + 1 && b != 0 && faces[a - 1].iter().all(|v| faces[b - 1].contains(v)))
        });
        FaceLattice { faces, poset }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }
}

/// Faces of the ball: all faces of the polytope except the outer facet.
pub fn face_lattice_of_ball(b: &Ball) -> FaceLattice {
    FaceLattice::from_faces(b.all_faces().into_iter().filter(|f| f != b.outer()))
}

/// Why a cp-order does not match a target face family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// Two characteristic points have the same labelled down-set.
    NotInjective(Vec<u32>),
    /// A labelled down-set that is not a target face.
    Extra(Vec<u32>),
    /// A target face without a characteristic point.
    Missing(Vec<u32>),
    /// Dominance and inclusion disagree on a pair.
    Order(Vec<u32>, Vec<u32>),
    /// Suspensions do not carry the labels of the outer facet.
    Suspensions,
    /// The label map does not cover the vertices.
    Labels,
}

/// Compare `p ↦ labels(D_p)` against a face family: bijective and an order
/// isomorphism between dominance and inclusion.
pub fn matches_faces(
    order: &CpOrder,
    target: &FaceLattice,
    labels: &[u32],
) -> std::result::Result<(), Mismatch> {
    let mut image: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for (k, c) in order.points.iter().enumerate() {
        let mut set = Vec::with_capacity(c.downset.len());
        for &v in &c.downset {
            set.push(*labels.get(v).ok_or(Mismatch::Labels)?);
        }
        set.sort_unstable();
        if image.insert(set.clone(), k).is_some() {
            return Err(Mismatch::NotInjective(set));
        }
    }
    let faces: BTreeSet<&Vec<u32>> = target.faces.iter().collect();
    if let Some(extra) = image.keys().find(|s| !faces.contains(s)) {
        return Err(Mismatch::Extra(extra.clone()));
    }
    if let Some(missing) = target.faces.iter().find(|f| !image.contains_key(*f)) {
        return Err(Mismatch::Missing(missing.clone()));
    }
    for (s, &a) in &image {
        for (t, &b) in &image {
            let incl = s.iter().all(|v| t.contains(v));
            if incl != order.points[a].point.le(&order.points[b].point) {
                return Err(Mismatch::Order(s.clone(), t.clone()));
            }
        }
    }
    Ok(())
}

/// `labels[id]` is the ball label of surface vertex `id`. On suspended
/// surfaces the suspensions must carry exactly the outer-facet labels.
pub fn matches_ball(order: &CpOrder, ball: &Ball, labels: &[u32]) -> std::result::Result<(), Mismatch> {
    if let Some(susp) = &order.suspensions {
        let mut l: Vec<u32> = susp
            .iter()
            .map(|&s| labels.get(s).copied().ok_or(Mismatch::Labels))
            .collect::<std::result::Result<_, _>>()?;
        l.sort_unstable();
        if l != ball.outer() {
            return Err(Mismatch::Suspensions);
        }
    }
    matches_faces(order, &face_lattice_of_ball(ball), labels)
}

/// Vertex `id` gets label `id + 1`.
pub fn identity_labels(n: usize) -> Vec<u32> {
    (1..=n as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_lattice_has_diamonds() {
        // subsets of {0,1}
        let p = Poset::from_relation(4, |a, b| a & !b == 0);
        assert!(p.is_lattice());
        assert!(p.is_graded());
        assert!(p.diamond_violations(|_, _| false).is_empty());
        assert_eq!(p.covers().len(), 4);
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        // 0,1 below both 2,3
        let p = Poset::from_relation(4, |a, b| a == b || (a < 2 && b >= 2));
        let v = p.lattice_violations();
        assert_eq!(v[0], LatticeViolation { a: 0, b: 1, bounds: vec![2, 3], meet: false });
    }

    #[test]
    fn simplex_cporder_is_tetrahedron_minus_facet() {
        let s = OrthoSurface::make_suspended(vec![Point::from([1, 1, 1])]).unwrap();
        let order = build_cporder(&s);
        assert_eq!(order.poset().len(), 15);
        let ball = Ball::simplicial(
            vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
            vec![2, 3, 4],
        )
        .unwrap();
        assert_eq!(matches_ball(&order, &ball, &identity_labels(4)), Ok(()));
        assert!(order.is_lattice().is_none());
        assert_eq!(order.diamond_check(), Ok(None));
        assert_eq!(is_rigid(&s), Ok(None));
    }

    #[test]
    fn empty_surface_gives_two_elements() {
        let s = OrthoSurface::new(3, vec![]).unwrap();
        let order = build_cporder(&s);
        assert_eq!(order.poset().len(), 2);
        assert_eq!(order.poset().covers(), &[(0, 1)]);
    }

    #[test]
    fn ball_validation() {
        assert!(matches!(
            Ball::simplicial(vec![vec![1, 2, 3], vec![2, 3]], vec![1, 2, 3]),
            Err(Error::InvalidBall(_))
        ));
        assert!(matches!(
            Ball::simplicial(vec![vec![1, 2, 3]], vec![1, 2, 4]),
            Err(Error::InvalidBall(_))
        ));
    }

    #[test]
    fn square_faces_by_intersection() {
        let sq = Ball::polytope(
            vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]],
            vec![1, 4],
        )
        .unwrap();
        assert_eq!(sq.all_faces().len(), 8);
        assert_eq!(face_lattice_of_ball(&sq).faces.len(), 7);
    }
}
