//! Schnyder woods of plane triangulations and their orthogonal surfaces in
//! dimension 3.
//!
//! Colors are `0, 1, 2` here. The wood is suspended: suspension `a_i` has a
//! half-edge of color `i` into the outer face, and each outer edge is
//! bioriented with `a_i → a_j` colored `j`. Every vertex therefore has one
//! outgoing arc (or the half-edge) per color.
//!
//! Orientation: inner faces are stored counterclockwise, and the outer face
//! `(a_0, a_1, a_2)` is stored in the same orientation of the sphere, so the
//! suspensions appear clockwise in the plane. Around a vertex the out-arcs
//! `e_0, e_1, e_2` are in clockwise order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::charpoint::{characteristic_points, detect_degeneracy, CharPoint};
use crate::error::{Error, Result};
use crate::point::{ColorSet, Point};
use crate::poset::is_rigid;
use crate::surface::OrthoSurface;

/// A 2-connected plane graph given by its inner faces (counterclockwise
/// cycles) and an outer triangle of suspensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    n: usize,
    faces: Vec<Vec<usize>>,
    outer: [usize; 3],
    /// `next_ccw[v][&b] = c`: at `v`, neighbor `c` follows `b` counterclockwise.
    next_ccw: Vec<BTreeMap<usize, usize>>,
}

fn rotate_min(f: &[usize]) -> Vec<usize> {
    let k = (0..f.len()).min_by_key(|&k| f[k]).unwrap();
    f[k..].iter().chain(&f[..k]).copied().collect()
}

impl PlaneGraph {
    /// Validate a cellular embedding in the sphere: every directed edge lies
    /// in exactly one face (outer face included), each vertex link is a
    /// single cycle, the graph is connected and Euler's formula holds.
    pub fn new(n: usize, faces: Vec<Vec<usize>>, outer: [usize; 3]) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        if n < 3 {
            return bad(format!("{n} vertices"));
        }
        let mut next_ccw = vec![BTreeMap::new(); n];
        let mut directed = BTreeSet::new();
        for f in faces.iter().map(Vec::as_slice).chain([&outer[..]]) {
            let distinct: BTreeSet<usize> = f.iter().copied().collect();
            if f.len() < 3 || distinct.len() != f.len() || f.iter().any(|&v| v >= n) {
                return bad(format!("bad face {f:?}"));
            }
            let k = f.len();
            for i in 0..k {
                let (a, b, c) = (f[i], f[(i + 1) % k], f[(i + k - 1) % k]);
                if !directed.insert((a, b)) {
                    return bad(format!("directed edge {a}->{b} used twice"));
                }
                // ccw around the face, so at a the face lies between b and its predecessor c
                next_ccw[a].insert(b, c);
            }
        }
        if let Some(&(a, b)) = directed.iter().find(|&&(a, b)| !directed.contains(&(b, a))) {
            return bad(format!("edge {a}-{b} borders only one face"));
        }
        for (v, rot) in next_ccw.iter().enumerate() {
            let Some((&start, _)) = rot.iter().next() else {
                return bad(format!("vertex {v} is isolated"));
            };
            let mut cur = start;
            let mut steps = 0;
            loop {
                cur = rot[&cur];
                steps += 1;
                if cur == start {
                    break;
                }
            }
            if steps != rot.len() {
                return bad(format!("link of vertex {v} is not a cycle"));
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in next_ccw[v].keys() {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.contains(&false) {
            return bad("graph is disconnected".into());
        }
        let e = directed.len() / 2;
        if n + faces.len() + 1 != e + 2 {
            return bad("not an embedding in the sphere".into());
        }
        let mut faces: Vec<Vec<usize>> = faces.iter().map(|f| rotate_min(f)).collect();
        faces.sort_unstable();
        Ok(PlaneGraph {
            n,
            faces,
            outer,
            next_ccw,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inner faces, each counterclockwise starting at its smallest vertex.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn outer(&self) -> [usize; 3] {
        self.outer
    }

    pub fn suspension_color(&self, v: usize) -> Option<usize> {
        self.outer.iter().position(|&a| a == v)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.next_ccw[u].contains_key(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.next_ccw[v].len()
    }

    /// Neighbors in counterclockwise order starting from the smallest.
    pub fn rotation_ccw(&self, v: usize) -> Vec<usize> {
        let rot = &self.next_ccw[v];
        let start = *rot.keys().next().unwrap();
        let mut out = vec![start];
        let mut cur = rot[&start];
        while cur != start {
            out.push(cur);
            cur = rot[&cur];
        }
        out
    }

    /// Undirected edges `[u, v]` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for (u, rot) in self.next_ccw.iter().enumerate() {
            out.extend(rot.keys().filter(|&&v| u < v).map(|&v| [u, v]));
        }
        out
    }
}

impl AsRef<PlaneGraph> for PlaneGraph {
    fn as_ref(&self) -> &PlaneGraph {
        self
    }
}

/// A plane triangulation given by its inner faces and the outer triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriangulation", into = "RawTriangulation")]
pub struct PlaneTriangulation {
    graph: PlaneGraph,
    faces: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawTriangulation {
    n: usize,
    faces: Vec<[usize; 3]>,
    outer: [usize; 3],
}

impl TryFrom<RawTriangulation> for PlaneTriangulation {
    type Error = Error;
    fn try_from(r: RawTriangulation) -> Result<Self> {
        PlaneTriangulation::new(r.n, r.faces, r.outer)
    }
}

impl From<PlaneTriangulation> for RawTriangulation {
    fn from(t: PlaneTriangulation) -> Self {
        RawTriangulation {
            n: t.graph.n,
            faces: t.faces,
            outer: t.graph.outer,
        }
    }
}

impl AsRef<PlaneGraph> for PlaneTriangulation {
    fn as_ref(&self) -> &PlaneGraph {
        &self.graph
    }
}

impl TryFrom<PlaneGraph> for PlaneTriangulation {
    type Error = Error;
    fn try_from(graph: PlaneGraph) -> Result<Self> {
        let faces = graph
            .faces
            .iter()
            .map(|f| <[usize; 3]>::try_from(f.as_slice()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidGraph("not a triangulation of the sphere".into()))?;
        Ok(PlaneTriangulation { graph, faces })
    }
}

impl PlaneTriangulation {
    pub fn new(n: usize, faces: Vec<[usize; 3]>, outer: [usize; 3]) -> Result<Self> {
        PlaneGraph::new(n, faces.iter().map(|f| f.to_vec()).collect(), outer)?.try_into()
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    /// Inner faces, each counterclockwise starting at its smallest vertex.
    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn outer(&self) -> [usize; 3] {
        self.graph.outer
    }

    pub fn suspension_color(&self, v: usize) -> Option<usize> {
        self.graph.suspension_color(v)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.adjacent(u, v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    pub fn rotation_ccw(&self, v: usize) -> Vec<usize> {
        self.graph.rotation_ccw(v)
    }

    pub fn edges(&self) -> Vec<[usize; 2]> {
        self.graph.edges()
    }

    /// Random triangulation on `n >= 4` vertices: repeated insertion into a
    /// random inner face, followed by random flips of inner edges.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument("need at least 4 vertices".into()));
        }
        let outer = [0, 1, 2];
        // inner faces ccw: the outer face (0,1,2) in sphere orientation
        let mut faces: Vec<[usize; 3]> = vec![[0, 2, 3], [2, 1, 3], [1, 0, 3]];
        for v in 4..n {
            let k = rng.gen_range(0..faces.len());
            let [a, b, c] = faces.swap_remove(k);
            faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
        }
        let mut t = Self::new(n, faces, outer)?;
        for _ in 0..3 * n {
            let k = rng.gen_range(0..t.faces.len());
            let f = t.faces[k];
            let j = rng.gen_range(0..3);
            let (a, b, c) = (f[j], f[(j + 1) % 3], f[(j + 2) % 3]);
            if t.suspension_color(a).is_some() && t.suspension_color(b).is_some() {
                continue;
            }
            let Some(l) = t.faces.iter().position(|g| {
                (0..3).any(|i| g[i] == b && g[(i + 1) % 3] == a)
            }) else {
                continue;
            };
            let g = t.faces[l];
            let i = (0..3).find(|&i| g[i] == b).unwrap();
            let d = g[(i + 2) % 3];
            if c == d || t.adjacent(c, d) || t.degree(a) <= 3 || t.degree(b) <= 3 {
                continue;
            }
            let mut faces: Vec<[usize; 3]> = t
                .faces
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != k && x != l)
                .map(|(_, f)| *f)
                .collect();
            faces.extend([[a, d, c], [d, b, c]]);
            t = Self::new(n, faces, outer)?;
        }
        Ok(t)
    }
}

/// A colored arc `tail → head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub color: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchnyderWood {
    /// Sorted, without duplicates.
    pub arcs: Vec<Arc>,
}

impl SchnyderWood {
    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Self {
        let set: BTreeSet<Arc> = arcs.into_iter().collect();
        SchnyderWood {
            arcs: set.into_iter().collect(),
        }
    }

    pub fn out_arc(&self, v: usize, color: usize) -> Option<usize> {
        self.arcs
            .iter()
            .find(|a| a.tail == v && a.color == color)
            .map(|a| a.head)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WoodViolation {
    /// Arc/edge discipline: arcs on non-edges, uncolored edges, equal colors
    /// on a bioriented edge.
    W1(String),
    /// A suspension with an outgoing arc in its own color.
    W2(usize),
    /// Rule of vertices at a vertex.
    W3(usize, String),
    /// An inner face whose boundary is a monochromatic directed cycle.
    W4(Vec<usize>),
}

const HALF: usize = usize::MAX;

/// Clockwise neighbor list at `v`, with the half-edge of a suspension placed
/// in the outer angle.
fn rotation_cw(g: &PlaneGraph, v: usize) -> Vec<usize> {
    let mut r = g.rotation_ccw(v);
    r.reverse();
    if let Some(i) = g.suspension_color(v) {
        // clockwise at a_i the outer angle runs from a_{i+2} to a_{i+1}
        let before = g.outer[(i + 2) % 3];
        let k = r.iter().position(|&u| u == before).unwrap();
        r.insert(k + 1, HALF);
    }
    r
}

/// Positions of `e_0, e_1, e_2` in the clockwise list, if each color has
/// exactly one outgoing arc.
fn out_positions(
    g: &PlaneGraph,
    w: &SchnyderWood,
    v: usize,
    cw: &[usize],
) -> std::result::Result<[usize; 3], String> {
    let mut pos = [0usize; 3];
    for (c, p) in pos.iter_mut().enumerate() {
        let heads: Vec<usize> = w
            .arcs
            .iter()
            .filter(|a| a.tail == v && a.color == c)
            .map(|a| a.head)
            .collect();
        let target = match (g.suspension_color(v) == Some(c), heads.as_slice()) {
            (true, []) => HALF,
            (false, [h]) => *h,
            _ => return Err(format!("{} outgoing arcs of color {}", heads.len(), c + 1)),
        };
        *p = cw
            .iter()
            .position(|&u| u == target)
            .ok_or_else(|| format!("arc to non-neighbor {target}"))?;
    }
    Ok(pos)
}

/// Check W1–W4 on a triangulation or a general suspended plane graph. An
/// empty result means the wood is valid.
pub fn check_wood_axioms<G: AsRef<PlaneGraph>>(g: &G, w: &SchnyderWood) -> Vec<WoodViolation> {
    let g = g.as_ref();
    let mut out = Vec::new();
    let mut on_edge: BTreeMap<[usize; 2], Vec<Arc>> = BTreeMap::new();
    for a in &w.arcs {
        if a.color > 2 || a.tail >= g.n || a.head >= g.n || !g.adjacent(a.tail, a.head) {
            out.push(WoodViolation::W1(format!("arc {a:?} is not on an edge")));
            continue;
        }
        on_edge
            .entry([a.tail.min(a.head), a.tail.max(a.head)])
            .or_default()
            .push(*a);
    }
    for e in g.edges() {
        match on_edge.get(&e).map(Vec::as_slice) {
            None | Some([]) => out.push(WoodViolation::W1(format!("edge {e:?} has no arc"))),
            Some([_]) => {}
            Some([x, y]) if x.tail != y.tail && x.color != y.color => {}
            Some(_) => out.push(WoodViolation::W1(format!("edge {e:?} is colored inconsistently"))),
        }
    }
    for (i, &a) in g.outer.iter().enumerate() {
        if w.arcs.iter().any(|x| x.tail == a && x.color == i) {
            out.push(WoodViolation::W2(a));
        }
    }
    for v in 0..g.n {
        let cw = rotation_cw(g, v);
        let len = cw.len();
        let p = match out_positions(g, w, v, &cw) {
            Ok(p) => p,
            Err(m) => {
                out.push(WoodViolation::W3(v, m));
                continue;
            }
        };
        let off = |x: usize, from: usize| (x + len - from) % len;
        if off(p[1], p[0]) >= off(p[2], p[0]) {
            out.push(WoodViolation::W3(v, "out-arcs not in clockwise order".into()));
            continue;
        }
        for a in w.arcs.iter().filter(|a| a.head == v && a.color <= 2) {
            let Some(q) = cw.iter().position(|&u| u == a.tail) else {
                continue;
            };
            let (lo, hi) = (p[(a.color + 1) % 3], p[(a.color + 2) % 3]);
            if off(q, lo) > off(hi, lo) {
                out.push(WoodViolation::W3(
                    v,
                    format!("incoming arc of color {} from {} outside its sector", a.color + 1, a.tail),
                ));
            }
        }
    }
    let has = |t: usize, h: usize, c: usize| w.arcs.binary_search(&Arc { tail: t, head: h, color: c }).is_ok();
    for f in &g.faces {
        let k = f.len();
        for c in 0..3 {
            let fwd = (0..k).all(|i| has(f[i], f[(i + 1) % k], c));
            let bwd = (0..k).all(|i| has(f[(i + 1) % k], f[i], c));
            if fwd || bwd {
                out.push(WoodViolation::W4(f.clone()));
            }
        }
    }
    out
}

/// Angle labels: `labels[f][k]` is the label of the angle at `faces()[f][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleLabeling {
    pub labels: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelViolation {
    /// Around the vertex the labels do not form three nonempty clockwise
    /// intervals `0, 1, 2` (or a single interval of its own color for a
    /// suspension).
    Vertex(usize),
    /// The face does not read `0, 1, 2` clockwise.
    Face([usize; 3]),
}

/// Label each angle by the sector of the rule of vertices it lies in: the
/// clockwise sector from `e_{i+1}` to `e_{i-1}` gets label `i`. Needs one
/// outgoing arc per color at every vertex; the rules themselves are checked
/// by [`check_label_rules`].
pub fn angle_labeling(g: &PlaneTriangulation, w: &SchnyderWood) -> Result<AngleLabeling> {
    let mut sector: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for v in 0..g.graph.n {
        let cw = rotation_cw(&g.graph, v);
        let len = cw.len();
        let p = out_positions(&g.graph, w, v, &cw).map_err(|m| Error::InvalidArgument(format!("vertex {v}: {m}")))?;
        for q in 0..len {
            // the angle starting at cw[q] going clockwise
            let a = (0..3)
                .find(|&a| (q + len - p[a]) % len < (p[(a + 1) % 3] + len - p[a]) % len)
                .unwrap();
            let label = (a + 2) % 3;
            sector.insert((v, cw[q]), label);
        }
    }
    let labels = g
        .faces
        .iter()
        .map(|f| {
            let mut l = [0; 3];
            for k in 0..3 {
                // clockwise at f[k] the angle inside f starts at f[k+2]
                l[k] = sector[&(f[k], f[(k + 2) % 3])];
            }
            l
        })
        .collect();
    Ok(AngleLabeling { labels })
}

/// Rule of vertices and rule of faces.
pub fn check_label_rules(g: &PlaneTriangulation, l: &AngleLabeling) -> Vec<LabelViolation> {
    let mut out = Vec::new();
    let mut at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (f, lab) in g.faces.iter().zip(&l.labels) {
        for k in 0..3 {
            at.insert((f[k], f[(k + 2) % 3]), lab[k]);
        }
        let cw = [lab[0], lab[2], lab[1]];
        if !(0..3).any(|s| (0..3).all(|k| cw[(s + k) % 3] == k)) {
            out.push(LabelViolation::Face(*f));
        }
    }
    for v in 0..g.graph.n {
        let mut r = g.rotation_ccw(v);
        r.reverse();
        let seq: Vec<usize> = r.iter().filter_map(|&u| at.get(&(v, u)).copied()).collect();
        let ok = match g.suspension_color(v) {
            Some(i) => seq.iter().all(|&x| x == i),
            None => {
                let runs: Vec<usize> = (0..seq.len())
                    .filter(|&k| seq[k] != seq[(k + seq.len() - 1) % seq.len()])
                    .map(|k| seq[k])
                    .collect();
                runs.len() == 3 && (0..3).all(|k| runs[(k + 1) % 3] == (runs[k] + 1) % 3)
            }
        };
        if !ok {
            out.push(LabelViolation::Vertex(v));
        }
    }
    out
}

/// A Schnyder wood from a canonical order with `v_1 = a_0`, `v_2 = a_2`,
/// `v_n = a_1`. When `v_k` is added it points to its leftmost lower
/// neighbor in color 0 and its rightmost in color 2; the neighbors in
/// between point to `v_k` in color 1.
pub fn compute_wood(g: &PlaneTriangulation) -> Result<SchnyderWood> {
    let [a0, a1, a2] = g.graph.outer;
    let mut removed = vec![false; g.graph.n];
    let mut path = vec![a0, a1, a2];
    let mut arcs = vec![
        Arc { tail: a0, head: a1, color: 1 },
        Arc { tail: a0, head: a2, color: 2 },
        Arc { tail: a2, head: a0, color: 0 },
        Arc { tail: a2, head: a1, color: 1 },
    ];
    for _ in 0..g.graph.n - 2 {
        let on_path: BTreeSet<usize> = path.iter().copied().collect();
        let j = (1..path.len() - 1)
            .find(|&j| {
                let v = path[j];
                g.graph.next_ccw[v]
                    .keys()
                    .all(|u| removed[*u] || !on_path.contains(u) || *u == path[j - 1] || *u == path[j + 1])
            })
            .ok_or_else(|| Error::Internal("no removable vertex on the boundary".into()))?;
        let (v, prev, next) = (path[j], path[j - 1], path[j + 1]);
        let mut middle = Vec::new();
        let mut cur = g.graph.next_ccw[v][&prev];
        while cur != next {
            if removed[cur] {
                return Err(Error::Internal(format!("vertex {cur} removed twice")));
            }
            middle.push(cur);
            cur = g.graph.next_ccw[v][&cur];
        }
        removed[v] = true;
        arcs.push(Arc { tail: v, head: prev, color: 0 });
        arcs.push(Arc { tail: v, head: next, color: 2 });
        arcs.extend(middle.iter().map(|&u| Arc { tail: u, head: v, color: 1 }));
        path.splice(j..=j, middle);
    }
    let w = SchnyderWood::from_arcs(arcs);
    let bad = check_wood_axioms(g, &w);
    if !bad.is_empty() {
        return Err(Error::Internal(format!("canonical-order wood invalid: {bad:?}")));
    }
    Ok(w)
}

/// Region vectors: `v_i` is the number of inner faces in the region
/// `R_i(v)` bounded by the paths `P_{i-1}(v)`, `P_{i+1}(v)` and the outer
/// edge `a_{i-1} a_{i+1}`. Suspension `a_i` becomes `M_i · e_i` with `M_i`
/// one more than the largest inner coordinate. Vertex ids are kept.
pub fn region_vectors(g: &PlaneTriangulation, w: &SchnyderWood) -> Result<Vec<Point>> {
    let bad = check_wood_axioms(g, w);
    if !bad.is_empty() {
        return Err(Error::InvalidArgument(format!("invalid wood: {bad:?}")));
    }
    let mut face_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, f) in g.faces.iter().enumerate() {
        for i in 0..3 {
            face_of.insert((f[i], f[(i + 1) % 3]), k);
        }
    }
    let path = |mut v: usize, c: usize| -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        while let Some(h) = w.out_arc(v, c) {
            out.push([v.min(h), v.max(h)]);
            if g.suspension_color(h).is_some() {
                break;
            }
            v = h;
        }
        out
    };
    let mut pts = vec![Point::new(vec![0; 3]); g.graph.n];
    for v in (0..g.graph.n).filter(|&v| g.suspension_color(v).is_none()) {
        let mut c = [0i64; 3];
        for (i, ci) in c.iter_mut().enumerate() {
            let wall: BTreeSet<[usize; 2]> = path(v, (i + 1) % 3).into_iter().chain(path(v, (i + 2) % 3)).collect();
            let (x, y) = (g.graph.outer[(i + 1) % 3], g.graph.outer[(i + 2) % 3]);
            let start = face_of.get(&(x, y)).or_else(|| face_of.get(&(y, x))).copied().unwrap();
            let mut seen = vec![false; g.faces.len()];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                *ci += 1;
                let t = g.faces[f];
                for k in 0..3 {
                    let (a, b) = (t[k], t[(k + 1) % 3]);
                    if wall.contains(&[a.min(b), a.max(b)]) {
                        continue;
                    }
                    if let Some(&h) = face_of.get(&(b, a)) {
                        if !seen[h] {
                            seen[h] = true;
                            queue.push_back(h);
                        }
                    }
                }
            }
        }
        pts[v] = Point::new(c.to_vec());
    }
    let inner: Vec<usize> = (0..g.graph.n).filter(|&v| g.suspension_color(v).is_none()).collect();
    for (i, &a) in g.graph.outer.iter().enumerate() {
        let m = 1 + inner.iter().map(|&v| pts[v].get(i)).max().unwrap_or(0);
        let mut c = vec![0; 3];
        c[i] = m;
        pts[a] = Point::new(c);
    }
    Ok(pts)
}

/// Orthogonal surface supporting `(g, w)`.
///
/// Region vectors can share coordinate values. Ties are broken by the wood:
/// for an arc `u → v` of color `c` the coordinates `j ≠ c` satisfy
/// `u_j >= v_j`, and the tie-break makes these strict. Coordinates are then
/// replaced by ranks, giving a generic suspended surface, which is checked
/// by extracting the wood again.
pub fn embed(g: &PlaneTriangulation, w: &SchnyderWood) -> Result<OrthoSurface> {
    let raw = region_vectors(g, w)?;
    let inner: Vec<usize> = (0..g.graph.n).filter(|&v| g.suspension_color(v).is_none()).collect();
    let mut coords = vec![vec![0i64; 3]; g.graph.n];
    for j in 0..3 {
        // below[v]: vertices that must get a smaller j-coordinate than v
        let mut below: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for a in &w.arcs {
            if g.suspension_color(a.tail).is_some() || g.suspension_color(a.head).is_some() {
                continue;
            }
            if a.color == j {
                below.entry(a.head).or_default().push(a.tail);
            } else {
                below.entry(a.tail).or_default().push(a.head);
            }
        }
        let mut order: Vec<usize> = Vec::with_capacity(inner.len());
        let mut placed = vec![false; g.graph.n];
        let mut pending: BTreeSet<(i64, usize)> = inner.iter().map(|&v| (raw[v].get(j), v)).collect();
        while let Some(&(val, _)) = pending.iter().next() {
            let ready = pending
                .iter()
                .take_while(|&&(x, _)| x == val)
                .find(|&&(_, v)| below.get(&v).is_none_or(|b| b.iter().all(|&u| placed[u] || raw[u].get(j) != val)))
                .copied()
                .ok_or_else(|| Error::VerificationFailed(format!("cyclic ties in coordinate {}", j + 1)))?;
            pending.remove(&ready);
            placed[ready.1] = true;
            order.push(ready.1);
        }
        for (rank, &v) in order.iter().enumerate() {
            coords[v][j] = rank as i64 + 1;
        }
        for (i, &a) in g.graph.outer.iter().enumerate() {
            coords[a][j] = if i == j { inner.len() as i64 + 1 } else { 0 };
        }
    }
    let s = OrthoSurface::new(3, coords.into_iter().map(Point::new).collect())?;
    let (h, x) = extract_wood(&s).map_err(|e| Error::VerificationFailed(format!("extraction: {e}")))?;
    if h.edges() != g.edges() || x != *w {
        return Err(Error::VerificationFailed("embedded surface induces a different wood".into()));
    }
    Ok(s)
}

fn require_rigid_3d(s: &OrthoSurface) -> Result<()> {
    if s.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: s.dim(),
        });
    }
    if !s.is_suspended() {
        return Err(Error::NotSuspended);
    }
    if detect_degeneracy(s).is_some() {
        return Err(Error::Degenerate);
    }
    if is_rigid(s)?.is_some() {
        return Err(Error::NotRigid);
    }
    Ok(())
}

/// The plane graph and wood carried by a rigid suspended 3-dimensional
/// surface. Edges are the rank-1 characteristic points; the edge `x ∨ y`
/// is oriented `x → y` in color `c` when `y` alone supplies coordinate `c`
/// and `x` supplies the other two, so an edge may be oriented both ways.
/// Faces are the maxima, bounded by the edges below them. Generic surfaces
/// give triangulations (see [`PlaneTriangulation::try_from`]).
pub fn extract_wood(s: &OrthoSurface) -> Result<(PlaneGraph, SchnyderWood)> {
    require_rigid_3d(s)?;
    let cps = characteristic_points(s);
    let mut arcs = Vec::new();
    for c in cps.iter().filter(|c| c.rank == 1) {
        let [x, y] = c.downset[..] else {
            return Err(Error::Internal(format!("edge {} has {} minima", c.point, c.downset.len())));
        };
        let (tx, ty) = (c.tight[0], c.tight[1]);
        for (t, h, tt, th) in [(x, y, tx, ty), (y, x, ty, tx)] {
            let only = th.minus(tt);
            if only.len() == 1 {
                let col = only.iter().next().unwrap();
                if (0..3).filter(|&k| k != col).all(|k| tt.contains(k)) {
                    arcs.push(Arc { tail: t, head: h, color: col });
                }
            }
        }
    }
    let edges: Vec<&CharPoint> = cps.iter().filter(|c| c.rank == 1).collect();
    let mut faces = Vec::new();
    for c in cps.iter().filter(|c| c.rank == 2) {
        let k = c.downset.len();
        // the angle at x is labeled by the color x supplies alone, or by its
        // only tight color on longer faces
        let mut label = BTreeMap::new();
        for (i, &x) in c.downset.iter().enumerate() {
            let others = c
                .tight
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != i)
                .fold(ColorSet::EMPTY, |acc, (_, t)| acc.union(*t));
            let own = c.tight[i].minus(others);
            let l = match (c.tight[i].len(), own.len()) {
                (1, _) => c.tight[i],
                (_, 1) => own,
                _ => return Err(Error::Internal(format!("angle at {x} in {} has no label", c.point))),
            };
            label.insert(x, l.iter().next().unwrap());
        }
        let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in edges.iter().filter(|e| e.point.le(&c.point)) {
            nbrs.entry(e.downset[0]).or_default().push(e.downset[1]);
            nbrs.entry(e.downset[1]).or_default().push(e.downset[0]);
        }
        let not_cycle = || Error::Internal(format!("boundary of face {} is not a cycle", c.point));
        if nbrs.len() != k || nbrs.values().any(|v| v.len() != 2) {
            return Err(not_cycle());
        }
        let mut cycle = vec![c.downset[0], nbrs[&c.downset[0]][0]];
        while cycle.len() < k {
            let [prev, cur] = [cycle[cycle.len() - 2], cycle[cycle.len() - 1]];
            let next = nbrs[&cur].iter().copied().find(|&u| u != prev).unwrap();
            cycle.push(next);
        }
        if cycle.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(not_cycle());
        }
        // clockwise the labels read as intervals 0, 1, 2; store counterclockwise
        let reads_cw = |cyc: &[usize]| {
            (0..k).all(|i| {
                let (p, q) = (label[&cyc[i]], label[&cyc[(i + 1) % k]]);
                q == p || q == (p + 1) % 3
            })
        };
        if reads_cw(&cycle) {
            cycle.reverse();
        } else {
            let rev: Vec<usize> = cycle.iter().rev().copied().collect();
            if !reads_cw(&rev) {
                return Err(Error::Internal(format!("face {} breaks the rule of faces", c.point)));
            }
        }
        faces.push(cycle);
    }
    let susp = s.suspensions().unwrap();
    let g = PlaneGraph::new(s.len(), faces, [susp[0], susp[1], susp[2]])?;
    let w = SchnyderWood::from_arcs(arcs);
    let bad = check_wood_axioms(&g, &w);
    if !bad.is_empty() {
        return Err(Error::Internal(format!("extracted wood violates axioms: {bad:?}")));
    }
    Ok((g, w))
}

/// Reflect the maxima through `T = 1 + max` and suspend the result.
pub fn dual_surface(s: &OrthoSurface) -> Result<OrthoSurface> {
    require_rigid_3d(s)?;
    let maxima: Vec<Point> = characteristic_points(s)
        .into_iter()
        .filter(|c| c.rank == 2)
        .map(|c| c.point)
        .collect();
    let top: Vec<i64> = (0..3)
        .map(|i| 1 + maxima.iter().map(|p| p.get(i)).max().unwrap())
        .collect();
    let reflected = maxima
        .iter()
        .map(|p| Point::new((0..3).map(|i| top[i] - p.get(i)).collect()))
        .collect();
    OrthoSurface::make_suspended(reflected)
}
