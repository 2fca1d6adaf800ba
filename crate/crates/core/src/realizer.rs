//! Realizability of simplicial balls on orthogonal surfaces.
//!
//! Edges of a generic suspended 4-dimensional surface are orthogonal (one
//! endpoint contributes three coordinates to the join) or symmetric (two and
//! two). A symmetric edge lies in at least four facets, which yields the
//! combinatorial obstructions below. The search enumerates generic surfaces
//! through their coordinate orders.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charpoint::{char_point_at, characteristic_points, CharPoint};
use crate::error::{Error, Result};
use crate::point::{ColorSet, Point};
use crate::poset::{build_cporder, identity_labels, matches_ball, Ball};
use crate::surface::OrthoSurface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Orthogonal,
    Symmetric,
}

/// A rank-1 characteristic point `u ∨ v` with the coordinates each endpoint
/// contributes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub u: usize,
    pub v: usize,
    pub point: Point,
    pub tight_u: ColorSet,
    pub tight_v: ColorSet,
    pub kind: EdgeKind,
}

impl EdgeClass {
    /// The endpoint contributing three coordinates, if unique. Inner
    /// vertices are the tails of exactly four orthogonal edges.
    pub fn tail(&self) -> Option<usize> {
        match (self.tight_u.len() >= 3, self.tight_v.len() >= 3) {
            (true, false) => Some(self.u),
            (false, true) => Some(self.v),
            _ => None,
        }
    }
}

fn require_generic_suspended(s: &OrthoSurface, dim: Option<usize>) -> Result<()> {
    if let Some(d) = dim {
        if s.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: s.dim(),
            });
        }
    }
    if !s.is_suspended() {
        return Err(Error::NotSuspended);
    }
    if !s.is_generic() {
        return Err(Error::NotGeneric);
    }
    Ok(())
}

/// Classify every edge of a generic suspended 4-dimensional surface.
/// Edges between two suspensions count as orthogonal.
pub fn classify_edges(s: &OrthoSurface) -> Result<Vec<EdgeClass>> {
    require_generic_suspended(s, Some(4))?;
    let mut out = Vec::new();
    for c in characteristic_points(s) {
        if c.rank != 1 {
            continue;
        }
        let [u, v] = c.downset[..] else {
            return Err(Error::Internal(format!("edge {} has {} minima", c.point, c.downset.len())));
        };
        let (tight_u, tight_v) = (c.tight[0], c.tight[1]);
        let kind = if tight_u.len().max(tight_v.len()) >= 3 {
            EdgeKind::Orthogonal
        } else {
            EdgeKind::Symmetric
        };
        out.push(EdgeClass {
            u,
            v,
            point: c.point,
            tight_u,
            tight_v,
            kind,
        });
    }
    out.sort_by_key(|e| (e.u, e.v));
    Ok(out)
}

/// For every transversal `(i_1 ∈ T_p(v_1), …, i_k ∈ T_p(v_k))` there is a
/// maximum `M ≥ p` with `M_{i_j} = p_{i_j}`. Each maximum is found by raising
/// the free coordinates one at a time until a new minimum enters the
/// down-set. Returns the number of distinct maxima reached, which is at least
/// `Π |T_p(v_j)|`.
pub fn realization_criterion_check(s: &OrthoSurface, p: &CharPoint) -> Result<usize> {
    require_generic_suspended(s, None)?;
    let d = s.dim();
    if p.point.coords().iter().any(|&c| c <= 0) {
        return Err(Error::InvalidArgument(format!("{} is not an inner point", p.point)));
    }
    let mut maxima: BTreeSet<Point> = BTreeSet::new();
    let choices: Vec<Vec<usize>> = p.tight.iter().map(|t| t.iter().collect()).collect();
    let mut count = 0usize;
    for pick in choices.iter().map(|c| c.iter().copied()).multi_cartesian_product() {
        count += 1;
        let fixed: ColorSet = pick.iter().copied().collect();
        let mut q = p.point.coords().to_vec();
        let mut down: BTreeSet<usize> = p.downset.iter().copied().collect();
        for j in (0..d).filter(|&j| !fixed.contains(j)) {
            let next = (0..s.len())
                .filter(|u| !down.contains(u))
                .filter(|&u| {
                    let w = s.vertex(u);
                    w.get(j) > q[j] && (0..d).all(|k| k == j || w.get(k) <= q[k])
                })
                .min_by_key(|&u| s.vertex(u).get(j));
            let Some(u) = next else {
                return Err(Error::CriterionViolated(format!(
                    "no minimum stops direction {} above {}",
                    j + 1,
                    p.point
                )));
            };
            q[j] = s.vertex(u).get(j);
            down.insert(u);
        }
        let m = Point::new(q);
        match char_point_at(s, &m)? {
            Some(c) if c.rank + 1 == d => {
                maxima.insert(m);
            }
            _ => {
                return Err(Error::CriterionViolated(format!(
                    "walk from {} ends at {m}, which is not a maximum",
                    p.point
                )))
            }
        }
    }
    if maxima.len() < count {
        return Err(Error::CriterionViolated(format!(
            "{} lies below {} maxima, expected at least {count}",
            p.point,
            maxima.len()
        )));
    }
    Ok(maxima.len())
}

fn require_dim4(b: &Ball) -> Result<()> {
    if !b.is_simplicial() || b.dim() != 4 {
        return Err(Error::Unsupported("criteria need a simplicial ball with facets of size 4".into()));
    }
    Ok(())
}

/// Inner edges whose endpoints are both adjacent to every outer vertex.
/// In a realization these must be symmetric.
pub fn suspension_criterion(b: &Ball) -> Result<Vec<[u32; 2]>> {
    require_dim4(b)?;
    let edges: BTreeSet<[u32; 2]> = b.edges().into_iter().collect();
    let adjacent = |x: u32, y: u32| edges.contains(&[x.min(y), x.max(y)]);
    let full = |x: u32| b.outer().iter().all(|&o| adjacent(x, o));
    let inner = b.inner_vertices();
    Ok(edges
        .iter()
        .filter(|[x, y]| inner.contains(x) && inner.contains(y) && full(*x) && full(*y))
        .copied()
        .collect())
}

/// Lower bound on the number of symmetric inner edges: a generic suspended
/// surface on `n` vertices (suspensions included) has exactly `4n − 10`
/// orthogonal edges (outer edges included), so the rest are symmetric.
pub fn counting_criterion(b: &Ball) -> Result<usize> {
    require_dim4(b)?;
    let e = b.edges().len();
    Ok(e.saturating_sub(4 * b.n() as usize - 10))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// A forced symmetric edge lies in at most three facets.
    Suspension,
    /// Too few inner edges lie in four or more facets.
    Counting,
    /// The skeleton contains `K_13`, whose order dimension is 5.
    Clique,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Refuted {
        criterion: Criterion,
        edge: Option<[u32; 2]>,
        detail: String,
    },
    Open,
}

/// Screen a 4-dimensional ball with the suspension, counting and clique
/// criteria, in that order. The suspension witness is the smallest forced
/// edge lying in fewer than four facets.
pub fn nonrealizability_check(b: &Ball) -> Result<Verdict> {
    require_dim4(b)?;
    for e in suspension_criterion(b)? {
        let f = b.facets_containing(&e);
        if f < 4 {
            return Ok(Verdict::Refuted {
                criterion: Criterion::Suspension,
                edge: Some(e),
                detail: format!("edge [{},{}] must be symmetric but lies in {f} facets", e[0], e[1]),
            });
        }
    }
    let need = counting_criterion(b)?;
    let inner = b.inner_vertices();
    let have = b
        .edges()
        .into_iter()
        .filter(|e| inner.contains(&e[0]) && inner.contains(&e[1]) && b.facets_containing(e) >= 4)
        .count();
    if have < need {
        return Ok(Verdict::Refuted {
            criterion: Criterion::Counting,
            edge: None,
            detail: format!("{need} symmetric inner edges needed, only {have} inner edges lie in four facets"),
        });
    }
    if let Some(k) = clique_of_size(b, 13) {
        return Ok(Verdict::Refuted {
            criterion: Criterion::Clique,
            edge: None,
            detail: format!("skeleton contains K13 on {k:?}"),
        });
    }
    Ok(Verdict::Open)
}

/// A clique of exactly `size` vertices in the skeleton, if any.
fn clique_of_size(b: &Ball, size: usize) -> Option<Vec<u32>> {
    let n = b.n() as usize;
    if n < size {
        return None;
    }
    let mut adj = vec![vec![false; n + 1]; n + 1];
    for [x, y] in b.edges() {
        adj[x as usize][y as usize] = true;
        adj[y as usize][x as usize] = true;
    }
    fn grow(adj: &[Vec<bool>], clique: &mut Vec<u32>, cand: &[u32], size: usize) -> bool {
        if clique.len() == size {
            return true;
        }
        if clique.len() + cand.len() < size {
            return false;
        }
        for (k, &v) in cand.iter().enumerate() {
            let rest: Vec<u32> = cand[k + 1..]
                .iter()
                .copied()
                .filter(|&w| adj[v as usize][w as usize])
                .collect();
            clique.push(v);
            if grow(adj, clique, &rest, size) {
                return true;
            }
            clique.pop();
        }
        false
    }
    let all: Vec<u32> = (1..=n as u32).collect();
    let mut clique = Vec::new();
    grow(&adj, &mut clique, &all, size).then_some(clique)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A realization with vertex id `k` carrying label `k + 1`, and the
    /// index of the coordinate-order tuple that produced it.
    Found { surface: OrthoSurface, candidate: usize },
    /// Every generic surface with these outer suspensions was tried.
    Exhausted { candidates: usize },
    /// The budget ran out first; nothing is proved.
    BudgetExhausted { examined: usize },
}

/// Search the generic suspended surfaces realizing `b` with the outer facet
/// on the suspensions.
///
/// A candidate is a tuple of `d − 1` permutations of the inner vertices (the
/// first coordinate order is fixed to the identity); inner vertex `k` gets
/// coordinate `1 + position` in each order. Every candidate is compared with
/// the ball under all labellings of its inner vertices. The smallest matching
/// candidate index is returned, independent of `jobs`.
pub fn search_realization(b: &Ball, budget: Option<usize>, jobs: Option<usize>) -> Result<SearchOutcome> {
    if !b.is_simplicial() {
        return Err(Error::Unsupported("search needs a simplicial ball".into()));
    }
    let d = b.dim();
    let outer = b.outer().to_vec();
    let inner = b.inner_vertices();
    let m = inner.len();
    if m == 0 {
        return Err(Error::Unsupported("ball has no inner vertices".into()));
    }
    let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
    let total = (d - 1) as u32;
    let total = perms
        .len()
        .checked_pow(total)
        .ok_or_else(|| Error::Unsupported("search space too large".into()))?;
    let limit = budget.map_or(total, |k| k.min(total));
    let target: BTreeSet<Vec<u32>> = b.facets().iter().filter(|f| **f != outer).cloned().collect();

    let candidate = |idx: usize| -> Option<(OrthoSurface, Vec<u32>)> {
        let mut orders = vec![(0..m).collect::<Vec<_>>()];
        let mut rest = idx;
        let mut tail = Vec::with_capacity(d - 1);
        for _ in 1..d {
            tail.push(&perms[rest % perms.len()]);
            rest /= perms.len();
        }
        // most significant digit is the second coordinate
        orders.extend(tail.into_iter().rev().cloned());
        let mut pos = vec![vec![0i64; d]; m];
        for (i, order) in orders.iter().enumerate() {
            for (k, &v) in order.iter().enumerate() {
                pos[v][i] = k as i64 + 1;
            }
        }
        let s = OrthoSurface::make_suspended(pos.into_iter().map(Point::new).collect()).ok()?;
        let facets: Vec<Vec<usize>> = characteristic_points(&s)
            .into_iter()
            .filter(|c| c.downset.len() == d && c.rank + 1 == d)
            .map(|c| c.downset)
            .collect();
        if facets.len() != target.len() {
            return None;
        }
        for sigma in (0..m).permutations(m) {
            let mut labels: Vec<u32> = sigma.iter().map(|&k| inner[k]).collect();
            labels.extend(&outer);
            let image: BTreeSet<Vec<u32>> = facets
                .iter()
                .map(|f| f.iter().map(|&v| labels[v]).sorted().collect())
                .collect();
            if image == target {
                return Some((s, labels));
            }
        }
        None
    };

    let run = || (0..limit).into_par_iter().find_map_first(|idx| candidate(idx).map(|r| (idx, r)));
    let hit = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(run),
        None => run(),
    };
    let Some((idx, (s, labels))) = hit else {
        return Ok(if limit == total {
            SearchOutcome::Exhausted { candidates: total }
        } else {
            SearchOutcome::BudgetExhausted { examined: limit }
        });
    };
    let mut ordered = vec![Point::new(vec![]); labels.len()];
    for (id, &l) in labels.iter().enumerate() {
        ordered[l as usize - 1] = s.vertex(id).clone();
    }
    let surface = OrthoSurface::new(d, ordered)?;
    matches_ball(&build_cporder(&surface), b, &identity_labels(surface.len()))
        .map_err(|e| Error::Internal(format!("search hit does not match: {e:?}")))?;
    Ok(SearchOutcome::Found { surface, candidate: idx })
}
