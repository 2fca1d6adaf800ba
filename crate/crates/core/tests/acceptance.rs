//! Acceptance criteria A1-A10. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use common::{ball, p, random_generic, surface, surface_fixtures};
use orthosurf::charpoint::{characteristic_points, is_characteristic, minimal_generating_sets};
use orthosurf::construct::{path_product, prism, pyramid, realized_ball, simplex_surface, stack};
use orthosurf::homology::{is_syzygy, syzygy_complex, syzygy_points};
use orthosurf::poset::{build_cporder, identity_labels, matches_ball, matches_faces, Ball, FaceLattice};
use orthosurf::realizer::{
    classify_edges, nonrealizability_check, realization_criterion_check, search_realization, EdgeKind,
    SearchOutcome, Verdict,
};
use orthosurf::schnyder::{
    angle_labeling, check_label_rules, compute_wood, embed, extract_wood, region_vectors, PlaneTriangulation,
};
use orthosurf::{detect_degeneracy, is_rigid, ColorSet, OrthoSurface, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn colors(c: &[usize]) -> ColorSet {
    c.iter().map(|i| i - 1).collect()
}

fn a1() {
    let s = surface("non_syzygy_4d");
    let q = p(&[2, 2, 2, 2]);
    assert!(is_characteristic(&s, &q).unwrap());
    let faces = syzygy_complex(&s, &q).unwrap();
    let edges: BTreeSet<ColorSet> = faces.iter().copied().filter(|f| f.len() == 2).collect();
    let expected: BTreeSet<ColorSet> = [colors(&[1, 4]), colors(&[2, 3]), colors(&[3, 4])].into();
    assert_eq!(edges, expected);
    for non in [[1, 2], [1, 3], [2, 4]] {
        assert!(!faces.contains(&colors(&non)));
    }
    assert!(!is_syzygy(&s, &q).unwrap());
}

fn a2() {
    let s = surface("weakly_degenerate_4d");
    assert!(detect_degeneracy(&s).is_some());
    let q = p(&[2, 2, 2, 2]);
    assert_eq!(s.flat_colors(&q).unwrap(), ColorSet::full(4));
    // a = 0, c = 2
    let flats = s.flats(0).unwrap();
    assert!(flats.iter().any(|f| f.members.contains(&0) && f.members.contains(&2)));
}

fn a3() {
    // v, w, s, t = 0..4; suspensions X, Y, Z, T = 4..8
    let s = surface("no_lattice_4d");
    assert_eq!(is_rigid(&s), Ok(None));
    let order = build_cporder(&s);
    assert!(order.is_lattice().is_some());
    let rank1 = |e: usize| order.point(e).is_some_and(|c| c.rank == 1);
    let witness = order
        .lattice_violations()
        .into_iter()
        .find(|v| !v.meet && rank1(v.a) && rank1(v.b) && v.bounds.len() == 2)
        .expect("rank-1 pair without a join");
    let a = &order.point(witness.a).unwrap().downset;
    let b = &order.point(witness.b).unwrap().downset;
    let pair: BTreeSet<&Vec<usize>> = [a, b].into();
    assert_eq!(pair, [&vec![0, 2], &vec![0, 1]].into());
    let bounds: BTreeSet<Vec<usize>> = witness
        .bounds
        .iter()
        .map(|&e| order.point(e).unwrap().downset.clone())
        .collect();
    assert_eq!(bounds, [vec![0, 1, 2, 3], vec![0, 1, 2, 5]].into());
    let m = characteristic_points(&s)
        .into_iter()
        .find(|c| c.rank == 3 && c.downset.contains(&0) && c.downset.contains(&1) && c.downset.contains(&5))
        .unwrap();
    assert_eq!(
        minimal_generating_sets(&s, &m.point).unwrap(),
        vec![vec![0, 2, 3, 5], vec![1, 2, 3, 5]]
    );
}

fn a4() {
    // x, u, v, w, s, t = 0..6
    let s = surface("no_diamond_4d");
    assert_eq!(is_rigid(&s), Ok(None));
    let order = build_cporder(&s);
    assert!(order.diamond_check().unwrap().is_some());
    let top = order.element_of(&p(&[5, 5, 5, 3])).unwrap();
    let x = order.element_of(&p(&[3, 3, 3, 3])).unwrap();
    let v = order
        .diamond_violations()
        .unwrap()
        .into_iter()
        .find(|v| v.upper == top && v.lower == x)
        .expect("interval [x, p]");
    let middle: BTreeSet<Point> = v.middle.iter().map(|&e| order.point(e).unwrap().point.clone()).collect();
    let joins: BTreeSet<Point> = [1, 2, 3].iter().map(|&k| s.vertex(0).join(s.vertex(k))).collect();
    assert_eq!(middle, joins);
}

fn a5() {
    let base = ball("cyclic_4_7");
    let table: [([u32; 4], [u32; 2]); 7] = [
        ([1, 2, 3, 4], [5, 7]),
        ([1, 2, 3, 7], [4, 6]),
        ([1, 2, 6, 7], [3, 5]),
        ([1, 5, 6, 7], [2, 4]),
        ([2, 3, 4, 5], [1, 6]),
        ([3, 4, 5, 6], [2, 7]),
        ([4, 5, 6, 7], [1, 3]),
    ];
    for f in base.facets() {
        let b = base.with_outer(f.clone()).unwrap();
        let verdict = nonrealizability_check(&b).unwrap();
        let search = search_realization(&b, None, None).unwrap();
        match table.iter().find(|(o, _)| o[..] == f[..]) {
            Some((_, e)) => {
                assert!(
                    matches!(verdict, Verdict::Refuted { edge: Some(w), .. } if w == *e),
                    "{f:?}: {verdict:?}"
                );
                assert_eq!(search, SearchOutcome::Exhausted { candidates: 216 }, "{f:?}");
            }
            None => {
                assert_eq!(verdict, Verdict::Open, "{f:?}");
                let SearchOutcome::Found { surface, candidate } = search else {
                    panic!("{f:?}: no realization");
                };
                assert!(candidate < 216);
                let order = build_cporder(&surface);
                assert_eq!(matches_ball(&order, &b, &identity_labels(surface.len())), Ok(()));
            }
        }
    }
}

fn a6() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..30 {
        let (d, max_inner) = if k % 2 == 0 { (3, 7) } else { (4, 5) };
        let m = rng.gen_range(1..=max_inner);
        let s = random_generic(d, m, &mut rng);
        let order = build_cporder(&s);
        assert!(order.is_graded(), "{s:?}");
        assert!(order.is_lattice().is_none(), "{s:?}");
        assert_eq!(order.diamond_check(), Ok(None), "{s:?}");
        let cps = &order.points;
        assert!(cps.iter().all(|c| c.rank < d));
        for c in cps.iter().filter(|c| c.rank + 1 == d) {
            assert_eq!(c.downset.len(), d);
        }
        if d == 3 {
            let count = |r: usize| cps.iter().filter(|c| c.rank == r).count() as i64;
            assert_eq!(count(0) - count(1) + count(2), 1);
        }
        // points spanned by suspensions alone have zero coordinates and are skipped
        for c in cps.iter().filter(|c| c.point.coords().iter().all(|&x| x > 0)) {
            let found = realization_criterion_check(&s, c).unwrap();
            let product: usize = c.tight.iter().map(|t| t.len()).product();
            assert!(found >= product);
        }
    }
}

fn a7() {
    // Convention: n counts all vertices including the four suspensions, and
    // the edges among suspensions count as orthogonal. Inner vertices alone
    // contribute 4(n-4) = 4n-16 outgoing orthogonal edges; the six outer
    // edges make up the difference to 4n-10.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let calib = random_generic(4, 3, &mut rng);
    let orth = classify_edges(&calib).unwrap().iter().filter(|e| e.kind == EdgeKind::Orthogonal).count() as i64;
    let (total, inner) = (calib.len() as i64, calib.inner_ids().len() as i64);
    println!("   calibration: orthogonal={orth} 4n-10 with n=all:{} n=inner:{}", 4 * total - 10, 4 * inner - 10);
    assert_eq!(orth, 4 * total - 10);
    for _ in 0..24 {
        let m = rng.gen_range(1..=5);
        let s = random_generic(4, m, &mut rng);
        let n = s.len();
        let edges = classify_edges(&s).unwrap();
        let orth: Vec<_> = edges.iter().filter(|e| e.kind == EdgeKind::Orthogonal).collect();
        assert_eq!(orth.len(), 4 * n - 10, "{s:?}");
        let outer = orth.iter().filter(|e| s.is_suspension(e.u) && s.is_suspension(e.v)).count();
        assert_eq!(outer, 6);
        for v in s.inner_ids() {
            assert_eq!(orth.iter().filter(|e| e.tail() == Some(v)).count(), 4);
        }
    }
}

/// Facet-list stacking, independent of the surface code.
fn stack_facets(facets: &[Vec<u32>], f: &[u32], new: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = facets.iter().filter(|g| g[..] != f[..]).cloned().collect();
    for skip in f {
        let mut g: Vec<u32> = f.iter().copied().filter(|x| x != skip).collect();
        g.push(new);
        out.push(g);
    }
    out
}

fn square_cube_facets(n: u32, facets: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = vec![(1..=n).collect(), (n + 1..=2 * n).collect()];
    for f in facets {
        let mut g = f.clone();
        g.extend(f.iter().map(|x| x + n));
        out.push(g);
    }
    out
}

fn direct_sum(k: u32, d: u32) -> Vec<Vec<u32>> {
    let a: Vec<u32> = (1..=k + 1).collect();
    let b: Vec<u32> = (k + 2..=d + 2).collect();
    let mut out = Vec::new();
    for x in &a {
        for y in &b {
            out.push(a.iter().chain(&b).copied().filter(|v| v != x && v != y).collect());
        }
    }
    out
}

fn pyramid_facets(facets: &[Vec<u32>], n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![(1..=n).collect::<Vec<_>>()];
    out.extend(facets.iter().map(|f| {
        let mut g = f.clone();
        g.push(n + 1);
        g
    }));
    out
}

fn a8() {
    // (i) stacking
    for d in [3usize, 4] {
        let mut s = simplex_surface(d).unwrap();
        let mut facets = realized_ball(&s).unwrap().facets().to_vec();
        for _ in 0..4 {
            let m = characteristic_points(&s).into_iter().rfind(|c| c.rank + 1 == d).unwrap();
            let f: Vec<u32> = m.downset.iter().map(|&v| v as u32 + 1).collect();
            facets = stack_facets(&facets, &f, s.len() as u32 + 1);
            s = stack(&s, &m.point).unwrap();
            let outer: Vec<u32> = s.suspensions().unwrap().iter().map(|&v| v as u32 + 1).collect();
            let oracle = Ball::simplicial(facets.clone(), outer).unwrap();
            assert_eq!(matches_ball(&build_cporder(&s), &oracle, &identity_labels(s.len())), Ok(()));
        }
    }
    // (ii) prisms: square -> 3-cube, 3-cube -> 4-cube
    let square = vec![vec![1, 2], vec![1, 3], vec![2, 4], vec![3, 4]];
    let cube3 = square_cube_facets(4, &square);
    let cube4 = square_cube_facets(8, &cube3);
    for (host, top, facets, n) in [
        ("square_host_3d", p(&[1, 2, 2]), cube3.clone(), 4u32),
        ("cube_host_4d", p(&[3, 2, 2, 3]), cube4, 8),
    ] {
        let s = surface(host);
        let out = prism(&s, &top).unwrap();
        let oracle = Ball::polytope(facets, (n + 1..=2 * n).collect()).unwrap();
        assert_eq!(matches_ball(&build_cporder(&out), &oracle, &identity_labels(out.len())), Ok(()));
    }
    // (iii) triangle x path_3, every cell
    let tri = surface("triangle_3d");
    let out = path_product(&tri, 3).unwrap();
    let tri_faces: Vec<Vec<u32>> = vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]];
    let mut cells = Vec::new();
    for f in &tri_faces {
        for layer in 0..3u32 {
            cells.push(f.iter().map(|v| 3 * layer + v).collect::<Vec<_>>());
        }
        for layer in 0..2u32 {
            let mut c: Vec<u32> = f.iter().map(|v| 3 * layer + v).collect();
            c.extend(f.iter().map(|v| 3 * (layer + 1) + v));
            cells.push(c);
        }
    }
    assert_eq!(cells.len(), 35);
    let target = FaceLattice::from_faces(cells);
    assert_eq!(matches_faces(&build_cporder(&out), &target, &identity_labels(out.len())), Ok(()));
    // (iv) d-polytopes on d+2 vertices: direct sums of simplices by search,
    // the rest as pyramids over the previous dimension
    let square2 = OrthoSurface::new(2, vec![p(&[3, 0]), p(&[2, 1]), p(&[1, 2]), p(&[0, 3])]).unwrap();
    let mut level: Vec<OrthoSurface> = vec![pyramid(&square2).unwrap()];
    let mut counts = Vec::new();
    for d in 3..=5u32 {
        if d > 3 {
            level = level.iter().map(|s| {
                let out = pyramid(s).unwrap();
                let base = realized_ball(s).unwrap();
                let oracle_facets = pyramid_facets(base.facets(), s.len() as u32);
                let mut outer = base.outer().to_vec();
                outer.push(s.len() as u32 + 1);
                let oracle = Ball::polytope(oracle_facets, outer).unwrap();
                assert_eq!(matches_ball(&build_cporder(&out), &oracle, &identity_labels(out.len())), Ok(()));
                out
            }).collect();
        }
        for k in 1..=d / 2 {
            let facets = direct_sum(k, d);
            let found = facets.iter().find_map(|o| {
                let b = Ball::simplicial(facets.clone(), o.clone()).unwrap();
                match search_realization(&b, None, None).unwrap() {
                    SearchOutcome::Found { surface, .. } => Some(surface),
                    _ => None,
                }
            });
            level.push(found.unwrap_or_else(|| panic!("direct sum {k},{d} not realized")));
        }
        assert!(level.iter().all(|s| s.len() == d as usize + 2 && s.dim() == d as usize));
        counts.push(level.len());
    }
    assert_eq!(counts, vec![2, 4, 6]);
}

fn a9() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let n = rng.gen_range(4..=12);
        let g = PlaneTriangulation::random(n, &mut rng).unwrap();
        let w = compute_wood(&g).unwrap();
        let pts = region_vectors(&g, &w).unwrap();
        for v in (0..n).filter(|&v| g.suspension_color(v).is_none()) {
            assert_eq!(pts[v].coords().iter().sum::<i64>(), 2 * n as i64 - 5);
        }
        let s = embed(&g, &w).unwrap();
        let (h, x) = extract_wood(&s).unwrap();
        assert_eq!(h.edges(), g.edges());
        assert_eq!(x, w);
        let l = angle_labeling(&g, &w).unwrap();
        assert!(check_label_rules(&g, &l).is_empty());
    }
}

fn a10() {
    for name in surface_fixtures() {
        let s = surface(&name);
        let chars: BTreeSet<Point> = characteristic_points(&s).into_iter().map(|c| c.point).collect();
        let syz: BTreeSet<Point> = syzygy_points(&s).into_iter().collect();
        assert!(syz.is_subset(&chars), "{name}");
        if s.dim() == 3 {
            assert_eq!(syz, chars, "{name}");
        }
    }
    let s = surface("non_syzygy_4d");
    let q = p(&[2, 2, 2, 2]);
    assert!(is_characteristic(&s, &q).unwrap() && !is_syzygy(&s, &q).unwrap());
}

#[test]
fn acceptance() {
    let criteria: [(&str, &str, fn()); 10] = [
        ("A1", "characteristic point that is not a syzygy", a1),
        ("A2", "weakly degenerate surface", a2),
        ("A3", "rigid cp-order that is not a lattice", a3),
        ("A4", "rigid cp-order without the diamond property", a4),
        ("A5", "C4(7) refutations and realizations", a5),
        ("A6", "Scarf property on random generic surfaces", a6),
        ("A7", "4D orthogonal edge census", a7),
        ("A8", "stack, prism, path product, pyramid", a8),
        ("A9", "Schnyder wood round trip", a9),
        ("A10", "syzygy points are characteristic", a10),
    ];
    let mut failed = Vec::new();
    for (id, what, f) in criteria {
        let t = std::time::Instant::now();
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(()) => println!("{id} PASS {what} ({:.2?})", t.elapsed()),
            Err(_) => {
                println!("{id} FAIL {what}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
