//! Syzygy complexes and their reduced rational homology.
//!
//! Homology is taken over `Q` from exact integer ranks. For `d >= 6` torsion
//! could in principle make integral homology differ; that case is not
//! distinguished here.

use crate::charpoint::generated_points;
use crate::error::{Error, Result};
use crate::point::{ColorSet, Point};
use crate::surface::OrthoSurface;

/// Faces `I` of `Δ_p`: `p + ε·Σ_{i∈I} e_i` lies on the surface.
/// Sorted by `(size, bits)`; contains the empty face for every surface point.
pub fn syzygy_complex(s: &OrthoSurface, p: &Point) -> Result<Vec<ColorSet>> {
    if !s.on_surface(p)? {
        return Err(Error::NotOnSurface);
    }
    let d = s.dim();
    let mut faces: Vec<ColorSet> = (0u32..1 << d)
        .map(ColorSet)
        .filter(|&set| {
            let q2: Vec<i64> = (0..d)
                .map(|j| 2 * p.get(j) + i64::from(set.contains(j)))
                .collect();
            s.contains_doubled(&q2)
        })
        .collect();
    faces.sort_by_key(|f| (f.len(), f.0));
    Ok(faces)
}

/// Reduced Betti numbers `β̃_{-1}, β̃_0, …, β̃_{d-1}` of a simplicial complex
/// on ground set `0..d`, given as a down-closed face list.
pub fn reduced_betti(faces: &[ColorSet], d: usize) -> Vec<usize> {
    // by_dim[k] lists faces with k elements
    let mut by_dim: Vec<Vec<ColorSet>> = vec![Vec::new(); d + 1];
    for &f in faces {
        by_dim[f.len()].push(f);
    }
    // ranks[k]: boundary map from k-element faces to (k-1)-element faces
    let mut ranks = vec![0usize; d + 2];
    for k in 1..=d {
        let rows = &by_dim[k - 1];
        let cols = &by_dim[k];
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (c, &face) in cols.iter().enumerate() {
            for (pos, i) in face.iter().enumerate() {
                let sub = ColorSet(face.0 & !(1 << i));
                if let Some(r) = rows.iter().position(|&x| x == sub) {
                    m[r][c] = if pos % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        ranks[k] = rank(m);
    }
    (0..=d)
        .map(|k| by_dim[k].len() - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect()
}

/// Rank over `Q` by fraction-free elimination.
pub fn rank(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = a * m[i][j] - b * m[r][j];
                }
                let g = m[i].iter().fold(0i64, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `Δ_p` has nontrivial reduced homology.
pub fn is_syzygy(s: &OrthoSurface, p: &Point) -> Result<bool> {
    let faces = syzygy_complex(s, p)?;
    Ok(reduced_betti(&faces, s.dim()).iter().any(|&b| b > 0))
}

/// All syzygy points among the generated points, sorted.
pub fn syzygy_points(s: &OrthoSurface) -> Vec<Point> {
    generated_points(s)
        .into_iter()
        .filter(|p| is_syzygy(s, p).expect("generated points lie on the surface"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(v: &[&[usize]]) -> Vec<ColorSet> {
        v.iter().map(|f| f.iter().copied().collect()).collect()
    }

    #[test]
    fn betti_of_small_complexes() {
        // {∅}: the empty sphere
        assert_eq!(reduced_betti(&sets(&[&[]]), 3), vec![1, 0, 0, 0]);
        // two points
        assert_eq!(reduced_betti(&sets(&[&[], &[0], &[1]]), 3), vec![0, 1, 0, 0]);
        // boundary of a triangle
        let circle = sets(&[&[], &[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(reduced_betti(&circle, 3), vec![0, 0, 1, 0]);
        // full triangle is contractible
        let mut disk = circle.clone();
        disk.push([0, 1, 2].into_iter().collect());
        assert_eq!(reduced_betti(&disk, 3), vec![0; 4]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(vec![vec![1, -1, 0], vec![0, 1, -1], vec![-1, 0, 1]]), 2);
    }

    #[test]
    fn minimum_and_maximum_of_simplex_are_syzygies() {
        let s = OrthoSurface::make_suspended(vec![Point::from([1, 1, 1])]).unwrap();
        assert!(is_syzygy(&s, &Point::from([1, 1, 1])).unwrap());
        assert!(is_syzygy(&s, &Point::from([2, 2, 1])).unwrap());
        // a point on a single ridge of the surface is not
        let t = OrthoSurface::from_points(vec![Point::from([2, 2, 2])]).unwrap();
        assert!(!is_syzygy(&t, &Point::from([2, 2, 3])).unwrap());
    }
}
