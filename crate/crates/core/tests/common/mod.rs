#![allow(dead_code)]

use std::path::PathBuf;

use orthosurf::io::{parse, BallDocument, SurfaceDocument, TriangulationDocument};
use orthosurf::poset::Ball;
use orthosurf::schnyder::PlaneTriangulation;
use orthosurf::{OrthoSurface, Point};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixtures_dir() -> PathBuf {
    std::env::var_os("ORTHOSURF_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

fn read(name: &str) -> String {
    let path = fixtures_dir().join(format!("{name}.json"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn surface(name: &str) -> OrthoSurface {
    parse::<SurfaceDocument>(&read(name)).unwrap().to_surface().unwrap()
}

pub fn ball(name: &str) -> Ball {
    parse::<BallDocument>(&read(name)).unwrap().to_ball().unwrap()
}

pub fn triangulation(name: &str) -> PlaneTriangulation {
    parse::<TriangulationDocument>(&read(name)).unwrap().to_triangulation().unwrap()
}

/// Names of all surface fixtures.
pub fn surface_fixtures() -> Vec<String> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(fixtures_dir()).unwrap() {
        let path = e.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        if text.contains("\"orthosurf/surface\"") {
            out.push(path.file_stem().unwrap().to_string_lossy().into_owned());
        }
    }
    out.sort();
    out
}

/// A generic suspended surface with `m` inner vertices: each coordinate is
/// an independent random permutation of `1..=m`, resampled until the inner
/// points form an antichain.
pub fn random_generic(d: usize, m: usize, rng: &mut impl Rng) -> OrthoSurface {
    loop {
        let mut coords = vec![vec![0i64; d]; m];
        for i in 0..d {
            let mut perm: Vec<i64> = (1..=m as i64).collect();
            perm.shuffle(rng);
            for (k, c) in coords.iter_mut().enumerate() {
                c[i] = perm[k];
            }
        }
        if let Ok(s) = OrthoSurface::make_suspended(coords.into_iter().map(Point::new).collect()) {
            return s;
        }
    }
}

pub fn p(c: &[i64]) -> Point {
    Point::new(c.to_vec())
}
