#![allow(dead_code)]

use std::path::PathBuf;

use polydual::{convex_hull, load_scenario, IntMat3, IntVec3, LatticePolytope, PairScenario};
use rand::Rng;

pub const SCENARIOS: [&str; 4] = ["z10", "u10", "q17", "w10"];

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(format!("{name}.json"))
}

pub fn scenario(name: &str) -> PairScenario {
    load_scenario(scenario_path(name)).unwrap()
}

/// The eight bundled polytopes, Δ then Δ' for each scenario.
pub fn bundled_polytopes() -> Vec<(String, LatticePolytope)> {
    let mut out = Vec::new();
    for name in SCENARIOS {
        let s = scenario(name);
        out.push((
            format!("{name} delta"),
            convex_hull(&s.delta_vertices).unwrap(),
        ));
        out.push((
            format!("{name} delta'"),
            convex_hull(&s.delta_prime_vertices).unwrap(),
        ));
    }
    out
}

pub fn v(x: i64, y: i64, z: i64) -> IntVec3 {
    IntVec3::new(x, y, z)
}

/// Rejection-sampled matrix with entries in `[-r, r]` and determinant ±1.
pub fn random_unimodular(rng: &mut impl Rng, r: i64) -> IntMat3 {
    loop {
        let m = IntMat3::from_rows([(); 3].map(|_| {
            v(
                rng.gen_range(-r..=r),
                rng.gen_range(-r..=r),
                rng.gen_range(-r..=r),
            )
        }));
        if m.is_unimodular() {
            return m;
        }
    }
}

/// Points of the segment found by scanning its bounding box.
pub fn brute_segment_count(a: &IntVec3, b: &IntVec3) -> i64 {
    let d = *b - *a;
    let mut n = 0;
    for x in a.x().min(b.x())..=a.x().max(b.x()) {
        for y in a.y().min(b.y())..=a.y().max(b.y()) {
            for z in a.z().min(b.z())..=a.z().max(b.z()) {
                if (v(x, y, z) - *a).cross(&d).is_zero() {
                    n += 1;
                }
            }
        }
    }
    n
}

/// Lattice points by bounding-box scan, testing membership by whether adding
/// the point changes the vertex set of the hull.
pub fn brute_lattice_points(p: &LatticePolytope) -> Vec<IntVec3> {
    let vs = p.vertices();
    let lo = [0, 1, 2].map(|i| vs.iter().map(|q| q.0[i]).min().unwrap());
    let hi = [0, 1, 2].map(|i| vs.iter().map(|q| q.0[i]).max().unwrap());
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                let q = v(x, y, z);
                let mut pts = vs.to_vec();
                pts.push(q);
                if convex_hull(&pts).unwrap().vertices() == vs {
                    out.push(q);
                }
            }
        }
    }
    out
}
