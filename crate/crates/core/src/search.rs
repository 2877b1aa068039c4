//! Search for reflexive `D` with `hull(F) ⊆ D` and `hull(F') ⊆ D*`.
//!
//! For reflexive `D`, `hull(F') ⊆ D*` is the same as `D ⊆ hull(F')*`, so every
//! vertex of a solution is a lattice point of the rational polytope
//! `hull(F')*`. The search grows hulls from `hull(F)` one candidate point at
//! a time, breadth first, testing each distinct hull once.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::duality::{
    is_reflexive, picard_rho, polar_dual_lattice, reflexive_dual, rk_l0, RhoReport,
};
use crate::error::{Error, Result};
use crate::geom::{convex_hull, LatticePolytope, RationalPolytope};
use crate::iso::InvariantKey;
use crate::linalg::IntVec3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Maximum number of distinct hulls examined.
    pub max_candidates: usize,
    pub require_l0_zero: bool,
    pub dedupe: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_candidates: 1_000_000,
            require_l0_zero: false,
            dedupe: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub polytope: LatticePolytope,
    pub rk_l0: i64,
    pub rho: RhoReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub polytopes: Vec<Solution>,
    /// True iff the whole candidate space was enumerated within budget.
    pub exhausted: bool,
    pub examined: usize,
}

/// `hull(F')*`; fails unless the origin is interior to `hull(F')`.
fn outer_bound(fprime: &[IntVec3]) -> Result<RationalPolytope> {
    let inner = convex_hull(fprime)?;
    polar_dual_lattice(&inner)
}

/// Lattice points of `hull(F')*` that lie outside `hull(F)`, sorted.
pub fn candidate_region(f: &[IntVec3], fprime: &[IntVec3]) -> Result<Vec<IntVec3>> {
    let bound = outer_bound(fprime)?;
    let start = convex_hull(f)?;
    if !f.iter().all(|p| bound.contains_lattice_point(p)) {
        return Err(Error::EmptyRegion);
    }
    Ok(bound
        .lattice_points()
        .into_iter()
        .filter(|p| !start.contains_lattice_point(p))
        .collect())
}

fn accepts(
    p: &LatticePolytope,
    fprime_hull: &LatticePolytope,
    cfg: &SearchConfig,
) -> Result<Option<Solution>> {
    if !is_reflexive(p) {
        return Ok(None);
    }
    if !reflexive_dual(p)?.contains_polytope(fprime_hull) {
        return Ok(None);
    }
    let l0 = rk_l0(p)?;
    if cfg.require_l0_zero && l0 != 0 {
        return Ok(None);
    }
    Ok(Some(Solution {
        polytope: p.clone(),
        rk_l0: l0,
        rho: picard_rho(p)?,
    }))
}

pub fn search(f: &[IntVec3], fprime: &[IntVec3], cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.max_candidates == 0 {
        return Err(Error::ZeroBudget);
    }
    let region = candidate_region(f, fprime)?;
    let fprime_hull = convex_hull(fprime)?;
    let start = convex_hull(f)?;

    let mut seen_vertices: HashSet<Vec<IntVec3>> = HashSet::new();
    let mut seen_keys: HashSet<InvariantKey> = HashSet::new();
    let mut frontier: VecDeque<LatticePolytope> = VecDeque::new();
    let mut found = Vec::new();
    let mut examined = 0usize;

    let mut visit = |p: LatticePolytope,
                     frontier: &mut VecDeque<LatticePolytope>,
                     found: &mut Vec<Solution>,
                     examined: &mut usize|
     -> Result<bool> {
        if !seen_vertices.insert(p.vertices().to_vec()) {
            return Ok(true);
        }
        if cfg.dedupe && !seen_keys.insert(InvariantKey::of(&p)) {
            return Ok(true);
        }
        if *examined == cfg.max_candidates {
            return Ok(false);
        }
        *examined += 1;
        if let Some(s) = accepts(&p, &fprime_hull, cfg)? {
            found.push(s);
        }
        frontier.push_back(p);
        Ok(true)
    };

    let mut within_budget = visit(start, &mut frontier, &mut found, &mut examined)?;
    'bfs: while let Some(current) = frontier.pop_front() {
        for c in &region {
            if current.contains_lattice_point(c) {
                continue;
            }
            let mut pts = current.vertices().to_vec();
            pts.push(*c);
            let grown = convex_hull(&pts)?;
            if !visit(grown, &mut frontier, &mut found, &mut examined)? {
                within_budget = false;
                break 'bfs;
            }
        }
    }

    Ok(SearchResult {
        polytopes: found,
        exhausted: within_budget && frontier.is_empty(),
        examined,
    })
}
