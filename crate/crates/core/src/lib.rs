//! Exact toolkit for three-dimensional lattice polytopes: convex hulls with
//! face lattices, polar duality and reflexivity, the edge invariants `rk L0`
//! and the Picard number of generic anticanonical K3 surfaces, unimodular
//! equivalence, Newton point sets of weighted-homogeneous polynomials, and a
//! bounded search for reflexive polytopes sandwiched between two Newton
//! polytopes.

pub mod cli;
pub mod duality;
pub mod error;
pub mod format;
pub mod geom;
pub mod iso;
pub mod linalg;
pub mod poly;
pub mod scenario;
pub mod search;

pub use duality::{
    dual_edge_pairing, is_reflexive, picard_rho, polar_dual, polar_dual_lattice, reflexive_dual,
    rk_l0, DualEdgePair, RhoReport,
};
pub use error::{Error, Result};
pub use geom::{
    convex_hull, segment_point_count, Edge, Facet, LatticePolytope, RatVec3, Rational,
    RationalPolytope,
};
pub use iso::{
    apply_unimodular, find_iso, verify_iso, Convention, InvariantKey, IsoMatch, IsoWitness,
};
pub use linalg::{
    coords_in_basis, det3, gcd_all, primitive, sublattice_index, IntMat3, IntVec3, IntVec4,
};
pub use poly::{
    check_quasihomogeneous, monomial_to_point, newton_points, parse_polynomial, AmbientBasis,
    Monomial, Polynomial, WeightSystem,
};
pub use scenario::{
    load_scenario, run_checks, search_inputs, CheckResult, PairScenario, ScenarioReport,
};
pub use search::{candidate_region, search, SearchConfig, SearchResult, Solution};
