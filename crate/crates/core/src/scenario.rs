//! Pair scenarios: one transpose-dual pair with its compactifications,
//! lattice bases and polytopes, and the checks run against it.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::duality::{is_reflexive, picard_rho, reflexive_dual, rk_l0};
use crate::error::{Error, Result};
use crate::geom::{convex_hull, LatticePolytope};
use crate::iso::{find_iso, verify_iso, Convention, IsoMatch, IsoWitness};
use crate::linalg::{sublattice_index, IntMat3, IntVec3, IntVec4};
use crate::poly::{
    check_quasihomogeneous, newton_points, parse_polynomial, AmbientBasis, Polynomial, WeightSystem,
};

/// The machine-readable form of one row of the pair tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct PairScenario {
    pub name_B: String,
    pub name_Bprime: String,
    pub weights: WeightSystem,
    pub weights_prime: WeightSystem,
    pub poly_F: String,
    pub poly_Fprime: String,
    pub basis: [IntVec4; 3],
    pub basis_prime: [IntVec4; 3],
    pub delta_vertices: Vec<IntVec3>,
    pub delta_prime_vertices: Vec<IntVec3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_matrix: Option<IntMat3>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_rho: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_rho_prime: Option<i64>,
}

fn invalid(field: &str, message: impl fmt::Display) -> Error {
    Error::Scenario {
        field: field.to_string(),
        message: message.to_string(),
    }
}

impl PairScenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let s: PairScenario = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            invalid(&path, e.into_inner())
        })?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.delta_vertices.is_empty() {
            return Err(invalid("delta_vertices", "must not be empty"));
        }
        if self.delta_prime_vertices.is_empty() {
            return Err(invalid("delta_prime_vertices", "must not be empty"));
        }
        AmbientBasis::new(self.basis, &self.weights).map_err(|e| invalid("basis", e))?;
        AmbientBasis::new(self.basis_prime, &self.weights_prime)
            .map_err(|e| invalid("basis_prime", e))?;
        let f = parse_polynomial(&self.poly_F).map_err(|e| invalid("poly_F", e))?;
        check_quasihomogeneous(&f, &self.weights).map_err(|e| invalid("poly_F", e))?;
        let fprime = parse_polynomial(&self.poly_Fprime).map_err(|e| invalid("poly_Fprime", e))?;
        check_quasihomogeneous(&fprime, &self.weights_prime)
            .map_err(|e| invalid("poly_Fprime", e))?;
        Ok(())
    }

    pub fn title(&self) -> String {
        format!("({}, {})", self.name_B, self.name_Bprime)
    }

    pub fn polynomial_f(&self) -> Result<Polynomial> {
        parse_polynomial(&self.poly_F)
    }

    pub fn polynomial_fprime(&self) -> Result<Polynomial> {
        parse_polynomial(&self.poly_Fprime)
    }

    pub fn ambient_basis(&self) -> Result<AmbientBasis> {
        AmbientBasis::new(self.basis, &self.weights)
    }

    pub fn ambient_basis_prime(&self) -> Result<AmbientBasis> {
        AmbientBasis::new(self.basis_prime, &self.weights_prime)
    }

    pub fn newton_points_f(&self) -> Result<Vec<IntVec3>> {
        newton_points(&self.polynomial_f()?, &self.weights, &self.ambient_basis()?)
    }

    pub fn newton_points_fprime(&self) -> Result<Vec<IntVec3>> {
        newton_points(
            &self.polynomial_fprime()?,
            &self.weights_prime,
            &self.ambient_basis_prime()?,
        )
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<PairScenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    PairScenario::from_json(&text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessSource {
    Expected,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoOutcome {
    pub matrix: IntMat3,
    pub matches: IsoMatch,
    pub source: WitnessSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub checks: Vec<CheckResult>,
    pub iso: Option<IsoOutcome>,
    pub newton_points_f: Vec<IntVec3>,
    pub newton_points_fprime: Vec<IntVec3>,
    /// Index of each basis span in the weight kernel lattice.
    pub basis_index: Option<i64>,
    pub basis_prime_index: Option<i64>,
    pub rk_l0: Option<i64>,
    pub rk_l0_prime: Option<i64>,
    pub rho: Option<i64>,
    pub rho_dual: Option<i64>,
    pub printed_formula_sum: Option<i64>,
    pub printed_formula_sum_dual: Option<i64>,
    pub passed: bool,
}

impl ScenarioReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.scenario)?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        if let (Some(a), Some(b)) = (self.basis_index, self.basis_prime_index) {
            writeln!(f, "       basis index in the weight kernel: {a} / {b}")?;
        }
        if let (Some(a), Some(b)) = (self.printed_formula_sum, self.printed_formula_sum_dual) {
            writeln!(
                f,
                "       literal edge sum l(dual edges) - 3: {a} / {b} (informational)"
            )?;
        }
        write!(f, "overall: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.0.push(CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    fn fail(&mut self, name: &str, detail: impl Into<String>) {
        self.push(name, false, detail);
    }
}

fn hull_check(checks: &mut Checks, name: &str, listed: &[IntVec3]) -> Option<LatticePolytope> {
    match convex_hull(listed) {
        Ok(p) => {
            let mut sorted = listed.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            let minimal = sorted == p.vertices();
            let (v, e, fc) = p.f_vector();
            let detail = if minimal {
                format!("f-vector ({v},{e},{fc})")
            } else {
                format!(
                    "listed {} points but the hull has {v} vertices",
                    sorted.len()
                )
            };
            checks.push(name, minimal, detail);
            Some(p)
        }
        Err(e) => {
            checks.fail(name, e.to_string());
            None
        }
    }
}

fn reflexive_check(
    checks: &mut Checks,
    name: &str,
    p: Option<&LatticePolytope>,
) -> Option<LatticePolytope> {
    let p = p?;
    let reflexive = is_reflexive(p);
    let detail = if reflexive {
        "all facets at lattice distance 1".to_string()
    } else if !p.origin_interior() {
        "origin is not interior".to_string()
    } else {
        let bad: Vec<String> = p
            .facets()
            .iter()
            .filter(|f| f.level != 1)
            .map(|f| format!("{} at distance {}", f.normal, f.level))
            .collect();
        format!("facets off distance 1: {}", bad.join(", "))
    };
    checks.push(name, reflexive, detail);
    reflexive.then(|| p.clone())
}

fn iso_check(
    checks: &mut Checks,
    delta: Option<&LatticePolytope>,
    prime_dual: Option<&LatticePolytope>,
    expected: Option<IntMat3>,
) -> Option<IsoOutcome> {
    let (Some(p), Some(q)) = (delta, prime_dual) else {
        checks.fail("iso", "needs both polytopes reflexive");
        return None;
    };
    let outcome = match expected {
        Some(m) => IsoOutcome {
            matrix: m,
            matches: verify_iso(p, q, &m),
            source: WitnessSource::Expected,
        },
        None => match find_iso(p, q) {
            Some(w) => IsoOutcome {
                matrix: w.matrix,
                matches: verify_iso(p, q, &w.matrix),
                source: WitnessSource::Search,
            },
            None => {
                checks.fail(
                    "iso",
                    "no unimodular map from delta onto the dual of delta'",
                );
                return None;
            }
        },
    };
    let detail = match outcome.source {
        WitnessSource::Expected => format!("given matrix, convention: {}", outcome.matches),
        WitnessSource::Search => format!("found matrix, convention: {}", outcome.matches),
    };
    checks.push("iso", outcome.matches.holds(), detail);
    Some(outcome)
}

fn containment_check(
    checks: &mut Checks,
    name: &str,
    points: Result<Vec<IntVec3>>,
    target: Option<&LatticePolytope>,
) -> Vec<IntVec3> {
    let points = match points {
        Ok(p) => p,
        Err(e) => {
            checks.fail(name, e.to_string());
            return Vec::new();
        }
    };
    let Some(target) = target else {
        checks.fail(name, "polytope unavailable");
        return points;
    };
    let outside: Vec<String> = points
        .iter()
        .filter(|q| !target.contains_lattice_point(q))
        .map(|q| q.to_string())
        .collect();
    let detail = if outside.is_empty() {
        format!("{} monomial points inside", points.len())
    } else {
        format!("outside: {}", outside.join(" "))
    };
    checks.push(name, outside.is_empty(), detail);
    points
}

fn l0_check(checks: &mut Checks, name: &str, p: Option<&LatticePolytope>) -> Option<i64> {
    let Some(p) = p else {
        checks.fail(name, "needs a reflexive polytope");
        return None;
    };
    match rk_l0(p) {
        Ok(v) => {
            checks.push(name, v == 0, format!("rk L0 = {v}"));
            Some(v)
        }
        Err(e) => {
            checks.fail(name, e.to_string());
            None
        }
    }
}

fn rho_check(
    checks: &mut Checks,
    name: &str,
    p: Option<&LatticePolytope>,
    expected: Option<i64>,
) -> Option<(i64, i64)> {
    let Some(p) = p else {
        checks.fail(name, "needs a reflexive polytope");
        return None;
    };
    match picard_rho(p) {
        Ok(r) => {
            let passed = expected.is_none_or(|e| e == r.rho);
            let detail = match expected {
                Some(e) => format!("rho = {} (expected {e})", r.rho),
                None => format!("rho = {} (no expected value)", r.rho),
            };
            checks.push(name, passed, detail);
            Some((r.rho, r.printed_formula_sum))
        }
        Err(e) => {
            checks.fail(name, e.to_string());
            None
        }
    }
}

/// Runs every check in order; failures become report entries.
pub fn run_checks(s: &PairScenario) -> ScenarioReport {
    let mut checks = Checks(Vec::new());

    let delta = hull_check(&mut checks, "hull_delta", &s.delta_vertices);
    let delta_prime = hull_check(&mut checks, "hull_delta_prime", &s.delta_prime_vertices);
    let delta_r = reflexive_check(&mut checks, "reflexive_delta", delta.as_ref());
    let delta_prime_r = reflexive_check(&mut checks, "reflexive_delta_prime", delta_prime.as_ref());

    let prime_dual = delta_prime_r.as_ref().and_then(|p| reflexive_dual(p).ok());
    let iso = iso_check(
        &mut checks,
        delta_r.as_ref(),
        prime_dual.as_ref(),
        s.expected_matrix,
    );

    let newton_points_f =
        containment_check(&mut checks, "newton_F", s.newton_points_f(), delta.as_ref());
    let newton_points_fprime = containment_check(
        &mut checks,
        "newton_Fprime",
        s.newton_points_fprime(),
        delta_prime.as_ref(),
    );

    let rk_l0 = l0_check(&mut checks, "l0_delta", delta_r.as_ref());
    let rk_l0_prime = l0_check(&mut checks, "l0_delta_prime", delta_prime_r.as_ref());

    let delta_dual = delta_r.as_ref().and_then(|p| reflexive_dual(p).ok());
    let rho = rho_check(&mut checks, "rho_delta", delta_r.as_ref(), s.expected_rho);
    let rho_dual = rho_check(
        &mut checks,
        "rho_delta_dual",
        delta_dual.as_ref(),
        s.expected_rho_prime,
    );
    match (rho, rho_dual) {
        (Some((a, _)), Some((b, _))) => {
            checks.push("rho_sum_20", a + b == 20, format!("{a} + {b} = {}", a + b));
        }
        _ => checks.fail("rho_sum_20", "rho unavailable"),
    }

    let passed = checks.0.iter().all(|c| c.passed);
    ScenarioReport {
        scenario: s.title(),
        checks: checks.0,
        iso,
        newton_points_f,
        newton_points_fprime,
        basis_index: sublattice_index(&s.basis, &s.weights).ok(),
        basis_prime_index: sublattice_index(&s.basis_prime, &s.weights_prime).ok(),
        rk_l0,
        rk_l0_prime,
        rho: rho.map(|r| r.0),
        rho_dual: rho_dual.map(|r| r.0),
        printed_formula_sum: rho.map(|r| r.1),
        printed_formula_sum_dual: rho_dual.map(|r| r.1),
        passed,
    }
}

/// Newton data of a scenario in the coordinates the search works in:
/// `F` in the coordinates of delta, `F'` carried into the dual lattice of
/// delta through the isomorphism `delta -> dual(delta')`.
pub fn search_inputs(s: &PairScenario) -> Result<(Vec<IntVec3>, Vec<IntVec3>)> {
    let f = s.newton_points_f()?;
    let fprime = s.newton_points_fprime()?;
    let delta = convex_hull(&s.delta_vertices)?;
    let prime_dual = reflexive_dual(&convex_hull(&s.delta_prime_vertices)?)?;
    let witness = s
        .expected_matrix
        .and_then(|m| {
            verify_iso(&delta, &prime_dual, &m)
                .convention()
                .map(|c| IsoWitness {
                    matrix: m,
                    convention: c,
                })
        })
        .or_else(|| find_iso(&delta, &prime_dual))
        .ok_or_else(|| {
            invalid(
                "expected_matrix",
                "no isomorphism from delta onto the dual of delta'",
            )
        })?;
    let to_dual = IsoWitness {
        matrix: witness.dual_row_matrix(),
        convention: Convention::Row,
    };
    Ok((f, fprime.iter().map(|z| to_dual.apply(z)).collect()))
}
