//! Polar duality, reflexivity, and the edge invariants `rk L0` and `rho`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{LatticePolytope, RatVec3, Rational, RationalPolytope};

/// `{y : <y, x> >= -1 for all x in p}`, with exact rational vertices.
///
/// Each facet `<n, x> >= -level` contributes the dual vertex `n / level`.
pub fn polar_dual(p: &RationalPolytope) -> Result<RationalPolytope> {
    if !p.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    let vertices: Vec<RatVec3> = p
        .facet_inequalities()
        .into_iter()
        .map(|(n, level)| RatVec3(n.0.map(|c| Rational::from_integer(c) / level)))
        .collect();
    RationalPolytope::from_points(&vertices)
}

pub fn polar_dual_lattice(p: &LatticePolytope) -> Result<RationalPolytope> {
    polar_dual(&RationalPolytope::from(p.clone()))
}

/// Origin in the interior and every facet at lattice distance one.
pub fn is_reflexive(p: &LatticePolytope) -> bool {
    p.facets().iter().all(|f| f.level == 1)
}

/// The polar dual of a reflexive polytope, as a lattice polytope.
///
/// Vertex `i` of the result need not correspond to facet `i` of `p`; use
/// [`LatticePolytope::vertex_index`] on the facet normal.
pub fn reflexive_dual(p: &LatticePolytope) -> Result<LatticePolytope> {
    if !is_reflexive(p) {
        return Err(if p.origin_interior() {
            Error::NotReflexive
        } else {
            Error::OriginNotInterior
        });
    }
    let normals: Vec<_> = p.facets().iter().map(|f| f.normal).collect();
    crate::geom::convex_hull(&normals)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualEdgePair {
    pub edge_id: usize,
    pub dual_edge_id: usize,
    pub l: i64,
    pub l_dual: i64,
}

impl DualEdgePair {
    /// `l*(edge) l*(dual edge)`.
    pub fn l0_term(&self) -> i64 {
        (self.l - 2) * (self.l_dual - 2)
    }
}

/// Pairs each edge with the dual edge joining the duals of its two facets.
pub fn dual_edge_pairing(p: &LatticePolytope) -> Result<Vec<DualEdgePair>> {
    let dual = reflexive_dual(p)?;
    pairing_with(p, &dual)
}

fn pairing_with(p: &LatticePolytope, dual: &LatticePolytope) -> Result<Vec<DualEdgePair>> {
    let mut used = vec![false; dual.edges().len()];
    let mut pairs = Vec::with_capacity(p.edges().len());
    for (edge_id, e) in p.edges().iter().enumerate() {
        let [n1, n2] = e.incident_facets.map(|f| p.facets()[f].normal);
        let dual_edge_id = match (dual.vertex_index(&n1), dual.vertex_index(&n2)) {
            (Some(a), Some(b)) => dual.edge_between(a, b),
            _ => None,
        }
        .ok_or(Error::PairingFailure(n1, n2))?;
        if std::mem::replace(&mut used[dual_edge_id], true) {
            return Err(Error::PairingFailure(n1, n2));
        }
        pairs.push(DualEdgePair {
            edge_id,
            dual_edge_id,
            l: p.edge_point_count(e),
            l_dual: dual.edge_point_count(&dual.edges()[dual_edge_id]),
        });
    }
    if used.iter().any(|u| !u) {
        let missing = dual.edges()[used.iter().position(|u| !u).unwrap()];
        let (a, b) = dual.edge_segment(&missing);
        return Err(Error::PairingFailure(a, b));
    }
    Ok(pairs)
}

/// `sum over edges of l*(edge) l*(dual edge)`.
pub fn rk_l0(p: &LatticePolytope) -> Result<i64> {
    Ok(dual_edge_pairing(p)?
        .iter()
        .map(DualEdgePair::l0_term)
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoReport {
    /// `l(dual) - 4 - sum of facet-interior points of the dual + rk L0`.
    pub rho: i64,
    /// `sum over edges of l(dual edge) - 3`, evaluated literally.
    pub printed_formula_sum: i64,
    pub l_dual_total: i64,
    pub dual_lattice_points: i64,
    pub dual_facet_interior_points: i64,
    pub rk_l0: i64,
}

/// Picard number of a generic anticanonical K3 in the toric variety of `p`.
///
/// The count runs over lattice points of the polar dual: all of them, minus
/// the origin and three for the rank of the torus characters, minus the ones
/// interior to facets (those divisors miss a generic member), plus the
/// correction from edges where both sides carry interior points.
pub fn picard_rho(p: &LatticePolytope) -> Result<RhoReport> {
    let dual = reflexive_dual(p)?;
    let pairs = pairing_with(p, &dual)?;
    let rk_l0: i64 = pairs.iter().map(DualEdgePair::l0_term).sum();
    let l_dual_total: i64 = pairs.iter().map(|pr| pr.l_dual).sum();

    let points = dual.lattice_points();
    // a point on exactly one facet plane is in that facet's relative interior
    let facet_interior = points
        .iter()
        .filter(|q| dual.facets().iter().filter(|f| f.on_plane(q)).count() == 1)
        .count() as i64;
    let dual_lattice_points = points.len() as i64;

    Ok(RhoReport {
        rho: dual_lattice_points - 4 - facet_interior + rk_l0,
        printed_formula_sum: l_dual_total - 3,
        l_dual_total,
        dual_lattice_points,
        dual_facet_interior_points: facet_interior,
        rk_l0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull;
    use crate::geom::tests::{cube, octahedron, pts};

    fn p3_simplex() -> LatticePolytope {
        convex_hull(&pts(&[[-1, -1, -1], [3, -1, -1], [-1, 3, -1], [-1, -1, 3]])).unwrap()
    }

    fn scaled_octahedron(k: i64) -> LatticePolytope {
        convex_hull(&pts(&[
            [k, 0, 0],
            [-k, 0, 0],
            [0, k, 0],
            [0, -k, 0],
            [0, 0, k],
            [0, 0, -k],
        ]))
        .unwrap()
    }

    #[test]
    fn octahedron_dual_is_cube() {
        let d = polar_dual_lattice(&octahedron()).unwrap();
        assert_eq!(d.to_lattice().unwrap(), cube());
    }

    #[test]
    fn scaled_dual_is_rational() {
        let d = polar_dual_lattice(&scaled_octahedron(2)).unwrap();
        assert!(!d.is_integral());
        let h = Rational::new(1, 2);
        assert!(d.vertices().contains(&RatVec3([h, h, h])));
        assert_eq!(d.vertices().len(), 8);
        // and back again
        let dd = polar_dual(&d).unwrap();
        assert_eq!(dd.to_lattice().unwrap(), scaled_octahedron(2));
    }

    #[test]
    fn z10_prime_dual_matches_printed_vertices() {
        let dp = convex_hull(&pts(&[
            [0, 2, -1],
            [-1, 1, -1],
            [-1, -1, -1],
            [5, -1, -1],
            [4, 0, -1],
            [1, 0, 0],
            [-1, -1, 1],
        ]))
        .unwrap();
        let d = reflexive_dual(&dp).unwrap();
        let expected = convex_hull(&pts(&[
            [0, 0, 1],
            [-1, -2, -3],
            [-1, -3, -5],
            [1, -1, -1],
            [1, 0, 0],
            [0, 1, 0],
            [-1, -1, -3],
        ]))
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn origin_must_be_interior() {
        let s = convex_hull(&pts(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert_eq!(polar_dual_lattice(&s), Err(Error::OriginNotInterior));
        assert!(!is_reflexive(&s));
        assert_eq!(rk_l0(&s), Err(Error::OriginNotInterior));
    }

    #[test]
    fn reflexivity() {
        assert!(is_reflexive(&octahedron()));
        assert!(is_reflexive(&cube()));
        assert!(!is_reflexive(&scaled_octahedron(2)));
        assert_eq!(rk_l0(&scaled_octahedron(2)), Err(Error::NotReflexive));
    }

    #[test]
    fn octahedron_pairing() {
        let pairs = dual_edge_pairing(&octahedron()).unwrap();
        assert_eq!(pairs.len(), 12);
        assert!(pairs.iter().all(|p| p.l == 2 && p.l_dual == 3));
    }

    #[test]
    fn simplex_pairing() {
        let pairs = dual_edge_pairing(&p3_simplex()).unwrap();
        assert_eq!(pairs.len(), 6);
        assert!(pairs.iter().all(|p| p.l == 5 && p.l_dual == 2));
        let dual = reflexive_dual(&p3_simplex()).unwrap();
        assert_eq!(
            dual,
            convex_hull(&pts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]])).unwrap()
        );
    }

    #[test]
    fn l0_examples() {
        assert_eq!(rk_l0(&p3_simplex()), Ok(0));
        assert_eq!(rk_l0(&cube()), Ok(0));
        assert_eq!(rk_l0(&octahedron()), Ok(0));
    }

    #[test]
    fn rho_of_p3_is_one() {
        let r = picard_rho(&p3_simplex()).unwrap();
        assert_eq!(r.dual_lattice_points, 5);
        assert_eq!(r.dual_facet_interior_points, 0);
        assert_eq!(r.rho, 1);
        assert_eq!(r.l_dual_total, 12);
        assert_eq!(r.printed_formula_sum, 9);
    }

    #[test]
    fn rho_of_octahedron_and_cube() {
        // P1xP1xP1 from the octahedron: dual cube has 27 points, 6 facet centres
        let r = picard_rho(&octahedron()).unwrap();
        assert_eq!(
            (r.dual_lattice_points, r.dual_facet_interior_points, r.rho),
            (27, 6, 17)
        );
        let r = picard_rho(&cube()).unwrap();
        assert_eq!(
            (r.dual_lattice_points, r.dual_facet_interior_points, r.rho),
            (7, 0, 3)
        );
    }

    #[test]
    fn pairing_rejects_mismatched_dual() {
        // the octahedron's facet normals are not vertices of the octahedron
        let o = octahedron();
        assert!(matches!(
            pairing_with(&o, &o),
            Err(Error::PairingFailure(..))
        ));
    }
}
