//! The Las Vergnas polynomial of a cellularly embedded graph, taken as the
//! perspective Tutte polynomial of `B(G*) → C(G)`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::VertexPartition;
use crate::matroid::MatroidPerspective;
use crate::poly::{c, v, Binding, Monomial, Polynomial};
use crate::ribbon::{CellularGraph, RibbonGraph};

/// A ribbon graph with its derived perspective `B(G*) → C(G)`.
#[derive(Clone, Debug)]
pub struct EmbeddedPerspective {
    pub source: RibbonGraph,
    pub perspective: MatroidPerspective,
}

impl EmbeddedPerspective {
    pub fn new(g: &RibbonGraph) -> Result<Self> {
        let bond = g.dual().underlying_graph().bond_matroid()?;
        let cycle = g.underlying_graph().cycle_matroid()?;
        Ok(EmbeddedPerspective {
            source: g.clone(),
            perspective: MatroidPerspective::new(bond, cycle)?,
        })
    }
}

/// `L_G(x, y, z)`.
pub fn lv_of_ribbon(g: &RibbonGraph) -> Result<Polynomial> {
    Ok(EmbeddedPerspective::new(g)?.perspective.lv_tutte())
}

/// `z^{n(G)−κ(G)} L_{G*}(y, x, 1/z)`, to be compared with `L_G`.
pub fn lv_dual_side(g: &RibbonGraph) -> Result<Polynomial> {
    let d = g.dual();
    let ug = g.underlying_graph();
    let all = g.all_edges();
    let (kappa, _, _) = g.kappa_sperp(all);
    let swapped = lv_of_ribbon(&d)?
        .subs(&[("x", v("y")), ("y", v("x"))])?
        .invert_var("z");
    Ok(swapped.mul_monomial(&Monomial::new(&[("z", ug.nullity(all) - kappa)])))
}

/// `T_G(x, y)` recovered as `(y−1)^{n(G)−κ(G)} L_G(x, y, 1/(y−1))`.
pub fn lv_projection(g: &RibbonGraph) -> Result<Polynomial> {
    let all = g.all_edges();
    let (kappa, _, _) = g.kappa_sperp(all);
    let k = g.underlying_graph().nullity(all) - kappa;
    lv_of_ribbon(g)?.homogenize("z", k, &(v("y") - c(1)))
}

/// Both sides of `L_G(x, y, z) = z^{(s(E)−s⊥(E))/2} K(x−1, y−1, 1/z, z)`.
pub fn lv_krushkal_sides(g: &RibbonGraph) -> Result<(Polynomial, Polynomial)> {
    let lhs = lv_of_ribbon(g)?;
    let cg = CellularGraph::cellular(g.clone(), VertexPartition::singletons(g.vertex_count()))?;
    let k = cg.krushkal()?;
    let (_, s, sp) = g.kappa_sperp(g.all_edges());
    let b: BTreeMap<String, Binding> = [
        ("x".to_string(), Binding::Poly(v("x") - c(1))),
        ("y".to_string(), Binding::Poly(v("y") - c(1))),
    ]
    .into_iter()
    .collect();
    let rhs = k
        .map_monomial("a", &Monomial::new(&[("z", -1)]))?
        .map_monomial("b", &Monomial::new(&[("z", 1)]))?
        .substitute(&b)?
        .mul_monomial(&Monomial::from_doubled(&[("z", s - sp)]));
    Ok((lhs, rhs))
}

/// `true` when the Las Vergnas / Krushkal relation holds on `g`.
pub fn lv_krushkal_check(g: &RibbonGraph) -> Result<bool> {
    let (l, r) = lv_krushkal_sides(g)?;
    Ok(l == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ribbon::enumerate_rotation_systems;
    use crate::ribbon::named::*;

    fn corpus() -> Vec<RibbonGraph> {
        let mut out = vec![theta(), triangle(), torus_loops(), RibbonGraph::edgeless(1)];
        for nv in 1..=2 {
            for e in 0..=2 {
                out.extend(enumerate_rotation_systems(nv, e));
            }
        }
        out
    }

    #[test]
    fn plane_triangle_is_tutte() {
        let t = v("x").pow(2) + v("x") + v("y");
        assert_eq!(lv_of_ribbon(&triangle()).unwrap(), t);
        assert_eq!(lv_of_ribbon(&RibbonGraph::edgeless(1)).unwrap(), c(1));
    }

    #[test]
    fn torus_by_subset_expansion() {
        // One vertex and one face: r and κ vanish, so A contributes z^{|E|−|A|}.
        let expected = v("z").pow(2) + c(2) * v("z") + c(1);
        assert_eq!(lv_of_ribbon(&torus_loops()).unwrap(), expected);
    }

    #[test]
    fn duality_projection_and_krushkal() {
        for g in corpus() {
            assert_eq!(
                lv_of_ribbon(&g).unwrap(),
                lv_dual_side(&g).unwrap(),
                "{g:?}"
            );
            assert_eq!(
                lv_projection(&g).unwrap(),
                g.underlying_graph().tutte().unwrap(),
                "{g:?}"
            );
            assert!(lv_krushkal_check(&g).unwrap(), "{g:?}");
        }
    }
}
