//! Property tests: ring laws, engine agreement, duality and functoriality on
//! randomly generated objects.

use hopf_tutte::delta_matroid::{swap_xy, DeltaMatroid};
use hopf_tutte::graph::{Multigraph, VertexPartition};
use hopf_tutte::harness::ribbon_enumeration;
use hopf_tutte::matroid::{tutte_selectors, MatroidPerspective};
use hopf_tutte::minor_system::{alpha, alpha_delcon, Engine, Selector};
use hopf_tutte::poly::{c, Monomial, Polynomial};
use hopf_tutte::ribbon::{br3_via_krushkal, partitioned_br, RibbonGraph};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Polynomial> {
    let term = (-3i64..=3, 0i64..=4, 0i64..=4, 0i64..=2);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        let mut p = Polynomial::zero();
        for (k, x, y, s) in ts {
            p.add_term(
                BigInt::from(k),
                Monomial::from_doubled(&[("x", x), ("y", y), ("s", s)]),
            );
        }
        p
    })
}

fn graph(max_v: usize, max_e: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_v).prop_flat_map(move |v| {
        prop::collection::vec((0..v, 0..v), 0..=max_e)
            .prop_map(move |es| Multigraph::new(v, es).unwrap())
    })
}

/// Each half-edge gets a vertex and a sort key; rotations list half-edges
/// by key.
fn ribbon(max_v: usize, max_e: usize) -> impl Strategy<Value = RibbonGraph> {
    (1..=max_v, 0..=max_e).prop_flat_map(|(v, e)| {
        (
            prop::collection::vec((0..v, any::<u16>()), 2 * e),
            prop::collection::vec(any::<bool>(), e),
        )
            .prop_map(move |(place, sign)| {
                let mut rot = vec![Vec::new(); v];
                let mut keyed: Vec<(usize, u16, usize)> = place
                    .iter()
                    .enumerate()
                    .map(|(h, &(x, k))| (x, k, h))
                    .collect();
                keyed.sort();
                for (x, _, h) in keyed {
                    rot[x].push(h);
                }
                RibbonGraph::from_rotations(rot, sign).unwrap()
            })
    })
}

fn partition_of(g: &RibbonGraph, labels: &[usize]) -> VertexPartition {
    VertexPartition::from_labels(&labels[..g.vertex_count()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn simultaneous_substitution_swaps(p in poly()) {
        let swapped = p.subs(&[("x", Polynomial::var("y")), ("y", Polynomial::var("x"))]).unwrap();
        prop_assert_eq!(p.rename(&[("x", "y"), ("y", "x")]), swapped.clone());
        prop_assert_eq!(swapped.rename(&[("x", "y"), ("y", "x")]), p);
    }

    #[test]
    fn engines_agree_on_graphs(g in graph(4, 5)) {
        let a = Selector::generic::<Multigraph>("x");
        let b = Selector::generic::<Multigraph>("y");
        let reference = alpha(&g, &a, &b, Engine::Delcon).unwrap();
        prop_assert_eq!(alpha(&g, &a, &b, Engine::Bruteforce).unwrap(), reference.clone());
        prop_assert_eq!(alpha(&g, &a, &b, Engine::Statesum).unwrap(), reference);
    }

    #[test]
    fn tutte_by_alpha_and_duality(g in graph(4, 6)) {
        let m = g.cycle_matroid().unwrap();
        let (a, b) = tutte_selectors();
        prop_assert_eq!(alpha_delcon(&m, &a, &b).unwrap(), m.tutte());
        prop_assert_eq!(g.tutte().unwrap(), m.tutte());
        prop_assert_eq!(swap_xy(&m.dual().tutte()), m.tutte());
        let ones = [("x", c(1)), ("y", c(1))];
        // T(1,1) counts bases
        let bases = (0..1u32 << m.len()).filter(|&s| s.count_ones() as i64 == m.full_rank() && m.rank(s) == m.full_rank()).count();
        prop_assert_eq!(m.tutte().subs(&ones).unwrap(), c(bases as i64));
    }

    #[test]
    fn deletion_contraction(g in graph(4, 6)) {
        let m = g.cycle_matroid().unwrap();
        prop_assume!(!m.is_empty());
        let e = m.len() - 1;
        let (d, k) = (m.delete_element(e).tutte(), m.contract_element(e).tutte());
        let expected = if m.is_coloop(e) {
            &k * &Polynomial::var("x")
        } else if m.is_loop(e) {
            &d * &Polynomial::var("y")
        } else {
            &d + &k
        };
        prop_assert_eq!(m.tutte(), expected);
    }

    #[test]
    fn perspective_interpolates(g in graph(4, 5)) {
        let m = g.cycle_matroid().unwrap();
        prop_assume!(!m.is_empty());
        let e = m.len() - 1;
        let p = MatroidPerspective::new(m.delete_element(e), m.contract_element(e)).unwrap();
        let front = p.lv_tutte().subs(&[("z", Polynomial::var("x") - c(1))]).unwrap();
        prop_assert_eq!(front, p.front().tutte());
        prop_assert_eq!(p.dual().dual().lv_tutte(), p.lv_tutte());
    }

    #[test]
    fn ribbon_delta_matroid_is_functorial(g in ribbon(3, 4)) {
        let d = g.delta_matroid().unwrap();
        prop_assert!(DeltaMatroid::new(d.len(), d.feasible().to_vec()).is_ok());
        prop_assert_eq!(g.dual().delta_matroid().unwrap(), d.dual());
        for e in 0..g.edge_count() {
            prop_assert_eq!(g.delete_edge(e).delta_matroid().unwrap(), d.delete_element(e));
            prop_assert_eq!(g.contract_edge(e).delta_matroid().unwrap(), d.contract_element(e));
            prop_assert_eq!(g.petrial(1 << e).delta_matroid().unwrap(), d.loop_complement(e).unwrap());
        }
    }

    #[test]
    fn ribbon_polynomials_agree(g in ribbon(3, 4)) {
        let d = g.delta_matroid().unwrap();
        prop_assert_eq!(g.br2().unwrap(), d.br2().unwrap());
        prop_assert_eq!(g.br2().unwrap(), swap_xy(&g.dual().br2().unwrap()));
        prop_assert_eq!(g.penrose2().unwrap(), d.penrose2().unwrap());
        prop_assert_eq!(g.br3().unwrap(), br3_via_krushkal(&g).unwrap());
    }

    #[test]
    fn euler_genus_is_even_on_orientable(g in ribbon(3, 4)) {
        let all = g.all_edges();
        let p = g.boundary_profile(all);
        prop_assert_eq!(p.v as i64 - g.edge_count() as i64 + p.f as i64, 2 * p.c as i64 - p.gamma);
        if (0..g.edge_count()).all(|e| g.is_positive(e)) {
            prop_assert_eq!(p.gamma % 2, 0);
        }
        prop_assert_eq!(g.canonical().canonical(), g.canonical());
    }

    #[test]
    fn partitioned_polynomial_counts_subsets(g in ribbon(3, 3), labels in prop::collection::vec(0usize..3, 3)) {
        let p = partition_of(&g, &labels);
        let poly = partitioned_br(&g, &p).unwrap();
        prop_assert!(poly.terms().all(|(m, _)| m.exponent("y") >= 0 && m.exponent("z") >= 0));
        // at x = 2, y = z = 1 every subset contributes 1
        let all_one = poly.subs(&[("x", c(2)), ("y", c(1)), ("z", c(1))]).unwrap();
        prop_assert_eq!(all_one, c(1 << g.edge_count()));
    }
}

#[test]
fn enumerated_ribbons_are_canonical_and_distinct() {
    let rs = ribbon_enumeration(2, 2);
    let set: std::collections::HashSet<_> = rs.iter().cloned().collect();
    assert_eq!(set.len(), rs.len());
    assert!(rs.iter().all(|g| g.canonical() == *g));
}
