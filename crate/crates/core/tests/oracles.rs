//! Independent oracles in test code, cross-checked against the library and
//! frozen on small named objects.

use std::collections::BTreeMap;

use hopf_tutte::graph::Multigraph;
use hopf_tutte::harness::{proper_edge_colourings, random_ribbons, ribbon_enumeration};
use hopf_tutte::poly::{c, v, Polynomial};
use hopf_tutte::ribbon::{named, RibbonGraph};
use num_bigint::BigInt;
use num_rational::BigRational;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Number of connected components of `(vertices, edges in mask)`.
fn components(vertices: usize, edges: &[(usize, usize)], mask: u32) -> i64 {
    let mut parent: Vec<usize> = (0..vertices).collect();
    let mut count = vertices as i64;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
    }
    count
}

/// Tutte polynomial by the rank-nullity subset expansion.
fn tutte_oracle(vertices: usize, edges: &[(usize, usize)]) -> Polynomial {
    let full = (1u32 << edges.len()) - 1;
    let k_e = components(vertices, edges, full);
    let mut t = Polynomial::zero();
    for a in 0..=full {
        let k = components(vertices, edges, a);
        let r_gap = (k - k_e) as u32;
        let nullity = (a.count_ones() as i64 - (vertices as i64 - k)) as u32;
        t = &t + &(&(v("x") - c(1)).pow(r_gap) * &(v("y") - c(1)).pow(nullity));
    }
    t
}

/// Orientable ribbon graph as a rotation list over half-edges `2e, 2e+1`.
struct Map {
    rot: Vec<Vec<usize>>,
}

impl Map {
    fn edges(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn vertex_of(&self, h: usize) -> usize {
        self.rot.iter().position(|r| r.contains(&h)).unwrap()
    }

    /// Faces of the spanning sub-map on `mask`: orbits of `σ_A ∘ α`, plus
    /// one face per vertex meeting no edge of `mask`.
    fn faces(&self, mask: u32) -> i64 {
        let live = |h: usize| mask >> (h / 2) & 1 == 1;
        let mut next = BTreeMap::new();
        for cyc in &self.rot {
            let kept: Vec<usize> = cyc.iter().copied().filter(|&h| live(h)).collect();
            for (i, &h) in kept.iter().enumerate() {
                next.insert(h, kept[(i + 1) % kept.len()]);
            }
        }
        let isolated = self
            .rot
            .iter()
            .filter(|cyc| !cyc.iter().any(|&h| live(h)))
            .count() as i64;
        let mut seen = std::collections::BTreeSet::new();
        let mut orbits = 0;
        for &start in next.keys() {
            if seen.contains(&start) {
                continue;
            }
            orbits += 1;
            let mut h = start;
            while seen.insert(h) {
                h = next[&(h ^ 1)];
            }
        }
        orbits + isolated
    }

    /// `Σ_A (x−1)^{r(E)−r(A)} y^{n(A)} z^{γ(A)}`.
    fn br3(&self) -> Polynomial {
        let ne = self.edges();
        let nv = self.rot.len();
        let edges: Vec<(usize, usize)> = (0..ne)
            .map(|e| (self.vertex_of(2 * e), self.vertex_of(2 * e + 1)))
            .collect();
        let full = (1u32 << ne) - 1;
        let k_e = components(nv, &edges, full);
        let mut out = Polynomial::zero();
        for a in 0..=full {
            let k = components(nv, &edges, a);
            let size = a.count_ones() as i64;
            let nullity = size - (nv as i64 - k);
            let gamma = 2 * k - nv as i64 + size - self.faces(a);
            let term = &(v("x") - c(1)).pow((k - k_e) as u32) * &v("y").pow(nullity as u32);
            out = &out + &(&term * &v("z").pow(gamma as u32));
        }
        out
    }
}

fn map_of(g: &RibbonGraph) -> Option<Map> {
    (0..g.edge_count()).all(|e| g.is_positive(e)).then(|| Map {
        rot: g.rotations().to_vec(),
    })
}

#[test]
fn tutte_matches_subset_oracle() {
    let graphs: [(usize, &[(usize, usize)]); 5] = [
        (3, &[(0, 1), (1, 2), (2, 0)]),
        (4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]),
        (2, &[(0, 1), (0, 1), (0, 1)]),
        (3, &[(0, 1), (1, 2), (2, 0), (0, 0)]),
        (5, &[(0, 1), (1, 2), (3, 4)]),
    ];
    for (nv, es) in graphs {
        let g = Multigraph::new(nv, es.to_vec()).unwrap();
        assert_eq!(g.tutte().unwrap(), tutte_oracle(nv, es), "{es:?}");
    }
}

#[test]
fn k4_tutte_frozen() {
    let es = [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)];
    let t = Multigraph::new(4, es.to_vec()).unwrap().tutte().unwrap();
    assert_eq!(
        t.to_string(),
        "x^3 + y^3 + 3*x^2 + 4*x*y + 3*y^2 + 2*x + 2*y"
    );
}

#[test]
fn orientable_br3_matches_face_oracle() {
    let mut checked = 0;
    let mut corpus: Vec<RibbonGraph> = named::all().into_iter().map(|(_, g)| g).collect();
    corpus.extend(ribbon_enumeration(2, 3));
    for g in random_ribbons(7, 4, 100)
        .into_iter()
        .chain(random_ribbons(7, 5, 100))
    {
        let untwisted = vec![true; g.edge_count()];
        corpus.push(RibbonGraph::from_rotations(g.rotations().to_vec(), untwisted).unwrap());
    }
    for g in corpus {
        if let Some(m) = map_of(&g) {
            assert_eq!(g.br3().unwrap(), m.br3(), "{g:?}");
            checked += 1;
        }
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn named_br3_frozen() {
    assert_eq!(
        named::torus_loops().br3().unwrap().to_string(),
        "y^2*z^2 + 2*y + 1"
    );
    assert_eq!(
        named::theta().br3().unwrap().to_string(),
        "y^2 + x + 3*y + 2"
    );
    assert_eq!(
        named::triangle().br3().unwrap().to_string(),
        "x^2 + x + y + 1"
    );
}

#[test]
fn penrose_counts_edge_colourings_of_plane_cubic_graphs() {
    let three: BTreeMap<String, BigRational> = [(
        "lam".to_string(),
        BigRational::from_integer(BigInt::from(3)),
    )]
    .into();
    for g in [named::theta(), named::plane_k4()] {
        let colourings = proper_edge_colourings(&g.underlying_graph(), 3);
        assert_eq!(colourings, 6);
        let p = g.penrose().unwrap().eval(&three).unwrap();
        assert_eq!(p, BigRational::from_integer(BigInt::from(6)));
    }
}
