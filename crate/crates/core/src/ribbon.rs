//! Ribbon graphs as signed rotation systems, their minors, duals and
//! partial Petrials, the induced delta-matroid, and the vertex-partitioned
//! and cellular systems behind the three-variable Bollobás–Riordan and
//! Krushkal polynomials.
//!
//! Edge `e` always owns half-edges `2e` and `2e + 1`. Boundary components
//! are orbits of flags `(half-edge, side)` under the two involutions that
//! cross an edge ribbon and step around a vertex disc.

use num_bigint::BigInt;
use num_traits::One;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::bits::{elements, popcount, remove_bit};
use crate::delta_matroid::{reduce_sqrt_xy, sqrt_specialize_three_variable, DeltaMatroid, SX, SY};
use crate::error::{check_cap, Error, Result};
use crate::graph::{components, Multigraph, VertexPartition};
use crate::minor_system::{full_mask, DirectSum, Dual, MinorSystem, SystemTag, DEFAULT_CAP};
use crate::poly::{c, v, Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    rot: Vec<Vec<usize>>,
    /// `true` for an untwisted edge.
    sign: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryProfile {
    pub v: usize,
    pub f: usize,
    pub c: usize,
    pub gamma: i64,
    /// `2ρ = |A| + v − f`.
    pub rho2: i64,
}

/// Result of contracting one edge, with the vertex bookkeeping partitions need.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: RibbonGraph,
    /// New index of every surviving old vertex; `None` for the endpoints.
    pub vertex_map: Vec<Option<usize>>,
    /// Vertices created by the contraction.
    pub created: Vec<usize>,
}

impl RibbonGraph {
    /// Builds from arbitrary half-edge ids; edge `i` is renumbered to own
    /// half-edges `2i` (first of its pair) and `2i + 1`.
    pub fn new(vertices: Vec<Vec<usize>>, edges: Vec<((usize, usize), i8)>) -> Result<Self> {
        let mut renum = std::collections::HashMap::new();
        for (i, &((a, b), s)) in edges.iter().enumerate() {
            if a == b {
                return Err(Error::InvalidRibbon(format!(
                    "edge {i} pairs half-edge {a} with itself"
                )));
            }
            if s != 1 && s != -1 {
                return Err(Error::InvalidRibbon(format!(
                    "edge {i} has sign {s}, expected +1 or -1"
                )));
            }
            for (h, new) in [(a, 2 * i), (b, 2 * i + 1)] {
                if renum.insert(h, new).is_some() {
                    return Err(Error::InvalidRibbon(format!(
                        "half-edge {h} belongs to two edges"
                    )));
                }
            }
        }
        let mut seen = vec![false; 2 * edges.len()];
        let mut rot = Vec::with_capacity(vertices.len());
        for (vi, cyc) in vertices.iter().enumerate() {
            let mut r = Vec::with_capacity(cyc.len());
            for h in cyc {
                let &n = renum.get(h).ok_or_else(|| {
                    Error::InvalidRibbon(format!("half-edge {h} at vertex {vi} is in no edge"))
                })?;
                if std::mem::replace(&mut seen[n], true) {
                    return Err(Error::InvalidRibbon(format!(
                        "half-edge {h} appears twice in the rotations"
                    )));
                }
                r.push(n);
            }
            rot.push(r);
        }
        if let Some(n) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidRibbon(format!(
                "edge {} has a half-edge in no rotation",
                n / 2
            )));
        }
        Ok(RibbonGraph {
            rot,
            sign: edges.iter().map(|&(_, s)| s == 1).collect(),
        })
    }

    /// From normalized rotations (`2e`, `2e + 1` per edge) and signs.
    pub fn from_rotations(rot: Vec<Vec<usize>>, sign: Vec<bool>) -> Result<Self> {
        let edges = (0..sign.len())
            .map(|e| ((2 * e, 2 * e + 1), if sign[e] { 1 } else { -1 }))
            .collect();
        Self::new(rot, edges)
    }

    /// `k` isolated vertices.
    pub fn edgeless(k: usize) -> Self {
        RibbonGraph {
            rot: vec![Vec::new(); k],
            sign: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.sign.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    pub fn is_positive(&self, e: usize) -> bool {
        self.sign[e]
    }

    /// `(vertex, position)` of every half-edge.
    fn locate(&self) -> Vec<(usize, usize)> {
        let mut loc = vec![(0, 0); 2 * self.sign.len()];
        for (v, r) in self.rot.iter().enumerate() {
            for (i, &h) in r.iter().enumerate() {
                loc[h] = (v, i);
            }
        }
        loc
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let loc = self.locate();
        (loc[2 * e].0, loc[2 * e + 1].0)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.endpoints(e);
        a == b
    }

    pub fn underlying_graph(&self) -> Multigraph {
        let loc = self.locate();
        let edges = (0..self.sign.len())
            .map(|e| (loc[2 * e].0, loc[2 * e + 1].0))
            .collect();
        Multigraph::new(self.rot.len(), edges).expect("endpoints in range")
    }

    /// Components of the spanning subgraph on `a`.
    pub fn components(&self, a: u32) -> usize {
        let loc = self.locate();
        components(
            self.rot.len(),
            elements(a).map(|e| (loc[2 * e].0, loc[2 * e + 1].0)),
        )
    }

    /// Boundary components of the spanning subgraph on `a`, with the edges
    /// in `twist` given an extra half-twist.
    pub fn faces_twisted(&self, a: u32, twist: u32) -> usize {
        let nh = 2 * self.sign.len();
        let active = |h: usize| a >> (h / 2) & 1 == 1;
        let mut uf = UnionFind::<usize>::new(2 * nh);
        let mut isolated = 0;
        for r in &self.rot {
            let hs: Vec<usize> = r.iter().copied().filter(|&h| active(h)).collect();
            if hs.is_empty() {
                isolated += 1;
                continue;
            }
            for (i, &h) in hs.iter().enumerate() {
                let next = hs[(i + 1) % hs.len()];
                uf.union(2 * h + 1, 2 * next);
            }
        }
        for e in elements(a) {
            let positive = self.sign[e] != (twist >> e & 1 == 1);
            let (h, k) = (2 * e, 2 * e + 1);
            if positive {
                uf.union(2 * h, 2 * k + 1);
                uf.union(2 * h + 1, 2 * k);
            } else {
                uf.union(2 * h, 2 * k);
                uf.union(2 * h + 1, 2 * k + 1);
            }
        }
        let mut roots: Vec<usize> = (0..2 * nh)
            .filter(|&f| active(f / 2))
            .map(|f| uf.find(f))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len() + isolated
    }

    pub fn faces(&self, a: u32) -> usize {
        self.faces_twisted(a, 0)
    }

    pub fn boundary_profile(&self, a: u32) -> BoundaryProfile {
        let (v, f, c) = (self.rot.len(), self.faces(a), self.components(a));
        let k = popcount(a);
        BoundaryProfile {
            v,
            f,
            c,
            gamma: 2 * c as i64 - v as i64 + k - f as i64,
            rho2: k + v as i64 - f as i64,
        }
    }

    /// `2ρ(A)`.
    pub fn rho2_of(&self, a: u32) -> i64 {
        popcount(a) + self.rot.len() as i64 - self.faces(a) as i64
    }

    pub fn genus(&self, a: u32) -> i64 {
        self.boundary_profile(a).gamma
    }

    pub fn all_edges(&self) -> u32 {
        full_mask(self.sign.len())
    }

    pub fn delete_edge(&self, e: usize) -> RibbonGraph {
        let shift = |h: usize| if h > 2 * e + 1 { h - 2 } else { h };
        let rot = self
            .rot
            .iter()
            .map(|r| {
                r.iter()
                    .copied()
                    .filter(|&h| h / 2 != e)
                    .map(shift)
                    .collect()
            })
            .collect();
        let mut sign = self.sign.clone();
        sign.remove(e);
        RibbonGraph { rot, sign }
    }

    pub fn contract_edge(&self, e: usize) -> RibbonGraph {
        self.contract_with_map(e).graph
    }

    /// Contracts `e`: a non-loop merges its endpoints (after flipping one
    /// side if `e` is twisted), an untwisted loop splits its vertex in two,
    /// a twisted loop leaves one vertex with one arc reversed.
    pub fn contract_with_map(&self, e: usize) -> Contraction {
        let loc = self.locate();
        let (h, hp) = (2 * e, 2 * e + 1);
        let (u, w) = (loc[h].0, loc[hp].0);
        let nv = self.rot.len();
        let mut rot = self.rot.clone();
        let mut sign = self.sign.clone();
        let after = |r: &Vec<usize>, x: usize| -> Vec<usize> {
            let i = r.iter().position(|&y| y == x).expect("half-edge at vertex");
            (1..r.len()).map(|k| r[(i + k) % r.len()]).collect()
        };
        let (vertex_map, created);
        if u != w {
            if !sign[e] {
                rot[w].reverse();
                for &x in &rot[w] {
                    if loc[x ^ 1].0 != w {
                        sign[x / 2] = !sign[x / 2];
                    }
                }
            }
            let mut merged = after(&rot[u], h);
            merged.extend(after(&rot[w], hp));
            let (lo, hi) = (u.min(w), u.max(w));
            rot[lo] = merged;
            rot.remove(hi);
            vertex_map = (0..nv)
                .map(|x| match x {
                    _ if x == u || x == w => None,
                    _ if x > hi => Some(x - 1),
                    _ => Some(x),
                })
                .collect();
            created = vec![lo];
        } else {
            let seq = after(&rot[u], h);
            let j = seq.iter().position(|&y| y == hp).expect("loop");
            let arc_a = seq[..j].to_vec();
            let arc_b = seq[j + 1..].to_vec();
            if sign[e] {
                rot[u] = arc_a;
                rot.push(arc_b);
                created = vec![u, nv];
            } else {
                for &x in &arc_b {
                    if !arc_b.contains(&(x ^ 1)) {
                        sign[x / 2] = !sign[x / 2];
                    }
                }
                let mut r = arc_a;
                r.extend(arc_b.iter().rev());
                rot[u] = r;
                created = vec![u];
            }
            vertex_map = (0..nv)
                .map(|x| if x == u { None } else { Some(x) })
                .collect();
        }
        let graph = RibbonGraph { rot, sign }.delete_edge(e);
        Contraction {
            graph,
            vertex_map,
            created,
        }
    }

    pub fn minor(&self, del: u32, con: u32) -> Result<RibbonGraph> {
        crate::minor_system::minor(self, del, con)
    }

    /// Partial Petrial: toggles the twist of every edge in `a`.
    pub fn petrial(&self, a: u32) -> RibbonGraph {
        let sign = self
            .sign
            .iter()
            .enumerate()
            .map(|(e, &s)| s != (a >> e & 1 == 1))
            .collect();
        RibbonGraph {
            rot: self.rot.clone(),
            sign,
        }
    }

    /// Geometric dual: boundary components become vertices, edge `e` stays edge `e`.
    pub fn dual(&self) -> RibbonGraph {
        let ne = self.sign.len();
        let nh = 2 * ne;
        let nf = 2 * nh;
        let mut next = vec![0; nh];
        let mut isolated = 0;
        for r in &self.rot {
            if r.is_empty() {
                isolated += 1;
            }
            for (i, &h) in r.iter().enumerate() {
                next[h] = r[(i + 1) % r.len()];
            }
        }
        let tau0 = |f: usize| {
            let (h, s) = (f / 2, f % 2);
            let k = h ^ 1;
            if self.sign[h / 2] {
                2 * k + (1 - s)
            } else {
                2 * k + s
            }
        };
        let tau1 = |f: usize| {
            let (h, s) = (f / 2, f % 2);
            if s == 1 {
                2 * next[h]
            } else {
                let prev = (0..nh)
                    .find(|&p| next[p] == h)
                    .expect("rotation predecessor");
                2 * prev + 1
            }
        };
        let mut visited = vec![false; nf];
        let mut side0 = vec![usize::MAX; nh];
        let mut taken = vec![0usize; ne];
        let mut rot = Vec::new();
        for start in 0..nf {
            if visited[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut psi = start;
            loop {
                let pair = tau0(psi);
                visited[psi] = true;
                visited[pair] = true;
                let e = psi / 4;
                let id = 2 * e + taken[e];
                taken[e] += 1;
                side0[id] = psi;
                cyc.push(id);
                psi = tau1(pair);
                if psi == start {
                    break;
                }
            }
            rot.push(cyc);
        }
        rot.extend(std::iter::repeat_with(Vec::new).take(isolated));
        // τ2 of the original acts as the new edge involution.
        let sign = (0..ne)
            .map(|e| (side0[2 * e] ^ 1) != side0[2 * e + 1])
            .collect();
        RibbonGraph { rot, sign }
    }

    /// Feasible sets `{A : f(A) = c(G)}`.
    pub fn delta_matroid(&self) -> Result<DeltaMatroid> {
        check_cap(self.sign.len(), DEFAULT_CAP)?;
        let c0 = self.components(self.all_edges());
        let fam = (0..=self.all_edges())
            .filter(|&a| self.faces(a) == c0)
            .collect();
        Ok(DeltaMatroid::trusted(self.sign.len(), fam))
    }

    /// `R̃_G(x, y)` in `x, y`, [`SX`], [`SY`].
    pub fn br2(&self) -> Result<Polynomial> {
        check_cap(self.sign.len(), DEFAULT_CAP)?;
        let top = self.rho2_of(self.all_edges());
        let mut p = Polynomial::zero();
        for a in 0..=self.all_edges() {
            let r = self.rho2_of(a);
            p.add_term(
                BigInt::one(),
                Monomial::new(&[(SX, top - r), (SY, 2 * popcount(a) - r)]),
            );
        }
        reduce_sqrt_xy(&p)
    }

    /// `R_G(x, y, z) = Σ (x−1)^{r(G)−r(A)} y^{n(A)} z^{γ(A)}`.
    pub fn br3(&self) -> Result<Polynomial> {
        partitioned_br(self, &VertexPartition::singletons(self.rot.len()))
    }

    /// `P_G(λ) = Σ (−1)^{|A|} λ^{f(G^{τ(A)})}` in `lam`.
    pub fn penrose(&self) -> Result<Polynomial> {
        check_cap(self.sign.len(), DEFAULT_CAP)?;
        let all = self.all_edges();
        let mut p = Polynomial::zero();
        for a in 0..=all {
            let s = if popcount(a) % 2 == 0 { 1 } else { -1 };
            p.add_term(
                BigInt::from(s),
                Monomial::new(&[("lam", self.faces_twisted(all, a) as i64)]),
            );
        }
        Ok(p)
    }

    /// `2ξ(A) = |A| + f(G) − f(G^{τ(A)})`, which makes `ξ_G = ξ_{D(G)}`.
    pub fn xi2_of(&self, a: u32) -> i64 {
        let all = self.all_edges();
        popcount(a) + self.faces(all) as i64 - self.faces_twisted(all, a) as i64
    }

    /// `P̃_G(x, y)` in `x, y`, [`SX`], [`SY`].
    pub fn penrose2(&self) -> Result<Polynomial> {
        check_cap(self.sign.len(), DEFAULT_CAP)?;
        let all = self.all_edges();
        let top = self.xi2_of(all);
        let mut p = Polynomial::zero();
        for a in 0..=all {
            let x = self.xi2_of(a);
            p.add_term(
                BigInt::one(),
                Monomial::new(&[(SX, top - x), (SY, 2 * popcount(a) - x)]),
            );
        }
        reduce_sqrt_xy(&p)
    }

    /// Canonical representative under relabelling edges, swapping the two
    /// ends of an edge, reordering vertices and flipping vertex discs.
    pub fn canonical(&self) -> RibbonGraph {
        use itertools::Itertools;
        let ne = self.sign.len();
        let nv = self.rot.len();
        let loc = self.locate();
        let mut best: Option<(Vec<Vec<usize>>, Vec<bool>)> = None;
        for flips in 0..1u32 << nv {
            let mut rot = self.rot.clone();
            let mut sign = self.sign.clone();
            for v in elements(flips) {
                rot[v].reverse();
            }
            for (e, s) in sign.iter_mut().enumerate() {
                let (a, b) = (loc[2 * e].0, loc[2 * e + 1].0);
                if a != b && (flips >> a & 1) != (flips >> b & 1) {
                    *s = !*s;
                }
            }
            for perm in (0..ne).permutations(ne) {
                for ends in 0..1u32 << ne {
                    let relabel =
                        |h: usize| 2 * perm[h / 2] + ((h & 1) ^ (ends >> (h / 2) & 1) as usize);
                    let mut r: Vec<Vec<usize>> = rot
                        .iter()
                        .map(|cyc| {
                            let mut c: Vec<usize> = cyc.iter().map(|&h| relabel(h)).collect();
                            if let Some(i) = c.iter().position_min() {
                                c.rotate_left(i);
                            }
                            c
                        })
                        .collect();
                    r.sort();
                    let mut sg = vec![true; ne];
                    for e in 0..ne {
                        sg[perm[e]] = sign[e];
                    }
                    let key = (r, sg);
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
            }
        }
        let (rot, sign) = best.expect("at least one relabelling");
        RibbonGraph { rot, sign }
    }

    /// `(κ(A), s(A), s⊥(A))` for this graph as a cellular embedding.
    pub fn kappa_sperp(&self, a: u32) -> (i64, i64, i64) {
        let d = self.dual();
        kappa_sperp_with_dual(self, &d, a)
    }
}

fn kappa_sperp_with_dual(h: &RibbonGraph, d: &RibbonGraph, a: u32) -> (i64, i64, i64) {
    let rest = h.all_edges() & !a;
    let kappa = d.components(rest) as i64 - h.components(h.all_edges()) as i64;
    (kappa, h.genus(a), d.genus(rest))
}

const RIBBON_LABELS: [&str; 3] = ["non-loop", "orientable-loop", "non-orientable-loop"];

impl MinorSystem for RibbonGraph {
    const TAG: SystemTag = SystemTag::Ribbon;

    fn size(&self) -> usize {
        self.sign.len()
    }

    fn delete(&self, e: usize) -> Result<Self> {
        Ok(self.delete_edge(e))
    }

    fn contract(&self, e: usize) -> Result<Self> {
        Ok(self.contract_edge(e))
    }

    fn class_labels() -> &'static [&'static str] {
        &RIBBON_LABELS
    }

    fn classify(&self) -> Result<usize> {
        if self.sign.len() != 1 {
            return Err(Error::WrongGrade {
                size: self.sign.len(),
            });
        }
        Ok(match (self.is_loop(0), self.sign[0]) {
            (false, _) => 0,
            (true, true) => 1,
            (true, false) => 2,
        })
    }

    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![vec![2, 0], vec![0, 2], vec![1, 1]]
    }

    fn profile_ranks(&self) -> Result<Vec<i64>> {
        self.restricted_ranks(self.all_edges())
    }

    fn restricted_ranks(&self, mask: u32) -> Result<Vec<i64>> {
        let r = self.rho2_of(mask);
        Ok(vec![r, 2 * popcount(mask) - r])
    }
}

impl DirectSum for RibbonGraph {
    fn direct_sum(&self, other: &Self) -> Self {
        let off = 2 * self.sign.len();
        let mut rot = self.rot.clone();
        rot.extend(
            other
                .rot
                .iter()
                .map(|r| r.iter().map(|h| h + off).collect()),
        );
        let mut sign = self.sign.clone();
        sign.extend_from_slice(&other.sign);
        RibbonGraph { rot, sign }
    }
}

impl Dual for RibbonGraph {
    fn dual(&self) -> Result<Self> {
        Ok(RibbonGraph::dual(self))
    }

    fn dual_class(i: usize) -> usize {
        [1, 0, 2][i]
    }
}

/// Partition after contracting: the endpoint blocks fuse, lose the
/// endpoints, and gain the created vertices.
fn contract_partition(
    p: &VertexPartition,
    endpoints: (usize, usize),
    c: &Contraction,
) -> VertexPartition {
    let (bu, bv) = (p.block_of(endpoints.0), p.block_of(endpoints.1));
    let mut labels = vec![usize::MAX; c.graph.vertex_count()];
    for (old, new) in c.vertex_map.iter().enumerate() {
        if let Some(n) = new {
            let b = p.block_of(old);
            labels[*n] = if b == bv { bu } else { b };
        }
    }
    for &w in &c.created {
        labels[w] = bu;
    }
    VertexPartition::from_labels(&labels)
}

/// A ribbon graph with a partition of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionedRibbon {
    pub graph: RibbonGraph,
    pub partition: VertexPartition,
}

impl PartitionedRibbon {
    pub fn new(graph: RibbonGraph, partition: VertexPartition) -> Result<Self> {
        if partition.vertex_count() != graph.vertex_count() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices, graph has {}",
                partition.vertex_count(),
                graph.vertex_count()
            )));
        }
        Ok(PartitionedRibbon { graph, partition })
    }

    pub fn singletons(graph: RibbonGraph) -> Self {
        let partition = VertexPartition::singletons(graph.vertex_count());
        PartitionedRibbon { graph, partition }
    }
}

const PARTITIONED_LABELS: [&str; 4] = [
    "non-loop-two-blocks",
    "orientable-loop",
    "non-orientable-loop",
    "non-loop-one-block",
];

impl MinorSystem for PartitionedRibbon {
    const TAG: SystemTag = SystemTag::PartitionedRibbon;

    fn size(&self) -> usize {
        self.graph.edge_count()
    }

    fn delete(&self, e: usize) -> Result<Self> {
        Ok(PartitionedRibbon {
            graph: self.graph.delete_edge(e),
            partition: self.partition.clone(),
        })
    }

    fn contract(&self, e: usize) -> Result<Self> {
        let ends = self.graph.endpoints(e);
        let c = self.graph.contract_with_map(e);
        let partition = contract_partition(&self.partition, ends, &c);
        Ok(PartitionedRibbon {
            graph: c.graph,
            partition,
        })
    }

    fn class_labels() -> &'static [&'static str] {
        &PARTITIONED_LABELS
    }

    fn classify(&self) -> Result<usize> {
        let k = self.graph.classify()?;
        let (a, b) = self.graph.endpoints(0);
        Ok(
            if k == 0 && self.partition.block_of(a) == self.partition.block_of(b) {
                3
            } else {
                k
            },
        )
    }

    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
    }

    fn profile_ranks(&self) -> Result<Vec<i64>> {
        self.restricted_ranks(self.graph.all_edges())
    }

    fn restricted_ranks(&self, mask: u32) -> Result<Vec<i64>> {
        let rq = 2 * self
            .graph
            .underlying_graph()
            .quotient_rank(&self.partition, mask);
        let rho = self.graph.rho2_of(mask);
        Ok(vec![rq, 2 * popcount(mask) - rho, rho - rq])
    }
}

impl DirectSum for PartitionedRibbon {
    fn direct_sum(&self, other: &Self) -> Self {
        let k = self.partition.block_count();
        let mut labels = self.partition.labels().to_vec();
        labels.extend(other.partition.labels().iter().map(|b| b + k));
        PartitionedRibbon {
            graph: self.graph.direct_sum(&other.graph),
            partition: VertexPartition::from_labels(&labels),
        }
    }
}

/// `R_{(G,P)}(x, y, z) = Σ (x−1)^{r(G/P)−r(A/P)} y^{|A|−r(A/P)} z^{2(ρ(A)−r(A/P))}`.
pub fn partitioned_br(g: &RibbonGraph, p: &VertexPartition) -> Result<Polynomial> {
    check_cap(g.edge_count(), DEFAULT_CAP)?;
    let ug = g.underlying_graph();
    let all = g.all_edges();
    let top = ug.quotient_rank(p, all);
    let x1 = v("x") - c(1);
    let mut p_out = Polynomial::zero();
    for a in 0..=all {
        let rq = ug.quotient_rank(p, a);
        let m = Monomial::new(&[("y", popcount(a) - rq), ("z", g.rho2_of(a) - 2 * rq)]);
        p_out += &x1.pow((top - rq) as u32).mul_monomial(&m);
    }
    Ok(p_out)
}

/// A graph in a closed surface, modelled as a cellular ribbon graph `H`
/// whose edges outside `live` are ghosts: deleting an edge of the graph
/// leaves its ribbon in the surface, contracting it contracts it in `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellularGraph {
    surface: RibbonGraph,
    live: u32,
    partition: VertexPartition,
}

impl CellularGraph {
    pub fn new(surface: RibbonGraph, live: u32, partition: VertexPartition) -> Result<Self> {
        if partition.vertex_count() != surface.vertex_count() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices, graph has {}",
                partition.vertex_count(),
                surface.vertex_count()
            )));
        }
        if live & !surface.all_edges() != 0 {
            return Err(Error::NotCellular);
        }
        Ok(CellularGraph {
            surface,
            live,
            partition,
        })
    }

    /// Every edge live: the cellular embedding of `g` itself.
    pub fn cellular(g: RibbonGraph, partition: VertexPartition) -> Result<Self> {
        let live = g.all_edges();
        Self::new(g, live, partition)
    }

    pub fn surface(&self) -> &RibbonGraph {
        &self.surface
    }

    pub fn live(&self) -> u32 {
        self.live
    }

    pub fn partition(&self) -> &VertexPartition {
        &self.partition
    }

    /// Surface edge id of the `i`-th live edge.
    fn edge_id(&self, i: usize) -> usize {
        elements(self.live)
            .nth(i)
            .expect("live edge index in range")
    }

    /// Surface mask of a mask over live-edge indices.
    fn surface_mask(&self, mask: u32) -> u32 {
        elements(self.live)
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |m, (_, e)| m | 1 << e)
    }

    /// Exponents `(r(A/P), κ(A), 2ρ(A), s(A), s⊥(A))` for a live-index mask.
    fn exponents(
        &self,
        dual: &RibbonGraph,
        ug: &Multigraph,
        mask: u32,
    ) -> (i64, i64, i64, i64, i64) {
        let a = self.surface_mask(mask);
        let (kappa, s, sp) = kappa_sperp_with_dual(&self.surface, dual, a);
        (
            ug.quotient_rank(&self.partition, a),
            kappa,
            self.surface.rho2_of(a),
            s,
            sp,
        )
    }

    /// `K̃(x, y, a, b) = Σ x^{r(G/P)−r(A/P)} y^{κ(A)} a^{ρ(A)−r(A/P)} b^{|A|−ρ(A)−κ(A)}`.
    pub fn krushkal_tilde(&self) -> Result<Polynomial> {
        let n = popcount(self.live) as usize;
        check_cap(n, DEFAULT_CAP)?;
        let dual = self.surface.dual();
        let ug = self.surface.underlying_graph();
        let (top, ..) = self.exponents(&dual, &ug, full_mask(n));
        let mut p = Polynomial::zero();
        for mask in 0..=full_mask(n) {
            let (rq, kappa, rho2, _, _) = self.exponents(&dual, &ug, mask);
            let m = Monomial::from_doubled(&[
                ("x", 2 * (top - rq)),
                ("y", 2 * kappa),
                ("a", rho2 - 2 * rq),
                ("b", 2 * popcount(mask) - rho2 - 2 * kappa),
            ]);
            p.add_term(BigInt::one(), m);
        }
        Ok(p)
    }

    /// `K(x, y, a, b) = Σ x^{r(G)−r(A)} y^{κ(A)} a^{s(A)/2} b^{s⊥(A)/2}`.
    pub fn krushkal(&self) -> Result<Polynomial> {
        let n = popcount(self.live) as usize;
        check_cap(n, DEFAULT_CAP)?;
        let dual = self.surface.dual();
        let ug = self.surface.underlying_graph();
        let top = ug.rank(self.live);
        let mut p = Polynomial::zero();
        for mask in 0..=full_mask(n) {
            let (_, kappa, _, s, sp) = self.exponents(&dual, &ug, mask);
            let a = self.surface_mask(mask);
            let m = Monomial::from_doubled(&[
                ("x", 2 * (top - ug.rank(a))),
                ("y", 2 * kappa),
                ("a", s),
                ("b", sp),
            ]);
            p.add_term(BigInt::one(), m);
        }
        Ok(p)
    }
}

const CELLULAR_LABELS: [&str; 5] = [
    "non-loop-two-blocks",
    "loop-two-regions",
    "non-loop-one-block",
    "non-orientable-loop",
    "loop-one-region",
];

impl MinorSystem for CellularGraph {
    const TAG: SystemTag = SystemTag::PartitionedCellular;

    fn size(&self) -> usize {
        popcount(self.live) as usize
    }

    fn delete(&self, i: usize) -> Result<Self> {
        let e = self.edge_id(i);
        Ok(CellularGraph {
            surface: self.surface.clone(),
            live: self.live & !(1 << e),
            partition: self.partition.clone(),
        })
    }

    fn contract(&self, i: usize) -> Result<Self> {
        let e = self.edge_id(i);
        let ends = self.surface.endpoints(e);
        let c = self.surface.contract_with_map(e);
        let partition = contract_partition(&self.partition, ends, &c);
        Ok(CellularGraph {
            surface: c.graph,
            live: remove_bit(self.live, e),
            partition,
        })
    }

    fn class_labels() -> &'static [&'static str] {
        &CELLULAR_LABELS
    }

    fn classify(&self) -> Result<usize> {
        let n = self.size();
        if n != 1 {
            return Err(Error::WrongGrade { size: n });
        }
        let e = self.edge_id(0);
        let (a, b) = self.surface.endpoints(e);
        if a != b {
            return Ok(
                if self.partition.block_of(a) == self.partition.block_of(b) {
                    2
                } else {
                    0
                },
            );
        }
        if !self.surface.is_positive(e) {
            return Ok(3);
        }
        let (kappa, _, _) = self.surface.kappa_sperp(1 << e);
        Ok(if kappa == 1 { 1 } else { 4 })
    }

    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![
            vec![2, 0, 0, 0],
            vec![0, 2, 0, 0],
            vec![0, 0, 2, 0],
            vec![0, 0, 1, 1],
            vec![0, 0, 0, 2],
        ]
    }

    fn profile_ranks(&self) -> Result<Vec<i64>> {
        self.restricted_ranks(full_mask(self.size()))
    }

    fn restricted_ranks(&self, mask: u32) -> Result<Vec<i64>> {
        let dual = self.surface.dual();
        let ug = self.surface.underlying_graph();
        let (rq, kappa, rho2, _, _) = self.exponents(&dual, &ug, mask);
        Ok(vec![
            2 * rq,
            2 * kappa,
            rho2 - 2 * rq,
            2 * popcount(mask) - rho2 - 2 * kappa,
        ])
    }
}

impl DirectSum for CellularGraph {
    fn direct_sum(&self, other: &Self) -> Self {
        let k = self.partition.block_count();
        let mut labels = self.partition.labels().to_vec();
        labels.extend(other.partition.labels().iter().map(|b| b + k));
        CellularGraph {
            surface: self.surface.direct_sum(&other.surface),
            live: self.live | other.live << self.surface.edge_count(),
            partition: VertexPartition::from_labels(&labels),
        }
    }
}

/// `K̃(x−1, y, yz², y)` for the singleton partition; equals `R_G(x, y, z)`.
pub fn br3_via_krushkal(g: &RibbonGraph) -> Result<Polynomial> {
    let cg = CellularGraph::cellular(g.clone(), VertexPartition::singletons(g.vertex_count()))?;
    cg.krushkal_tilde()?
        .subs(&[("x", v("x") - c(1))])?
        .map_monomial("a", &Monomial::new(&[("y", 1), ("z", 2)]))?
        .map_monomial("b", &Monomial::new(&[("y", 1)]))
}

/// `b^{γ(G)/2} K(x, y, a, 1/b)` for the singleton partition; equals `K̃`.
pub fn krushkal_tilde_via_k(g: &RibbonGraph) -> Result<Polynomial> {
    let cg = CellularGraph::cellular(g.clone(), VertexPartition::singletons(g.vertex_count()))?;
    let gamma = g.genus(g.all_edges());
    Ok(cg
        .krushkal()?
        .invert_var("b")
        .mul_monomial(&Monomial::from_doubled(&[("b", gamma)])))
}

/// `(x−1)^{ρ(G)−r(G/P)} R_{(G,P)}(x, y−1, 1/√((x−1)(y−1)))` in `x, y`,
/// [`SX`], [`SY`]; equals `R̃_G` for every partition `P`.
pub fn br2_via_partitioned(g: &RibbonGraph, p: &VertexPartition) -> Result<Polynomial> {
    let all = g.all_edges();
    let shift = g.rho2_of(all) - 2 * g.underlying_graph().quotient_rank(p, all);
    sqrt_specialize_three_variable(&partitioned_br(g, p)?, shift)
}

/// Named examples.
pub mod named {
    use super::RibbonGraph;

    /// Plane theta graph: two vertices joined by three edges.
    pub fn theta() -> RibbonGraph {
        RibbonGraph::from_rotations(vec![vec![0, 2, 4], vec![5, 3, 1]], vec![true; 3]).unwrap()
    }

    /// Plane triangle.
    pub fn triangle() -> RibbonGraph {
        RibbonGraph::from_rotations(vec![vec![0, 5], vec![1, 2], vec![3, 4]], vec![true; 3])
            .unwrap()
    }

    /// One vertex with two interleaved untwisted loops (torus).
    pub fn torus_loops() -> RibbonGraph {
        RibbonGraph::from_rotations(vec![vec![0, 2, 1, 3]], vec![true; 2]).unwrap()
    }

    pub fn positive_loop() -> RibbonGraph {
        RibbonGraph::from_rotations(vec![vec![0, 1]], vec![true]).unwrap()
    }

    pub fn negative_loop() -> RibbonGraph {
        RibbonGraph::from_rotations(vec![vec![0, 1]], vec![false]).unwrap()
    }

    pub fn bridge() -> RibbonGraph {
        RibbonGraph::from_rotations(vec![vec![0], vec![1]], vec![true]).unwrap()
    }

    /// Plane `K₄`.
    pub fn plane_k4() -> RibbonGraph {
        let rot = vec![vec![0, 2, 4], vec![1, 11, 6], vec![3, 7, 8], vec![5, 9, 10]];
        RibbonGraph::from_rotations(rot, vec![true; 6]).unwrap()
    }

    /// One vertex, two interleaved pairs of untwisted loops (genus-two surface).
    pub fn double_torus_bouquet() -> RibbonGraph {
        RibbonGraph::from_rotations(vec![vec![0, 2, 1, 3, 4, 6, 5, 7]], vec![true; 4]).unwrap()
    }

    /// Interleaved twisted and untwisted loops with a pendant edge.
    pub fn mixed() -> RibbonGraph {
        RibbonGraph::from_rotations(vec![vec![0, 2, 1, 3, 4], vec![5]], vec![false, true, true])
            .unwrap()
    }

    pub fn all() -> Vec<(&'static str, RibbonGraph)> {
        vec![
            ("bridge", bridge()),
            ("positive-loop", positive_loop()),
            ("negative-loop", negative_loop()),
            ("triangle", triangle()),
            ("theta", theta()),
            ("torus-loops", torus_loops()),
            ("mixed", mixed()),
            ("double-torus-bouquet", double_torus_bouquet()),
            ("plane-k4", plane_k4()),
        ]
    }
}

/// Every signed rotation system with `v` vertices and `e` edges, up to
/// relabelling that fixes half-edge numbering (rotations are normalized to
/// start at their smallest half-edge).
pub fn enumerate_rotation_systems(vertices: usize, edges: usize) -> Vec<RibbonGraph> {
    let nh = 2 * edges;
    let mut out = Vec::new();
    // assign each half-edge a vertex, then every cyclic order per vertex
    let mut assign = vec![0usize; nh];
    loop {
        let groups: Vec<Vec<usize>> = (0..vertices)
            .map(|v| (0..nh).filter(|&h| assign[h] == v).collect())
            .collect();
        let mut orders: Vec<Vec<Vec<usize>>> = Vec::new();
        for g in &groups {
            orders.push(cyclic_orders(g));
        }
        let mut idx = vec![0usize; vertices];
        'outer: loop {
            let rot: Vec<Vec<usize>> = (0..vertices).map(|v| orders[v][idx[v]].clone()).collect();
            for signs in 0..1u32 << edges {
                let sign = (0..edges).map(|e| signs >> e & 1 == 0).collect();
                out.push(RibbonGraph {
                    rot: rot.clone(),
                    sign,
                });
            }
            let mut k = 0;
            loop {
                if k == vertices {
                    break 'outer;
                }
                idx[k] += 1;
                if idx[k] < orders[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
        let mut k = 0;
        loop {
            if k == nh {
                return out;
            }
            assign[k] += 1;
            if assign[k] < vertices {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
    }
}

fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    match items.split_first() {
        None => vec![Vec::new()],
        Some((&first, rest)) => rest
            .iter()
            .copied()
            .permutations(rest.len())
            .map(|p| std::iter::once(first).chain(p).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use crate::minor_system::check_profile_hypothesis;

    fn corpus() -> Vec<RibbonGraph> {
        let mut out = Vec::new();
        for v in 1..=3 {
            for e in 0..=(4 - v).min(3) {
                out.extend(enumerate_rotation_systems(v, e));
            }
        }
        out.extend([theta(), triangle(), torus_loops()]);
        out
    }

    #[test]
    fn boundary_examples() {
        let p = RibbonGraph::edgeless(1).boundary_profile(0);
        assert_eq!((p.f, p.gamma), (1, 0));
        let p = positive_loop().boundary_profile(1);
        assert_eq!((p.f, p.gamma), (2, 0));
        let p = negative_loop().boundary_profile(1);
        assert_eq!((p.f, p.gamma), (1, 1));
        assert_eq!(torus_loops().boundary_profile(3).gamma, 2);
        assert_eq!(theta().boundary_profile(7).f, 3);
    }

    #[test]
    fn named_genera() {
        assert_eq!(plane_k4().genus(63), 0);
        assert_eq!(plane_k4().faces(63), 4);
        assert_eq!(double_torus_bouquet().genus(15), 4);
        assert_eq!(theta().genus(7), 0);
    }

    #[test]
    fn canonical_forms() {
        let t = theta();
        assert_eq!(t.canonical(), t.petrial(0).canonical());
        let relabelled =
            RibbonGraph::from_rotations(vec![vec![1, 5, 3], vec![2, 4, 0]], vec![true; 3]).unwrap();
        assert_eq!(relabelled.canonical(), t.canonical());
        assert_ne!(positive_loop().canonical(), negative_loop().canonical());
        let flipped =
            RibbonGraph::from_rotations(vec![vec![0, 2, 4], vec![1, 3, 5]], vec![false; 3])
                .unwrap();
        assert_eq!(flipped.canonical(), t.canonical());
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(positive_loop().contract_edge(0), RibbonGraph::edgeless(2));
        assert_eq!(negative_loop().contract_edge(0), RibbonGraph::edgeless(1));
        assert_eq!(bridge().contract_edge(0), RibbonGraph::edgeless(1));
    }

    #[test]
    fn delta_matroid_examples() {
        use crate::delta_matroid::{d_c, d_n};
        assert_eq!(bridge().delta_matroid().unwrap(), d_c());
        assert_eq!(negative_loop().delta_matroid().unwrap(), d_n());
        assert_eq!(torus_loops().delta_matroid().unwrap().feasible(), &[0, 3]);
    }

    #[test]
    fn functor_squares() {
        for g in corpus() {
            let d = g.delta_matroid().unwrap();
            assert_eq!(g.dual().delta_matroid().unwrap(), d.dual(), "dual {g:?}");
            for e in 0..g.edge_count() {
                assert_eq!(
                    g.delete_edge(e).delta_matroid().unwrap(),
                    d.delete_element(e),
                    "delete {e} {g:?}"
                );
                assert_eq!(
                    g.contract_edge(e).delta_matroid().unwrap(),
                    d.contract_element(e),
                    "contract {e} {g:?}"
                );
                assert_eq!(
                    g.petrial(1 << e).delta_matroid().unwrap(),
                    d.loop_complement(e).unwrap(),
                    "petrial {e} {g:?}"
                );
            }
        }
    }

    #[test]
    fn euler_and_krushkal_identities() {
        for g in corpus() {
            let gamma_surface = g.genus(g.all_edges());
            for a in 0..=g.all_edges() {
                let p = g.boundary_profile(a);
                assert_eq!(
                    p.v as i64 - popcount(a) + p.f as i64,
                    2 * p.c as i64 - p.gamma
                );
                let (kappa, _, sp) = g.kappa_sperp(a);
                assert_eq!(gamma_surface - sp, 2 * popcount(a) - p.rho2 - 2 * kappa);
            }
        }
    }

    #[test]
    fn profiles() {
        for g in corpus() {
            assert_eq!(check_profile_hypothesis(&g).unwrap(), None, "{g:?}");
            let nv = g.vertex_count();
            for p in [
                VertexPartition::singletons(nv),
                VertexPartition::one_block(nv),
            ] {
                let pr = PartitionedRibbon::new(g.clone(), p.clone()).unwrap();
                assert_eq!(check_profile_hypothesis(&pr).unwrap(), None, "{g:?}");
                let cg = CellularGraph::cellular(g.clone(), p).unwrap();
                assert_eq!(check_profile_hypothesis(&cg).unwrap(), None, "{g:?}");
            }
        }
    }

    #[test]
    fn theta_penrose() {
        use num_rational::BigRational;
        let p = theta().penrose().unwrap();
        let point = std::collections::BTreeMap::from([(
            "lam".to_string(),
            BigRational::from_integer(3.into()),
        )]);
        assert_eq!(p.eval(&point).unwrap(), BigRational::from_integer(6.into()));
        assert_eq!(
            positive_loop().penrose().unwrap(),
            v("lam").pow(2) - v("lam")
        );
        assert_eq!(RibbonGraph::edgeless(1).penrose().unwrap(), v("lam"));
    }

    #[test]
    fn negative_loop_br3() {
        assert_eq!(negative_loop().br3().unwrap(), c(1) + v("y") * v("z"));
    }

    #[test]
    fn polynomial_identities() {
        use crate::delta_matroid::swap_xy;
        for g in corpus() {
            let d = g.delta_matroid().unwrap();
            let br2 = g.br2().unwrap();
            assert_eq!(br2, d.br2().unwrap(), "{g:?}");
            assert_eq!(br2, swap_xy(&g.dual().br2().unwrap()), "{g:?}");
            assert_eq!(g.penrose2().unwrap(), d.penrose2().unwrap(), "{g:?}");
            let lam_c = Monomial::new(&[("lam", g.components(g.all_edges()) as i64)]);
            assert_eq!(
                g.penrose().unwrap(),
                d.penrose().unwrap().mul_monomial(&lam_c),
                "{g:?}"
            );
            assert_eq!(br3_via_krushkal(&g).unwrap(), g.br3().unwrap(), "{g:?}");
            let nv = g.vertex_count();
            let sing = CellularGraph::cellular(g.clone(), VertexPartition::singletons(nv)).unwrap();
            assert_eq!(
                krushkal_tilde_via_k(&g).unwrap(),
                sing.krushkal_tilde().unwrap(),
                "{g:?}"
            );
            for p in [
                VertexPartition::singletons(nv),
                VertexPartition::one_block(nv),
            ] {
                assert_eq!(br2_via_partitioned(&g, &p).unwrap(), br2, "{g:?} {p:?}");
            }
        }
    }

    #[test]
    fn plane_krushkal_is_shifted_tutte() {
        for g in corpus().into_iter().filter(|g| g.genus(g.all_edges()) == 0) {
            let nv = g.vertex_count();
            let k = CellularGraph::cellular(g.clone(), VertexPartition::singletons(nv))
                .unwrap()
                .krushkal_tilde()
                .unwrap();
            let t = g
                .underlying_graph()
                .tutte()
                .unwrap()
                .subs(&[("x", v("x") + c(1)), ("y", v("y") + c(1))])
                .unwrap();
            assert_eq!(k, t, "{g:?}");
        }
    }

    #[test]
    fn dual_involution_on_faces() {
        for g in corpus() {
            let d = g.dual();
            assert_eq!(d.vertex_count(), g.faces(g.all_edges()));
            assert_eq!(d.faces(d.all_edges()), g.vertex_count());
        }
    }
}
