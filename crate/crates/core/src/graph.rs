//! Multigraphs with loops, vertex partitions, cycle and bond matroids.

use petgraph::unionfind::UnionFind;

use crate::bits::{elements, popcount};
use crate::error::{check_cap, Error, Result};
use crate::matroid::Matroid;
use crate::minor_system::{full_mask, DirectSum, MinorSystem, SystemTag, DEFAULT_CAP};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    v: usize,
    edges: Vec<(usize, usize)>,
}

/// Number of components of `(0..v, edges)`.
pub fn components(v: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut uf = UnionFind::<usize>::new(v);
    let mut c = v;
    for (a, b) in edges {
        if uf.union(a, b) {
            c -= 1;
        }
    }
    c
}

impl Multigraph {
    pub fn new(v: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &edges {
            if a >= v || b >= v {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) has an endpoint ≥ {v}"
                )));
            }
        }
        Ok(Multigraph { v, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `c(A)` of the spanning subgraph on `A`.
    pub fn components(&self, a: u32) -> usize {
        components(
            self.v,
            elements(a)
                .take_while(|&e| e < self.edges.len())
                .map(|e| self.edges[e]),
        )
    }

    /// `r(A) = v − c(A)`.
    pub fn rank(&self, a: u32) -> i64 {
        self.v as i64 - self.components(a) as i64
    }

    pub fn nullity(&self, a: u32) -> i64 {
        popcount(a) - self.rank(a)
    }

    pub fn cycle_matroid(&self) -> Result<Matroid> {
        check_cap(self.edges.len(), DEFAULT_CAP)?;
        Matroid::from_rank_fn(self.edges.len(), |a| self.rank(a) as usize)
    }

    pub fn bond_matroid(&self) -> Result<Matroid> {
        Ok(self.cycle_matroid()?.dual())
    }

    pub fn delete_edge(&self, e: usize) -> Multigraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Multigraph { v: self.v, edges }
    }

    /// Merges the endpoints; contracting a loop just deletes it.
    pub fn contract_edge(&self, e: usize) -> Multigraph {
        let (a, b) = self.edges[e];
        let mut g = self.delete_edge(e);
        if a == b {
            return g;
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        g.edges = g
            .edges
            .iter()
            .map(|&(p, q)| (relabel(p), relabel(q)))
            .collect();
        g.v -= 1;
        g
    }

    pub fn minor(&self, del: u32, con: u32) -> Result<Multigraph> {
        if del & con != 0 {
            return Err(Error::OverlappingSets);
        }
        let mut g = self.clone();
        for e in (0..self.edges.len()).rev() {
            if del >> e & 1 == 1 {
                g = g.delete_edge(e);
            } else if con >> e & 1 == 1 {
                g = g.contract_edge(e);
            }
        }
        Ok(g)
    }

    /// Rank of `A` after identifying each block of `p` to a vertex.
    pub fn quotient_rank(&self, p: &VertexPartition, a: u32) -> i64 {
        let k = p.block_count();
        let c = components(
            k,
            elements(a).map(|e| (p.block_of(self.edges[e].0), p.block_of(self.edges[e].1))),
        );
        k as i64 - c as i64
    }

    pub fn tutte(&self) -> Result<Polynomial> {
        Ok(self.cycle_matroid()?.tutte())
    }
}

impl MinorSystem for Multigraph {
    const TAG: SystemTag = SystemTag::Graph;

    fn size(&self) -> usize {
        self.edges.len()
    }

    fn delete(&self, e: usize) -> Result<Self> {
        Ok(self.delete_edge(e))
    }

    fn contract(&self, e: usize) -> Result<Self> {
        Ok(self.contract_edge(e))
    }

    fn class_labels() -> &'static [&'static str] {
        &["bridge", "loop"]
    }

    fn classify(&self) -> Result<usize> {
        if self.edges.len() != 1 {
            return Err(Error::WrongGrade {
                size: self.edges.len(),
            });
        }
        let (a, b) = self.edges[0];
        Ok(if a == b { 1 } else { 0 })
    }

    fn profile_matrix() -> Vec<Vec<i64>> {
        vec![vec![2, 0], vec![0, 2]]
    }

    fn profile_ranks(&self) -> Result<Vec<i64>> {
        self.restricted_ranks(full_mask(self.edges.len()))
    }

    fn restricted_ranks(&self, mask: u32) -> Result<Vec<i64>> {
        let r = self.rank(mask);
        Ok(vec![2 * r, 2 * (popcount(mask) - r)])
    }
}

impl DirectSum for Multigraph {
    fn direct_sum(&self, other: &Self) -> Self {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + self.v, b + self.v)));
        Multigraph {
            v: self.v + other.v,
            edges,
        }
    }
}

/// Partition of `0..v` into blocks, stored as a block index per vertex
/// numbered by first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPartition {
    block: Vec<usize>,
}

impl VertexPartition {
    pub fn new(v: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut block = vec![usize::MAX; v];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            for &x in b {
                if x >= v {
                    return Err(Error::InvalidPartition(format!("vertex {x} out of range")));
                }
                if block[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {x} in two blocks")));
                }
                block[x] = i;
            }
        }
        if let Some(x) = block.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "vertex {x} is in no block"
            )));
        }
        Ok(Self::from_labels(&block))
    }

    /// From arbitrary labels; equal labels share a block.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut seen: Vec<usize> = Vec::new();
        let block = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(*l);
                    seen.len() - 1
                }
            })
            .collect();
        VertexPartition { block }
    }

    pub fn singletons(v: usize) -> Self {
        VertexPartition {
            block: (0..v).collect(),
        }
    }

    pub fn one_block(v: usize) -> Self {
        VertexPartition { block: vec![0; v] }
    }

    pub fn vertex_count(&self) -> usize {
        self.block.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block[x]
    }

    pub fn block_count(&self) -> usize {
        self.block.iter().max().map_or(0, |m| m + 1)
    }

    pub fn labels(&self) -> &[usize] {
        &self.block
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.block.iter().enumerate() {
            out[b].push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{c, v};

    pub(crate) fn triangle() -> Multigraph {
        Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    pub(crate) fn theta() -> Multigraph {
        Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(triangle().rank(0b111), 2);
        assert_eq!(triangle().rank(0), 0);
        assert_eq!(theta().rank(0b011), 1);
    }

    #[test]
    fn cycle_matroids() {
        assert_eq!(
            triangle().cycle_matroid().unwrap(),
            Matroid::uniform(2, 3).unwrap()
        );
        assert_eq!(
            Multigraph::new(1, vec![(0, 0)])
                .unwrap()
                .cycle_matroid()
                .unwrap(),
            Matroid::uniform(0, 1).unwrap()
        );
        assert_eq!(
            Multigraph::new(2, vec![(0, 1)])
                .unwrap()
                .cycle_matroid()
                .unwrap(),
            Matroid::uniform(1, 1).unwrap()
        );
    }

    #[test]
    fn contractions() {
        assert_eq!(
            triangle().contract_edge(0),
            Multigraph::new(2, vec![(0, 1), (1, 0)]).unwrap()
        );
        let l = Multigraph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        assert_eq!(l.contract_edge(1), l.delete_edge(1));
        assert_eq!(
            theta().contract_edge(0),
            Multigraph::new(1, vec![(0, 0), (0, 0)]).unwrap()
        );
    }

    #[test]
    fn quotient_rank_extremes() {
        let g = triangle();
        for a in 0..8 {
            assert_eq!(
                g.quotient_rank(&VertexPartition::singletons(3), a),
                g.rank(a)
            );
            assert_eq!(g.quotient_rank(&VertexPartition::one_block(3), a), 0);
        }
    }

    #[test]
    fn triangle_tutte() {
        assert_eq!(triangle().tutte().unwrap(), v("x").pow(2) + v("x") + v("y"));
        assert_eq!(Multigraph::new(1, vec![]).unwrap().tutte().unwrap(), c(1));
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(3, &[vec![0, 1]]).is_err());
        assert!(VertexPartition::new(2, &[vec![0, 1], vec![1]]).is_err());
        let p = VertexPartition::new(4, &[vec![2, 0], vec![1, 3]]).unwrap();
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1, 3]]);
    }
}
