//! Simple undirected graphs over vertex bitsets, plus the derived
//! structures the rest of the crate works with: certified bipartitions,
//! Cartesian products and pendant-leaf attachment.

use std::collections::VecDeque;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Default cap on the order of any constructed product graph.
pub const DEFAULT_MAX_VERTICES: usize = 4096;

/// Immutable simple undirected graph. `neighbors[i]` is the open
/// neighbourhood N(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    neighbors: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            neighbors: vec![VertexSet::new(n); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut neighbors = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            neighbors[u].insert(v);
            neighbors[v].insert(u);
        }
        Ok(Graph { neighbors })
    }

    /// Builds a graph from neighbourhood sets, checking symmetry and loops.
    pub fn from_neighbors(neighbors: Vec<VertexSet>) -> Result<Graph> {
        let n = neighbors.len();
        for (i, nb) in neighbors.iter().enumerate() {
            if nb.universe() != n {
                return Err(Error::InvalidGraph(format!(
                    "neighbourhood of {i} has universe {} not {n}",
                    nb.universe()
                )));
            }
            if nb.contains(i) {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            for j in nb {
                if !neighbors[j].contains(i) {
                    return Err(Error::InvalidGraph(format!(
                        "asymmetric adjacency between {i} and {j}"
                    )));
                }
            }
        }
        Ok(Graph { neighbors })
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Graph::from_edges(n, &edges).expect("valid")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid")
    }

    /// K_{a,b} with the `a` side on vertices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a)
            .flat_map(|i| (0..b).map(move |j| (i, a + j)))
            .collect();
        Graph::from_edges(a + b, &edges).expect("valid")
    }

    /// Star K_{1,leaves} with the centre at vertex 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::complete_bipartite(1, leaves)
    }

    pub fn order(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.neighbors[v]
    }

    /// N[v] = N(v) ∪ {v}.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.neighbors[v].clone();
        s.insert(v);
        s
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Δ(G); 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    /// Vertex-disjoint union, `self` first.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.order();
        let mut edges: Vec<_> = self.edges().collect();
        edges.extend(other.edges().map(|(u, v)| (u + n, v + n)));
        Graph::from_edges(n + other.order(), &edges).expect("valid")
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.order(), &edges).expect("valid permutation")
    }
}

/// A graph together with a certified two-sided partition, normalised so
/// that |A| ≤ |B|.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipartiteGraph {
    graph: Graph,
    side_a: VertexSet,
    side_b: VertexSet,
}

impl BipartiteGraph {
    /// Certifies a caller-supplied partition. Unlike [`bipartition`] the
    /// sides are taken as given; `A` must not be larger than `B`.
    pub fn with_sides(graph: Graph, side_a: VertexSet) -> Result<BipartiteGraph> {
        let n = graph.order();
        if side_a.universe() != n {
            return Err(Error::precondition("side A has the wrong universe"));
        }
        let side_b = side_a.complement();
        for (u, v) in graph.edges() {
            if side_a.contains(u) == side_a.contains(v) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) does not cross the partition"
                )));
            }
        }
        if side_a.len() > side_b.len() {
            return Err(Error::precondition("side A is larger than side B"));
        }
        Ok(BipartiteGraph {
            graph,
            side_a,
            side_b,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn side_a(&self) -> &VertexSet {
        &self.side_a
    }

    pub fn side_b(&self) -> &VertexSet {
        &self.side_b
    }

    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::A => &self.side_a,
            Side::B => &self.side_b,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, serde::Serialize, serde::Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Two-colours `g`, returning `None` when it has an odd cycle.
///
/// Components are processed in order of their lowest vertex. The colour
/// class holding that vertex goes to A when doing so keeps |A| ≤ |B| and
/// to B otherwise, so the result is deterministic and normalised.
pub fn bipartition(g: &Graph) -> Option<BipartiteGraph> {
    let n = g.order();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut side_a = VertexSet::new(n);
    let mut side_b = VertexSet::new(n);
    let (mut a, mut b) = (0usize, 0usize);

    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        // `true` marks the class of the component's lowest vertex.
        let mut own = Vec::new();
        let mut other = Vec::new();
        colour[s] = Some(true);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            if cu {
                own.push(u);
            } else {
                other.push(u);
            }
            for v in g.neighbors(u) {
                match colour[v] {
                    None => {
                        colour[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
        let (to_a, to_b) = if a + own.len() <= b + other.len() {
            (own, other)
        } else {
            (other, own)
        };
        a += to_a.len();
        b += to_b.len();
        to_a.into_iter().for_each(|v| side_a.insert(v));
        to_b.into_iter().for_each(|v| side_b.insert(v));
    }
    debug_assert!(a <= b);
    Some(BipartiteGraph {
        graph: g.clone(),
        side_a,
        side_b,
    })
}

/// Maximum degree, Δ(G).
pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

/// G□H together with the row-major labelling `index = g·|V(H)| + h`.
#[derive(Clone, Debug)]
pub struct LabeledProduct {
    pub graph: Graph,
    pub g_order: usize,
    pub h_order: usize,
}

impl LabeledProduct {
    pub fn index_of(&self, g: usize, h: usize) -> usize {
        debug_assert!(g < self.g_order && h < self.h_order);
        g * self.h_order + h
    }

    pub fn coords_of(&self, index: usize) -> (usize, usize) {
        (index / self.h_order, index % self.h_order)
    }
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<LabeledProduct> {
    cartesian_product_capped(g, h, DEFAULT_MAX_VERTICES)
}

pub fn cartesian_product_capped(g: &Graph, h: &Graph, max_vertices: usize) -> Result<LabeledProduct> {
    let (gn, hn) = (g.order(), h.order());
    if gn == 0 || hn == 0 {
        return Err(Error::precondition("product factors must be non-empty"));
    }
    let order = gn
        .checked_mul(hn)
        .filter(|&o| o <= max_vertices)
        .ok_or(Error::Capacity {
            what: "cartesian product",
            requested: gn.saturating_mul(hn),
            limit: max_vertices,
        })?;
    let mut neighbors = vec![VertexSet::new(order); order];
    for x in 0..gn {
        for y in 0..hn {
            let idx = x * hn + y;
            for y2 in h.neighbors(y) {
                neighbors[idx].insert(x * hn + y2);
            }
            for x2 in g.neighbors(x) {
                neighbors[idx].insert(x2 * hn + y);
            }
        }
    }
    Ok(LabeledProduct {
        graph: Graph { neighbors },
        g_order: gn,
        h_order: hn,
    })
}

/// Appends one pendant vertex per target, in ascending target order.
/// The pendant for the i-th target (ascending) gets index `n + i`.
pub fn attach_leaves(g: &Graph, targets: &VertexSet) -> Graph {
    if targets.is_empty() {
        return g.clone();
    }
    let n = g.order();
    let m = n + targets.len();
    let mut neighbors: Vec<VertexSet> = g.neighbors.iter().map(|s| s.widened(m)).collect();
    neighbors.resize(m, VertexSet::new(m));
    for (i, t) in targets.iter().enumerate() {
        assert!(t < n, "leaf target {t} outside the graph");
        neighbors[t].insert(n + i);
        neighbors[n + i].insert(t);
    }
    Graph { neighbors }
}
