//! Canonical labelling of small graphs and the catalogues built from it.
//!
//! Individualisation-refinement: an ordered vertex partition is refined to
//! an equitable one, then a vertex of the first non-singleton cell is
//! individualised and the process repeats until the partition is discrete.
//! Each discrete partition is a labelling; the canonical form is the
//! labelling with the lexicographically largest graph6 bit string.
//! Branches are pruned with automorphisms found along the way (two leaves
//! with equal codes) and with neighbourhood twins.

use std::collections::BTreeMap;

use crate::format::emit_graph6;
use crate::graph::{bipartition, Graph};

/// Largest order handled by [`canonical_form`].
pub const CANON_MAX_ORDER: usize = 64;
const NODE_BUDGET: u64 = 200_000;
const MAX_AUTOS: usize = 64;

type Partition = Vec<Vec<usize>>;

/// Splits cells by neighbour counts into other cells until nothing
/// changes. Sub-cells are ordered by ascending count, so the result only
/// depends on the graph up to isomorphism.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    let n = g.order();
    let mut changed = true;
    while changed {
        changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s].clone();
            let mut count = vec![0usize; n];
            for &u in &splitter {
                for v in g.neighbors(u) {
                    count[v] += 1;
                }
            }
            let mut next: Partition = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    groups.entry(count[v]).or_default().push(v);
                }
                if groups.len() > 1 {
                    changed = true;
                }
                next.extend(groups.into_values());
            }
            cells = next;
            s += 1;
        }
    }
    cells
}

fn individualise(cells: &Partition, v: usize) -> Partition {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for cell in cells {
        if cell.contains(&v) && cell.len() > 1 {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&u| u != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (x, y) = (find(parent, a), find(parent, b));
    if x != y {
        parent[x.max(y)] = x.min(y);
    }
}

fn twin_classes(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut class: Vec<usize> = (0..n).collect();
    for v in 0..n {
        for u in 0..v {
            let open = g.neighbors(u) == g.neighbors(v);
            let closed = g.has_edge(u, v) && g.closed_neighborhood(u) == g.closed_neighborhood(v);
            if open || closed {
                class[v] = class[u];
                break;
            }
        }
    }
    class
}

struct Labeller<'a> {
    g: &'a Graph,
    n: usize,
    best: Option<Vec<bool>>,
    best_order: Vec<usize>,
    /// automorphisms discovered from leaves with equal codes
    autos: Vec<Vec<usize>>,
    /// vertices with equal open or equal closed neighbourhoods share a class
    twin_class: Vec<usize>,
    nodes: u64,
}

impl Labeller<'_> {
    /// Orbits of the group generated by twin swaps and known automorphisms
    /// that fix every individualised vertex.
    fn stabiliser_orbits(&self, fixed: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        let mut class_rep = vec![usize::MAX; self.n];
        for v in 0..self.n {
            if fixed.contains(&v) {
                continue;
            }
            let c = self.twin_class[v];
            if class_rep[c] == usize::MAX {
                class_rep[c] = v;
            } else {
                union(&mut parent, v, class_rep[c]);
            }
        }
        for a in &self.autos {
            if fixed.iter().all(|&v| a[v] == v) {
                for v in 0..self.n {
                    union(&mut parent, v, a[v]);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    fn leaf(&mut self, order: Vec<usize>) {
        // order[p] is the vertex labelled p
        let mut code = Vec::with_capacity(self.n * self.n / 2);
        for j in 1..self.n {
            for i in 0..j {
                code.push(self.g.has_edge(order[i], order[j]));
            }
        }
        match self.best.as_ref().map(|b| code.cmp(b)) {
            None | Some(std::cmp::Ordering::Greater) => {
                self.best = Some(code);
                self.best_order = order;
            }
            Some(std::cmp::Ordering::Equal) if self.autos.len() < MAX_AUTOS => {
                let mut sigma = vec![0; self.n];
                for (p, &v) in self.best_order.iter().enumerate() {
                    sigma[v] = order[p];
                }
                self.autos.push(sigma);
            }
            _ => {}
        }
    }

    /// Returns false when the node budget runs out.
    fn run(&mut self, cells: Partition, fixed: &mut Vec<usize>) -> bool {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return false;
        }
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().find(|c| c.len() > 1).cloned() else {
            self.leaf(cells.into_iter().map(|c| c[0]).collect());
            return true;
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in target {
            if !tried.is_empty() {
                let orbit = self.stabiliser_orbits(fixed);
                if tried.iter().any(|&t| orbit[t] == orbit[v]) {
                    continue;
                }
            }
            tried.push(v);
            fixed.push(v);
            let ok = self.run(individualise(&cells, v), fixed);
            fixed.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Canonical relabelling of `g`, or `None` when `g` is larger than
/// [`CANON_MAX_ORDER`] or the search exceeds its node budget.
pub fn canonical_form(g: &Graph) -> Option<Graph> {
    let n = g.order();
    if n > CANON_MAX_ORDER {
        return None;
    }
    if n == 0 {
        return Some(g.clone());
    }
    let mut l = Labeller {
        g,
        n,
        best: None,
        best_order: Vec::new(),
        autos: Vec::new(),
        twin_class: twin_classes(g),
        nodes: 0,
    };
    if !l.run(vec![(0..n).collect()], &mut Vec::new()) {
        return None;
    }
    let mut perm = vec![0; n];
    for (p, &v) in l.best_order.iter().enumerate() {
        perm[v] = p;
    }
    Some(g.permuted(&perm))
}

/// Cache key for a graph: `c:` + canonical graph6 when a canonical form
/// is computable, otherwise `l:` + graph6 of the graph as labelled.
pub fn graph_key(g: &Graph) -> String {
    match canonical_form(g) {
        Some(c) => format!("c:{}", emit_graph6(&c)),
        None => format!("l:{}", emit_graph6(g)),
    }
}

/// All graphs on `n` vertices up to isomorphism, sorted by canonical graph6.
///
/// Built by vertex extension: every graph on `n` vertices is a graph on
/// `n-1` vertices plus one vertex with some neighbourhood.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 9, "catalogue only for n <= 9");
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut classes: BTreeMap<String, Graph> = BTreeMap::new();
    for base in all_graphs(n - 1) {
        let edges: Vec<_> = base.edges().collect();
        for mask in 0u32..1 << (n - 1) {
            let mut e = edges.clone();
            e.extend((0..n - 1).filter(|i| mask >> i & 1 == 1).map(|i| (i, n - 1)));
            let g = Graph::from_edges(n, &e).expect("valid");
            let c = canonical_form(&g).expect("small graphs are always canonisable");
            classes.entry(emit_graph6(&c)).or_insert(c);
        }
    }
    classes.into_values().collect()
}

pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

pub fn connected_bipartite_graphs(n: usize) -> Vec<Graph> {
    connected_graphs(n)
        .into_iter()
        .filter(|g| bipartition(g).is_some())
        .collect()
}
