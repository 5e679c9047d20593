//! Simple undirected graphs on the vertex set `1..=n`.

mod construct;
mod split;

pub use construct::{
    bipartite_fm, complete_graph, cone, disjoint_union, fan_graph, glue_circ, glue_star, Composite,
    FanBlock,
};
pub use split::{classify, cutpoint_split, ClassifyReport, CutpointSplit, Piece};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FamilyExpr;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// adj[v - 1] holds the neighbours of v.
    adj: Vec<BTreeSet<usize>>,
    provenance: Option<FamilyExpr>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BTreeSet::new(); n],
            provenance: None,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidEdge(u, v));
        }
        self.adj[u - 1].insert(v);
        self.adj[v - 1].insert(u);
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, nb)| {
            let u = i + 1;
            nb.range(u + 1..).map(move |&v| (u, v))
        })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u - 1].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    pub fn provenance(&self) -> Option<&FamilyExpr> {
        self.provenance.as_ref()
    }

    pub fn with_provenance(mut self, expr: FamilyExpr) -> Self {
        self.provenance = Some(expr);
        self
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &u)| set[k + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(None)
    }

    fn components_avoiding(&self, removed: Option<usize>) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        if let Some(r) = removed {
            seen[r] = true;
        }
        let mut out = Vec::new();
        for s in 1..=self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u - 1] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Components of `G - v`.
    pub fn components_without(&self, v: usize) -> Vec<Vec<usize>> {
        self.components_avoiding(Some(v))
    }

    pub fn is_cutpoint(&self, v: usize) -> bool {
        v >= 1 && v <= self.n && self.components_without(v).len() > self.components().len()
    }

    pub fn cutpoints(&self) -> Vec<usize> {
        let base = self.components().len();
        self.vertices()
            .filter(|&v| self.components_without(v).len() > base)
            .collect()
    }

    /// Subgraph induced on `keep` (any order), relabelled `1..=keep.len()` in
    /// increasing vertex order. Returns the graph and the old-to-new map.
    pub fn induced(&self, keep: &[usize]) -> (Graph, BTreeMap<usize, usize>) {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let map: BTreeMap<usize, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i + 1))
            .collect();
        let mut g = Graph::empty(sorted.len());
        for (u, v) in self.edges() {
            if let (Some(&a), Some(&b)) = (map.get(&u), map.get(&v)) {
                g.adj[a - 1].insert(b);
                g.adj[b - 1].insert(a);
            }
        }
        (g, map)
    }

    /// `G - v`, relabelled to `1..n-1`.
    pub fn remove_vertex(&self, v: usize) -> (Graph, BTreeMap<usize, usize>) {
        let keep: Vec<usize> = self.vertices().filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Maximal cliques (Bron–Kerbosch with pivoting), each sorted, in
    /// lexicographic order. Isolated vertices are singleton cliques.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let p: BTreeSet<usize> = self.vertices().collect();
        self.bron_kerbosch(&mut Vec::new(), p, BTreeSet::new(), &mut out);
        for c in out.iter_mut() {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = *p
            .union(&x)
            .max_by_key(|&&u| self.adj[u - 1].intersection(&p).count())
            .expect("p is nonempty");
        let candidates: Vec<usize> = p.difference(&self.adj[pivot - 1]).copied().collect();
        for v in candidates {
            let nb = &self.adj[v - 1];
            r.push(v);
            self.bron_kerbosch(
                r,
                p.intersection(nb).copied().collect(),
                x.intersection(nb).copied().collect(),
                out,
            );
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }

    /// Vertices lying in exactly one maximal clique.
    pub fn free_vertices(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.n + 1];
        for c in self.maximal_cliques() {
            for v in c {
                count[v] += 1;
            }
        }
        self.vertices().filter(|&v| count[v] == 1).collect()
    }

    /// Serializes as `{"n": .., "edges": [[u, v], ..]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).expect("graph JSON is always serializable")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        Graph::try_from(raw)
    }
}

/// Wire format for graphs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        Graph::from_edges(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

/// All connected graphs on `1..=n` (labelled), in a fixed order.
///
/// There are 1, 1, 4, 38, 728 of them for n = 1..=5; the count grows too
/// fast to be useful beyond n = 6.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "labelled enumeration is only meant for n <= 6");
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let g = Graph::from_edges(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e),
        )
        .expect("pairs are in range");
        if g.components().len() == 1 {
            out.push(g);
        }
    }
    out
}
