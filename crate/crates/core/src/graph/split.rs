//! Cutpoint splitting and decomposition at free cutpoints.

use std::collections::BTreeMap;

use super::Graph;
use crate::error::{Error, Result};

/// The three graphs attached to a cutpoint `u` of `G`:
/// `G'` joins all neighbours of `u` into a clique, `G'' = G - u`,
/// `H = G' - u`. The last two are relabelled to `1..n-1`.
#[derive(Clone, Debug)]
pub struct CutpointSplit {
    pub g_prime: Graph,
    pub g_double_prime: Graph,
    pub h: Graph,
    pub u: usize,
    /// Old label to new label for `G''` and `H` (they share the vertex set).
    pub relabel: BTreeMap<usize, usize>,
}

pub fn cutpoint_split(g: &Graph, u: usize) -> Result<CutpointSplit> {
    if u == 0 || u > g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: u,
            n: g.vertex_count(),
        });
    }
    if !g.is_cutpoint(u) {
        return Err(Error::NotACutpoint(u));
    }
    let mut g_prime = g.clone();
    let nb: Vec<usize> = g.neighbors(u).iter().copied().collect();
    for (k, &a) in nb.iter().enumerate() {
        for &b in &nb[k + 1..] {
            g_prime.add_edge(a, b)?;
        }
    }
    let (g_double_prime, relabel) = g.remove_vertex(u);
    let (h, _) = g_prime.remove_vertex(u);
    Ok(CutpointSplit {
        g_prime,
        g_double_prime,
        h,
        u,
        relabel,
    })
}

/// An indecomposable piece of a decomposition, with its vertices in `G`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub graph: Graph,
    /// `vertices[k]` is the vertex of `G` labelled `k + 1` in `graph`.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub leaves: Vec<usize>,
    pub free_vertices: Vec<usize>,
    pub cutpoints: Vec<usize>,
    /// Cutpoints at which `G` splits as `G1 ∪ G2` with the cutpoint free in both.
    pub split_vertices: Vec<usize>,
    /// `G = G_1 ∪ .. ∪ G_t`, pieces ordered by their smallest vertex.
    pub pieces: Vec<Piece>,
}

impl ClassifyReport {
    pub fn is_decomposable(&self) -> bool {
        self.pieces.len() > 1
    }
}

pub fn classify(g: &Graph) -> ClassifyReport {
    let cutpoints = g.cutpoints();
    let split_vertices: Vec<usize> = cutpoints
        .iter()
        .copied()
        .filter(|&v| is_split_vertex(g, v))
        .collect();

    // Union edges that meet at a vertex, unless that vertex is a split
    // vertex and the edges lie on different sides of it.
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let index: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut uf = UnionFind::new(edges.len());
    for v in g.vertices() {
        let side: Option<BTreeMap<usize, usize>> = split_vertices.contains(&v).then(|| {
            g.components_without(v)
                .into_iter()
                .enumerate()
                .flat_map(|(c, comp)| comp.into_iter().map(move |w| (w, c)))
                .collect()
        });
        let incident: Vec<usize> = g.neighbors(v).iter().copied().collect();
        for (k, &a) in incident.iter().enumerate() {
            for &b in &incident[k + 1..] {
                if let Some(side) = &side {
                    if side[&a] != side[&b] {
                        continue;
                    }
                }
                let ea = index[&(v.min(a), v.max(a))];
                let eb = index[&(v.min(b), v.max(b))];
                uf.union(ea, eb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &(u, v)) in edges.iter().enumerate() {
        let set = groups.entry(uf.find(k)).or_default();
        set.push(u);
        set.push(v);
    }
    let mut vertex_sets: Vec<Vec<usize>> = groups
        .into_values()
        .map(|mut s| {
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    for v in g.vertices() {
        if g.degree(v) == 0 {
            vertex_sets.push(vec![v]);
        }
    }
    vertex_sets.sort();
    let pieces = vertex_sets
        .into_iter()
        .map(|vs| Piece {
            graph: g.induced(&vs).0,
            vertices: vs,
        })
        .collect();

    ClassifyReport {
        leaves: g.leaves(),
        free_vertices: g.free_vertices(),
        cutpoints,
        split_vertices,
        pieces,
    }
}

/// `v` splits `G` into exactly two sides, and its neighbourhood on each side
/// is a clique.
fn is_split_vertex(g: &Graph, v: usize) -> bool {
    let comps = g.components_without(v);
    let touching: Vec<Vec<usize>> = comps
        .into_iter()
        .map(|c| {
            c.into_iter()
                .filter(|w| g.has_edge(v, *w))
                .collect::<Vec<_>>()
        })
        .filter(|nb| !nb.is_empty())
        .collect();
    touching.len() == 2 && touching.iter().all(|nb| g.is_clique(nb))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
