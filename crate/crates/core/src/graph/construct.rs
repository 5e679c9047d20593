//! Constructors for the graph families and the gluing operations.
//!
//! Composite constructors label vertices canonically: parts in argument
//! order, new vertices (apex, fan vertices) last. The relabelling of every
//! part is returned alongside the graph.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// One fan attached to `K_m`: the clique sizes `h_1, .., h_s` attached along
/// the prefixes of an attachment set `W = {v_1 < .. < v_s}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FanBlock {
    pub cliques: Vec<usize>,
}

impl FanBlock {
    /// The pure block on `s` attachment vertices (`h_i = i + 1`).
    pub fn pure(s: usize) -> Self {
        FanBlock {
            cliques: (1..=s).map(|i| i + 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.cliques.iter().enumerate().all(|(i, &h)| h == i + 2)
    }

    fn new_vertices(&self) -> usize {
        self.cliques
            .iter()
            .enumerate()
            .map(|(i, &h)| h - (i + 1))
            .sum()
    }
}

/// A graph assembled from parts, with the relabelling of each part.
#[derive(Clone, Debug)]
pub struct Composite {
    pub graph: Graph,
    /// `maps[k][v - 1]` is the new label of vertex `v` of part `k`, or `None`
    /// if the vertex was deleted.
    pub maps: Vec<Vec<Option<usize>>>,
    /// Cone apex, or the vertex produced by the identification in ∗ / ∘.
    pub special: Option<usize>,
}

impl Composite {
    pub fn image(&self, part: usize, v: usize) -> Option<usize> {
        self.maps[part][v - 1]
    }
}

pub fn complete_graph(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidFamily("K(m) needs m >= 1".into()));
    }
    let mut g = Graph::empty(m);
    for u in 1..=m {
        for v in u + 1..=m {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// The bipartite graph `F_m` on `[2m]` with edges `{2i, 2j-1}`, `i <= j`.
pub fn bipartite_fm(m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidFamily("Fm(m) needs m >= 1".into()));
    }
    let mut g = Graph::empty(2 * m);
    for i in 1..=m {
        for j in i..=m {
            g.add_edge(2 * i, 2 * j - 1)?;
        }
    }
    Ok(g)
}

/// `K_m` with a fan on each block. Block `k` is attached to the next
/// `blocks[k].len()` vertices of `[m]` in order; new vertices are numbered
/// from `m + 1` in block order, then clique order.
pub fn fan_graph(m: usize, blocks: &[FanBlock]) -> Result<Graph> {
    if m < 2 {
        return Err(Error::InvalidFamily("fan needs m >= 2".into()));
    }
    let used: usize = blocks.iter().map(FanBlock::len).sum();
    if used > m {
        return Err(Error::InvalidFamily(format!(
            "fan blocks use {used} attachment vertices but K_{m} has only {m}"
        )));
    }
    for (k, b) in blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(Error::InvalidFamily(format!(
                "fan block {} is empty",
                k + 1
            )));
        }
        if let Some((i, &h)) = b.cliques.iter().enumerate().find(|&(i, &h)| h <= i + 1) {
            return Err(Error::InvalidFamily(format!(
                "fan block {}: clique {} has size {h}, need more than {}",
                k + 1,
                i + 1,
                i + 1
            )));
        }
    }
    let extra: usize = blocks.iter().map(FanBlock::new_vertices).sum();
    let mut g = complete_graph(m)?;
    g = grow(g, m + extra);
    let mut next = m + 1;
    let mut base = 1;
    for b in blocks {
        let w: Vec<usize> = (base..base + b.len()).collect();
        for (i, &h) in b.cliques.iter().enumerate() {
            let fresh: Vec<usize> = (next..next + h - (i + 1)).collect();
            next += fresh.len();
            for (a, &u) in fresh.iter().enumerate() {
                for &v in &fresh[a + 1..] {
                    g.add_edge(u, v)?;
                }
                for &v in &w[..=i] {
                    g.add_edge(u, v)?;
                }
            }
        }
        base += b.len();
    }
    Ok(g)
}

fn grow(g: Graph, n: usize) -> Graph {
    let mut out = Graph::empty(n);
    for (u, v) in g.edges() {
        out.add_edge(u, v).expect("old edges stay in range");
    }
    out
}

/// Vertex-disjoint union, parts numbered consecutively.
pub fn disjoint_union(parts: &[Graph]) -> Composite {
    let n: usize = parts.iter().map(Graph::vertex_count).sum();
    let mut g = Graph::empty(n);
    let mut maps = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for p in parts {
        for (u, v) in p.edges() {
            g.add_edge(u + offset, v + offset).expect("in range");
        }
        maps.push((1..=p.vertex_count()).map(|v| Some(v + offset)).collect());
        offset += p.vertex_count();
    }
    Composite {
        graph: g,
        maps,
        special: None,
    }
}

/// A new apex joined to every vertex of every part; the apex is labelled last.
pub fn cone(parts: &[Graph]) -> Result<Composite> {
    if parts.is_empty() {
        return Err(Error::InvalidFamily("cone needs at least one part".into()));
    }
    let du = disjoint_union(parts);
    let n = du.graph.vertex_count() + 1;
    let mut g = grow(du.graph, n);
    for v in 1..n {
        g.add_edge(v, n)?;
    }
    Ok(Composite {
        graph: g,
        maps: du.maps,
        special: Some(n),
    })
}

/// Operation ∗: identify the leaf `f1` of `g1` with the leaf `f2` of `g2`.
/// `g1` keeps its labels; the other vertices of `g2` follow in order.
pub fn glue_star(g1: &Graph, f1: usize, g2: &Graph, f2: usize) -> Result<Composite> {
    check_leaf(g1, f1)?;
    check_leaf(g2, f2)?;
    let n1 = g1.vertex_count();
    let n = n1 + g2.vertex_count() - 1;
    let map1: Vec<Option<usize>> = (1..=n1).map(Some).collect();
    let mut map2 = Vec::with_capacity(g2.vertex_count());
    let mut next = n1 + 1;
    for v in 1..=g2.vertex_count() {
        if v == f2 {
            map2.push(Some(f1));
        } else {
            map2.push(Some(next));
            next += 1;
        }
    }
    let g = relabel_into(n, &[(g1, &map1), (g2, &map2)]);
    Ok(Composite {
        graph: g,
        maps: vec![map1, map2],
        special: Some(f1),
    })
}

/// Operation ∘: delete the leaves `f1`, `f2` and identify their neighbours,
/// which must have degree at least 3.
pub fn glue_circ(g1: &Graph, f1: usize, g2: &Graph, f2: usize) -> Result<Composite> {
    let v1 = check_leaf(g1, f1)?;
    let v2 = check_leaf(g2, f2)?;
    for (g, v) in [(g1, v1), (g2, v2)] {
        if g.degree(v) < 3 {
            return Err(Error::DegreeTooSmall {
                vertex: v,
                degree: g.degree(v),
            });
        }
    }
    let mut next = 1;
    let mut map1 = Vec::with_capacity(g1.vertex_count());
    for v in 1..=g1.vertex_count() {
        if v == f1 {
            map1.push(None);
        } else {
            map1.push(Some(next));
            next += 1;
        }
    }
    let joint = map1[v1 - 1].expect("v1 is kept");
    let mut map2 = Vec::with_capacity(g2.vertex_count());
    for v in 1..=g2.vertex_count() {
        if v == f2 {
            map2.push(None);
        } else if v == v2 {
            map2.push(Some(joint));
        } else {
            map2.push(Some(next));
            next += 1;
        }
    }
    let g = relabel_into(next - 1, &[(g1, &map1), (g2, &map2)]);
    Ok(Composite {
        graph: g,
        maps: vec![map1, map2],
        special: Some(joint),
    })
}

/// Returns the unique neighbour of the leaf.
fn check_leaf(g: &Graph, f: usize) -> Result<usize> {
    if f == 0 || f > g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: f,
            n: g.vertex_count(),
        });
    }
    if g.degree(f) != 1 {
        return Err(Error::NotALeaf(f));
    }
    Ok(*g.neighbors(f).iter().next().expect("degree one"))
}

fn relabel_into(n: usize, parts: &[(&Graph, &Vec<Option<usize>>)]) -> Graph {
    let mut g = Graph::empty(n);
    for (part, map) in parts {
        for (u, v) in part.edges() {
            if let (Some(a), Some(b)) = (map[u - 1], map[v - 1]) {
                g.add_edge(a, b).expect("relabelled edge in range");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(g: &Graph) -> Vec<(usize, usize)> {
        g.edges().collect()
    }

    #[test]
    fn complete_graphs() {
        assert!(complete_graph(0).is_err());
        assert_eq!(complete_graph(1).unwrap().edge_count(), 0);
        assert_eq!(
            edges(&complete_graph(3).unwrap()),
            vec![(1, 2), (1, 3), (2, 3)]
        );
        assert_eq!(complete_graph(5).unwrap().edge_count(), 10);
    }

    #[test]
    fn bipartite_small_cases() {
        assert!(bipartite_fm(0).is_err());
        assert_eq!(edges(&bipartite_fm(1).unwrap()), vec![(1, 2)]);
        // a path 1-2-3-4
        assert_eq!(
            edges(&bipartite_fm(2).unwrap()),
            vec![(1, 2), (2, 3), (3, 4)]
        );
        let f3 = bipartite_fm(3).unwrap();
        assert_eq!((f3.vertex_count(), f3.edge_count()), (6, 6));
        assert_eq!(f3.leaves(), vec![1, 6]);
    }

    #[test]
    fn pure_fans() {
        let p3 = fan_graph(2, &[FanBlock::pure(1)]).unwrap();
        assert_eq!(edges(&p3), vec![(1, 2), (1, 3)]);

        let g = fan_graph(3, &[FanBlock::pure(2)]).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(
            edges(&g),
            vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 5)]
        );

        let two = fan_graph(2, &[FanBlock::pure(1), FanBlock::pure(1)]).unwrap();
        assert_eq!(edges(&two), vec![(1, 2), (1, 3), (2, 4)]);
    }

    #[test]
    fn fan_rejects_bad_specs() {
        assert!(fan_graph(2, &[FanBlock::pure(2), FanBlock::pure(1)]).is_err());
        assert!(fan_graph(
            3,
            &[FanBlock {
                cliques: vec![2, 2]
            }]
        )
        .is_err());
        assert!(fan_graph(3, &[FanBlock { cliques: vec![] }]).is_err());
        // h_i > i + 1 is allowed: a non-pure fan adds several vertices per clique
        let g = fan_graph(3, &[FanBlock { cliques: vec![3] }]).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert!(g.is_clique(&[1, 4, 5]));
    }

    #[test]
    fn cones() {
        let k1 = complete_graph(1).unwrap();
        let k2 = complete_graph(2).unwrap();
        let p3 = cone(&[k1.clone(), k1.clone()]).unwrap();
        assert_eq!(edges(&p3.graph), vec![(1, 3), (2, 3)]);
        let c = cone(&[k2.clone(), k2]).unwrap();
        assert_eq!((c.graph.vertex_count(), c.graph.edge_count()), (5, 6));
        assert_eq!(c.special, Some(5));
        let star = cone(&[k1.clone(), k1.clone(), k1]).unwrap();
        assert_eq!(star.graph.degree_sequence(), vec![1, 1, 1, 3]);
        assert!(cone(&[]).is_err());
    }

    #[test]
    fn star_counts_and_preconditions() {
        let whiskered = fan_graph(3, &[FanBlock::pure(1)]).unwrap();
        let k2 = complete_graph(2).unwrap();
        let s = glue_star(&whiskered, 4, &k2, 1).unwrap();
        assert_eq!(s.graph.vertex_count(), 4 + 2 - 1);
        assert_eq!(s.image(1, 1), Some(4));
        assert_eq!(s.image(1, 2), Some(5));
        let p3 = fan_graph(2, &[FanBlock::pure(1)]).unwrap();
        assert!(matches!(glue_star(&p3, 1, &k2, 1), Err(Error::NotALeaf(1))));
    }

    #[test]
    fn circ_counts_and_preconditions() {
        let f4 = bipartite_fm(4).unwrap();
        let f3 = bipartite_fm(3).unwrap();
        let c = glue_circ(&f4, 8, &f3, 1).unwrap();
        assert_eq!(c.graph.vertex_count(), 8 + 6 - 3);
        assert_eq!(c.special, Some(7));
        assert_eq!(c.graph.edge_count(), 10 - 1 + 6 - 1);
        let f2 = bipartite_fm(2).unwrap();
        assert!(matches!(
            glue_circ(&f4, 8, &f2, 1),
            Err(Error::DegreeTooSmall {
                vertex: 2,
                degree: 2
            })
        ));
    }
}
