//! Simplicial complexes given by facets, clique complexes and reduced
//! homology over a field.
//!
//! Vertices of a [`SimplicialComplex`] are `0..vertex_count`. Faces are
//! handled internally as bitmasks, which caps complexes at 64 vertices.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::Graph;
use crate::linalg::{sparse_rank, SparseColumn};

pub const MAX_COMPLEX_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Keeps only the inclusion-maximal sets. An empty facet list is the void
    /// complex; `[[]]` is the complex whose only face is the empty set.
    pub fn from_faces(
        vertex_count: usize,
        faces: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self> {
        if vertex_count > MAX_COMPLEX_VERTICES {
            return Err(Error::SizeCap {
                what: "simplicial complex",
                vars: vertex_count,
                cap: MAX_COMPLEX_VERTICES,
            });
        }
        let mut sets: Vec<u64> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: vertex_count,
                });
            }
            sets.push(f.iter().fold(0u64, |m, &v| m | 1 << v));
        }
        sets.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
        sets.dedup();
        let mut maximal: Vec<u64> = Vec::new();
        for s in sets {
            if !maximal.iter().any(|&m| m & s == s) {
                maximal.push(s);
            }
        }
        let mut facets: Vec<Vec<usize>> = maximal.iter().map(|&m| mask_to_vec(m)).collect();
        facets.sort();
        Ok(SimplicialComplex {
            vertex_count,
            facets,
        })
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Result<Self> {
        Self::from_faces(n, [(0..n).collect()])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-2)
    }

    /// All faces as bitmasks, grouped by size.
    fn faces_by_size(&self) -> Vec<Vec<u64>> {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        for f in &self.facets {
            let m = f.iter().fold(0u64, |m, &v| m | 1 << v);
            // all submasks of the facet
            let mut sub = m;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        let top = seen
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let mut out = vec![Vec::new(); if seen.is_empty() { 0 } else { top + 1 }];
        for m in seen {
            out[m.count_ones() as usize].push(m);
        }
        out
    }

    pub fn f_vector(&self) -> FVector {
        FVector(
            self.faces_by_size()
                .iter()
                .map(|faces| faces.len() as u64)
                .collect(),
        )
    }
}

pub(crate) fn mask_to_vec(mut m: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Face counts `(f_{-1}, f_0, f_1, ..)`; entry `k` counts faces with `k`
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_i`, i.e. the number of faces of dimension `i` (`i >= -1`).
    pub fn f(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k).copied())
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }
}

/// The clique complex of `g` (vertex `v` of `g` becomes `v - 1`) and its
/// f-vector.
pub fn clique_complex(g: &Graph) -> Result<(SimplicialComplex, FVector)> {
    let facets = g
        .maximal_cliques()
        .into_iter()
        .map(|c| c.into_iter().map(|v| v - 1).collect());
    let cx = SimplicialComplex::from_faces(g.vertex_count(), facets)?;
    let f = clique_f_vector(g);
    Ok((cx, f))
}

/// Counts cliques by size without materialising the complex.
pub fn clique_f_vector(g: &Graph) -> FVector {
    fn extend(g: &Graph, last: usize, cand: &[usize], size: usize, counts: &mut Vec<u64>) {
        if counts.len() <= size {
            counts.resize(size + 1, 0);
        }
        counts[size] += 1;
        for (k, &v) in cand.iter().enumerate() {
            if v <= last {
                continue;
            }
            let next: Vec<usize> = cand[k + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            extend(g, v, &next, size + 1, counts);
        }
    }
    let mut counts = Vec::new();
    let all: Vec<usize> = g.vertices().collect();
    extend(g, 0, &all, 0, &mut counts);
    FVector(counts)
}

/// Reduced homology dimensions `(H~_{-1}, H~_0, ..)` up to the dimension of
/// the complex. The void complex (no faces at all) has no homology.
pub fn homology_ranks<F: Field>(field: &F, cx: &SimplicialComplex) -> Vec<usize> {
    reduced_homology(field, &cx.faces_by_size())
}

/// Reduced homology from faces grouped by size (`faces[k]` has the
/// `k`-element faces, so `faces[0]` is `[0]` for any nonvoid complex).
pub(crate) fn reduced_homology<F: Field>(field: &F, faces: &[Vec<u64>]) -> Vec<usize> {
    if faces.is_empty() {
        return Vec::new();
    }
    // ranks[k] = rank of the boundary from k-faces to (k-1)-faces
    let mut ranks = vec![0usize; faces.len() + 1];
    for k in 1..faces.len() {
        ranks[k] = boundary_rank(field, &faces[k], &faces[k - 1]);
    }
    (0..faces.len())
        .map(|k| faces[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

/// Rank of the simplicial boundary map from `upper` (k-faces) to `lower`.
pub(crate) fn boundary_rank<F: Field>(field: &F, upper: &[u64], lower: &[u64]) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let index: HashMap<u64, usize> = lower.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let one = field.one();
    let minus_one = field.neg(&one);
    let columns: Vec<SparseColumn<F::Elem>> = upper
        .iter()
        .map(|&face| {
            let mut col: SparseColumn<F::Elem> = Vec::with_capacity(face.count_ones() as usize);
            let mut rest = face;
            let mut pos = 0;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let row = index[&(face & !bit)];
                let sign = if pos % 2 == 0 {
                    one.clone()
                } else {
                    minus_one.clone()
                };
                col.push((row, sign));
                pos += 1;
            }
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    sparse_rank(field, columns, lower.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::graph::{bipartite_fm, complete_graph};

    fn gf() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn f_vectors_of_small_graphs() {
        let (_, f) = clique_complex(&complete_graph(3).unwrap()).unwrap();
        assert_eq!(f.0, vec![1, 3, 3, 1]);
        let p3 = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let (cx, f) = clique_complex(&p3).unwrap();
        assert_eq!(f.0, vec![1, 3, 2]);
        assert_eq!(cx.facets(), &[vec![0, 1], vec![1, 2]]);
        let (cx, f) = clique_complex(&bipartite_fm(2).unwrap()).unwrap();
        assert_eq!(f.0, vec![1, 4, 3]);
        assert_eq!(cx.f_vector(), f);
    }

    #[test]
    fn homology_of_standard_complexes() {
        let hollow =
            SimplicialComplex::from_faces(3, [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(homology_ranks(&gf(), &hollow), vec![0, 0, 1]);
        let two_points = SimplicialComplex::from_faces(2, [vec![0], vec![1]]).unwrap();
        assert_eq!(homology_ranks(&gf(), &two_points), vec![0, 1]);
        let simplex = SimplicialComplex::simplex(4).unwrap();
        assert!(homology_ranks(&gf(), &simplex).iter().all(|&h| h == 0));
        let empty_face_only = SimplicialComplex::from_faces(0, [vec![]]).unwrap();
        assert_eq!(homology_ranks(&gf(), &empty_face_only), vec![1]);
    }

    #[test]
    fn projective_plane_sees_the_characteristic() {
        // 6-vertex triangulation of RP^2
        let tris = [
            [0, 1, 3],
            [1, 3, 4],
            [1, 2, 4],
            [2, 4, 0],
            [2, 0, 3],
            [3, 4, 5],
            [4, 0, 5],
            [0, 1, 5],
            [1, 2, 5],
            [2, 3, 5],
        ];
        let cx = SimplicialComplex::from_faces(6, tris.iter().map(|t| t.to_vec())).unwrap();
        assert_eq!(cx.f_vector().0, vec![1, 6, 15, 10]);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(homology_ranks(&f2, &cx), vec![0, 0, 1, 1]);
        assert_eq!(homology_ranks(&Rationals, &cx), vec![0, 0, 0, 0]);
        assert_eq!(homology_ranks(&gf(), &cx), vec![0, 0, 0, 0]);
    }

    #[test]
    fn non_maximal_faces_are_dropped() {
        let cx = SimplicialComplex::from_faces(3, [vec![0], vec![0, 1], vec![2]]).unwrap();
        assert_eq!(cx.facets(), &[vec![0, 1], vec![2]]);
        assert!(SimplicialComplex::from_faces(2, [vec![2]]).is_err());
    }
}
