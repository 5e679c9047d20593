//! Betti numbers of squarefree monomial quotients by Hochster's formula:
//! `β_{i,j}(S/I) = Σ_{|W|=j} dim H~_{j-i-1}(Δ_W)` where `Δ` is the
//! Stanley–Reisner complex of `I` and `Δ_W` its restriction to `W`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::{BettiTable, Coverage, Subject};
use crate::complex::{mask_to_vec, reduced_homology, FVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::MonomialIdeal;

/// Largest ring for a full table.
pub const FULL_TABLE_CAP: usize = 14;
/// Largest ring when only a few internal degrees are requested.
pub const DEGREE_CAP: usize = 24;

/// Nonfaces of a squarefree ideal, indexed for restriction queries.
#[derive(Clone, Debug)]
pub struct NonFaces {
    nvars: usize,
    gens: Vec<u32>,
    /// by_vertex[v]: generator masks containing v
    by_vertex: Vec<Vec<u32>>,
}

impl NonFaces {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        if !ideal.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let gens = ideal.supports();
        let nvars = ideal.nvars();
        let by_vertex = (0..nvars)
            .map(|v| gens.iter().copied().filter(|g| g >> v & 1 == 1).collect())
            .collect();
        Ok(NonFaces {
            nvars,
            gens,
            by_vertex,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn is_face(&self, mask: u32) -> bool {
        !self.gens.iter().any(|&g| g & mask == g)
    }

    /// `Δ_W` is a cone when some vertex of `W` lies in no nonface inside `W`.
    fn restriction_is_cone(&self, w: u32) -> bool {
        let mut rest = w;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !self.by_vertex[v].iter().any(|&g| g & w == g) {
                return true;
            }
        }
        false
    }

    /// Faces of `Δ_W` grouped by size.
    fn faces_within(&self, w: u32) -> Vec<Vec<u64>> {
        let verts: Vec<usize> = mask_to_vec(w as u64);
        let mut out: Vec<Vec<u64>> = vec![vec![0]];
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        while let Some((face, start)) = stack.pop() {
            for (k, &v) in verts.iter().enumerate().skip(start) {
                let next = face | 1 << v;
                if self.by_vertex[v].iter().any(|&g| g & next == g) {
                    continue;
                }
                let size = next.count_ones() as usize;
                if out.len() <= size {
                    out.resize(size + 1, Vec::new());
                }
                out[size].push(next as u64);
                stack.push((next, k + 1));
            }
        }
        for level in out.iter_mut() {
            level.sort_unstable();
        }
        out
    }

    /// Reduced homology `(H~_{-1}, H~_0, ..)` of `Δ_W`.
    pub fn restricted_homology<F: Field>(&self, field: &F, w: u32) -> Vec<usize> {
        if w != 0 && self.restriction_is_cone(w) {
            return Vec::new();
        }
        reduced_homology(field, &self.faces_within(w))
    }

    /// Face counts of the whole complex by size.
    pub fn f_vector(&self) -> FVector {
        let full = if self.nvars == 32 {
            u32::MAX
        } else {
            (1u32 << self.nvars) - 1
        };
        FVector(
            self.faces_within(full)
                .iter()
                .map(|level| level.len() as u64)
                .collect(),
        )
    }
}

/// The Stanley–Reisner complex of a squarefree monomial ideal, on the
/// variables `0..nvars`.
pub fn stanley_reisner(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    let nf = NonFaces::new(ideal)?;
    let n = nf.nvars;
    // maximal faces by backtracking: a face is a facet when no vertex can be added
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
    while let Some((face, start)) = stack.pop() {
        let extendable = (0..n).any(|v| face >> v & 1 == 0 && nf.is_face(face | 1 << v));
        if !extendable {
            facets.push(mask_to_vec(face as u64));
            continue;
        }
        for v in start..n {
            let next = face | 1 << v;
            if face >> v & 1 == 0 && nf.is_face(next) {
                stack.push((next, v + 1));
            }
        }
    }
    SimplicialComplex::from_faces(n, facets)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(0);
        return out;
    }
    // Gosper's hack
    let mut s: u32 = (1u32 << k) - 1;
    let limit: u64 = 1u64 << n;
    while (s as u64) < limit {
        out.push(s);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
        if r == 0 {
            break;
        }
    }
    out
}

/// Adds the contribution of all `|W| = j` to `table`.
fn fill_degree<F: Field>(field: &F, nf: &NonFaces, j: usize, table: &mut BettiTable) {
    let per_w: Vec<Vec<usize>> = subsets_of_size(nf.nvars, j)
        .into_par_iter()
        .map(|w| nf.restricted_homology(field, w))
        .collect();
    for h in per_w {
        // h[k] is H~_{k-1}; it contributes to β_{i,j} with j - i - 1 = k - 1
        for (k, &dim) in h.iter().enumerate() {
            if dim > 0 && k <= j {
                table.add(j - k, j, dim as u64);
            }
        }
    }
}

/// Full Betti table of `S/I` for a squarefree `I`.
pub fn hochster_betti<F: Field>(field: &F, ideal: &MonomialIdeal) -> Result<BettiTable> {
    let n = ideal.nvars();
    if n > FULL_TABLE_CAP {
        return Err(Error::SizeCap {
            what: "Hochster full table",
            vars: n,
            cap: FULL_TABLE_CAP,
        });
    }
    let nf = NonFaces::new(ideal)?;
    let mut t = BettiTable::new(n, Subject::Initial, Coverage::Full);
    for j in 0..=n {
        fill_degree(field, &nf, j, &mut t);
    }
    Ok(t)
}

/// Entries `β_{i,j}` for the requested internal degrees `j` only.
pub fn hochster_degrees<F: Field>(
    field: &F,
    ideal: &MonomialIdeal,
    degrees: &BTreeSet<usize>,
) -> Result<BettiTable> {
    let n = ideal.nvars();
    if n > DEGREE_CAP {
        return Err(Error::SizeCap {
            what: "Hochster restricted table",
            vars: n,
            cap: DEGREE_CAP,
        });
    }
    let nf = NonFaces::new(ideal)?;
    let degrees: BTreeSet<usize> = degrees.iter().copied().filter(|&j| j <= n).collect();
    let mut t = BettiTable::new(n, Subject::Initial, Coverage::Degrees(degrees.clone()));
    for &j in &degrees {
        fill_degree(field, &nf, j, &mut t);
    }
    Ok(t)
}

/// Extremal Betti number of a Cohen–Macaulay quotient `S/I` read from
/// three internal degrees.
///
/// The Krull dimension `d` and the h-vector come from the f-vector of the
/// Stanley–Reisner complex; assuming `S/I` is Cohen–Macaulay, `p = nvars - d`
/// and `r = deg h`. The degrees `p+r-1`, `p+r`, `p+r+1` are computed; the
/// corner is `certified` when `β_{p,p+r}` is nonzero, `|lc h| = β_{p,p+r}` and
/// nothing sits beyond it in the computed degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerReport {
    pub p: usize,
    pub r: usize,
    pub d: usize,
    pub h: Vec<i64>,
    pub value: u64,
    pub certified: bool,
    #[serde(skip)]
    pub table: Option<BettiTable>,
}

pub fn hochster_corner<F: Field>(field: &F, ideal: &MonomialIdeal) -> Result<CornerReport> {
    let n = ideal.nvars();
    if n > DEGREE_CAP {
        return Err(Error::SizeCap {
            what: "Hochster corner mode",
            vars: n,
            cap: DEGREE_CAP,
        });
    }
    let nf = NonFaces::new(ideal)?;
    let f = nf.f_vector();
    let d = f.0.len() - 1;
    let h = crate::hilbert::h_from_f(&f, d)?;
    let r = h.iter().rposition(|&x| x != 0).unwrap_or(0);
    let p = n - d;
    let degrees: BTreeSet<usize> = [p + r - 1, p + r, p + r + 1]
        .into_iter()
        .filter(|&j| j <= n)
        .collect();
    let table = hochster_degrees(field, ideal, &degrees)?;
    let value = table.get(p, p + r);
    let beyond = table
        .entries()
        .any(|((i, j), _)| (i, j) != (p, p + r) && i >= p && j >= i + r);
    let certified = value > 0 && !beyond && h[r].unsigned_abs() == value;
    Ok(CornerReport {
        p,
        r,
        d,
        h,
        value,
        certified,
        table: Some(table),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::Monomial;

    fn ideal(nvars: usize, supports: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::new(
            nvars,
            supports
                .iter()
                .map(|s| Monomial::from_support(s.iter().fold(0, |m, &v| m | 1 << v))),
        )
    }

    #[test]
    fn principal_ideal() {
        // (x1 y2) in K[x1, x2, y1, y2]
        let i = ideal(4, &[&[0, 3]]);
        let t = hochster_betti(&PrimeField::default(), &i).unwrap();
        let got: Vec<_> = t.entries().collect();
        assert_eq!(got, vec![((0, 0), 1), ((1, 2), 1)]);
        let cx = stanley_reisner(&i).unwrap();
        assert_eq!(cx.facets(), &[vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn zero_ideal_is_a_simplex() {
        let i = ideal(3, &[]);
        assert_eq!(stanley_reisner(&i).unwrap().facets(), &[vec![0, 1, 2]]);
        let t = hochster_betti(&PrimeField::default(), &i).unwrap();
        assert_eq!(t.entries().count(), 1);
    }

    #[test]
    fn triangle_initial_ideal() {
        // in(J_K3) = (x1 y2, x1 y3, x2 y3): variables x1..x3 = 0..2, y1..y3 = 3..5
        let i = ideal(6, &[&[0, 4], &[0, 5], &[1, 5]]);
        let t = hochster_betti(&PrimeField::default(), &i).unwrap();
        let got: Vec<_> = t.entries().collect();
        assert_eq!(got, vec![((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        assert_eq!(stanley_reisner(&i).unwrap().facets().len(), 3);
    }

    #[test]
    fn complete_intersection() {
        // three coprime quadrics: Koszul table (1, 3, 3, 1) in degrees 0, 2, 4, 6
        let i = ideal(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        let t = hochster_betti(&Rationals, &i).unwrap();
        let got: Vec<_> = t.entries().collect();
        assert_eq!(
            got,
            vec![((0, 0), 1), ((1, 2), 3), ((2, 4), 3), ((3, 6), 1)]
        );
        let c = hochster_corner(&PrimeField::default(), &i).unwrap();
        assert_eq!((c.p, c.r, c.value, c.d), (3, 3, 1, 3));
        assert_eq!(c.h, vec![1, 3, 3, 1]);
        assert!(c.certified);
    }

    #[test]
    fn restricted_degrees_agree_with_full() {
        let i = ideal(6, &[&[0, 4], &[0, 5], &[1, 5], &[2, 3]]);
        let f = PrimeField::default();
        let full = hochster_betti(&f, &i).unwrap();
        let part = hochster_degrees(&f, &i, &[3, 4].into_iter().collect()).unwrap();
        for ((a, b), v) in full.entries().filter(|((_, j), _)| *j == 3 || *j == 4) {
            assert_eq!(part.get(a, b), v);
        }
        assert_eq!(part.get(0, 0), 0);
    }

    #[test]
    fn caps_and_squarefreeness() {
        let big = ideal(16, &[&[0, 1]]);
        assert!(matches!(
            hochster_betti(&PrimeField::default(), &big),
            Err(Error::SizeCap { .. })
        ));
        let sq = MonomialIdeal::new(2, [Monomial::from_exponents(&[2])]);
        assert!(matches!(stanley_reisner(&sq), Err(Error::NotSquarefree)));
    }

    #[test]
    fn gosper_enumeration() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(4, 0), vec![0]);
        assert_eq!(subsets_of_size(4, 4), vec![15]);
        assert_eq!(subsets_of_size(24, 12).len(), 2704156);
    }
}
