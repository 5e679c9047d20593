//! Betti numbers of `S/J` as Koszul homology `H_i(x, y; S/J)`.
//!
//! `J_G` is homogeneous for the grading `deg x_v = (e_v, 1)`,
//! `deg y_v = (e_v, 0)` in `Z^n × Z`, and so is its Gröbner basis. The Koszul
//! complex splits into one small complex per multidegree `(c, k)`; the
//! graded pieces of `S/J` are spanned by standard monomials.
//!
//! When `in(J)` is squarefree, every multigraded Betti number of `S/in(J)`
//! sits in a degree with all `c_v <= 2`, and the Betti numbers of `S/J` are
//! bounded by those of `S/in(J)` degree by degree. Restricting to that box
//! therefore loses nothing.

use std::collections::HashMap;

use rayon::prelude::*;

use super::hochster::NonFaces;
use super::table::{BettiTable, Coverage, Subject};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{initial_ideal, normal_form, GroebnerBasis, MonomialIdeal};
use crate::linalg::{sparse_rank, SparseColumn};
use crate::poly::{Monomial, Polynomial, MAX_VARS};

pub const KOSZUL_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct KoszulOptions {
    /// Largest internal degree `j` computed.
    pub max_degree: Option<usize>,
    /// Restrict to multidegrees with every `c_v <= 2`; needs a squarefree
    /// initial ideal. Without it `max_degree` is required.
    pub squarefree_box: bool,
    /// Skip multidegrees and homological degrees where `S/in(J)` has no
    /// Betti number (computed by Hochster's formula). Only valid inside the
    /// squarefree box.
    pub prune_by_initial: bool,
}

impl Default for KoszulOptions {
    fn default() -> Self {
        KoszulOptions {
            max_degree: None,
            squarefree_box: true,
            prune_by_initial: true,
        }
    }
}

impl KoszulOptions {
    /// Every block of the squarefree box, no pruning.
    pub fn exhaustive() -> Self {
        KoszulOptions {
            prune_by_initial: false,
            ..Self::default()
        }
    }
}

type VDeg = [u8; MAX_VARS / 2];

/// Standard monomials grouped by multidegree, with normal forms of their
/// products by single variables.
struct Standard<E> {
    n: usize,
    pos_in_group: Vec<u32>,
    groups: HashMap<(VDeg, u8), Vec<u32>>,
    /// nf[id * 2n + var]: normal form of var * monomial, as (id, coefficient)
    nf: Vec<Vec<(u32, E)>>,
}

fn vdeg_of(m: &Monomial, n: usize) -> (VDeg, u8) {
    let mut c = [0u8; MAX_VARS / 2];
    let mut kx = 0;
    for v in 0..n {
        c[v] = m.0[v] + m.0[n + v];
        kx += m.0[v];
    }
    (c, kx)
}

/// Normal form of a monomial when every basis element has at most two terms.
fn binomial_nf<F: Field>(
    field: &F,
    gb: &[Polynomial<F::Elem>],
    mut m: Monomial,
) -> Option<(Monomial, F::Elem)> {
    let mut c = field.one();
    loop {
        let Some(g) = gb
            .iter()
            .find(|g| g.leading_monomial().unwrap().divides(&m))
        else {
            return Some((m, c));
        };
        let terms = g.terms();
        if terms.len() == 1 {
            return None;
        }
        // lead = -(tail coefficient) * tail modulo J (basis is monic)
        let (tail, tc) = &terms[1];
        m = m.div(&terms[0].0).mul(tail);
        c = field.mul(&c, &field.neg(tc));
    }
}

impl<E: Clone + PartialEq + Send + Sync> Standard<E> {
    fn build<F: Field<Elem = E>>(
        field: &F,
        n: usize,
        gb: &GroebnerBasis<E>,
        inj: &MonomialIdeal,
        vertex_cap: usize,
        total_cap: usize,
    ) -> Self {
        let mut monomials = Vec::new();
        fn walk(
            inj: &MonomialIdeal,
            n: usize,
            v: usize,
            m: &mut Monomial,
            left: usize,
            vertex_cap: usize,
            out: &mut Vec<Monomial>,
        ) {
            if inj.contains(m) {
                return;
            }
            if v == n {
                out.push(*m);
                return;
            }
            for a in 0..=vertex_cap.min(left) {
                for b in 0..=(vertex_cap - a).min(left - a) {
                    m.0[v] = a as u8;
                    m.0[n + v] = b as u8;
                    walk(inj, n, v + 1, m, left - a - b, vertex_cap, out);
                }
            }
            m.0[v] = 0;
            m.0[n + v] = 0;
        }
        let mut m = Monomial::ONE;
        walk(inj, n, 0, &mut m, total_cap, vertex_cap, &mut monomials);
        monomials.sort();

        let mut groups: HashMap<(VDeg, u8), Vec<u32>> = HashMap::new();
        let mut pos_in_group = Vec::with_capacity(monomials.len());
        for (id, m) in monomials.iter().enumerate() {
            let g = groups.entry(vdeg_of(m, n)).or_default();
            pos_in_group.push(g.len() as u32);
            g.push(id as u32);
        }
        let index: HashMap<Monomial, u32> = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (*m, k as u32))
            .collect();

        let binomial = gb.elements.iter().all(|g| g.terms().len() <= 2);
        let nvars = 2 * n;
        let nf: Vec<Vec<(u32, E)>> = (0..monomials.len() * nvars)
            .into_par_iter()
            .map(|slot| {
                let (id, var) = (slot / nvars, slot % nvars);
                let v = if var < n { var } else { var - n };
                let m = monomials[id];
                if (m.0[v] + m.0[n + v]) as usize >= vertex_cap || m.degree() as usize >= total_cap
                {
                    return Vec::new();
                }
                let prod = m.mul(&Monomial::var(var));
                if binomial {
                    binomial_nf(field, &gb.elements, prod)
                        .map(|(r, c)| vec![(index[&r], c)])
                        .unwrap_or_default()
                } else {
                    let p = Polynomial::monomial(field, prod);
                    normal_form(field, &p, &gb.elements)
                        .terms()
                        .iter()
                        .map(|(r, c)| (index[r], c.clone()))
                        .collect()
                }
            })
            .collect();
        Standard {
            n,
            pos_in_group,
            groups,
            nf,
        }
    }
}

/// Koszul basis elements `e_T ⊗ m` of one multidegree, grouped by `|T|`.
struct Block<'a> {
    /// by_size[i]: (T, offset, monomial ids)
    by_size: Vec<Vec<(u32, usize, &'a [u32])>>,
    dims: Vec<usize>,
}

fn block<'a, E>(std: &'a Standard<E>, c: &VDeg, kx: u8) -> Block<'a> {
    let n = std.n;
    let nvars = 2 * n;
    let mut by_size: Vec<Vec<(u32, usize, &[u32])>> = vec![Vec::new(); nvars + 1];
    let mut dims = vec![0usize; nvars + 1];
    // per-vertex choices of T ∩ {x_v, y_v}
    let mut t_sets: Vec<(u32, VDeg, u8)> = vec![(0, *c, kx)];
    for v in 0..n {
        let mut next = Vec::with_capacity(t_sets.len() * 4);
        for &(t, rest, kr) in &t_sets {
            let cv = rest[v];
            for (bits, size, xs) in [(0u32, 0u8, 0u8), (1, 1, 1), (2, 1, 0), (3, 2, 1)] {
                if size > cv || xs > kr {
                    continue;
                }
                let mut r = rest;
                r[v] -= size;
                let mut mask = t;
                if bits & 1 == 1 {
                    mask |= 1 << v;
                }
                if bits & 2 == 2 {
                    mask |= 1 << (n + v);
                }
                next.push((mask, r, kr - xs));
            }
        }
        t_sets = next;
    }
    for (t, rest, kr) in t_sets {
        if let Some(ids) = std.groups.get(&(rest, kr)) {
            let i = t.count_ones() as usize;
            by_size[i].push((t, dims[i], ids.as_slice()));
            dims[i] += ids.len();
        }
    }
    Block { by_size, dims }
}

/// `β_i` of one multidegree block, for every `i`.
///
/// With `wanted` (a bitmask of homological degrees) only those entries are
/// computed; the others are reported as zero.
fn block_betti<F: Field>(
    field: &F,
    std: &Standard<F::Elem>,
    b: &Block<'_>,
    wanted: Option<u64>,
) -> Vec<usize> {
    let nvars = 2 * std.n;
    let top = b.dims.iter().rposition(|&d| d > 0).unwrap_or(0);
    let want = |i: usize| wanted.map_or(true, |w| w >> i & 1 == 1);
    let mut ranks = vec![0usize; top + 2];
    let minus_one = field.neg(&field.one());
    for i in 1..=top {
        if b.dims[i] == 0 || b.dims[i - 1] == 0 || !(want(i) || want(i - 1)) {
            continue;
        }
        let offsets: HashMap<u32, usize> = b.by_size[i - 1]
            .iter()
            .map(|&(t, off, _)| (t, off))
            .collect();
        let mut columns: Vec<SparseColumn<F::Elem>> = Vec::with_capacity(b.dims[i]);
        for &(t, _, ids) in &b.by_size[i] {
            for &id in ids {
                let mut col: SparseColumn<F::Elem> = Vec::new();
                let mut rest = t;
                let mut k = 0;
                while rest != 0 {
                    let var = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let terms = &std.nf[id as usize * nvars + var];
                    if !terms.is_empty() {
                        let base = offsets[&(t & !(1 << var))];
                        for (r, coef) in terms {
                            let val = if k % 2 == 0 {
                                coef.clone()
                            } else {
                                field.mul(coef, &minus_one)
                            };
                            col.push((base + std.pos_in_group[*r as usize] as usize, val));
                        }
                    }
                    k += 1;
                }
                col.sort_unstable_by_key(|e| e.0);
                columns.push(col);
            }
        }
        ranks[i] = sparse_rank(field, columns, b.dims[i - 1]);
    }
    (0..=top)
        .map(|i| {
            if want(i) {
                b.dims[i] - ranks[i] - ranks[i + 1]
            } else {
                0
            }
        })
        .collect()
}

/// Homological degrees (as a bitmask) of the nonzero multigraded Betti
/// numbers of `S/in(J)`, by multidegree `(c, k)`.
fn initial_support<F: Field>(
    field: &F,
    n: usize,
    inj: &MonomialIdeal,
    total_cap: usize,
) -> Result<HashMap<(VDeg, u8), u64>> {
    let nf = NonFaces::new(inj)?;
    let nvars = 2 * n;
    let found: Vec<(u32, u64)> = (0u32..1 << nvars)
        .into_par_iter()
        .filter(|w| w.count_ones() as usize <= total_cap)
        .filter_map(|w| {
            let h = nf.restricted_homology(field, w);
            let size = w.count_ones() as usize;
            let mask = h
                .iter()
                .enumerate()
                .filter(|&(k, &dim)| dim > 0 && k <= size)
                .fold(0u64, |m, (k, _)| m | 1 << (size - k));
            (mask != 0).then_some((w, mask))
        })
        .collect();
    let mut out: HashMap<(VDeg, u8), u64> = HashMap::new();
    for (w, mask) in found {
        let key = vdeg_of(&Monomial::from_support(w), n);
        *out.entry(key).or_insert(0) |= mask;
    }
    Ok(out)
}

/// Graded Betti numbers of `S/J` for the ideal with reduced Gröbner basis
/// `gb` in the ring of a graph on `n` vertices.
pub fn koszul_betti<F: Field>(
    field: &F,
    n: usize,
    gb: &GroebnerBasis<F::Elem>,
    opts: &KoszulOptions,
) -> Result<BettiTable> {
    let nvars = 2 * n;
    if nvars > KOSZUL_CAP {
        return Err(Error::SizeCap {
            what: "Koszul table",
            vars: nvars,
            cap: KOSZUL_CAP,
        });
    }
    let inj = initial_ideal(nvars, gb);
    let (vertex_cap, total_cap) = if opts.squarefree_box {
        if !inj.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        (2, opts.max_degree.unwrap_or(nvars).min(nvars))
    } else {
        let d = opts.max_degree.ok_or_else(|| {
            Error::IncompleteTable("a degree bound is needed outside the squarefree box".into())
        })?;
        (d, d)
    };
    let coverage = if opts.squarefree_box && total_cap >= nvars {
        Coverage::Full
    } else {
        Coverage::UpTo(total_cap)
    };
    let std = Standard::build(field, n, gb, &inj, vertex_cap, total_cap);

    // all multidegrees c with c_v <= vertex_cap and |c| <= total_cap
    let mut degrees: Vec<VDeg> = vec![[0; MAX_VARS / 2]];
    for v in 0..n {
        let mut next = Vec::new();
        for c in &degrees {
            let used: usize = c.iter().map(|&x| x as usize).sum();
            for cv in 0..=vertex_cap.min(total_cap - used) {
                let mut c2 = *c;
                c2[v] = cv as u8;
                next.push(c2);
            }
        }
        degrees = next;
    }
    let support = if opts.prune_by_initial {
        if !opts.squarefree_box {
            return Err(Error::Guard(
                "pruning by the initial ideal needs the squarefree box".into(),
            ));
        }
        Some(initial_support(field, n, &inj, total_cap)?)
    } else {
        None
    };
    let blocks: Vec<(VDeg, u8)> = degrees
        .iter()
        .flat_map(|c| {
            let total: usize = c.iter().map(|&x| x as usize).sum();
            let (lo, hi) = if opts.squarefree_box {
                (
                    c.iter().filter(|&&x| x == 2).count(),
                    c.iter().filter(|&&x| x >= 1).count(),
                )
            } else {
                (0, total)
            };
            (lo..=hi).map(move |k| (*c, k as u8))
        })
        .filter(|key| support.as_ref().map_or(true, |s| s.contains_key(key)))
        .collect();

    let results: Vec<(usize, Vec<usize>)> = blocks
        .par_iter()
        .map(|(c, kx)| {
            let j = c.iter().map(|&x| x as usize).sum();
            let b = block(&std, c, *kx);
            let wanted = support.as_ref().map(|s| s[&(*c, *kx)]);
            (j, block_betti(field, &std, &b, wanted))
        })
        .collect();
    let mut table = BettiTable::new(nvars, Subject::Ideal, coverage);
    for (j, betti) in results {
        for (i, v) in betti.into_iter().enumerate() {
            table.add(i, j, v as u64);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::graph::{bipartite_fm, complete_graph, Graph};
    use crate::groebner::{binomial_edge_generators, buchberger};
    use crate::poly::PolyRing;

    fn betti(g: &Graph, opts: &KoszulOptions) -> Vec<((usize, usize), u64)> {
        let f = PrimeField::default();
        let ring = PolyRing::new(g.vertex_count(), f).unwrap();
        let gb = buchberger(&f, &binomial_edge_generators(&ring, g));
        koszul_betti(&f, g.vertex_count(), &gb, opts)
            .unwrap()
            .entries()
            .collect()
    }

    #[test]
    fn single_edge() {
        let got = betti(&complete_graph(2).unwrap(), &KoszulOptions::default());
        assert_eq!(got, vec![((0, 0), 1), ((1, 2), 1)]);
    }

    #[test]
    fn triangle_and_path() {
        let got = betti(&complete_graph(3).unwrap(), &KoszulOptions::default());
        assert_eq!(got, vec![((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
        let p3 = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let got = betti(&p3, &KoszulOptions::default());
        assert_eq!(got, vec![((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]);
    }

    #[test]
    fn box_matches_unrestricted_computation() {
        let graphs = [
            complete_graph(3).unwrap(),
            Graph::from_edges(3, [(1, 2), (1, 3)]).unwrap(),
            bipartite_fm(2).unwrap(),
            Graph::from_edges(4, [(1, 2), (2, 3), (3, 1), (3, 4)]).unwrap(),
        ];
        for g in &graphs {
            let full = betti(
                g,
                &KoszulOptions {
                    max_degree: Some(2 * g.vertex_count()),
                    squarefree_box: false,
                    prune_by_initial: false,
                },
            );
            assert_eq!(betti(g, &KoszulOptions::exhaustive()), full);
            assert_eq!(betti(g, &KoszulOptions::default()), full);
        }
    }

    #[test]
    fn f2_is_a_complete_intersection() {
        let got = betti(&bipartite_fm(2).unwrap(), &KoszulOptions::default());
        assert_eq!(
            got,
            vec![((0, 0), 1), ((1, 2), 3), ((2, 4), 3), ((3, 6), 1)]
        );
    }

    #[test]
    fn degree_bound_is_reported() {
        let f = PrimeField::default();
        let g = complete_graph(3).unwrap();
        let ring = PolyRing::new(3, f).unwrap();
        let gb = buchberger(&f, &binomial_edge_generators(&ring, &g));
        let opts = KoszulOptions {
            max_degree: Some(2),
            ..KoszulOptions::default()
        };
        let t = koszul_betti(&f, 3, &gb, &opts).unwrap();
        assert_eq!(t.coverage(), &Coverage::UpTo(2));
        assert_eq!(t.get(2, 3), 0);
        let no_bound = KoszulOptions {
            max_degree: None,
            squarefree_box: false,
            prune_by_initial: false,
        };
        assert!(koszul_betti(&f, 3, &gb, &no_bound).is_err());
    }
}
