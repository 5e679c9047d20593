//! Buchberger's algorithm for the lex order, normal forms and initial ideals.

use std::collections::BTreeSet;

use crate::field::Field;
use crate::graph::Graph;
use crate::poly::{Monomial, PolyRing, Polynomial};

/// `x_i y_j - x_j y_i` for every edge `{i, j}`, `i < j`, in edge order.
pub fn binomial_edge_generators<F: Field>(
    ring: &PolyRing<F>,
    g: &Graph,
) -> Vec<Polynomial<F::Elem>> {
    let field = ring.field();
    g.edges()
        .map(|(i, j)| {
            Polynomial::from_terms(
                field,
                [
                    (ring.x(i).mul(&ring.y(j)), field.one()),
                    (ring.x(j).mul(&ring.y(i)), field.neg(&field.one())),
                ],
            )
        })
        .collect()
}

/// A reduced Gröbner basis: monic, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<E> {
    pub elements: Vec<Polynomial<E>>,
}

impl<E: Clone + PartialEq> GroebnerBasis<E> {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|p| *p.leading_monomial().expect("basis elements are nonzero"))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn s_polynomial<F: Field>(
    field: &F,
    f: &Polynomial<F::Elem>,
    g: &Polynomial<F::Elem>,
) -> Polynomial<F::Elem> {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let cf = field.inv(f.leading_coefficient().unwrap());
    let cg = field.inv(g.leading_coefficient().unwrap());
    f.scale_shift(field, &cf, &l.div(lf))
        .sub(field, &g.scale_shift(field, &cg, &l.div(lg)))
}

/// Full reduction of `f` by `divisors`: no term of the result is divisible by
/// a leading monomial of a divisor.
pub fn normal_form<F: Field>(
    field: &F,
    f: &Polynomial<F::Elem>,
    divisors: &[Polynomial<F::Elem>],
) -> Polynomial<F::Elem> {
    let leads: Vec<(Monomial, F::Elem)> = divisors
        .iter()
        .filter_map(|d| Some((*d.leading_monomial()?, d.leading_coefficient()?.clone())))
        .collect();
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((lm, lc)) = p.terms().first().cloned() {
        match leads.iter().position(|(dm, _)| dm.divides(&lm)) {
            Some(k) => {
                let factor = field.div(&lc, &leads[k].1);
                let shifted = divisors[k].scale_shift(field, &factor, &lm.div(&leads[k].0));
                p = p.sub(field, &shifted);
            }
            None => {
                remainder.push((lm, lc));
                p = Polynomial::from_terms(field, p.terms()[1..].iter().cloned());
            }
        }
    }
    Polynomial::from_terms(field, remainder)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are taken by smallest lcm degree, ties broken by the lex-smallest
/// lcm and then by index, so the run is deterministic. Pairs with coprime
/// leading monomials and pairs covered by the chain criterion are skipped.
pub fn buchberger<F: Field>(field: &F, gens: &[Polynomial<F::Elem>]) -> GroebnerBasis<F::Elem> {
    let mut basis: Vec<Polynomial<F::Elem>> = Vec::new();
    let mut pending: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();

    let add = |basis: &mut Vec<Polynomial<F::Elem>>,
               pending: &mut BTreeSet<(u32, Monomial, usize, usize)>,
               p: Polynomial<F::Elem>| {
        let p = p.make_monic(field);
        let lm = *p.leading_monomial().unwrap();
        let j = basis.len();
        for (i, q) in basis.iter().enumerate() {
            let l = q.leading_monomial().unwrap().lcm(&lm);
            pending.insert((l.degree(), l, i, j));
        }
        basis.push(p);
    };

    for g in gens {
        let r = normal_form(field, g, &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pending, r);
        }
    }

    while let Some(entry) = pending.pop_first() {
        let (_, lcm, i, j) = entry;
        let (li, lj) = (
            *basis[i].leading_monomial().unwrap(),
            *basis[j].leading_monomial().unwrap(),
        );
        if li.is_coprime(&lj) {
            continue;
        }
        if chain_criterion(&basis, &pending, i, j, &lcm) {
            continue;
        }
        let s = s_polynomial(field, &basis[i], &basis[j]);
        let r = normal_form(field, &s, &basis);
        if !r.is_zero() {
            add(&mut basis, &mut pending, r);
        }
    }
    reduce_basis(field, basis)
}

fn pair_pending(
    pending: &BTreeSet<(u32, Monomial, usize, usize)>,
    basis: &[Polynomial<impl Clone + PartialEq>],
    a: usize,
    b: usize,
) -> bool {
    let (i, j) = (a.min(b), a.max(b));
    let l = basis[i]
        .leading_monomial()
        .unwrap()
        .lcm(basis[j].leading_monomial().unwrap());
    pending.contains(&(l.degree(), l, i, j))
}

fn chain_criterion<E: Clone + PartialEq>(
    basis: &[Polynomial<E>],
    pending: &BTreeSet<(u32, Monomial, usize, usize)>,
    i: usize,
    j: usize,
    lcm: &Monomial,
) -> bool {
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && basis[k].leading_monomial().unwrap().divides(lcm)
            && !pair_pending(pending, basis, i, k)
            && !pair_pending(pending, basis, j, k)
    })
}

fn reduce_basis<F: Field>(field: &F, basis: Vec<Polynomial<F::Elem>>) -> GroebnerBasis<F::Elem> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial<F::Elem>> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, q)| {
            let lq = q.leading_monomial().unwrap();
            l != k && lq.divides(lm) && (lq != lm || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial<F::Elem>> = minimal
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, q)| q.clone())
            .collect();
        reduced.push(normal_form(field, &minimal[k], &others).make_monic(field));
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    GroebnerBasis { elements: reduced }
}

/// A monomial ideal by its minimal generators, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort();
        all.dedup();
        let minimal: Vec<Monomial> = all
            .iter()
            .filter(|m| !all.iter().any(|d| d != *m && d.divides(m)))
            .copied()
            .collect();
        MonomialIdeal {
            nvars,
            gens: minimal,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Supports of the generators as bitmasks.
    pub fn supports(&self) -> Vec<u32> {
        self.gens.iter().map(Monomial::support).collect()
    }
}

pub fn initial_ideal<E: Clone + PartialEq>(nvars: usize, gb: &GroebnerBasis<E>) -> MonomialIdeal {
    MonomialIdeal::new(nvars, gb.leading_monomials())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::graph::{bipartite_fm, complete_graph};

    fn setup(g: &Graph) -> (PrimeField, PolyRing<PrimeField>, Vec<Polynomial<u32>>) {
        let f = PrimeField::default();
        let r = PolyRing::new(g.vertex_count(), f).unwrap();
        let gens = binomial_edge_generators(&r, g);
        (f, r, gens)
    }

    #[test]
    fn single_edge() {
        let g = complete_graph(2).unwrap();
        let (f, r, gens) = setup(&g);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].display(&f, 4).to_string(), "x1*y2 - x2*y1");
        let gb = buchberger(&f, &gens);
        assert_eq!(gb.elements, gens);
        assert!(normal_form(&f, &gens[0], &gb.elements).is_zero());
        let one = Polynomial::monomial(&f, Monomial::ONE);
        assert_eq!(normal_form(&f, &one, &gb.elements), one);
        let _ = r;
    }

    #[test]
    fn edgeless_graph_has_no_generators() {
        let (f, _, gens) = setup(&Graph::empty(3));
        assert!(gens.is_empty());
        assert!(buchberger(&f, &gens).is_empty());
    }

    #[test]
    fn triangle() {
        let g = complete_graph(3).unwrap();
        let (f, r, gens) = setup(&g);
        let lms: Vec<Monomial> = gens
            .iter()
            .map(|p| *p.leading_monomial().unwrap())
            .collect();
        assert_eq!(
            lms,
            vec![
                r.x(1).mul(&r.y(2)),
                r.x(1).mul(&r.y(3)),
                r.x(2).mul(&r.y(3))
            ]
        );
        let gb = buchberger(&f, &gens);
        let inj = initial_ideal(6, &gb);
        assert!(inj.is_squarefree());
        let mut expect = lms.clone();
        expect.sort();
        assert_eq!(inj.generators(), expect.as_slice());

        // x3 * (x1 y2) reduces to x2 x3 y1
        let p = Polynomial::monomial(&f, r.x(3).mul(&r.x(1)).mul(&r.y(2)));
        let nf = normal_form(&f, &p, &gb.elements);
        assert_eq!(
            nf,
            Polynomial::monomial(&f, r.x(2).mul(&r.x(3)).mul(&r.y(1)))
        );
    }

    #[test]
    fn path_needs_an_extra_element() {
        // a path labelled 1-2-3 is closed; centring it at 1 is not
        let closed = Graph::from_edges(3, [(1, 2), (2, 3)]).unwrap();
        let (f, _, gens) = setup(&closed);
        assert_eq!(buchberger(&f, &gens).len(), 2);
        let p3 = Graph::from_edges(3, [(1, 2), (1, 3)]).unwrap();
        let (f, r, gens) = setup(&p3);
        let gb = buchberger(&f, &gens);
        // admissible path 2-1-3 gives y1 (x2 y3 - x3 y2)
        assert_eq!(gb.len(), 3);
        assert!(gb
            .leading_monomials()
            .contains(&r.x(2).mul(&r.y(1)).mul(&r.y(3))));
        for a in 0..gb.len() {
            for b in a + 1..gb.len() {
                let s = s_polynomial(&f, &gb.elements[a], &gb.elements[b]);
                assert!(normal_form(&f, &s, &gb.elements).is_zero());
            }
        }
    }

    #[test]
    fn f2_initial_ideal_is_squarefree() {
        let g = bipartite_fm(2).unwrap();
        let (f, _, gens) = setup(&g);
        let gb = buchberger(&f, &gens);
        assert!(initial_ideal(8, &gb).is_squarefree());
    }
}
