use beideal::graph::{bipartite_fm, complete_graph, connected_graphs};
use beideal::groebner::{
    binomial_edge_generators, buchberger, initial_ideal, normal_form, s_polynomial,
};
use beideal::poly::{Monomial, PolyRing, Polynomial};
use beideal::{Graph, PrimeField, Rationals};
use proptest::prelude::*;

fn corpus() -> Vec<Graph> {
    (2..=5).flat_map(connected_graphs).collect()
}

#[test]
fn s_pairs_reduce_and_initial_ideals_are_squarefree() {
    let f = PrimeField::default();
    for g in corpus() {
        let ring = PolyRing::new(g.vertex_count(), f).unwrap();
        let gb = buchberger(&f, &binomial_edge_generators(&ring, &g));
        for a in 0..gb.len() {
            for b in a + 1..gb.len() {
                let s = s_polynomial(&f, &gb.elements[a], &gb.elements[b]);
                assert!(normal_form(&f, &s, &gb.elements).is_zero(), "{g:?}");
            }
        }
        assert!(initial_ideal(ring.nvars(), &gb).is_squarefree(), "{g:?}");
    }
}

#[test]
fn bases_are_reproducible() {
    let f = PrimeField::default();
    for g in connected_graphs(4) {
        let ring = PolyRing::new(4, f).unwrap();
        let gens = binomial_edge_generators(&ring, &g);
        let mut reversed = gens.clone();
        reversed.reverse();
        let a = buchberger(&f, &gens);
        assert_eq!(a, buchberger(&f, &gens));
        assert_eq!(a, buchberger(&f, &reversed));
    }
}

#[test]
fn rational_and_modular_initial_ideals_agree() {
    for g in connected_graphs(4) {
        let p = PrimeField::new(101).unwrap();
        let rp = PolyRing::new(4, p).unwrap();
        let rq = PolyRing::new(4, Rationals).unwrap();
        let a = initial_ideal(8, &buchberger(&p, &binomial_edge_generators(&rp, &g)));
        let b = initial_ideal(
            8,
            &buchberger(&Rationals, &binomial_edge_generators(&rq, &g)),
        );
        assert_eq!(a, b);
    }
}

fn test_graphs() -> Vec<Graph> {
    vec![
        complete_graph(4).unwrap(),
        bipartite_fm(3).unwrap(),
        Graph::from_edges(5, [(1, 2), (1, 3), (1, 4), (4, 5)]).unwrap(),
    ]
}

fn random_poly(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u8>, u32)>> {
    prop::collection::vec((prop::collection::vec(0u8..3, nvars), 1u32..32003), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn multiples_of_generators_reduce_to_zero(
        which in 0usize..3,
        edge in 0usize..16,
        terms in random_poly(12),
    ) {
        let g = &test_graphs()[which];
        let f = PrimeField::default();
        let ring = PolyRing::new(g.vertex_count(), f).unwrap();
        let gens = binomial_edge_generators(&ring, g);
        let gb = buchberger(&f, &gens);
        let nvars = ring.nvars();
        let h = Polynomial::from_terms(
            &f,
            terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e[..nvars]), c)),
        );
        let product = h.mul(&f, &gens[edge % gens.len()]);
        prop_assert!(normal_form(&f, &product, &gb.elements).is_zero());
    }
}
