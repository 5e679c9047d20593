//! Family expressions: the syntax tree of constructors that names a graph.
//!
//! The same tree drives graph construction ([`FamilyExpr::build`]) and the
//! closed-form evaluator in [`crate::closed_form`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Composite, FanBlock, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyExpr {
    Complete(usize),
    BipartiteFm(usize),
    Fan {
        m: usize,
        blocks: Vec<FanBlock>,
    },
    Cone(Vec<FamilyExpr>),
    DisjointUnion(Vec<FamilyExpr>),
    /// Operation ∗; the left operand gives up its highest-labelled leaf, the
    /// right one its lowest-labelled leaf.
    Star(Box<FamilyExpr>, Box<FamilyExpr>),
    /// Operation ∘ folded left to right over `F_{m_1} ∘ .. ∘ F_{m_t} ∘ F`.
    Circ(Vec<FamilyExpr>),
}

impl FamilyExpr {
    pub fn pure_fan(m: usize, sizes: &[usize]) -> Self {
        FamilyExpr::Fan {
            m,
            blocks: sizes.iter().map(|&s| FanBlock::pure(s)).collect(),
        }
    }

    pub fn star(left: FamilyExpr, right: FamilyExpr) -> Self {
        FamilyExpr::Star(Box::new(left), Box::new(right))
    }

    /// Pure block sizes if this is a fan whose blocks are all pure.
    pub fn pure_fan_sizes(&self) -> Option<(usize, Vec<usize>)> {
        match self {
            FamilyExpr::Fan { m, blocks } if blocks.iter().all(FanBlock::is_pure) => {
                Some((*m, blocks.iter().map(FanBlock::len).collect()))
            }
            _ => None,
        }
    }

    /// Checks the structural rules that do not need the graph itself.
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilyExpr::Complete(m) | FamilyExpr::BipartiteFm(m) => {
                if *m == 0 {
                    return Err(Error::InvalidFamily(format!("{self}: size must be >= 1")));
                }
            }
            FamilyExpr::Fan { m, blocks } => {
                graph::fan_graph(*m, blocks)?;
            }
            FamilyExpr::Cone(parts) | FamilyExpr::DisjointUnion(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidFamily(format!("{self}: no parts")));
                }
                for p in parts {
                    p.validate()?;
                }
            }
            FamilyExpr::Star(a, b) => {
                a.validate()?;
                b.validate()?;
            }
            FamilyExpr::Circ(chain) => validate_chain(chain)?,
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            FamilyExpr::Complete(m) => *m,
            FamilyExpr::BipartiteFm(m) => 2 * m,
            FamilyExpr::Fan { m, blocks } => {
                m + blocks
                    .iter()
                    .flat_map(|b| b.cliques.iter().enumerate().map(|(i, h)| h - (i + 1)))
                    .sum::<usize>()
            }
            FamilyExpr::Cone(parts) => 1 + parts.iter().map(Self::vertex_count).sum::<usize>(),
            FamilyExpr::DisjointUnion(parts) => parts.iter().map(Self::vertex_count).sum(),
            FamilyExpr::Star(a, b) => a.vertex_count() + b.vertex_count() - 1,
            FamilyExpr::Circ(chain) => {
                chain.iter().map(Self::vertex_count).sum::<usize>() - 3 * (chain.len() - 1)
            }
        }
    }

    /// Builds the graph; provenance is set to `self`.
    pub fn build(&self) -> Result<Graph> {
        Ok(self.build_composite()?.graph.with_provenance(self.clone()))
    }

    /// Builds the graph together with the relabelling of the immediate parts.
    pub fn build_composite(&self) -> Result<Composite> {
        self.validate()?;
        let plain = |graph: Graph| Composite {
            maps: vec![(1..=graph.vertex_count()).map(Some).collect()],
            graph,
            special: None,
        };
        match self {
            FamilyExpr::Complete(m) => Ok(plain(graph::complete_graph(*m)?)),
            FamilyExpr::BipartiteFm(m) => Ok(plain(graph::bipartite_fm(*m)?)),
            FamilyExpr::Fan { m, blocks } => Ok(plain(graph::fan_graph(*m, blocks)?)),
            FamilyExpr::Cone(parts) => graph::cone(&build_all(parts)?),
            FamilyExpr::DisjointUnion(parts) => Ok(graph::disjoint_union(&build_all(parts)?)),
            FamilyExpr::Star(a, b) => {
                let (ga, gb) = (a.build()?, b.build()?);
                let fa = *ga.leaves().last().ok_or_else(|| no_leaf(a))?;
                let fb = *gb.leaves().first().ok_or_else(|| no_leaf(b))?;
                graph::glue_star(&ga, fa, &gb, fb)
            }
            FamilyExpr::Circ(chain) => build_chain(chain),
        }
    }
}

fn no_leaf(e: &FamilyExpr) -> Error {
    Error::InvalidFamily(format!("star operand {e} has no leaf"))
}

fn build_all(parts: &[FamilyExpr]) -> Result<Vec<Graph>> {
    parts.iter().map(FamilyExpr::build).collect()
}

fn validate_chain(chain: &[FamilyExpr]) -> Result<()> {
    if chain.len() < 2 {
        return Err(Error::InvalidFamily(
            "circ needs at least two entries".into(),
        ));
    }
    let (last, init) = chain.split_last().expect("len >= 2");
    for e in init {
        match e {
            FamilyExpr::BipartiteFm(m) if *m >= 3 => {}
            _ => {
                return Err(Error::InvalidFamily(format!(
                    "circ: inner entry {e} must be Fm(m) with m >= 3"
                )))
            }
        }
    }
    match last {
        FamilyExpr::BipartiteFm(m) if *m >= 3 => Ok(()),
        FamilyExpr::Fan { m, blocks } => {
            if *m < 3 {
                return Err(Error::InvalidFamily(format!(
                    "circ: final fan {last} needs m >= 3"
                )));
            }
            if blocks.is_empty() || !blocks.iter().all(FanBlock::is_pure) {
                return Err(Error::InvalidFamily(format!(
                    "circ: final fan {last} must be pure with at least one block"
                )));
            }
            graph::fan_graph(*m, blocks).map(|_| ())
        }
        _ => Err(Error::InvalidFamily(format!(
            "circ: final entry {last} must be Fm(m) with m >= 3 or a pure fan"
        ))),
    }
}

/// Folds ∘ left to right. Each `F_m` is entered through its leaf 1 (next to
/// vertex 2) and continued through its leaf `2m` (next to vertex `2m - 1`);
/// a final fan is entered through the leaf of its first block.
fn build_chain(chain: &[FamilyExpr]) -> Result<Composite> {
    let FamilyExpr::BipartiteFm(m1) = chain[0] else {
        unreachable!("validated")
    };
    let first = graph::bipartite_fm(m1)?;
    let mut maps = vec![(1..=first.vertex_count()).map(Some).collect::<Vec<_>>()];
    let mut acc = first;
    let mut right_leaf = 2 * m1;
    let mut special = None;
    for e in &chain[1..] {
        let (g2, f2, next_leaf) = match e {
            FamilyExpr::BipartiteFm(m) => (graph::bipartite_fm(*m)?, 1, Some(2 * m)),
            FamilyExpr::Fan { m, blocks } => (graph::fan_graph(*m, blocks)?, m + 1, None),
            _ => unreachable!("validated"),
        };
        let c = graph::glue_circ(&acc, right_leaf, &g2, f2)?;
        for map in maps.iter_mut() {
            for slot in map.iter_mut() {
                *slot = slot.and_then(|v| c.image(0, v));
            }
        }
        maps.push(c.maps[1].clone());
        if let Some(leaf) = next_leaf {
            right_leaf = c.image(1, leaf).expect("far leaf survives");
        }
        special = c.special;
        acc = c.graph;
    }
    Ok(Composite {
        graph: acc,
        maps,
        special,
    })
}

impl fmt::Display for FamilyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, parts: &[FamilyExpr]| {
            write!(f, "{name}(")?;
            for (k, p) in parts.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        };
        match self {
            FamilyExpr::Complete(m) => write!(f, "K({m})"),
            FamilyExpr::BipartiteFm(m) => write!(f, "Fm({m})"),
            FamilyExpr::Fan { m, blocks } => {
                write!(f, "fan({m};")?;
                for (k, b) in blocks.iter().enumerate() {
                    write!(f, "{}", if k == 0 { " " } else { ", " })?;
                    if b.is_pure() {
                        write!(f, "{}", b.len())?;
                    } else {
                        let hs: Vec<String> = b.cliques.iter().map(usize::to_string).collect();
                        write!(f, "[{}]", hs.join(" "))?;
                    }
                }
                write!(f, ")")
            }
            FamilyExpr::Cone(parts) => list(f, "cone", parts),
            FamilyExpr::DisjointUnion(parts) => list(f, "du", parts),
            FamilyExpr::Star(a, b) => write!(f, "star({a}, {b})"),
            FamilyExpr::Circ(chain) => list(f, "circ", chain),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(m: usize) -> FamilyExpr {
        FamilyExpr::BipartiteFm(m)
    }

    #[test]
    fn vertex_counts_match_built_graphs() {
        let exprs = [
            FamilyExpr::Complete(4),
            fm(3),
            FamilyExpr::pure_fan(5, &[2, 1]),
            FamilyExpr::Cone(vec![FamilyExpr::Complete(2), fm(2)]),
            FamilyExpr::DisjointUnion(vec![fm(1), FamilyExpr::Complete(3)]),
            FamilyExpr::star(fm(3), fm(2)),
            FamilyExpr::Circ(vec![fm(4), fm(3)]),
            FamilyExpr::Circ(vec![fm(3), fm(4), FamilyExpr::pure_fan(3, &[2])]),
        ];
        for e in exprs {
            assert_eq!(e.build().unwrap().vertex_count(), e.vertex_count(), "{e}");
        }
    }

    #[test]
    fn circ_grammar() {
        assert!(FamilyExpr::Circ(vec![fm(4)]).validate().is_err());
        assert!(FamilyExpr::Circ(vec![fm(2), fm(3)]).validate().is_err());
        assert!(FamilyExpr::Circ(vec![fm(3), FamilyExpr::Complete(4)])
            .validate()
            .is_err());
        assert!(FamilyExpr::Circ(vec![fm(3), FamilyExpr::pure_fan(2, &[1])])
            .validate()
            .is_err());
        assert!(FamilyExpr::Circ(vec![fm(3), FamilyExpr::pure_fan(3, &[2])])
            .validate()
            .is_ok());
    }

    #[test]
    fn circ_chain_leaves_are_the_far_ends() {
        let g = FamilyExpr::Circ(vec![fm(3), fm(3), fm(3)]).build().unwrap();
        assert_eq!(g.vertex_count(), 18 - 6);
        // each F_3 loses a leaf per gluing: the two outer leaves remain
        assert_eq!(g.leaves().len(), 2);
    }

    #[test]
    fn star_without_leaf_is_rejected() {
        let e = FamilyExpr::star(FamilyExpr::Complete(3), fm(2));
        assert!(e.build().is_err());
    }

    #[test]
    fn display_is_dsl() {
        let e = FamilyExpr::Circ(vec![fm(4), FamilyExpr::pure_fan(5, &[2, 1])]);
        assert_eq!(e.to_string(), "circ(Fm(4), fan(5; 2, 1))");
        let nonpure = FamilyExpr::Fan {
            m: 3,
            blocks: vec![FanBlock {
                cliques: vec![3, 4],
            }],
        };
        assert_eq!(nonpure.to_string(), "fan(3; [3 4])");
    }
}
