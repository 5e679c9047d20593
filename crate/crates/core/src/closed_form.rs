//! Closed-form invariants of the constructible families.
//!
//! Every evaluator works on the [`FamilyExpr`] alone and refuses with
//! [`Error::NoClosedForm`] or [`Error::Guard`] outside the range where a
//! formula is known.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::clique_f_vector;
use crate::error::{Error, Result};
use crate::family::FamilyExpr;
use crate::graph::{FanBlock, Graph};
use crate::hilbert::HilbertData;

/// Whether a CM-type value is a theorem or rests on the equality
/// `CM-type = β̂` that is only conjectured for `F_m` and k-pure fans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proven,
    Conjectural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmType {
    pub value: u64,
    pub status: Status,
}

impl CmType {
    fn proven(value: u64) -> Self {
        CmType {
            value,
            status: Status::Proven,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub expression: String,
    pub vertices: usize,
    pub reg: Option<usize>,
    pub projdim: Option<usize>,
    #[serde(rename = "extremalBetti")]
    pub extremal_betti: Option<u64>,
    #[serde(rename = "cmType")]
    pub cm_type: Option<u64>,
    #[serde(rename = "cmTypeStatus")]
    pub cm_type_status: Option<Status>,
    /// `β_{p,p+2}` of a cone with `reg > 2`.
    #[serde(rename = "betaPP2")]
    pub beta_p_p2: Option<u64>,
    pub notes: Vec<String>,
}

/// Evaluates everything that applies; refusals end up in `notes`.
pub fn invariant_report(e: &FamilyExpr) -> InvariantReport {
    let mut notes = Vec::new();
    let reg = keep(&mut notes, "reg", reg_closed(e));
    let projdim = keep(&mut notes, "projdim", projdim_closed(e));
    let extremal_betti = keep(&mut notes, "extremalBetti", extremal_betti_closed(e));
    let cm = keep(&mut notes, "cmType", cm_type_closed(e));
    let beta_p_p2 = match e {
        FamilyExpr::Cone(_) => keep(&mut notes, "betaPP2", beta_p_plus2_cone(e)),
        _ => None,
    };
    if let FamilyExpr::Cone(parts) = e {
        if let Some(m) = degenerate_cone(&flatten(parts)) {
            if let Ok(raw) = cone_cm_type_formula(e) {
                notes.push(format!(
                    "cone over a vertex and K_{m}: the cone CM-type formula gives {raw}, \
                     the decomposition into K_{} and K_2 gives {m}",
                    m + 1
                ));
            }
        }
    }
    if cm.map(|c| c.status) == Some(Status::Conjectural) {
        notes.push("cmType: assumes CM-type = extremal Betti number (open question)".into());
    }
    InvariantReport {
        expression: e.to_string(),
        vertices: e.vertex_count(),
        reg,
        projdim,
        extremal_betti,
        cm_type: cm.map(|c| c.value),
        cm_type_status: cm.map(|c| c.status),
        beta_p_p2,
        notes,
    }
}

fn keep<T>(notes: &mut Vec<String>, what: &str, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(err) => {
            notes.push(format!("{what}: {err}"));
            None
        }
    }
}

fn no_closed_form(msg: impl Into<String>) -> Error {
    Error::NoClosedForm(msg.into())
}

/// Parts of a cone or union with nested unions expanded.
fn flatten(parts: &[FamilyExpr]) -> Vec<FamilyExpr> {
    let mut out = Vec::new();
    for p in parts {
        match p {
            FamilyExpr::DisjointUnion(inner) => out.extend(flatten(inner)),
            other => out.push(other.clone()),
        }
    }
    out
}

/// `Some(m)` if the expression is syntactically the complete graph `K_m`.
fn as_complete(e: &FamilyExpr) -> Option<usize> {
    match e {
        FamilyExpr::Complete(m) => Some(*m),
        FamilyExpr::BipartiteFm(1) => Some(2),
        FamilyExpr::Fan { m, blocks } if blocks.is_empty() => Some(*m),
        _ => None,
    }
}

/// `Some(m)` for `cone(v, {w} ⊔ K_m)`, which is `K_{m+1}` with a whisker.
fn degenerate_cone(parts: &[FamilyExpr]) -> Option<usize> {
    if parts.len() != 2 {
        return None;
    }
    let (a, b) = (as_complete(&parts[0])?, as_complete(&parts[1])?);
    match (a, b) {
        (1, m) | (m, 1) => Some(m),
        _ => None,
    }
}

fn pure_sizes(m: usize, blocks: &[FanBlock], e: &FamilyExpr) -> Result<Vec<usize>> {
    if !blocks.iter().all(FanBlock::is_pure) {
        return Err(no_closed_form(format!("{e} is not a pure fan")));
    }
    if m < 2 {
        return Err(no_closed_form(format!("{e}: fan needs m >= 2")));
    }
    Ok(blocks.iter().map(FanBlock::len).collect())
}

fn is_cm(e: &FamilyExpr) -> bool {
    match e {
        FamilyExpr::Complete(_) | FamilyExpr::BipartiteFm(_) | FamilyExpr::Circ(_) => true,
        FamilyExpr::Fan { blocks, .. } => blocks.iter().all(FanBlock::is_pure),
        FamilyExpr::Cone(parts) => {
            let parts = flatten(parts);
            parts.len() == 2 && parts.iter().all(is_cm)
        }
        FamilyExpr::DisjointUnion(parts) => parts.iter().all(is_cm),
        FamilyExpr::Star(a, b) => is_cm(a) && is_cm(b),
    }
}

fn cone_parts(e: &FamilyExpr, parts: &[FamilyExpr]) -> Result<Vec<FamilyExpr>> {
    let parts = flatten(parts);
    if parts.len() < 2 {
        return Err(no_closed_form(format!("{e}: cone over a connected graph")));
    }
    Ok(parts)
}

fn cm_cone_parts(e: &FamilyExpr, parts: &[FamilyExpr]) -> Result<(FamilyExpr, FamilyExpr)> {
    let parts = cone_parts(e, parts)?;
    if parts.len() != 2 {
        return Err(Error::Guard(format!(
            "{e}: cone over {} components is not Cohen-Macaulay",
            parts.len()
        )));
    }
    if !parts.iter().all(is_cm) {
        return Err(Error::Guard(format!(
            "{e}: cone components must be Cohen-Macaulay"
        )));
    }
    Ok((parts[0].clone(), parts[1].clone()))
}

pub fn reg_closed(e: &FamilyExpr) -> Result<usize> {
    match e {
        FamilyExpr::Complete(m) => Ok(usize::from(*m >= 2)),
        FamilyExpr::BipartiteFm(m) => Ok(if *m == 1 { 1 } else { 3 }),
        FamilyExpr::Fan { m, blocks } => {
            let sizes = pure_sizes(*m, blocks, e)?;
            Ok(sizes.len() + 1)
        }
        FamilyExpr::Cone(parts) => {
            let parts = cone_parts(e, parts)?;
            let sum = parts.iter().map(reg_closed).sum::<Result<usize>>()?;
            Ok(sum.max(2))
        }
        FamilyExpr::DisjointUnion(parts) => parts.iter().map(reg_closed).sum(),
        FamilyExpr::Star(a, b) => Ok(reg_closed(a)? + reg_closed(b)?),
        FamilyExpr::Circ(chain) => circ_reg(e, chain),
    }
}

fn fm_reg(m: usize) -> usize {
    if m == 1 {
        1
    } else {
        3
    }
}

fn circ_reg(e: &FamilyExpr, chain: &[FamilyExpr]) -> Result<usize> {
    let ms = chain_sizes(e, chain)?;
    let last = chain.last().expect("validated");
    if ms.len() == 1 {
        return match last {
            FamilyExpr::BipartiteFm(_) => Ok(6),
            FamilyExpr::Fan { m, blocks } => {
                let sizes = pure_sizes(*m, blocks, e)?;
                let k = sizes.len();
                if sizes.iter().all(|&s| s == 1) {
                    Ok(k + 3)
                } else if sizes[0] >= 2 {
                    Ok(k + 4)
                } else {
                    Err(no_closed_form(format!(
                        "{e}: the glued vertex lies in a block of size 1 while another block is larger"
                    )))
                }
            }
            _ => unreachable!("validated"),
        };
    }
    let tail = reg_closed(&final_minus_v_f(e, last)?)?;
    Ok(fm_reg(ms[0] - 1) + ms[1..].iter().map(|&m| fm_reg(m - 2)).sum::<usize>() + tail)
}

/// `m_1, .., m_t` of a validated chain.
fn chain_sizes(e: &FamilyExpr, chain: &[FamilyExpr]) -> Result<Vec<usize>> {
    e.validate()?;
    Ok(chain[..chain.len() - 1]
        .iter()
        .map(|x| match x {
            FamilyExpr::BipartiteFm(m) => *m,
            _ => unreachable!("validated"),
        })
        .collect())
}

/// `F ∖ {v, f}` for the final entry of a chain.
fn final_minus_v_f(e: &FamilyExpr, last: &FamilyExpr) -> Result<FamilyExpr> {
    match last {
        FamilyExpr::BipartiteFm(m) => Ok(FamilyExpr::BipartiteFm(m - 1)),
        FamilyExpr::Fan { m, blocks } => {
            let mut sizes = pure_sizes(*m, blocks, e)?;
            if sizes[0] < 2 {
                return Err(no_closed_form(format!(
                    "{e}: the glued vertex must lie in a fan block of size >= 2"
                )));
            }
            sizes[0] -= 1;
            Ok(FamilyExpr::pure_fan(m - 1, &sizes))
        }
        _ => unreachable!("validated"),
    }
}

/// The graphs `G''` and `H` of the cutpoint split of a ∘ chain at the glued
/// vertex `v` of its final entry. `G''` comes back as a disjoint union.
pub fn circ_split_terms(e: &FamilyExpr) -> Result<(FamilyExpr, FamilyExpr)> {
    let FamilyExpr::Circ(chain) = e else {
        return Err(no_closed_form(format!("{e} is not a circ chain")));
    };
    let ms = chain_sizes(e, chain)?;
    let last = chain.last().expect("validated");
    let tail = final_minus_v_f(e, last)?;
    let mt = *ms.last().expect("nonempty");
    let before = &chain[..ms.len() - 1];
    // the chain with its last F_{m_t} shortened to F_{m_t - 1}
    let head = if mt - 1 >= 3 {
        let mut c = before.to_vec();
        c.push(FamilyExpr::BipartiteFm(mt - 1));
        if c.len() == 1 {
            c.pop().expect("one entry")
        } else {
            FamilyExpr::Circ(c)
        }
    } else {
        // F_2 cannot be ∘-glued: C ∘ F_2 is C with a whisker at its far leaf
        match before.len() {
            0 => FamilyExpr::BipartiteFm(2),
            1 => FamilyExpr::star(before[0].clone(), FamilyExpr::BipartiteFm(1)),
            _ => FamilyExpr::star(
                FamilyExpr::Circ(before.to_vec()),
                FamilyExpr::BipartiteFm(1),
            ),
        }
    };
    let g2 = FamilyExpr::DisjointUnion(vec![head, tail]);
    // N(v) becomes the clique of H; F_{m_t} contributes a fan block of size m_t - 1
    let fan = match last {
        FamilyExpr::BipartiteFm(m) => FamilyExpr::pure_fan(m + mt - 2, &[mt - 1, m - 1]),
        FamilyExpr::Fan { m, blocks } => {
            let sizes = pure_sizes(*m, blocks, e)?;
            let mut w = vec![mt - 1];
            w.extend_from_slice(&sizes[1..]);
            FamilyExpr::pure_fan(m + mt + sizes[0] - 3, &w)
        }
        _ => unreachable!("validated"),
    };
    let h = if before.is_empty() {
        fan
    } else {
        let mut c = before.to_vec();
        c.push(fan);
        FamilyExpr::Circ(c)
    };
    Ok((g2, h))
}

pub fn projdim_closed(e: &FamilyExpr) -> Result<usize> {
    match e {
        FamilyExpr::DisjointUnion(parts) => parts.iter().map(projdim_closed).sum(),
        FamilyExpr::Cone(parts) => {
            cm_cone_parts(e, parts)?;
            Ok(e.vertex_count() - 1)
        }
        FamilyExpr::Fan { m, blocks } => {
            pure_sizes(*m, blocks, e)?;
            Ok(e.vertex_count() - 1)
        }
        FamilyExpr::Star(a, b) => {
            if !is_cm(a) || !is_cm(b) {
                return Err(no_closed_form(format!(
                    "{e}: operands must be Cohen-Macaulay"
                )));
            }
            Ok(e.vertex_count() - 1)
        }
        _ => Ok(e.vertex_count() - 1),
    }
}

pub fn fm_extremal_betti(m: usize) -> u64 {
    if m == 1 {
        1
    } else {
        (1..m as u64).map(|k| k * k).sum()
    }
}

fn complete_betti(m: usize) -> u64 {
    (m as u64).saturating_sub(1).max(1)
}

pub fn extremal_betti_closed(e: &FamilyExpr) -> Result<u64> {
    Evaluator::default().betti(e)
}

/// Memoizes β̂ on canonical sub-expressions; the ∘ recursion revisits them.
#[derive(Default)]
struct Evaluator {
    memo: HashMap<FamilyExpr, u64>,
}

fn canonical(e: &FamilyExpr) -> FamilyExpr {
    match e {
        FamilyExpr::DisjointUnion(parts) => {
            let mut p: Vec<_> = flatten(parts).iter().map(canonical).collect();
            p.sort();
            if p.len() == 1 {
                p.pop().expect("one part")
            } else {
                FamilyExpr::DisjointUnion(p)
            }
        }
        FamilyExpr::Cone(parts) => {
            let mut p: Vec<_> = flatten(parts).iter().map(canonical).collect();
            p.sort();
            FamilyExpr::Cone(p)
        }
        FamilyExpr::Star(a, b) => FamilyExpr::star(canonical(a), canonical(b)),
        other => other.clone(),
    }
}

impl Evaluator {
    fn betti(&mut self, e: &FamilyExpr) -> Result<u64> {
        let key = canonical(e);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let v = self.betti_uncached(&key)?;
        self.memo.insert(key, v);
        Ok(v)
    }

    fn betti_uncached(&mut self, e: &FamilyExpr) -> Result<u64> {
        match e {
            FamilyExpr::Complete(m) => Ok(complete_betti(*m)),
            FamilyExpr::BipartiteFm(m) => Ok(fm_extremal_betti(*m)),
            FamilyExpr::Fan { m, blocks } => {
                let sizes = pure_sizes(*m, blocks, e)?;
                Ok((*m as u64 - 1) * sizes.iter().map(|&s| s as u64).product::<u64>())
            }
            FamilyExpr::DisjointUnion(parts) => {
                let mut acc = 1;
                for p in parts {
                    acc *= self.betti(p)?;
                }
                Ok(acc)
            }
            FamilyExpr::Star(a, b) => Ok(self.betti(a)? * self.betti(b)?),
            FamilyExpr::Cone(parts) => {
                let (a, b) = cm_cone_parts(e, parts)?;
                if let Some(m) = degenerate_cone(&[a.clone(), b.clone()]) {
                    return Ok(m as u64);
                }
                let prod = self.betti(&a)? * self.betti(&b)?;
                if reg_closed(e)? > 2 {
                    Ok(prod)
                } else {
                    Ok(e.vertex_count() as u64 - 2 + prod)
                }
            }
            FamilyExpr::Circ(chain) => {
                let ms = chain_sizes(e, chain)?;
                let (g2, h) = circ_split_terms(e)?;
                let mut v = self.betti(&g2)?;
                if ms.len() >= 2 && *ms.last().expect("nonempty") == 3 {
                    v += self.betti(&h)?;
                }
                Ok(v)
            }
        }
    }
}

pub fn cm_type_closed(e: &FamilyExpr) -> Result<CmType> {
    match e {
        FamilyExpr::Complete(m) => Ok(CmType::proven(complete_betti(*m))),
        FamilyExpr::BipartiteFm(m) => Ok(CmType {
            value: fm_extremal_betti(*m),
            // F_1 = K_2 and F_2 (a complete intersection) are settled
            status: if *m <= 2 {
                Status::Proven
            } else {
                Status::Conjectural
            },
        }),
        FamilyExpr::Fan { m, blocks } => {
            let sizes = pure_sizes(*m, blocks, e)?;
            let value = extremal_betti_closed(e)?;
            let proven = sizes.len() <= 1 || sizes.iter().all(|&s| s == 1);
            Ok(CmType {
                value,
                status: if proven {
                    Status::Proven
                } else {
                    Status::Conjectural
                },
            })
        }
        FamilyExpr::DisjointUnion(parts) => {
            let mut acc = CmType::proven(1);
            for p in parts {
                acc = times(acc, cm_type_closed(p)?);
            }
            Ok(acc)
        }
        FamilyExpr::Star(a, b) => Ok(times(cm_type_closed(a)?, cm_type_closed(b)?)),
        FamilyExpr::Cone(parts) => {
            let (a, b) = cm_cone_parts(e, parts)?;
            if let Some(m) = degenerate_cone(&[a, b]) {
                return Ok(CmType::proven(m as u64));
            }
            let raw = cone_formula(e, parts)?;
            Ok(raw)
        }
        FamilyExpr::Circ(_) => Err(no_closed_form(
            "CM-type of a circ chain is not determined by its extremal Betti number \
             (for circ(Fm(4), Fm(3)) the CM-type is 29 while the extremal Betti number is 5)",
        )),
    }
}

fn times(a: CmType, b: CmType) -> CmType {
    CmType {
        value: a.value * b.value,
        status: a.status.max(b.status),
    }
}

fn cone_formula(e: &FamilyExpr, parts: &[FamilyExpr]) -> Result<CmType> {
    let (a, b) = cm_cone_parts(e, parts)?;
    let prod = times(cm_type_closed(&a)?, cm_type_closed(&b)?);
    Ok(CmType {
        value: e.vertex_count() as u64 - 2 + prod.value,
        status: prod.status,
    })
}

/// `n - 2 + CM-type(H_1) CM-type(H_2)` without the degenerate-cone guard.
pub fn cone_cm_type_formula(e: &FamilyExpr) -> Result<u64> {
    match e {
        FamilyExpr::Cone(parts) => Ok(cone_formula(e, parts)?.value),
        _ => Err(no_closed_form(format!("{e} is not a cone"))),
    }
}

/// `β_{p,p+2} = n - 2` for a CM cone with `reg > 2`.
pub fn beta_p_plus2_cone(e: &FamilyExpr) -> Result<u64> {
    let FamilyExpr::Cone(parts) = e else {
        return Err(no_closed_form(format!("{e} is not a cone")));
    };
    cm_cone_parts(e, parts)?;
    let r = reg_closed(e)?;
    if r <= 2 {
        return Err(Error::Guard(format!(
            "{e} has reg {r}; then β_{{p,p+2}} is the extremal Betti number"
        )));
    }
    Ok(e.vertex_count() as u64 - 2)
}

/// `β_{i,i+1}(S/J_G) = i f_i(Δ(G))`.
pub fn linear_strand(g: &Graph, i: usize) -> u64 {
    i as u64 * clique_f_vector(g).f(i as isize)
}

/// Hilbert series data of `S/J_{F_m}` from `h = (1, 2m-1, (3m²-3m)/2, Σk²)`.
pub fn hvector_fm(m: usize) -> Result<HilbertData> {
    if m < 2 {
        return Err(Error::InvalidFamily("the F_m h-vector needs m >= 2".into()));
    }
    let mi = m as i64;
    let h = vec![
        1,
        2 * mi - 1,
        (3 * mi * mi - 3 * mi) / 2,
        fm_extremal_betti(m) as i64,
    ];
    let d = 2 * m + 1;
    // p(t) = h(t) (1-t)^(4m - d)
    let mut p = h.clone();
    for _ in 0..(4 * m - d) {
        let mut next = vec![0; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c;
        }
        p = next;
    }
    Ok(HilbertData {
        p,
        a: 3 - d as i64,
        h,
        d,
    })
}
