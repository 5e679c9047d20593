//! Hilbert functions and Hilbert–Poincaré series.
//!
//! `HS(t) = p(t) / (1-t)^N = h(t) / (1-t)^d` with `N` the number of ring
//! variables, `d` the Krull dimension and `p(t) = Σ (-1)^i β_{i,j} t^j`.

use serde::{Deserialize, Serialize};

use crate::betti::{invariants_from_table, BettiTable};
use crate::complex::FVector;
use crate::error::{Error, Result};
use crate::groebner::MonomialIdeal;
use crate::poly::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// numerator over `(1-t)^N`
    pub p: Vec<i64>,
    pub h: Vec<i64>,
    pub d: usize,
    /// `deg h - d`
    pub a: i64,
}

impl HilbertData {
    pub fn multiplicity(&self) -> i64 {
        self.h.iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("hilbert data serializes")
    }
}

/// `dim_K (S/I)_deg`: standard monomials of degree `deg` in `nvars` variables.
pub fn hilbert_function(ideal: &MonomialIdeal, deg: usize) -> u64 {
    fn walk(ideal: &MonomialIdeal, m: &mut Monomial, var: usize, left: usize) -> u64 {
        if ideal.contains(m) {
            return 0;
        }
        if left == 0 {
            return 1;
        }
        if var + 1 == ideal.nvars() {
            m.0[var] += left as u8;
            let hit = !ideal.contains(m);
            m.0[var] -= left as u8;
            return hit as u64;
        }
        let mut total = 0;
        for e in 0..=left {
            m.0[var] += e as u8;
            total += walk(ideal, m, var + 1, left - e);
            m.0[var] -= e as u8;
        }
        total
    }
    if ideal.nvars() == 0 {
        return (deg == 0) as u64;
    }
    let mut m = Monomial::ONE;
    walk(ideal, &mut m, 0, deg)
}

/// Coefficients of `p(t) = Σ_{i,j} (-1)^i β_{i,j} t^j`.
pub fn numerator_from_betti(t: &BettiTable) -> Result<Vec<i64>> {
    if !t.is_complete() {
        return Err(Error::IncompleteTable(
            "the numerator needs every degree".into(),
        ));
    }
    let top = t.entries().map(|((_, j), _)| j).max().unwrap_or(0);
    let mut p = vec![0i64; top + 1];
    for ((i, j), v) in t.entries() {
        let v = v as i64;
        p[j] += if i % 2 == 0 { v } else { -v };
    }
    trim(&mut p);
    Ok(p)
}

fn trim(p: &mut Vec<i64>) {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
}

/// Divides `p` by `(1-t)` as often as possible.
pub fn reduce_to_h(p: &[i64], nvars: usize) -> Result<HilbertData> {
    let mut q: Vec<i64> = p.to_vec();
    trim(&mut q);
    if q.iter().all(|&c| c == 0) {
        return Err(Error::ZeroPolynomial);
    }
    let mut divisions = 0;
    while q.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q = (1-t) s, s_k = Σ_{l<=k} q_l
        let mut s = Vec::with_capacity(q.len() - 1);
        let mut acc = 0;
        for &c in &q[..q.len() - 1] {
            acc += c;
            s.push(acc);
        }
        q = s;
        divisions += 1;
    }
    if divisions > nvars {
        return Err(Error::LengthMismatch(format!(
            "numerator divisible by (1-t)^{divisions} in a ring of {nvars} variables"
        )));
    }
    let d = nvars - divisions;
    let a = (q.len() as i64 - 1) - d as i64;
    Ok(HilbertData {
        p: p.to_vec(),
        h: q,
        d,
        a,
    })
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `h_k = Σ_{i=0}^{k} (-1)^{k-i} C(d-i, k-i) f_{i-1}` for `k = 0..=d`, from
/// the f-vector `(f_{-1}, .., f_{d-1})` of a `(d-1)`-dimensional complex.
pub fn h_from_f(f: &FVector, d: usize) -> Result<Vec<i64>> {
    if f.0.len() != d + 1 {
        return Err(Error::LengthMismatch(format!(
            "f-vector has {} entries, dimension {} needs {}",
            f.0.len(),
            d,
            d + 1
        )));
    }
    let d = d as i64;
    Ok((0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom(d - i, k - i) * f.0[i as usize] as i64
                })
                .sum()
        })
        .collect())
}

/// First `len` coefficients of `p(t) / (1-t)^nvars`.
pub fn series_coefficients(p: &[i64], nvars: usize, len: usize) -> Vec<i64> {
    let mut c: Vec<i64> = (0..len).map(|k| p.get(k).copied().unwrap_or(0)).collect();
    for _ in 0..nvars {
        for k in 1..len {
            c[k] += c[k - 1];
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertLemmaReport {
    pub p: usize,
    pub r: usize,
    pub corner: u64,
    #[serde(rename = "leadingH")]
    pub leading_h: i64,
    /// `(-1)^(p+d) β_{p,p+r}`
    #[serde(rename = "signedCorner")]
    pub signed_corner: i64,
    #[serde(rename = "absMatches")]
    pub abs_matches: bool,
    #[serde(rename = "signMatches")]
    pub sign_matches: bool,
    #[serde(rename = "degHEqualsReg")]
    pub deg_h_equals_reg: bool,
}

impl HilbertLemmaReport {
    pub fn passed(&self) -> bool {
        self.abs_matches && self.deg_h_equals_reg
    }
}

/// Checks `|lc h| = β_{p,p+r}` (recording the sign `(-1)^{p+d}` separately)
/// and `deg h = reg`.
pub fn verify_hilbert_lemmas(t: &BettiTable, hd: &HilbertData) -> Result<HilbertLemmaReport> {
    let inv = invariants_from_table(t)?;
    let corner = inv.corners.unique_value().ok_or(Error::NoUniqueCorner)?;
    let (p, r) = (inv.projdim, inv.reg);
    let leading_h = *hd.h.last().unwrap_or(&0);
    let signed_corner = if (p + hd.d) % 2 == 0 {
        corner as i64
    } else {
        -(corner as i64)
    };
    Ok(HilbertLemmaReport {
        p,
        r,
        corner,
        leading_h,
        signed_corner,
        abs_matches: leading_h.unsigned_abs() == corner,
        sign_matches: leading_h == signed_corner,
        deg_h_equals_reg: hd.h.len() - 1 == r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::{Coverage, Subject};

    fn sf(nvars: usize, supports: &[&[usize]]) -> MonomialIdeal {
        MonomialIdeal::new(
            nvars,
            supports
                .iter()
                .map(|s| Monomial::from_support(s.iter().fold(0, |m, &v| m | 1 << v))),
        )
    }

    fn table(nvars: usize, entries: &[(usize, usize, u64)]) -> BettiTable {
        let mut t = BettiTable::new(nvars, Subject::Ideal, Coverage::Full);
        for &(i, j, v) in entries {
            t.add(i, j, v);
        }
        t
    }

    #[test]
    fn triangle_hilbert_function() {
        let inj = sf(6, &[&[0, 4], &[0, 5], &[1, 5]]);
        assert_eq!(hilbert_function(&inj, 0), 1);
        assert_eq!(hilbert_function(&inj, 1), 6);
        assert_eq!(hilbert_function(&inj, 2), 18);
        let t = table(6, &[(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        let p = numerator_from_betti(&t).unwrap();
        assert_eq!(p, vec![1, 0, -3, 2]);
        let series = series_coefficients(&p, 6, 9);
        for (k, &c) in series.iter().enumerate() {
            assert_eq!(c, hilbert_function(&inj, k) as i64, "degree {k}");
        }
        let hd = reduce_to_h(&p, 6).unwrap();
        assert_eq!((hd.h.clone(), hd.d, hd.a), (vec![1, 2], 4, -3));
        let rep = verify_hilbert_lemmas(&t, &hd).unwrap();
        assert!(rep.passed() && rep.sign_matches);
        assert_eq!(rep.corner, 2);
    }

    #[test]
    fn small_numerators() {
        let hd = reduce_to_h(&[1, 0, -1], 4).unwrap();
        assert_eq!((hd.h, hd.d), (vec![1, 1], 3));
        let p3 = table(6, &[(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
        assert_eq!(numerator_from_betti(&p3).unwrap(), vec![1, 0, -2, 0, 1]);
        // (1 - t^2)^3
        let hd = reduce_to_h(&[1, 0, -3, 0, 3, 0, -1], 8).unwrap();
        assert_eq!((hd.h, hd.d), (vec![1, 3, 3, 1], 5));
        assert!(matches!(
            reduce_to_h(&[0, 0], 3),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn h_vectors_from_face_counts() {
        assert_eq!(h_from_f(&FVector(vec![1, 1]), 1).unwrap(), vec![1, 0]);
        // the five-dimensional complex of in(J_{F_2}): f_0 = 8, f_1 = 25
        let h = h_from_f(&FVector(vec![1, 8, 25, 38, 28, 8]), 5).unwrap();
        assert_eq!(&h[..3], &[1, 3, 3]);
        assert!(h_from_f(&FVector(vec![1, 3]), 2).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(0, 0), 1);
    }
}
