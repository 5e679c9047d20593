//! Sparse polynomials in `x_1..x_n, y_1..y_n` under the lex order
//! `x_1 > .. > x_n > y_1 > .. > y_n`.
//!
//! Variable `k < n` is `x_{k+1}`, variable `n + k` is `y_{k+1}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Upper bound on the number of ring variables (graphs on up to 12 vertices).
pub const MAX_VARS: usize = 24;

/// Exponent vector. Comparing two monomials with `Ord` is the lex order
/// (index 0 is the largest variable).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(k: usize) -> Self {
        let mut m = Self::ONE;
        m.0[k] = 1;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut m = Self::ONE;
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        out
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            debug_assert!(*a >= *b);
            *a -= b;
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Bitmask of the variables occurring in the monomial.
    pub fn support(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (k, _)| m | 1 << k)
    }

    /// Squarefree monomial with the given support.
    pub fn from_support(mask: u32) -> Self {
        let mut m = Self::ONE;
        for k in 0..MAX_VARS {
            if mask >> k & 1 == 1 {
                m.0[k] = 1;
            }
        }
        m
    }

    pub fn display(&self, nvars: usize) -> MonomialDisplay<'_> {
        MonomialDisplay { m: self, nvars }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e > 0).map_or(0, |k| k + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    nvars: usize,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars / 2;
        let mut first = true;
        for (k, &e) in self.m.0[..self.nvars].iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let (name, idx) = if k < n {
                ('x', k + 1)
            } else {
                ('y', k - n + 1)
            };
            write!(f, "{name}{idx}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Terms sorted by strictly decreasing monomial; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone + PartialEq> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn from_terms<F: Field<Elem = E>>(
        field: &F,
        terms: impl IntoIterator<Item = (Monomial, E)>,
    ) -> Self {
        let mut ts: Vec<(Monomial, E)> = terms.into_iter().collect();
        ts.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, E)> = Vec::with_capacity(ts.len());
        for (m, c) in ts {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial { terms: out }
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, m: Monomial) -> Self {
        Polynomial {
            terms: vec![(m, field.one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.combine(field, other, |a, b| field.add(a, b), |b| b.clone())
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.combine(field, other, |a, b| field.sub(a, b), |b| field.neg(b))
    }

    fn combine<F: Field<Elem = E>>(
        &self,
        field: &F,
        other: &Self,
        both: impl Fn(&E, &E) -> E,
        only_right: impl Fn(&E) -> E,
    ) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, only_right(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = both(&a[i].1, &b[j].1);
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, only_right(c))));
        Polynomial { terms: out }
    }

    /// `c * m * self`; the monomial order is preserved by multiplication.
    pub fn scale_shift<F: Field<Elem = E>>(&self, field: &F, c: &E, m: &Monomial) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &other.terms {
            acc = acc.add(field, &self.scale_shift(field, c, m));
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn make_monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading_coefficient() {
            None => Self::zero(),
            Some(lc) => {
                let inv = field.inv(lc);
                self.scale_shift(field, &inv, &Monomial::ONE)
            }
        }
    }

    pub fn display<'a, F: Field<Elem = E>>(
        &'a self,
        field: &'a F,
        nvars: usize,
    ) -> PolyDisplay<'a, F> {
        PolyDisplay {
            p: self,
            field,
            nvars,
        }
    }
}

pub struct PolyDisplay<'a, F: Field> {
    p: &'a Polynomial<F::Elem>,
    field: &'a F,
    nvars: usize,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let minus_one = self.field.neg(&self.field.one());
        for (k, (m, c)) in self.p.terms.iter().enumerate() {
            let sign = if *c == minus_one { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            if !self.field.is_one(c) && *c != minus_one {
                write!(f, "{:?}*", c)?;
            }
            write!(f, "{}", m.display(self.nvars))?;
        }
        Ok(())
    }
}

/// The ring `K[x_1..x_n, y_1..y_n]` for a graph on `n` vertices.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    n: usize,
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(n: usize, field: F) -> Result<Self> {
        if 2 * n > MAX_VARS {
            return Err(Error::SizeCap {
                what: "polynomial ring",
                vars: 2 * n,
                cap: MAX_VARS,
            });
        }
        Ok(PolyRing { n, field })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `x_v` for a vertex `v` in `1..=n`.
    pub fn x(&self, v: usize) -> Monomial {
        Monomial::var(v - 1)
    }

    pub fn y(&self, v: usize) -> Monomial {
        Monomial::var(self.n + v - 1)
    }
}
