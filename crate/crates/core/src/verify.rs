//! Oracle runs and their comparison with the closed forms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::betti::hochster::{NonFaces, FULL_TABLE_CAP};
use crate::betti::koszul::KOSZUL_CAP;
use crate::betti::{
    hochster_betti, hochster_corner, invariants_from_table, koszul_betti, BettiTable, Corner,
    KoszulOptions, Subject,
};
use crate::closed_form::{self, InvariantReport};
use crate::complex::clique_f_vector;
use crate::error::{Error, Result};
use crate::family::FamilyExpr;
use crate::field::{Field, PrimeField, Rationals};
use crate::graph::Graph;
use crate::groebner::{binomial_edge_generators, buchberger, initial_ideal, MonomialIdeal};
use crate::hilbert::{
    h_from_f, hilbert_function, numerator_from_betti, reduce_to_h, series_coefficients,
    verify_hilbert_lemmas, HilbertData, HilbertLemmaReport,
};
use crate::poly::PolyRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Hochster,
    Koszul,
    Auto,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hochster" => Ok(Method::Hochster),
            "koszul" => Ok(Method::Koszul),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown method {s:?}"),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Prime characteristic, or 0 for the rationals.
    pub characteristic: u32,
    pub max_degree: Option<usize>,
    pub method: Method,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            characteristic: PrimeField::DEFAULT_CHAR,
            max_degree: None,
            method: Method::Auto,
        }
    }
}

impl OracleConfig {
    pub fn with_characteristic(&self, p: u32) -> Self {
        OracleConfig {
            characteristic: p,
            ..self.clone()
        }
    }
}

/// What the oracle found. Hochster runs describe `S/in(J)`; only the
/// invariants shared with `S/J` (reg, projdim, extremal corners) are filled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    /// `koszul`, `hochster` or `hochster-corner`.
    pub method: String,
    pub characteristic: u32,
    pub subject: Subject,
    pub reg: Option<usize>,
    pub projdim: Option<usize>,
    #[serde(rename = "extremalBetti")]
    pub extremal_betti: Option<u64>,
    #[serde(rename = "cmType")]
    pub cm_type: Option<u64>,
    #[serde(rename = "betaPP2")]
    pub beta_p_p2: Option<u64>,
    pub corners: Vec<Corner>,
    #[serde(rename = "linearStrand")]
    pub linear_strand: Option<BTreeMap<usize, u64>>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub table: Option<BettiTable>,
}

fn with_field<T>(p: u32, run: impl FnOnce(&dyn FieldRunner) -> Result<T>) -> Result<T> {
    if p == 0 {
        run(&Rationals)
    } else {
        run(&PrimeField::new(p)?)
    }
}

/// Object-safe entry points over a concrete field.
trait FieldRunner {
    fn initial(&self, g: &Graph) -> Result<MonomialIdeal>;
    fn koszul(&self, g: &Graph, opts: &KoszulOptions) -> Result<BettiTable>;
    fn hochster(&self, ideal: &MonomialIdeal) -> Result<BettiTable>;
    fn corner(&self, ideal: &MonomialIdeal) -> Result<crate::betti::CornerReport>;
}

impl<F: Field> FieldRunner for F {
    fn initial(&self, g: &Graph) -> Result<MonomialIdeal> {
        let ring = PolyRing::new(g.vertex_count(), self.clone())?;
        let gb = buchberger(self, &binomial_edge_generators(&ring, g));
        Ok(initial_ideal(ring.nvars(), &gb))
    }

    fn koszul(&self, g: &Graph, opts: &KoszulOptions) -> Result<BettiTable> {
        let n = g.vertex_count();
        if 2 * n > KOSZUL_CAP {
            return Err(Error::SizeCap {
                what: "Koszul table",
                vars: 2 * n,
                cap: KOSZUL_CAP,
            });
        }
        let ring = PolyRing::new(n, self.clone())?;
        let gb = buchberger(self, &binomial_edge_generators(&ring, g));
        koszul_betti(self, n, &gb, opts)
    }

    fn hochster(&self, ideal: &MonomialIdeal) -> Result<BettiTable> {
        hochster_betti(self, ideal)
    }

    fn corner(&self, ideal: &MonomialIdeal) -> Result<crate::betti::CornerReport> {
        hochster_corner(self, ideal)
    }
}

/// The Betti table the configured method produces: the full table of `S/J`
/// (Koszul) or of `S/in(J)` (Hochster).
pub fn betti_table(g: &Graph, cfg: &OracleConfig) -> Result<BettiTable> {
    let nvars = 2 * g.vertex_count();
    let koszul = match cfg.method {
        Method::Koszul => true,
        Method::Hochster => false,
        Method::Auto => nvars <= KOSZUL_CAP,
    };
    with_field(cfg.characteristic, |f| {
        if koszul {
            let opts = KoszulOptions {
                max_degree: cfg.max_degree,
                ..KoszulOptions::default()
            };
            f.koszul(g, &opts)
        } else {
            if nvars > FULL_TABLE_CAP {
                return Err(Error::SizeCap {
                    what: "full Hochster table",
                    vars: nvars,
                    cap: FULL_TABLE_CAP,
                });
            }
            f.hochster(&f.initial(g)?)
        }
    })
}

pub fn run_oracle(g: &Graph, cfg: &OracleConfig) -> Result<OracleReport> {
    let nvars = 2 * g.vertex_count();
    let corner_only = match cfg.method {
        Method::Koszul => false,
        Method::Hochster => nvars > FULL_TABLE_CAP,
        Method::Auto => nvars > KOSZUL_CAP,
    };
    if !corner_only {
        let t = betti_table(g, cfg)?;
        return Ok(report_from_table(t, cfg));
    }
    with_field(cfg.characteristic, |f| {
        let c = f.corner(&f.initial(g)?)?;
        let mut notes = vec![format!(
            "corner mode on in(J): degrees {}..={} only, p and r read off the h-vector",
            c.p + c.r - 1,
            c.p + c.r + 1
        )];
        if !c.certified {
            notes.push("the corner could not be certified".into());
        }
        Ok(OracleReport {
            method: "hochster-corner".into(),
            characteristic: cfg.characteristic,
            subject: Subject::Initial,
            reg: c.certified.then_some(c.r),
            projdim: c.certified.then_some(c.p),
            extremal_betti: c.certified.then_some(c.value),
            cm_type: None,
            beta_p_p2: None,
            corners: if c.certified {
                vec![Corner {
                    i: c.p,
                    r: c.r,
                    value: c.value,
                }]
            } else {
                Vec::new()
            },
            linear_strand: None,
            notes,
            table: c.table,
        })
    })
}

fn report_from_table(t: BettiTable, cfg: &OracleConfig) -> OracleReport {
    let subject = t.subject();
    let method = match subject {
        Subject::Ideal => "koszul",
        Subject::Initial => "hochster",
    };
    let mut notes = Vec::new();
    let inv = match invariants_from_table(&t) {
        Ok(inv) => Some(inv),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let on_j = subject == Subject::Ideal;
    if !on_j {
        notes.push(
            "table of in(J): CM-type, β_{p,p+2} and the linear strand are not those of J".into(),
        );
    }
    let extremal_betti = inv.as_ref().and_then(|i| i.corners.unique_value());
    if inv.is_some() && extremal_betti.is_none() {
        notes.push("no unique extremal Betti number".into());
    }
    OracleReport {
        method: method.into(),
        characteristic: cfg.characteristic,
        subject,
        reg: inv.as_ref().map(|i| i.reg),
        projdim: inv.as_ref().map(|i| i.projdim),
        extremal_betti,
        cm_type: inv.as_ref().filter(|_| on_j).map(|i| i.cm_type),
        beta_p_p2: inv
            .as_ref()
            .filter(|_| on_j)
            .map(|i| t.get(i.projdim, i.projdim + 2)),
        corners: inv
            .as_ref()
            .map(|i| i.corners.corners.clone())
            .unwrap_or_default(),
        linear_strand: (on_j && t.is_complete()).then(|| t.linear_strand()),
        notes,
        table: Some(t),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    NotComputable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::NotComputable => "not-computable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub invariant: String,
    pub closed: Option<Value>,
    pub oracle: Option<Value>,
    pub verdict: Verdict,
}

fn compare(invariant: &str, closed: Option<Value>, oracle: Option<Value>) -> Comparison {
    let verdict = match (&closed, &oracle) {
        (Some(a), Some(b)) if a == b => Verdict::Match,
        (Some(_), Some(_)) => Verdict::Mismatch,
        _ => Verdict::NotComputable,
    };
    Comparison {
        invariant: invariant.into(),
        closed,
        oracle,
        verdict,
    }
}

/// Two closed-form candidates for one quantity and the oracle's value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Adjudication {
    pub question: String,
    pub candidates: BTreeMap<String, u64>,
    pub oracle: Option<u64>,
    /// Candidates equal to the oracle value.
    pub confirmed: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Closed,
    Oracle,
    Both,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Mode::Closed),
            "oracle" => Ok(Mode::Oracle),
            "both" => Ok(Mode::Both),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown mode {s:?}"),
            }),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    #[serde(rename = "closedMs")]
    pub closed_ms: f64,
    #[serde(rename = "oracleMs")]
    pub oracle_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub expression: String,
    pub mode: Mode,
    #[serde(rename = "closedForm")]
    pub closed_form: Option<InvariantReport>,
    pub oracle: Option<OracleReport>,
    #[serde(rename = "oracleError")]
    pub oracle_error: Option<String>,
    pub comparisons: Vec<Comparison>,
    pub adjudications: Vec<Adjudication>,
    pub verdict: Verdict,
    pub timings: Timings,
}

impl VerificationReport {
    /// 0 when everything matched, 2 on a mismatch, 3 when something could
    /// not be computed.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Match => 0,
            Verdict::Mismatch => 2,
            Verdict::NotComputable => 3,
        }
    }
}

/// Second prime used to re-run an oracle that disagrees with a closed form.
pub fn recheck_prime(p: u32) -> u32 {
    if p == 101 {
        PrimeField::DEFAULT_CHAR
    } else {
        101
    }
}

fn to_value<T: Serialize>(v: Option<T>) -> Option<Value> {
    v.map(|x| serde_json::to_value(x).expect("plain value"))
}

fn closed_strand(g: &Graph) -> BTreeMap<usize, u64> {
    let f = clique_f_vector(g);
    (1..f.0.len().saturating_sub(1))
        .map(|i| (i, closed_form::linear_strand(g, i)))
        .filter(|&(_, v)| v > 0)
        .collect()
}

fn comparisons(
    e: &FamilyExpr,
    g: &Graph,
    c: &InvariantReport,
    o: Option<&OracleReport>,
) -> Vec<Comparison> {
    let o_reg = o.and_then(|o| o.reg);
    let mut out = vec![
        compare("reg", to_value(c.reg), to_value(o_reg)),
        compare(
            "projdim",
            to_value(c.projdim),
            to_value(o.and_then(|o| o.projdim)),
        ),
        compare(
            "extremalBetti",
            to_value(c.extremal_betti),
            to_value(o.and_then(|o| o.extremal_betti)),
        ),
        compare(
            "cmType",
            to_value(c.cm_type),
            to_value(o.and_then(|o| o.cm_type)),
        ),
    ];
    if matches!(e, FamilyExpr::Cone(_)) && c.beta_p_p2.is_some() {
        out.push(compare(
            "betaPP2",
            to_value(c.beta_p_p2),
            to_value(o.and_then(|o| o.beta_p_p2)),
        ));
    }
    out.push(compare(
        "linearStrand",
        Some(json!(closed_strand(g))),
        o.and_then(|o| o.linear_strand.as_ref()).map(|s| json!(s)),
    ));
    out
}

fn adjudications(e: &FamilyExpr, o: Option<&OracleReport>) -> Vec<Adjudication> {
    let mut out = Vec::new();
    if let FamilyExpr::Cone(_) = e {
        let raw = closed_form::cone_cm_type_formula(e);
        let guarded = closed_form::cm_type_closed(e);
        if let (Ok(raw), Ok(guarded)) = (raw, guarded) {
            if raw != guarded.value {
                let mut candidates = BTreeMap::new();
                candidates.insert("coneFormula".to_string(), raw);
                candidates.insert("decomposition".to_string(), guarded.value);
                let oracle = o.and_then(|o| o.cm_type);
                let confirmed = candidates
                    .iter()
                    .filter(|(_, &v)| Some(v) == oracle)
                    .map(|(k, _)| k.clone())
                    .collect();
                out.push(Adjudication {
                    question: "CM-type of a cone over a vertex and a complete graph".into(),
                    candidates,
                    oracle,
                    confirmed,
                });
            }
        }
    }
    out
}

fn overall(
    c: Option<&InvariantReport>,
    o: Option<&OracleReport>,
    cmp: &[Comparison],
    mode: Mode,
) -> Verdict {
    match mode {
        Mode::Closed => {
            let c = c.expect("closed mode evaluates the closed form");
            if c.reg.is_some()
                && c.projdim.is_some()
                && c.extremal_betti.is_some()
                && c.cm_type.is_some()
            {
                Verdict::Match
            } else {
                Verdict::NotComputable
            }
        }
        Mode::Oracle => match o {
            Some(o) if o.reg.is_some() && o.extremal_betti.is_some() => Verdict::Match,
            _ => Verdict::NotComputable,
        },
        Mode::Both => {
            if cmp.iter().any(|x| x.verdict == Verdict::Mismatch) {
                Verdict::Mismatch
            } else if cmp.iter().any(|x| x.verdict == Verdict::NotComputable) {
                Verdict::NotComputable
            } else {
                Verdict::Match
            }
        }
    }
}

/// Closed forms, oracle, or both with a per-invariant verdict. Mismatches
/// are re-run at a second prime; disagreeing primes are noted on the oracle.
pub fn run_invariants(
    e: &FamilyExpr,
    mode: Mode,
    cfg: &OracleConfig,
) -> Result<VerificationReport> {
    let g = e.build()?;
    let mut timings = Timings::default();
    let closed = (mode != Mode::Oracle).then(|| {
        let t = Instant::now();
        let r = closed_form::invariant_report(e);
        timings.closed_ms = t.elapsed().as_secs_f64() * 1e3;
        r
    });
    let (mut oracle, mut oracle_error) = (None, None);
    if mode != Mode::Closed {
        let t = Instant::now();
        match run_oracle(&g, cfg) {
            Ok(o) => oracle = Some(o),
            Err(err) => oracle_error = Some(err.to_string()),
        }
        timings.oracle_ms = t.elapsed().as_secs_f64() * 1e3;
    }
    let mut cmp = match (&closed, mode) {
        (Some(c), Mode::Both) => comparisons(e, &g, c, oracle.as_ref()),
        _ => Vec::new(),
    };
    if cmp.iter().any(|x| x.verdict == Verdict::Mismatch) && cfg.characteristic != 0 {
        let second = cfg.with_characteristic(recheck_prime(cfg.characteristic));
        if let (Ok(o2), Some(o1), Some(c)) = (run_oracle(&g, &second), oracle.as_mut(), &closed) {
            let cmp2 = comparisons(e, &g, c, Some(&o2));
            for (a, b) in cmp.iter().zip(&cmp2) {
                if a.verdict == Verdict::Mismatch {
                    o1.notes.push(format!(
                        "{}: re-run at p = {} gives {}",
                        a.invariant,
                        second.characteristic,
                        b.oracle
                            .as_ref()
                            .map(Value::to_string)
                            .unwrap_or_else(|| "nothing".into())
                    ));
                }
            }
            cmp = cmp
                .into_iter()
                .zip(cmp2)
                .map(|(a, b)| {
                    if b.verdict == Verdict::Mismatch {
                        a
                    } else {
                        Comparison {
                            verdict: Verdict::Mismatch,
                            ..a
                        }
                    }
                })
                .collect();
        }
    }
    let verdict = overall(closed.as_ref(), oracle.as_ref(), &cmp, mode);
    Ok(VerificationReport {
        expression: e.to_string(),
        mode,
        adjudications: adjudications(e, oracle.as_ref()),
        closed_form: closed,
        oracle,
        oracle_error,
        comparisons: cmp,
        verdict,
        timings,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub expression: Option<String>,
    pub nvars: usize,
    /// From the f-vector of the Stanley–Reisner complex of `in(J)`.
    pub data: HilbertData,
    /// `dim (S/J)_k` for `k = 0..=window`.
    pub values: Vec<u64>,
    #[serde(rename = "seriesMatches")]
    pub series_matches: bool,
    /// The numerator read off a Betti table agrees with `data.p`.
    #[serde(rename = "tableMatches")]
    pub table_matches: Option<bool>,
    pub lemma: Option<HilbertLemmaReport>,
    #[serde(rename = "closedH")]
    pub closed_h: Option<Vec<i64>>,
    #[serde(rename = "closedMatches")]
    pub closed_matches: Option<bool>,
    pub notes: Vec<String>,
}

impl HilbertReport {
    pub fn exit_code(&self) -> i32 {
        let failed = !self.series_matches
            || self.table_matches == Some(false)
            || self.closed_matches == Some(false)
            || self.lemma.as_ref().is_some_and(|l| !l.passed());
        if failed {
            2
        } else if self.lemma.is_none() {
            3
        } else {
            0
        }
    }
}

/// Hilbert data of `S/J_G` from the f-vector of `Δ(in J)`, checked against the
/// Hilbert function, the Betti table numerator (when a table is within
/// reach) and, for `F_m`, the closed h-vector.
pub fn hilbert_report(
    g: &Graph,
    expr: Option<&FamilyExpr>,
    cfg: &OracleConfig,
    window: usize,
) -> Result<HilbertReport> {
    let nvars = 2 * g.vertex_count();
    let inj = with_field(cfg.characteristic, |f| f.initial(g))?;
    let fv = NonFaces::new(&inj)?.f_vector();
    let d = fv.0.len() - 1;
    let mut h = h_from_f(&fv, d)?;
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    let mut p = h.clone();
    for _ in 0..nvars - d {
        let mut next = vec![0; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c;
        }
        p = next;
    }
    let data = HilbertData {
        a: h.len() as i64 - 1 - d as i64,
        p,
        h,
        d,
    };
    let values: Vec<u64> = (0..=window).map(|k| hilbert_function(&inj, k)).collect();
    let series = series_coefficients(&data.p, nvars, window + 1);
    let series_matches = series.iter().zip(&values).all(|(&a, &b)| a == b as i64);
    let mut notes = Vec::new();
    let (mut table_matches, mut lemma) = (None, None);
    match betti_table(g, cfg) {
        Ok(t) => {
            match numerator_from_betti(&t).and_then(|num| reduce_to_h(&num, nvars)) {
                Ok(hd) => table_matches = Some(hd.h == data.h && hd.d == data.d),
                Err(e) => notes.push(format!("table numerator: {e}")),
            }
            if t.subject() == Subject::Ideal {
                match verify_hilbert_lemmas(&t, &data) {
                    Ok(r) => lemma = Some(r),
                    Err(e) => notes.push(format!("lemma: {e}")),
                }
            } else {
                notes.push("lemma check needs the Betti table of J".into());
            }
        }
        Err(e) => notes.push(format!("Betti table: {e}")),
    }
    let closed_h = match expr {
        Some(FamilyExpr::BipartiteFm(m)) if *m >= 2 => Some(closed_form::hvector_fm(*m)?.h),
        _ => None,
    };
    let closed_matches = closed_h.as_ref().map(|c| *c == data.h);
    Ok(HilbertReport {
        expression: expr.map(|e| e.to_string()),
        nvars,
        data,
        values,
        series_matches,
        table_matches,
        lemma,
        closed_h,
        closed_matches,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_expr;

    fn both(text: &str) -> VerificationReport {
        let e = parse_expr(text).unwrap();
        run_invariants(&e, Mode::Both, &OracleConfig::default()).unwrap()
    }

    #[test]
    fn fm3_matches() {
        let r = both("Fm(3)");
        assert_eq!(r.verdict, Verdict::Match, "{r:#?}");
        assert_eq!(r.exit_code(), 0);
        let o = r.oracle.unwrap();
        assert_eq!(
            (o.reg, o.extremal_betti, o.cm_type),
            (Some(3), Some(5), Some(5))
        );
    }

    #[test]
    fn whisker_cone_is_adjudicated() {
        let r = both("cone(K(2), K(1))");
        assert_eq!(r.verdict, Verdict::Match, "{r:#?}");
        let a = &r.adjudications[0];
        assert_eq!(a.oracle, Some(2));
        assert_eq!(a.confirmed, vec!["decomposition".to_string()]);
    }

    #[test]
    fn circ_cm_type_is_not_computable() {
        let e = parse_expr("circ(Fm(4), Fm(3))").unwrap();
        let r = run_invariants(&e, Mode::Closed, &OracleConfig::default()).unwrap();
        assert_eq!(r.exit_code(), 3);
        let c = r.closed_form.unwrap();
        assert_eq!(c.extremal_betti, Some(5));
        assert!(c.notes.iter().any(|n| n.contains("29")));
    }

    #[test]
    fn size_caps_are_reported() {
        let e = parse_expr("K(13)").unwrap();
        let r = run_invariants(&e, Mode::Both, &OracleConfig::default()).unwrap();
        assert!(r.oracle_error.as_ref().unwrap().contains("cap"));
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn hochster_method_fills_shared_invariants() {
        let g = parse_expr("Fm(2)").unwrap().build().unwrap();
        let cfg = OracleConfig {
            method: Method::Hochster,
            ..OracleConfig::default()
        };
        let o = run_oracle(&g, &cfg).unwrap();
        assert_eq!(o.subject, Subject::Initial);
        assert_eq!(
            (o.reg, o.projdim, o.extremal_betti, o.cm_type),
            (Some(3), Some(3), Some(1), None)
        );
    }

    #[test]
    fn hilbert_of_fm() {
        for m in [2, 3] {
            let e = FamilyExpr::BipartiteFm(m);
            let r =
                hilbert_report(&e.build().unwrap(), Some(&e), &OracleConfig::default(), 8).unwrap();
            assert_eq!(r.exit_code(), 0, "{r:#?}");
            assert_eq!(r.closed_matches, Some(true));
        }
    }

    #[test]
    fn rationals_agree() {
        let g = parse_expr("cone(K(2), K(2))").unwrap().build().unwrap();
        let a = betti_table(&g, &OracleConfig::default()).unwrap();
        let b = betti_table(&g, &OracleConfig::default().with_characteristic(0)).unwrap();
        assert_eq!(a, b);
    }
}
